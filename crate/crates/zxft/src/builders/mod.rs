//! Programmatic constructors for gadgets, graph states, and the four
//! surface-code fault-tolerance lattices, with layout metadata.

mod gadgets;
mod lattice;
mod layout;

pub use gadgets::{
    bell_circuit, gadget, ghz_circuit, graph_state, rep_code, ring_circuit, splice_fusion,
    splice_pair, zz_meas_circuit, GadgetName,
};
pub use lattice::{
    cbqc, fbqc, flobqc, mbqc, merged_skeleton_diagram, ChainEvent, ChainEventKind, ChainMeta,
};
pub use layout::{
    chain_axes, chain_half, ring_half, rotated_layout, Axis, Dir, Loc, StabDef, StabKind,
    SurfaceLayout,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{EdgeId, NodeId, VarId};
use crate::error::{Error, Result};
use crate::oracle::reading::CircuitReading;

/// Parameters for the lattice builders.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PatchSpec {
    pub distance: u32,
    pub rounds: u32,
}

impl PatchSpec {
    pub fn new(distance: u32, rounds: u32) -> PatchSpec {
        PatchSpec { distance, rounds }
    }

    pub fn validate(&self) -> Result<()> {
        if self.distance < 2 {
            return Err(Error::InvalidSpec(format!("distance {} < 2", self.distance)));
        }
        if self.rounds < 1 {
            return Err(Error::InvalidSpec(format!("rounds {} < 1", self.rounds)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Flavor {
    Cbqc,
    Mbqc,
    Fbqc,
    Flobqc,
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flavor> {
        match s {
            "cbqc" => Ok(Flavor::Cbqc),
            "mbqc" => Ok(Flavor::Mbqc),
            "fbqc" => Ok(Flavor::Fbqc),
            "flobqc" => Ok(Flavor::Flobqc),
            other => Err(Error::InvalidSpec(format!("unknown flavor {other:?}"))),
        }
    }
}

/// One measurement slot; every instrument variable belongs to exactly one.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasSlot {
    pub label: String,
    pub vars: Vec<VarId>,
}

/// A stabilizer-pair check cell: the measurement of stabilizer `stab` in
/// rounds `k` and `k+1` must agree (through whatever outcomes the flavor
/// exposes).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckCell {
    pub kind: StabKind,
    pub stab: usize,
    pub round: u32,
    /// Weight-4 stabilizer (the generic interior shape).
    pub interior: bool,
    /// All expected crossing structure present (the deep-bulk shape whose
    /// outcome counts the flavor tables quote).
    pub deep: bool,
    pub expected_vars: Vec<VarId>,
}

/// Classification of an edge for fault insertion and detectability zoning.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum EdgeRole {
    /// Worldline segment of a data qubit; `index` counts edges from the
    /// input port.
    Worldline { qubit: usize, index: usize },
    /// Measurement-gadget leg.
    Leg { kind: StabKind, stab: usize, round: u32, qubit: usize },
    /// Inside a spliced fusion or pair gadget.
    GadgetInternal,
}

/// Logical operator endpoints: the boundary ports carrying each
/// representative.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct LogicalPorts {
    pub z_in: Vec<NodeId>,
    pub z_out: Vec<NodeId>,
    pub x_in: Vec<NodeId>,
    pub x_out: Vec<NodeId>,
}

/// Builder metadata: measurement slots, check cells, the circuit reading,
/// and enough geometry to drive translations and fault mapping.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeMeta {
    pub flavor: Flavor,
    pub distance: u32,
    pub rounds: u32,
    pub slots: Vec<MeasSlot>,
    pub cells: Vec<CheckCell>,
    pub reading: CircuitReading,
    pub edge_roles: BTreeMap<EdgeId, EdgeRole>,
    /// Lattice site of every spider, for split scheduling.
    pub spider_loc: BTreeMap<NodeId, Loc>,
    pub logical: LogicalPorts,
    /// Worldline edge ids per data qubit (circuit flavor).
    pub worldlines: Vec<Vec<EdgeId>>,
    /// Edges far from the temporal boundaries, double-covered by checks
    /// (circuit flavor).
    pub bulk_edges: Vec<EdgeId>,
    /// FloBQC chains (empty for other flavors).
    pub chains: Vec<ChainMeta>,
    /// FBQC ring components as spider sets (empty for other flavors).
    pub rings: Vec<Vec<NodeId>>,
    /// FBQC fusion gadgets: (xx var, zz var).
    pub fusions: Vec<(VarId, VarId)>,
}

impl LatticeMeta {
    /// Every instrument variable of the diagram must sit in exactly one slot.
    pub fn slot_coverage_ok(&self, d: &crate::diagram::Diagram) -> bool {
        let mut seen = BTreeMap::new();
        for slot in &self.slots {
            for v in &slot.vars {
                *seen.entry(*v).or_insert(0usize) += 1;
            }
        }
        d.outcome_vars().all(|(v, _)| seen.get(&v) == Some(&1))
            && seen.len() == d.outcome_vars().count()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("meta serializes")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<LatticeMeta> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("meta: {e}")))
    }
}
