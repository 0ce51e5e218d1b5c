//! The four fault-tolerance lattices over one shared space-time skeleton.
//!
//! The skeleton has a Z-layer segment and an X-layer segment per data qubit
//! per round, plus one hub per stabilizer measurement; every edge is a unit
//! step in (u, v, z). CBQC expands segments into per-gadget wire spiders;
//! MBQC is the merged all-green form; FBQC and FloBQC split every spider in
//! two, grouping halves into hexagonal resource rings or diagonal chains.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::gadgets::{splice_fusion, splice_pair};
use super::layout::{chain_half, ring_half, rotated_layout, Dir, Loc, StabKind, SurfaceLayout};
use super::{CheckCell, EdgeRole, Flavor, LatticeMeta, LogicalPorts, MeasSlot, PatchSpec};
use crate::diagram::{Diagram, EdgeId, EdgeKind, NodeId, Phase, PortDir, SpiderKind, VarId};
use crate::error::Result;
use crate::oracle::reading::{CircuitReading, ReadingStep};
use crate::oracle::tableau::Pauli;
use crate::rewrite;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum SiteKey {
    Seg { layer: StabKind, q: usize, k: u32 },
    Hub { kind: StabKind, s: usize, k: u32 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum EndRef {
    Site(usize),
    In(usize),
    Out(usize),
}

struct Skeleton {
    layout: SurfaceLayout,
    rounds: u32,
    sites: Vec<SiteKey>,
    index: BTreeMap<SiteKey, usize>,
    edges: Vec<(EndRef, EndRef)>,
}

impl Skeleton {
    fn new(layout: SurfaceLayout, rounds: u32) -> Skeleton {
        let mut sites = Vec::new();
        for k in 1..=rounds {
            for q in 0..layout.qubits.len() {
                sites.push(SiteKey::Seg { layer: StabKind::Z, q, k });
            }
            for (s, _) in layout.stabs_of_kind(StabKind::Z) {
                sites.push(SiteKey::Hub { kind: StabKind::Z, s, k });
            }
            for q in 0..layout.qubits.len() {
                sites.push(SiteKey::Seg { layer: StabKind::X, q, k });
            }
            for (s, _) in layout.stabs_of_kind(StabKind::X) {
                sites.push(SiteKey::Hub { kind: StabKind::X, s, k });
            }
        }
        let index: BTreeMap<SiteKey, usize> =
            sites.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut edges = Vec::new();
        let nq = layout.qubits.len();
        for q in 0..nq {
            edges.push((EndRef::In(q), EndRef::Site(index[&SiteKey::Seg { layer: StabKind::Z, q, k: 1 }])));
        }
        for k in 1..=rounds {
            for q in 0..nq {
                edges.push((
                    EndRef::Site(index[&SiteKey::Seg { layer: StabKind::Z, q, k }]),
                    EndRef::Site(index[&SiteKey::Seg { layer: StabKind::X, q, k }]),
                ));
            }
            if k < rounds {
                for q in 0..nq {
                    edges.push((
                        EndRef::Site(index[&SiteKey::Seg { layer: StabKind::X, q, k }]),
                        EndRef::Site(index[&SiteKey::Seg { layer: StabKind::Z, q, k: k + 1 }]),
                    ));
                }
            }
            for kind in [StabKind::Z, StabKind::X] {
                for (s, def) in self_stabs(&layout, kind) {
                    for q in def.support.clone() {
                        edges.push((
                            EndRef::Site(index[&SiteKey::Seg { layer: kind, q, k }]),
                            EndRef::Site(index[&SiteKey::Hub { kind, s, k }]),
                        ));
                    }
                }
            }
        }
        for q in 0..nq {
            edges.push((
                EndRef::Site(index[&SiteKey::Seg { layer: StabKind::X, q, k: rounds }]),
                EndRef::Out(q),
            ));
        }
        Skeleton { layout, rounds, sites, index, edges }
    }

    fn loc(&self, site: usize) -> Loc {
        match self.sites[site] {
            SiteKey::Seg { layer, q, k } => {
                let z = 2 * (k as i64 - 1) + if layer == StabKind::X { 1 } else { 0 };
                Loc::qubit(&self.layout, q, z)
            }
            SiteKey::Hub { kind, s, k } => {
                let z = 2 * (k as i64 - 1) + if kind == StabKind::X { 1 } else { 0 };
                Loc::stab(&self.layout, s, z)
            }
        }
    }

    fn end_loc(&self, end: EndRef) -> Loc {
        match end {
            EndRef::Site(i) => self.loc(i),
            EndRef::In(q) => Loc::qubit(&self.layout, q, -1),
            EndRef::Out(q) => Loc::qubit(&self.layout, q, 2 * self.rounds as i64),
        }
    }

    /// Direction of edge `e` as seen from endpoint `end`.
    fn dir_from(&self, e: usize, end: EndRef) -> Dir {
        let (a, b) = self.edges[e];
        let other = if a == end { b } else { a };
        self.end_loc(end).dir_to(self.end_loc(other))
    }
}

fn self_stabs(layout: &SurfaceLayout, kind: StabKind) -> Vec<(usize, super::layout::StabDef)> {
    layout.stabs_of_kind(kind).map(|(i, s)| (i, s.clone())).collect()
}

fn spider_kind_of(site: SiteKey) -> SpiderKind {
    // mixed (circuit) coloring: Z-layer segments and X hubs are green
    match site {
        SiteKey::Seg { layer: StabKind::Z, .. } | SiteKey::Hub { kind: StabKind::X, .. } => {
            SpiderKind::Z
        }
        _ => SpiderKind::X,
    }
}

struct SkeletonDiagram {
    d: Diagram,
    spiders: Vec<NodeId>,
    in_ports: Vec<NodeId>,
    out_ports: Vec<NodeId>,
    edge_ids: Vec<EdgeId>,
    /// (site, dir) per surviving endpoint, keyed by skeleton edge index.
    skel: Skeleton,
}

/// Instantiate the merged skeleton.
///
/// `green` selects the canonical all-green form (Hadamard edges between
/// spiders, Hadamard output port edges) versus the mixed circuit coloring
/// (all plain edges). Instruments are attached separately by each flavor.
pub fn merged_skeleton_diagram(spec: PatchSpec, green: bool) -> Result<(Diagram, Vec<NodeId>)> {
    let sd = build_skeleton_diagram(spec, green)?;
    Ok((sd.d, sd.spiders))
}

fn build_skeleton_diagram(spec: PatchSpec, green: bool) -> Result<SkeletonDiagram> {
    spec.validate()?;
    let layout = rotated_layout(spec.distance)?;
    let skel = Skeleton::new(layout, spec.rounds);
    let mut d = Diagram::new();
    let spiders: Vec<NodeId> = skel
        .sites
        .iter()
        .map(|key| {
            let kind = if green { SpiderKind::Z } else { spider_kind_of(*key) };
            d.add_spider(kind, Phase::ZERO)
        })
        .collect();
    for (i, s) in spiders.iter().enumerate() {
        let loc = skel.loc(i);
        d.set_coord(*s, [loc.u as f64, loc.v as f64, loc.z as f64]);
    }
    let nq = skel.layout.qubits.len();
    let mut in_ports = Vec::new();
    let mut out_ports = Vec::new();
    for q in 0..nq {
        let (x, y) = skel.layout.qubits[q];
        let p = d.add_labeled_port(PortDir::Input, format!("in:q({x},{y})"));
        d.set_coord(p, [(x + y) as f64, (x - y) as f64, -1.0]);
        in_ports.push(p);
        let o = d.add_labeled_port(PortDir::Output, format!("out:q({x},{y})"));
        d.set_coord(o, [(x + y) as f64, (x - y) as f64, 2.0 * spec.rounds as f64]);
        out_ports.push(o);
    }
    let mut edge_ids = Vec::new();
    for (a, b) in &skel.edges {
        let node = |end: &EndRef| match end {
            EndRef::Site(i) => spiders[*i],
            EndRef::In(q) => in_ports[*q],
            EndRef::Out(q) => out_ports[*q],
        };
        let kind = if !green {
            EdgeKind::Plain
        } else {
            match (a, b) {
                (EndRef::In(_), _) | (_, EndRef::In(_)) => EdgeKind::Plain,
                _ => EdgeKind::Hadamard,
            }
        };
        edge_ids.push(d.add_edge(node(a), node(b), kind)?);
    }
    Ok(SkeletonDiagram { d, spiders, in_ports, out_ports, edge_ids, skel })
}

fn logical_ports(
    layout: &SurfaceLayout,
    in_ports: &[NodeId],
    out_ports: &[NodeId],
) -> LogicalPorts {
    let lz = layout.logical_z_qubits();
    let lx = layout.logical_x_qubits();
    LogicalPorts {
        z_in: lz.iter().map(|q| in_ports[*q]).collect(),
        z_out: lz.iter().map(|q| out_ports[*q]).collect(),
        x_in: lx.iter().map(|q| in_ports[*q]).collect(),
        x_out: lx.iter().map(|q| out_ports[*q]).collect(),
    }
}

// ---- cell structure ---------------------------------------------------------

struct CellShape {
    /// The two hubs and the mid-layer segments (own-color-full spiders).
    cell_sites: Vec<usize>,
    /// Pass-through sites with the directions of their two string edges.
    passes: Vec<(usize, Dir, Dir)>,
    interior: bool,
}

fn cell_shape(skel: &Skeleton, kind: StabKind, s: usize, k: u32) -> CellShape {
    let def = &skel.layout.stabs[s];
    let hub_lo = skel.index[&SiteKey::Hub { kind, s, k }];
    let hub_hi = skel.index[&SiteKey::Hub { kind, s, k: k + 1 }];
    let mid_layer = kind.other();
    let mid_k = if kind == StabKind::Z { k } else { k + 1 };
    let mut cell_sites = vec![hub_lo, hub_hi];
    for q in &def.support {
        cell_sites.push(skel.index[&SiteKey::Seg { layer: mid_layer, q: *q, k: mid_k }]);
    }
    let mut passes = Vec::new();
    // segments below and above the cell
    for (seg_k, z_dir, hub) in [(k, Dir::ZPos, hub_lo), (k + 1, Dir::ZNeg, hub_hi)] {
        for q in &def.support {
            let seg = skel.index[&SiteKey::Seg { layer: kind, q: *q, k: seg_k }];
            let leg = skel.loc(seg).dir_to(skel.loc(hub));
            passes.push((seg, leg, z_dir));
        }
    }
    // other-kind hubs sharing two qubits, in the mid layer
    let other_kind = kind.other();
    let other_k = mid_k;
    let mut n_other = 0;
    for (o, odef) in skel.layout.stabs_of_kind(other_kind) {
        let shared: Vec<usize> =
            odef.support.iter().copied().filter(|q| def.support.contains(q)).collect();
        if shared.len() != 2 {
            continue;
        }
        n_other += 1;
        let hub = skel.index[&SiteKey::Hub { kind: other_kind, s: o, k: other_k }];
        let d1 = skel
            .loc(hub)
            .dir_to(skel.loc(skel.index[&SiteKey::Seg { layer: mid_layer, q: shared[0], k: mid_k }]));
        let d2 = skel
            .loc(hub)
            .dir_to(skel.loc(skel.index[&SiteKey::Seg { layer: mid_layer, q: shared[1], k: mid_k }]));
        passes.push((hub, d1, d2));
    }
    CellShape { cell_sites, passes, interior: def.support.len() == 4 && n_other == 4 }
}

// ---- CBQC ---------------------------------------------------------------------

/// Circuit-based flavor: per round, a layer of Z-stabilizer measurement
/// gadgets then a layer of X ones, each gadget a hub instrument with plain
/// legs into wire spiders spliced along the data-qubit worldlines.
pub fn cbqc(spec: PatchSpec) -> Result<(Diagram, LatticeMeta)> {
    spec.validate()?;
    let layout = rotated_layout(spec.distance)?;
    let skel = Skeleton::new(layout.clone(), spec.rounds);
    let nq = layout.qubits.len();
    let mut d = Diagram::new();

    let mut in_ports = Vec::new();
    let mut out_ports = Vec::new();
    for q in 0..nq {
        let (x, y) = layout.qubits[q];
        let p = d.add_labeled_port(PortDir::Input, format!("in:q({x},{y})"));
        d.set_coord(p, [(x + y) as f64, (x - y) as f64, -1.0]);
        in_ports.push(p);
        let o = d.add_labeled_port(PortDir::Output, format!("out:q({x},{y})"));
        d.set_coord(o, [(x + y) as f64, (x - y) as f64, 2.0 * spec.rounds as f64]);
        out_ports.push(o);
    }

    let mut spider_loc: BTreeMap<NodeId, Loc> = BTreeMap::new();
    let mut hub_var: BTreeMap<(StabKind, usize, u32), VarId> = BTreeMap::new();
    let mut slots = Vec::new();
    let mut edge_roles: BTreeMap<EdgeId, EdgeRole> = BTreeMap::new();
    let mut worldlines: Vec<Vec<EdgeId>> = vec![Vec::new(); nq];
    // last spider on each worldline (starts at the input port)
    let mut head: Vec<NodeId> = in_ports.clone();
    // (kind, stab, round) -> per-qubit (wire spider, leg edge), and the
    // wire's position along its worldline
    let mut gadget_wires: BTreeMap<(StabKind, usize, u32), Vec<(usize, NodeId, EdgeId)>> =
        BTreeMap::new();
    let mut wire_pos: BTreeMap<(StabKind, usize, u32, usize), usize> = BTreeMap::new();
    let mut wires_seen = vec![0usize; nq];

    for k in 1..=spec.rounds {
        for kind in [StabKind::Z, StabKind::X] {
            let (wire_kind, hub_kind) = match kind {
                StabKind::Z => (SpiderKind::Z, SpiderKind::X),
                StabKind::X => (SpiderKind::X, SpiderKind::Z),
            };
            for (s, def) in layout.stabs_of_kind(kind) {
                let (var_kind, z) = match kind {
                    StabKind::Z => ("Z", 2 * (k as i64 - 1)),
                    StabKind::X => ("X", 2 * (k as i64 - 1) + 1),
                };
                let (hub, var) = d.add_instrument_spider(
                    hub_kind,
                    Phase::ZERO,
                    format!("m{var_kind}[{s}]@r{k}"),
                );
                let hloc = Loc::stab(&layout, s, z);
                d.set_coord(hub, [hloc.u as f64, hloc.v as f64, hloc.z as f64]);
                spider_loc.insert(hub, hloc);
                hub_var.insert((kind, s, k), var);
                slots.push(MeasSlot { label: format!("m{var_kind}[{s}]@r{k}"), vars: vec![var] });
                let mut wires = Vec::new();
                for q in def.support.clone() {
                    let w = d.add_spider(wire_kind, Phase::ZERO);
                    let wloc = Loc::qubit(&layout, q, z);
                    d.set_coord(w, [wloc.u as f64, wloc.v as f64, wloc.z as f64]);
                    spider_loc.insert(w, wloc);
                    let wl_edge = d.add_edge(head[q], w, EdgeKind::Plain)?;
                    edge_roles
                        .insert(wl_edge, EdgeRole::Worldline { qubit: q, index: worldlines[q].len() });
                    worldlines[q].push(wl_edge);
                    head[q] = w;
                    let leg = d.add_edge(w, hub, EdgeKind::Plain)?;
                    edge_roles.insert(leg, EdgeRole::Leg { kind, stab: s, round: k, qubit: q });
                    wire_pos.insert((kind, s, k, q), wires_seen[q]);
                    wires_seen[q] += 1;
                    wires.push((q, w, leg));
                }
                gadget_wires.insert((kind, s, k), wires);
            }
        }
    }
    for q in 0..nq {
        let e = d.add_edge(head[q], out_ports[q], EdgeKind::Plain)?;
        edge_roles.insert(e, EdgeRole::Worldline { qubit: q, index: worldlines[q].len() });
        worldlines[q].push(e);
    }

    // cells
    let mut cells = Vec::new();
    for kind in [StabKind::Z, StabKind::X] {
        for (s, _) in layout.stabs_of_kind(kind) {
            for k in 1..spec.rounds {
                let shape = cell_shape(&skel, kind, s, k);
                cells.push(CheckCell {
                    kind,
                    stab: s,
                    round: k,
                    interior: layout.stabs[s].support.len() == 4,
                    deep: shape.interior,
                    expected_vars: vec![hub_var[&(kind, s, k)], hub_var[&(kind, s, k + 1)]],
                });
            }
        }
    }

    // reading: measure stabilizers in build order, with fault points
    // threaded along the worldlines
    let mut steps = Vec::new();
    let mut emitted = vec![0usize; nq]; // worldline edges already emitted
    for k in 1..=spec.rounds {
        for kind in [StabKind::Z, StabKind::X] {
            let (meas_pauli, own, other) = match kind {
                StabKind::Z => (Pauli::Z, Pauli::X, Pauli::Z),
                StabKind::X => (Pauli::X, Pauli::Z, Pauli::X),
            };
            for (s, def) in layout.stabs_of_kind(kind) {
                let var = hub_var[&(kind, s, k)];
                for q in def.support.clone() {
                    let upto = wire_pos[&(kind, s, k, q)];
                    while emitted[q] <= upto {
                        steps.push(ReadingStep::FaultPoint {
                            edge: worldlines[q][emitted[q]],
                            qubit: q,
                        });
                        emitted[q] += 1;
                    }
                    let (_, _, leg) = gadget_wires[&(kind, s, k)]
                        .iter()
                        .find(|(qq, _, _)| *qq == q)
                        .copied()
                        .unwrap();
                    steps.push(ReadingStep::LegFaultPoint { edge: leg, qubit: q, var, own, other });
                }
                steps.push(ReadingStep::Measure {
                    op: def.support.iter().map(|q| (*q, meas_pauli)).collect(),
                    var,
                });
            }
        }
    }
    for q in 0..nq {
        while emitted[q] < worldlines[q].len() {
            steps.push(ReadingStep::FaultPoint { edge: worldlines[q][emitted[q]], qubit: q });
            emitted[q] += 1;
        }
    }
    let reading = CircuitReading { num_qubits: nq, steps };

    let meta = LatticeMeta {
        flavor: Flavor::Cbqc,
        distance: spec.distance,
        rounds: spec.rounds,
        slots,
        cells,
        reading,
        edge_roles,
        spider_loc,
        logical: logical_ports(&layout, &in_ports, &out_ports),
        worldlines,
        bulk_edges: cbqc_bulk_edges(&d, spec.rounds),
        chains: Vec::new(),
        rings: Vec::new(),
        fusions: Vec::new(),
    };
    Ok((d, meta))
}

/// Edges far enough from both temporal boundaries that every single-edge
/// Pauli is caught by both a red and a green check.
fn cbqc_bulk_edges(d: &Diagram, rounds: u32) -> Vec<EdgeId> {
    // identified by z-coordinates of the endpoints (layers 0..2r-1)
    let layer = |n: NodeId| -> Option<i64> {
        match d.node(n).unwrap() {
            crate::diagram::Node::Spider(s) => s.coord.map(|c| c[2] as i64),
            crate::diagram::Node::Port(p) => p.coord.map(|c| c[2] as i64),
        }
    };
    let top = 2 * rounds as i64 - 2;
    d.edges()
        .filter_map(|(id, e)| {
            let (a, b) = (layer(e.a)?, layer(e.b)?);
            let (lo, hi) = (a.min(b), a.max(b));
            (lo >= 1 && hi <= top).then_some(id)
        })
        .collect()
}

// ---- MBQC ---------------------------------------------------------------------

/// Measurement-based flavor: the canonical all-green network with one
/// X-measurement instrument per spider except the port interfaces.
pub fn mbqc(spec: PatchSpec) -> Result<(Diagram, LatticeMeta)> {
    let mut sd = build_skeleton_diagram(spec, true)?;
    let mut slots = Vec::new();
    let mut site_var: BTreeMap<usize, VarId> = BTreeMap::new();
    for (i, key) in sd.skel.sites.iter().enumerate() {
        let spider = sd.spiders[i];
        let port_spider = sd.d.neighbors(spider).any(|n| sd.d.port(n).is_some());
        if port_spider {
            continue;
        }
        let label = match key {
            SiteKey::Seg { layer, q, k } => format!("x@seg{layer:?}[{q}]r{k}"),
            SiteKey::Hub { kind, s, k } => format!("x@hub{kind:?}[{s}]r{k}"),
        };
        let var = sd.d.attach_instrument(spider, label.clone())?;
        site_var.insert(i, var);
        slots.push(MeasSlot { label, vars: vec![var] });
    }

    let mut cells = Vec::new();
    for kind in [StabKind::Z, StabKind::X] {
        for (s, _) in sd.skel.layout.stabs_of_kind(kind) {
            for k in 1..spec.rounds {
                let shape = cell_shape(&sd.skel, kind, s, k);
                let expected_vars: Vec<VarId> = shape
                    .cell_sites
                    .iter()
                    .filter_map(|site| site_var.get(site).copied())
                    .collect();
                cells.push(CheckCell {
                    kind,
                    stab: s,
                    round: k,
                    interior: sd.skel.layout.stabs[s].support.len() == 4,
                    deep: sd.skel.layout.stabs[s].support.len() == 4
                        && expected_vars.len() == 6,
                    expected_vars,
                });
            }
        }
    }

    // reading: cluster preparation then X measurements
    let mut steps = Vec::new();
    let qubit_of: BTreeMap<NodeId, usize> =
        sd.spiders.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    for (i, spider) in sd.spiders.iter().enumerate() {
        let has_in_port = sd.d.neighbors(*spider).any(|n| {
            sd.d.port(n).map_or(false, |p| p.dir == PortDir::Input)
        });
        if !has_in_port {
            steps.push(ReadingStep::H(i));
        }
    }
    for (_, e) in sd.d.edges() {
        if e.kind == EdgeKind::Hadamard {
            if let (Some(a), Some(b)) = (qubit_of.get(&e.a), qubit_of.get(&e.b)) {
                steps.push(ReadingStep::Cz(*a, *b));
            }
        }
    }
    for (i, spider) in sd.spiders.iter().enumerate() {
        let has_out_port = sd.d.neighbors(*spider).any(|n| {
            sd.d.port(n).map_or(false, |p| p.dir == PortDir::Output)
        });
        if has_out_port {
            steps.push(ReadingStep::H(i));
        }
    }
    for (i, _) in sd.skel.sites.iter().enumerate() {
        if let Some(var) = site_var.get(&i) {
            steps.push(ReadingStep::Measure { op: vec![(i, Pauli::X)], var: *var });
        }
    }
    let reading = CircuitReading { num_qubits: sd.spiders.len(), steps };

    let spider_loc: BTreeMap<NodeId, Loc> =
        sd.spiders.iter().enumerate().map(|(i, n)| (*n, sd.skel.loc(i))).collect();
    let meta = LatticeMeta {
        flavor: Flavor::Mbqc,
        distance: spec.distance,
        rounds: spec.rounds,
        slots,
        cells,
        reading,
        edge_roles: BTreeMap::new(),
        spider_loc,
        logical: logical_ports(&sd.skel.layout, &sd.in_ports, &sd.out_ports),
        worldlines: Vec::new(),
        bulk_edges: Vec::new(),
        chains: Vec::new(),
        rings: Vec::new(),
        fusions: Vec::new(),
    };
    Ok((sd.d, meta))
}

// ---- splitting shared by FBQC and FloBQC ----------------------------------------

struct SplitLattice {
    /// Per site: the half-spiders (half 1, half 0); equal when unsplit.
    halves: Vec<(NodeId, NodeId)>,
    /// Per site: the split edge, when the site was split.
    split_edge: Vec<Option<EdgeId>>,
}

/// Split every spider whose edges fall into two halves under `half_fn`.
/// Half 1 keeps the original spider id.
fn split_all(
    sd: &mut SkeletonDiagram,
    half_fn: impl Fn(Loc, Dir) -> u8,
) -> Result<SplitLattice> {
    // record each skeleton edge's (endpoint spider -> dir) before any splits
    let mut edge_dirs: BTreeMap<(EdgeId, NodeId), Dir> = BTreeMap::new();
    for (i, (a, b)) in sd.skel.edges.iter().enumerate() {
        let eid = sd.edge_ids[i];
        for end in [a, b] {
            if let EndRef::Site(site) = end {
                edge_dirs.insert((eid, sd.spiders[*site]), sd.skel.dir_from(i, *end));
            }
        }
    }
    let mut halves = Vec::new();
    let mut split_edge = Vec::new();
    for (site, spider) in sd.spiders.clone().iter().enumerate() {
        let loc = sd.skel.loc(site);
        let incident: Vec<EdgeId> = sd.d.incident_edges(*spider).to_vec();
        let moved: Vec<EdgeId> = incident
            .iter()
            .copied()
            .filter(|e| half_fn(loc, edge_dirs[&(*e, *spider)]) == 0)
            .collect();
        if moved.is_empty() || moved.len() == incident.len() {
            halves.push((*spider, *spider));
            split_edge.push(None);
            continue;
        }
        let step = rewrite::split(&mut sd.d, *spider, &moved, false)?;
        let (new_spider, new_edge) = match step {
            rewrite::RewriteStep::Split { new_spider, new_edge, .. } => (new_spider, new_edge),
            _ => unreachable!(),
        };
        sd.d.set_coord(new_spider, [loc.u as f64 + 0.25, loc.v as f64 + 0.25, loc.z as f64]);
        // re-anchor the moved edges' directions to the new spider
        for e in &moved {
            if let Some(dir) = edge_dirs.remove(&(*e, *spider)) {
                edge_dirs.insert((*e, new_spider), dir);
            }
        }
        halves.push((*spider, new_spider));
        split_edge.push(Some(new_edge));
    }
    Ok(SplitLattice { halves, split_edge })
}

/// Group half-spiders into connected components across the surviving
/// skeleton edges (rings or chains).
fn half_components(d: &Diagram, sd_edges: &[EdgeId]) -> Vec<Vec<NodeId>> {
    let mut parent: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<NodeId, NodeId>, x: NodeId) -> NodeId {
        let p = *parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let root = find(parent, p);
        parent.insert(x, root);
        root
    }
    for e in sd_edges {
        let Some(edge) = d.edge(*e) else { continue };
        if d.spider(edge.a).is_none() || d.spider(edge.b).is_none() {
            continue;
        }
        let (ra, rb) = (find(&mut parent, edge.a), find(&mut parent, edge.b));
        if ra != rb {
            parent.insert(ra, rb);
        }
    }
    let mut groups: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    for (id, _) in d.spiders() {
        // only spiders that are part of the original lattice (have an entry
        // or appear in some edge) — gadget spiders are added later, so all
        // spiders present here count
        let root = find(&mut parent, id);
        groups.entry(root).or_default().push(id);
    }
    groups.into_values().collect()
}

// ---- FBQC ---------------------------------------------------------------------

/// Fusion-based flavor: six-spider resource rings joined by Bell-measurement
/// fusions.
pub fn fbqc(spec: PatchSpec) -> Result<(Diagram, LatticeMeta)> {
    let mut sd = build_skeleton_diagram(spec, true)?;
    let split = split_all(&mut sd, |_, dir| ring_half(dir))?;

    // rings = components over the surviving skeleton edges, before gadgets
    let rings = half_components(&sd.d, &sd.edge_ids);

    // fusions
    let mut fusions = Vec::new();
    let mut slots = Vec::new();
    let mut site_fusion: BTreeMap<usize, (VarId, VarId)> = BTreeMap::new();
    for (site, edge) in split.split_edge.iter().enumerate() {
        let Some(edge) = edge else { continue };
        let near = split.halves[site].0;
        let (xx, zz, _, _) =
            splice_fusion(&mut sd.d, *edge, near, &format!("fusion{site}"))?;
        site_fusion.insert(site, (xx, zz));
        fusions.push((xx, zz));
        slots.push(MeasSlot { label: format!("fusion{site}"), vars: vec![xx, zz] });
    }

    // cells
    let mut cells = Vec::new();
    for kind in [StabKind::Z, StabKind::X] {
        for (s, _) in sd.skel.layout.stabs_of_kind(kind) {
            for k in 1..spec.rounds {
                let shape = cell_shape(&sd.skel, kind, s, k);
                let mut expected = Vec::new();
                let mut complete = shape.interior;
                for site in &shape.cell_sites {
                    match site_fusion.get(site) {
                        Some((xx, _)) => expected.push(*xx),
                        None => complete = false,
                    }
                }
                for (site, d1, d2) in &shape.passes {
                    if ring_half(*d1) != ring_half(*d2) {
                        match site_fusion.get(site) {
                            Some((_, zz)) => expected.push(*zz),
                            None => complete = false,
                        }
                    }
                }
                cells.push(CheckCell {
                    kind,
                    stab: s,
                    round: k,
                    interior: sd.skel.layout.stabs[s].support.len() == 4,
                    deep: complete && expected.len() == 12,
                    expected_vars: expected,
                });
            }
        }
    }

    // reading: prepare rings, copy the output interfaces aside, fuse
    let qubit_of: BTreeMap<NodeId, usize> = sd
        .d
        .spiders()
        .filter(|(_, s)| s.instrument.is_none())
        .map(|(id, _)| id)
        .enumerate()
        .map(|(i, id)| (id, i))
        .collect();
    let fused: std::collections::BTreeSet<NodeId> = split
        .split_edge
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_some())
        .flat_map(|(site, _)| [split.halves[site].0, split.halves[site].1])
        .collect();
    let mut steps = Vec::new();
    for (node, i) in &qubit_of {
        let has_in_port = sd
            .d
            .neighbors(*node)
            .any(|n| sd.d.port(n).map_or(false, |p| p.dir == PortDir::Input));
        if !has_in_port {
            steps.push(ReadingStep::H(*i));
        }
    }
    for (_, e) in sd.d.edges() {
        if e.kind == EdgeKind::Hadamard {
            if let (Some(a), Some(b)) = (qubit_of.get(&e.a), qubit_of.get(&e.b)) {
                steps.push(ReadingStep::Cz(*a, *b));
            }
        }
    }
    // a photon that is both fused and an output interface keeps a coherent
    // copy on a fresh qubit carrying the open port
    let mut num_qubits = qubit_of.len();
    for (node, i) in &qubit_of {
        let has_out_port = sd
            .d
            .neighbors(*node)
            .any(|n| sd.d.port(n).map_or(false, |p| p.dir == PortDir::Output));
        if !has_out_port {
            continue;
        }
        if fused.contains(node) {
            let ancilla = num_qubits;
            num_qubits += 1;
            steps.push(ReadingStep::Cnot(*i, ancilla));
            steps.push(ReadingStep::H(ancilla));
        } else {
            steps.push(ReadingStep::H(*i));
        }
    }
    for (site, edge) in split.split_edge.iter().enumerate() {
        if edge.is_none() {
            continue;
        }
        let (a, b) = split.halves[site];
        let (qa, qb) = (qubit_of[&a], qubit_of[&b]);
        let (xx, zz) = site_fusion[&site];
        steps.push(ReadingStep::Measure { op: vec![(qa, Pauli::X), (qb, Pauli::X)], var: xx });
        steps.push(ReadingStep::Measure { op: vec![(qa, Pauli::Z), (qb, Pauli::Z)], var: zz });
    }
    let reading = CircuitReading { num_qubits, steps };

    let mut spider_loc: BTreeMap<NodeId, Loc> = BTreeMap::new();
    for (site, (a, b)) in split.halves.iter().enumerate() {
        spider_loc.insert(*a, sd.skel.loc(site));
        spider_loc.insert(*b, sd.skel.loc(site));
    }
    let meta = LatticeMeta {
        flavor: Flavor::Fbqc,
        distance: spec.distance,
        rounds: spec.rounds,
        slots,
        cells,
        reading,
        edge_roles: BTreeMap::new(),
        spider_loc,
        logical: logical_ports(&sd.skel.layout, &sd.in_ports, &sd.out_ports),
        worldlines: Vec::new(),
        bulk_edges: Vec::new(),
        chains: Vec::new(),
        rings,
        fusions,
    };
    Ok((sd.d, meta))
}

// ---- FloBQC -------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ChainEventKind {
    PairZz,
    PairXx,
    FrameX,
    FrameZ,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainEvent {
    pub tau: i64,
    pub var: VarId,
    pub partner: Option<usize>,
    pub kind: ChainEventKind,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainMeta {
    pub events: Vec<ChainEvent>,
}

/// Floquet flavor: diagonal worldline chains joined by two-body parity
/// measurement gadgets cycling through three neighbors.
pub fn flobqc(spec: PatchSpec) -> Result<(Diagram, LatticeMeta)> {
    let mut sd = build_skeleton_diagram(spec, false)?;
    let split = split_all(&mut sd, chain_half)?;

    let chains = half_components(&sd.d, &sd.edge_ids);
    let chain_of: BTreeMap<NodeId, usize> = chains
        .iter()
        .enumerate()
        .flat_map(|(c, members)| members.iter().map(move |m| (*m, c)))
        .collect();

    // pair gadgets on split edges, frame instruments on unsplit hubs
    let mut slots = Vec::new();
    let mut site_pair: BTreeMap<usize, VarId> = BTreeMap::new();
    let mut site_frame: BTreeMap<usize, VarId> = BTreeMap::new();
    struct Ev {
        tau: i64,
        site: usize,
        var: VarId,
        kind: ChainEventKind,
        sides: Vec<(NodeId, usize)>, // (half spider, chain)
    }
    let mut events: Vec<Ev> = Vec::new();
    for (site, key) in sd.skel.sites.clone().iter().enumerate() {
        let loc = sd.skel.loc(site);
        let (a, b) = split.halves[site];
        match split.split_edge[site] {
            Some(edge) => {
                let wire_kind = sd.d.spider(a).unwrap().kind;
                let (hub_kind, kind, label) = match wire_kind {
                    SpiderKind::Z => (SpiderKind::X, ChainEventKind::PairZz, "zz"),
                    SpiderKind::X => (SpiderKind::Z, ChainEventKind::PairXx, "xx"),
                };
                let label = format!("{label}@site{site}");
                let (var, hub) = splice_pair(&mut sd.d, edge, hub_kind, &label)?;
                sd.d.set_coord(hub, [loc.u as f64 + 0.1, loc.v as f64 + 0.1, loc.z as f64]);
                slots.push(MeasSlot { label, vars: vec![var] });
                site_pair.insert(site, var);
                events.push(Ev {
                    tau: loc.tau(),
                    site,
                    var,
                    kind,
                    sides: vec![(a, chain_of[&a]), (b, chain_of[&b])],
                });
            }
            None => {
                // an unsplit site is always a boundary hub riding one chain
                debug_assert!(matches!(key, SiteKey::Hub { .. }));
                let spider_kind = sd.d.spider(a).unwrap().kind;
                let kind = match spider_kind {
                    SpiderKind::X => ChainEventKind::FrameX,
                    SpiderKind::Z => ChainEventKind::FrameZ,
                };
                let label = format!("frame@site{site}");
                let var = sd.d.attach_instrument(a, label.clone())?;
                slots.push(MeasSlot { label, vars: vec![var] });
                site_frame.insert(site, var);
                events.push(Ev {
                    tau: loc.tau(),
                    site,
                    var,
                    kind,
                    sides: vec![(a, chain_of[&a])],
                });
            }
        }
    }
    events.sort_by_key(|e| (e.tau, e.site));

    // chain metadata
    let mut chain_meta: Vec<ChainMeta> = (0..chains.len())
        .map(|_| ChainMeta { events: Vec::new() })
        .collect();
    for ev in &events {
        for (i, (_, chain)) in ev.sides.iter().enumerate() {
            let partner = if ev.sides.len() == 2 {
                Some(ev.sides[1 - i].1)
            } else {
                None
            };
            chain_meta[*chain].events.push(ChainEvent {
                tau: ev.tau,
                var: ev.var,
                partner,
                kind: ev.kind,
            });
        }
    }
    for cm in &mut chain_meta {
        cm.events.sort_by_key(|e| e.tau);
    }

    // cells
    let mut cells = Vec::new();
    for kind in [StabKind::Z, StabKind::X] {
        for (s, _) in sd.skel.layout.stabs_of_kind(kind) {
            for k in 1..spec.rounds {
                let shape = cell_shape(&sd.skel, kind, s, k);
                let mut expected = Vec::new();
                let mut complete = shape.interior;
                for site in &shape.cell_sites {
                    if let Some(var) = site_frame.get(site) {
                        expected.push(*var); // unsplit hub riding a chain
                    }
                }
                for (site, d1, d2) in &shape.passes {
                    let loc = sd.skel.loc(*site);
                    if chain_half(loc, *d1) != chain_half(loc, *d2) {
                        match site_pair.get(site) {
                            Some(var) => expected.push(*var),
                            None => complete = false,
                        }
                    }
                }
                cells.push(CheckCell {
                    kind,
                    stab: s,
                    round: k,
                    interior: sd.skel.layout.stabs[s].support.len() == 4,
                    deep: complete && expected.len() == 6,
                    expected_vars: expected,
                });
            }
        }
    }

    // The strict pair-measurement schedule is faithful in the bulk, but a
    // finite patch truncates some chains into preparation stubs whose
    // gadget bits have no standalone causal realization. The embedded
    // reading therefore simulates the network exactly through its
    // canonical cluster form; the pair schedule itself lives in `chains`.
    let reading = {
        let mut canon = sd.d.clone();
        rewrite::to_canonical(&mut canon)?;
        crate::oracle::reading::cluster_reading(&canon)?
    };

    let mut spider_loc: BTreeMap<NodeId, Loc> = BTreeMap::new();
    for (site, (a, b)) in split.halves.iter().enumerate() {
        spider_loc.insert(*a, sd.skel.loc(site));
        spider_loc.insert(*b, sd.skel.loc(site));
    }
    let meta = LatticeMeta {
        flavor: Flavor::Flobqc,
        distance: spec.distance,
        rounds: spec.rounds,
        slots,
        cells,
        reading,
        edge_roles: BTreeMap::new(),
        spider_loc,
        logical: logical_ports(&sd.skel.layout, &sd.in_ports, &sd.out_ports),
        worldlines: Vec::new(),
        bulk_edges: Vec::new(),
        chains: chain_meta,
        rings: Vec::new(),
        fusions: Vec::new(),
    };
    Ok((sd.d, meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingerprint::fingerprint;
    use crate::web::{solve_web, WebQuery};

    fn spec(d: u32, r: u32) -> PatchSpec {
        PatchSpec::new(d, r)
    }

    #[test]
    fn cbqc_counts_d2() {
        let (d, meta) = cbqc(spec(2, 3)).unwrap();
        assert!(d.is_valid(), "{:?}", d.validate());
        assert_eq!(meta.worldlines.len(), 4);
        assert_eq!(d.outcome_vars().count(), 9);
        assert_eq!(d.num_ports(), 8);
        assert!(meta.slot_coverage_ok(&d));
        assert!(d.is_pauli_phased());
        let (d1, _) = cbqc(spec(2, 1)).unwrap();
        assert!(d1.is_valid());
        assert_eq!(d1.num_ports(), 8);
    }

    #[test]
    fn cbqc_counts_d5() {
        let (d, meta) = cbqc(spec(5, 2)).unwrap();
        assert!(d.is_valid());
        assert_eq!(meta.worldlines.len(), 25);
        assert_eq!(d.outcome_vars().count(), 48);
        assert!(meta.slot_coverage_ok(&d));
    }

    #[test]
    fn mbqc_structure() {
        let (d, meta) = mbqc(spec(3, 2)).unwrap();
        assert!(d.is_valid());
        assert!(meta.slot_coverage_ok(&d));
        // all green, spider-spider edges Hadamard
        assert!(d.spiders().all(|(_, s)| s.kind == SpiderKind::Z));
        for (_, e) in d.edges() {
            if d.spider(e.a).is_some() && d.spider(e.b).is_some() {
                assert_eq!(e.kind, EdgeKind::Hadamard);
            }
        }
        // bulk degree 4
        let bulk_degrees: Vec<usize> = d
            .spiders()
            .map(|(id, _)| d.degree(id))
            .collect();
        assert!(bulk_degrees.iter().all(|deg| *deg >= 2 && *deg <= 4));
        assert!(bulk_degrees.iter().filter(|deg| **deg == 4).count() > 0);
    }

    #[test]
    fn canonical_cbqc_matches_mbqc_fingerprint() {
        for (dd, rr) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let (c, _) = cbqc(spec(dd, rr)).unwrap();
            let mut canon = c.clone();
            crate::rewrite::to_canonical(&mut canon).unwrap();
            assert!(crate::rewrite::is_canonical(&canon));
            let (m, _) = mbqc(spec(dd, rr)).unwrap();
            assert_eq!(
                fingerprint(&canon),
                fingerprint(&m),
                "canonical cbqc vs mbqc at d={dd} r={rr}"
            );
        }
    }

    #[test]
    fn fbqc_structure() {
        let (d, meta) = fbqc(spec(2, 2)).unwrap();
        assert!(d.is_valid(), "{:?}", d.validate());
        assert!(meta.slot_coverage_ok(&d));
        assert!(!meta.fusions.is_empty());
        // resource rings have at most six spiders
        for ring in &meta.rings {
            assert!(ring.len() <= 6, "ring of size {}", ring.len());
        }
        let (d3, meta3) = fbqc(spec(3, 3)).unwrap();
        assert!(d3.is_valid());
        assert!(meta3.rings.iter().any(|r| r.len() == 6));
        assert!(meta3.slot_coverage_ok(&d3));
    }

    #[test]
    fn flobqc_structure() {
        let (d, meta) = flobqc(spec(3, 3)).unwrap();
        assert!(d.is_valid(), "{:?}", d.validate());
        assert!(meta.slot_coverage_ok(&d));
        // period-6 schedule: consecutive events along a chain are one clock
        // tick apart
        for chain in &meta.chains {
            for pair in chain.events.windows(2) {
                assert_eq!(pair[1].tau - pair[0].tau, 1);
            }
        }
        // bulk chains connect to exactly three neighbors, cycling with
        // period 3 (partner chains truncate near the boundary, so this is a
        // bulk-witness claim)
        let mut bulk_chains = 0;
        for chain in &meta.chains {
            let partners: Vec<Option<usize>> =
                chain.events.iter().map(|e| e.partner).collect();
            if partners.len() < 6 || partners.iter().any(|p| p.is_none()) {
                continue;
            }
            let cycles = (0..partners.len() - 3).all(|i| partners[i] == partners[i + 3]);
            let distinct: std::collections::BTreeSet<usize> =
                partners.iter().map(|p| p.unwrap()).collect();
            if cycles && distinct.len() == 3 {
                bulk_chains += 1;
            }
        }
        assert!(bulk_chains > 0, "some bulk chain with three neighbors");
        // measurement kinds alternate ZZ/XX along every chain
        for chain in &meta.chains {
            for pair in chain.events.windows(2) {
                let zz = |k: ChainEventKind| {
                    matches!(k, ChainEventKind::PairZz | ChainEventKind::FrameZ)
                };
                assert_ne!(zz(pair[0].kind), zz(pair[1].kind), "alternating kinds");
            }
        }
    }

    /// Every cell's expected outcome set really is the sign of a valid
    /// zero-outer web on the lattice.
    fn assert_cells_solvable(d: &Diagram, meta: &LatticeMeta) {
        for cell in &meta.cells {
            let mut instruments = BTreeMap::new();
            for (id, s) in d.spiders() {
                let Some(expr) = &s.instrument else { continue };
                let on = expr.vars.iter().any(|v| cell.expected_vars.contains(v));
                instruments.insert(id, on);
            }
            let query = WebQuery {
                ports: BTreeMap::new(),
                pin_unlisted_ports: true,
                instruments,
                pin_unlisted_instruments: None,
            };
            let web = solve_web(d, &query).unwrap();
            let web = web.unwrap_or_else(|| {
                panic!(
                    "no web for cell {:?}[{}]@r{} with vars {:?}",
                    cell.kind, cell.stab, cell.round, cell.expected_vars
                )
            });
            assert!(web.is_valid(d));
            let sign = web.sign(d).unwrap();
            assert!(!sign.constant);
            let got: Vec<VarId> = sign.vars.iter().copied().collect();
            let mut want = cell.expected_vars.clone();
            want.sort();
            assert_eq!(got, want, "cell {:?}[{}]@r{}", cell.kind, cell.stab, cell.round);
        }
    }

    #[test]
    fn cbqc_cells_solvable() {
        let (d, meta) = cbqc(spec(3, 2)).unwrap();
        assert_eq!(meta.cells.len(), 8);
        assert_cells_solvable(&d, &meta);
    }

    #[test]
    fn mbqc_cells_solvable() {
        let (d, meta) = mbqc(spec(3, 2)).unwrap();
        assert_cells_solvable(&d, &meta);
        for cell in &meta.cells {
            if cell.interior {
                assert_eq!(cell.expected_vars.len(), 6, "six measurement outcomes");
            }
        }
    }

    #[test]
    fn fbqc_cells_solvable() {
        let (d, meta) = fbqc(spec(3, 2)).unwrap();
        assert_cells_solvable(&d, &meta);
    }

    #[test]
    fn flobqc_cells_solvable() {
        let (d, meta) = flobqc(spec(3, 2)).unwrap();
        assert_cells_solvable(&d, &meta);
    }

    #[test]
    fn fbqc_deep_cells_at_d5() {
        let (_, meta) = fbqc(spec(5, 2)).unwrap();
        let deep: Vec<_> = meta.cells.iter().filter(|c| c.deep).collect();
        assert!(!deep.is_empty());
        for cell in deep {
            assert_eq!(cell.expected_vars.len(), 12);
        }
    }

    #[test]
    fn flobqc_deep_cells_at_d5() {
        let (_, meta) = flobqc(spec(5, 2)).unwrap();
        let deep: Vec<_> = meta.cells.iter().filter(|c| c.deep).collect();
        assert!(!deep.is_empty());
        for cell in deep {
            assert_eq!(cell.expected_vars.len(), 6);
        }
    }

    #[test]
    fn outer_web_count_matches_ports() {
        for (d, meta) in [
            cbqc(spec(2, 2)).unwrap(),
            mbqc(spec(2, 2)).unwrap(),
            fbqc(spec(2, 2)).unwrap(),
            flobqc(spec(2, 2)).unwrap(),
        ] {
            let basis = crate::web::web_basis(&d).unwrap();
            assert_eq!(
                basis.outer.len(),
                d.num_ports(),
                "outer count for {:?}",
                meta.flavor
            );
        }
    }
}

#[cfg(test)]
mod reading_tests {
    use super::*;
    use crate::builders::LatticeMeta;

    fn assert_checks_hold(d: &Diagram, meta: &LatticeMeta, runs: u64) {
        assert!(meta.slot_coverage_ok(d));
        for seed in 0..runs {
            let record = meta.reading.run(seed);
            assert_eq!(record.len(), d.outcome_vars().count(), "all outcomes recorded");
            for cell in &meta.cells {
                let parity = cell
                    .expected_vars
                    .iter()
                    .fold(false, |acc, v| acc ^ record.get(v).copied().unwrap_or(false));
                assert!(
                    !parity,
                    "cell {:?}[{}]@r{} violated at seed {seed} ({:?})",
                    cell.kind, cell.stab, cell.round, cell.expected_vars
                );
            }
        }
    }

    #[test]
    fn cbqc_reading_checks_hold() {
        let (d, meta) = cbqc(PatchSpec::new(2, 3)).unwrap();
        assert_checks_hold(&d, &meta, 50);
        let (d3, meta3) = cbqc(PatchSpec::new(3, 2)).unwrap();
        assert_checks_hold(&d3, &meta3, 20);
    }

    #[test]
    fn mbqc_reading_checks_hold() {
        let (d, meta) = mbqc(PatchSpec::new(2, 2)).unwrap();
        assert_checks_hold(&d, &meta, 50);
        let (d3, meta3) = mbqc(PatchSpec::new(3, 2)).unwrap();
        assert_checks_hold(&d3, &meta3, 20);
    }

    #[test]
    fn mbqc_outcomes_are_intrinsically_random() {
        let (_, meta) = mbqc(PatchSpec::new(2, 2)).unwrap();
        // each single measurement outcome varies across seeds
        let records: Vec<_> = (0..40).map(|s| meta.reading.run(s)).collect();
        let vars: Vec<VarId> = records[0].keys().copied().collect();
        let varying = vars
            .iter()
            .filter(|v| {
                let first = records[0][v];
                records.iter().any(|r| r[v] != first)
            })
            .count();
        assert!(varying * 2 > vars.len(), "most outcomes vary: {varying}/{}", vars.len());
    }

    #[test]
    fn fbqc_reading_checks_hold() {
        let (d, meta) = fbqc(PatchSpec::new(2, 2)).unwrap();
        assert_checks_hold(&d, &meta, 50);
        let (d3, meta3) = fbqc(PatchSpec::new(3, 2)).unwrap();
        assert_checks_hold(&d3, &meta3, 20);
    }

    #[test]
    fn flobqc_reading_checks_hold() {
        let (d, meta) = flobqc(PatchSpec::new(2, 2)).unwrap();
        assert_checks_hold(&d, &meta, 50);
        let (d3, meta3) = flobqc(PatchSpec::new(3, 2)).unwrap();
        assert_checks_hold(&d3, &meta3, 20);
    }
}
