//! Time-ordered circuit readings of lattice diagrams, executable on the
//! tableau.
//!
//! Readings are generated by the builders from their lattice metadata (the
//! diagram itself is orderless) and embed fault-insertion points so that
//! per-edge Pauli faults can be replayed in simulation: a fault on a
//! worldline edge becomes a Pauli between the adjacent operations, a fault
//! on a measurement-gadget leg becomes an outcome flip (own-color
//! component) plus a data-qubit Pauli (other component).

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{EdgeId, VarId};
use crate::oracle::tableau::{Pauli, Tableau};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum ReadingStep {
    /// Apply H (used to prepare |+⟩ from the initial |0⟩, and to absorb
    /// Hadamard port edges).
    H(usize),
    Z(usize),
    Cz(usize, usize),
    Cnot(usize, usize),
    /// Joint Pauli-product measurement recording `var`.
    Measure { op: Vec<(usize, Pauli)>, var: VarId },
    /// Joint Pauli-product measurement whose outcome fixes the value of a
    /// merged outcome expression; the first variables are recorded as 0 and
    /// the last carries the residual.
    MeasureExpr { op: Vec<(usize, Pauli)>, vars: Vec<VarId>, constant: bool },
    /// Contract a bare spider: measure X and, on outcome 1, repair with the
    /// Z byproduct on its still-unmeasured neighbors.
    ProjectPlus { qubit: usize, byproduct: Vec<usize> },
    /// Outcome-dependent frame event: sample a fresh uniform bit, record it
    /// and apply `pauli` if set.
    RandomFrame { pauli: Pauli, qubit: usize, var: VarId },
    /// Fault insertion point on a worldline edge.
    FaultPoint { edge: EdgeId, qubit: usize },
    /// Fault insertion point on a measurement-gadget leg. `own` is the
    /// Pauli component that flips `var`; the complementary component acts
    /// on `qubit`.
    LegFaultPoint { edge: EdgeId, qubit: usize, var: VarId, own: Pauli, other: Pauli },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CircuitReading {
    pub num_qubits: usize,
    pub steps: Vec<ReadingStep>,
}

impl CircuitReading {
    /// One fault-free run; deterministic per seed.
    pub fn run(&self, seed: u64) -> BTreeMap<VarId, bool> {
        self.run_with_faults(&BTreeMap::new(), seed)
    }

    /// Run with per-edge Pauli faults spliced in at the recorded points.
    pub fn run_with_faults(
        &self,
        faults: &BTreeMap<EdgeId, Pauli>,
        seed: u64,
    ) -> BTreeMap<VarId, bool> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = Tableau::new(self.num_qubits);
        let mut record = BTreeMap::new();
        let mut pending_flips: BTreeMap<VarId, bool> = BTreeMap::new();
        for step in &self.steps {
            match step {
                ReadingStep::H(q) => t.apply_h(*q),
                ReadingStep::Z(q) => t.apply_z(*q),
                ReadingStep::Cz(a, b) => t.apply_cz(*a, *b),
                ReadingStep::Cnot(a, b) => t.apply_cnot(*a, *b),
                ReadingStep::Measure { op, var } => {
                    let (mut bit, _) = t.measure_pauli(op, &mut rng);
                    if let Some(flip) = pending_flips.remove(var) {
                        bit ^= flip;
                    }
                    record.insert(*var, bit);
                }
                ReadingStep::MeasureExpr { op, vars, constant } => {
                    let (bit, _) = t.measure_pauli(op, &mut rng);
                    let mut vars = vars.clone();
                    let last = vars.pop().expect("expression has a variable");
                    for v in vars {
                        record.insert(v, false);
                    }
                    record.insert(last, bit ^ constant);
                }
                ReadingStep::ProjectPlus { qubit, byproduct } => {
                    let (bit, _) = t.measure_pauli(&[(*qubit, Pauli::X)], &mut rng);
                    if bit {
                        for n in byproduct {
                            t.apply_z(*n);
                        }
                    }
                }
                ReadingStep::RandomFrame { pauli, qubit, var } => {
                    let bit = rng.gen::<bool>();
                    if bit {
                        t.apply_pauli(*pauli, *qubit);
                    }
                    record.insert(*var, bit);
                }
                ReadingStep::FaultPoint { edge, qubit } => {
                    if let Some(p) = faults.get(edge) {
                        t.apply_pauli(*p, *qubit);
                    }
                }
                ReadingStep::LegFaultPoint { edge, qubit, var, own, other } => {
                    if let Some(p) = faults.get(edge) {
                        let (has_own, has_other) = decompose(*p, *own, *other);
                        if has_own {
                            *pending_flips.entry(*var).or_insert(false) ^= true;
                        }
                        if has_other {
                            t.apply_pauli(*other, *qubit);
                        }
                    }
                }
            }
        }
        record
    }
}

/// Which of the two gadget-basis components a fault Pauli contains.
fn decompose(p: Pauli, own: Pauli, other: Pauli) -> (bool, bool) {
    debug_assert_ne!(own, other);
    if p == Pauli::Y {
        (true, true)
    } else {
        (p == own, p == other)
    }
}

/// Faithful circuit reading of a canonical (all-green, Hadamard-edge)
/// diagram: one qubit per spider prepared in |+⟩ (inputs arrive in |0⟩), a
/// CZ per odd Hadamard bundle, a ⟨+| contraction with Z byproducts for each
/// bare internal spider, and an X measurement per instrument.
pub fn cluster_reading(canon: &crate::diagram::Diagram) -> crate::error::Result<CircuitReading> {
    use crate::diagram::{EdgeKind, PortDir, SpiderKind};
    use std::collections::BTreeMap;

    let spiders: Vec<crate::diagram::NodeId> = canon.spiders().map(|(id, _)| id).collect();
    let qubit: BTreeMap<crate::diagram::NodeId, usize> =
        spiders.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    for (id, s) in canon.spiders() {
        if s.kind != SpiderKind::Z || !s.phase.is_pauli() {
            return Err(crate::error::Error::ContractViolation(format!(
                "cluster reading needs a canonical Pauli-phase diagram (spider {id})"
            )));
        }
    }
    let mut steps = Vec::new();
    let has_port = |n: crate::diagram::NodeId, dir: PortDir| {
        canon.neighbors(n).any(|m| canon.port(m).is_some_and(|p| p.dir == dir))
    };
    for (i, n) in spiders.iter().enumerate() {
        if !has_port(*n, PortDir::Input) {
            steps.push(ReadingStep::H(i));
        }
        if canon.spider(*n).unwrap().phase.is_pi() {
            steps.push(ReadingStep::Z(i));
        }
    }
    // CZ per odd Hadamard bundle
    let mut bundles: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (_, e) in canon.edges() {
        if e.kind != EdgeKind::Hadamard {
            if canon.spider(e.a).is_some() && canon.spider(e.b).is_some() {
                return Err(crate::error::Error::ContractViolation(
                    "cluster reading needs Hadamard-only spider edges".into(),
                ));
            }
            continue;
        }
        if let (Some(a), Some(b)) = (qubit.get(&e.a), qubit.get(&e.b)) {
            *bundles.entry((*a.min(b), *a.max(b))).or_default() += 1;
        }
    }
    for ((a, b), count) in &bundles {
        if count % 2 == 1 {
            steps.push(ReadingStep::Cz(*a, *b));
        }
    }
    // bare internal spiders are ⟨+| contractions
    let bare: Vec<usize> = spiders
        .iter()
        .enumerate()
        .filter(|(_, n)| {
            canon.spider(**n).unwrap().instrument.is_none()
                && !has_port(**n, PortDir::Input)
                && !has_port(**n, PortDir::Output)
        })
        .map(|(i, _)| i)
        .collect();
    let neighbors_of = |i: usize| -> Vec<usize> {
        bundles
            .iter()
            .filter(|((a, b), c)| (*a == i || *b == i) && *c % 2 == 1)
            .map(|((a, b), _)| if *a == i { *b } else { *a })
            .collect()
    };
    for (k, i) in bare.iter().enumerate() {
        let projected: std::collections::BTreeSet<usize> =
            bare[..k].iter().copied().collect();
        let byproduct: Vec<usize> =
            neighbors_of(*i).into_iter().filter(|n| !projected.contains(n)).collect();
        steps.push(ReadingStep::ProjectPlus { qubit: *i, byproduct });
    }
    // absorb Hadamard port edges on the open interface qubits
    for (_, e) in canon.edges() {
        if e.kind == EdgeKind::Hadamard {
            for (port_end, spider_end) in [(e.a, e.b), (e.b, e.a)] {
                if canon.port(port_end).is_some() {
                    if let Some(q) = qubit.get(&spider_end) {
                        steps.push(ReadingStep::H(*q));
                    }
                }
            }
        }
    }
    for (n, s) in canon.spiders() {
        if let Some(expr) = &s.instrument {
            if expr.vars.is_empty() {
                return Err(crate::error::Error::ContractViolation(format!(
                    "instrument on {n} has a constant expression"
                )));
            }
            steps.push(ReadingStep::MeasureExpr {
                op: vec![(qubit[&n], Pauli::X)],
                vars: expr.vars.iter().copied().collect(),
                constant: expr.constant,
            });
        }
    }
    Ok(CircuitReading { num_qubits: spiders.len(), steps })
}
