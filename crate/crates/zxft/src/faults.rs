//! Pauli fault insertion on edges, syndrome computation against a check
//! basis, and detectability coverage.
//!
//! An X fault is a red π spider spliced into an edge, a Z fault a green one,
//! Y both at the same spot. The syndrome never needs the insertion: an X
//! fault flips a check iff the check's web is red-highlighted at that edge
//! side, Z iff green, Y iff exactly one of the two.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, EdgeId, EdgeKind, OutcomeExpr, Phase, SpiderKind};
use crate::error::{Error, Result};
use crate::oracle::tableau::Pauli;
use crate::web::{Check, PauliWeb};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PauliFault {
    pub edge: EdgeId,
    /// Insert at the `b` endpoint's side of the edge.
    pub side_b: bool,
    pub pauli: Pauli,
}

/// Map check index → flipped bit.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Syndrome(pub Vec<bool>);

impl Syndrome {
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.weight() == 0
    }

    pub fn xor(&self, other: &Syndrome) -> Syndrome {
        Syndrome(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }
}

/// Splice π spiders into the faulted edges; the original diagram is
/// untouched.
pub fn inject(d: &Diagram, faults: &[PauliFault]) -> Result<Diagram> {
    let mut out = d.clone();
    for f in faults {
        let edge = *out.edge(f.edge).ok_or(Error::UnknownEdge(f.edge))?;
        let near = if f.side_b { edge.b } else { edge.a };
        let far = edge.other(near);
        let kinds: &[SpiderKind] = match f.pauli {
            Pauli::X => &[SpiderKind::X],
            Pauli::Z => &[SpiderKind::Z],
            // Y: X then Z walking away from the near side
            Pauli::Y => &[SpiderKind::X, SpiderKind::Z],
        };
        out.remove_edge(f.edge)?;
        let mut prev = near;
        for kind in kinds {
            let s = out.add_spider(*kind, Phase::PI);
            out.add_edge(prev, s, EdgeKind::Plain)?;
            prev = s;
        }
        // the original edge kind sits on the far side of the insertion
        out.add_edge(prev, far, edge.kind)?;
    }
    Ok(out)
}

fn flip_at(web: &PauliWeb, d: &Diagram, f: &PauliFault) -> bool {
    let edge = d.edge(f.edge).expect("fault references existing edge");
    let side = if f.side_b { edge.b } else { edge.a };
    let (r, g) = web.value_at(d, f.edge, side);
    match f.pauli {
        Pauli::X => r,
        Pauli::Z => g,
        Pauli::Y => r ^ g,
    }
}

/// Syndrome of a fault set against a check basis, computed without
/// insertion.
pub fn syndrome(d: &Diagram, checks: &[Check], faults: &[PauliFault]) -> Syndrome {
    Syndrome(
        checks
            .iter()
            .map(|c| faults.iter().fold(false, |acc, f| acc ^ flip_at(&c.web, d, f)))
            .collect(),
    )
}

/// Whether a fault set flips an outer web (a correlator), and the web's
/// outcome expression (the Pauli-frame contribution).
pub fn correlator_flip(
    d: &Diagram,
    web: &PauliWeb,
    faults: &[PauliFault],
) -> Result<(bool, OutcomeExpr)> {
    let flip = faults.iter().fold(false, |acc, f| acc ^ flip_at(web, d, f));
    Ok((flip, web.sign(d)?))
}

/// Per-edge, per-side check coverage.
#[derive(Clone, Debug, Default)]
pub struct DetectabilityReport {
    /// edge → (red cover, green cover), minimized over the two sides.
    pub coverage: BTreeMap<EdgeId, (usize, usize)>,
}

impl DetectabilityReport {
    pub fn double_covered(&self, e: EdgeId) -> bool {
        self.coverage.get(&e).is_some_and(|(r, g)| *r > 0 && *g > 0)
    }

    pub fn undercovered(&self) -> Vec<EdgeId> {
        self.coverage
            .iter()
            .filter(|(_, (r, g))| *r == 0 || *g == 0)
            .map(|(e, _)| *e)
            .collect()
    }
}

/// For each edge: how many checks highlight it red resp. green (minimum
/// over the two sides, so a covered edge catches the fault on either side).
pub fn detectability_map(d: &Diagram, checks: &[Check]) -> DetectabilityReport {
    let mut report = DetectabilityReport::default();
    for (eid, edge) in d.edges() {
        let mut counts = [(0usize, 0usize), (0usize, 0usize)];
        for c in checks {
            for (i, side) in [edge.a, edge.b].into_iter().enumerate() {
                let (r, g) = c.web.value_at(d, eid, side);
                counts[i].0 += r as usize;
                counts[i].1 += g as usize;
            }
        }
        report
            .coverage
            .insert(eid, (counts[0].0.min(counts[1].0), counts[0].1.min(counts[1].1)));
    }
    report
}

/// Classify a zero-syndrome fault set: `Stabilizer` if it flips no outer
/// web, otherwise `Logical`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UndetectedClass {
    Stabilizer,
    Logical,
}

pub fn classify_undetected(
    d: &Diagram,
    outer: &[PauliWeb],
    faults: &[PauliFault],
) -> UndetectedClass {
    let flips_any = outer.iter().any(|w| {
        faults.iter().fold(false, |acc, f| acc ^ flip_at(w, d, f))
    });
    if flips_any {
        UndetectedClass::Logical
    } else {
        UndetectedClass::Stabilizer
    }
}

/// Map NodeId-independent fault descriptions onto reading faults.
pub fn fault_map_for_reading(faults: &[PauliFault]) -> BTreeMap<EdgeId, Pauli> {
    faults.iter().map(|f| (f.edge, f.pauli)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::rep_code;
    use crate::web::web_basis;

    fn red_locations(d: &Diagram, web: &PauliWeb) -> Vec<(EdgeId, bool)> {
        let mut out = Vec::new();
        for (eid, edge) in d.edges() {
            for (side_b, node) in [(false, edge.a), (true, edge.b)] {
                let (r, _) = web.value_at(d, eid, node);
                if r {
                    out.push((eid, side_b));
                }
            }
        }
        out
    }

    #[test]
    fn repetition_code_fault_behavior() {
        let d = rep_code(2).unwrap();
        let basis = web_basis(&d).unwrap();
        assert_eq!(basis.checks.len(), 1);
        let check = &basis.checks[0];
        let reds = red_locations(&d, &check.web);
        assert!(!reds.is_empty());
        for (edge, side_b) in reds {
            let x = PauliFault { edge, side_b, pauli: Pauli::X };
            let y = PauliFault { edge, side_b, pauli: Pauli::Y };
            let z = PauliFault { edge, side_b, pauli: Pauli::Z };
            assert_eq!(syndrome(&d, &basis.checks, &[x]).0, vec![true]);
            assert_eq!(syndrome(&d, &basis.checks, &[y]).0, vec![true]);
            assert_eq!(syndrome(&d, &basis.checks, &[z]).0, vec![false]);
        }
    }

    #[test]
    fn even_faults_cancel() {
        let d = rep_code(2).unwrap();
        let basis = web_basis(&d).unwrap();
        let reds = red_locations(&d, &basis.checks[0].web);
        let f1 = PauliFault { edge: reds[0].0, side_b: reds[0].1, pauli: Pauli::X };
        let f2 = PauliFault { edge: reds[1].0, side_b: reds[1].1, pauli: Pauli::X };
        assert!(syndrome(&d, &basis.checks, &[f1, f2]).is_trivial());
        // linearity
        let s1 = syndrome(&d, &basis.checks, &[f1]);
        let s2 = syndrome(&d, &basis.checks, &[f2]);
        assert_eq!(s1.xor(&s2), syndrome(&d, &basis.checks, &[f1, f2]));
    }

    #[test]
    fn inject_splices_pi_spiders() {
        let d = rep_code(2).unwrap();
        let edge = d.edges().next().unwrap().0;
        let injected = inject(&d, &[PauliFault { edge, side_b: false, pauli: Pauli::Y }]).unwrap();
        assert_eq!(injected.num_spiders(), d.num_spiders() + 2);
        assert!(injected.is_valid());
        assert!(matches!(
            inject(&d, &[PauliFault { edge: EdgeId(9999), side_b: false, pauli: Pauli::X }]),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn undetected_xx_is_logical_on_rep_code() {
        let d = rep_code(2).unwrap();
        let basis = web_basis(&d).unwrap();
        // X on the same worldline position of both wires commutes with ZZ
        let reds = red_locations(&d, &basis.checks[0].web);
        // pick the two mid-wire worldline edges: red & plain & between spiders
        let mids: std::collections::BTreeSet<EdgeId> = reds
            .into_iter()
            .filter(|(e, _)| {
                let edge = d.edge(*e).unwrap();
                d.spider(edge.a).is_some()
                    && d.spider(edge.b).is_some()
                    && d.spider(edge.a).unwrap().instrument.is_none()
                    && d.spider(edge.b).unwrap().instrument.is_none()
            })
            .map(|(e, _)| e)
            .collect();
        assert_eq!(mids.len(), 2, "two mid-wire edges");
        let faults: Vec<PauliFault> = mids
            .iter()
            .map(|e| PauliFault { edge: *e, side_b: false, pauli: Pauli::X })
            .collect();
        assert!(syndrome(&d, &basis.checks, &faults).is_trivial());
        assert_eq!(
            classify_undetected(&d, &basis.outer, &faults),
            UndetectedClass::Logical
        );
    }
}
