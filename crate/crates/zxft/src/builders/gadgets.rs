//! Gate, state and measurement gadgets, plus the small circuits used by the
//! oracle tests.

use crate::diagram::{Diagram, EdgeId, EdgeKind, NodeId, Phase, PortDir, SpiderKind, VarId};
use crate::error::{Error, Result};

/// Names accepted by [`gadget`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GadgetName {
    PrepZ0,
    PrepZ1,
    PrepX0,
    PrepX1,
    PrepY0,
    PrepY1,
    ProjZ0,
    ProjZ1,
    ProjX0,
    ProjX1,
    ProjY0,
    ProjY1,
    Cnot,
    Cz,
    /// Z rotation by `k` quarter turns.
    ZRot(u8),
    ZzMeas,
    XxMeas,
    YyMeas,
    BellMeas,
    W4ZMeas,
    W4XMeas,
}

impl std::str::FromStr for GadgetName {
    type Err = Error;
    fn from_str(s: &str) -> Result<GadgetName> {
        use GadgetName::*;
        Ok(match s {
            "prep_z0" => PrepZ0,
            "prep_z1" => PrepZ1,
            "prep_x0" => PrepX0,
            "prep_x1" => PrepX1,
            "prep_y0" => PrepY0,
            "prep_y1" => PrepY1,
            "proj_z0" => ProjZ0,
            "proj_z1" => ProjZ1,
            "proj_x0" => ProjX0,
            "proj_x1" => ProjX1,
            "proj_y0" => ProjY0,
            "proj_y1" => ProjY1,
            "cnot" => Cnot,
            "cz" => Cz,
            "z_rot" => ZRot(1),
            "z_rot2" => ZRot(2),
            "z_rot3" => ZRot(3),
            "zz_meas" => ZzMeas,
            "xx_meas" => XxMeas,
            "yy_meas" => YyMeas,
            "bell_meas" => BellMeas,
            "w4_z_meas" => W4ZMeas,
            "w4_x_meas" => W4XMeas,
            other => return Err(Error::UnknownGadget(other.into())),
        })
    }
}

/// Build a named gadget diagram.
pub fn gadget(name: GadgetName) -> Diagram {
    use GadgetName::*;
    match name {
        PrepZ0 => prep(SpiderKind::X, 0, PortDir::Output),
        PrepZ1 => prep(SpiderKind::X, 2, PortDir::Output),
        PrepX0 => prep(SpiderKind::Z, 0, PortDir::Output),
        PrepX1 => prep(SpiderKind::Z, 2, PortDir::Output),
        PrepY0 => prep(SpiderKind::Z, 1, PortDir::Output),
        PrepY1 => prep(SpiderKind::Z, 3, PortDir::Output),
        ProjZ0 => prep(SpiderKind::X, 0, PortDir::Input),
        ProjZ1 => prep(SpiderKind::X, 2, PortDir::Input),
        ProjX0 => prep(SpiderKind::Z, 0, PortDir::Input),
        ProjX1 => prep(SpiderKind::Z, 2, PortDir::Input),
        ProjY0 => prep(SpiderKind::Z, 3, PortDir::Input),
        ProjY1 => prep(SpiderKind::Z, 1, PortDir::Input),
        Cnot => cnot(),
        Cz => cz(),
        ZRot(k) => z_rot(k),
        ZzMeas => parity_meas(SpiderKind::Z, 2, "b"),
        XxMeas => parity_meas(SpiderKind::X, 2, "b"),
        YyMeas => yy_meas(),
        BellMeas => bell_meas(),
        W4ZMeas => parity_meas(SpiderKind::Z, 4, "b"),
        W4XMeas => parity_meas(SpiderKind::X, 4, "b"),
    }
}

fn prep(kind: SpiderKind, quarter: u8, dir: PortDir) -> Diagram {
    let mut d = Diagram::new();
    let s = d.add_spider(kind, Phase::new(quarter));
    let p = d.add_labeled_port(dir, "q");
    d.add_edge(s, p, EdgeKind::Plain).unwrap();
    d
}

fn wire(d: &mut Diagram, label: &str, kind: SpiderKind) -> (NodeId, NodeId, NodeId) {
    let s = d.add_spider(kind, Phase::ZERO);
    let i = d.add_labeled_port(PortDir::Input, format!("in:{label}"));
    let o = d.add_labeled_port(PortDir::Output, format!("out:{label}"));
    d.add_edge(i, s, EdgeKind::Plain).unwrap();
    d.add_edge(s, o, EdgeKind::Plain).unwrap();
    (i, s, o)
}

fn cnot() -> Diagram {
    let mut d = Diagram::new();
    let (_, c, _) = wire(&mut d, "c", SpiderKind::Z);
    let (_, t, _) = wire(&mut d, "t", SpiderKind::X);
    d.add_edge(c, t, EdgeKind::Plain).unwrap();
    d
}

fn cz() -> Diagram {
    let mut d = Diagram::new();
    let (_, a, _) = wire(&mut d, "1", SpiderKind::Z);
    let (_, b, _) = wire(&mut d, "2", SpiderKind::Z);
    d.add_edge(a, b, EdgeKind::Hadamard).unwrap();
    d
}

fn z_rot(quarter: u8) -> Diagram {
    let mut d = Diagram::new();
    let (_, s, _) = wire(&mut d, "q", SpiderKind::Z);
    d.spider_mut(s).unwrap().phase = Phase::new(quarter);
    d
}

/// Non-destructive weight-n Pauli-product measurement: n wire spiders of
/// `wire_kind` plus one opposite-colored instrument hub.
fn parity_meas(wire_kind: SpiderKind, n: usize, var_label: &str) -> Diagram {
    let mut d = Diagram::new();
    let (hub, _) = d.add_instrument_spider(wire_kind.flipped(), Phase::ZERO, var_label);
    for q in 0..n {
        let (_, s, _) = wire(&mut d, &format!("{q}"), wire_kind);
        d.add_edge(s, hub, EdgeKind::Plain).unwrap();
    }
    d
}

/// ZZ measurement followed by XX measurement on the same two wires. The
/// joint-parity web of the two outcomes is the YY measurement; each
/// individual outcome also feeds the Pauli frame.
fn yy_meas() -> Diagram {
    let mut d = Diagram::new();
    let (hub_zz, _) = d.add_instrument_spider(SpiderKind::X, Phase::ZERO, "b1");
    let (hub_xx, _) = d.add_instrument_spider(SpiderKind::Z, Phase::ZERO, "b2");
    for q in 0..2 {
        let g = d.add_spider(SpiderKind::Z, Phase::ZERO);
        let r = d.add_spider(SpiderKind::X, Phase::ZERO);
        let i = d.add_labeled_port(PortDir::Input, format!("in:{q}"));
        let o = d.add_labeled_port(PortDir::Output, format!("out:{q}"));
        d.add_edge(i, g, EdgeKind::Plain).unwrap();
        d.add_edge(g, r, EdgeKind::Plain).unwrap();
        d.add_edge(r, o, EdgeKind::Plain).unwrap();
        d.add_edge(g, hub_zz, EdgeKind::Plain).unwrap();
        d.add_edge(r, hub_xx, EdgeKind::Plain).unwrap();
    }
    d
}

/// Destructive Bell measurement: X instrument and Z instrument in series.
/// The XX outcome is the Z spider's bit, the ZZ outcome the X spider's.
fn bell_meas() -> Diagram {
    let mut d = Diagram::new();
    let i1 = d.add_labeled_port(PortDir::Input, "in:0");
    let i2 = d.add_labeled_port(PortDir::Input, "in:1");
    let (x, _) = d.add_instrument_spider(SpiderKind::X, Phase::ZERO, "bZZ");
    let (z, _) = d.add_instrument_spider(SpiderKind::Z, Phase::ZERO, "bXX");
    d.add_edge(i1, x, EdgeKind::Plain).unwrap();
    d.add_edge(x, z, EdgeKind::Plain).unwrap();
    d.add_edge(z, i2, EdgeKind::Plain).unwrap();
    d
}

/// Graph state of a simple undirected graph: one Z spider per vertex with a
/// boundary port, one Hadamard edge per graph edge.
pub fn graph_state(n: usize, edges: &[(usize, usize)]) -> Result<Diagram> {
    let mut d = Diagram::new();
    let spiders: Vec<NodeId> = (0..n).map(|_| d.add_spider(SpiderKind::Z, Phase::ZERO)).collect();
    for (i, s) in spiders.iter().enumerate() {
        let p = d.add_labeled_port(PortDir::Output, format!("q{i}"));
        d.add_edge(*s, p, EdgeKind::Plain)?;
    }
    for (a, b) in edges {
        if *a >= n || *b >= n || a == b {
            return Err(Error::InvalidSpec(format!("bad graph edge ({a},{b})")));
        }
        d.add_edge(spiders[*a], spiders[*b], EdgeKind::Hadamard)?;
    }
    Ok(d)
}

/// Two wires with `rounds` ZZ measurement gadgets in series.
pub fn rep_code(rounds: u32) -> Result<Diagram> {
    if rounds < 2 {
        return Err(Error::InvalidSpec("rep_code needs at least 2 rounds".into()));
    }
    let mut d = Diagram::new();
    let mut prev: Vec<NodeId> = (0..2)
        .map(|q| d.add_labeled_port(PortDir::Input, format!("in:{q}")))
        .collect();
    for k in 1..=rounds {
        let (hub, _) = d.add_instrument_spider(SpiderKind::X, Phase::ZERO, format!("b{k}"));
        for q in 0..2 {
            let s = d.add_spider(SpiderKind::Z, Phase::ZERO);
            d.add_edge(prev[q], s, EdgeKind::Plain)?;
            d.add_edge(s, hub, EdgeKind::Plain)?;
            prev[q] = s;
        }
    }
    for q in 0..2 {
        let o = d.add_labeled_port(PortDir::Output, format!("out:{q}"));
        d.add_edge(prev[q], o, EdgeKind::Plain)?;
    }
    Ok(d)
}

// ---- small reference circuits ------------------------------------------------

/// GHZ preparation circuit: |0⟩⊗3, H on the first qubit, two CNOTs.
pub fn ghz_circuit() -> Diagram {
    let mut d = Diagram::new();
    // qubit 0: |0> -H- ctrl - ctrl - port
    let p0 = d.add_spider(SpiderKind::X, Phase::ZERO);
    let c1 = d.add_spider(SpiderKind::Z, Phase::ZERO);
    let c2 = d.add_spider(SpiderKind::Z, Phase::ZERO);
    let q0 = d.add_labeled_port(PortDir::Output, "q0");
    d.add_edge(p0, c1, EdgeKind::Hadamard).unwrap();
    d.add_edge(c1, c2, EdgeKind::Plain).unwrap();
    d.add_edge(c2, q0, EdgeKind::Plain).unwrap();
    for (i, ctrl) in [(1usize, c1), (2, c2)] {
        let prep = d.add_spider(SpiderKind::X, Phase::ZERO);
        let tgt = d.add_spider(SpiderKind::X, Phase::ZERO);
        let port = d.add_labeled_port(PortDir::Output, format!("q{i}"));
        d.add_edge(prep, tgt, EdgeKind::Plain).unwrap();
        d.add_edge(tgt, port, EdgeKind::Plain).unwrap();
        d.add_edge(ctrl, tgt, EdgeKind::Plain).unwrap();
    }
    d
}

/// Ring graph-state preparation circuit: |+⟩ per qubit and one CZ per ring
/// edge, each CZ as a pair of Hadamard-connected Z spiders on the wires.
pub fn ring_circuit(n: usize) -> Diagram {
    let mut d = Diagram::new();
    let mut last: Vec<NodeId> =
        (0..n).map(|_| d.add_spider(SpiderKind::Z, Phase::ZERO)).collect(); // |+> preps
    for i in 0..n {
        let j = (i + 1) % n;
        let a = d.add_spider(SpiderKind::Z, Phase::ZERO);
        let b = d.add_spider(SpiderKind::Z, Phase::ZERO);
        d.add_edge(last[i], a, EdgeKind::Plain).unwrap();
        d.add_edge(last[j], b, EdgeKind::Plain).unwrap();
        d.add_edge(a, b, EdgeKind::Hadamard).unwrap();
        last[i] = a;
        last[j] = b;
    }
    for (i, s) in last.iter().enumerate() {
        let p = d.add_labeled_port(PortDir::Output, format!("q{i}"));
        d.add_edge(*s, p, EdgeKind::Plain).unwrap();
    }
    d
}

/// The ancilla-based ZZ measurement circuit: ancilla |0⟩, two CNOTs with the
/// data wires as controls, then a Z measurement of the ancilla.
pub fn zz_meas_circuit() -> Diagram {
    let mut d = Diagram::new();
    let prep = d.add_spider(SpiderKind::X, Phase::ZERO); // |0>
    let t1 = d.add_spider(SpiderKind::X, Phase::ZERO);
    let t2 = d.add_spider(SpiderKind::X, Phase::ZERO);
    let (meas, _) = d.add_instrument_spider(SpiderKind::X, Phase::ZERO, "b");
    d.add_edge(prep, t1, EdgeKind::Plain).unwrap();
    d.add_edge(t1, t2, EdgeKind::Plain).unwrap();
    d.add_edge(t2, meas, EdgeKind::Plain).unwrap();
    for q in 0..2 {
        let (_, c, _) = wire(&mut d, &format!("{q}"), SpiderKind::Z);
        d.add_edge(c, if q == 0 { t1 } else { t2 }, EdgeKind::Plain).unwrap();
    }
    d
}

/// Bell measurement circuit: CNOT, H on the first qubit, two destructive Z
/// measurements.
pub fn bell_circuit() -> Diagram {
    let mut d = Diagram::new();
    let i1 = d.add_labeled_port(PortDir::Input, "in:0");
    let i2 = d.add_labeled_port(PortDir::Input, "in:1");
    let c = d.add_spider(SpiderKind::Z, Phase::ZERO);
    let t = d.add_spider(SpiderKind::X, Phase::ZERO);
    let (m1, _) = d.add_instrument_spider(SpiderKind::X, Phase::ZERO, "bXX");
    let (m2, _) = d.add_instrument_spider(SpiderKind::X, Phase::ZERO, "bZZ");
    d.add_edge(i1, c, EdgeKind::Plain).unwrap();
    d.add_edge(c, t, EdgeKind::Plain).unwrap();
    d.add_edge(c, m1, EdgeKind::Hadamard).unwrap(); // H then Z-measure
    d.add_edge(i2, t, EdgeKind::Plain).unwrap();
    d.add_edge(t, m2, EdgeKind::Plain).unwrap();
    d
}

// ---- gadget splicing ----------------------------------------------------------

/// Splice a destructive Bell measurement into an edge: the X instrument
/// (emitting the ZZ outcome) lands on the `near` endpoint's side.
///
/// Returns (xx var, zz var, x spider, z spider).
pub fn splice_fusion(
    d: &mut Diagram,
    edge: EdgeId,
    near: NodeId,
    label: &str,
) -> Result<(VarId, VarId, NodeId, NodeId)> {
    let e = *d.edge(edge).ok_or(Error::UnknownEdge(edge))?;
    if e.kind != EdgeKind::Plain {
        return Err(Error::ContractViolation("fusion splices into a plain edge".into()));
    }
    let far = e.other(near);
    d.remove_edge(edge)?;
    let (x, zz_var) = d.add_instrument_spider(SpiderKind::X, Phase::ZERO, format!("bZZ@{label}"));
    let (z, xx_var) = d.add_instrument_spider(SpiderKind::Z, Phase::ZERO, format!("bXX@{label}"));
    d.add_edge(near, x, EdgeKind::Plain)?;
    d.add_edge(x, z, EdgeKind::Plain)?;
    d.add_edge(z, far, EdgeKind::Plain)?;
    Ok((xx_var, zz_var, x, z))
}

/// Splice a non-destructive pair-parity hub into an edge between two
/// like-colored wire spiders. The hub takes the opposite color.
pub fn splice_pair(
    d: &mut Diagram,
    edge: EdgeId,
    hub_kind: SpiderKind,
    label: &str,
) -> Result<(VarId, NodeId)> {
    let e = *d.edge(edge).ok_or(Error::UnknownEdge(edge))?;
    if e.kind != EdgeKind::Plain {
        return Err(Error::ContractViolation("pair hub splices into a plain edge".into()));
    }
    let (a, b) = (e.a, e.b);
    d.remove_edge(edge)?;
    let (hub, var) = d.add_instrument_spider(hub_kind, Phase::ZERO, label);
    d.add_edge(a, hub, EdgeKind::Plain)?;
    d.add_edge(hub, b, EdgeKind::Plain)?;
    Ok((var, hub))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::web_basis;

    #[test]
    fn gadget_diagrams_are_valid() {
        use GadgetName::*;
        for name in [
            PrepZ0, PrepX1, PrepY0, ProjZ1, Cnot, Cz, ZRot(1), ZzMeas, XxMeas, YyMeas, BellMeas,
            W4ZMeas, W4XMeas,
        ] {
            let d = gadget(name);
            assert!(d.is_valid(), "{name:?} invalid: {:?}", d.validate());
        }
    }

    #[test]
    fn rep_code_counts() {
        let d = rep_code(2).unwrap();
        assert_eq!(d.num_ports(), 4);
        assert_eq!(d.outcome_vars().count(), 2);
        let basis = web_basis(&d).unwrap();
        assert_eq!(basis.outer.len(), 4);
        assert_eq!(basis.checks.len(), 1);
        let d3 = rep_code(3).unwrap();
        assert_eq!(web_basis(&d3).unwrap().checks.len(), 2);
    }

    #[test]
    fn graph_state_single_vertex_is_plus() {
        let d = graph_state(1, &[]).unwrap();
        let basis = web_basis(&d).unwrap();
        assert_eq!(basis.outer.len(), 1);
        let sig = basis.outer[0].outer_signature(&d);
        assert_eq!(sig.0.values().next().copied(), Some(crate::web::PauliLetter::X));
    }

    #[test]
    fn six_ring_stabilizers() {
        let edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let d = graph_state(6, &edges).unwrap();
        let basis = web_basis(&d).unwrap();
        assert_eq!(basis.outer.len(), 6);
        // Z_{j-1} X_j Z_{j+1} for each j
        use crate::web::{find_web_with_signature, PauliLetter};
        let ports: Vec<_> = d.ports().map(|(id, _)| id).collect();
        for j in 0..6 {
            let mut pins = std::collections::BTreeMap::new();
            pins.insert(ports[(j + 5) % 6], PauliLetter::Z);
            pins.insert(ports[j], PauliLetter::X);
            pins.insert(ports[(j + 1) % 6], PauliLetter::Z);
            let web = find_web_with_signature(&d, &pins).unwrap();
            assert!(web.is_some(), "missing ring stabilizer {j}");
            assert!(web.unwrap().sign(&d).unwrap().is_zero());
        }
    }

    #[test]
    fn path_graph_stabilizers() {
        // path of 3 vertices: XZI, ZXZ, IZX
        let d = graph_state(3, &[(0, 1), (1, 2)]).unwrap();
        use crate::web::{find_web_with_signature, PauliLetter::*};
        let ports: Vec<_> = d.ports().map(|(id, _)| id).collect();
        for sig in [[X, Z, I], [Z, X, Z], [I, Z, X]] {
            let pins = ports.iter().copied().zip(sig).collect();
            assert!(find_web_with_signature(&d, &pins).unwrap().is_some());
        }
    }
}
