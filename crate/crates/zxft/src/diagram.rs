//! The diagram intermediate representation: spiders, typed edges, boundary
//! ports and classical outcome variables.
//!
//! A diagram is a multigraph. Vertices are either spiders (Z or X, with a
//! phase in quarter turns of π/2 and an optional classical outcome port) or
//! boundary ports. Edges are plain or Hadamard; a Hadamard box is never a
//! vertex, it is folded into the edge type. Multi-edges are permitted;
//! self-loops appear only transiently inside rewrites and are removed by
//! normalization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod serial;

pub use serial::{from_json, to_json, to_json_with_coords, to_json_with_meta};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
pub struct VarId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum SpiderKind {
    Z,
    X,
}

impl SpiderKind {
    pub fn flipped(self) -> SpiderKind {
        match self {
            SpiderKind::Z => SpiderKind::X,
            SpiderKind::X => SpiderKind::Z,
        }
    }
}

/// Spider phase in quarter turns: `k` means `k·π/2`, with `k ∈ {0,1,2,3}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Phase(u8);

impl Phase {
    pub const ZERO: Phase = Phase(0);
    pub const PI: Phase = Phase(2);

    pub fn new(quarter_turns: u8) -> Phase {
        Phase(quarter_turns % 4)
    }

    pub fn quarter_turns(self) -> u8 {
        self.0
    }

    pub fn is_pauli(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn is_pi(self) -> bool {
        self.0 == 2
    }

    #[must_use]
    pub fn add(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }
}

/// An affine GF(2) combination of primitive outcome bits:
/// `constant ⊕ (⊕ vars)`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct OutcomeExpr {
    pub vars: BTreeSet<VarId>,
    pub constant: bool,
}

impl OutcomeExpr {
    pub fn zero() -> OutcomeExpr {
        OutcomeExpr::default()
    }

    pub fn constant(bit: bool) -> OutcomeExpr {
        OutcomeExpr { vars: BTreeSet::new(), constant: bit }
    }

    pub fn var(v: VarId) -> OutcomeExpr {
        OutcomeExpr { vars: BTreeSet::from([v]), constant: false }
    }

    pub fn is_zero(&self) -> bool {
        self.vars.is_empty() && !self.constant
    }

    pub fn xor_assign(&mut self, other: &OutcomeExpr) {
        self.constant ^= other.constant;
        for v in &other.vars {
            if !self.vars.remove(v) {
                self.vars.insert(*v);
            }
        }
    }

    #[must_use]
    pub fn xor(&self, other: &OutcomeExpr) -> OutcomeExpr {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Evaluate under an assignment of the primitive bits. Unassigned
    /// variables count as 0.
    pub fn eval(&self, assignment: &BTreeMap<VarId, bool>) -> bool {
        let mut acc = self.constant;
        for v in &self.vars {
            acc ^= assignment.get(v).copied().unwrap_or(false);
        }
        acc
    }
}

impl fmt::Display for OutcomeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        if self.constant {
            terms.push("1".into());
        }
        for v in &self.vars {
            terms.push(v.to_string());
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Spider {
    pub kind: SpiderKind,
    pub phase: Phase,
    /// Present iff the spider has a classical output port. The expression
    /// tracks parities of primitive outcome bits through merges.
    pub instrument: Option<OutcomeExpr>,
    pub coord: Option<[f64; 3]>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum PortDir {
    Input,
    Output,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Port {
    pub dir: PortDir,
    pub label: Option<String>,
    pub coord: Option<[f64; 3]>,
}

#[derive(Clone, PartialEq, Debug)]
pub enum Node {
    Spider(Spider),
    Port(Port),
}

impl Node {
    pub fn as_spider(&self) -> Option<&Spider> {
        match self {
            Node::Spider(s) => Some(s),
            Node::Port(_) => None,
        }
    }

    pub fn as_port(&self) -> Option<&Port> {
        match self {
            Node::Port(p) => Some(p),
            Node::Spider(_) => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum EdgeKind {
    Plain,
    Hadamard,
}

impl EdgeKind {
    /// Kind of two edges merged in series (Hadamards cancel in pairs).
    #[must_use]
    pub fn xor(self, other: EdgeKind) -> EdgeKind {
        if (self == EdgeKind::Hadamard) ^ (other == EdgeKind::Hadamard) {
            EdgeKind::Hadamard
        } else {
            EdgeKind::Plain
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub a: NodeId,
    pub b: NodeId,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn other(&self, n: NodeId) -> NodeId {
        if n == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }
}

/// A ZX instrument network.
#[derive(Clone, Default, Debug)]
pub struct Diagram {
    nodes: BTreeMap<NodeId, Node>,
    edges: BTreeMap<EdgeId, Edge>,
    outcome_vars: BTreeMap<VarId, Option<String>>,
    incidence: BTreeMap<NodeId, Vec<EdgeId>>,
    next_node: u32,
    next_edge: u32,
    next_var: u32,
}

impl Diagram {
    pub fn new() -> Diagram {
        Diagram::default()
    }

    // ---- construction ---------------------------------------------------

    pub fn add_spider(&mut self, kind: SpiderKind, phase: Phase) -> NodeId {
        self.insert_node(Node::Spider(Spider { kind, phase, instrument: None, coord: None }))
    }

    /// Add a spider carrying a fresh primitive outcome variable.
    pub fn add_instrument_spider(
        &mut self,
        kind: SpiderKind,
        phase: Phase,
        label: impl Into<String>,
    ) -> (NodeId, VarId) {
        let var = self.fresh_var(Some(label.into()));
        let id = self.insert_node(Node::Spider(Spider {
            kind,
            phase,
            instrument: Some(OutcomeExpr::var(var)),
            coord: None,
        }));
        (id, var)
    }

    pub fn add_port(&mut self, dir: PortDir) -> NodeId {
        self.insert_node(Node::Port(Port { dir, label: None, coord: None }))
    }

    pub fn add_labeled_port(&mut self, dir: PortDir, label: impl Into<String>) -> NodeId {
        self.insert_node(Node::Port(Port { dir, label: Some(label.into()), coord: None }))
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId, kind: EdgeKind) -> Result<EdgeId> {
        if !self.nodes.contains_key(&a) {
            return Err(Error::Integrity(format!("edge endpoint {a} does not exist")));
        }
        if !self.nodes.contains_key(&b) {
            return Err(Error::Integrity(format!("edge endpoint {b} does not exist")));
        }
        let id = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.insert(id, Edge { a, b, kind });
        self.incidence.get_mut(&a).unwrap().push(id);
        if a != b {
            self.incidence.get_mut(&b).unwrap().push(id);
        }
        Ok(id)
    }

    /// Re-insert an edge under a fixed id (rewrites re-point endpoints
    /// without renaming the edge). The id must be free.
    pub(crate) fn add_edge_with_id(
        &mut self,
        id: EdgeId,
        a: NodeId,
        b: NodeId,
        kind: EdgeKind,
    ) -> Result<EdgeId> {
        if self.edges.contains_key(&id) {
            return Err(Error::Integrity(format!("edge id {id} already in use")));
        }
        for end in [a, b] {
            if !self.nodes.contains_key(&end) {
                return Err(Error::Integrity(format!("edge endpoint {end} does not exist")));
            }
        }
        self.edges.insert(id, Edge { a, b, kind });
        self.incidence.get_mut(&a).unwrap().push(id);
        if a != b {
            self.incidence.get_mut(&b).unwrap().push(id);
        }
        self.next_edge = self.next_edge.max(id.0 + 1);
        Ok(id)
    }

    pub fn fresh_var(&mut self, label: Option<String>) -> VarId {
        let var = VarId(self.next_var);
        self.next_var += 1;
        self.outcome_vars.insert(var, label);
        var
    }

    /// Give an existing bare spider a classical output port with a fresh
    /// outcome variable.
    pub fn attach_instrument(&mut self, spider: NodeId, label: impl Into<String>) -> Result<VarId> {
        let label = label.into();
        match self.nodes.get(&spider) {
            Some(Node::Spider(s)) if s.instrument.is_none() => {}
            Some(Node::Spider(_)) => {
                return Err(Error::Integrity(format!("spider {spider} is already an instrument")))
            }
            _ => return Err(Error::Integrity(format!("no spider {spider}"))),
        }
        let var = self.fresh_var(Some(label));
        if let Some(Node::Spider(s)) = self.nodes.get_mut(&spider) {
            s.instrument = Some(OutcomeExpr::var(var));
        }
        Ok(var)
    }

    fn insert_node(&mut self, node: Node) -> NodeId {
        let id = NodeId(self.next_node);
        self.next_node += 1;
        self.nodes.insert(id, node);
        self.incidence.insert(id, Vec::new());
        id
    }

    // ---- removal ---------------------------------------------------------

    pub fn remove_edge(&mut self, id: EdgeId) -> Result<Edge> {
        let edge = self.edges.remove(&id).ok_or(Error::UnknownEdge(id))?;
        self.incidence.get_mut(&edge.a).unwrap().retain(|e| *e != id);
        if edge.a != edge.b {
            self.incidence.get_mut(&edge.b).unwrap().retain(|e| *e != id);
        }
        Ok(edge)
    }

    /// Remove a node together with all incident edges.
    pub fn remove_node(&mut self, id: NodeId) -> Result<Node> {
        let node = self
            .nodes
            .remove(&id)
            .ok_or_else(|| Error::Integrity(format!("node {id} does not exist")))?;
        let incident = self.incidence.remove(&id).unwrap_or_default();
        for e in incident {
            if let Some(edge) = self.edges.remove(&e) {
                let other = edge.other(id);
                if other != id {
                    if let Some(inc) = self.incidence.get_mut(&other) {
                        inc.retain(|x| *x != e);
                    }
                }
            }
        }
        Ok(node)
    }

    // ---- access ----------------------------------------------------------

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(&id)
    }

    pub fn spider(&self, id: NodeId) -> Option<&Spider> {
        self.nodes.get(&id).and_then(Node::as_spider)
    }

    pub fn spider_mut(&mut self, id: NodeId) -> Option<&mut Spider> {
        match self.nodes.get_mut(&id) {
            Some(Node::Spider(s)) => Some(s),
            _ => None,
        }
    }

    pub fn port(&self, id: NodeId) -> Option<&Port> {
        self.nodes.get(&id).and_then(Node::as_port)
    }

    pub fn port_mut(&mut self, id: NodeId) -> Option<&mut Port> {
        match self.nodes.get_mut(&id) {
            Some(Node::Port(p)) => Some(p),
            _ => None,
        }
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub(crate) fn edge_mut(&mut self, id: EdgeId) -> Option<&mut Edge> {
        self.edges.get_mut(&id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Node)> {
        self.nodes.iter().map(|(id, n)| (*id, n))
    }

    pub fn spiders(&self) -> impl Iterator<Item = (NodeId, &Spider)> {
        self.nodes.iter().filter_map(|(id, n)| n.as_spider().map(|s| (*id, s)))
    }

    pub fn ports(&self) -> impl Iterator<Item = (NodeId, &Port)> {
        self.nodes.iter().filter_map(|(id, n)| n.as_port().map(|p| (*id, p)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges.iter().map(|(id, e)| (*id, e))
    }

    pub fn outcome_vars(&self) -> impl Iterator<Item = (VarId, Option<&str>)> {
        self.outcome_vars.iter().map(|(v, l)| (*v, l.as_deref()))
    }

    pub fn var_label(&self, v: VarId) -> Option<&str> {
        self.outcome_vars.get(&v).and_then(|l| l.as_deref())
    }

    pub fn num_spiders(&self) -> usize {
        self.spiders().count()
    }

    pub fn num_ports(&self) -> usize {
        self.ports().count()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Incident edges in insertion order; a self-loop appears once.
    pub fn incident_edges(&self, n: NodeId) -> &[EdgeId] {
        self.incidence.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Degree counting self-loops twice.
    pub fn degree(&self, n: NodeId) -> usize {
        self.incident_edges(n)
            .iter()
            .map(|e| if self.edges[e].is_loop() { 2 } else { 1 })
            .sum()
    }

    pub fn neighbors(&self, n: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.incident_edges(n).iter().map(move |e| self.edges[e].other(n))
    }

    /// Plain edges connecting two given nodes, lowest id first.
    pub fn plain_edges_between(&self, a: NodeId, b: NodeId) -> Vec<EdgeId> {
        self.incident_edges(a)
            .iter()
            .copied()
            .filter(|e| {
                let edge = &self.edges[e];
                edge.kind == EdgeKind::Plain
                    && ((edge.a == a && edge.b == b) || (edge.a == b && edge.b == a))
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn set_coord(&mut self, n: NodeId, coord: [f64; 3]) {
        match self.nodes.get_mut(&n) {
            Some(Node::Spider(s)) => s.coord = Some(coord),
            Some(Node::Port(p)) => p.coord = Some(coord),
            None => {}
        }
    }

    // ---- validation --------------------------------------------------------

    /// Report structural violations. An empty report means the diagram is
    /// well formed.
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        for (eid, edge) in &self.edges {
            for end in [edge.a, edge.b] {
                if !self.nodes.contains_key(&end) {
                    violations.push(format!("edge {eid} references missing node {end}"));
                }
            }
            if edge.is_loop() {
                violations.push(format!("edge {eid} is a self-loop on {}", edge.a));
            }
        }
        for (nid, node) in &self.nodes {
            match node {
                Node::Port(_) => {
                    let deg = self.degree(*nid);
                    if deg != 1 {
                        violations.push(format!("port {nid} has degree {deg}, expected 1"));
                    }
                }
                Node::Spider(s) => {
                    if let Some(expr) = &s.instrument {
                        for v in &expr.vars {
                            if !self.outcome_vars.contains_key(v) {
                                violations
                                    .push(format!("spider {nid} references missing variable {v}"));
                            }
                        }
                    }
                }
            }
        }
        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// All spider phases usable by the stabilizer machinery ({0, π}).
    pub fn is_pauli_phased(&self) -> bool {
        self.spiders().all(|(_, s)| s.phase.is_pauli())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn ghz() -> Diagram {
        let mut d = Diagram::new();
        let s = d.add_spider(SpiderKind::Z, Phase::ZERO);
        for i in 0..3 {
            let p = d.add_labeled_port(PortDir::Output, format!("q{i}"));
            d.add_edge(s, p, EdgeKind::Plain).unwrap();
        }
        d
    }

    #[test]
    fn smallest_diagram() {
        let mut d = Diagram::new();
        d.add_spider(SpiderKind::Z, Phase::ZERO);
        assert_eq!(d.num_spiders(), 1);
        assert_eq!(d.num_edges(), 0);
        assert!(d.is_valid());
    }

    #[test]
    fn ghz_is_valid() {
        let d = ghz();
        assert!(d.is_valid());
        assert_eq!(d.num_ports(), 3);
        assert_eq!(d.num_edges(), 3);
    }

    #[test]
    fn dangling_reference_is_error() {
        let mut d = Diagram::new();
        let s = d.add_spider(SpiderKind::Z, Phase::ZERO);
        let err = d.add_edge(s, NodeId(99), EdgeKind::Plain);
        assert!(matches!(err, Err(Error::Integrity(_))));
    }

    #[test]
    fn port_degree_two_is_violation() {
        let mut d = Diagram::new();
        let s = d.add_spider(SpiderKind::Z, Phase::ZERO);
        let p = d.add_port(PortDir::Input);
        d.add_edge(s, p, EdgeKind::Plain).unwrap();
        d.add_edge(s, p, EdgeKind::Plain).unwrap();
        let report = d.validate();
        assert!(report.iter().any(|v| v.contains("degree 2")));
    }

    #[test]
    fn remove_node_cascades() {
        let mut d = ghz();
        let spider = d.spiders().next().unwrap().0;
        d.remove_node(spider).unwrap();
        assert_eq!(d.num_edges(), 0);
        // ports are now dangling with degree 0
        assert_eq!(d.validate().len(), 3);
    }

    #[test]
    fn outcome_expr_algebra() {
        let a = OutcomeExpr::var(VarId(1));
        let b = OutcomeExpr::var(VarId(2));
        let ab = a.xor(&b);
        assert_eq!(ab.vars.len(), 2);
        assert!(ab.xor(&ab).is_zero());
        assert_eq!(a.xor(&b), b.xor(&a));
        let mut asg = BTreeMap::new();
        asg.insert(VarId(1), true);
        assert!(ab.eval(&asg));
        asg.insert(VarId(2), true);
        assert!(!ab.eval(&asg));
    }

    #[test]
    fn phase_arithmetic() {
        assert_eq!(Phase::PI.add(Phase::PI), Phase::ZERO);
        assert_eq!(Phase::new(3).add(Phase::new(2)), Phase::new(1));
        assert!(Phase::PI.is_pauli());
        assert!(!Phase::new(1).is_pauli());
    }
}
