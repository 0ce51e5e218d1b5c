//! Directed diagram rewriting: fuse, split, color flip and identity
//! removal, plus reduction to canonical form and transport of Pauli webs
//! through every step.
//!
//! The rules form a terminating directed system: color flips apply only to
//! X spiders, fusing strictly decreases the spider count, and identity
//! removal does too. The canonical form has only Z spiders, Hadamards only
//! as edge kinds, no plain edge between spiders, and no bare degree-2
//! phase-0 spiders.

use serde::{Deserialize, Serialize};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{Diagram, EdgeId, EdgeKind, NodeId, Phase};
use crate::error::{Error, Result};
use crate::web::PauliWeb;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum RewriteStep {
    ColorFlip {
        spider: NodeId,
    },
    Fuse {
        keep: NodeId,
        absorb: NodeId,
        consumed: EdgeId,
        /// Parallel edges that became self-loops and were normalized away;
        /// each Hadamard loop bumped the surviving spider's phase by π.
        removed_loops: Vec<(EdgeId, EdgeKind)>,
    },
    Split {
        spider: NodeId,
        new_spider: NodeId,
        new_edge: EdgeId,
        moved: Vec<EdgeId>,
        instrument_moved: bool,
    },
    RemoveIdentity {
        spider: NodeId,
        e1: EdgeId,
        e2: EdgeId,
        e1_kind: EdgeKind,
        /// Whether e1's `a` endpoint was the surviving endpoint `a`.
        e1_anchored_outside: bool,
        merged: EdgeId,
        /// Set when the merged edge closed into a self-loop and was
        /// normalized away.
        loop_removed: Option<EdgeKind>,
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RewriteTrace(pub Vec<RewriteStep>);

impl RewriteTrace {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extend(&mut self, other: RewriteTrace) {
        self.0.extend(other.0);
    }
}

/// Remove self-loops on a spider: a plain loop is only a scalar, a Hadamard
/// loop additionally bumps the phase by π.
fn normalize_loops(d: &mut Diagram, spider: NodeId) -> Vec<(EdgeId, EdgeKind)> {
    let loops: Vec<(EdgeId, EdgeKind)> = d
        .incident_edges(spider)
        .iter()
        .filter_map(|e| {
            let edge = d.edge(*e).unwrap();
            edge.is_loop().then_some((*e, edge.kind))
        })
        .collect();
    for (e, kind) in &loops {
        d.remove_edge(*e).unwrap();
        if *kind == EdgeKind::Hadamard {
            let s = d.spider_mut(spider).unwrap();
            s.phase = s.phase.add(Phase::PI);
        }
    }
    loops
}

/// Merge two simply connected like-colored spiders across a plain edge.
pub fn fuse(d: &mut Diagram, s1: NodeId, s2: NodeId) -> Result<RewriteStep> {
    if s1 == s2 {
        return Err(Error::RuleNotApplicable("cannot fuse a spider with itself".into()));
    }
    let (k1, k2) = match (d.spider(s1), d.spider(s2)) {
        (Some(a), Some(b)) => (a.kind, b.kind),
        _ => return Err(Error::RuleNotApplicable("fuse requires two spiders".into())),
    };
    if k1 != k2 {
        return Err(Error::RuleNotApplicable("fuse requires like-colored spiders".into()));
    }
    let consumed = *d
        .plain_edges_between(s1, s2)
        .first()
        .ok_or_else(|| Error::RuleNotApplicable("no plain edge between spiders".into()))?;
    d.remove_edge(consumed)?;

    // re-point absorbed edges
    let absorbed_edges: Vec<EdgeId> = d.incident_edges(s2).to_vec();
    for e in &absorbed_edges {
        let edge = *d.edge(*e).unwrap();
        let new_a = if edge.a == s2 { s1 } else { edge.a };
        let new_b = if edge.b == s2 { s1 } else { edge.b };
        d.remove_edge(*e).unwrap();
        let id = d.add_edge_with_id(*e, new_a, new_b, edge.kind)?;
        debug_assert_eq!(id, *e);
    }
    let absorbed = d.remove_node(s2)?;
    let absorbed = match absorbed {
        crate::diagram::Node::Spider(s) => s,
        _ => unreachable!(),
    };
    {
        let keep = d.spider_mut(s1).unwrap();
        keep.phase = keep.phase.add(absorbed.phase);
        match (&mut keep.instrument, absorbed.instrument) {
            (Some(mine), Some(theirs)) => mine.xor_assign(&theirs),
            (mine @ None, Some(theirs)) => *mine = Some(theirs),
            _ => {}
        }
    }
    let removed_loops = normalize_loops(d, s1);
    Ok(RewriteStep::Fuse { keep: s1, absorb: s2, consumed, removed_loops })
}

/// Split a spider in two across a fresh plain edge; `moved` names the edges
/// that go to the new spider.
pub fn split(
    d: &mut Diagram,
    spider: NodeId,
    moved: &[EdgeId],
    instrument_moved: bool,
) -> Result<RewriteStep> {
    let s = d
        .spider(spider)
        .ok_or_else(|| Error::RuleNotApplicable("split requires a spider".into()))?
        .clone();
    let all: Vec<EdgeId> = d.incident_edges(spider).to_vec();
    if all.iter().any(|e| d.edge(*e).unwrap().is_loop()) {
        return Err(Error::RuleNotApplicable("split on spider with self-loop".into()));
    }
    for e in moved {
        if !all.contains(e) {
            return Err(Error::ContractViolation(format!("edge {e} is not incident to {spider}")));
        }
    }
    if moved.is_empty() || moved.len() == all.len() {
        return Err(Error::RuleNotApplicable("split needs two nonempty port groups".into()));
    }
    let new_spider = d.add_spider(s.kind, Phase::ZERO);
    for e in moved {
        let edge = *d.edge(*e).unwrap();
        let new_a = if edge.a == spider { new_spider } else { edge.a };
        let new_b = if edge.b == spider { new_spider } else { edge.b };
        d.remove_edge(*e).unwrap();
        let id = d.add_edge_with_id(*e, new_a, new_b, edge.kind)?;
        debug_assert_eq!(id, *e);
    }
    let new_edge = d.add_edge(spider, new_spider, EdgeKind::Plain)?;
    if instrument_moved {
        let (phase, instrument) = {
            let old = d.spider_mut(spider).unwrap();
            let phase = old.phase;
            old.phase = Phase::ZERO;
            (phase, old.instrument.take())
        };
        let fresh = d.spider_mut(new_spider).unwrap();
        fresh.phase = phase;
        fresh.instrument = instrument;
    }
    Ok(RewriteStep::Split {
        spider,
        new_spider,
        new_edge,
        moved: moved.to_vec(),
        instrument_moved,
    })
}

/// Toggle a spider's color and every incident edge's kind.
pub fn color_flip(d: &mut Diagram, spider: NodeId) -> Result<RewriteStep> {
    let s = d
        .spider(spider)
        .ok_or_else(|| Error::RuleNotApplicable("color flip requires a spider".into()))?;
    let kind = s.kind.flipped();
    d.spider_mut(spider).unwrap().kind = kind;
    let incident: Vec<EdgeId> = d.incident_edges(spider).to_vec();
    for e in incident {
        let edge = d.edge_mut(e).unwrap();
        // a self-loop would toggle twice; loops never survive normalization
        edge.kind = edge.kind.xor(EdgeKind::Hadamard);
    }
    Ok(RewriteStep::ColorFlip { spider })
}

/// Delete a bare degree-2 phase-0 spider, merging its edges.
pub fn remove_identity(d: &mut Diagram, spider: NodeId) -> Result<RewriteStep> {
    let s = d
        .spider(spider)
        .ok_or_else(|| Error::RuleNotApplicable("identity removal requires a spider".into()))?;
    if s.phase != Phase::ZERO || s.instrument.is_some() {
        return Err(Error::RuleNotApplicable("identity spider must be phase-0 and bare".into()));
    }
    let incident: Vec<EdgeId> = d.incident_edges(spider).to_vec();
    if incident.len() != 2 || incident.iter().any(|e| d.edge(*e).unwrap().is_loop()) {
        return Err(Error::RuleNotApplicable("identity spider must have exactly two plain ports".into()));
    }
    let (e1, e2) = (incident[0], incident[1]);
    let edge1 = *d.edge(e1).unwrap();
    let edge2 = *d.edge(e2).unwrap();
    let a = edge1.other(spider);
    let b = edge2.other(spider);
    let merged_kind = edge1.kind.xor(edge2.kind);
    let e1_anchored_outside = edge1.a == a;
    d.remove_node(spider)?; // cascades e1, e2
    let merged = d.add_edge(a, b, merged_kind)?;
    let mut loop_removed = None;
    if a == b {
        // closed into a loop; normalize right away
        let removed = normalize_loops(d, a);
        debug_assert_eq!(removed.len(), 1);
        loop_removed = Some(merged_kind);
    }
    Ok(RewriteStep::RemoveIdentity {
        spider,
        e1,
        e2,
        e1_kind: edge1.kind,
        e1_anchored_outside,
        merged,
        loop_removed,
    })
}

/// Transport a web valid on the pre-diagram of `step` onto the
/// post-diagram `d`. The outer signature and sign expression are
/// preserved; highlights on new edges are forced by the spider rules.
pub fn transport_web(web: &PauliWeb, step: &RewriteStep, d: &Diagram) -> Result<PauliWeb> {
    let mut out = web.clone();
    match step {
        RewriteStep::ColorFlip { spider } => {
            for e in d.incident_edges(*spider) {
                let edge = d.edge(*e).unwrap();
                if edge.a == *spider {
                    let (r, g) = out.value(*e);
                    out.set(*e, g, r);
                }
            }
        }
        RewriteStep::Fuse { consumed, removed_loops, .. } => {
            out.set(*consumed, false, false);
            for (e, _) in removed_loops {
                out.set(*e, false, false);
            }
        }
        RewriteStep::Split { new_spider, new_edge, .. } => {
            let spider_kind = d
                .spider(*new_spider)
                .ok_or_else(|| Error::ContractViolation("split target missing".into()))?
                .kind;
            let mut own = false;
            let mut other_parity = false;
            for e in d.incident_edges(*new_spider) {
                if e == new_edge {
                    continue;
                }
                let (r, g) = out.value_at(d, *e, *new_spider);
                let (o, x) = match spider_kind {
                    crate::diagram::SpiderKind::Z => (g, r),
                    crate::diagram::SpiderKind::X => (r, g),
                };
                own = own || o;
                other_parity ^= x;
            }
            let (r, g) = match spider_kind {
                crate::diagram::SpiderKind::Z => (other_parity, own),
                crate::diagram::SpiderKind::X => (own, other_parity),
            };
            // plain edge: anchored value equals both end values
            out.set(*new_edge, r, g);
        }
        RewriteStep::RemoveIdentity {
            e1,
            e2,
            e1_kind,
            e1_anchored_outside,
            merged,
            loop_removed,
            ..
        } => {
            let v = out.value(*e1);
            let at_a = if *e1_anchored_outside {
                v
            } else if *e1_kind == EdgeKind::Plain {
                v
            } else {
                (v.1, v.0)
            };
            out.set(*e1, false, false);
            out.set(*e2, false, false);
            if loop_removed.is_none() {
                // merged edge is anchored at the `a` side by construction
                out.set(*merged, at_a.0, at_a.1);
            }
        }
    }
    Ok(out)
}

/// Transport webs through a trace by replaying it from the pre-state
/// diagram; each step is transported against its own post-state.
pub fn transport_through(
    pre: &Diagram,
    trace: &RewriteTrace,
    webs: &[PauliWeb],
) -> Result<(Diagram, Vec<PauliWeb>)> {
    let mut work = pre.clone();
    let mut webs: Vec<PauliWeb> = webs.to_vec();
    for step in &trace.0 {
        apply(&mut work, step)?;
        for web in &mut webs {
            *web = transport_web(web, step, &work)?;
        }
    }
    Ok((work, webs))
}

/// Replay a recorded step on a diagram in the same pre-state; fresh ids are
/// allocated identically, so the recorded ids must match.
pub fn apply(d: &mut Diagram, step: &RewriteStep) -> Result<()> {
    match step {
        RewriteStep::ColorFlip { spider } => {
            color_flip(d, *spider)?;
        }
        RewriteStep::Fuse { keep, absorb, consumed, removed_loops } => {
            let got = fuse(d, *keep, *absorb)?;
            match got {
                RewriteStep::Fuse { consumed: c2, removed_loops: l2, .. } => {
                    if c2 != *consumed || l2 != *removed_loops {
                        return Err(Error::ContractViolation("fuse replay mismatch".into()));
                    }
                }
                _ => unreachable!(),
            }
        }
        RewriteStep::Split { spider, new_spider, new_edge, moved, instrument_moved } => {
            let got = split(d, *spider, moved, *instrument_moved)?;
            match got {
                RewriteStep::Split { new_spider: s2, new_edge: e2, .. } => {
                    if s2 != *new_spider || e2 != *new_edge {
                        return Err(Error::ContractViolation("split replay mismatch".into()));
                    }
                }
                _ => unreachable!(),
            }
        }
        RewriteStep::RemoveIdentity { spider, merged, .. } => {
            let got = remove_identity(d, *spider)?;
            match got {
                RewriteStep::RemoveIdentity { merged: m2, .. } => {
                    if m2 != *merged {
                        return Err(Error::ContractViolation("identity replay mismatch".into()));
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    Flip(NodeId),
    FuseAcross(EdgeId),
    RemoveId(NodeId),
}

fn applicable_moves(d: &Diagram) -> Vec<Move> {
    let mut moves = Vec::new();
    for (id, s) in d.spiders() {
        if s.kind == crate::diagram::SpiderKind::X {
            moves.push(Move::Flip(id));
        }
        if s.phase == Phase::ZERO
            && s.instrument.is_none()
            && d.degree(id) == 2
            && d.incident_edges(id).len() == 2
            && !d.incident_edges(id).iter().any(|e| d.edge(*e).unwrap().is_loop())
        {
            moves.push(Move::RemoveId(id));
        }
    }
    for (eid, edge) in d.edges() {
        if edge.kind != EdgeKind::Plain || edge.is_loop() {
            continue;
        }
        if let (Some(a), Some(b)) = (d.spider(edge.a), d.spider(edge.b)) {
            if a.kind == b.kind {
                moves.push(Move::FuseAcross(eid));
            }
        }
    }
    moves
}

fn apply_move(d: &mut Diagram, m: Move) -> Result<RewriteStep> {
    match m {
        Move::Flip(s) => color_flip(d, s),
        Move::FuseAcross(e) => {
            let edge = *d.edge(e).ok_or(Error::UnknownEdge(e))?;
            fuse(d, edge.a.min(edge.b), edge.a.max(edge.b))
        }
        Move::RemoveId(s) => remove_identity(d, s),
    }
}

/// Reduce to canonical form: flip all X spiders, then saturate fusion and
/// identity removal. Deterministic rule order.
pub fn to_canonical(d: &mut Diagram) -> Result<RewriteTrace> {
    let mut trace = RewriteTrace::default();
    let flips: Vec<NodeId> = d
        .spiders()
        .filter(|(_, s)| s.kind == crate::diagram::SpiderKind::X)
        .map(|(id, _)| id)
        .collect();
    for s in flips {
        trace.0.push(color_flip(d, s)?);
    }
    loop {
        let moves = applicable_moves(d);
        let next = moves
            .iter()
            .find(|m| matches!(m, Move::FuseAcross(_)))
            .or_else(|| moves.iter().find(|m| matches!(m, Move::RemoveId(_))));
        match next {
            Some(m) => trace.0.push(apply_move(d, *m)?),
            None => break,
        }
    }
    Ok(trace)
}

/// Canonicalization with a randomized rule order (for confluence testing).
pub fn to_canonical_shuffled<R: Rng + ?Sized>(d: &mut Diagram, rng: &mut R) -> Result<RewriteTrace> {
    let mut trace = RewriteTrace::default();
    loop {
        let moves = applicable_moves(d);
        if moves.is_empty() {
            break;
        }
        let m = *moves.choose(rng).unwrap();
        trace.0.push(apply_move(d, m)?);
    }
    Ok(trace)
}

/// Saturate fusion only (merges wire runs without touching colors).
pub fn fuse_saturate(d: &mut Diagram) -> Result<RewriteTrace> {
    let mut trace = RewriteTrace::default();
    loop {
        let moves = applicable_moves(d);
        match moves.iter().find(|m| matches!(m, Move::FuseAcross(_))) {
            Some(m) => trace.0.push(apply_move(d, *m)?),
            None => break,
        }
    }
    Ok(trace)
}

/// Canonical-form properties: only Z spiders, no plain spider-spider edge,
/// no removable identity spider, no self-loop.
pub fn is_canonical(d: &Diagram) -> bool {
    let all_z = d.spiders().all(|(_, s)| s.kind == crate::diagram::SpiderKind::Z);
    let no_plain = d.edges().all(|(_, e)| {
        e.kind == EdgeKind::Hadamard || d.spider(e.a).is_none() || d.spider(e.b).is_none()
    });
    let no_identity = !applicable_moves(d).iter().any(|m| matches!(m, Move::RemoveId(_)));
    let no_loops = d.edges().all(|(_, e)| !e.is_loop());
    all_z && no_plain && no_identity && no_loops
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{OutcomeExpr, PortDir, SpiderKind};
    use crate::fingerprint::fingerprint;
    use std::collections::BTreeMap;

    fn two_spiders_with_ports(kind: SpiderKind, edges: usize) -> (Diagram, NodeId, NodeId) {
        let mut d = Diagram::new();
        let s1 = d.add_spider(kind, Phase::ZERO);
        let s2 = d.add_spider(kind, Phase::ZERO);
        for i in 0..2 {
            let p = d.add_labeled_port(PortDir::Input, format!("i{i}"));
            d.add_edge(p, s1, EdgeKind::Plain).unwrap();
            let q = d.add_labeled_port(PortDir::Output, format!("o{i}"));
            d.add_edge(s2, q, EdgeKind::Plain).unwrap();
        }
        for _ in 0..edges {
            d.add_edge(s1, s2, EdgeKind::Plain).unwrap();
        }
        (d, s1, s2)
    }

    #[test]
    fn fuse_merges_ports_and_phase() {
        let (mut d, s1, s2) = two_spiders_with_ports(SpiderKind::Z, 1);
        d.spider_mut(s1).unwrap().phase = Phase::PI;
        d.spider_mut(s2).unwrap().phase = Phase::PI;
        fuse(&mut d, s1, s2).unwrap();
        assert_eq!(d.num_spiders(), 1);
        assert_eq!(d.degree(s1), 4);
        assert_eq!(d.spider(s1).unwrap().phase, Phase::ZERO);
        assert!(d.is_valid());
    }

    #[test]
    fn fuse_requires_like_colors_and_plain_edge() {
        let mut d = Diagram::new();
        let z = d.add_spider(SpiderKind::Z, Phase::ZERO);
        let x = d.add_spider(SpiderKind::X, Phase::ZERO);
        d.add_edge(z, x, EdgeKind::Plain).unwrap();
        assert!(matches!(fuse(&mut d, z, x), Err(Error::RuleNotApplicable(_))));

        let mut d = Diagram::new();
        let a = d.add_spider(SpiderKind::Z, Phase::ZERO);
        let b = d.add_spider(SpiderKind::Z, Phase::ZERO);
        d.add_edge(a, b, EdgeKind::Hadamard).unwrap();
        assert!(matches!(fuse(&mut d, a, b), Err(Error::RuleNotApplicable(_))));
    }

    #[test]
    fn fuse_instruments_xors_outcomes() {
        let mut d = Diagram::new();
        let (s1, v1) = d.add_instrument_spider(SpiderKind::X, Phase::ZERO, "b1");
        let (s2, v2) = d.add_instrument_spider(SpiderKind::X, Phase::ZERO, "b2");
        let i = d.add_port(PortDir::Input);
        let o = d.add_port(PortDir::Output);
        d.add_edge(i, s1, EdgeKind::Plain).unwrap();
        d.add_edge(s1, s2, EdgeKind::Plain).unwrap();
        d.add_edge(s2, o, EdgeKind::Plain).unwrap();
        fuse(&mut d, s1, s2).unwrap();
        let expr = d.spider(s1).unwrap().instrument.clone().unwrap();
        assert_eq!(expr, OutcomeExpr::var(v1).xor(&OutcomeExpr::var(v2)));
    }

    #[test]
    fn parallel_plain_edges_become_scalar() {
        let (mut d, s1, s2) = two_spiders_with_ports(SpiderKind::Z, 2);
        let step = fuse(&mut d, s1, s2).unwrap();
        match step {
            RewriteStep::Fuse { removed_loops, .. } => assert_eq!(removed_loops.len(), 1),
            _ => unreachable!(),
        }
        assert_eq!(d.spider(s1).unwrap().phase, Phase::ZERO);
        assert!(d.is_valid());
    }

    #[test]
    fn parallel_hadamard_edge_bumps_phase() {
        let (mut d, s1, s2) = two_spiders_with_ports(SpiderKind::Z, 1);
        d.add_edge(s1, s2, EdgeKind::Hadamard).unwrap();
        fuse(&mut d, s1, s2).unwrap();
        assert_eq!(d.spider(s1).unwrap().phase, Phase::PI);
    }

    #[test]
    fn split_then_fuse_is_identity() {
        let mut d = Diagram::new();
        let s = d.add_spider(SpiderKind::Z, Phase::ZERO);
        for i in 0..4 {
            let p = d.add_labeled_port(PortDir::Output, format!("q{i}"));
            d.add_edge(s, p, EdgeKind::Plain).unwrap();
        }
        let before = fingerprint(&d);
        let moved: Vec<EdgeId> = d.incident_edges(s)[2..].to_vec();
        let step = split(&mut d, s, &moved, false).unwrap();
        assert_eq!(d.num_spiders(), 2);
        match step {
            RewriteStep::Split { spider, new_spider, .. } => {
                fuse(&mut d, spider, new_spider).unwrap();
            }
            _ => unreachable!(),
        }
        assert_eq!(fingerprint(&d), before);
    }

    #[test]
    fn color_flip_is_involution() {
        let mut d = Diagram::new();
        let x = d.add_spider(SpiderKind::X, Phase::ZERO);
        for _ in 0..3 {
            let p = d.add_port(PortDir::Output);
            d.add_edge(x, p, EdgeKind::Plain).unwrap();
        }
        let before = fingerprint(&d);
        color_flip(&mut d, x).unwrap();
        assert_eq!(d.spider(x).unwrap().kind, SpiderKind::Z);
        assert!(d.edges().all(|(_, e)| e.kind == EdgeKind::Hadamard));
        color_flip(&mut d, x).unwrap();
        assert_eq!(fingerprint(&d), before);
    }

    #[test]
    fn identity_removal_xors_kinds() {
        for (k1, k2, want) in [
            (EdgeKind::Plain, EdgeKind::Plain, EdgeKind::Plain),
            (EdgeKind::Hadamard, EdgeKind::Hadamard, EdgeKind::Plain),
            (EdgeKind::Plain, EdgeKind::Hadamard, EdgeKind::Hadamard),
        ] {
            let mut d = Diagram::new();
            let a = d.add_port(PortDir::Input);
            let b = d.add_port(PortDir::Output);
            let s = d.add_spider(SpiderKind::Z, Phase::ZERO);
            d.add_edge(a, s, k1).unwrap();
            d.add_edge(s, b, k2).unwrap();
            let step = remove_identity(&mut d, s).unwrap();
            match step {
                RewriteStep::RemoveIdentity { merged, .. } => {
                    assert_eq!(d.edge(merged).unwrap().kind, want);
                }
                _ => unreachable!(),
            }
            assert_eq!(d.num_spiders(), 0);
        }
    }

    #[test]
    fn identity_removal_guards() {
        let mut d = Diagram::new();
        let s = d.add_spider(SpiderKind::Z, Phase::PI);
        let a = d.add_port(PortDir::Input);
        let b = d.add_port(PortDir::Output);
        d.add_edge(a, s, EdgeKind::Plain).unwrap();
        d.add_edge(s, b, EdgeKind::Plain).unwrap();
        assert!(matches!(remove_identity(&mut d, s), Err(Error::RuleNotApplicable(_))));
    }

    #[test]
    fn ghz_circuit_reduces_to_single_spider() {
        let d = crate::builders::ghz_circuit();
        let mut canon = d.clone();
        let trace = to_canonical(&mut canon).unwrap();
        assert!(!trace.is_empty());
        assert!(is_canonical(&canon));
        assert_eq!(canon.num_spiders(), 1);
        assert_eq!(canon.num_ports(), 3);
        // semantics preserved for the GHZ amplitudes
        let t = crate::oracle::dense_contract(&canon, &BTreeMap::new()).unwrap();
        let t0 = crate::oracle::dense_contract(&d, &BTreeMap::new()).unwrap();
        let t0 = t0.permuted(&t.legs);
        assert!(t.proportional(&t0, 1e-9));
    }

    #[test]
    fn canonical_idempotent_and_confluent_on_ghz() {
        use rand::SeedableRng;
        let d = crate::builders::ghz_circuit();
        let mut canon = d.clone();
        to_canonical(&mut canon).unwrap();
        let fp = fingerprint(&canon);
        let mut twice = canon.clone();
        let trace = to_canonical(&mut twice).unwrap();
        assert!(trace.is_empty());
        assert_eq!(fingerprint(&twice), fp);
        for seed in 0..10 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut shuffled = d.clone();
            to_canonical_shuffled(&mut shuffled, &mut rng).unwrap();
            assert_eq!(fingerprint(&shuffled), fp);
        }
    }

    #[test]
    fn trace_replays() {
        let d = crate::builders::ghz_circuit();
        let mut canon = d.clone();
        let trace = to_canonical(&mut canon).unwrap();
        let mut replay = d.clone();
        for step in &trace.0 {
            apply(&mut replay, step).unwrap();
        }
        assert_eq!(fingerprint(&replay), fingerprint(&canon));
    }
}
