//! Canonical labeling of diagrams, up to isomorphism.
//!
//! Two diagrams get equal fingerprints iff they are isomorphic as
//! multigraphs respecting spider kinds, phases, edge kinds and
//! boundary-port direction/labels. Classical instrument placement is
//! deliberately *not* part of the fingerprint: the fault-tolerance flavors
//! share one canonical network but attach different outcome sets to it.
//!
//! The algorithm is color refinement plus individualization backtracking,
//! exponential in the worst case but fast at desk scale (builder lattices
//! carry distinguishing port labels).

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::diagram::{Diagram, EdgeKind, Node, NodeId};

/// Short fingerprint: SHA-256 of the canonical form.
pub fn fingerprint(d: &Diagram) -> String {
    let mut h = Sha256::new();
    h.update(canonical_form(d).as_bytes());
    hex(&h.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Full canonical serialization; equal strings iff isomorphic.
pub fn canonical_form(d: &Diagram) -> String {
    let order = canonical_order(d);
    render(d, &order)
}

/// Canonically ordered node list. Applying any isomorphism to the diagram
/// yields the image of this list under that isomorphism.
pub fn canonical_order(d: &Diagram) -> Vec<NodeId> {
    let nodes: Vec<NodeId> = d.nodes().map(|(id, _)| id).collect();
    if nodes.is_empty() {
        return nodes;
    }
    let initial: Vec<u64> = nodes.iter().map(|n| initial_color(d, *n)).collect();
    let mut best: Option<(String, Vec<NodeId>)> = None;
    search(d, &nodes, initial, &mut best);
    best.expect("canonical search yields at least one candidate").1
}

fn initial_color(d: &Diagram, n: NodeId) -> u64 {
    let mut h = Sha256::new();
    match d.node(n).unwrap() {
        Node::Spider(s) => {
            h.update([0u8, s.kind as u8, s.phase.quarter_turns()]);
        }
        Node::Port(p) => {
            h.update([1u8, p.dir as u8]);
            if let Some(l) = &p.label {
                h.update(l.as_bytes());
            }
        }
    }
    digest_to_u64(&h.finalize())
}

fn digest_to_u64(digest: &[u8]) -> u64 {
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

/// One round of refinement: new color = hash of (old color, sorted multiset
/// of (edge kind, neighbor color)). Self-loops never survive normalization
/// but are hashed as a pair of ends for robustness.
fn refine(d: &Diagram, nodes: &[NodeId], colors: &mut Vec<u64>) {
    let index: BTreeMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    loop {
        let mut next = Vec::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            let mut sig: Vec<(u8, u64)> = Vec::new();
            for e in d.incident_edges(*n) {
                let edge = d.edge(*e).unwrap();
                let kind = (edge.kind == EdgeKind::Hadamard) as u8;
                if edge.is_loop() {
                    sig.push((kind, colors[i]));
                    sig.push((kind, colors[i]));
                } else {
                    sig.push((kind, colors[index[&edge.other(*n)]]));
                }
            }
            sig.sort_unstable();
            let mut h = Sha256::new();
            h.update(colors[i].to_le_bytes());
            for (k, c) in sig {
                h.update([k]);
                h.update(c.to_le_bytes());
            }
            next.push(digest_to_u64(&h.finalize()));
        }
        let stable = class_count(colors) == class_count(&next);
        *colors = next;
        if stable {
            break;
        }
    }
}

fn class_count(colors: &[u64]) -> usize {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

fn search(d: &Diagram, nodes: &[NodeId], mut colors: Vec<u64>, best: &mut Option<(String, Vec<NodeId>)>) {
    refine(d, nodes, &mut colors);
    // group nodes by color and look for the first non-singleton class
    let mut by_color: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, c) in colors.iter().enumerate() {
        by_color.entry(*c).or_default().push(i);
    }
    let split = by_color.values().find(|members| members.len() > 1);
    match split {
        None => {
            // discrete: order nodes by color
            let mut order: Vec<(u64, NodeId)> =
                colors.iter().zip(nodes).map(|(c, n)| (*c, *n)).collect();
            order.sort_unstable();
            let order: Vec<NodeId> = order.into_iter().map(|(_, n)| n).collect();
            let rendered = render(d, &order);
            if best.as_ref().map_or(true, |(b, _)| rendered < *b) {
                *best = Some((rendered, order));
            }
        }
        Some(members) => {
            for &i in members {
                let mut branched = colors.clone();
                // individualize node i with a color distinct from every hash
                let mut h = Sha256::new();
                h.update(branched[i].to_le_bytes());
                h.update(b"!");
                branched[i] = digest_to_u64(&h.finalize());
                search(d, nodes, branched, best);
            }
        }
    }
}

fn render(d: &Diagram, order: &[NodeId]) -> String {
    let index: BTreeMap<NodeId, usize> = order.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let mut out = String::new();
    for (i, n) in order.iter().enumerate() {
        match d.node(*n).unwrap() {
            Node::Spider(s) => {
                out.push_str(&format!("v{i} s{:?}{}\n", s.kind, s.phase.quarter_turns()));
            }
            Node::Port(p) => {
                out.push_str(&format!(
                    "v{i} p{}:{}\n",
                    match p.dir {
                        crate::diagram::PortDir::Input => "in",
                        crate::diagram::PortDir::Output => "out",
                    },
                    p.label.as_deref().unwrap_or("")
                ));
            }
        }
    }
    let mut lines: Vec<(usize, usize, u8)> = d
        .edges()
        .map(|(_, e)| {
            let (mut a, mut b) = (index[&e.a], index[&e.b]);
            if a > b {
                std::mem::swap(&mut a, &mut b);
            }
            (a, b, (e.kind == EdgeKind::Hadamard) as u8)
        })
        .collect();
    lines.sort_unstable();
    for (a, b, k) in lines {
        out.push_str(&format!("e {a} {b} {k}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Phase, PortDir, SpiderKind};

    /// n-cycle of Z spiders with Hadamard ring edges, one unlabeled port each.
    fn ring(n: usize, ids_shuffled: bool) -> Diagram {
        let mut d = Diagram::new();
        let mut spiders = Vec::new();
        if ids_shuffled {
            // burn some ids so the second copy uses different numbering
            for _ in 0..7 {
                let s = d.add_spider(SpiderKind::X, Phase::ZERO);
                d.remove_node(s).unwrap();
            }
        }
        for _ in 0..n {
            spiders.push(d.add_spider(SpiderKind::Z, Phase::ZERO));
        }
        for i in 0..n {
            d.add_edge(spiders[i], spiders[(i + 1) % n], EdgeKind::Hadamard).unwrap();
            let p = d.add_port(PortDir::Output);
            d.add_edge(spiders[i], p, EdgeKind::Plain).unwrap();
        }
        d
    }

    fn line(n: usize) -> Diagram {
        let mut d = Diagram::new();
        let mut spiders = Vec::new();
        for _ in 0..n {
            spiders.push(d.add_spider(SpiderKind::Z, Phase::ZERO));
        }
        for i in 0..n - 1 {
            d.add_edge(spiders[i], spiders[i + 1], EdgeKind::Hadamard).unwrap();
        }
        for s in spiders {
            let p = d.add_port(PortDir::Output);
            d.add_edge(s, p, EdgeKind::Plain).unwrap();
        }
        d
    }

    #[test]
    fn relabeling_invariance() {
        assert_eq!(fingerprint(&ring(6, false)), fingerprint(&ring(6, true)));
    }

    #[test]
    fn ring_vs_line_differ() {
        assert_ne!(fingerprint(&ring(6, false)), fingerprint(&line(6)));
    }

    #[test]
    fn kinds_and_phases_matter() {
        let mut a = Diagram::new();
        a.add_spider(SpiderKind::Z, Phase::ZERO);
        let mut b = Diagram::new();
        b.add_spider(SpiderKind::X, Phase::ZERO);
        let mut c = Diagram::new();
        c.add_spider(SpiderKind::Z, Phase::PI);
        assert_ne!(fingerprint(&a), fingerprint(&b));
        assert_ne!(fingerprint(&a), fingerprint(&c));
    }

    #[test]
    fn edge_kind_matters() {
        let mut a = Diagram::new();
        let s = a.add_spider(SpiderKind::Z, Phase::ZERO);
        let t = a.add_spider(SpiderKind::Z, Phase::ZERO);
        a.add_edge(s, t, EdgeKind::Plain).unwrap();
        let mut b = Diagram::new();
        let s = b.add_spider(SpiderKind::Z, Phase::ZERO);
        let t = b.add_spider(SpiderKind::Z, Phase::ZERO);
        b.add_edge(s, t, EdgeKind::Hadamard).unwrap();
        assert_ne!(fingerprint(&a), fingerprint(&b));
    }

    #[test]
    fn instruments_do_not_affect_fingerprint() {
        let mut a = Diagram::new();
        let s = a.add_spider(SpiderKind::Z, Phase::ZERO);
        let p = a.add_port(PortDir::Output);
        a.add_edge(s, p, EdgeKind::Plain).unwrap();
        let mut b = Diagram::new();
        let (s, _) = b.add_instrument_spider(SpiderKind::Z, Phase::ZERO, "m");
        let p = b.add_port(PortDir::Output);
        b.add_edge(s, p, EdgeKind::Plain).unwrap();
        assert_eq!(fingerprint(&a), fingerprint(&b));
    }

    #[test]
    fn port_labels_matter() {
        let mut a = Diagram::new();
        let s = a.add_spider(SpiderKind::Z, Phase::ZERO);
        let p = a.add_labeled_port(PortDir::Output, "q0");
        a.add_edge(s, p, EdgeKind::Plain).unwrap();
        let mut b = Diagram::new();
        let s = b.add_spider(SpiderKind::Z, Phase::ZERO);
        let p = b.add_labeled_port(PortDir::Output, "q1");
        b.add_edge(s, p, EdgeKind::Plain).unwrap();
        assert_ne!(fingerprint(&a), fingerprint(&b));
    }
}
