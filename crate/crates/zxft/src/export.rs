//! DOT and OBJ exports for viewing diagrams.

use crate::diagram::{Diagram, EdgeKind, Node, NodeId, PortDir};

/// Graphviz DOT, 2D.
pub fn to_dot(d: &Diagram) -> String {
    let mut out = String::from("graph zx {\n  node [style=filled];\n");
    for (id, node) in d.nodes() {
        match node {
            Node::Spider(s) => {
                let color = match s.kind {
                    crate::diagram::SpiderKind::Z => "palegreen",
                    crate::diagram::SpiderKind::X => "lightcoral",
                };
                let mut label = String::new();
                if s.phase.quarter_turns() != 0 {
                    label.push_str(&format!("{}π/2", s.phase.quarter_turns()));
                }
                if let Some(expr) = &s.instrument {
                    if !label.is_empty() {
                        label.push(' ');
                    }
                    label.push_str(&format!("[{expr}]"));
                }
                out.push_str(&format!(
                    "  n{} [shape=circle, fillcolor={color}, label=\"{label}\"];\n",
                    id.0
                ));
            }
            Node::Port(p) => {
                let label = p.label.as_deref().unwrap_or("");
                let shape = match p.dir {
                    PortDir::Input => "invtriangle",
                    PortDir::Output => "triangle",
                };
                out.push_str(&format!(
                    "  n{} [shape={shape}, fillcolor=white, label=\"{label}\"];\n",
                    id.0
                ));
            }
        }
    }
    for (_, e) in d.edges() {
        let style = match e.kind {
            EdgeKind::Plain => "",
            EdgeKind::Hadamard => " [style=dashed, color=blue]",
        };
        out.push_str(&format!("  n{} -- n{}{style};\n", e.a.0, e.b.0));
    }
    out.push_str("}\n");
    out
}

/// OBJ-style vertex/line export using node coordinates; nodes without a
/// coordinate are dropped together with their edges.
pub fn to_obj(d: &Diagram) -> String {
    let mut out = String::new();
    let mut index = std::collections::BTreeMap::new();
    let mut next = 1usize; // OBJ indices are 1-based
    let coord = |id: NodeId| -> Option<[f64; 3]> {
        match d.node(id)? {
            Node::Spider(s) => s.coord,
            Node::Port(p) => p.coord,
        }
    };
    for (id, _) in d.nodes() {
        if let Some(c) = coord(id) {
            out.push_str(&format!("v {} {} {}\n", c[0], c[1], c[2]));
            index.insert(id, next);
            next += 1;
        }
    }
    for (_, e) in d.edges() {
        if let (Some(a), Some(b)) = (index.get(&e.a), index.get(&e.b)) {
            out.push_str(&format!("l {a} {b}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Phase, SpiderKind};

    #[test]
    fn dot_and_obj_render() {
        let mut d = Diagram::new();
        let s = d.add_spider(SpiderKind::Z, Phase::PI);
        let p = d.add_labeled_port(PortDir::Output, "q0");
        d.add_edge(s, p, EdgeKind::Hadamard).unwrap();
        d.set_coord(s, [0.0, 0.0, 0.0]);
        d.set_coord(p, [1.0, 0.0, 0.0]);
        let dot = to_dot(&d);
        assert!(dot.contains("palegreen"));
        assert!(dot.contains("dashed"));
        let obj = to_obj(&d);
        assert_eq!(obj.lines().filter(|l| l.starts_with('v')).count(), 2);
        assert_eq!(obj.lines().filter(|l| l.starts_with('l')).count(), 1);
    }
}
