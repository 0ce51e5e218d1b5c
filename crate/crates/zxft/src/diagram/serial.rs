//! The versioned `zxft/1` JSON diagram format.
//!
//! Arrays are emitted sorted by id so that serialization is byte stable.
//! Spider coordinates and the builder metadata blob are optional extras on
//! top of the base format; both survive a round trip when present.

use serde::{Deserialize, Serialize};

use super::{
    Diagram, Edge, EdgeId, EdgeKind, Node, NodeId, OutcomeExpr, Phase, Port, PortDir, Spider,
    SpiderKind, VarId,
};
use crate::error::{Error, Result};

pub const FORMAT: &str = "zxft/1";

#[derive(Serialize, Deserialize)]
struct SerOutcome {
    vars: Vec<u32>,
    #[serde(rename = "const")]
    constant: u8,
}

#[derive(Serialize, Deserialize)]
struct SerSpider {
    id: u32,
    kind: String,
    phase_quarter_turns: u8,
    outcome: Option<SerOutcome>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    coord: Option<[f64; 3]>,
}

#[derive(Serialize, Deserialize)]
struct SerEdge {
    id: u32,
    a: u32,
    b: u32,
    kind: String,
}

#[derive(Serialize, Deserialize)]
struct SerPort {
    id: u32,
    dir: String,
    label: Option<String>,
    coord: Option<[f64; 3]>,
}

#[derive(Serialize, Deserialize)]
struct SerVar {
    id: u32,
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct SerDiagram {
    format: String,
    spiders: Vec<SerSpider>,
    edges: Vec<SerEdge>,
    ports: Vec<SerPort>,
    outcome_vars: Vec<SerVar>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    meta: Option<serde_json::Value>,
}

fn to_ser(d: &Diagram, with_coords: bool, meta: Option<serde_json::Value>) -> SerDiagram {
    let mut spiders = Vec::new();
    let mut ports = Vec::new();
    for (id, node) in d.nodes() {
        match node {
            Node::Spider(s) => spiders.push(SerSpider {
                id: id.0,
                kind: match s.kind {
                    SpiderKind::Z => "Z".into(),
                    SpiderKind::X => "X".into(),
                },
                phase_quarter_turns: s.phase.quarter_turns(),
                outcome: s.instrument.as_ref().map(|e| SerOutcome {
                    vars: e.vars.iter().map(|v| v.0).collect(),
                    constant: e.constant as u8,
                }),
                coord: if with_coords { s.coord } else { None },
            }),
            Node::Port(p) => ports.push(SerPort {
                id: id.0,
                dir: match p.dir {
                    PortDir::Input => "in".into(),
                    PortDir::Output => "out".into(),
                },
                label: p.label.clone(),
                coord: if with_coords { p.coord } else { None },
            }),
        }
    }
    let edges = d
        .edges()
        .map(|(id, e)| SerEdge {
            id: id.0,
            a: e.a.0,
            b: e.b.0,
            kind: match e.kind {
                EdgeKind::Plain => "plain".into(),
                EdgeKind::Hadamard => "h".into(),
            },
        })
        .collect();
    let outcome_vars = d
        .outcome_vars()
        .map(|(v, l)| SerVar { id: v.0, label: l.map(String::from) })
        .collect();
    SerDiagram { format: FORMAT.into(), spiders, edges, ports, outcome_vars, meta }
}

pub fn to_json(d: &Diagram) -> String {
    serde_json::to_string_pretty(&to_ser(d, false, None)).expect("diagram serialization")
}

pub fn to_json_with_coords(d: &Diagram) -> String {
    serde_json::to_string_pretty(&to_ser(d, true, None)).expect("diagram serialization")
}

/// Serialize together with an opaque metadata blob (builder output).
pub fn to_json_with_meta(d: &Diagram, with_coords: bool, meta: serde_json::Value) -> String {
    serde_json::to_string_pretty(&to_ser(d, with_coords, Some(meta))).expect("diagram serialization")
}

/// Parse the `zxft/1` format. Returns the diagram and the metadata blob, if
/// one was embedded.
pub fn from_json(text: &str) -> Result<(Diagram, Option<serde_json::Value>)> {
    let ser: SerDiagram =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("{e}")))?;
    if ser.format != FORMAT {
        return Err(Error::Parse(format!(
            "unsupported format {:?}, expected {FORMAT:?}",
            ser.format
        )));
    }
    let mut d = Diagram::new();
    for v in &ser.outcome_vars {
        let id = VarId(v.id);
        if d.outcome_vars.contains_key(&id) {
            return Err(Error::Parse(format!("duplicate outcome variable id {}", v.id)));
        }
        d.outcome_vars.insert(id, v.label.clone());
        d.next_var = d.next_var.max(v.id + 1);
    }
    for s in &ser.spiders {
        let id = NodeId(s.id);
        if d.nodes.contains_key(&id) {
            return Err(Error::Parse(format!("duplicate node id {}", s.id)));
        }
        let kind = match s.kind.as_str() {
            "Z" => SpiderKind::Z,
            "X" => SpiderKind::X,
            other => return Err(Error::Parse(format!("unknown spider kind {other:?}"))),
        };
        if s.phase_quarter_turns > 3 {
            return Err(Error::Parse(format!(
                "spider {}: phase_quarter_turns {} out of range 0..3",
                s.id, s.phase_quarter_turns
            )));
        }
        let instrument = s.outcome.as_ref().map(|o| OutcomeExpr {
            vars: o.vars.iter().map(|v| VarId(*v)).collect(),
            constant: o.constant != 0,
        });
        d.nodes.insert(
            id,
            Node::Spider(Spider {
                kind,
                phase: Phase::new(s.phase_quarter_turns),
                instrument,
                coord: s.coord,
            }),
        );
        d.incidence.insert(id, Vec::new());
        d.next_node = d.next_node.max(s.id + 1);
    }
    for p in &ser.ports {
        let id = NodeId(p.id);
        if d.nodes.contains_key(&id) {
            return Err(Error::Parse(format!("duplicate node id {}", p.id)));
        }
        let dir = match p.dir.as_str() {
            "in" => PortDir::Input,
            "out" => PortDir::Output,
            other => return Err(Error::Parse(format!("unknown port dir {other:?}"))),
        };
        d.nodes.insert(id, Node::Port(Port { dir, label: p.label.clone(), coord: p.coord }));
        d.incidence.insert(id, Vec::new());
        d.next_node = d.next_node.max(p.id + 1);
    }
    for e in &ser.edges {
        let id = EdgeId(e.id);
        if d.edges.contains_key(&id) {
            return Err(Error::Parse(format!("duplicate edge id {}", e.id)));
        }
        let kind = match e.kind.as_str() {
            "plain" => EdgeKind::Plain,
            "h" => EdgeKind::Hadamard,
            other => return Err(Error::Parse(format!("unknown edge kind {other:?}"))),
        };
        let (a, b) = (NodeId(e.a), NodeId(e.b));
        for end in [a, b] {
            if !d.nodes.contains_key(&end) {
                return Err(Error::Parse(format!("edge {} references missing node {}", e.id, end)));
            }
        }
        d.edges.insert(id, Edge { a, b, kind });
        d.incidence.get_mut(&a).unwrap().push(id);
        if a != b {
            d.incidence.get_mut(&b).unwrap().push(id);
        }
        d.next_edge = d.next_edge.max(e.id + 1);
    }
    // instrument expressions must reference known variables
    let report = d.validate();
    if let Some(v) = report.iter().find(|v| v.contains("missing variable")) {
        return Err(Error::Parse(v.clone()));
    }
    Ok((d, ser.meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingerprint::fingerprint;

    fn ghz() -> Diagram {
        let mut d = Diagram::new();
        let s = d.add_spider(SpiderKind::Z, Phase::ZERO);
        for i in 0..3 {
            let p = d.add_labeled_port(PortDir::Output, format!("q{i}"));
            d.add_edge(s, p, EdgeKind::Plain).unwrap();
        }
        d
    }

    #[test]
    fn round_trip_ghz() {
        let d = ghz();
        let (back, meta) = from_json(&to_json(&d)).unwrap();
        assert!(meta.is_none());
        assert_eq!(fingerprint(&d), fingerprint(&back));
    }

    #[test]
    fn missing_field_is_parse_error() {
        let err = from_json("{}").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("missing field") && msg.contains("format")),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn bad_edge_reference_is_parse_error() {
        let text = r#"{"format":"zxft/1","spiders":[],"edges":[{"id":0,"a":0,"b":1,"kind":"plain"}],"ports":[],"outcome_vars":[]}"#;
        assert!(matches!(from_json(text), Err(Error::Parse(_))));
    }

    #[test]
    fn serialization_is_stable() {
        let d = ghz();
        assert_eq!(to_json(&d), to_json(&d.clone()));
    }
}
