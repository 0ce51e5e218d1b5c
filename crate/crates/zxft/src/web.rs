//! Pauli webs: highlight assignments over a diagram's edges satisfying the
//! local spider parity rules, extracted by GF(2) linear algebra.
//!
//! A web stores one (r, g) bit pair per edge, referenced at the edge's `a`
//! endpoint; the value at the other end is equal across a plain edge and
//! swapped across a Hadamard edge. Red (r) marks Z-type support, green (g)
//! X-type. The local rules per spider: an even number of other-color ends,
//! all-or-none own-color ends, and a classical outcome port is included
//! exactly when the spider's own-color indicator is set.
//!
//! The sign of a web is the parity of π-spiders whose own-color indicator
//! is set, XORed with the outcome expressions of the included instruments,
//! plus one extra term the fully worked examples force: each Hadamard edge
//! highlighted in *both* colors flips the sign. (Writing the per-leg
//! operator as X^g·Z^r, a both-color end is X·Z; pushing it through a
//! Hadamard produces Z·X = −X·Z. Plain edges pair a factor with its
//! inverse-transpose, so they never contribute.)

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, EdgeId, EdgeKind, Node, NodeId, OutcomeExpr, PortDir, SpiderKind};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

/// Single-port Pauli letter derived from a highlight pair.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub fn from_bits(r: bool, g: bool) -> PauliLetter {
        match (r, g) {
            (false, false) => PauliLetter::I,
            (false, true) => PauliLetter::X,
            (true, false) => PauliLetter::Z,
            (true, true) => PauliLetter::Y,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (false, true),
            PauliLetter::Z => (true, false),
            PauliLetter::Y => (true, true),
        }
    }
}

impl fmt::Display for PauliLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Per-edge highlight assignment. Edges absent from the map are
/// unhighlighted.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct PauliWeb {
    pub highlights: BTreeMap<EdgeId, (bool, bool)>,
}

impl PauliWeb {
    pub fn empty() -> PauliWeb {
        PauliWeb::default()
    }

    pub fn is_empty(&self) -> bool {
        self.highlights.values().all(|(r, g)| !r && !g)
    }

    pub fn set(&mut self, e: EdgeId, r: bool, g: bool) {
        if r || g {
            self.highlights.insert(e, (r, g));
        } else {
            self.highlights.remove(&e);
        }
    }

    /// Anchored value (at the edge's `a` endpoint).
    pub fn value(&self, e: EdgeId) -> (bool, bool) {
        self.highlights.get(&e).copied().unwrap_or((false, false))
    }

    /// Highlight value seen from one endpoint of an edge.
    pub fn value_at(&self, d: &Diagram, e: EdgeId, end: NodeId) -> (bool, bool) {
        let edge = d.edge(e).expect("edge exists");
        let (r, g) = self.value(e);
        if end == edge.a || edge.kind == EdgeKind::Plain {
            (r, g)
        } else {
            (g, r)
        }
    }

    /// Highlight value at a boundary port (its unique incident edge).
    pub fn value_at_port(&self, d: &Diagram, port: NodeId) -> (bool, bool) {
        match d.incident_edges(port).first() {
            Some(e) => self.value_at(d, *e, port),
            None => (false, false),
        }
    }

    /// Own-color indicator of a spider: whether its ports are fully
    /// highlighted in the spider's color.
    pub fn own_color_full(&self, d: &Diagram, spider: NodeId) -> bool {
        let Some(s) = d.spider(spider) else { return false };
        let Some(e) = d.incident_edges(spider).first() else { return false };
        let (r, g) = self.value_at(d, *e, spider);
        match s.kind {
            SpiderKind::Z => g,
            SpiderKind::X => r,
        }
    }

    /// Outcome-port inclusion map: instrument spiders whose own-color
    /// indicator is set.
    pub fn included_instruments(&self, d: &Diagram) -> Vec<NodeId> {
        d.spiders()
            .filter(|(id, s)| s.instrument.is_some() && self.own_color_full(d, *id))
            .map(|(id, _)| id)
            .collect()
    }

    /// Sign expression of the web. Must evaluate to 0 for a check to be
    /// satisfied.
    pub fn sign(&self, d: &Diagram) -> Result<OutcomeExpr> {
        let mut expr = OutcomeExpr::zero();
        for (id, s) in d.spiders() {
            if !s.phase.is_pauli() {
                return Err(Error::UnsupportedPhase {
                    spider: id,
                    quarter_turns: s.phase.quarter_turns(),
                });
            }
            if self.own_color_full(d, id) {
                if s.phase.is_pi() {
                    expr.constant ^= true;
                }
                if let Some(instr) = &s.instrument {
                    expr.xor_assign(instr);
                }
            }
        }
        for (e, edge) in d.edges() {
            if edge.kind == EdgeKind::Hadamard {
                let (r, g) = self.value(e);
                if r && g {
                    expr.constant ^= true;
                }
            }
        }
        Ok(expr)
    }

    pub fn outer_signature(&self, d: &Diagram) -> OuterSignature {
        OuterSignature(
            d.ports()
                .map(|(id, _)| {
                    let (r, g) = self.value_at_port(d, id);
                    (id, PauliLetter::from_bits(r, g))
                })
                .collect(),
        )
    }

    /// Verify the local web rules, reporting each violation.
    pub fn verify(&self, d: &Diagram) -> Vec<String> {
        let mut violations = Vec::new();
        for e in self.highlights.keys() {
            if d.edge(*e).is_none() {
                violations.push(format!("highlight on missing edge {e}"));
            }
        }
        for (id, s) in d.spiders() {
            let ends = spider_ends(d, id);
            if ends.iter().any(|(e, _)| d.edge(*e).unwrap().is_loop()) {
                violations.push(format!("spider {id} has a self-loop; webs need a normalized diagram"));
                continue;
            }
            let values: Vec<(bool, bool)> =
                ends.iter().map(|(e, end)| self.value_at(d, *e, *end)).collect();
            let (own, other): (Vec<bool>, Vec<bool>) = match s.kind {
                SpiderKind::Z => values.iter().map(|(r, g)| (*g, *r)).unzip(),
                SpiderKind::X => values.iter().map(|(r, g)| (*r, *g)).unzip(),
            };
            if other.iter().filter(|b| **b).count() % 2 != 0 {
                let color = if s.kind == SpiderKind::Z { "red" } else { "green" };
                violations.push(format!("odd {color} count at spider {id}"));
            }
            if own.iter().any(|b| *b) && !own.iter().all(|b| *b) {
                let color = if s.kind == SpiderKind::Z { "green" } else { "red" };
                violations.push(format!("partial {color} highlight at spider {id}"));
            }
        }
        violations
    }

    pub fn is_valid(&self, d: &Diagram) -> bool {
        self.verify(d).is_empty()
    }

    /// XOR of two webs on the same diagram; overlapping same-color
    /// highlights cancel.
    pub fn combine(&self, other: &PauliWeb) -> PauliWeb {
        let mut out = self.clone();
        for (e, (r, g)) in &other.highlights {
            let (cr, cg) = out.value(*e);
            out.set(*e, cr ^ r, cg ^ g);
        }
        out
    }
}

/// Spider legs as (edge, this-end) pairs; a self-loop contributes both ends.
fn spider_ends(d: &Diagram, spider: NodeId) -> Vec<(EdgeId, NodeId)> {
    let mut ends = Vec::new();
    for e in d.incident_edges(spider) {
        let edge = d.edge(*e).unwrap();
        if edge.a == spider {
            ends.push((*e, edge.a));
        }
        if edge.b == spider && !edge.is_loop() {
            ends.push((*e, edge.b));
        }
        if edge.is_loop() {
            ends.push((*e, edge.b));
        }
    }
    ends
}

/// Map port → Pauli letter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OuterSignature(pub BTreeMap<NodeId, PauliLetter>);

impl OuterSignature {
    pub fn is_identity(&self) -> bool {
        self.0.values().all(|l| *l == PauliLetter::I)
    }

    pub fn letter(&self, port: NodeId) -> PauliLetter {
        self.0.get(&port).copied().unwrap_or(PauliLetter::I)
    }

    /// "in:..|out:.." rendering, ports in id order within each direction.
    pub fn render(&self, d: &Diagram) -> String {
        let mut ins = String::new();
        let mut outs = String::new();
        for (id, p) in d.ports() {
            let s = self.letter(id).to_string();
            match p.dir {
                PortDir::Input => ins.push_str(&s),
                PortDir::Output => outs.push_str(&s),
            }
        }
        format!("in:{ins}|out:{outs}")
    }
}

/// A web with no outer support whose sign expression constrains outcomes.
#[derive(Clone, Debug)]
pub struct Check {
    pub web: PauliWeb,
    /// Must evaluate to 0 in the absence of errors.
    pub constraint: OutcomeExpr,
}

/// Independent webs partitioned by class.
#[derive(Clone, Debug, Default)]
pub struct WebBasis {
    pub outer: Vec<PauliWeb>,
    pub checks: Vec<Check>,
    pub null: Vec<PauliWeb>,
}

impl WebBasis {
    pub fn len(&self) -> usize {
        self.outer.len() + self.checks.len() + self.null.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The GF(2) constraint system for a diagram's webs.
///
/// Variable order: (r, g) per edge in ascending edge id, then one inclusion
/// bit per instrument spider in ascending node id.
pub struct ConstraintSystem {
    pub matrix: BitMatrix,
    pub edges: Vec<EdgeId>,
    pub instruments: Vec<NodeId>,
}

impl ConstraintSystem {
    pub fn num_vars(&self) -> usize {
        2 * self.edges.len() + self.instruments.len()
    }

    fn edge_index(&self, e: EdgeId) -> usize {
        self.edges.binary_search(&e).expect("edge indexed") * 2
    }

    /// Column pair (r, g) of an edge-end value, accounting for Hadamard
    /// swaps.
    fn end_columns(&self, d: &Diagram, e: EdgeId, end: NodeId) -> (usize, usize) {
        let base = self.edge_index(e);
        let edge = d.edge(e).unwrap();
        if end == edge.a || edge.kind == EdgeKind::Plain {
            (base, base + 1)
        } else {
            (base + 1, base)
        }
    }

    pub fn web_from_solution(&self, sol: &BitVec) -> PauliWeb {
        let mut web = PauliWeb::empty();
        for (i, e) in self.edges.iter().enumerate() {
            web.set(*e, sol.get(2 * i), sol.get(2 * i + 1));
        }
        web
    }
}

/// Build the web-rule constraint system. Requires all phases in {0, π} and a
/// normalized (self-loop free) diagram.
pub fn constraints(d: &Diagram) -> Result<ConstraintSystem> {
    for (id, s) in d.spiders() {
        if !s.phase.is_pauli() {
            return Err(Error::UnsupportedPhase { spider: id, quarter_turns: s.phase.quarter_turns() });
        }
    }
    if let Some((e, _)) = d.edges().find(|(_, edge)| edge.is_loop()) {
        return Err(Error::ContractViolation(format!(
            "diagram has self-loop {e}; normalize before extracting webs"
        )));
    }
    let edges: Vec<EdgeId> = d.edges().map(|(id, _)| id).collect();
    let instruments: Vec<NodeId> = d
        .spiders()
        .filter(|(_, s)| s.instrument.is_some())
        .map(|(id, _)| id)
        .collect();
    let nvars = 2 * edges.len() + instruments.len();
    let mut sys = ConstraintSystem { matrix: BitMatrix::new(nvars), edges, instruments };

    let mut rows: Vec<BitVec> = Vec::new();
    for (id, s) in d.spiders() {
        let ends = spider_ends(d, id);
        // columns of (own, other) per end
        let cols: Vec<(usize, usize)> = ends
            .iter()
            .map(|(e, end)| {
                let (r_col, g_col) = sys.end_columns(d, *e, *end);
                match s.kind {
                    SpiderKind::Z => (g_col, r_col),
                    SpiderKind::X => (r_col, g_col),
                }
            })
            .collect();
        // even other-color parity
        let mut parity = BitVec::zeros(nvars);
        for (_, other) in &cols {
            let cur = parity.get(*other);
            parity.set(*other, !cur);
        }
        if !parity.is_zero() {
            rows.push(parity);
        }
        // all-or-none own color
        for pair in cols.windows(2) {
            let mut row = BitVec::zeros(nvars);
            row.set(pair[0].0, true);
            let cur = row.get(pair[1].0);
            row.set(pair[1].0, !cur);
            if !row.is_zero() {
                rows.push(row);
            }
        }
        // forced inclusion bit
        if s.instrument.is_some() {
            let idx = sys.instruments.binary_search(&id).unwrap();
            let mut row = BitVec::zeros(nvars);
            row.set(2 * sys.edges.len() + idx, true);
            if let Some((own, _)) = cols.first() {
                let cur = row.get(*own);
                row.set(*own, !cur);
            }
            if !row.is_zero() {
                rows.push(row);
            }
        }
    }
    for row in rows {
        sys.matrix.push_row(row);
    }
    Ok(sys)
}

/// Port-end (r, g) signature of a solution vector, 2 bits per port in
/// ascending port id.
fn signature_bits(d: &Diagram, sys: &ConstraintSystem, sol: &BitVec) -> BitVec {
    let ports: Vec<NodeId> = d.ports().map(|(id, _)| id).collect();
    let mut sig = BitVec::zeros(2 * ports.len());
    for (i, p) in ports.iter().enumerate() {
        if let Some(e) = d.incident_edges(*p).first() {
            let (r_col, g_col) = sys.end_columns(d, *e, *p);
            sig.set(2 * i, sol.get(r_col));
            sig.set(2 * i + 1, sol.get(g_col));
        }
    }
    sig
}

fn inclusion_bits(sys: &ConstraintSystem, sol: &BitVec) -> BitVec {
    let base = 2 * sys.edges.len();
    let mut inc = BitVec::zeros(sys.instruments.len());
    for i in 0..sys.instruments.len() {
        inc.set(i, sol.get(base + i));
    }
    inc
}

/// Compute an echelonized web basis: outer-supported webs first, then
/// checks, then null webs. Deterministic for a fixed diagram.
pub fn web_basis(d: &Diagram) -> Result<WebBasis> {
    let sys = constraints(d)?;
    let solutions = sys.matrix.nullspace();

    // Echelonize over (signature | inclusion) so outer webs are extracted
    // first and checks second, each with a private pivot bit.
    let mut outer: Vec<(BitVec, BitVec)> = Vec::new(); // (sig, sol)
    let mut check_stage: Vec<(BitVec, BitVec)> = Vec::new(); // (inc, sol)
    let mut null = Vec::new();
    for sol in solutions {
        let mut sol = sol;
        let mut sig = signature_bits(d, &sys, &sol);
        for (p_sig, p_sol) in &outer {
            if let Some(pivot) = p_sig.first_one() {
                if sig.get(pivot) {
                    sig.xor_assign(p_sig);
                    sol.xor_assign(p_sol);
                }
            }
        }
        if !sig.is_zero() {
            outer.push((sig, sol));
            continue;
        }
        let mut inc = inclusion_bits(&sys, &sol);
        for (p_inc, p_sol) in &check_stage {
            if let Some(pivot) = p_inc.first_one() {
                if inc.get(pivot) {
                    inc.xor_assign(p_inc);
                    sol.xor_assign(p_sol);
                }
            }
        }
        if !inc.is_zero() {
            check_stage.push((inc, sol));
        } else {
            null.push(sys.web_from_solution(&sol));
        }
    }

    let outer_webs: Vec<PauliWeb> =
        outer.iter().map(|(_, sol)| sys.web_from_solution(sol)).collect();
    let mut checks = Vec::new();
    for (_, sol) in &check_stage {
        let web = sys.web_from_solution(sol);
        let constraint = web.sign(d)?;
        checks.push(Check { web, constraint });
    }
    Ok(WebBasis { outer: outer_webs, checks, null })
}

/// Pins for [`solve_web`]: required outer letters and instrument
/// inclusions. Unlisted ports are pinned to identity when
/// `pin_unlisted_ports` is set; unlisted instruments are pinned to
/// `pin_unlisted_instruments` when given, else left free.
#[derive(Clone, Debug, Default)]
pub struct WebQuery {
    pub ports: BTreeMap<NodeId, PauliLetter>,
    pub pin_unlisted_ports: bool,
    pub instruments: BTreeMap<NodeId, bool>,
    pub pin_unlisted_instruments: Option<bool>,
}

/// Solve for any web satisfying the rules plus the query's pins.
pub fn solve_web(d: &Diagram, query: &WebQuery) -> Result<Option<PauliWeb>> {
    let sys = constraints(d)?;
    let mut matrix = BitMatrix::new(sys.num_vars());
    let mut rhs_bits = Vec::new();
    for row_i in 0..sys.matrix.num_rows() {
        matrix.push_row(sys.matrix.row(row_i).clone());
        rhs_bits.push(false);
    }
    for (port, node) in d.nodes() {
        if !matches!(node, Node::Port(_)) {
            continue;
        }
        let letter = match query.ports.get(&port) {
            Some(l) => *l,
            None if query.pin_unlisted_ports => PauliLetter::I,
            None => continue,
        };
        let Some(e) = d.incident_edges(port).first() else {
            if letter != PauliLetter::I {
                return Ok(None);
            }
            continue;
        };
        let (r_col, g_col) = sys.end_columns(d, *e, port);
        let (r, g) = letter.bits();
        for (col, bit) in [(r_col, r), (g_col, g)] {
            let mut row = BitVec::zeros(sys.num_vars());
            row.set(col, true);
            matrix.push_row(row);
            rhs_bits.push(bit);
        }
    }
    for (i, spider) in sys.instruments.iter().enumerate() {
        let bit = match query.instruments.get(spider) {
            Some(b) => *b,
            None => match query.pin_unlisted_instruments {
                Some(b) => b,
                None => continue,
            },
        };
        let mut row = BitVec::zeros(sys.num_vars());
        row.set(2 * sys.edges.len() + i, true);
        matrix.push_row(row);
        rhs_bits.push(bit);
    }
    let mut rhs = BitVec::zeros(rhs_bits.len());
    for (i, b) in rhs_bits.iter().enumerate() {
        rhs.set(i, *b);
    }
    Ok(matrix.solve(&rhs).map(|sol| sys.web_from_solution(&sol)))
}

/// Convenience: find a web with the given outer letters on the named ports
/// and identity on all others, instruments free.
pub fn find_web_with_signature(
    d: &Diagram,
    letters: &BTreeMap<NodeId, PauliLetter>,
) -> Result<Option<PauliWeb>> {
    solve_web(
        d,
        &WebQuery {
            ports: letters.clone(),
            pin_unlisted_ports: true,
            instruments: BTreeMap::new(),
            pin_unlisted_instruments: None,
        },
    )
}

/// GF(2) span membership/rank helpers for webs, keyed on the edge-highlight
/// vector over a fixed diagram.
pub fn web_vector(d: &Diagram, web: &PauliWeb) -> BitVec {
    let edges: Vec<EdgeId> = d.edges().map(|(id, _)| id).collect();
    let mut v = BitVec::zeros(2 * edges.len());
    for (i, e) in edges.iter().enumerate() {
        let (r, g) = web.value(*e);
        v.set(2 * i, r);
        v.set(2 * i + 1, g);
    }
    v
}

pub fn webs_rank(d: &Diagram, webs: &[PauliWeb]) -> usize {
    let vecs: Vec<BitVec> = webs.iter().map(|w| web_vector(d, w)).collect();
    crate::gf2::rank_of(&vecs, 2 * d.num_edges())
}

/// Whether `web` lies in the GF(2) span of `basis`.
pub fn in_span(d: &Diagram, basis: &[PauliWeb], web: &PauliWeb) -> bool {
    let mut vecs: Vec<BitVec> = basis.iter().map(|w| web_vector(d, w)).collect();
    let r0 = crate::gf2::rank_of(&vecs, 2 * d.num_edges());
    vecs.push(web_vector(d, web));
    crate::gf2::rank_of(&vecs, 2 * d.num_edges()) == r0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Phase, PortDir};

    fn ghz() -> Diagram {
        let mut d = Diagram::new();
        let s = d.add_spider(SpiderKind::Z, Phase::ZERO);
        for i in 0..3 {
            let p = d.add_labeled_port(PortDir::Output, format!("q{i}"));
            d.add_edge(s, p, EdgeKind::Plain).unwrap();
        }
        d
    }

    fn letters(web: &PauliWeb, d: &Diagram) -> Vec<PauliLetter> {
        d.ports().map(|(id, _)| web.outer_signature(d).letter(id)).collect()
    }

    #[test]
    fn single_spider_solution_space() {
        let d = ghz();
        let sys = constraints(&d).unwrap();
        assert_eq!(sys.matrix.nullspace().len(), 3);
    }

    #[test]
    fn empty_diagram_empty_system() {
        let d = Diagram::new();
        let basis = web_basis(&d).unwrap();
        assert!(basis.is_empty());
    }

    #[test]
    fn ghz_outer_basis_spans_paper_generators() {
        let d = ghz();
        let basis = web_basis(&d).unwrap();
        assert_eq!(basis.outer.len(), 3);
        assert!(basis.checks.is_empty());
        use PauliLetter::*;
        for want in [[Z, Z, I], [I, Z, Z], [X, X, X]] {
            let pins: BTreeMap<NodeId, PauliLetter> = d
                .ports()
                .map(|(id, _)| id)
                .zip(want.iter().copied())
                .collect();
            let web = find_web_with_signature(&d, &pins).unwrap().expect("web exists");
            assert_eq!(letters(&web, &d), want.to_vec());
            assert!(in_span(&d, &basis.outer, &web));
            assert!(web.sign(&d).unwrap().is_zero());
        }
        // YZY is not a GHZ stabilizer
        use PauliLetter as L;
        let pins: BTreeMap<NodeId, PauliLetter> = d
            .ports()
            .map(|(id, _)| id)
            .zip([L::Y, L::Z, L::Y])
            .collect();
        assert!(find_web_with_signature(&d, &pins).unwrap().is_none());
    }

    #[test]
    fn pi_spider_flips_sign() {
        let mut d = Diagram::new();
        let s = d.add_spider(SpiderKind::Z, Phase::PI);
        for _ in 0..3 {
            let p = d.add_port(PortDir::Output);
            d.add_edge(s, p, EdgeKind::Plain).unwrap();
        }
        let mut web = PauliWeb::empty();
        for (e, _) in d.edges() {
            web.set(e, false, true);
        }
        assert!(web.is_valid(&d));
        let sign = web.sign(&d).unwrap();
        assert!(sign.constant);
        assert!(sign.vars.is_empty());
    }

    #[test]
    fn verify_rejects_odd_red() {
        let d = ghz();
        let mut web = PauliWeb::empty();
        let first = d.edges().next().unwrap().0;
        web.set(first, true, false);
        let report = web.verify(&d);
        assert!(report.iter().any(|v| v.contains("odd red")));
    }

    #[test]
    fn combine_is_group_op() {
        let d = ghz();
        let basis = web_basis(&d).unwrap();
        let a = &basis.outer[0];
        let b = &basis.outer[1];
        let ab = a.combine(b);
        assert!(ab.is_valid(&d));
        assert!(a.combine(a).is_empty());
        assert_eq!(a.combine(&ab), *b);
    }

    #[test]
    fn ghz_combine_closure() {
        let d = ghz();
        use PauliLetter::*;
        let find = |sig: [PauliLetter; 3]| {
            let pins: BTreeMap<NodeId, PauliLetter> =
                d.ports().map(|(id, _)| id).zip(sig.iter().copied()).collect();
            find_web_with_signature(&d, &pins).unwrap().unwrap()
        };
        let zzi = find([Z, Z, I]);
        let izz = find([I, Z, Z]);
        let ziz = zzi.combine(&izz);
        assert_eq!(letters(&ziz, &d), vec![Z, I, Z]);
    }

    #[test]
    fn phase_half_rejected() {
        let mut d = Diagram::new();
        let s = d.add_spider(SpiderKind::Z, Phase::new(1));
        let p = d.add_port(PortDir::Output);
        d.add_edge(s, p, EdgeKind::Plain).unwrap();
        assert!(matches!(web_basis(&d), Err(Error::UnsupportedPhase { .. })));
    }

    /// Two ZZ-measurement gadgets in series: one check with constraint
    /// b1 ⊕ b2.
    #[test]
    fn repetition_check_found() {
        let d = crate::builders::rep_code(2).unwrap();
        let basis = web_basis(&d).unwrap();
        assert_eq!(basis.outer.len(), 4);
        assert_eq!(basis.checks.len(), 1);
        let c = &basis.checks[0];
        assert!(!c.constraint.constant);
        assert_eq!(c.constraint.vars.len(), 2);
    }
}
