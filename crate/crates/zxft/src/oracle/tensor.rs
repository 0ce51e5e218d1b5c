//! Exact dense contraction of small diagrams.
//!
//! Tensor conventions: a Z spider with n legs has amplitude 1 on the
//! all-zeros index, `i^k` (phase `k·π/2`) on the all-ones index, 0
//! elsewhere. An X spider is the same tensor conjugated by an unnormalized
//! Hadamard `[[1,1],[1,-1]]` on every leg, and a Hadamard edge inserts that
//! matrix into the contraction. Global scalars are never tracked; all
//! comparisons are up to one nonzero factor.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Diagram, EdgeKind, Node, NodeId, SpiderKind, VarId};
use crate::error::{Error, Result};
use crate::web::PauliWeb;

pub const DEFAULT_PORT_LIMIT: usize = 14;
const TOL: f64 = 1e-9;

/// Amplitudes indexed by boundary-port bitstrings.
///
/// `legs[i]` is the port owning bit `i`; bit 0 is the *least* significant
/// bit of the index into `data`.
#[derive(Clone, Debug)]
pub struct DenseTensor {
    pub legs: Vec<NodeId>,
    pub data: Vec<Complex64>,
}

impl DenseTensor {
    pub fn rank(&self) -> usize {
        self.legs.len()
    }

    pub fn get(&self, bits: &[u8]) -> Complex64 {
        assert_eq!(bits.len(), self.legs.len());
        let mut idx = 0usize;
        for (i, b) in bits.iter().enumerate() {
            idx |= (*b as usize) << i;
        }
        self.data[idx]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Reorder legs to the given permutation of the current legs.
    pub fn permuted(&self, legs: &[NodeId]) -> DenseTensor {
        assert_eq!(legs.len(), self.legs.len());
        let map: Vec<usize> = legs
            .iter()
            .map(|l| self.legs.iter().position(|x| x == l).expect("leg present"))
            .collect();
        let n = legs.len();
        let mut data = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (idx, out) in data.iter_mut().enumerate() {
            let mut src = 0usize;
            for (new_bit, old_bit) in map.iter().enumerate() {
                if idx >> new_bit & 1 == 1 {
                    src |= 1 << old_bit;
                }
            }
            *out = self.data[src];
        }
        DenseTensor { legs: legs.to_vec(), data }
    }

    /// True iff the tensors are proportional within `tol`, relative to the
    /// largest magnitude present.
    pub fn proportional(&self, other: &DenseTensor, tol: f64) -> bool {
        assert_eq!(self.legs, other.legs, "compare tensors with aligned legs");
        let (ma, mb) = (self.max_abs(), other.max_abs());
        if ma <= tol && mb <= tol {
            return true;
        }
        if ma <= tol || mb <= tol {
            return false;
        }
        let ia = self
            .data
            .iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| x.norm().total_cmp(&y.norm()))
            .map(|(i, _)| i)
            .unwrap();
        let lambda = other.data[ia] / self.data[ia];
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| (b - lambda * a).norm() <= tol * mb.max(1.0))
    }
}

// ---- contraction engine ----------------------------------------------------

/// A leg key: (edge id, end). End 0 is the edge's `a` endpoint.
type Leg = (u32, u8);

#[derive(Clone)]
struct Work {
    legs: Vec<Leg>,
    data: Vec<Complex64>,
}

fn hadamard() -> [[Complex64; 2]; 2] {
    let one = Complex64::new(1.0, 0.0);
    [[one, one], [one, -one]]
}

impl Work {
    fn scalar(v: Complex64) -> Work {
        Work { legs: vec![], data: vec![v] }
    }

    fn spider(kind: SpiderKind, quarter_turns: u8, legs: Vec<Leg>) -> Work {
        let n = legs.len();
        let mut data = vec![Complex64::new(0.0, 0.0); 1 << n];
        let phase = match quarter_turns % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        data[0] = Complex64::new(1.0, 0.0);
        let last = (1usize << n) - 1;
        data[last] += phase; // n = 0 collapses both terms onto one entry
        let mut w = Work { legs, data };
        if kind == SpiderKind::X {
            let h = hadamard();
            for i in 0..n {
                w.apply_matrix(i, &h);
            }
        }
        w
    }

    /// Multiply matrix m into leg `leg_idx` (m[new][old]).
    fn apply_matrix(&mut self, leg_idx: usize, m: &[[Complex64; 2]; 2]) {
        let stride = 1usize << leg_idx;
        for base in 0..self.data.len() {
            if base & stride != 0 {
                continue;
            }
            let lo = self.data[base];
            let hi = self.data[base | stride];
            self.data[base] = m[0][0] * lo + m[0][1] * hi;
            self.data[base | stride] = m[1][0] * lo + m[1][1] * hi;
        }
    }

    /// Trace out two legs of the same tensor (self-contraction).
    fn self_contract(&mut self, i: usize, j: usize) {
        assert_ne!(i, j);
        let (i, j) = (i.min(j), i.max(j));
        let n = self.legs.len();
        let mut legs = Vec::with_capacity(n - 2);
        for (k, l) in self.legs.iter().enumerate() {
            if k != i && k != j {
                legs.push(*l);
            }
        }
        let mut data = vec![Complex64::new(0.0, 0.0); 1 << (n - 2)];
        for (idx, out) in data.iter_mut().enumerate() {
            for v in 0..2usize {
                let mut src = 0usize;
                let mut bit = 0usize;
                for k in 0..n {
                    if k == i || k == j {
                        src |= v << k;
                    } else {
                        src |= (idx >> bit & 1) << k;
                        bit += 1;
                    }
                }
                *out += self.data[src];
            }
        }
        self.legs = legs;
        self.data = data;
    }

    /// Contract all shared legs of two tensors (pairs of (self-leg, other-leg)).
    fn contract_with(&self, other: &Work, pairs: &[(usize, usize)]) -> Work {
        let my_contracted: Vec<usize> = pairs.iter().map(|(i, _)| *i).collect();
        let other_contracted: Vec<usize> = pairs.iter().map(|(_, j)| *j).collect();
        let my_free: Vec<usize> =
            (0..self.legs.len()).filter(|i| !my_contracted.contains(i)).collect();
        let other_free: Vec<usize> =
            (0..other.legs.len()).filter(|j| !other_contracted.contains(j)).collect();
        let mut legs = Vec::new();
        legs.extend(my_free.iter().map(|i| self.legs[*i]));
        legs.extend(other_free.iter().map(|j| other.legs[*j]));
        let out_rank = legs.len();
        let mut data = vec![Complex64::new(0.0, 0.0); 1 << out_rank];
        let k = pairs.len();
        for (idx, out) in data.iter_mut().enumerate() {
            for s in 0..1usize << k {
                let mut a = 0usize;
                for (pos, i) in my_free.iter().enumerate() {
                    a |= (idx >> pos & 1) << i;
                }
                for (pos, (i, _)) in pairs.iter().enumerate() {
                    a |= (s >> pos & 1) << i;
                }
                let mut b = 0usize;
                for (pos, j) in other_free.iter().enumerate() {
                    b |= (idx >> (my_free.len() + pos) & 1) << j;
                }
                for (pos, (_, j)) in pairs.iter().enumerate() {
                    b |= (s >> pos & 1) << j;
                }
                *out += self.data[a] * other.data[b];
            }
        }
        Work { legs, data }
    }
}

/// Exact contraction of a diagram under a fixed outcome assignment.
///
/// Legs of the result are the boundary ports in ascending id order.
pub fn dense_contract(
    d: &Diagram,
    assignment: &BTreeMap<VarId, bool>,
) -> Result<DenseTensor> {
    dense_contract_limited(d, assignment, DEFAULT_PORT_LIMIT)
}

pub fn dense_contract_limited(
    d: &Diagram,
    assignment: &BTreeMap<VarId, bool>,
    port_limit: usize,
) -> Result<DenseTensor> {
    let ports: Vec<NodeId> = d.ports().map(|(id, _)| id).collect();
    if ports.len() > port_limit {
        return Err(Error::TooManyPorts { ports: ports.len(), limit: port_limit });
    }

    // Spider tensors, keyed by node.
    let mut tensors: Vec<Work> = Vec::new();
    let mut port_leg: BTreeMap<Leg, NodeId> = BTreeMap::new();
    for (id, node) in d.nodes() {
        let Node::Spider(s) = node else { continue };
        let mut quarter = s.phase.quarter_turns();
        if let Some(expr) = &s.instrument {
            if expr.eval(assignment) {
                quarter = (quarter + 2) % 4;
            }
        }
        let legs: Vec<Leg> = d
            .incident_edges(id)
            .iter()
            .flat_map(|e| {
                let edge = d.edge(*e).unwrap();
                let mut ends = Vec::new();
                if edge.a == id {
                    ends.push((e.0, 0u8));
                }
                if edge.b == id {
                    ends.push((e.0, 1u8));
                }
                ends
            })
            .collect();
        tensors.push(Work::spider(s.kind, quarter, legs));
    }

    let h = hadamard();
    // Wire tensors for edges between two ports; Hadamard absorption and
    // port-leg naming for everything else.
    for (eid, edge) in d.edges() {
        let a_port = d.port(edge.a).is_some();
        let b_port = d.port(edge.b).is_some();
        if a_port && b_port {
            let mut w = Work {
                legs: vec![(eid.0, 0), (eid.0, 1)],
                data: vec![
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(1.0, 0.0),
                ],
            };
            if edge.kind == EdgeKind::Hadamard {
                w.apply_matrix(0, &h);
            }
            tensors.push(w);
            port_leg.insert((eid.0, 0), edge.a);
            port_leg.insert((eid.0, 1), edge.b);
        } else if a_port || b_port {
            let (port, spider_end) = if a_port { (edge.a, 1u8) } else { (edge.b, 0u8) };
            // the spider-side leg becomes the open port leg
            if edge.kind == EdgeKind::Hadamard {
                for t in tensors.iter_mut() {
                    if let Some(pos) = t.legs.iter().position(|l| *l == (eid.0, spider_end)) {
                        t.apply_matrix(pos, &h);
                        break;
                    }
                }
            }
            port_leg.insert((eid.0, spider_end), port);
        } else if edge.kind == EdgeKind::Hadamard {
            // spider-spider Hadamard edge: absorb H into the `a` end
            for t in tensors.iter_mut() {
                if let Some(pos) = t.legs.iter().position(|l| *l == (eid.0, 0)) {
                    t.apply_matrix(pos, &h);
                    break;
                }
            }
        }
    }

    // Legs that must be contracted together: (e,0) with (e,1) for every
    // spider-spider edge.
    let contracted: Vec<u32> = d
        .edges()
        .filter(|(_, e)| d.port(e.a).is_none() && d.port(e.b).is_none())
        .map(|(eid, _)| eid.0)
        .collect();

    // Greedy pairwise contraction: pick the tensor pair minimizing the
    // resulting rank.
    loop {
        // resolve self-contractions first
        let mut acted = false;
        for t in tensors.iter_mut() {
            while let Some(e) = contracted.iter().find(|e| {
                t.legs.contains(&(**e, 0)) && t.legs.contains(&(**e, 1))
            }) {
                let i = t.legs.iter().position(|l| *l == (*e, 0)).unwrap();
                let j = t.legs.iter().position(|l| *l == (*e, 1)).unwrap();
                t.self_contract(i, j);
                acted = true;
            }
        }
        // find the best pair sharing at least one contracted edge
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..tensors.len() {
            for j in i + 1..tensors.len() {
                let shared = shared_pairs(&tensors[i], &tensors[j], &contracted);
                if shared.is_empty() {
                    continue;
                }
                let rank = tensors[i].legs.len() + tensors[j].legs.len() - 2 * shared.len();
                if best.map_or(true, |(_, _, r)| rank < r) {
                    best = Some((i, j, rank));
                }
            }
        }
        match best {
            Some((i, j, _)) => {
                let pairs = shared_pairs(&tensors[i], &tensors[j], &contracted);
                let merged = tensors[i].contract_with(&tensors[j], &pairs);
                tensors.swap_remove(j);
                tensors[i] = merged;
            }
            None => {
                if !acted {
                    break;
                }
            }
        }
    }

    // outer product of the disconnected components
    let mut acc = Work::scalar(Complex64::new(1.0, 0.0));
    for t in tensors {
        acc = acc.contract_with(&t, &[]);
    }

    // order legs by port id
    let mut leg_ports: Vec<(NodeId, Leg)> =
        acc.legs.iter().map(|l| (port_leg[l], *l)).collect();
    leg_ports.sort_unstable();
    let tensor = DenseTensor {
        legs: leg_ports.iter().map(|(p, _)| *p).collect(),
        data: {
            let order: Vec<usize> = leg_ports
                .iter()
                .map(|(_, l)| acc.legs.iter().position(|x| x == l).unwrap())
                .collect();
            let n = order.len();
            let mut data = vec![Complex64::new(0.0, 0.0); 1 << n];
            for (idx, out) in data.iter_mut().enumerate() {
                let mut src = 0usize;
                for (new_bit, old_bit) in order.iter().enumerate() {
                    if idx >> new_bit & 1 == 1 {
                        src |= 1 << old_bit;
                    }
                }
                *out = acc.data[src];
            }
            data
        },
    };
    Ok(tensor)
}

fn shared_pairs(a: &Work, b: &Work, contracted: &[u32]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for e in contracted {
        for (end_a, end_b) in [(0u8, 1u8), (1, 0)] {
            if let (Some(i), Some(j)) = (
                a.legs.iter().position(|l| *l == (*e, end_a)),
                b.legs.iter().position(|l| *l == (*e, end_b)),
            ) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

// ---- equivalence ------------------------------------------------------------

fn assignments_for(
    vars: &[VarId],
    seed: u64,
) -> Vec<BTreeMap<VarId, bool>> {
    if vars.len() <= 10 {
        (0..1usize << vars.len())
            .map(|mask| {
                vars.iter()
                    .enumerate()
                    .map(|(i, v)| (*v, mask >> i & 1 == 1))
                    .collect()
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..256)
            .map(|_| vars.iter().map(|v| (*v, rng.gen::<bool>())).collect())
            .collect()
    }
}

/// Proportionality of two diagrams for every outcome assignment, matching
/// boundary ports by label.
pub fn equivalent(d1: &Diagram, d2: &Diagram) -> Result<bool> {
    let vars: Vec<VarId> = d1.outcome_vars().map(|(v, _)| v).collect();
    let vars2: Vec<VarId> = d2.outcome_vars().map(|(v, _)| v).collect();
    if vars != vars2 {
        return Err(Error::ContractViolation(
            "diagrams have different outcome variable sets; use equivalent_mapped".into(),
        ));
    }
    let ident: BTreeMap<VarId, VarId> = vars.iter().map(|v| (*v, *v)).collect();
    equivalent_mapped(d1, d2, &ident)
}

/// As [`equivalent`], with an explicit map from d1 variables to d2 variables.
pub fn equivalent_mapped(
    d1: &Diagram,
    d2: &Diagram,
    var_map: &BTreeMap<VarId, VarId>,
) -> Result<bool> {
    let port_map = match_ports_by_label(d1, d2)?;
    let vars: Vec<VarId> = d1.outcome_vars().map(|(v, _)| v).collect();
    for asg1 in assignments_for(&vars, 0) {
        let asg2: BTreeMap<VarId, bool> = asg1
            .iter()
            .filter_map(|(v, b)| var_map.get(v).map(|w| (*w, *b)))
            .collect();
        let t1 = dense_contract(d1, &asg1)?;
        let t2 = dense_contract(d2, &asg2)?;
        let t2 = t2.permuted(
            &t1.legs.iter().map(|p| port_map[p]).collect::<Vec<_>>(),
        );
        // align: rename t1's legs through the map so slots line up
        let t1 = DenseTensor { legs: t2.legs.clone(), data: t1.data.clone() };
        if !t1.proportional(&t2, TOL) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn match_ports_by_label(d1: &Diagram, d2: &Diagram) -> Result<BTreeMap<NodeId, NodeId>> {
    let mut map = BTreeMap::new();
    let key = |p: &crate::diagram::Port| (p.dir, p.label.clone());
    let mut by_label: BTreeMap<(crate::diagram::PortDir, Option<String>), Vec<NodeId>> =
        BTreeMap::new();
    for (id, p) in d2.ports() {
        by_label.entry(key(p)).or_default().push(id);
    }
    for (id, p) in d1.ports() {
        let bucket = by_label.get_mut(&key(p)).and_then(|v| {
            if v.is_empty() {
                None
            } else {
                Some(v.remove(0))
            }
        });
        match bucket {
            Some(other) => {
                map.insert(id, other);
            }
            None => {
                return Err(Error::ContractViolation(format!(
                    "no matching port for {:?} {:?}",
                    p.dir, p.label
                )))
            }
        }
    }
    if map.len() != d2.num_ports() {
        return Err(Error::ContractViolation("port counts differ".into()));
    }
    Ok(map)
}

// ---- Clifford stabilizer verification ---------------------------------------

/// Check `(-1)^sign · P_out · C · P_in = C` exactly (up to the uniform
/// diagram scalar), for every outcome assignment.
///
/// Port operators follow the internal convention: at an output port with
/// highlight (r, g) the factor is `X^g Z^r`; at an input port it is
/// `Z^r X^g` (the transpose), so double highlights need no extra phase
/// bookkeeping.
pub fn verify_clifford(web: &PauliWeb, d: &Diagram) -> Result<bool> {
    let vars: Vec<VarId> = d.outcome_vars().map(|(v, _)| v).collect();
    let in_ports: Vec<NodeId> = d
        .ports()
        .filter(|(_, p)| p.dir == crate::diagram::PortDir::Input)
        .map(|(id, _)| id)
        .collect();
    let out_ports: Vec<NodeId> = d
        .ports()
        .filter(|(_, p)| p.dir == crate::diagram::PortDir::Output)
        .map(|(id, _)| id)
        .collect();
    let sign_expr = web.sign(d)?;

    for asg in assignments_for(&vars, 0) {
        let t = dense_contract(d, &asg)?;
        // operator matrix M[out, in]
        let mut legs = out_ports.clone();
        legs.extend(in_ports.iter().copied());
        let t = t.permuted(&legs);
        let rows = 1usize << out_ports.len();
        let cols = 1usize << in_ports.len();

        let mut m = vec![Complex64::new(0.0, 0.0); rows * cols];
        for (idx, v) in t.data.iter().enumerate() {
            let r = idx & (rows - 1);
            let c = idx >> out_ports.len();
            m[r * cols + c] = *v;
        }

        let p_out = pauli_kron(&out_ports, web, d, false)?;
        let p_in = pauli_kron(&in_ports, web, d, true)?;
        // L = P_out · M · P_in
        let pm = matmul(&p_out, &m, rows, rows, cols);
        let l = matmul(&pm, &p_in, rows, cols, cols);
        let sign = if sign_expr.eval(&asg) { -1.0 } else { 1.0 };
        let expect: Vec<Complex64> = m.iter().map(|v| v * sign).collect();
        let scale = expect.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
        let ok = l
            .iter()
            .zip(&expect)
            .all(|(a, b)| (a - b).norm() <= TOL * scale);
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Kronecker product of per-port single-qubit operators. Bit i of the
/// matrix index is port i in the given list. `transposed` selects the
/// `Z^r X^g` order used on input ports.
fn pauli_kron(
    ports: &[NodeId],
    web: &PauliWeb,
    d: &Diagram,
    transposed: bool,
) -> Result<Vec<Complex64>> {
    let n = ports.len();
    let dim = 1usize << n;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut m = vec![zero; dim * dim];
    let factors: Vec<[[Complex64; 2]; 2]> = ports
        .iter()
        .map(|p| {
            let (r, g) = web.value_at_port(d, *p);
            single_xz(g, r, transposed)
        })
        .collect();
    for row in 0..dim {
        for col in 0..dim {
            let mut v = one;
            for (i, f) in factors.iter().enumerate() {
                v *= f[row >> i & 1][col >> i & 1];
                if v == zero {
                    break;
                }
            }
            m[row * dim + col] = v;
        }
    }
    Ok(m)
}

/// `X^g Z^r` (or its transpose `Z^r X^g`).
fn single_xz(g: bool, r: bool, transposed: bool) -> [[Complex64; 2]; 2] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match (g, r) {
        (false, false) => [[one, zero], [zero, one]],
        (true, false) => [[zero, one], [one, zero]],
        (false, true) => [[one, zero], [zero, -one]],
        // X·Z = [[0,-1],[1,0]]; Z·X is its transpose
        (true, true) => {
            if transposed {
                [[zero, one], [-one, zero]]
            } else {
                [[zero, -one], [one, zero]]
            }
        }
    }
}

fn matmul(a: &[Complex64], b: &[Complex64], n: usize, k: usize, m: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * m];
    for i in 0..n {
        for l in 0..k {
            let v = a[i * k + l];
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..m {
                out[i * m + j] += v * b[l * m + j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Phase, PortDir};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// in1 -- Zc -- out1 / in2 -- Xt -- out2 with a plain bridge: CNOT.
    fn cnot() -> Diagram {
        let mut d = Diagram::new();
        let zc = d.add_spider(SpiderKind::Z, Phase::ZERO);
        let xt = d.add_spider(SpiderKind::X, Phase::ZERO);
        let ic = d.add_labeled_port(PortDir::Input, "c");
        let oc = d.add_labeled_port(PortDir::Output, "c");
        let it = d.add_labeled_port(PortDir::Input, "t");
        let ot = d.add_labeled_port(PortDir::Output, "t");
        for (a, b) in [(ic, zc), (zc, oc), (it, xt), (xt, ot), (zc, xt)] {
            d.add_edge(a, b, EdgeKind::Plain).unwrap();
        }
        d
    }

    #[test]
    fn ghz_amplitudes() {
        let d = crate::diagram::tests::ghz();
        let t = dense_contract(&d, &BTreeMap::new()).unwrap();
        assert_eq!(t.rank(), 3);
        let expect = [c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.), c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)];
        let got = DenseTensor { legs: t.legs.clone(), data: expect.to_vec() };
        assert!(t.proportional(&got, 1e-12));
    }

    #[test]
    fn cnot_matrix() {
        let d = cnot();
        let t = dense_contract(&d, &BTreeMap::new()).unwrap();
        // legs sorted by port id: ic, oc, it, ot
        let mut expect = DenseTensor {
            legs: t.legs.clone(),
            data: vec![c(0., 0.); 16],
        };
        // amplitude <oc ot| CNOT |ic it>: nonzero when oc=ic, ot=it^ic
        for ic_b in 0..2usize {
            for it_b in 0..2usize {
                let oc = ic_b;
                let ot = it_b ^ ic_b;
                let idx = ic_b | oc << 1 | it_b << 2 | ot << 3;
                expect.data[idx] = c(1., 0.);
            }
        }
        assert!(t.proportional(&expect, 1e-12));
    }

    #[test]
    fn cz_via_hadamard_edge() {
        let mut d = Diagram::new();
        let z1 = d.add_spider(SpiderKind::Z, Phase::ZERO);
        let z2 = d.add_spider(SpiderKind::Z, Phase::ZERO);
        let i1 = d.add_labeled_port(PortDir::Input, "1");
        let o1 = d.add_labeled_port(PortDir::Output, "1");
        let i2 = d.add_labeled_port(PortDir::Input, "2");
        let o2 = d.add_labeled_port(PortDir::Output, "2");
        for (a, b) in [(i1, z1), (z1, o1), (i2, z2), (z2, o2)] {
            d.add_edge(a, b, EdgeKind::Plain).unwrap();
        }
        d.add_edge(z1, z2, EdgeKind::Hadamard).unwrap();
        let t = dense_contract(&d, &BTreeMap::new()).unwrap();
        let mut expect = DenseTensor { legs: t.legs.clone(), data: vec![c(0., 0.); 16] };
        for a in 0..2usize {
            for b in 0..2usize {
                let idx = a | a << 1 | b << 2 | b << 3;
                expect.data[idx] = if a == 1 && b == 1 { c(-1., 0.) } else { c(1., 0.) };
            }
        }
        assert!(t.proportional(&expect, 1e-12));
    }

    #[test]
    fn diagram_equivalent_to_itself_but_not_to_cnot() {
        let d = cnot();
        assert!(equivalent(&d, &d).unwrap());
        // CZ diagram with same labels
        let mut cz = Diagram::new();
        let z1 = cz.add_spider(SpiderKind::Z, Phase::ZERO);
        let z2 = cz.add_spider(SpiderKind::Z, Phase::ZERO);
        let i1 = cz.add_labeled_port(PortDir::Input, "c");
        let o1 = cz.add_labeled_port(PortDir::Output, "c");
        let i2 = cz.add_labeled_port(PortDir::Input, "t");
        let o2 = cz.add_labeled_port(PortDir::Output, "t");
        for (a, b) in [(i1, z1), (z1, o1), (i2, z2), (z2, o2)] {
            cz.add_edge(a, b, EdgeKind::Plain).unwrap();
        }
        cz.add_edge(z1, z2, EdgeKind::Hadamard).unwrap();
        assert!(!equivalent(&d, &cz).unwrap());
    }

    #[test]
    fn port_limit_enforced() {
        let mut d = Diagram::new();
        let s = d.add_spider(SpiderKind::Z, Phase::ZERO);
        for _ in 0..15 {
            let p = d.add_port(PortDir::Output);
            d.add_edge(s, p, EdgeKind::Plain).unwrap();
        }
        assert!(matches!(
            dense_contract(&d, &BTreeMap::new()),
            Err(Error::TooManyPorts { .. })
        ));
    }

    #[test]
    fn scalar_scaling_is_ignored() {
        let a = DenseTensor { legs: vec![NodeId(0)], data: vec![c(1., 0.), c(0., 1.)] };
        let b = DenseTensor { legs: vec![NodeId(0)], data: vec![c(-2., 0.), c(0., -2.)] };
        assert!(a.proportional(&b, 1e-12));
        let d = DenseTensor { legs: vec![NodeId(0)], data: vec![c(1., 0.), c(0., -1.)] };
        assert!(!a.proportional(&d, 1e-9));
    }
}
