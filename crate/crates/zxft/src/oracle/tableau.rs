//! Stabilizer tableau simulation with general Pauli-product measurements.
//!
//! Rows 0..n are destabilizers, n..2n stabilizers, each a Pauli product
//! stored as x/z bit vectors plus a phase exponent of i (0 or 2 for ±1).
//! The update rules follow the standard destabilizer-extended tableau
//! construction.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::gf2::BitVec;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

#[derive(Clone, Debug)]
pub struct Tableau {
    n: usize,
    x: Vec<BitVec>,
    z: Vec<BitVec>,
    r: Vec<u8>, // phase exponent of i, mod 4
}

impl Tableau {
    /// All qubits in |0⟩.
    pub fn new(n: usize) -> Tableau {
        let rows = 2 * n;
        let mut t = Tableau {
            n,
            x: vec![BitVec::zeros(n); rows],
            z: vec![BitVec::zeros(n); rows],
            r: vec![0; rows],
        };
        for i in 0..n {
            t.x[i].set(i, true); // destabilizer X_i
            t.z[n + i].set(i, true); // stabilizer Z_i
        }
        t
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn apply_h(&mut self, q: usize) {
        for i in 0..2 * self.n {
            let (xq, zq) = (self.x[i].get(q), self.z[i].get(q));
            if xq && zq {
                self.r[i] = (self.r[i] + 2) % 4;
            }
            self.x[i].set(q, zq);
            self.z[i].set(q, xq);
        }
    }

    pub fn apply_s(&mut self, q: usize) {
        for i in 0..2 * self.n {
            let (xq, zq) = (self.x[i].get(q), self.z[i].get(q));
            if xq && zq {
                self.r[i] = (self.r[i] + 2) % 4;
            }
            self.z[i].set(q, zq ^ xq);
        }
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        for i in 0..2 * self.n {
            let xc = self.x[i].get(control);
            let zc = self.z[i].get(control);
            let xt = self.x[i].get(target);
            let zt = self.z[i].get(target);
            if xc && zt && (xt == zc) {
                self.r[i] = (self.r[i] + 2) % 4;
            }
            self.x[i].set(target, xt ^ xc);
            self.z[i].set(control, zc ^ zt);
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        self.apply_h(b);
        self.apply_cnot(a, b);
        self.apply_h(b);
    }

    pub fn apply_x(&mut self, q: usize) {
        for i in 0..2 * self.n {
            if self.z[i].get(q) {
                self.r[i] = (self.r[i] + 2) % 4;
            }
        }
    }

    pub fn apply_z(&mut self, q: usize) {
        for i in 0..2 * self.n {
            if self.x[i].get(q) {
                self.r[i] = (self.r[i] + 2) % 4;
            }
        }
    }

    pub fn apply_y(&mut self, q: usize) {
        self.apply_z(q);
        self.apply_x(q);
    }

    pub fn apply_pauli(&mut self, p: Pauli, q: usize) {
        match p {
            Pauli::X => self.apply_x(q),
            Pauli::Y => self.apply_y(q),
            Pauli::Z => self.apply_z(q),
        }
    }

    /// Phase exponent contribution of multiplying row `a`'s operator into
    /// row `b`'s (the standard g-function sum).
    fn row_mul_phase(&self, a: usize, b: usize) -> u8 {
        let mut e: i32 = 0;
        for q in 0..self.n {
            let (x1, z1) = (self.x[a].get(q), self.z[a].get(q));
            let (x2, z2) = (self.x[b].get(q), self.z[b].get(q));
            e += g(x1, z1, x2, z2);
        }
        e += i32::from(self.r[a]) + i32::from(self.r[b]);
        e.rem_euclid(4) as u8
    }

    /// row b := row a · row b
    fn row_mul(&mut self, a: usize, b: usize) {
        self.r[b] = self.row_mul_phase(a, b);
        let (xa, za) = (self.x[a].clone(), self.z[a].clone());
        self.x[b].xor_assign(&xa);
        self.z[b].xor_assign(&za);
    }

    fn anticommutes(&self, row: usize, op: &[(usize, Pauli)]) -> bool {
        let mut anti = false;
        for (q, p) in op {
            let (x, z) = (self.x[row].get(*q), self.z[row].get(*q));
            let (px, pz) = pauli_bits(*p);
            if (x && pz) ^ (z && px) {
                anti = !anti;
            }
        }
        anti
    }

    /// Measure a Pauli product. Returns the outcome bit (operator eigenvalue
    /// (-1)^bit) and whether it was random.
    pub fn measure_pauli<R: Rng + ?Sized>(
        &mut self,
        op: &[(usize, Pauli)],
        rng: &mut R,
    ) -> (bool, bool) {
        let n = self.n;
        let pivot = (n..2 * n).find(|row| self.anticommutes(*row, op));
        match pivot {
            Some(p) => {
                // random outcome
                let rows: Vec<usize> =
                    (0..2 * n).filter(|r| *r != p && self.anticommutes(*r, op)).collect();
                for row in rows {
                    self.row_mul(p, row);
                }
                // destabilizer slot gets the old stabilizer
                self.x[p - n] = self.x[p].clone();
                self.z[p - n] = self.z[p].clone();
                self.r[p - n] = self.r[p];
                // stabilizer slot gets ±P (bit pair (1,1) reads as the
                // Hermitian Y throughout, matching the g-function)
                let outcome = rng.gen::<bool>();
                let mut x = BitVec::zeros(n);
                let mut z = BitVec::zeros(n);
                for (q, pl) in op {
                    let (px, pz) = pauli_bits(*pl);
                    x.set(*q, px);
                    z.set(*q, pz);
                }
                self.x[p] = x;
                self.z[p] = z;
                self.r[p] = if outcome { 2 } else { 0 };
                (outcome, true)
            }
            None => {
                // deterministic: accumulate stabilizer rows whose
                // destabilizer partners anticommute with P
                let mut acc_x = BitVec::zeros(n);
                let mut acc_z = BitVec::zeros(n);
                let mut acc_r: i32 = 0;
                for i in 0..n {
                    if self.anticommutes(i, op) {
                        let mut e = 0i32;
                        for q in 0..n {
                            e += g(
                                self.x[n + i].get(q),
                                self.z[n + i].get(q),
                                acc_x.get(q),
                                acc_z.get(q),
                            );
                        }
                        acc_r += e + i32::from(self.r[n + i]);
                        acc_x.xor_assign(&self.x[n + i]);
                        acc_z.xor_assign(&self.z[n + i]);
                    }
                }
                // acc now equals ±P
                let outcome = acc_r.rem_euclid(4);
                debug_assert!(outcome % 2 == 0, "deterministic outcome must be ±1");
                (outcome == 2, false)
            }
        }
    }

    /// The stabilizer rows as (x bits, z bits, minus sign) triples.
    pub fn stabilizers(&self) -> Vec<(BitVec, BitVec, bool)> {
        (self.n..2 * self.n)
            .map(|i| (self.x[i].clone(), self.z[i].clone(), self.r[i] == 2))
            .collect()
    }
}

fn pauli_bits(p: Pauli) -> (bool, bool) {
    match p {
        Pauli::X => (true, false),
        Pauli::Y => (true, true),
        Pauli::Z => (false, true),
    }
}

/// Phase exponent of i from multiplying single-qubit Paulis (x1,z1)·(x2,z2).
fn g(x1: bool, z1: bool, x2: bool, z2: bool) -> i32 {
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => (z2 as i32) - (x2 as i32),
        (true, false) => (z2 as i32) * (2 * (x2 as i32) - 1),
        (false, true) => (x2 as i32) * (1 - 2 * (z2 as i32)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_state_z_deterministic() {
        let mut t = Tableau::new(2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (b, random) = t.measure_pauli(&[(0, Pauli::Z)], &mut rng);
        assert!(!b);
        assert!(!random);
    }

    #[test]
    fn bell_pair_correlations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let mut t = Tableau::new(2);
            t.apply_h(0);
            t.apply_cnot(0, 1);
            let (zz, random) = t.measure_pauli(&[(0, Pauli::Z), (1, Pauli::Z)], &mut rng);
            assert!(!random);
            assert!(!zz);
            let (xx, random) = t.measure_pauli(&[(0, Pauli::X), (1, Pauli::X)], &mut rng);
            assert!(!random);
            assert!(!xx);
            let (b0, r0) = t.measure_pauli(&[(0, Pauli::Z)], &mut rng);
            assert!(r0);
            let (b1, r1) = t.measure_pauli(&[(1, Pauli::Z)], &mut rng);
            assert!(!r1);
            assert_eq!(b0, b1);
        }
    }

    #[test]
    fn x_flip_detected_by_z() {
        let mut t = Tableau::new(1);
        t.apply_x(0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (b, random) = t.measure_pauli(&[(0, Pauli::Z)], &mut rng);
        assert!(b);
        assert!(!random);
    }

    #[test]
    fn y_measurement_after_s_gate() {
        // S|+> is the +1 eigenstate of Y
        let mut t = Tableau::new(1);
        t.apply_h(0);
        t.apply_s(0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (b, random) = t.measure_pauli(&[(0, Pauli::Y)], &mut rng);
        assert!(!random);
        assert!(!b);
    }

    #[test]
    fn repeated_measurement_is_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let mut t = Tableau::new(3);
            t.apply_h(0);
            t.apply_h(2);
            t.apply_cz(0, 1);
            t.apply_cz(1, 2);
            let op = [(0, Pauli::X), (1, Pauli::Z), (2, Pauli::Y)];
            let (b1, _) = t.measure_pauli(&op, &mut rng);
            let (b2, random) = t.measure_pauli(&op, &mut rng);
            assert!(!random);
            assert_eq!(b1, b2);
        }
    }
}
