//! Bit-packed GF(2) vectors and matrices with Gaussian elimination.
//!
//! Row reduction always pivots on the lowest-index row available, so for a
//! fixed variable ordering every result here is deterministic bit for bit.

/// A fixed-length vector over GF(2), packed 64 bits per word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 != 0
    }

    pub fn set(&mut self, i: usize, val: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if val {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |i| self.get(*i))
    }
}

/// A dense GF(2) matrix stored as one `BitVec` per row.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix { cols, rows: Vec::new() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { cols, rows: vec![BitVec::zeros(cols); rows] }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, val: bool) {
        self.rows[r].set(c, val);
    }

    /// Reduce to reduced row echelon form in place.
    ///
    /// Returns the pivot column of each pivot row; the rank is the length of
    /// that vector. Zero rows end up at the bottom.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows.len() {
                break;
            }
            let Some(p) = (row..self.rows.len()).find(|&r| self.rows[r].get(col)) else {
                continue;
            };
            self.rows.swap(row, p);
            let pivot_row = self.rows[row].clone();
            for (r, other) in self.rows.iter_mut().enumerate() {
                if r != row && other.get(col) {
                    other.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Basis of the right nullspace, one vector per free column, ordered by
    /// free column index.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (prow, pcol) in pivots.iter().enumerate() {
                if m.rows[prow].get(free) {
                    v.set(*pcol, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = b`, if the system is consistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows.len());
        let mut aug = BitMatrix::new(self.cols + 1);
        for (i, row) in self.rows.iter().enumerate() {
            let mut r = BitVec::zeros(self.cols + 1);
            for j in row.iter_ones() {
                r.set(j, true);
            }
            r.set(self.cols, b.get(i));
            aug.push_row(r);
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent: pivot in the augmented column
        }
        let mut x = BitVec::zeros(self.cols);
        for (prow, pcol) in pivots.iter().enumerate() {
            if aug.rows[prow].get(self.cols) {
                x.set(*pcol, true);
            }
        }
        Some(x)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

/// Rank of a set of vectors.
pub fn rank_of(vecs: &[BitVec], cols: usize) -> usize {
    let mut m = BitMatrix::new(cols);
    for v in vecs {
        m.push_row(v.clone());
    }
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_bits(bits: &[u8]) -> BitVec {
        let mut v = BitVec::zeros(bits.len());
        for (i, b) in bits.iter().enumerate() {
            v.set(i, *b != 0);
        }
        v
    }

    #[test]
    fn rref_and_rank() {
        let mut m = BitMatrix::new(4);
        m.push_row(from_bits(&[1, 0, 1, 0]));
        m.push_row(from_bits(&[0, 1, 1, 0]));
        m.push_row(from_bits(&[1, 1, 0, 0]));
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert!(m.row(2).is_zero());
    }

    #[test]
    fn nullspace_is_kernel() {
        let mut m = BitMatrix::new(5);
        m.push_row(from_bits(&[1, 1, 0, 0, 1]));
        m.push_row(from_bits(&[0, 1, 1, 1, 0]));
        let ns = m.nullspace();
        assert_eq!(ns.len(), 3);
        for v in &ns {
            for row in 0..m.num_rows() {
                let mut dot = false;
                for j in v.iter_ones() {
                    dot ^= m.get(row, j);
                }
                assert!(!dot);
            }
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let mut m = BitMatrix::new(3);
        m.push_row(from_bits(&[1, 1, 0]));
        m.push_row(from_bits(&[0, 1, 1]));
        let x = m.solve(&from_bits(&[1, 0])).unwrap();
        assert!(m.row(0).iter_ones().fold(false, |acc, j| acc ^ x.get(j)));

        let mut s = BitMatrix::new(2);
        s.push_row(from_bits(&[1, 1]));
        s.push_row(from_bits(&[1, 1]));
        assert!(s.solve(&from_bits(&[0, 1])).is_none());
    }

    #[test]
    fn word_boundary_ops() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(63, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.count_ones(), 4);
        assert_eq!(v.first_one(), Some(0));
        let mut w = BitVec::zeros(130);
        w.set(63, true);
        v.xor_assign(&w);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
    }
}
