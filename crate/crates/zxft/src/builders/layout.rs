//! Rotated surface-code layout and the space-time lattice coordinates.
//!
//! Data qubits sit on a d×d grid. Stabilizer plaquettes are anchored at
//! (a, b) with center (a+½, b+½); the checkerboard parity of a+b picks the
//! type (even = Z), weight-2 halves survive on the left/right boundaries
//! for X and top/bottom for Z. The space-time lattice uses rotated
//! coordinates u = x+y, v = x−y and a layer coordinate z (Z layer of round
//! k at 2k−2, X layer at 2k−1); every diagram edge is then a unit step,
//! which is what the ring and chain decompositions key on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum StabKind {
    Z,
    X,
}

impl StabKind {
    pub fn other(self) -> StabKind {
        match self {
            StabKind::Z => StabKind::X,
            StabKind::X => StabKind::Z,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabDef {
    pub kind: StabKind,
    /// Plaquette anchor; the center is (a+½, b+½).
    pub anchor: (i32, i32),
    /// Supported data qubits (indices into the layout's qubit list).
    pub support: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceLayout {
    pub distance: u32,
    pub qubits: Vec<(i32, i32)>,
    pub stabs: Vec<StabDef>,
}

impl SurfaceLayout {
    pub fn qubit_index(&self, x: i32, y: i32) -> Option<usize> {
        let d = self.distance as i32;
        if (0..d).contains(&x) && (0..d).contains(&y) {
            Some((x * d + y) as usize)
        } else {
            None
        }
    }

    pub fn stabs_of_kind(&self, kind: StabKind) -> impl Iterator<Item = (usize, &StabDef)> {
        self.stabs.iter().enumerate().filter(move |(_, s)| s.kind == kind)
    }

    /// Stabilizers of a kind containing a qubit, ascending index.
    pub fn stabs_containing(&self, kind: StabKind, q: usize) -> Vec<usize> {
        self.stabs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.kind == kind && s.support.contains(&q))
            .map(|(i, _)| i)
            .collect()
    }

    /// Data qubits of the logical Z representative (the x = 0 column).
    pub fn logical_z_qubits(&self) -> Vec<usize> {
        (0..self.distance as i32).map(|y| self.qubit_index(0, y).unwrap()).collect()
    }

    /// Data qubits of the logical X representative (the y = 0 row).
    pub fn logical_x_qubits(&self) -> Vec<usize> {
        (0..self.distance as i32).map(|x| self.qubit_index(x, 0).unwrap()).collect()
    }
}

/// Standard rotated layout with d² qubits and d²−1 stabilizers.
pub fn rotated_layout(distance: u32) -> Result<SurfaceLayout> {
    if distance < 2 {
        return Err(Error::InvalidSpec(format!("distance {distance} < 2")));
    }
    let d = distance as i32;
    let qubits: Vec<(i32, i32)> = (0..d).flat_map(|x| (0..d).map(move |y| (x, y))).collect();
    let index = |x: i32, y: i32| -> Option<usize> {
        ((0..d).contains(&x) && (0..d).contains(&y)).then(|| (x * d + y) as usize)
    };
    let mut stabs = Vec::new();
    for a in -1..d {
        for b in -1..d {
            let support: Vec<usize> = [(a, b), (a + 1, b), (a, b + 1), (a + 1, b + 1)]
                .into_iter()
                .filter_map(|(x, y)| index(x, y))
                .collect();
            if support.len() < 2 {
                continue;
            }
            let kind = if (a + b).rem_euclid(2) == 0 { StabKind::Z } else { StabKind::X };
            let interior = (0..d - 1).contains(&a) && (0..d - 1).contains(&b);
            if !interior {
                // weight-2 halves: X on the left/right columns, Z on the
                // top/bottom rows
                let keep = if a == -1 || a == d - 1 {
                    kind == StabKind::X
                } else {
                    kind == StabKind::Z
                };
                if !keep {
                    continue;
                }
            }
            stabs.push(StabDef { kind, anchor: (a, b), support });
        }
    }
    Ok(SurfaceLayout { distance, qubits, stabs })
}

/// Space-time lattice coordinates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Loc {
    pub u: i64,
    pub v: i64,
    pub z: i64,
}

impl Loc {
    pub fn qubit(layout: &SurfaceLayout, q: usize, z: i64) -> Loc {
        let (x, y) = layout.qubits[q];
        Loc { u: (x + y) as i64, v: (x - y) as i64, z }
    }

    pub fn stab(layout: &SurfaceLayout, s: usize, z: i64) -> Loc {
        let (a, b) = layout.stabs[s].anchor;
        Loc { u: (a + b + 1) as i64, v: (a - b) as i64, z }
    }

    pub fn offset(self, du: i64, dv: i64, dz: i64) -> Loc {
        Loc { u: self.u + du, v: self.v + dv, z: self.z + dz }
    }

    /// Unit direction to another (adjacent) location.
    pub fn dir_to(self, other: Loc) -> Dir {
        let d = (other.u - self.u, other.v - self.v, other.z - self.z);
        match d {
            (1, 0, 0) => Dir::UPos,
            (-1, 0, 0) => Dir::UNeg,
            (0, 1, 0) => Dir::VPos,
            (0, -1, 0) => Dir::VNeg,
            (0, 0, 1) => Dir::ZPos,
            (0, 0, -1) => Dir::ZNeg,
            _ => panic!("locations {self:?} and {other:?} are not adjacent"),
        }
    }

    /// Global clock of the chain reading.
    pub fn tau(self) -> i64 {
        self.u + self.v + self.z
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Dir {
    UPos,
    UNeg,
    VPos,
    VNeg,
    ZPos,
    ZNeg,
}

impl Dir {
    pub fn axis(self) -> Axis {
        match self {
            Dir::UPos | Dir::UNeg => Axis::U,
            Dir::VPos | Dir::VNeg => Axis::V,
            Dir::ZPos | Dir::ZNeg => Axis::Z,
        }
    }

    pub fn positive(self) -> bool {
        matches!(self, Dir::UPos | Dir::VPos | Dir::ZPos)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Axis {
    U,
    V,
    Z,
}

impl Axis {
    /// Cyclic successor u → v → z → u.
    pub fn next(self) -> Axis {
        match self {
            Axis::U => Axis::V,
            Axis::V => Axis::Z,
            Axis::Z => Axis::U,
        }
    }
}

/// Which of a spider's two halves an edge direction belongs to under the
/// resource-state (ring) split: halves group same-sign directions.
pub fn ring_half(dir: Dir) -> u8 {
    dir.positive() as u8
}

/// Which half under the chain split: for the spider's ordered axis pair
/// (a, b = next(a)), one half is {−a, +b}, the other {+a, −b}.
pub fn chain_half(loc: Loc, dir: Dir) -> u8 {
    let (a, _b) = chain_axes(loc);
    let first = if dir.axis() == a { !dir.positive() } else { dir.positive() };
    first as u8
}

/// The ordered axis pair active at a lattice site, read off the location
/// parities: segments alternate between (z,u) and (v,z) with the qubit's
/// diagonal class, hubs use (u,v).
pub fn chain_axes(loc: Loc) -> (Axis, Axis) {
    let p = (loc.u.rem_euclid(2), loc.v.rem_euclid(2), loc.z.rem_euclid(2));
    match p {
        (0, 0, 0) | (1, 1, 1) => (Axis::Z, Axis::U),
        (1, 1, 0) | (0, 0, 1) => (Axis::V, Axis::Z),
        (1, 0, 0) | (0, 1, 1) => (Axis::U, Axis::V),
        other => panic!("no lattice site at parity {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d2_layout_matches_four_qubit_code() {
        let l = rotated_layout(2).unwrap();
        assert_eq!(l.qubits.len(), 4);
        assert_eq!(l.stabs.len(), 3);
        let z: Vec<_> = l.stabs_of_kind(StabKind::Z).collect();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].1.support.len(), 4);
        for (_, s) in l.stabs_of_kind(StabKind::X) {
            assert_eq!(s.support.len(), 2);
        }
    }

    #[test]
    fn d5_layout_counts() {
        let l = rotated_layout(5).unwrap();
        assert_eq!(l.qubits.len(), 25);
        assert_eq!(l.stabs.len(), 24);
        for kind in [StabKind::Z, StabKind::X] {
            let stabs: Vec<_> = l.stabs_of_kind(kind).collect();
            assert_eq!(stabs.len(), 12);
            let w4 = stabs.iter().filter(|(_, s)| s.support.len() == 4).count();
            let w2 = stabs.iter().filter(|(_, s)| s.support.len() == 2).count();
            assert_eq!((w4, w2), (8, 4));
        }
    }

    #[test]
    fn stabilizers_commute() {
        for d in [2, 3, 4, 5] {
            let l = rotated_layout(d).unwrap();
            for (i, s) in l.stabs.iter().enumerate() {
                for t in l.stabs.iter().skip(i + 1) {
                    if s.kind == t.kind {
                        continue;
                    }
                    let overlap =
                        s.support.iter().filter(|q| t.support.contains(q)).count();
                    assert_eq!(overlap % 2, 0, "{:?} vs {:?}", s.anchor, t.anchor);
                }
            }
        }
    }

    #[test]
    fn logical_operators_commute_with_stabilizers() {
        for d in [2, 3, 5] {
            let l = rotated_layout(d).unwrap();
            let lz = l.logical_z_qubits();
            let lx = l.logical_x_qubits();
            for s in &l.stabs {
                let (path, anti_kind) = match s.kind {
                    StabKind::X => (&lz, StabKind::X),
                    StabKind::Z => (&lx, StabKind::Z),
                };
                let _ = anti_kind;
                let overlap = s.support.iter().filter(|q| path.contains(q)).count();
                assert_eq!(overlap % 2, 0, "logical vs {:?}", s.anchor);
            }
            // and they anticommute with each other (share exactly qubit (0,0))
            let shared = lz.iter().filter(|q| lx.contains(q)).count();
            assert_eq!(shared, 1);
        }
    }

    #[test]
    fn stab_locs_have_hub_parity() {
        let l = rotated_layout(3).unwrap();
        for (i, s) in l.stabs.iter().enumerate() {
            let loc = Loc::stab(&l, i, 0);
            match s.kind {
                StabKind::Z => {
                    assert_eq!((loc.u.rem_euclid(2), loc.v.rem_euclid(2)), (1, 0));
                }
                StabKind::X => {
                    assert_eq!((loc.u.rem_euclid(2), loc.v.rem_euclid(2)), (0, 1));
                }
            }
            // unit steps from hub to its qubits
            for q in &s.support {
                let ql = Loc::qubit(&l, *q, 0);
                let du = (ql.u - loc.u).abs();
                let dv = (ql.v - loc.v).abs();
                assert_eq!(du + dv, 1, "hub {:?} to qubit {:?}", s.anchor, l.qubits[*q]);
            }
        }
    }
}
