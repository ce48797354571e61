//! Integer points, coordinate axes, and the symmetry group of the cubic lattice.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Sub};

/// A point of the cubic lattice `Z^3`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        LatticePoint { x, y, z }
    }

    pub const fn coords(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub const fn from_coords(c: [i64; 3]) -> Self {
        LatticePoint::new(c[0], c[1], c[2])
    }
}

impl Index<Axis> for LatticePoint {
    type Output = i64;
    fn index(&self, axis: Axis) -> &i64 {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
            Axis::Z => &self.z,
        }
    }
}

impl IndexMut<Axis> for LatticePoint {
    fn index_mut(&mut self, axis: Axis) -> &mut i64 {
        match axis {
            Axis::X => &mut self.x,
            Axis::Y => &mut self.y,
            Axis::Z => &mut self.z,
        }
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.x, self.y, self.z)
    }
}

/// One of the three coordinate axes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub const fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub const fn from_index(i: usize) -> Axis {
        match i {
            0 => Axis::X,
            1 => Axis::Y,
            2 => Axis::Z,
            _ => panic!("axis index out of range"),
        }
    }

    /// The other two axes, in cyclic order: `X -> (Y, Z)`, `Y -> (Z, X)`, `Z -> (X, Y)`.
    pub const fn others(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::Z, Axis::X),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }

    /// Unit step in the positive direction of this axis.
    pub const fn unit(self) -> LatticePoint {
        match self {
            Axis::X => LatticePoint::new(1, 0, 0),
            Axis::Y => LatticePoint::new(0, 1, 0),
            Axis::Z => LatticePoint::new(0, 0, 1),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => write!(f, "x"),
            Axis::Y => write!(f, "y"),
            Axis::Z => write!(f, "z"),
        }
    }
}

/// A signed coordinate permutation: one of the 48 linear symmetries of the
/// cubic lattice. Output coordinate `i` is `signs[i] * p[perm[i]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SignedPermutation {
    pub perm: [usize; 3],
    pub signs: [i64; 3],
}

impl SignedPermutation {
    pub const IDENTITY: SignedPermutation = SignedPermutation {
        perm: [0, 1, 2],
        signs: [1, 1, 1],
    };

    /// All 48 signed permutations (6 permutations times 8 sign patterns).
    pub fn all() -> Vec<SignedPermutation> {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut out = Vec::with_capacity(48);
        for perm in PERMS {
            for bits in 0..8u32 {
                let signs = [
                    if bits & 1 == 0 { 1 } else { -1 },
                    if bits & 2 == 0 { 1 } else { -1 },
                    if bits & 4 == 0 { 1 } else { -1 },
                ];
                out.push(SignedPermutation { perm, signs });
            }
        }
        out
    }

    pub fn apply(&self, p: LatticePoint) -> LatticePoint {
        let c = p.coords();
        LatticePoint::new(
            self.signs[0] * c[self.perm[0]],
            self.signs[1] * c[self.perm[1]],
            self.signs[2] * c[self.perm[2]],
        )
    }

    /// Group composition: `self.compose(other)` applies `other` first, then `self`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let mut perm = [0usize; 3];
        let mut signs = [0i64; 3];
        for i in 0..3 {
            perm[i] = other.perm[self.perm[i]];
            signs[i] = self.signs[i] * other.signs[self.perm[i]];
        }
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut perm = [0usize; 3];
        let mut signs = [0i64; 3];
        for i in 0..3 {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    /// `+1` for rotations, `-1` for reflections (mirror symmetries).
    pub fn determinant(&self) -> i64 {
        let p = self.perm;
        let mut parity = 1;
        for i in 0..3 {
            for j in i + 1..3 {
                if p[i] > p[j] {
                    parity = -parity;
                }
            }
        }
        parity * self.signs.iter().product::<i64>()
    }

    /// The image axis of `axis`: output slot `i` with `perm[i] == axis` reads
    /// the `axis` coordinate, so sticks along `axis` map to sticks along `i`.
    pub fn image_axis(&self, axis: Axis) -> Axis {
        let j = axis.index();
        for i in 0..3 {
            if self.perm[i] == j {
                return Axis::from_index(i);
            }
        }
        unreachable!("perm is a permutation")
    }
}

/// An element of the full symmetry group of the lattice used for canonical
/// forms: a signed permutation followed by an integer translation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LatticeSymmetry {
    pub linear: SignedPermutation,
    pub translation: LatticePoint,
}

impl LatticeSymmetry {
    pub const IDENTITY: LatticeSymmetry = LatticeSymmetry {
        linear: SignedPermutation::IDENTITY,
        translation: LatticePoint::new(0, 0, 0),
    };

    pub fn apply(&self, p: LatticePoint) -> LatticePoint {
        self.linear.apply(p) + self.translation
    }

    /// `self.compose(other)` applies `other` first, then `self`.
    pub fn compose(&self, other: &LatticeSymmetry) -> LatticeSymmetry {
        LatticeSymmetry {
            linear: self.linear.compose(&other.linear),
            translation: self.linear.apply(other.translation) + self.translation,
        }
    }
}
