//! Generators of a single homogeneous-Lorentz-algebra irrep `(A, B)`.
//!
//! A block is the direct product of a spin-`A` and a spin-`B` su(2) irrep.
//! The double index `(a, b)` is flattened A-major: `a` varies slowest, both in
//! descending order.

use core::fmt;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numeric::{commutator, CMatrix, HalfInt, I};
use crate::su2::{ladder_r_unchecked, ladder_s_unchecked, SpinLabel};

/// Label `(A, B)` of one HLA irrep.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockLabel {
    a: HalfInt,
    b: HalfInt,
}

impl BlockLabel {
    pub fn new(a: HalfInt, b: HalfInt) -> Result<Self> {
        for x in [a, b] {
            if x < HalfInt::ZERO {
                return Err(Error::NegativeLabel(x));
            }
        }
        Ok(BlockLabel { a, b })
    }

    /// Convenience constructor from doubled labels; panics on negative input.
    pub fn from_twice(two_a: i64, two_b: i64) -> Self {
        BlockLabel::new(HalfInt::from_twice(two_a), HalfInt::from_twice(two_b))
            .expect("non-negative labels")
    }

    pub fn a(self) -> HalfInt {
        self.a
    }

    pub fn b(self) -> HalfInt {
        self.b
    }

    pub fn swapped(self) -> BlockLabel {
        BlockLabel { a: self.b, b: self.a }
    }

    pub fn dim(self) -> usize {
        block_dim(self)
    }

    pub fn index_map(self) -> IndexMap {
        IndexMap { block: self }
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl fmt::Debug for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(2A + 1)(2B + 1)`.
pub fn block_dim(block: BlockLabel) -> usize {
    block.a.multiplicity() * block.b.multiplicity()
}

/// Bijection between weight pairs `(a, b)` and flat row indices of a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexMap {
    block: BlockLabel,
}

impl IndexMap {
    pub fn block(&self) -> BlockLabel {
        self.block
    }

    pub fn len(&self) -> usize {
        block_dim(self.block)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `(A - a)(2B + 1) + (B - b)`.
    pub fn flat(&self, a: HalfInt, b: HalfInt) -> Result<usize> {
        let ia = SpinLabel::new(self.block.a)?.position(a)?;
        let ib = SpinLabel::new(self.block.b)?.position(b)?;
        Ok(ia * self.block.b.multiplicity() + ib)
    }

    /// Like [`IndexMap::flat`] but `None` when `(a, b)` is not a weight of the block.
    pub fn try_flat(&self, a: HalfInt, b: HalfInt) -> Option<usize> {
        self.flat(a, b).ok()
    }

    pub fn weights(&self, flat: usize) -> (HalfInt, HalfInt) {
        let nb = self.block.b.multiplicity();
        let (ia, ib) = (flat / nb, flat % nb);
        (
            self.block.a - HalfInt::from_int(ia as i64),
            self.block.b - HalfInt::from_int(ib as i64),
        )
    }

    /// All weight pairs in flat order.
    pub fn iter(&self) -> impl Iterator<Item = (HalfInt, HalfInt)> + '_ {
        (0..self.len()).map(move |k| self.weights(k))
    }
}

/// Ladder-form generators `J±, Jz, K±, Kz` of one block.
#[derive(Clone, Debug, PartialEq)]
pub struct HlaGenerators {
    pub j_plus: CMatrix,
    pub j_minus: CMatrix,
    pub j_z: CMatrix,
    pub k_plus: CMatrix,
    pub k_minus: CMatrix,
    pub k_z: CMatrix,
}

impl HlaGenerators {
    /// `[Jx, Jy, Jz]` from `Jx = (J+ + J-)/2`, `Jy = (J+ - J-)/2i`.
    pub fn j_cartesian(&self) -> [CMatrix; 3] {
        cartesian(&self.j_plus, &self.j_minus, &self.j_z)
    }

    pub fn k_cartesian(&self) -> [CMatrix; 3] {
        cartesian(&self.k_plus, &self.k_minus, &self.k_z)
    }
}

pub(crate) fn cartesian(plus: &CMatrix, minus: &CMatrix, z: &CMatrix) -> [CMatrix; 3] {
    let x = (plus + minus).scale_real(0.5);
    let y = (plus - minus).scale(-I * 0.5);
    [x, y, z.clone()]
}

pub fn hla_generators(block: BlockLabel) -> HlaGenerators {
    let map = block.index_map();
    let n = map.len();
    let (big_a, big_b) = (block.a, block.b);
    let one = HalfInt::ONE;

    let mut j_plus = CMatrix::zeros(n, n);
    let mut j_minus = CMatrix::zeros(n, n);
    // i*K± share the J± pattern with the B term negated
    let mut ik_plus = CMatrix::zeros(n, n);
    let mut ik_minus = CMatrix::zeros(n, n);
    let mut jz = Vec::with_capacity(n);
    let mut ikz = Vec::with_capacity(n);

    for col in 0..n {
        let (a, b) = map.weights(col);
        jz.push((a + b).to_f64());
        ikz.push((a - b).to_f64());
        if let Some(row) = map.try_flat(a + one, b) {
            let r = ladder_r_unchecked(big_a, a);
            j_plus[(row, col)] += r;
            ik_plus[(row, col)] += r;
        }
        if let Some(row) = map.try_flat(a, b + one) {
            let r = ladder_r_unchecked(big_b, b);
            j_plus[(row, col)] += r;
            ik_plus[(row, col)] -= r;
        }
        if let Some(row) = map.try_flat(a - one, b) {
            let s = ladder_s_unchecked(big_a, a);
            j_minus[(row, col)] += s;
            ik_minus[(row, col)] += s;
        }
        if let Some(row) = map.try_flat(a, b - one) {
            let s = ladder_s_unchecked(big_b, b);
            j_minus[(row, col)] += s;
            ik_minus[(row, col)] -= s;
        }
    }

    HlaGenerators {
        j_plus,
        j_minus,
        j_z: CMatrix::from_real_diag(&jz),
        k_plus: ik_plus.scale(-I),
        k_minus: ik_minus.scale(-I),
        k_z: CMatrix::from_real_diag(&ikz).scale(-I),
    }
}

/// Largest residual over the nine homogeneous Lorentz commutation relations
/// `[Ji,Jj] = iε Jk`, `[Ki,Kj] = -iε Jk`, `[Ji,Kj] = iε Kk`.
pub fn check_hla_crs(block: BlockLabel) -> f64 {
    let g = hla_generators(block);
    hla_residual(&g.j_cartesian(), &g.k_cartesian())
}

pub(crate) fn hla_residual(j: &[CMatrix; 3], k: &[CMatrix; 3]) -> f64 {
    let mut worst: f64 = 0.0;
    for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let rel = [
            (&j[x], &j[y], j[z].scale(I)),
            (&k[x], &k[y], j[z].scale(-I)),
            (&j[x], &k[y], k[z].scale(I)),
            (&k[x], &j[y], k[z].scale(I)),
        ];
        for (p, q, rhs) in rel {
            let c = commutator(p, q).expect("square blocks");
            worst = worst.max((&c - &rhs).max_abs());
        }
        // [Ji, Ki] = 0
        let c = commutator(&j[x], &k[x]).expect("square blocks");
        worst = worst.max(c.max_abs());
    }
    worst
}
