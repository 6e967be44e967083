//! Spin-`A` irreps of su(2): ladder coefficients and generator matrices.
//!
//! Rows and columns are indexed by the weight `a` in descending order,
//! `a = A, A-1, ..., -A`, so flat index `k` holds weight `A - k`. Every module
//! that flattens weights uses this order.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numeric::{CMatrix, HalfInt};

/// A non-negative spin label `A`; the multiplet has `2A + 1` states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinLabel(HalfInt);

impl SpinLabel {
    pub fn new(spin: HalfInt) -> Result<Self> {
        if spin < HalfInt::ZERO {
            return Err(Error::NegativeLabel(spin));
        }
        Ok(SpinLabel(spin))
    }

    pub fn value(self) -> HalfInt {
        self.0
    }

    pub fn dim(self) -> usize {
        self.0.multiplicity()
    }

    /// Weights in storage order: `A, A-1, ..., -A`.
    pub fn weights(self) -> impl Iterator<Item = HalfInt> {
        let top = self.0;
        (0..self.dim() as i64).map(move |k| top - HalfInt::from_int(k))
    }

    /// Flat index of weight `a`.
    pub fn position(self, a: HalfInt) -> Result<usize> {
        self.check(a)?;
        Ok(((self.0 - a).twice() / 2) as usize)
    }

    fn check(self, a: HalfInt) -> Result<()> {
        let off = self.0 - a;
        if a.abs() > self.0 || !off.is_integer() {
            return Err(Error::IndexOutOfRange { spin: self.0, index: a });
        }
        Ok(())
    }
}

/// Raising coefficient `sqrt((A - a)(A + a + 1))`; zero at the top weight.
pub fn ladder_r(spin: SpinLabel, a: HalfInt) -> Result<f64> {
    spin.check(a)?;
    Ok(ladder_r_unchecked(spin.value(), a))
}

/// Lowering coefficient `sqrt((A + a)(A - a + 1))`; zero at the bottom weight.
pub fn ladder_s(spin: SpinLabel, a: HalfInt) -> Result<f64> {
    spin.check(a)?;
    Ok(ladder_s_unchecked(spin.value(), a))
}

pub(crate) fn ladder_r_unchecked(spin: HalfInt, a: HalfInt) -> f64 {
    // (A - a)(A + a + 1) in quarter units
    let p = (spin - a).twice() * (spin + a + HalfInt::ONE).twice();
    libm::sqrt(p as f64 / 4.0)
}

pub(crate) fn ladder_s_unchecked(spin: HalfInt, a: HalfInt) -> f64 {
    let p = (spin + a).twice() * (spin - a + HalfInt::ONE).twice();
    libm::sqrt(p as f64 / 4.0)
}

/// The raising, lowering and diagonal generators of one su(2) irrep.
#[derive(Clone, Debug, PartialEq)]
pub struct Su2Generators {
    pub plus: CMatrix,
    pub minus: CMatrix,
    pub z: CMatrix,
}

pub fn su2_generators(spin: SpinLabel) -> Su2Generators {
    let n = spin.dim();
    let top = spin.value();
    let mut plus = CMatrix::zeros(n, n);
    let mut minus = CMatrix::zeros(n, n);
    let diag: Vec<f64> = spin.weights().map(HalfInt::to_f64).collect();
    for k in 0..n {
        let a = top - HalfInt::from_int(k as i64);
        // A+ maps weight a to a+1, which sits one row up
        if k > 0 {
            plus[(k - 1, k)] = ladder_r_unchecked(top, a).into();
        }
        if k + 1 < n {
            minus[(k + 1, k)] = ladder_s_unchecked(top, a).into();
        }
    }
    Su2Generators {
        plus,
        minus,
        z: CMatrix::from_real_diag(&diag),
    }
}
