use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use alloc::vec;
use alloc::vec::Vec;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat(Ratio<i128>);

impl Rat {
    pub const ZERO: Rat = Rat(Ratio::new_raw(0, 1));
    pub const ONE: Rat = Rat(Ratio::new_raw(1, 1));

    /// Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Self {
        Rat(Ratio::new(num, den))
    }

    pub fn from_int(n: i128) -> Self {
        Rat(Ratio::from_integer(n))
    }

    pub fn num(&self) -> i128 {
        *self.0.numer()
    }

    pub fn den(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.num().cmp(&0) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn to_f64(&self) -> f64 {
        self.num() as f64 / self.den() as f64
    }

    /// Exact square root when both numerator and denominator are perfect squares.
    pub fn exact_sqrt(&self) -> Option<Rat> {
        if self.num() < 0 {
            return None;
        }
        let n = isqrt(self.num())?;
        let d = isqrt(self.den())?;
        Some(Rat::new(n, d))
    }
}

fn isqrt(x: i128) -> Option<i128> {
    let r = libm::sqrt(x as f64) as i128;
    (r.saturating_sub(1)..=r + 1).find(|c| *c >= 0 && c * c == x)
}

impl Default for Rat {
    fn default() -> Self {
        Rat::ZERO
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! rat_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for Rat {
            type Output = Rat;
            fn $f(self, rhs: Rat) -> Rat {
                Rat(self.0.$f(rhs.0))
            }
        }
    };
}
rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n as i128)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den() == 1 {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", self.num(), self.den())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::ZERO; rows * cols],
        }
    }

    /// Build from nested rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Rat>]) -> Result<Self> {
        let mut m = RatMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch {
                    op: "RatMatrix::from_rows",
                    lhs: (rows.len(), cols),
                    rhs: (1, row.len()),
                });
            }
            m.data[i * cols..(i + 1) * cols].copy_from_slice(row);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(Rat::ZERO, |acc, c| acc + self.get(r, c) * x[c])
            })
            .collect()
    }
}

/// Result of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearOutcome {
    Unique(Vec<Rat>),
    /// Consistent, with `dof` free parameters.
    Underdetermined { dof: usize },
    Inconsistent,
}

/// Gauss-Jordan elimination over the rationals.
pub fn solve_rational_linear(a: &RatMatrix, b: &[Rat]) -> Result<LinearOutcome> {
    if a.rows != b.len() {
        return Err(Error::ShapeMismatch {
            op: "solve_rational_linear",
            lhs: (a.rows, a.cols),
            rhs: (b.len(), 1),
        });
    }
    let (rows, cols) = (a.rows, a.cols);
    // augmented matrix
    let w = cols + 1;
    let mut m: Vec<Rat> = Vec::with_capacity(rows * w);
    for r in 0..rows {
        m.extend_from_slice(&a.data[r * cols..(r + 1) * cols]);
        m.push(b[r]);
    }

    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m[r * w + col].is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..w {
                m.swap(p * w + c, row * w + c);
            }
        }
        let inv = m[row * w + col].recip();
        for c in col..w {
            m[row * w + c] = m[row * w + c] * inv;
        }
        for r in 0..rows {
            if r == row {
                continue;
            }
            let f = m[r * w + col];
            if f.is_zero() {
                continue;
            }
            for c in col..w {
                let v = m[row * w + c];
                m[r * w + c] = m[r * w + c] - f * v;
            }
        }
        pivots.push(col);
        row += 1;
    }

    if (row..rows).any(|r| !m[r * w + cols].is_zero()) {
        return Ok(LinearOutcome::Inconsistent);
    }
    let rank = pivots.len();
    if rank < cols {
        return Ok(LinearOutcome::Underdetermined { dof: cols - rank });
    }
    let mut x = vec![Rat::ZERO; cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r * w + cols];
    }
    Ok(LinearOutcome::Unique(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i128) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn always_reduced() {
        let x = Rat::new(6, -4);
        assert_eq!((x.num(), x.den()), (-3, 2));
        assert_eq!(Rat::new(0, 7).den(), 1);
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(Rat::new(9, 4).exact_sqrt(), Some(Rat::new(3, 2)));
        assert_eq!(Rat::new(1, 2).exact_sqrt(), None);
        assert_eq!(Rat::new(-1, 4).exact_sqrt(), None);
        assert_eq!(Rat::ZERO.exact_sqrt(), Some(Rat::ZERO));
    }

    #[test]
    fn unique_one_by_one() {
        let a = RatMatrix::from_rows(1, &[vec![r(1)]]).unwrap();
        assert_eq!(
            solve_rational_linear(&a, &[r(2)]).unwrap(),
            LinearOutcome::Unique(vec![r(2)])
        );
    }

    #[test]
    fn underdetermined_row() {
        let a = RatMatrix::from_rows(2, &[vec![r(1), r(1)]]).unwrap();
        assert_eq!(
            solve_rational_linear(&a, &[r(1)]).unwrap(),
            LinearOutcome::Underdetermined { dof: 1 }
        );
    }

    #[test]
    fn inconsistent_pair() {
        let a = RatMatrix::from_rows(1, &[vec![r(1)], vec![r(1)]]).unwrap();
        assert_eq!(
            solve_rational_linear(&a, &[r(1), r(2)]).unwrap(),
            LinearOutcome::Inconsistent
        );
    }

    #[test]
    fn zero_rows_are_consistent() {
        let a = RatMatrix::zeros(3, 1);
        assert_eq!(
            solve_rational_linear(&a, &[Rat::ZERO; 3]).unwrap(),
            LinearOutcome::Underdetermined { dof: 1 }
        );
    }

    #[test]
    fn shape_error() {
        let a = RatMatrix::zeros(2, 2);
        assert!(solve_rational_linear(&a, &[Rat::ZERO]).is_err());
    }

    proptest! {
        #[test]
        fn unique_solution_substitutes_back(
            entries in proptest::collection::vec(-6i128..=6, 12),
            rhs in proptest::collection::vec(-6i128..=6, 4),
        ) {
            // 4x3 over-determined systems; consistency is rare, so build b from a known x
            let rows: Vec<Vec<Rat>> = entries.chunks(3).map(|c| c.iter().map(|&v| r(v)).collect()).collect();
            let a = RatMatrix::from_rows(3, &rows).unwrap();
            let x0: Vec<Rat> = rhs[..3].iter().map(|&v| Rat::new(v, 1 + rhs[3].abs())).collect();
            let b = a.mul_vec(&x0);
            match solve_rational_linear(&a, &b).unwrap() {
                LinearOutcome::Unique(x) => {
                    prop_assert_eq!(a.mul_vec(&x), b);
                    prop_assert_eq!(x, x0);
                }
                LinearOutcome::Underdetermined { dof } => prop_assert!(dof >= 1),
                LinearOutcome::Inconsistent => prop_assert!(false, "built consistent"),
            }
        }

        #[test]
        fn square_systems_substitute_back(
            entries in proptest::collection::vec(-5i128..=5, 9),
            rhs in proptest::collection::vec(-5i128..=5, 3),
        ) {
            let rows: Vec<Vec<Rat>> = entries.chunks(3).map(|c| c.iter().map(|&v| r(v)).collect()).collect();
            let a = RatMatrix::from_rows(3, &rows).unwrap();
            let b: Vec<Rat> = rhs.iter().map(|&v| r(v)).collect();
            if let LinearOutcome::Unique(x) = solve_rational_linear(&a, &b).unwrap() {
                prop_assert_eq!(a.mul_vec(&x), b);
            }
        }
    }
}
