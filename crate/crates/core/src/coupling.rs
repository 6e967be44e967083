//! Off-diagonal coupling between two HLA blocks.
//!
//! Two blocks `P`, `Q` can carry nonzero translation generators between them
//! only when `A_P = A_Q ± 1/2` and `B_P = B_Q ± 1/2`. The two signs form the
//! [`PairCase`]. For a compatible pair the translation blocks are fixed up to
//! one scalar per direction: `V_PQ = t_PQ U_PQ`, `V_QP = t_QP U_QP`, with the
//! universal matrices `U` built by [`u_blocks`].
//!
//! Ladder conventions: `V± = (Vx ± iVy)/2` and `W± = (Vz ± Vt)/2`, hence
//! `Vx = V+ + V-`, `Vy = -i(V+ - V-)`, `Vz = W+ + W-`, `Vt = W+ - W-`.

use core::fmt;

use crate::error::{Error, Result};
use crate::hla::BlockLabel;
use crate::numeric::{CMatrix, HalfInt, Rat, I};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn from_value(v: i64) -> Sign {
        if v >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Signs `(S_A, S_B)` with `A_P = A_Q + S_A/2`, `B_P = B_Q + S_B/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairCase {
    pub s_a: Sign,
    pub s_b: Sign,
}

impl PairCase {
    pub const PP: PairCase = PairCase { s_a: Sign::Plus, s_b: Sign::Plus };
    pub const PM: PairCase = PairCase { s_a: Sign::Plus, s_b: Sign::Minus };
    pub const MP: PairCase = PairCase { s_a: Sign::Minus, s_b: Sign::Plus };
    pub const MM: PairCase = PairCase { s_a: Sign::Minus, s_b: Sign::Minus };
    pub const ALL: [PairCase; 4] = [Self::PP, Self::PM, Self::MP, Self::MM];

    /// The case seen from the other block.
    pub fn reversed(self) -> PairCase {
        PairCase {
            s_a: self.s_a.flip(),
            s_b: self.s_b.flip(),
        }
    }

    /// Slope +1 cases (`++`, `--`) versus slope -1 (`+-`, `-+`) in the (B, A) plane.
    pub fn is_diagonal(self) -> bool {
        self.s_a == self.s_b
    }
}

impl fmt::Display for PairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |s: Sign| if s == Sign::Plus { '+' } else { '-' };
        write!(f, "{}{}", c(self.s_a), c(self.s_b))
    }
}

/// `Some(case)` when `|A_P - A_Q| = |B_P - B_Q| = 1/2`.
pub fn compatibility(p: BlockLabel, q: BlockLabel) -> Option<PairCase> {
    let da = (p.a() - q.a()).twice();
    let db = (p.b() - q.b()).twice();
    if da.abs() == 1 && db.abs() == 1 {
        Some(PairCase {
            s_a: Sign::from_value(da),
            s_b: Sign::from_value(db),
        })
    } else {
        None
    }
}

/// `-1` for `++`/`--` (`t_PQ = -t_QP`), `+1` for `+-`/`-+` (`t_PQ = t_QP`).
pub fn t_sign_relation(case: PairCase) -> i8 {
    if case.is_diagonal() {
        -1
    } else {
        1
    }
}

/// `true` iff a three-block path `I-K-J` keeps both labels monotonic, which
/// happens exactly when both steps have the same case.
pub fn path_is_monotonic(first: PairCase, second: PairCase) -> bool {
    first == second
}

/// The eight universal coupling matrices for an ordered compatible pair.
///
/// `*_pq` members are `dim P x dim Q`; `*_qp` members are `dim Q x dim P`.
/// `w_*` are the `(Vz ± Vt)/2` ladders.
#[derive(Clone, Debug, PartialEq)]
pub struct UBlockSet {
    pub case: PairCase,
    pub u_plus_pq: CMatrix,
    pub u_minus_pq: CMatrix,
    pub w_plus_pq: CMatrix,
    pub w_minus_pq: CMatrix,
    pub u_plus_qp: CMatrix,
    pub u_minus_qp: CMatrix,
    pub w_plus_qp: CMatrix,
    pub w_minus_qp: CMatrix,
}

/// Cartesian components in the order `[t, x, y, z]`.
pub type Cartesian4 = [CMatrix; 4];

impl UBlockSet {
    pub fn cartesian_pq(&self) -> Cartesian4 {
        to_cartesian(&self.u_plus_pq, &self.u_minus_pq, &self.w_plus_pq, &self.w_minus_pq)
    }

    pub fn cartesian_qp(&self) -> Cartesian4 {
        to_cartesian(&self.u_plus_qp, &self.u_minus_qp, &self.w_plus_qp, &self.w_minus_qp)
    }

    /// Same pair seen from `Q`: the `pq` and `qp` members trade places.
    pub fn reversed(&self) -> UBlockSet {
        UBlockSet {
            case: self.case.reversed(),
            u_plus_pq: self.u_plus_qp.clone(),
            u_minus_pq: self.u_minus_qp.clone(),
            w_plus_pq: self.w_plus_qp.clone(),
            w_minus_pq: self.w_minus_qp.clone(),
            u_plus_qp: self.u_plus_pq.clone(),
            u_minus_qp: self.u_minus_pq.clone(),
            w_plus_qp: self.w_plus_pq.clone(),
            w_minus_qp: self.w_minus_pq.clone(),
        }
    }
}

/// `Vt = W+ - W-`, `Vx = V+ + V-`, `Vy = -i(V+ - V-)`, `Vz = W+ + W-`.
pub fn to_cartesian(
    v_plus: &CMatrix,
    v_minus: &CMatrix,
    w_plus: &CMatrix,
    w_minus: &CMatrix,
) -> Cartesian4 {
    [
        w_plus - w_minus,
        v_plus + v_minus,
        (v_plus - v_minus).scale(-I),
        w_plus + w_minus,
    ]
}

// sqrt of a product of two half-integers given in doubled units
fn root(x2: i64, y2: i64) -> f64 {
    debug_assert!(x2 >= 0 && y2 >= 0);
    libm::sqrt((x2 * y2) as f64 / 4.0)
}

/// Universal coupling matrices for the ordered pair `(P, Q)`.
pub fn u_blocks(p: BlockLabel, q: BlockLabel) -> Result<UBlockSet> {
    let case = compatibility(p, q).ok_or(Error::Incompatible { p, q })?;
    let (sa, sb) = (case.s_a.value(), case.s_b.value());
    let (np, nq) = (p.dim(), q.dim());
    let (mp, mq) = (p.index_map(), q.index_map());

    // larger label of each pair, and which side carries it
    let a_big = p.a().max(q.a()).twice();
    let b_big = p.b().max(q.b()).twice();
    let a_on_p = p.a() > q.a();
    let b_on_p = p.b() > q.b();

    let s_ladder = |s: i64| if s > 0 { 1.0 } else { -(sa * sb) as f64 };
    let s_ab = |s: i64| if s > 0 { sb as f64 } else { sa as f64 };

    let mut out = UBlockSet {
        case,
        u_plus_pq: CMatrix::zeros(np, nq),
        u_minus_pq: CMatrix::zeros(np, nq),
        w_plus_pq: CMatrix::zeros(np, nq),
        w_minus_pq: CMatrix::zeros(np, nq),
        u_plus_qp: CMatrix::zeros(nq, np),
        u_minus_qp: CMatrix::zeros(nq, np),
        w_plus_qp: CMatrix::zeros(nq, np),
        w_minus_qp: CMatrix::zeros(nq, np),
    };

    for i in 0..np {
        let (a1, b1) = mp.weights(i);
        for j in 0..nq {
            let (a2, b2) = mq.weights(j);
            let a12 = if a_on_p { a1 } else { a2 }.twice();
            let b12 = if b_on_p { b1 } else { b2 }.twice();
            let da = (a1 - a2).twice();
            let db = (b1 - b2).twice();
            for s in [1i64, -1] {
                let sl = s_ladder(s);
                // U±_PQ: a1 = a2 ± 1/2, b1 = b2 ± 1/2
                if da == s && db == s {
                    let v = sl * root(a_big + s * sa * a12, b_big + s * sb * b12);
                    let m = if s > 0 { &mut out.u_plus_pq } else { &mut out.u_minus_pq };
                    m[(i, j)] = v.into();
                }
                // U±_QP: a1 = a2 ∓ 1/2, b1 = b2 ∓ 1/2
                if da == -s && db == -s {
                    let v = sl * root(a_big - s * sa * a12, b_big - s * sb * b12);
                    let m = if s > 0 { &mut out.u_plus_qp } else { &mut out.u_minus_qp };
                    m[(j, i)] = v.into();
                }
                // W±_PQ: a1 = a2 ± 1/2, b1 = b2 ∓ 1/2
                if da == s && db == -s {
                    let v = -s_ab(s) * root(a_big + s * sa * a12, b_big - s * sb * b12);
                    let m = if s > 0 { &mut out.w_plus_pq } else { &mut out.w_minus_pq };
                    m[(i, j)] = v.into();
                }
                // W±_QP: a1 = a2 ∓ 1/2, b1 = b2 ± 1/2
                if da == -s && db == s {
                    let v = s_ab(s) * root(a_big - s * sa * a12, b_big + s * sb * b12);
                    let m = if s > 0 { &mut out.w_plus_qp } else { &mut out.w_minus_qp };
                    m[(j, i)] = v.into();
                }
            }
        }
    }
    Ok(out)
}

/// Linear form `coef_a * a_I + coef_b * b_I` for the contribution of one
/// neighbour to the diagonal of `i[Vx, Vy]` on block `I`, per unit `t_IJ t_JI`.
/// The overall factor 4 is included in the coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZLinear {
    pub coef_a: Rat,
    pub coef_b: Rat,
}

impl ZLinear {
    pub fn eval(&self, a: HalfInt, b: HalfInt) -> Rat {
        self.coef_a * a.to_rat() + self.coef_b * b.to_rat()
    }

    /// The `[Vt, Vz]` counterpart: same form with the `a_I` term negated.
    pub fn tilde(&self) -> ZLinear {
        ZLinear {
            coef_a: -self.coef_a,
            coef_b: self.coef_b,
        }
    }
}

/// `case` is the case of the ordered pair `(I, J)`; `(A_I, B_I)` labels block `I`.
pub fn z_linear(case: PairCase, big_a: HalfInt, big_b: HalfInt) -> ZLinear {
    let four = Rat::from_int(4);
    let (a, b) = (big_a.to_rat(), big_b.to_rat());
    let one = Rat::ONE;
    let (coef_a, coef_b) = match (case.s_a, case.s_b) {
        (Sign::Plus, Sign::Plus) => (four * b, four * a),
        (Sign::Minus, Sign::Minus) => (-four * (b + one), -four * (a + one)),
        (Sign::Plus, Sign::Minus) => (-four * (b + one), four * a),
        (Sign::Minus, Sign::Plus) => (four * b, -four * (a + one)),
    };
    ZLinear { coef_a, coef_b }
}
