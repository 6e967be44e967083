//! Commutation relations, Hermiticity and Casimir operators of an assembled set.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::numeric::{commutator, CMatrix, HalfInt, Rat, I};
use crate::representation::{
    canonical_generators, canonical_t_product, first_irreps, recognize_chain, Algebra,
    CanonicalSpec, Family, Generator, GeneratorSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    J,
    K,
    T,
    V,
}

fn split(g: Generator) -> (Kind, usize) {
    use Generator::*;
    match g {
        Jx => (Kind::J, 0),
        Jy => (Kind::J, 1),
        Jz => (Kind::J, 2),
        Kx => (Kind::K, 0),
        Ky => (Kind::K, 1),
        Kz => (Kind::K, 2),
        Vt => (Kind::T, 0),
        Vx => (Kind::V, 0),
        Vy => (Kind::V, 1),
        Vz => (Kind::V, 2),
    }
}

fn join(kind: Kind, i: usize) -> Generator {
    use Generator::*;
    match kind {
        Kind::J => [Jx, Jy, Jz][i],
        Kind::K => [Kx, Ky, Kz][i],
        Kind::T => Vt,
        Kind::V => [Vx, Vy, Vz][i],
    }
}

/// `ε_ijk` for `i != j`: the third index and the sign.
fn epsilon(i: usize, j: usize) -> Option<(usize, f64)> {
    if i == j {
        return None;
    }
    let k = 3 - i - j;
    let sign = if (j + 3 - i) % 3 == 1 { 1.0 } else { -1.0 };
    Some((k, sign))
}

/// Right-hand side of `[x, y]` as a linear combination of generators.
pub fn commutator_rhs(x: Generator, y: Generator, algebra: Algebra) -> Vec<(Complex64, Generator)> {
    use Kind::*;
    let sigma = algebra.curvature_sign();
    let (kx, i) = split(x);
    let (ky, j) = split(y);
    let cross = |coef: f64, out: Kind| -> Vec<(Complex64, Generator)> {
        epsilon(i, j)
            .map(|(k, s)| (I * (coef * s), join(out, k)))
            .into_iter()
            .collect()
    };
    let diag = |coef: Complex64, out: Generator| -> Vec<(Complex64, Generator)> {
        if i == j {
            alloc::vec![(coef, out)]
        } else {
            Vec::new()
        }
    };
    match (kx, ky) {
        (J, J) => cross(1.0, J),
        (K, K) => cross(-1.0, J),
        (J, K) | (K, J) => cross(1.0, K),
        (J, V) | (V, J) => cross(1.0, V),
        (K, V) => diag(-I, Generator::Vt),
        (V, K) => diag(I, Generator::Vt),
        (J, T) | (T, J) | (T, T) => Vec::new(),
        (K, T) => alloc::vec![(-I, join(V, i))],
        (T, K) => alloc::vec![(I, join(V, j))],
        (V, V) => cross(sigma, J),
        (T, V) => alloc::vec![(I * sigma, join(K, j))],
        (V, T) => alloc::vec![(-I * sigma, join(K, i))],
    }
}

/// Residual `max|[X,Y] - RHS|` for every unordered generator pair, keyed `"[X,Y]"`.
///
/// All 45 pairs are checked, which covers every relation instance including
/// the vanishing ones.
pub fn check_all_crs(g: &GeneratorSet) -> BTreeMap<String, f64> {
    let mut out = BTreeMap::new();
    for (n, &x) in Generator::ALL.iter().enumerate() {
        for &y in &Generator::ALL[n + 1..] {
            let mut r = commutator(g.get(x), g.get(y)).expect("square matrices of equal size");
            for (c, z) in commutator_rhs(x, y, g.algebra()) {
                r = &r - &g.get(z).scale(c);
            }
            out.insert(format!("[{},{}]", x, y), r.max_abs());
        }
    }
    out
}

/// Whether `g` must be Hermitian (`true`) or anti-Hermitian.
pub fn expected_hermitian(g: Generator, algebra: Algebra) -> bool {
    match (split(g).0, algebra) {
        (Kind::J, _) => true,
        (Kind::K, _) => false,
        (Kind::V, Algebra::DeSitter) | (Kind::T, Algebra::AntiDeSitter) => true,
        (Kind::T, Algebra::DeSitter) | (Kind::V, Algebra::AntiDeSitter) => false,
    }
}

/// `max|X† ∓ X|` per generator, per the required Hermiticity pattern.
pub fn check_hermiticity(g: &GeneratorSet) -> BTreeMap<String, f64> {
    Generator::ALL
        .iter()
        .map(|&x| {
            let m = g.get(x);
            let d = m.dagger();
            let r = if expected_hermitian(x, g.algebra()) {
                &d - m
            } else {
                &d + m
            };
            (String::from(x.name()), r.max_abs())
        })
        .collect()
}

fn sq(m: &CMatrix) -> CMatrix {
    m * m
}

/// First Casimir from ladder combinations `J±, K±, V±, W±`.
///
/// For anti-de Sitter sets the translation terms change sign so that the
/// value agrees with the de Sitter preimage.
pub fn casimir1_matrix(g: &GeneratorSet) -> CMatrix {
    let [jx, jy, jz] = g.j();
    let [kx, ky, kz] = g.k();
    let [vx, vy, vz] = g.v_spatial();
    let vt = g.v_t();
    let jp = jx + &jy.scale(I);
    let jm = jx - &jy.scale(I);
    let kp = kx + &ky.scale(I);
    let km = kx - &ky.scale(I);
    let vp = (vx + &vy.scale(I)).scale_real(0.5);
    let vm = (vx - &vy.scale(I)).scale_real(0.5);
    let wp = (vz + vt).scale_real(0.5);
    let wm = (vz - vt).scale_real(0.5);

    let k_part = &(&kp * &km) + &(&km * &kp);
    let j_part = &(&jp * &jm) + &(&jm * &jp);
    let v_part = &(&(&vp * &vm) + &(&vm * &vp)) + &(&(&wp * &wm) + &(&wm * &wp));
    let s = g.algebra().curvature_sign();
    &(&(&sq(kz) - &sq(jz)) + &(&k_part - &j_part).scale_real(0.5)) - &v_part.scale_real(2.0 * s)
}

/// First Casimir from Cartesian components: `Vt² + K² - J² - V²`.
pub fn casimir1_direct(g: &GeneratorSet) -> CMatrix {
    let s = g.algebra().curvature_sign();
    let n = g.dim();
    let mut c = sq(g.v_t()).scale_real(s);
    for i in 0..3 {
        c = &c + &sq(&g.k()[i]);
        c = &c - &sq(&g.j()[i]);
        c = &c - &sq(g.v_spatial()[i]).scale_real(s);
    }
    debug_assert_eq!(c.rows(), n);
    c
}

/// The last term of a second-Casimir reading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Casimir2Term {
    /// `Q·Q` with `Q_i = Vt J_i + (K×V)_i`.
    AuxSquared,
    /// `Q·J`.
    AuxDotRotations,
    /// `J·J`, the literal self-referential reading.
    RotationsSquared,
    /// No third term.
    Absent,
}

/// Operator order inside `(K×V)_i = ε_ijk K_j V_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossOrdering {
    KLeft,
    VLeft,
}

/// One candidate reading `s1 (K·J)² + s2 (V·J)² + s3 term`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Casimir2Reading {
    pub kj_sign: i8,
    pub vj_sign: i8,
    pub term_sign: i8,
    pub term: Casimir2Term,
    pub ordering: CrossOrdering,
}

impl Casimir2Reading {
    /// `(K·J)² - (V·J)² + Q·Q`.
    pub const DEFAULT: Casimir2Reading = Casimir2Reading {
        kj_sign: 1,
        vj_sign: -1,
        term_sign: 1,
        term: Casimir2Term::AuxSquared,
        ordering: CrossOrdering::KLeft,
    };

    /// Every reading considered by [`disambiguate_casimir2`].
    pub fn candidates() -> Vec<Casimir2Reading> {
        let mut out = Vec::new();
        for ordering in [CrossOrdering::KLeft, CrossOrdering::VLeft] {
            for term in [
                Casimir2Term::AuxSquared,
                Casimir2Term::AuxDotRotations,
                Casimir2Term::RotationsSquared,
                Casimir2Term::Absent,
            ] {
                let term_signs: &[i8] = if term == Casimir2Term::Absent { &[1] } else { &[1, -1] };
                for kj_sign in [1, -1] {
                    for vj_sign in [-1, 1] {
                        for &term_sign in term_signs {
                            out.push(Casimir2Reading {
                                kj_sign,
                                vj_sign,
                                term_sign,
                                term,
                                ordering,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

struct C2Parts {
    kj_sq: CMatrix,
    vj_sq: CMatrix,
    qq: CMatrix,
    qj: CMatrix,
    jj: CMatrix,
}

fn dot(a: [&CMatrix; 3], b: [&CMatrix; 3]) -> CMatrix {
    &(&(a[0] * b[0]) + &(a[1] * b[1])) + &(a[2] * b[2])
}

fn c2_parts(g: &GeneratorSet, ordering: CrossOrdering) -> C2Parts {
    let j = g.j();
    let k = g.k();
    let v = g.v_spatial();
    let jr = [&j[0], &j[1], &j[2]];
    let kr = [&k[0], &k[1], &k[2]];
    let kj = dot(kr, jr);
    let vj = dot(v, jr);
    let q: Vec<CMatrix> = (0..3)
        .map(|i| {
            let mut qi = g.v_t() * &j[i];
            for a in 0..3 {
                if let Some((b, s)) = epsilon(i, a) {
                    let term = match ordering {
                        CrossOrdering::KLeft => &k[a] * v[b],
                        CrossOrdering::VLeft => v[b] * &k[a],
                    };
                    qi = &qi + &term.scale_real(s);
                }
            }
            qi
        })
        .collect();
    let qr = [&q[0], &q[1], &q[2]];
    C2Parts {
        kj_sq: sq(&kj),
        vj_sq: sq(&vj),
        qq: dot(qr, qr),
        qj: dot(qr, jr),
        jj: dot(jr, jr),
    }
}

fn c2_combine(p: &C2Parts, r: Casimir2Reading, algebra: Algebra) -> CMatrix {
    // each translation-bilinear term flips sign under V -> iV
    let s = algebra.curvature_sign();
    let mut c = &p.kj_sq.scale_real(f64::from(r.kj_sign))
        + &p.vj_sq.scale_real(f64::from(r.vj_sign) * s);
    let (term, weight) = match r.term {
        Casimir2Term::AuxSquared => (Some(&p.qq), s),
        Casimir2Term::AuxDotRotations => (Some(&p.qj), 1.0),
        Casimir2Term::RotationsSquared => (Some(&p.jj), 1.0),
        Casimir2Term::Absent => (None, 0.0),
    };
    if let Some(t) = term {
        c = &c + &t.scale_real(f64::from(r.term_sign) * weight);
    }
    c
}

/// Second Casimir under the given reading.
pub fn casimir2_matrix(g: &GeneratorSet, reading: Casimir2Reading) -> CMatrix {
    c2_combine(&c2_parts(g, reading.ordering), reading, g.algebra())
}

/// Outcome of checking every [`Casimir2Reading`] against reference values.
#[derive(Clone, Debug, PartialEq)]
pub struct Casimir2Selection {
    /// Readings scalar on every reference irrep with the expected value.
    pub matching: Vec<Casimir2Reading>,
    /// The first matching reading, when all matches agree as matrices.
    pub selected: Option<Casimir2Reading>,
}

/// Check every candidate reading against `(irrep, -C2)` pairs.
///
/// A reading matches when its matrix is scalar within `tol` with value
/// `C2` on every irrep. Matching readings that produce the same matrices
/// everywhere count as one; `selected` is set only if there is exactly one
/// such class.
pub fn disambiguate_casimir2(reference: &[(GeneratorSet, Rat)], tol: f64) -> Casimir2Selection {
    let parts: Vec<[C2Parts; 2]> = reference
        .iter()
        .map(|(g, _)| [c2_parts(g, CrossOrdering::KLeft), c2_parts(g, CrossOrdering::VLeft)])
        .collect();
    let idx = |o: CrossOrdering| match o {
        CrossOrdering::KLeft => 0,
        CrossOrdering::VLeft => 1,
    };
    let mut matching = Vec::new();
    let mut matrices: Vec<Vec<CMatrix>> = Vec::new();
    for r in Casimir2Reading::candidates() {
        let ms: Vec<CMatrix> = reference
            .iter()
            .zip(&parts)
            .map(|((g, _), p)| c2_combine(&p[idx(r.ordering)], r, g.algebra()))
            .collect();
        let ok = ms.iter().zip(reference).all(|(m, (_, neg_c2))| {
            scalar_check(m, tol)
                .map(|l| (l + neg_c2.to_f64()).norm() < tol)
                .unwrap_or(false)
        });
        if ok {
            matching.push(r);
            matrices.push(ms);
        }
    }
    let single_class = matrices.windows(2).all(|w| {
        w[0].iter()
            .zip(&w[1])
            .all(|(a, b)| (a - b).max_abs() < tol)
    });
    let selected = if single_class { matching.first().copied() } else { None };
    Casimir2Selection { matching, selected }
}

/// [`disambiguate_casimir2`] over the first ten canonical irreps (de Sitter).
pub fn disambiguate_casimir2_reference(tol: f64) -> Casimir2Selection {
    let reference: Vec<(GeneratorSet, Rat)> = first_irreps(10)
        .into_iter()
        .map(|s| {
            (
                canonical_generators(s, Algebra::DeSitter),
                casimir_invariants_closed_form(s).neg_c2,
            )
        })
        .collect();
    disambiguate_casimir2(&reference, tol)
}

/// Closed-form Casimir invariants of a canonical irrep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CasimirInvariants {
    pub neg_c1: Rat,
    pub neg_c2: Rat,
    pub p: HalfInt,
    pub q: HalfInt,
}

/// `-C1 = p(p+1) + (q+1)(q-2)`, `-C2 = p(p+1)q(q-1)` with `(p, q)` per family.
///
/// Type A uses `q = 0`; `q = 1` gives the same values.
pub fn casimir_invariants_closed_form(spec: CanonicalSpec) -> CasimirInvariants {
    let (p, q) = match spec.family() {
        Family::TypeA => (HalfInt::from_int(spec.blocks() as i64), HalfInt::ZERO),
        Family::TypeB => {
            let p = HalfInt::from_twice(spec.blocks() as i64 + 1);
            (p, p)
        }
    };
    let (pr, qr) = (p.to_rat(), q.to_rat());
    let one = Rat::ONE;
    let two = Rat::from_int(2);
    CasimirInvariants {
        neg_c1: pr * (pr + one) + (qr + one) * (qr - two),
        neg_c2: pr * (pr + one) * qr * (qr - one),
        p,
        q,
    }
}

/// `-C1` from the first coupling of a canonical chain.
pub fn casimir1_from_coupling(spec: CanonicalSpec) -> Rat {
    let a1 = spec.top().to_rat();
    let t2 = canonical_t_product(spec, 1).expect("N >= 2");
    let (c, k) = match spec.family() {
        Family::TypeA => (Rat::from_int(4), a1 * a1),
        Family::TypeB => (Rat::from_int(2), a1),
    };
    c * a1 * (a1 + Rat::ONE) + Rat::from_int(8) * t2 * k
}

/// `trace(M)/dim` if `M` is within `tol` of that multiple of the identity.
pub fn scalar_check(m: &CMatrix, tol: f64) -> Option<Complex64> {
    if !m.is_square() || m.rows() == 0 {
        return None;
    }
    let n = m.rows();
    let lambda = m.trace() / n as f64;
    let dev = m - &CMatrix::identity(n).scale(lambda);
    (dev.max_abs() < tol).then_some(lambda)
}

/// Largest `max|[C, X]|` over the ten generators.
pub fn casimir_commutator_residual(g: &GeneratorSet, c: &CMatrix) -> f64 {
    Generator::ALL
        .iter()
        .map(|&x| commutator(c, g.get(x)).expect("same size").max_abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub cr_tolerance: f64,
    pub hermiticity_tolerance: f64,
    pub scalar_tolerance: f64,
    pub casimir2: Casimir2Reading,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cr_tolerance: 1e-10,
            hermiticity_tolerance: 1e-11,
            scalar_tolerance: 1e-9,
            casimir2: Casimir2Reading::DEFAULT,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub cr_residuals: BTreeMap<String, f64>,
    pub hermiticity_residuals: BTreeMap<String, f64>,
    pub casimir1: CMatrix,
    pub casimir1_scalar: Option<Complex64>,
    pub casimir2_scalar: Option<Complex64>,
    /// Set when the backbone is a single canonical chain.
    pub canonical: Option<CanonicalSpec>,
    pub p: Option<HalfInt>,
    pub q: Option<HalfInt>,
    pub duplicates_present: bool,
    pub options: VerifyOptions,
}

impl VerificationReport {
    pub fn failing_relations(&self) -> Vec<&str> {
        self.cr_residuals
            .iter()
            .filter(|(_, &r)| !(r < self.options.cr_tolerance))
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn failing_hermiticity(&self) -> Vec<&str> {
        self.hermiticity_residuals
            .iter()
            .filter(|(_, &r)| !(r < self.options.hermiticity_tolerance))
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn max_cr_residual(&self) -> f64 {
        self.cr_residuals.values().copied().fold(0.0, f64::max)
    }

    pub fn max_hermiticity_residual(&self) -> f64 {
        self.hermiticity_residuals.values().copied().fold(0.0, f64::max)
    }

    /// All relations and Hermiticity conditions hold within tolerance.
    pub fn passed(&self) -> bool {
        self.failing_relations().is_empty() && self.failing_hermiticity().is_empty()
    }
}

pub fn verify(g: &GeneratorSet, options: VerifyOptions) -> VerificationReport {
    let casimir1 = casimir1_matrix(g);
    let casimir1_scalar = scalar_check(&casimir1, options.scalar_tolerance);
    let casimir2_scalar = scalar_check(&casimir2_matrix(g, options.casimir2), options.scalar_tolerance);
    let all: Vec<usize> = (0..g.backbone().len()).collect();
    let canonical = recognize_chain(g.backbone(), &all);
    let inv = canonical.map(casimir_invariants_closed_form);
    VerificationReport {
        cr_residuals: check_all_crs(g),
        hermiticity_residuals: check_hermiticity(g),
        casimir1,
        casimir1_scalar,
        casimir2_scalar,
        canonical,
        p: inv.map(|c| c.p),
        q: inv.map(|c| c.q),
        duplicates_present: g.backbone().has_duplicates(),
        options,
    }
}
