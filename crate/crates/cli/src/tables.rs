//! Tab-separated reproductions of the backbone, coupling and Casimir tables.
//! Every value is computed from the library.

use std::fmt::Write as _;

use desitter_core::numeric::Rat;
use desitter_core::representation::{
    canonical_backbone, canonical_dimension, canonical_t_product, first_irreps, irrep_by_number,
};
use desitter_core::verifier::{
    casimir1_matrix, casimir2_matrix, casimir_invariants_closed_form, scalar_check, Casimir2Reading,
};
use desitter_core::{canonical_generators, Algebra, Family};

pub const REPS: usize = 10;

/// `(1/2,0) ⊕ (0,1/2)`
pub fn backbone_string(spec: desitter_core::CanonicalSpec) -> String {
    canonical_backbone(spec)
        .blocks()
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

pub fn backbones() -> String {
    let mut out = String::from("Rep\tDim\tBackbone\n");
    for (k, s) in first_irreps(REPS).into_iter().enumerate() {
        writeln!(out, "{}\t{}\t{}", k + 1, canonical_dimension(s), backbone_string(s)).unwrap();
    }
    out
}

fn perfect_square(n: i128) -> Option<i128> {
    Rat::from_int(n).exact_sqrt().filter(|r| r.den() == 1).map(|r| r.num())
}

/// Positive square root of a positive rational, written exactly:
/// `3/2`, `1/sqrt(8)`, `sqrt(5)/2`, `sqrt(5)` or `sqrt(7/12)`.
pub fn format_sqrt(r: Rat) -> String {
    let (n, d) = (r.num(), r.den());
    match (perfect_square(n), perfect_square(d)) {
        (Some(a), Some(1)) => a.to_string(),
        (Some(a), Some(b)) => format!("{a}/{b}"),
        (Some(a), None) => format!("{a}/sqrt({d})"),
        (None, Some(1)) => format!("sqrt({n})"),
        (None, Some(b)) => format!("sqrt({n})/{b}"),
        (None, None) => format!("sqrt({n}/{d})"),
    }
}

pub fn couplings() -> String {
    let max_edges = first_irreps(REPS).iter().map(|s| s.blocks() - 1).max().unwrap_or(0);
    let mut out = String::from("Rep");
    for n in 1..=max_edges {
        write!(out, "\tt{}{}", n, n + 1).unwrap();
    }
    out.push('\n');
    for k in (1..=REPS).filter(|k| k % 2 == 0) {
        let s = irrep_by_number(k).expect("k >= 1");
        debug_assert_eq!(s.family(), Family::TypeA);
        write!(out, "{k}").unwrap();
        for n in 1..=max_edges {
            let cell = canonical_t_product(s, n).map(format_sqrt).unwrap_or_else(|_| "-".into());
            write!(out, "\t{cell}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn decimal(r: Rat) -> String {
    // p and q are half-integers, so one decimal place is exact
    let v = r.to_f64();
    if r.den() == 1 {
        format!("{v}")
    } else {
        format!("{v:.1}")
    }
}

pub fn casimirs() -> String {
    let mut out = String::from("Ref\tp\tq\t-Casimir1\t-Casimir2\t-C1 (matrix)\t-C2 (matrix)\n");
    for (title, parity) in [("Type B", 1), ("Type A", 0)] {
        writeln!(out, "{title}").unwrap();
        for k in (1..=REPS).filter(|k| k % 2 == parity) {
            let s = irrep_by_number(k).expect("k >= 1");
            let inv = casimir_invariants_closed_form(s);
            let g = canonical_generators(s, Algebra::DeSitter);
            let show = |m| match scalar_check(&m, 1e-9) {
                Some(l) => format!("{:.6}", -l.re + 0.0),
                None => "not scalar".into(),
            };
            writeln!(
                out,
                "{k}\t{}\t{}\t{}\t{}\t{}\t{}",
                decimal(inv.p.to_rat()),
                decimal(inv.q.to_rat()),
                inv.neg_c1,
                inv.neg_c2,
                show(casimir1_matrix(&g)),
                show(casimir2_matrix(&g, Casimir2Reading::DEFAULT)),
            )
            .unwrap();
        }
    }
    out
}

/// All three tables, separated by blank lines.
pub fn all_tables() -> String {
    format!(
        "Backbones of the first ten irreps\n{}\nCoupling coefficients t(n,n+1) of the type A irreps (type B: all 1/2)\n{}\nCasimir invariants (q = 0 may equally be q = 1)\n{}",
        backbones(),
        couplings(),
        casimirs()
    )
}
