//! Human and JSON renderings of verification reports and solver outcomes.

use std::fmt::Write as _;

use desitter_core::solver::{label_multiplicities, ComponentKind, SolverOutcome};
use desitter_core::verifier::{casimir_invariants_closed_form, VerificationReport};
use desitter_core::BackboneGraph;
use num_complex::Complex64;
use serde_json::{json, Value};

fn complex(z: Option<Complex64>) -> Value {
    match z {
        Some(z) => json!([z.re, z.im]),
        None => Value::Null,
    }
}

fn show_complex(z: Option<Complex64>) -> String {
    match z {
        Some(z) if z.im.abs() < 1e-12 => format!("{:.9}", z.re + 0.0),
        Some(z) => format!("{:.9}{:+.9}i", z.re, z.im),
        None => "not scalar".into(),
    }
}

pub fn verification_json(r: &VerificationReport) -> Value {
    let closed = r.canonical.map(casimir_invariants_closed_form);
    json!({
        "passed": r.passed(),
        "failing_relations": r.failing_relations(),
        "failing_hermiticity": r.failing_hermiticity(),
        "cr_residuals": r.cr_residuals,
        "hermiticity_residuals": r.hermiticity_residuals,
        "casimir1_scalar": complex(r.casimir1_scalar),
        "casimir2_scalar": complex(r.casimir2_scalar),
        "canonical": r.canonical.map(|s| s.to_string()),
        "p": r.p.map(|p| p.to_string()),
        "q": r.q.map(|q| q.to_string()),
        "closed_form_neg_c1": closed.map(|c| c.neg_c1.to_string()),
        "closed_form_neg_c2": closed.map(|c| c.neg_c2.to_string()),
        "duplicates_present": r.duplicates_present,
        "tolerances": {
            "relations": r.options.cr_tolerance,
            "hermiticity": r.options.hermiticity_tolerance,
            "scalar": r.options.scalar_tolerance,
        },
    })
}

pub fn verification_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    writeln!(out, "commutation relations (tolerance {:e})", r.options.cr_tolerance).unwrap();
    for (name, res) in &r.cr_residuals {
        writeln!(out, "  {name:<8} {res:10.3e}  {}", mark(*res < r.options.cr_tolerance)).unwrap();
    }
    writeln!(out, "hermiticity (tolerance {:e})", r.options.hermiticity_tolerance).unwrap();
    for (name, res) in &r.hermiticity_residuals {
        writeln!(out, "  {name:<8} {res:10.3e}  {}", mark(*res < r.options.hermiticity_tolerance)).unwrap();
    }
    // the Casimirs are negative on these irreps; print the positive values
    let neg = |z: Option<Complex64>| z.map(|z| -z);
    writeln!(out, "-C1 = {}", show_complex(neg(r.casimir1_scalar))).unwrap();
    writeln!(out, "-C2 = {}", show_complex(neg(r.casimir2_scalar))).unwrap();
    if let Some(s) = r.canonical {
        let c = casimir_invariants_closed_form(s);
        writeln!(out, "canonical {s}: p = {}, q = {}, closed form -C1 = {}, -C2 = {}", c.p, c.q, c.neg_c1, c.neg_c2)
            .unwrap();
    }
    if r.duplicates_present {
        writeln!(out, "backbone contains duplicate blocks").unwrap();
    }
    writeln!(out, "{}", if r.passed() { "PASSED" } else { "FAILED" }).unwrap();
    out
}

fn component_name(kind: ComponentKind) -> String {
    match kind {
        ComponentKind::Canonical(s) => s.to_string(),
        ComponentKind::NonCanonical => "non-canonical".into(),
    }
}

pub fn outcome_json(g: &BackboneGraph, o: &SolverOutcome) -> Value {
    let multiplicities: Vec<Value> = label_multiplicities(g, &o.components)
        .into_iter()
        .map(|(l, n)| json!({"block": l.to_string(), "components": n}))
        .collect();
    json!({
        "verdict": o.verdict.to_string(),
        "witness": o.witness.as_ref().map(|w| w.to_string()),
        "dof": o.dof,
        "products": o.products.as_ref().map(|x| x
            .iter()
            .map(|(&(p, q), v)| json!({"edge": [p, q], "x": v.to_string()}))
            .collect::<Vec<_>>()),
        "t_values": o.t_values.as_ref().map(|t| t
            .iter()
            .map(|(&(p, q), &(a, b))| json!({"edge": [p, q], "t_pq": a, "t_qp": b}))
            .collect::<Vec<_>>()),
        "components": o.components.iter().map(|c| json!({
            "kind": component_name(c.kind),
            "blocks": c.blocks,
        })).collect::<Vec<_>>(),
        "multiplicities": multiplicities,
    })
}

pub fn outcome_text(g: &BackboneGraph, o: &SolverOutcome) -> String {
    let mut out = String::new();
    writeln!(out, "verdict: {}", o.verdict).unwrap();
    if let Some(w) = &o.witness {
        writeln!(out, "witness: {w}").unwrap();
    }
    if let Some(d) = o.dof {
        writeln!(out, "free parameters: {d}").unwrap();
    }
    if let Some(t) = &o.t_values {
        writeln!(out, "couplings:").unwrap();
        let x = o.products.as_ref();
        for (&(p, q), &(a, b)) in t {
            let prod = x.and_then(|x| x.get(&(p, q))).map(|v| v.to_string()).unwrap_or_default();
            writeln!(
                out,
                "  {p}-{q}  {} - {}  t_pq = {a:.12}  t_qp = {b:.12}  product = {prod}",
                g.blocks()[p],
                g.blocks()[q]
            )
            .unwrap();
        }
    }
    writeln!(out, "components: {}", o.components.len()).unwrap();
    for c in &o.components {
        let labels: Vec<String> = c.blocks.iter().map(|&i| g.blocks()[i].to_string()).collect();
        writeln!(out, "  {}: {}", component_name(c.kind), labels.join(" ⊕ ")).unwrap();
    }
    out
}
