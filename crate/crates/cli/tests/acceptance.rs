//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use desitter_cli::documents::{read_json, BackboneDocument};
use desitter_core::coupling::{compatibility, path_is_monotonic, t_sign_relation, u_blocks, PairCase};
use desitter_core::hla::hla_generators;
use desitter_core::numeric::commutator;
use desitter_core::representation::{
    assemble, canonical_t, first_irreps, recognize_chain, Couplings, Generator,
};
use desitter_core::solver::{solve_and_verify, ComponentKind, Verdict, Witness};
use desitter_core::verifier::{
    casimir1_direct, casimir1_matrix, casimir2_matrix, check_all_crs, check_hermiticity,
    commutator_rhs, disambiguate_casimir2_reference, scalar_check,
};
use desitter_core::{
    canonical_backbone, canonical_generators, Algebra, BackboneGraph, BlockLabel, CMatrix,
    CanonicalSpec, Family, GeneratorSet,
};
use num_complex::Complex64;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

const ALGEBRAS: [Algebra; 2] = [Algebra::DeSitter, Algebra::AntiDeSitter];

fn max_of<'a>(m: impl IntoIterator<Item = &'a f64>) -> f64 {
    m.into_iter().copied().fold(0.0, f64::max)
}

fn ten() -> Vec<CanonicalSpec> {
    first_irreps(10)
}

fn backbones_and_dimensions() -> Outcome {
    let want: [(usize, &str); 10] = [
        (4, "(1/2,0) (0,1/2)"),
        (5, "(1/2,1/2) (0,0)"),
        (10, "(1,0) (1/2,1/2) (0,1)"),
        (14, "(1,1) (1/2,1/2) (0,0)"),
        (20, "(3/2,0) (1,1/2) (1/2,1) (0,3/2)"),
        (30, "(3/2,3/2) (1,1) (1/2,1/2) (0,0)"),
        (35, "(2,0) (3/2,1/2) (1,1) (1/2,3/2) (0,2)"),
        (55, "(2,2) (3/2,3/2) (1,1) (1/2,1/2) (0,0)"),
        (56, "(5/2,0) (2,1/2) (3/2,1) (1,3/2) (1/2,2) (0,5/2)"),
        (91, "(5/2,5/2) (2,2) (3/2,3/2) (1,1) (1/2,1/2) (0,0)"),
    ];
    let mut bad = Vec::new();
    for (k, (s, (dim, labels))) in ten().into_iter().zip(want).enumerate() {
        let g = canonical_backbone(s);
        let got: Vec<String> = g.blocks().iter().map(|b| b.to_string()).collect();
        let block_sum: usize = g.blocks().iter().map(|b| b.dim()).sum();
        if g.dimension() != dim || block_sum != dim || got.join(" ") != labels {
            bad.push(format!("rep {}: {} dim {}", k + 1, got.join(" "), g.dimension()));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "10 reps match".into() } else { bad.join("; ") })
}

fn coupling_coefficients() -> Outcome {
    let r = f64::sqrt;
    let type_a: [(usize, Vec<f64>); 5] = [
        (2, vec![1.0 / r(2.0)]),
        (4, vec![0.5, r(5.0) / 2.0]),
        (6, vec![1.0 / r(6.0), r(7.0 / 12.0), 1.5]),
        (8, vec![1.0 / r(8.0), r(3.0 / 8.0), 1.0, r(3.5)]),
        (10, vec![1.0 / r(10.0), r(11.0 / 40.0), r(5.0 / 8.0), r(1.5), r(5.0)]),
    ];
    let specs = ten();
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for (k, ts) in &type_a {
        let s = specs[k - 1];
        for (n, &want) in ts.iter().enumerate() {
            let (pq, qp) = canonical_t(s, n + 1).unwrap();
            let err = (pq - want).abs().max((qp + want).abs());
            worst = worst.max(err);
            if err >= 1e-12 {
                bad.push(format!("rep {k} t{}{} = {pq}, want {want}", n + 1, n + 2));
            }
        }
    }
    for k in [1, 3, 5, 7, 9] {
        let s = specs[k - 1];
        for n in 1..s.blocks() {
            if canonical_t(s, n).unwrap() != (0.5, 0.5) {
                bad.push(format!("rep {k} edge {n} is not exactly 1/2"));
            }
        }
    }
    let ok = bad.is_empty();
    let detail = if ok {
        format!("type A max error {worst:.1e}, type B exactly 1/2")
    } else {
        bad.join("; ")
    };
    (ok, detail)
}

fn with_algebra(g: &GeneratorSet, algebra: Algebra) -> GeneratorSet {
    let m = Generator::ALL.map(|x| g.get(x).clone());
    GeneratorSet::from_parts(g.backbone().clone(), g.couplings().clone(), algebra, m).unwrap()
}

fn commutation_relations() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for (k, s) in ten().into_iter().enumerate() {
        for alg in ALGEBRAS {
            let g = canonical_generators(s, alg);
            let res = check_all_crs(&g);
            let m = max_of(res.values());
            worst = worst.max(m);
            if m >= 1e-10 {
                bad.push(format!("rep {} {alg}: {m:.2e}", k + 1));
            }
        }
        // the AdS matrices must violate the dS form of [V,V]
        let ads = canonical_generators(s, Algebra::AntiDeSitter);
        let as_ds = check_all_crs(&with_algebra(&ads, Algebra::DeSitter));
        if as_ds["[Vx,Vy]"] < 0.1 {
            bad.push(format!("rep {}: AdS matrices also satisfy the dS [Vx,Vy]", k + 1));
        }
    }
    let ok = bad.is_empty();
    (ok, if ok { format!("20 sets, max residual {worst:.1e}") } else { bad.join("; ") })
}

fn hermiticity() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for (k, s) in ten().into_iter().enumerate() {
        for alg in ALGEBRAS {
            let m = max_of(check_hermiticity(&canonical_generators(s, alg)).values());
            worst = worst.max(m);
            if m >= 1e-11 {
                bad.push(format!("rep {} {alg}: {m:.2e}", k + 1));
            }
        }
    }
    let ok = bad.is_empty();
    (ok, if ok { format!("20 sets, max residual {worst:.1e}") } else { bad.join("; ") })
}

fn casimir_one() -> Outcome {
    let want = [2.5, 4.0, 6.0, 10.0, 10.5, 18.0, 16.0, 28.0, 22.5, 40.0];
    let mut bad = Vec::new();
    let mut forms: f64 = 0.0;
    for (k, s) in ten().into_iter().enumerate() {
        let g = canonical_generators(s, Algebra::DeSitter);
        let c = casimir1_matrix(&g);
        match scalar_check(&c, 1e-9) {
            Some(l) if (l + want[k]).norm() < 1e-9 => {}
            other => bad.push(format!("rep {}: {other:?}, want {}", k + 1, -want[k])),
        }
        let d = (&c - &casimir1_direct(&g)).max_abs();
        forms = forms.max(d);
        if d >= 1e-10 {
            bad.push(format!("rep {}: two forms differ by {d:.2e}", k + 1));
        }
    }
    let ok = bad.is_empty();
    (ok, if ok { format!("scalar on all ten, forms agree to {forms:.1e}") } else { bad.join("; ") })
}

fn casimir_two() -> Outcome {
    let want = [45.0 / 16.0, 0.0, 12.0, 0.0, 525.0 / 16.0, 0.0, 72.0, 0.0, 2205.0 / 16.0, 0.0];
    let sel = disambiguate_casimir2_reference(1e-8);
    let Some(reading) = sel.selected else {
        return (false, format!("{} matching readings, none selected", sel.matching.len()));
    };
    let mut bad = Vec::new();
    for (k, s) in ten().into_iter().enumerate() {
        let c = casimir2_matrix(&canonical_generators(s, Algebra::DeSitter), reading);
        match scalar_check(&c, 1e-8) {
            Some(l) if (l + want[k]).norm() < 1e-8 => {}
            other => bad.push(format!("rep {}: {other:?}, want {}", k + 1, -want[k])),
        }
    }
    let ok = bad.is_empty();
    let detail = if ok {
        format!("{} equivalent readings match; selected {reading:?}", sel.matching.len())
    } else {
        bad.join("; ")
    };
    (ok, detail)
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &(p, q) in edges {
            for (a, b) in [(p, q), (q, p)] {
                if a == i && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn describe(g: &BackboneGraph) -> String {
    let blocks: Vec<String> = g.blocks().iter().map(|b| b.to_string()).collect();
    let edges: Vec<String> = g.edges().iter().map(|(p, q)| format!("{p}-{q}")).collect();
    format!("[{}] edges {}", blocks.join(" "), edges.join(","))
}

fn classification() -> Outcome {
    let start = Instant::now();
    let labels: Vec<BlockLabel> =
        (0..=4).flat_map(|a| (0..=4).map(move |b| BlockLabel::from_twice(a, b))).collect();
    let mut sets: Vec<Vec<BlockLabel>> = Vec::new();
    let n = labels.len();
    for i in 0..n {
        sets.push(vec![labels[i]]);
        for j in i + 1..n {
            sets.push(vec![labels[i], labels[j]]);
            for k in j + 1..n {
                sets.push(vec![labels[i], labels[j], labels[k]]);
                for l in k + 1..n {
                    sets.push(vec![labels[i], labels[j], labels[k], labels[l]]);
                }
            }
        }
    }
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    let mut graphs = 0;
    let mut unexpected_valid = Vec::new();
    let mut missed_canonical = Vec::new();
    for blocks in sets {
        let m = blocks.len();
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|p| (p + 1..m).map(move |q| (p, q)))
            .filter(|&(p, q)| compatibility(blocks[p], blocks[q]).is_some())
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> =
                (0..pairs.len()).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
            if !connected(m, &edges) {
                continue;
            }
            let g = BackboneGraph::new(blocks.clone(), edges).unwrap();
            graphs += 1;
            let out = solve_and_verify(&g);
            let key = match (&out.verdict, &out.witness) {
                (Verdict::Valid, _) => "valid".to_string(),
                (v, Some(w)) => format!("{v}: {}", format!("{w:?}").split([' ', '(', '{']).next().unwrap()),
                (v, None) => v.to_string(),
            };
            *tally.entry(key).or_default() += 1;
            let all: Vec<usize> = (0..m).collect();
            let canonical = recognize_chain(&g, &all).is_some();
            match (out.verdict == Verdict::Valid, canonical) {
                (true, false) => unexpected_valid.push(format!("{} (dim {})", describe(&g), g.dimension())),
                (false, true) => missed_canonical.push(describe(&g)),
                _ => {}
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = unexpected_valid.is_empty() && missed_canonical.is_empty() && secs < 60.0;
    let tally: Vec<String> = tally.iter().map(|(k, v)| format!("{k} {v}")).collect();
    let mut detail = format!("{graphs} graphs in {secs:.2}s; {}", tally.join(", "));
    if !unexpected_valid.is_empty() {
        detail += &format!("; valid but not a canonical chain: {}", unexpected_valid.join("; "));
    }
    if !missed_canonical.is_empty() {
        detail += &format!("; canonical chain not valid: {}", missed_canonical.join("; "));
    }
    (ok, detail)
}

fn spec(f: Family, n: usize) -> ComponentKind {
    ComponentKind::Canonical(CanonicalSpec::new(f, n).unwrap())
}

fn fixtures() -> Outcome {
    use Family::{TypeA, TypeB};
    let valid: [(&str, Vec<ComponentKind>); 4] = [
        ("sum_b5_a2.json", vec![spec(TypeB, 5), spec(TypeA, 2)]),
        ("sum_b4_b6.json", vec![spec(TypeB, 4), spec(TypeB, 6)]),
        ("crossing_with_duplicate.json", vec![spec(TypeB, 5), spec(TypeA, 3)]),
        ("three_irrep_sum.json", vec![spec(TypeB, 3), spec(TypeB, 5), spec(TypeA, 3)]),
    ];
    let invalid = [
        "dangling_half_half.json",
        "crossing_no_duplicate.json",
        "side_branch.json",
        "half_duplicated_crossing.json",
        "one_block.json",
    ];
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let load = |name: &str| {
        let doc: BackboneDocument = read_json(&dir.join(name)).unwrap();
        let g = doc.to_graph().unwrap();
        (solve_and_verify(&g), g)
    };
    let sorted = |v: Vec<ComponentKind>| {
        let mut v: Vec<String> = v.into_iter().map(|k| format!("{k:?}")).collect();
        v.sort();
        v
    };
    let mut bad = Vec::new();
    for (name, kinds) in valid {
        let (out, _) = load(name);
        let got = sorted(out.components.iter().map(|c| c.kind).collect());
        if out.verdict != Verdict::Valid || got != sorted(kinds) {
            bad.push(format!("{name}: {} {got:?}", out.verdict));
        }
    }
    for name in invalid {
        let (out, _) = load(name);
        if out.verdict != Verdict::Invalid || out.witness.is_none() {
            bad.push(format!("{name}: {} without witness", out.verdict));
        }
        if name == "one_block.json" && out.witness != Some(Witness::OneBlock) {
            bad.push(format!("{name}: witness {:?}", out.witness));
        }
    }
    let ok = bad.is_empty();
    (ok, if ok { "4 valid sums and 5 invalid graphs as expected".into() } else { bad.join("; ") })
}

fn monotonic_paths() -> Outcome {
    // per case pair: does any instance leave a nonzero [Vx,Vy] block?
    let mut nonzero: BTreeMap<(String, String), bool> = BTreeMap::new();
    let mut bad = Vec::new();
    let mut degenerate = Vec::new();
    let mut instances = 0;
    for ta in 0..=3i64 {
        for tb in 0..=3i64 {
            let k = BlockLabel::from_twice(ta, tb);
            for c1 in PairCase::ALL {
                for c2 in PairCase::ALL {
                    let i = (ta + c1.s_a.value(), tb + c1.s_b.value());
                    let j = (ta - c2.s_a.value(), tb - c2.s_b.value());
                    if [i.0, i.1, j.0, j.1].iter().any(|&x| !(0..=3).contains(&x)) {
                        continue;
                    }
                    let (bi, bj) = (BlockLabel::from_twice(i.0, i.1), BlockLabel::from_twice(j.0, j.1));
                    let g = BackboneGraph::new(vec![bi, k, bj], [(0, 1), (1, 2)]).unwrap();
                    let s1 = f64::from(t_sign_relation(c1));
                    let s2 = f64::from(t_sign_relation(c2));
                    let t: Couplings = [((0, 1), (1.0, s1)), ((1, 2), (1.0, s2))].into_iter().collect();
                    let gs = assemble(&g, &t, Algebra::DeSitter).unwrap();
                    let m = commutator(gs.get(Generator::Vx), gs.get(Generator::Vy)).unwrap();
                    let off = g.offsets();
                    let size = m.block(off[0], off[2], bi.dim(), bj.dim()).max_abs();
                    instances += 1;
                    let vanishes = size < 1e-11;
                    let mono = path_is_monotonic(c1, c2);
                    if mono && !vanishes {
                        bad.push(format!("{bi}-{k}-{bj} ({c1},{c2}) monotonic but block is {size:.2e}"));
                    }
                    if !mono && vanishes {
                        degenerate.push(format!("{bi}-{k}-{bj} ({c1},{c2})"));
                    }
                    *nonzero.entry((c1.to_string(), c2.to_string())).or_default() |= !vanishes;
                }
            }
        }
    }
    for c1 in PairCase::ALL {
        for c2 in PairCase::ALL {
            let nz = nonzero.get(&(c1.to_string(), c2.to_string())).copied();
            match nz {
                None => bad.push(format!("({c1},{c2}) never sampled")),
                Some(nz) if nz == path_is_monotonic(c1, c2) => {
                    bad.push(format!("({c1},{c2}) zero pattern disagrees"))
                }
                _ => {}
            }
        }
    }
    let ok = bad.is_empty();
    let mut detail = format!("{instances} paths; zero exactly on the 4 monotonic case pairs");
    if !degenerate.is_empty() {
        detail += &format!(
            "; non-monotonic path whose block is a single state with a = b = 0: {}",
            degenerate.join(", ")
        );
    }
    (ok, if ok { detail } else { bad.join("; ") })
}

const V_GENERATORS: [Generator; 4] = [Generator::Vt, Generator::Vx, Generator::Vy, Generator::Vz];

/// Dimension of the space of `dim P x dim Q` blocks `(Vt,Vx,Vy,Vz)` obeying
/// every `[J,V]` and `[K,V]` relation between the two blocks.
fn transition_nullity(p: BlockLabel, q: BlockLabel) -> (usize, Vec<Vec<Complex64>>) {
    let (hp, hq) = (hla_generators(p), hla_generators(q));
    let (jp, kp, jq, kq) = (hp.j_cartesian(), hp.k_cartesian(), hq.j_cartesian(), hq.k_cartesian());
    let lorentz = [
        (Generator::Jx, &jp[0], &jq[0]),
        (Generator::Jy, &jp[1], &jq[1]),
        (Generator::Jz, &jp[2], &jq[2]),
        (Generator::Kx, &kp[0], &kq[0]),
        (Generator::Ky, &kp[1], &kq[1]),
        (Generator::Kz, &kp[2], &kq[2]),
    ];
    let (np, nq) = (p.dim(), q.dim());
    let apply = |v: &[CMatrix; 4]| -> Vec<Complex64> {
        let mut out = Vec::new();
        for &(x, xp, xq) in &lorentz {
            for (iy, &y) in V_GENERATORS.iter().enumerate() {
                let mut r = &(xp * &v[iy]) - &(&v[iy] * xq);
                for (c, g) in commutator_rhs(x, y, Algebra::DeSitter) {
                    let ig = V_GENERATORS.iter().position(|&h| h == g).expect("V on the right");
                    r = &r - &v[ig].scale(c);
                }
                out.extend_from_slice(r.as_slice());
            }
        }
        out
    };
    let unknowns = 4 * np * nq;
    let columns: Vec<Vec<Complex64>> = (0..unknowns)
        .map(|u| {
            let mut v: [CMatrix; 4] = std::array::from_fn(|_| CMatrix::zeros(np, nq));
            let (mu, rest) = (u / (np * nq), u % (np * nq));
            v[mu][(rest / nq, rest % nq)] = Complex64::new(1.0, 0.0);
            apply(&v)
        })
        .collect();
    // G = L^H L, accumulated row by row since each row of L is sparse
    let mut rows: BTreeMap<usize, Vec<(usize, Complex64)>> = BTreeMap::new();
    for (u, col) in columns.iter().enumerate() {
        for (r, z) in col.iter().enumerate().filter(|(_, z)| z.norm() > 0.0) {
            rows.entry(r).or_default().push((u, *z));
        }
    }
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); unknowns]; unknowns];
    for entries in rows.values() {
        for &(a, x) in entries {
            for &(b, y) in entries {
                gram[a][b] += x.conj() * y;
            }
        }
    }
    let scale = gram.iter().enumerate().map(|(i, r)| r[i].norm()).fold(0.0, f64::max);
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(piv) = (rank..unknowns).max_by(|&a, &b| gram[a][col].norm().total_cmp(&gram[b][col].norm()))
        else {
            break;
        };
        if gram[piv][col].norm() <= 1e-9 * scale {
            continue;
        }
        gram.swap(rank, piv);
        let pivot_row = gram[rank].clone();
        for (r, row) in gram.iter_mut().enumerate() {
            let f = row[col] / pivot_row[col];
            if r != rank && f.norm() != 0.0 {
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= f * p;
                }
            }
        }
        rank += 1;
    }
    let residual_of = |v: &[CMatrix; 4]| apply(v);
    let probe = match u_blocks(p, q) {
        Ok(u) => vec![residual_of(&u.cartesian_pq())],
        Err(_) => vec![],
    };
    (unknowns - rank, probe)
}

fn compatibility_rule() -> Outcome {
    let mut bad = Vec::new();
    let mut probes = 0;
    for da in -3..=3i64 {
        for db in -3..=3i64 {
            let expect = da.abs() == 1 && db.abs() == 1;
            for shift in [0, 1] {
                let q = BlockLabel::from_twice((-da).max(0) + shift, (-db).max(0) + shift);
                let p = BlockLabel::from_twice(q.a().twice() + da, q.b().twice() + db);
                let case = compatibility(p, q);
                if case.is_some() != expect || u_blocks(p, q).is_ok() != expect {
                    bad.push(format!("{p} vs {q}: compatibility {case:?}"));
                }
                let (nullity, residuals) = transition_nullity(p, q);
                probes += 1;
                if nullity != usize::from(expect) {
                    bad.push(format!("{p} from {q}: {nullity} independent V blocks"));
                }
                for r in residuals {
                    let m = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
                    if m >= 1e-12 {
                        bad.push(format!("{p} from {q}: coupling block violates the relations by {m:.2e}"));
                    }
                }
            }
        }
    }
    let ok = bad.is_empty();
    let detail = format!("{probes} label pairs; nonzero V only for |dA| = |dB| = 1/2, then unique up to scale");
    (ok, if ok { detail } else { bad.join("; ") })
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("backbones and dimensions of the first ten irreps", backbones_and_dimensions),
        ("type A coupling coefficients, type B exactly 1/2", coupling_coefficients),
        ("commutation relations, de Sitter and anti-de Sitter", commutation_relations),
        ("hermiticity pattern", hermiticity),
        ("first Casimir", casimir_one),
        ("second Casimir", casimir_two),
        ("classification of small backbones", classification),
        ("validator fixtures", fixtures),
        ("monotonic path property", monotonic_paths),
        ("compatibility rule", compatibility_rule),
    ];
    let mut failed = 0;
    for (n, (title, run)) in criteria.into_iter().enumerate() {
        let (ok, detail) = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        });
        if !ok {
            failed += 1;
        }
        println!("criterion {:>2}: {}  {title}: {detail}", n + 1, if ok { "PASS" } else { "FAIL" });
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
