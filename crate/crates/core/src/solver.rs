//! Backbone validation: decide whether a representation exists on a graph,
//! solve for its couplings and split it into canonical irreps.
//!
//! The pipeline runs structural checks, rejects unique non-monotonic
//! three-block paths, solves the exact linear system for the products
//! `x_e = t_PQ t_QP`, applies the Hermiticity sign constraints and finally
//! assembles the generators and checks every relation numerically.

use core::fmt;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coupling::{path_is_monotonic, t_sign_relation, z_linear};
use crate::hla::BlockLabel;
use crate::numeric::{solve_rational_linear, LinearOutcome, Rat, RatMatrix};
use crate::representation::{
    assemble, recognize_chain, Algebra, BackboneGraph, CanonicalSpec, Couplings, Edge,
    GeneratorSet,
};
use crate::verifier::{check_all_crs, check_hermiticity};

/// Residual bound for the post-assembly check.
pub const NUMERIC_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    A,
    B,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::A => "A",
            Axis::B => "B",
        })
    }
}

/// Why a backbone carries no representation.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    EmptyGraph,
    OneBlock,
    IncompatibleEdge(Edge),
    IsolatedBlock(usize),
    /// The smallest label along `axis` is not zero.
    Boundary { axis: Axis, min: crate::numeric::HalfInt },
    /// Every neighbour of `block` lies above it along `axis`, yet its label
    /// along `axis` is not zero.
    DanglingEnd { block: usize, axis: Axis },
    /// `I-K-J` is the only path joining `I` and `J` and is not monotonic.
    NonMonotonicPath { i: usize, k: usize, j: usize },
    Inconsistent,
    /// `x_e` has the wrong sign (or vanishes) for its edge case.
    SignConstraint { edge: Edge, x: Rat },
    NumericFailure { relation: String, residual: f64 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::EmptyGraph => write!(f, "empty backbone"),
            Witness::OneBlock => write!(f, "one-block backbone has no representation"),
            Witness::IncompatibleEdge((p, q)) => {
                write!(f, "edge {p}-{q} joins incompatible blocks")
            }
            Witness::IsolatedBlock(i) => write!(f, "block {i} has no neighbours"),
            Witness::Boundary { axis, min } => write!(f, "minimum {axis} is {min}, not 0"),
            Witness::DanglingEnd { block, axis } => write!(
                f,
                "dangling end: block {block} only links to larger {axis} but has {axis} != 0"
            ),
            Witness::NonMonotonicPath { i, k, j } => {
                write!(f, "unique non-monotonic path {i}-{k}-{j}")
            }
            Witness::Inconsistent => write!(f, "linear system for t products is inconsistent"),
            Witness::SignConstraint { edge: (p, q), x } => {
                write!(f, "t product on edge {p}-{q} is {x}, wrong sign for its case")
            }
            Witness::NumericFailure { relation, residual } => {
                write!(f, "relation {relation} fails with residual {residual:.3e}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid,
    Underdetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Valid => "valid",
            Verdict::Invalid => "invalid",
            Verdict::Underdetermined => "underdetermined",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Canonical(CanonicalSpec),
    NonCanonical,
}

/// A connected component; `blocks` are indices into the input graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub blocks: Vec<usize>,
    pub kind: ComponentKind,
}

#[derive(Clone, Debug)]
pub struct SolverOutcome {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Exact products per edge, when the linear system has a unique solution.
    pub products: Option<BTreeMap<Edge, Rat>>,
    pub t_values: Option<Couplings>,
    pub components: Vec<Component>,
    /// Degrees of freedom left by an underdetermined system.
    pub dof: Option<usize>,
    pub generators: Option<GeneratorSet>,
}

/// Exact linear system for the products on each edge.
///
/// Rows `2I` and `2I+1` are the `b_I` and `a_I` coefficient equations of
/// block `I`; a row whose label is zero is identically `0 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct OnBdSystem {
    pub edges: Vec<Edge>,
    pub matrix: RatMatrix,
    pub rhs: Vec<Rat>,
    /// Required sign of each unknown: `-1` or `+1`.
    pub signs: Vec<i8>,
}

/// First failing structural condition, if any.
pub fn structural_checks(g: &BackboneGraph) -> Option<Witness> {
    match g.len() {
        0 => return Some(Witness::EmptyGraph),
        1 => return Some(Witness::OneBlock),
        _ => {}
    }
    if let Some(&e) = g.edges().iter().find(|&&(p, q)| g.case(p, q).is_none()) {
        return Some(Witness::IncompatibleEdge(e));
    }
    let blocks = g.blocks();
    if let Some(i) = (0..g.len()).find(|&i| g.neighbours(i).next().is_none()) {
        return Some(Witness::IsolatedBlock(i));
    }
    let min_a = blocks.iter().map(|b| b.a()).min().expect("non-empty");
    if min_a != crate::numeric::HalfInt::ZERO {
        return Some(Witness::Boundary { axis: Axis::A, min: min_a });
    }
    let min_b = blocks.iter().map(|b| b.b()).min().expect("non-empty");
    if min_b != crate::numeric::HalfInt::ZERO {
        return Some(Witness::Boundary { axis: Axis::B, min: min_b });
    }
    for i in 0..g.len() {
        let me = blocks[i];
        if me.a() != crate::numeric::HalfInt::ZERO && g.neighbours(i).all(|j| blocks[j].a() > me.a())
        {
            return Some(Witness::DanglingEnd { block: i, axis: Axis::A });
        }
        if me.b() != crate::numeric::HalfInt::ZERO && g.neighbours(i).all(|j| blocks[j].b() > me.b())
        {
            return Some(Witness::DanglingEnd { block: i, axis: Axis::B });
        }
    }
    None
}

/// Every `(I, K, J)` with `I < J` such that `K` is the only common neighbour
/// of `I` and `J` and the path changes case at `K`.
pub fn unique_nonmonotonic_paths(g: &BackboneGraph) -> Vec<(usize, usize, usize)> {
    let adj: Vec<BTreeSet<usize>> = (0..g.len()).map(|i| g.neighbours(i).collect()).collect();
    let mut out = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let mut common = adj[i].intersection(&adj[j]);
            let (Some(&k), None) = (common.next(), common.next()) else {
                continue;
            };
            if let (Some(c1), Some(c2)) = (g.case(i, k), g.case(k, j)) {
                if !path_is_monotonic(c1, c2) {
                    out.push((i, k, j));
                }
            }
        }
    }
    out
}

pub fn build_onbd_system(g: &BackboneGraph) -> OnBdSystem {
    let edges: Vec<Edge> = g.edges().iter().copied().collect();
    let column: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(c, &e)| (e, c)).collect();
    let n = g.len();
    let mut matrix = RatMatrix::zeros(2 * n, edges.len());
    let mut rhs = vec![Rat::ZERO; 2 * n];
    for (i, label) in g.blocks().iter().enumerate() {
        let b_row = 2 * i;
        let a_row = 2 * i + 1;
        let zero = crate::numeric::HalfInt::ZERO;
        if label.b() != zero {
            rhs[b_row] = -Rat::ONE;
        }
        if label.a() != zero {
            rhs[a_row] = -Rat::ONE;
        }
        for j in g.neighbours(i) {
            let Some(case) = g.case(i, j) else { continue };
            let z = z_linear(case, label.a(), label.b());
            let c = column[&(i.min(j), i.max(j))];
            if label.b() != zero {
                matrix.set(b_row, c, matrix.get(b_row, c) + z.coef_b);
            }
            if label.a() != zero {
                matrix.set(a_row, c, matrix.get(a_row, c) + z.coef_a);
            }
        }
    }
    let signs = edges
        .iter()
        .map(|&(p, q)| g.case(p, q).map(t_sign_relation).unwrap_or(0))
        .collect();
    OnBdSystem {
        edges,
        matrix,
        rhs,
        signs,
    }
}

/// Connected components, each classified as a canonical chain or not.
pub fn decompose(g: &BackboneGraph) -> Vec<Component> {
    let n = g.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut members = Vec::new();
        seen[start] = true;
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in g.neighbours(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        let kind = recognize_chain(g, &members)
            .map(ComponentKind::Canonical)
            .unwrap_or(ComponentKind::NonCanonical);
        out.push(Component {
            blocks: members,
            kind,
        });
    }
    out
}

/// For each label, how many components contain a block with that label.
pub fn label_multiplicities(g: &BackboneGraph, components: &[Component]) -> BTreeMap<BlockLabel, usize> {
    let mut out = BTreeMap::new();
    for c in components {
        let labels: BTreeSet<BlockLabel> = c.blocks.iter().map(|&i| g.blocks()[i]).collect();
        for l in labels {
            *out.entry(l).or_insert(0) += 1;
        }
    }
    out
}

/// Full pipeline; the assembled set uses the de Sitter algebra.
pub fn solve_and_verify(g: &BackboneGraph) -> SolverOutcome {
    let components = decompose(g);
    let invalid = |witness: Witness, components: Vec<Component>| SolverOutcome {
        verdict: Verdict::Invalid,
        witness: Some(witness),
        products: None,
        t_values: None,
        components,
        dof: None,
        generators: None,
    };

    if let Some(w) = structural_checks(g) {
        return invalid(w, components);
    }
    if let Some(&(i, k, j)) = unique_nonmonotonic_paths(g).first() {
        return invalid(Witness::NonMonotonicPath { i, k, j }, components);
    }

    let system = build_onbd_system(g);
    let x = match solve_rational_linear(&system.matrix, &system.rhs) {
        Ok(LinearOutcome::Unique(x)) => x,
        Ok(LinearOutcome::Inconsistent) => return invalid(Witness::Inconsistent, components),
        Ok(LinearOutcome::Underdetermined { dof }) => {
            return SolverOutcome {
                verdict: Verdict::Underdetermined,
                witness: None,
                products: None,
                t_values: None,
                components,
                dof: Some(dof),
                generators: None,
            }
        }
        Err(_) => unreachable!("system shape is consistent by construction"),
    };
    let products: BTreeMap<Edge, Rat> = system.edges.iter().copied().zip(x.iter().copied()).collect();

    for ((&edge, xe), &sign) in system.edges.iter().zip(&x).zip(&system.signs) {
        if xe.signum() != i32::from(sign) {
            let mut out = invalid(Witness::SignConstraint { edge, x: *xe }, components);
            out.products = Some(products);
            return out;
        }
    }

    let t_values: Couplings = system
        .edges
        .iter()
        .zip(&x)
        .zip(&system.signs)
        .map(|((&edge, xe), &sign)| {
            let t = libm::sqrt(xe.abs().to_f64());
            (edge, (t, f64::from(sign) * t))
        })
        .collect();
    let generators =
        assemble(g, &t_values, Algebra::DeSitter).expect("edges are compatible and signs follow the rule");

    let worst = check_all_crs(&generators)
        .into_iter()
        .chain(check_hermiticity(&generators))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("ten generators");
    if !(worst.1 < NUMERIC_TOLERANCE) {
        let mut out = invalid(
            Witness::NumericFailure {
                relation: worst.0,
                residual: worst.1,
            },
            components,
        );
        out.products = Some(products);
        out.t_values = Some(t_values);
        return out;
    }

    SolverOutcome {
        verdict: Verdict::Valid,
        witness: None,
        products: Some(products),
        t_values: Some(t_values),
        components,
        dof: None,
        generators: Some(generators),
    }
}
