//! Backbones, coupling coefficients and assembly of the ten generators.
//!
//! A backbone is a list of HLA blocks plus the pairs of blocks that are
//! connected by translation generators. [`assemble`] places the block
//! generators on the diagonal and `t`-scaled coupling matrices on each edge.

use core::fmt;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::coupling::{compatibility, t_sign_relation, u_blocks, PairCase};
use crate::error::{Error, Result};
use crate::hla::{hla_generators, BlockLabel};
use crate::numeric::{CMatrix, HalfInt, Rat, I};

/// The two canonical chain shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `(A,A) ⊕ (A-½,A-½) ⊕ … ⊕ (0,0)`, slope +1.
    TypeA,
    /// `(A,0) ⊕ (A-½,½) ⊕ … ⊕ (0,A)`, slope -1.
    TypeB,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::TypeA => "A",
            Family::TypeB => "B",
        })
    }
}

/// One canonical irrep: a family and its block count `N >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalSpec {
    family: Family,
    blocks: usize,
}

impl CanonicalSpec {
    pub fn new(family: Family, blocks: usize) -> Result<Self> {
        if blocks < 2 {
            return Err(Error::TooFewBlocks(blocks));
        }
        Ok(CanonicalSpec { family, blocks })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    /// Top label `A = (N - 1)/2`.
    pub fn top(&self) -> HalfInt {
        HalfInt::from_twice(self.blocks as i64 - 1)
    }
}

impl fmt::Display for CanonicalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Type{} N={}", self.family, self.blocks)
    }
}

/// The irrep with reference number `k >= 1`: odd numbers are type B with
/// `N = (k+3)/2`, even numbers type A with `N = k/2 + 1`.
pub fn irrep_by_number(k: usize) -> Option<CanonicalSpec> {
    match k {
        0 => None,
        k if k % 2 == 1 => Some(CanonicalSpec { family: Family::TypeB, blocks: (k + 3) / 2 }),
        k => Some(CanonicalSpec { family: Family::TypeA, blocks: k / 2 + 1 }),
    }
}

/// Irreps `1..=count` in reference-number order.
pub fn first_irreps(count: usize) -> Vec<CanonicalSpec> {
    (1..=count).filter_map(irrep_by_number).collect()
}

pub type Edge = (usize, usize);

/// `(t_PQ, t_QP)` per edge `(P, Q)` with `P < Q`.
pub type Couplings = BTreeMap<Edge, (f64, f64)>;

/// Blocks (duplicates allowed) and undirected edges between block indices.
///
/// Construction checks index ranges and self-edges only; label compatibility
/// of edges is checked by [`assemble`] and by the backbone validator, which
/// reports it as a witness.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BackboneGraph {
    blocks: Vec<BlockLabel>,
    edges: BTreeSet<Edge>,
}

impl BackboneGraph {
    pub fn new(blocks: Vec<BlockLabel>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let n = blocks.len();
        let mut set = BTreeSet::new();
        for (p, q) in edges {
            for index in [p, q] {
                if index >= n {
                    return Err(Error::BlockIndexOutOfRange { index, blocks: n });
                }
            }
            if p == q {
                return Err(Error::SelfEdge(p));
            }
            set.insert((p.min(q), p.max(q)));
        }
        Ok(BackboneGraph { blocks, edges: set })
    }

    pub fn blocks(&self) -> &[BlockLabel] {
        &self.blocks
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn has_edge(&self, p: usize, q: usize) -> bool {
        self.edges.contains(&(p.min(q), p.max(q)))
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(p, q)| {
            if p == i {
                Some(q)
            } else if q == i {
                Some(p)
            } else {
                None
            }
        })
    }

    /// Case of the ordered pair `(p, q)`, if their labels are compatible.
    pub fn case(&self, p: usize, q: usize) -> Option<PairCase> {
        compatibility(self.blocks[p], self.blocks[q])
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    /// Row offset of each block in the assembled matrices.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = acc;
                acc += b.dim();
                o
            })
            .collect()
    }

    pub fn has_duplicates(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.blocks.iter().any(|b| !seen.insert(*b))
    }

    /// Same graph with block order reversed.
    pub fn reversed(&self) -> BackboneGraph {
        let n = self.blocks.len();
        BackboneGraph {
            blocks: self.blocks.iter().rev().copied().collect(),
            edges: self
                .edges
                .iter()
                .map(|&(p, q)| (n - 1 - q, n - 1 - p))
                .collect(),
        }
    }
}

pub fn canonical_backbone(spec: CanonicalSpec) -> BackboneGraph {
    let top = spec.top().twice();
    let blocks = (0..spec.blocks as i64)
        .map(|k| match spec.family {
            Family::TypeA => BlockLabel::from_twice(top - k, top - k),
            Family::TypeB => BlockLabel::from_twice(top - k, k),
        })
        .collect();
    BackboneGraph {
        blocks,
        edges: (1..spec.blocks).map(|n| (n - 1, n)).collect(),
    }
}

/// `N(N+1)(2N+1)/6` for type A, `N(N+1)(N+2)/6` for type B.
pub fn canonical_dimension(spec: CanonicalSpec) -> usize {
    let n = spec.blocks;
    match spec.family {
        Family::TypeA => n * (n + 1) * (2 * n + 1) / 6,
        Family::TypeB => n * (n + 1) * (n + 2) / 6,
    }
}

/// `|t_{n,n+1} t_{n+1,n}|` for edge `n` (1-based) of a canonical chain.
pub fn canonical_t_product(spec: CanonicalSpec, n: usize) -> Result<Rat> {
    let big_n = spec.blocks;
    if n == 0 || n >= big_n {
        return Err(Error::EdgeOutOfRange { n, blocks: big_n });
    }
    Ok(match spec.family {
        Family::TypeB => Rat::new(1, 4),
        Family::TypeA => {
            let (bn, k) = (big_n as i128, n as i128);
            Rat::new((2 * bn - k + 1) * k, 4 * (bn - k) * (bn - k + 1))
        }
    })
}

/// `(t_{n,n+1}, t_{n+1,n})` for edge `n` (1-based) of a canonical chain.
///
/// Gauge: type A uses `t_{n,n+1} > 0 > t_{n+1,n}`; type B uses `+½` both ways.
pub fn canonical_t(spec: CanonicalSpec, n: usize) -> Result<(f64, f64)> {
    let big_n = spec.blocks;
    if n == 0 || n >= big_n {
        return Err(Error::EdgeOutOfRange { n, blocks: big_n });
    }
    Ok(match spec.family {
        Family::TypeB => (0.5, 0.5),
        Family::TypeA if n == 1 => {
            let t = 1.0 / libm::sqrt(2.0 * (big_n - 1) as f64);
            (t, -t)
        }
        Family::TypeA => {
            let (bn, k) = (big_n as f64, n as f64);
            let t = libm::sqrt((2.0 * bn - k + 1.0) * k / (4.0 * (bn - k) * (bn - k + 1.0)));
            (t, -t)
        }
    })
}

pub fn canonical_couplings(spec: CanonicalSpec) -> Couplings {
    (1..spec.blocks)
        .map(|n| ((n - 1, n), canonical_t(spec, n).expect("edge in range")))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    DeSitter,
    AntiDeSitter,
}

impl Algebra {
    /// Sign of the right-hand side of `[Vi,Vj]` and `[Vt,Vi]`.
    pub fn curvature_sign(self) -> f64 {
        match self {
            Algebra::DeSitter => 1.0,
            Algebra::AntiDeSitter => -1.0,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::DeSitter => "ds",
            Algebra::AntiDeSitter => "ads",
        })
    }
}

/// The ten generators by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Jx,
    Jy,
    Jz,
    Kx,
    Ky,
    Kz,
    Vt,
    Vx,
    Vy,
    Vz,
}

impl Generator {
    pub const ALL: [Generator; 10] = [
        Generator::Jx,
        Generator::Jy,
        Generator::Jz,
        Generator::Kx,
        Generator::Ky,
        Generator::Kz,
        Generator::Vt,
        Generator::Vx,
        Generator::Vy,
        Generator::Vz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Jx => "Jx",
            Generator::Jy => "Jy",
            Generator::Jz => "Jz",
            Generator::Kx => "Kx",
            Generator::Ky => "Ky",
            Generator::Kz => "Kz",
            Generator::Vt => "Vt",
            Generator::Vx => "Vx",
            Generator::Vy => "Vy",
            Generator::Vz => "Vz",
        }
    }

    pub fn from_name(name: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.name() == name)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An assembled representation: backbone, couplings and the ten matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    backbone: BackboneGraph,
    couplings: Couplings,
    algebra: Algebra,
    j: [CMatrix; 3],
    k: [CMatrix; 3],
    /// `[Vt, Vx, Vy, Vz]`
    v: [CMatrix; 4],
}

impl GeneratorSet {
    /// Wrap externally supplied matrices (e.g. read from a file).
    pub fn from_parts(
        backbone: BackboneGraph,
        couplings: Couplings,
        algebra: Algebra,
        matrices: [CMatrix; 10],
    ) -> Result<Self> {
        let n = matrices[0].rows();
        for m in &matrices {
            if m.shape() != (n, n) {
                return Err(Error::ShapeMismatch {
                    op: "GeneratorSet::from_parts",
                    lhs: (n, n),
                    rhs: m.shape(),
                });
            }
        }
        let [jx, jy, jz, kx, ky, kz, vt, vx, vy, vz] = matrices;
        Ok(GeneratorSet {
            backbone,
            couplings,
            algebra,
            j: [jx, jy, jz],
            k: [kx, ky, kz],
            v: [vt, vx, vy, vz],
        })
    }

    pub fn backbone(&self) -> &BackboneGraph {
        &self.backbone
    }

    pub fn couplings(&self) -> &Couplings {
        &self.couplings
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.j[0].rows()
    }

    pub fn j(&self) -> &[CMatrix; 3] {
        &self.j
    }

    pub fn k(&self) -> &[CMatrix; 3] {
        &self.k
    }

    /// Spatial translations `[Vx, Vy, Vz]`.
    pub fn v_spatial(&self) -> [&CMatrix; 3] {
        [&self.v[1], &self.v[2], &self.v[3]]
    }

    pub fn v_t(&self) -> &CMatrix {
        &self.v[0]
    }

    pub fn get(&self, g: Generator) -> &CMatrix {
        match g {
            Generator::Jx => &self.j[0],
            Generator::Jy => &self.j[1],
            Generator::Jz => &self.j[2],
            Generator::Kx => &self.k[0],
            Generator::Ky => &self.k[1],
            Generator::Kz => &self.k[2],
            Generator::Vt => &self.v[0],
            Generator::Vx => &self.v[1],
            Generator::Vy => &self.v[2],
            Generator::Vz => &self.v[3],
        }
    }

    pub fn get_mut(&mut self, g: Generator) -> &mut CMatrix {
        match g {
            Generator::Jx => &mut self.j[0],
            Generator::Jy => &mut self.j[1],
            Generator::Jz => &mut self.j[2],
            Generator::Kx => &mut self.k[0],
            Generator::Ky => &mut self.k[1],
            Generator::Kz => &mut self.k[2],
            Generator::Vt => &mut self.v[0],
            Generator::Vx => &mut self.v[1],
            Generator::Vy => &mut self.v[2],
            Generator::Vz => &mut self.v[3],
        }
    }

    /// The anti-de Sitter image: every translation generator multiplied by `i`.
    /// A set that is already anti-de Sitter is returned unchanged.
    pub fn to_anti_de_sitter(&self) -> GeneratorSet {
        if self.algebra == Algebra::AntiDeSitter {
            return self.clone();
        }
        let mut out = self.clone();
        out.algebra = Algebra::AntiDeSitter;
        for v in out.v.iter_mut() {
            *v = v.scale(I);
        }
        out
    }
}

/// Assemble the ten generators, enforcing `t_QP = ±t_PQ` per edge case.
pub fn assemble(
    backbone: &BackboneGraph,
    couplings: &Couplings,
    algebra: Algebra,
) -> Result<GeneratorSet> {
    for (&(p, q), &(t_pq, t_qp)) in couplings {
        if !backbone.has_edge(p, q) {
            continue;
        }
        let case = backbone.case(p, q).ok_or(Error::Incompatible {
            p: backbone.blocks[p],
            q: backbone.blocks[q],
        })?;
        let expected = f64::from(t_sign_relation(case)) * t_pq;
        if (t_qp - expected).abs() > 1e-12 * (1.0 + t_pq.abs()) {
            return Err(Error::SignRelation {
                edge: (p, q),
                t_pq,
                t_qp,
            });
        }
    }
    assemble_unchecked(backbone, couplings, algebra)
}

/// Like [`assemble`] but without the Hermiticity sign rule on couplings.
/// Edges absent from `couplings` get `t = 0`.
pub fn assemble_unchecked(
    backbone: &BackboneGraph,
    couplings: &Couplings,
    algebra: Algebra,
) -> Result<GeneratorSet> {
    if let Some(e) = couplings.keys().find(|&&(p, q)| !backbone.has_edge(p, q) || p > q) {
        return Err(Error::UnknownEdge(*e));
    }
    let n = backbone.dimension();
    let offsets = backbone.offsets();

    let zero = || CMatrix::zeros(n, n);
    let (mut jp, mut jm, mut jz) = (zero(), zero(), zero());
    let (mut kp, mut km, mut kz) = (zero(), zero(), zero());
    for (block, &off) in backbone.blocks.iter().zip(&offsets) {
        let h = hla_generators(*block);
        jp.set_block(off, off, &h.j_plus);
        jm.set_block(off, off, &h.j_minus);
        jz.set_block(off, off, &h.j_z);
        kp.set_block(off, off, &h.k_plus);
        km.set_block(off, off, &h.k_minus);
        kz.set_block(off, off, &h.k_z);
    }

    let (mut vp, mut vm, mut wp, mut wm) = (zero(), zero(), zero(), zero());
    for &(p, q) in &backbone.edges {
        let (bp, bq) = (backbone.blocks[p], backbone.blocks[q]);
        let u = u_blocks(bp, bq)?;
        let (t_pq, t_qp) = couplings.get(&(p, q)).copied().unwrap_or((0.0, 0.0));
        let (op, oq) = (offsets[p], offsets[q]);
        vp.add_block(op, oq, &u.u_plus_pq, t_pq);
        vm.add_block(op, oq, &u.u_minus_pq, t_pq);
        wp.add_block(op, oq, &u.w_plus_pq, t_pq);
        wm.add_block(op, oq, &u.w_minus_pq, t_pq);
        vp.add_block(oq, op, &u.u_plus_qp, t_qp);
        vm.add_block(oq, op, &u.u_minus_qp, t_qp);
        wp.add_block(oq, op, &u.w_plus_qp, t_qp);
        wm.add_block(oq, op, &u.w_minus_qp, t_qp);
    }

    let j = crate::hla::cartesian(&jp, &jm, &jz);
    let k = crate::hla::cartesian(&kp, &km, &kz);
    let mut v = crate::coupling::to_cartesian(&vp, &vm, &wp, &wm);
    if algebra == Algebra::AntiDeSitter {
        for m in v.iter_mut() {
            *m = m.scale(I);
        }
    }
    Ok(GeneratorSet {
        backbone: backbone.clone(),
        couplings: couplings.clone(),
        algebra,
        j,
        k,
        v,
    })
}

/// Canonical irrep with canonical couplings.
pub fn canonical_generators(spec: CanonicalSpec, algebra: Algebra) -> GeneratorSet {
    assemble(&canonical_backbone(spec), &canonical_couplings(spec), algebra)
        .expect("canonical chains are compatible and sign-consistent")
}

/// Recognise a connected block set as a canonical chain.
///
/// `members` are block indices of one connected component. Returns the spec
/// when the edges among them form a single path whose labels are exactly a
/// canonical backbone, in either direction.
pub fn recognize_chain(g: &BackboneGraph, members: &[usize]) -> Option<CanonicalSpec> {
    let n = members.len();
    if n < 2 {
        return None;
    }
    let inside: BTreeSet<usize> = members.iter().copied().collect();
    let edges: Vec<Edge> = g
        .edges
        .iter()
        .copied()
        .filter(|(p, q)| inside.contains(p) && inside.contains(q))
        .collect();
    if edges.len() != n - 1 {
        return None;
    }
    let first_case = g.case(edges[0].0, edges[0].1)?;
    let family = if first_case.is_diagonal() {
        Family::TypeA
    } else {
        Family::TypeB
    };
    let spec = CanonicalSpec::new(family, n).ok()?;
    let mut want: Vec<BlockLabel> = canonical_backbone(spec).blocks;
    let mut have: Vec<BlockLabel> = members.iter().map(|&i| g.blocks[i]).collect();
    want.sort();
    have.sort();
    if want != have {
        return None;
    }
    // canonical labels are distinct and only consecutive ones are compatible,
    // so n-1 compatible edges on these labels form the chain
    if edges.iter().all(|&(p, q)| g.case(p, q).is_some()) {
        Some(spec)
    } else {
        None
    }
}
