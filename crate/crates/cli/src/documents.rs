//! JSON documents for backbones and assembled generator sets.
//!
//! Half-integer labels are written as strings (`"3/2"`) and may be read back
//! from either strings or integers. Matrix entries are sparse
//! `[row, col, re, im]` quadruples; `serde_json` prints the shortest decimal
//! that reads back to the same `f64`, so a write/read cycle is bit-exact.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use desitter_core::numeric::{CMatrix, HalfInt};
use desitter_core::representation::{Couplings, Generator};
use desitter_core::{Algebra, BackboneGraph, BlockLabel, GeneratorSet};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelValue {
    Int(i64),
    Text(String),
}

impl LabelValue {
    pub fn parse(&self) -> Result<HalfInt> {
        match self {
            LabelValue::Int(n) => Ok(HalfInt::from_int(*n)),
            LabelValue::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| anyhow!("bad label {s:?}: expected an integer or p/2")),
        }
    }
}

impl From<HalfInt> for LabelValue {
    fn from(h: HalfInt) -> Self {
        LabelValue::Text(h.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockEntry {
    #[serde(rename = "A")]
    pub a: LabelValue,
    #[serde(rename = "B")]
    pub b: LabelValue,
}

pub fn parse_algebra(s: &str) -> Result<Algebra> {
    match s.to_ascii_lowercase().as_str() {
        "ds" => Ok(Algebra::DeSitter),
        "ads" => Ok(Algebra::AntiDeSitter),
        other => bail!("unknown algebra {other:?}: expected ds or ads"),
    }
}

fn default_algebra() -> String {
    "ds".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BackboneDocument {
    pub blocks: Vec<BlockEntry>,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default = "default_algebra")]
    pub algebra: String,
}

impl BackboneDocument {
    pub fn from_graph(g: &BackboneGraph, algebra: Algebra) -> Self {
        BackboneDocument {
            blocks: g
                .blocks()
                .iter()
                .map(|b| BlockEntry {
                    a: b.a().into(),
                    b: b.b().into(),
                })
                .collect(),
            edges: g.edges().iter().map(|&(p, q)| [p, q]).collect(),
            algebra: algebra.to_string(),
        }
    }

    pub fn to_graph(&self) -> Result<BackboneGraph> {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let label = BlockLabel::new(e.a.parse()?, e.b.parse()?);
                label.with_context(|| format!("block {i}"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BackboneGraph::new(blocks, self.edges.iter().map(|&[p, q]| (p, q)))?)
    }

    pub fn algebra(&self) -> Result<Algebra> {
        parse_algebra(&self.algebra)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub generator: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, f64, f64)>,
}

impl MatrixDocument {
    pub fn from_matrix(generator: &str, m: &CMatrix) -> Self {
        MatrixDocument {
            generator: generator.into(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m.nonzeros().map(|(i, j, z)| (i, j, z.re, z.im)).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let mut data = vec![Complex64::new(0.0, 0.0); self.rows * self.cols];
        for &(i, j, re, im) in &self.entries {
            if i >= self.rows || j >= self.cols {
                bail!("{}: entry ({i},{j}) outside {}x{}", self.generator, self.rows, self.cols);
            }
            data[i * self.cols + j] = Complex64::new(re, im);
        }
        Ok(CMatrix::from_vec(self.rows, self.cols, data)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingEntry {
    pub edge: [usize; 2],
    pub t_pq: f64,
    pub t_qp: f64,
}

/// An assembled representation: backbone, couplings and all ten matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorDocument {
    pub backbone: BackboneDocument,
    pub dimension: usize,
    pub couplings: Vec<CouplingEntry>,
    pub matrices: Vec<MatrixDocument>,
}

impl GeneratorDocument {
    pub fn from_set(g: &GeneratorSet) -> Self {
        GeneratorDocument {
            backbone: BackboneDocument::from_graph(g.backbone(), g.algebra()),
            dimension: g.dim(),
            couplings: g
                .couplings()
                .iter()
                .map(|(&(p, q), &(t_pq, t_qp))| CouplingEntry {
                    edge: [p, q],
                    t_pq,
                    t_qp,
                })
                .collect(),
            matrices: Generator::ALL
                .iter()
                .map(|&x| MatrixDocument::from_matrix(x.name(), g.get(x)))
                .collect(),
        }
    }

    pub fn to_set(&self) -> Result<GeneratorSet> {
        let backbone = self.backbone.to_graph()?;
        let algebra = self.backbone.algebra()?;
        let couplings: Couplings = self
            .couplings
            .iter()
            .map(|c| ((c.edge[0], c.edge[1]), (c.t_pq, c.t_qp)))
            .collect();
        let mut slots: [Option<CMatrix>; 10] = Default::default();
        for m in &self.matrices {
            let g = Generator::from_name(&m.generator)
                .ok_or_else(|| anyhow!("unknown generator {:?}", m.generator))?;
            let idx = Generator::ALL.iter().position(|&x| x == g).expect("listed");
            if slots[idx].replace(m.to_matrix()?).is_some() {
                bail!("generator {} appears twice", m.generator);
            }
        }
        let mut missing = Vec::new();
        for (slot, g) in slots.iter().zip(Generator::ALL) {
            if slot.is_none() {
                missing.push(g.name());
            }
        }
        if !missing.is_empty() {
            bail!("missing generators: {}", missing.join(", "));
        }
        let matrices = slots.map(|m| m.expect("checked"));
        if matrices[0].rows() != self.dimension {
            bail!("dimension {} does not match matrices of size {}", self.dimension, matrices[0].rows());
        }
        Ok(GeneratorSet::from_parts(backbone, couplings, algebra, matrices)?)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}
