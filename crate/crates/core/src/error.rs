use core::fmt;

use crate::hla::BlockLabel;
use crate::numeric::HalfInt;

/// Errors raised by the representation kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand shapes do not fit the operation.
    ShapeMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    /// A magnetic index outside `-A..=A`, or off the label's integer/half-integer lattice.
    IndexOutOfRange { spin: HalfInt, index: HalfInt },
    /// A spin label below zero.
    NegativeLabel(HalfInt),
    /// Two blocks whose labels do not differ by exactly one half in both A and B.
    Incompatible { p: BlockLabel, q: BlockLabel },
    /// Fewer than two blocks requested for a canonical backbone.
    TooFewBlocks(usize),
    /// Edge index `n` outside `1..=N-1` for a canonical chain.
    EdgeOutOfRange { n: usize, blocks: usize },
    /// An edge refers to a block index that does not exist.
    BlockIndexOutOfRange { index: usize, blocks: usize },
    /// An edge joins a block to itself.
    SelfEdge(usize),
    /// A coupling pair violates `t_QP = ±t_PQ` for the edge's case.
    SignRelation {
        edge: (usize, usize),
        t_pq: f64,
        t_qp: f64,
    },
    /// Couplings supplied for an edge that is not in the backbone.
    UnknownEdge((usize, usize)),
    /// Malformed half-integer or rational literal.
    Parse,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch { op, lhs, rhs } => write!(
                f,
                "{op}: shape mismatch {}x{} vs {}x{}",
                lhs.0, lhs.1, rhs.0, rhs.1
            ),
            Error::IndexOutOfRange { spin, index } => {
                write!(f, "index {index} is not a weight of spin {spin}")
            }
            Error::NegativeLabel(x) => write!(f, "negative spin label {x}"),
            Error::Incompatible { p, q } => write!(
                f,
                "blocks {p} and {q} are not compatible (labels must differ by 1/2 in both A and B)"
            ),
            Error::TooFewBlocks(n) => write!(
                f,
                "a backbone needs at least two blocks (got {n}); no representation exists on a single block"
            ),
            Error::EdgeOutOfRange { n, blocks } => {
                write!(f, "edge {n} out of range for a chain of {blocks} blocks")
            }
            Error::BlockIndexOutOfRange { index, blocks } => {
                write!(f, "block index {index} out of range ({blocks} blocks)")
            }
            Error::SelfEdge(i) => write!(f, "self-edge on block {i}"),
            Error::SignRelation { edge, t_pq, t_qp } => write!(
                f,
                "couplings ({t_pq}, {t_qp}) on edge {}-{} violate the Hermiticity sign rule",
                edge.0, edge.1
            ),
            Error::UnknownEdge(e) => write!(f, "couplings given for non-edge {}-{}", e.0, e.1),
            Error::Parse => f.write_str("malformed number literal"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
