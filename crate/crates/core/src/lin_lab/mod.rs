//! Numerical experiments on matrix families that almost commute according
//! to a graph.
//!
//! A [`MatrixFamily`] assigns one `n x n` complex matrix to each vertex. The
//! lab generates families that commute exactly along the edges, perturbs
//! them, and then searches for a nearby family that is again normal and
//! edge-commuting. All distances use the normalized Hilbert-Schmidt norm
//! `||x||_2 = sqrt(tr(x* x) / n)`.

mod family;
mod norms;
mod objective;
mod project;
mod sweep;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub use family::{
    generate_gamma_family, generate_gamma_family_capped, leg_supports, perturb, MatrixFamily,
    DEFAULT_DIMENSION_CAP,
};
pub use norms::{commutator, gamma_defect, hs_norm, operator_norm, DefectReport};
pub use objective::{gradient, objective};
pub use project::{project_to_gamma_commuting, ProjectOptions, Projection, StageLog};
pub use sweep::{sweep, trial_seed, write_csv, ExperimentRecord, SweepOptions, CSV_HEADER};

pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("families live over different graphs")]
    GraphMismatch,
    #[error("family has {found} matrices for {expected} vertices")]
    VertexCount { expected: usize, found: usize },
    #[error("total dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("leg dimension must be at least 2, got {0}")]
    LegDim(usize),
    #[error("perturbation scale must be finite and non-negative, got {0}")]
    BadDelta(f64),
    #[error("penalty weight must be finite and non-negative, got {0}")]
    BadLambda(f64),
    #[error("non-finite value at penalty stage {stage}, iteration {iteration}")]
    NonFinite { stage: usize, iteration: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Shape of the matrices a family should have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Normal,
    SelfAdjoint,
    Unitary,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Normal => "normal",
            Kind::SelfAdjoint => "selfadjoint",
            Kind::Unitary => "unitary",
        })
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "normal" => Ok(Kind::Normal),
            "selfadjoint" => Ok(Kind::SelfAdjoint),
            "unitary" => Ok(Kind::Unitary),
            other => Err(format!(
                "unknown kind `{other}` (expected normal, selfadjoint or unitary)"
            )),
        }
    }
}
