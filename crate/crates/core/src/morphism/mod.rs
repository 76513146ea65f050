//! Two-valued data on idempotents extended to maps of partial algebras
//! `M_n(F_p)_sym → F_{p^6}`, with exhaustive verification.

mod builder;
mod charpoly;
mod jordan;
mod verify;

use std::sync::Arc;

use thiserror::Error;

use crate::matrix::MatrixError;
use crate::partial_boolean::{AlgebraError, PartialBooleanAlgebra};
use crate::scalars::ScalarError;
use crate::solver::{all_colorings, Color};

pub use builder::{
    extend_coloring, matrix_key, EmbeddingDump, MatrixDomain, Morphism, MorphismDump, SubfieldEntry, TARGET_DEGREE,
};
pub use charpoly::{characteristic_polynomial, eval_at_matrix, without_constant};
pub use jordan::{jordan_chevalley, spectral_parts, JordanChevalleyPair, SpectralDecomposition};
pub use verify::{verify_morphism, Failure, FailureKind, IntegerComposite, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("not a valid coloring: {0}")]
    InvalidColoring(String),
    #[error("domain is not closed: {0}")]
    ClosureViolation(String),
    #[error("matrix is not semisimple: {0}")]
    NotSemisimple(String),
    #[error("subalgebra generated by {0} is not a field")]
    NotAField(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `M_3(F_p)_sym`, its projection algebra, and every coloring of the latter.
pub struct SymmetricSetting {
    pub domain: Arc<MatrixDomain>,
    pub projections: PartialBooleanAlgebra,
    pub colorings: Vec<Vec<Color>>,
}

pub fn symmetric_setting(p: u64) -> Result<SymmetricSetting, MorphismError> {
    let domain = Arc::new(MatrixDomain::symmetric(p, 3)?);
    let projections = PartialBooleanAlgebra::from_idempotents(&domain.idempotents(), true)?;
    let colorings = all_colorings(projections.constraint_system(), usize::MAX);
    Ok(SymmetricSetting { domain, projections, colorings })
}
