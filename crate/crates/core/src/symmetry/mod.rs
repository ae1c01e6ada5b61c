//! Numerical symmetry analysis of operators given as matrices: commutator
//! defects, block-scalar decompositions, the `+-H` classifier and the
//! rotation/orbit scalarity test.

mod commutator;
mod decompose;
mod matrix;

pub use commutator::{
    commutator_defect, rotation_commutant_analysis, Action, CommutatorReport, DefectRecord, RotationReport,
};
pub use decompose::{
    classify_pm_hilbert, decompose_circle_operator, decompose_line_operator, synthesize_commuting_operator,
    Classification, ScalarDecomposition, CLASSIFY_TOL,
};
pub use matrix::{
    cauchy_pv_matrix, cauchy_symbol_matrix, circulant_from_symbol, hardy_plus_matrix, hilbert_matrix, position_matrix,
    Basis, OperatorMatrix,
};
