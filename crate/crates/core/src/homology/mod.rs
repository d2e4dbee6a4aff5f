//! Exact homology of finite chain complexes over Z, Q and Z/2.

mod complex;
mod matrix;

pub use complex::{ChainComplex, ComplexError, HomologySummary};
pub use matrix::{smith_normal_form, IntegerMatrix, ShapeError, SmithNormalForm};
