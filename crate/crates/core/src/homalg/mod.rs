//! Exact linear algebra over Z, Q and F_p, and the homological machinery built on it.

pub mod complex;
pub mod double;
pub mod matrix;
pub mod ring;
pub mod snf;
pub mod spectral;

pub use complex::{ChainComplex, Direction, GroupDescriptor};
pub use double::{double_complex_spectral_sequences, DoubleComplex, DoubleComplexPages};
pub use matrix::{echelon, kernel, Echelon, Matrix, QuotientBasis};
pub use ring::{CoefficientRing, Integers, PrimeField, Rationals, Ring};
pub use snf::{determinant, smith, smith_normal_form, Smith};
pub use spectral::{spectral_sequence_of_filtration, FilteredComplex, Page, SpectralSequencePages};
