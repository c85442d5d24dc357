//! Multivector fields, differential forms and mixed tensors with polynomial
//! coefficients, with the Schouten bracket, de Rham differential, interior
//! products and pullbacks.

mod fields;
mod graded;
mod tensor;

pub use fields::{DifferentialForm, MultiVectorField};
pub use graded::{blade_degree, blade_indices, blade_of, blades, wedge_sign, Blade, Graded};
pub use tensor::TensorField;

use crate::error::Result;
use crate::exact::{Matrix, PolyMatrix};

/// Pushes a pointwise multivector through a linear map: `∧^k J`.
pub fn pushforward_linear(j: &Matrix, p: &Graded) -> Result<Graded> {
    p.push_columns(&PolyMatrix::from_constant(0, j))
}
