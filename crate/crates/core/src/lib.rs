//! Exact symbolic checks for affine and multiplicative multivector fields,
//! forms and tensors on Lie groupoids with polynomial structure maps.
//!
//! Everything is computed over the rationals. Identities are decided either by
//! full expansion ([`exact::Mode::Exact`]) or by seeded random evaluation
//! ([`exact::Mode::Sampled`]).

pub mod affine_forms;
pub mod affine_mv;
pub mod affine_tensors;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod exact;
pub mod exterior;
pub mod groupoid;
pub mod io;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
pub use exact::{Matrix, Mode, Poly, PolyMap, PolyMatrix, Scalar, DEFAULT_SAMPLES};
pub use exterior::{DifferentialForm, Graded, MultiVectorField, TensorField};
pub use groupoid::{AlgebroidSection, LieAlgebroidData, PolyGroupoid};
