//! Exact rational arithmetic: scalars, sparse polynomials, polynomial maps,
//! linear algebra and identity testing.

mod linalg;
mod poly;
mod polymap;
mod sample;
mod scalar;
pub mod text;

pub use linalg::{linsolve, AffineSolution, LinSolve, Matrix};
pub use poly::{Monomial, Poly};
pub use polymap::{PolyMap, PolyMatrix};
pub use sample::{Mode, RationalSampler, ZeroTest, DEFAULT_SAMPLES};
pub use scalar::{int, parse_scalar, rat, scalar_to_string, Scalar};
