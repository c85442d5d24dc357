use crate::error::{Error, Result};
use crate::exact::Poly;
use crate::exterior::{Blade, Graded, TensorField};

/// Section of `∧^p A ⊗ ∧^q T*M` over the base of a groupoid, in the frame
/// of `A` chosen by the splitting.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebroidSection(TensorField);

impl AlgebroidSection {
    pub fn zero(rank: usize, dim_m: usize, p: usize, q: usize) -> Self {
        AlgebroidSection(TensorField::zero(dim_m, rank, dim_m, p, q))
    }

    pub fn from_tensor(t: TensorField, rank: usize, dim_m: usize) -> Result<Self> {
        if t.nvars() != dim_m || t.contra_dim() != rank || t.co_dim() != dim_m {
            return Err(Error::arity(format!(
                "algebroid section must have rank {rank} and base dimension {dim_m}"
            )));
        }
        Ok(AlgebroidSection(t))
    }

    /// Section of `∧^p A` from an exterior element over the frame of `A`.
    pub fn from_contravariant(g: &Graded, dim_m: usize) -> Result<Self> {
        if g.nvars() != dim_m {
            return Err(Error::arity("section coefficients in the wrong ring"));
        }
        let one = Graded::function(Poly::one(dim_m), dim_m);
        Ok(AlgebroidSection(TensorField::product(g, &one)?))
    }

    /// Section of `∧^q T*M` (a form on the base).
    pub fn from_covariant(g: &Graded, rank: usize) -> Result<Self> {
        let one = Graded::function(Poly::one(g.nvars()), rank);
        Ok(AlgebroidSection(TensorField::product(&one, g)?))
    }

    pub fn from_terms(
        rank: usize,
        dim_m: usize,
        bidegree: (usize, usize),
        terms: impl IntoIterator<Item = ((Blade, Blade), Poly)>,
    ) -> Result<Self> {
        TensorField::from_terms(dim_m, rank, dim_m, bidegree, terms).map(AlgebroidSection)
    }

    /// Frame section `e_i`.
    pub fn generator(rank: usize, dim_m: usize, i: usize) -> Self {
        let g = Graded::generator(dim_m, rank, i);
        AlgebroidSection::from_contravariant(&g, dim_m).expect("generator has the right shape")
    }

    pub fn tensor(&self) -> &TensorField {
        &self.0
    }

    pub fn into_tensor(self) -> TensorField {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.contra_dim()
    }

    pub fn dim_m(&self) -> usize {
        self.0.nvars()
    }

    pub fn bidegree(&self) -> (usize, usize) {
        self.0.bidegree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn contravariant(&self) -> Result<Graded> {
        self.0.contravariant()
    }

    pub fn covariant(&self) -> Result<Graded> {
        self.0.covariant()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.0.checked_add(&other.0).map(AlgebroidSection)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.0.checked_sub(&other.0).map(AlgebroidSection)
    }

    pub fn neg(&self) -> Self {
        AlgebroidSection(self.0.neg())
    }
}
