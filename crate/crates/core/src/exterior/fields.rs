use std::ops::{Add, Neg, Sub};

use super::graded::{Blade, Graded};
use crate::error::{Error, Result};
use crate::exact::{Poly, PolyMap, Scalar};

macro_rules! graded_newtype {
    ($name:ident, $what:literal) => {
        #[doc = concat!("Polynomial ", $what, " on `Q^dim`; generator `i` is the `i`-th coordinate direction.")]
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name(Graded);

        impl $name {
            pub fn zero(dim: usize, degree: usize) -> Self {
                $name(Graded::zero(dim, dim, degree))
            }

            pub fn function(f: Poly) -> Self {
                let n = f.nvars();
                $name(Graded::function(f, n))
            }

            pub fn from_graded(g: Graded) -> Result<Self> {
                if g.nvars() != g.ngen() {
                    return Err(Error::arity(format!(
                        "field needs as many generators as variables, got {} and {}",
                        g.ngen(),
                        g.nvars()
                    )));
                }
                Ok($name(g))
            }

            pub fn from_terms(
                dim: usize,
                degree: usize,
                terms: impl IntoIterator<Item = (Blade, Poly)>,
            ) -> Result<Self> {
                Graded::from_terms(dim, dim, degree, terms).map($name)
            }

            pub fn graded(&self) -> &Graded {
                &self.0
            }

            pub fn into_graded(self) -> Graded {
                self.0
            }

            pub fn dim(&self) -> usize {
                self.0.nvars()
            }

            pub fn degree(&self) -> usize {
                self.0.degree()
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            pub fn scale(&self, c: &Scalar) -> Self {
                $name(self.0.scale(c))
            }

            pub fn scale_poly(&self, f: &Poly) -> Self {
                $name(self.0.scale_poly(f))
            }

            pub fn wedge(&self, other: &Self) -> Result<Self> {
                self.0.wedge(&other.0).map($name)
            }

            pub fn checked_add(&self, other: &Self) -> Result<Self> {
                self.0.checked_add(&other.0).map($name)
            }

            pub fn checked_sub(&self, other: &Self) -> Result<Self> {
                self.0.checked_sub(&other.0).map($name)
            }

            /// Value at a point, as an element with constant coefficients.
            pub fn at(&self, point: &[Scalar]) -> Graded {
                self.0.eval(point)
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                $name(&self.0 + &rhs.0)
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                $name(&self.0 - &rhs.0)
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(-&self.0)
            }
        }
    };
}

graded_newtype!(MultiVectorField, "multivector field");
graded_newtype!(DifferentialForm, "differential form");

impl MultiVectorField {
    /// Vector field `Σ comps[i] ∂_i`.
    pub fn vector(comps: &[Poly]) -> Self {
        MultiVectorField(Graded::linear(comps.len(), comps))
    }

    /// Schouten bracket, computed as the odd Poisson bracket on the
    /// superfunctions `Σ P^I θ_I`:
    /// `[P,Q] = Σ_i ∂_r P/∂θ_i ∧ ∂Q/∂x_i - (-1)^{(p-1)(q-1)} ∂_r Q/∂θ_i ∧ ∂P/∂x_i`.
    pub fn schouten(&self, other: &MultiVectorField) -> Result<MultiVectorField> {
        let (p, q) = (self.degree(), other.degree());
        let n = self.dim();
        if other.dim() != n {
            return Err(Error::arity("bracket of fields on different spaces"));
        }
        if p + q == 0 {
            return Ok(MultiVectorField(Graded::zero(n, n, 0)));
        }
        let mut out = Graded::zero(n, n, p + q - 1);
        let second_negative = ((p as i64 - 1) * (q as i64 - 1)).rem_euclid(2) == 0;
        for i in 0..n {
            if p > 0 {
                let t = self.0.right_deriv(i).wedge(&other.0.derivative(i))?;
                out = &out + &t;
            }
            if q > 0 {
                let t = other.0.right_deriv(i).wedge(&self.0.derivative(i))?;
                out = if second_negative { &out - &t } else { &out + &t };
            }
        }
        Ok(MultiVectorField(out))
    }

    /// Contraction `ι_ξ P` of a one-form into the first slot.
    pub fn interior(&self, xi: &DifferentialForm) -> Result<MultiVectorField> {
        if xi.degree() != 1 {
            return Err(Error::degree("interior product needs a one-form"));
        }
        if self.degree() == 0 {
            return Err(Error::degree("interior product into a function"));
        }
        if xi.dim() != self.dim() {
            return Err(Error::arity("interior product across different spaces"));
        }
        let n = self.dim();
        let mut out = Graded::zero(n, n, self.degree() - 1);
        for (b, c) in xi.0.terms() {
            let i = b.trailing_zeros() as usize;
            out = &out + &self.0.left_deriv(i).scale_poly(c);
        }
        Ok(MultiVectorField(out))
    }

    /// Apply a vector field to a function.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if self.degree() != 1 {
            return Err(Error::degree("only vector fields act on functions"));
        }
        Ok(self.0.terms().fold(Poly::zero(self.dim()), |acc, (b, c)| {
            &acc + &(c * &f.derivative(b.trailing_zeros() as usize))
        }))
    }
}

impl DifferentialForm {
    /// `Σ comps[i] dx_i`.
    pub fn covector(comps: &[Poly]) -> Self {
        DifferentialForm(Graded::linear(comps.len(), comps))
    }

    /// `df`.
    pub fn exact(f: &Poly) -> Self {
        let n = f.nvars();
        let comps: Vec<Poly> = (0..n).map(|i| f.derivative(i)).collect();
        DifferentialForm::covector(&comps)
    }

    pub fn d(&self) -> DifferentialForm {
        let n = self.dim();
        let mut out = Graded::zero(n, n, self.degree() + 1);
        for i in 0..n {
            let dx = Graded::generator(n, n, i);
            out = &out + &dx.wedge(&self.0.derivative(i)).expect("same space");
        }
        DifferentialForm(out)
    }

    /// Contraction `ι_X ω` of a vector field into the first slot.
    pub fn contract(&self, x: &MultiVectorField) -> Result<DifferentialForm> {
        if x.degree() != 1 {
            return Err(Error::degree("contraction needs a vector field"));
        }
        if self.degree() == 0 {
            return Err(Error::degree("contraction into a function"));
        }
        if x.dim() != self.dim() {
            return Err(Error::arity("contraction across different spaces"));
        }
        let n = self.dim();
        let mut out = Graded::zero(n, n, self.degree() - 1);
        for (b, c) in x.0.terms() {
            let i = b.trailing_zeros() as usize;
            out = &out + &self.0.left_deriv(i).scale_poly(c);
        }
        Ok(DifferentialForm(out))
    }

    /// Lie derivative `L_X ω = ι_X dω + d ι_X ω`.
    pub fn lie_derivative(&self, x: &MultiVectorField) -> Result<DifferentialForm> {
        let a = self.d().contract(x)?;
        if self.degree() == 0 {
            return Ok(a);
        }
        Ok(&a + &self.contract(x)?.d())
    }

    /// Pullback along a polynomial map from `Q^m` to `Q^dim`.
    pub fn pullback(&self, f: &PolyMap) -> Result<DifferentialForm> {
        if f.codomain() != self.dim() {
            return Err(Error::arity(format!(
                "map lands in dimension {}, form lives in dimension {}",
                f.codomain(),
                self.dim()
            )));
        }
        let m = f.domain();
        let moved = self.0.compose(f.comps(), m);
        let images: Vec<Graded> = f.comps().iter().map(|c| DifferentialForm::exact(c).0).collect();
        moved.substitute_generators(&images, m).map(DifferentialForm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn x(n: usize) -> Vec<Poly> {
        Poly::vars(n)
    }

    #[test]
    fn bracket_of_vector_fields_is_lie_bracket() {
        let v = x(2);
        let a = MultiVectorField::vector(&[v[1].clone(), Poly::zero(2)]);
        let b = MultiVectorField::vector(&[Poly::zero(2), v[0].clone()]);
        // [y∂x, x∂y] = y∂y - x∂x
        let want = MultiVectorField::vector(&[-&v[0], v[1].clone()]);
        assert_eq!(a.schouten(&b).unwrap(), want);
    }

    #[test]
    fn bracket_with_function_is_derivative() {
        let v = x(2);
        let a = MultiVectorField::vector(&[v[1].clone(), Poly::one(2)]);
        let f = MultiVectorField::function(&v[0] * &v[0]);
        let got = a.schouten(&f).unwrap();
        assert_eq!(got, MultiVectorField::function((&v[0] * &v[1]).scale(&int(2))));
        let back = f.schouten(&a).unwrap();
        assert_eq!(back, -&got);
    }

    #[test]
    fn d_squared_vanishes_and_pullback_commutes() {
        let v = x(2);
        let w = DifferentialForm::covector(&[&v[0] * &v[1], v[0].pow(3)]);
        assert!(w.d().d().is_zero());
        let f = PolyMap::new(2, vec![&v[0] + &v[1], &v[0] * &v[1]]).unwrap();
        assert_eq!(w.pullback(&f).unwrap().d(), w.d().pullback(&f).unwrap());
    }

    #[test]
    fn cartan_formula_on_functions() {
        let v = x(2);
        let f = &v[0] * &v[1];
        let xf = MultiVectorField::vector(&[Poly::one(2), v[0].clone()]);
        let lf = DifferentialForm::function(f.clone()).lie_derivative(&xf).unwrap();
        assert_eq!(lf, DifferentialForm::function(xf.apply(&f).unwrap()));
    }
}
