use super::{AlgebroidSection, PolyGroupoid};
use crate::error::{Error, Result};
use crate::exact::{Mode, PolyMatrix, ZeroTest};
use crate::exterior::{MultiVectorField, TensorField};

impl PolyGroupoid {
    fn check_section(&self, f: &AlgebroidSection) -> Result<()> {
        if f.rank() != self.rank() || f.dim_m() != self.dim_m() {
            return Err(Error::arity(format!(
                "section over rank {} / base {} used on a groupoid with rank {} / base {}",
                f.rank(),
                f.dim_m(),
                self.rank(),
                self.dim_m()
            )));
        }
        Ok(())
    }

    fn check_field(&self, f: &TensorField) -> Result<()> {
        let g = self.dim_g();
        if f.nvars() != g || f.contra_dim() != g || f.co_dim() != g {
            return Err(Error::arity(format!(
                "tensor field must live on Q^{g}, got one on Q^{}",
                f.nvars()
            )));
        }
        Ok(())
    }

    /// Right-invariant tensor field `→f` on `G`: contravariant slots move by
    /// right translation from `t(g)`, covariant slots are pulled back by `t`.
    pub fn translate_right(&self, f: &AlgebroidSection) -> Result<TensorField> {
        self.check_section(f)?;
        let g = self.dim_g();
        f.tensor()
            .compose(self.target().comps(), g)
            .transform(self.right_frame(), self.d_target())
    }

    /// Left-invariant tensor field `←f`, built from `s` and left translation.
    pub fn translate_left(&self, f: &AlgebroidSection) -> Result<TensorField> {
        self.check_section(f)?;
        let g = self.dim_g();
        f.tensor()
            .compose(self.source().comps(), g)
            .transform(self.left_frame(), self.d_source())
    }

    /// Restricts a `(p,q)` tensor field to the units, projects its
    /// contravariant part to `A` along `TM` and evaluates its covariant part
    /// on `TM`.
    pub fn restrict_project(&self, f: &TensorField, p: usize, q: usize) -> Result<AlgebroidSection> {
        self.check_field(f)?;
        if f.bidegree() != (p, q) {
            return Err(Error::degree(format!(
                "asked for a ({p}, {q}) restriction of a {:?} tensor",
                f.bidegree()
            )));
        }
        let sinv = self.splitting_inverse()?;
        let (g, m) = (self.dim_g(), self.dim_m());
        let to_a = sinv.row_range(m..g);
        let on_units = f.compose(self.unit().comps(), m);
        let t = on_units.transform(&to_a, self.d_unit())?;
        AlgebroidSection::from_tensor(t, self.rank(), m)
    }

    /// `→e_i` as a vector field.
    pub fn right_invariant_vector(&self, i: usize) -> MultiVectorField {
        MultiVectorField::vector(&self.right_frame().column(i))
    }

    /// `←e_i` as a vector field.
    pub fn left_invariant_vector(&self, i: usize) -> MultiVectorField {
        MultiVectorField::vector(&self.left_frame().column(i))
    }

    /// Difference `F - →(F|_M)`; zero exactly when `F` is right-invariant.
    pub fn right_invariance_defect(&self, f: &TensorField) -> Result<TensorField> {
        let (p, q) = f.bidegree();
        let back = self.translate_right(&self.restrict_project(f, p, q)?)?;
        f.checked_sub(&back)
    }

    pub fn left_invariance_defect(&self, f: &TensorField) -> Result<TensorField> {
        let (p, q) = f.bidegree();
        let back = self.translate_left(&self.restrict_project(f, p, q)?)?;
        f.checked_sub(&back)
    }

    pub fn is_right_invariant(&self, f: &TensorField, mode: Mode) -> Result<ZeroTest> {
        let d = self.right_invariance_defect(f)?;
        Ok(mode.test_zero(&coefficients(&d), self.dim_g()))
    }

    pub fn is_left_invariant(&self, f: &TensorField, mode: Mode) -> Result<ZeroTest> {
        let d = self.left_invariance_defect(f)?;
        Ok(mode.test_zero(&coefficients(&d), self.dim_g()))
    }

    /// Anchor matrix `ρ = dt ∘ a` at the units (`dim_m × rank`).
    pub fn anchor(&self) -> Result<PolyMatrix> {
        let m = self.dim_m();
        let dt_units = self.d_target().compose(self.unit().comps(), m);
        dt_units.mul(&self.splitting().columns(m..self.dim_g()))
    }
}

pub(crate) fn coefficients(t: &TensorField) -> Vec<crate::exact::Poly> {
    t.terms().map(|(_, c)| c.clone()).collect()
}

#[cfg(test)]
mod tests {
    use crate::catalog;
    use crate::exact::{Mode, Poly};
    use crate::exterior::{Graded, TensorField};
    use crate::groupoid::AlgebroidSection;

    #[test]
    fn pair_restriction_of_sum_of_translates() {
        // (f(x), g(y)) restricts to f - g on the diagonal
        let gp = catalog::pair(1);
        let x2 = Poly::vars(2);
        let v = crate::exterior::MultiVectorField::vector(&[&x2[0] * &x2[0], &x2[1] + &Poly::one(2)]);
        let r = gp.restrict_project(&TensorField::from_multivector(&v), 1, 0).unwrap();
        let x = Poly::vars(1);
        let want = &(&x[0] * &x[0]) - &(&x[0] + &Poly::one(1));
        let want = AlgebroidSection::from_contravariant(&Graded::linear(1, &[want]), 1).unwrap();
        assert_eq!(r, want);
    }

    #[test]
    fn translates_are_invariant() {
        for gp in [
            catalog::pair(2),
            catalog::heisenberg(),
            catalog::product_pair_heisenberg(1),
        ] {
            let n = gp.rank();
            for i in 0..n {
                let e = AlgebroidSection::generator(n, gp.dim_m(), i);
                let r = gp.translate_right(&e).unwrap();
                let l = gp.translate_left(&e).unwrap();
                assert!(gp.is_right_invariant(&r, Mode::Exact).unwrap().zero);
                assert!(gp.is_left_invariant(&l, Mode::Exact).unwrap().zero);
                assert_eq!(gp.restrict_project(&r, 1, 0).unwrap(), e);
            }
        }
    }
}
