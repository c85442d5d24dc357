use std::collections::BTreeMap;

use num_traits::Zero;

use super::fields::{DifferentialForm, MultiVectorField};
use super::graded::{blade_degree, blade_indices, blade_minor, Blade, Graded};
use crate::error::{Error, Result};
use crate::exact::{Poly, PolyMatrix, Scalar};

/// Section of `∧^p V ⊗ ∧^q W*` with polynomial coefficients, where `V` has
/// `contra_dim` generators and `W` has `co_dim` generators.
///
/// On a space `Q^n` both are `n`; for algebroid sections `V` is the algebroid
/// and `W` the tangent bundle of the base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorField {
    nvars: usize,
    contra_dim: usize,
    co_dim: usize,
    p: usize,
    q: usize,
    terms: BTreeMap<(Blade, Blade), Poly>,
}

impl TensorField {
    pub fn zero(nvars: usize, contra_dim: usize, co_dim: usize, p: usize, q: usize) -> Self {
        TensorField {
            nvars,
            contra_dim,
            co_dim,
            p,
            q,
            terms: BTreeMap::new(),
        }
    }

    /// Zero `(p,q)` tensor on `Q^n`.
    pub fn zero_on(n: usize, p: usize, q: usize) -> Self {
        TensorField::zero(n, n, n, p, q)
    }

    pub fn from_terms(
        nvars: usize,
        contra_dim: usize,
        co_dim: usize,
        (p, q): (usize, usize),
        terms: impl IntoIterator<Item = ((Blade, Blade), Poly)>,
    ) -> Result<Self> {
        let mut t = TensorField::zero(nvars, contra_dim, co_dim, p, q);
        for ((i, j), c) in terms {
            if blade_degree(i) != p || blade_degree(j) != q {
                return Err(Error::degree(format!(
                    "term of type ({}, {}) in a ({p}, {q}) tensor",
                    blade_degree(i),
                    blade_degree(j)
                )));
            }
            if i >> contra_dim != 0 || j >> co_dim != 0 {
                return Err(Error::arity("tensor index out of range"));
            }
            if c.nvars() != nvars {
                return Err(Error::arity("tensor coefficient in the wrong ring"));
            }
            t.add_term((i, j), c);
        }
        Ok(t)
    }

    pub fn add_term(&mut self, key: (Blade, Blade), c: Poly) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(key, s);
        }
    }

    pub fn from_multivector(m: &MultiVectorField) -> Self {
        let n = m.dim();
        let mut t = TensorField::zero_on(n, m.degree(), 0);
        for (b, c) in m.graded().terms() {
            t.add_term((b, 0), c.clone());
        }
        t
    }

    pub fn from_form(w: &DifferentialForm) -> Self {
        let n = w.dim();
        let mut t = TensorField::zero_on(n, 0, w.degree());
        for (b, c) in w.graded().terms() {
            t.add_term((0, b), c.clone());
        }
        t
    }

    /// Contravariant part of a `(p,0)` tensor.
    pub fn contravariant(&self) -> Result<Graded> {
        if self.q != 0 {
            return Err(Error::degree("tensor has covariant slots"));
        }
        Graded::from_terms(
            self.nvars,
            self.contra_dim,
            self.p,
            self.terms.iter().map(|((i, _), c)| (*i, c.clone())),
        )
    }

    /// Covariant part of a `(0,q)` tensor.
    pub fn covariant(&self) -> Result<Graded> {
        if self.p != 0 {
            return Err(Error::degree("tensor has contravariant slots"));
        }
        Graded::from_terms(
            self.nvars,
            self.co_dim,
            self.q,
            self.terms.iter().map(|((_, j), c)| (*j, c.clone())),
        )
    }

    pub fn to_multivector(&self) -> Result<MultiVectorField> {
        MultiVectorField::from_graded(self.contravariant()?)
    }

    pub fn to_form(&self) -> Result<DifferentialForm> {
        DifferentialForm::from_graded(self.covariant()?)
    }

    /// Tensor product of a contravariant and a covariant element.
    pub fn product(a: &Graded, b: &Graded) -> Result<Self> {
        if a.nvars() != b.nvars() {
            return Err(Error::arity("tensor factors in different rings"));
        }
        let mut t = TensorField::zero(a.nvars(), a.ngen(), b.ngen(), a.degree(), b.degree());
        for (i, c) in a.terms() {
            for (j, d) in b.terms() {
                t.add_term((i, j), c * d);
            }
        }
        Ok(t)
    }

    /// `(1,1)` tensor with matrix `m`: entry `(i,j)` is the coefficient of
    /// `e_i ⊗ dx_j`, so the tensor maps `∂_j` to column `j`.
    pub fn from_matrix(m: &PolyMatrix) -> Self {
        let mut t = TensorField::zero(m.nvars(), m.rows(), m.cols(), 1, 1);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                t.add_term((1 << i, 1 << j), m.get(i, j).clone());
            }
        }
        t
    }

    pub fn to_matrix(&self) -> Result<PolyMatrix> {
        if (self.p, self.q) != (1, 1) {
            return Err(Error::degree("matrix form needs a (1,1) tensor"));
        }
        let mut m = PolyMatrix::zeros(self.nvars, self.contra_dim, self.co_dim);
        for ((i, j), c) in &self.terms {
            m.set(i.trailing_zeros() as usize, j.trailing_zeros() as usize, c.clone());
        }
        Ok(m)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn contra_dim(&self) -> usize {
        self.contra_dim
    }

    pub fn co_dim(&self) -> usize {
        self.co_dim
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((Blade, Blade), &Poly)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_shape(&self, other: &TensorField) -> Result<()> {
        if (self.nvars, self.contra_dim, self.co_dim) != (other.nvars, other.contra_dim, other.co_dim) {
            return Err(Error::arity("tensors over different spaces"));
        }
        if (self.p, self.q) != (other.p, other.q) {
            return Err(Error::degree(format!(
                "tensors of type ({}, {}) and ({}, {})",
                self.p, self.q, other.p, other.q
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TensorField) -> Result<TensorField> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &TensorField) -> Result<TensorField> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> TensorField {
        self.map_coeffs(self.nvars, |c| -c)
    }

    pub fn scale(&self, s: &Scalar) -> TensorField {
        self.map_coeffs(self.nvars, |c| c.scale(s))
    }

    pub fn map_coeffs(&self, nvars: usize, f: impl Fn(&Poly) -> Poly) -> TensorField {
        let mut out = TensorField::zero(nvars, self.contra_dim, self.co_dim, self.p, self.q);
        for (k, c) in self.terms() {
            out.add_term(k, f(c));
        }
        out
    }

    pub fn compose(&self, subs: &[Poly], target_nvars: usize) -> TensorField {
        self.map_coeffs(target_nvars, |c| c.compose(subs, target_nvars))
    }

    pub fn eval(&self, point: &[Scalar]) -> TensorField {
        self.map_coeffs(0, |c| Poly::constant(0, c.eval(point)))
    }

    /// Changes frames: contravariant generator `a` goes to column `a` of
    /// `contra` and covariant generator `b` goes to row `b` of `co`.
    /// Coefficients must already live in the ring of the matrices.
    pub fn transform(&self, contra: &PolyMatrix, co: &PolyMatrix) -> Result<TensorField> {
        if contra.cols() != self.contra_dim || co.rows() != self.co_dim {
            return Err(Error::arity(format!(
                "frame change of shape {}x{} / {}x{} for a tensor over ({}, {})",
                contra.rows(),
                contra.cols(),
                co.rows(),
                co.cols(),
                self.contra_dim,
                self.co_dim
            )));
        }
        if contra.nvars() != self.nvars || co.nvars() != self.nvars {
            return Err(Error::arity("frame change in the wrong ring"));
        }
        let n = self.nvars;
        let up: Vec<Graded> = (0..contra.cols())
            .map(|a| Graded::linear(n, &contra.column(a)))
            .collect();
        let down: Vec<Graded> = (0..co.rows()).map(|b| Graded::linear(n, &co.row(b))).collect();
        let mut out = TensorField::zero(n, contra.rows(), co.cols(), self.p, self.q);
        for ((i, j), c) in self.terms() {
            let mut a = Graded::function(c.clone(), contra.rows());
            for k in blade_indices(i) {
                a = a.wedge(&up[k])?;
            }
            if a.is_zero() {
                continue;
            }
            let mut b = Graded::function(Poly::one(n), co.cols());
            for k in blade_indices(j) {
                b = b.wedge(&down[k])?;
            }
            out = out.checked_add(&TensorField::product(&a, &b)?)?;
        }
        Ok(out)
    }

    /// Value of a pointwise tensor on `p` covectors and `q` vectors.
    pub fn pair(&self, covectors: &[Vec<Scalar>], vectors: &[Vec<Scalar>]) -> Result<Scalar> {
        if self.nvars != 0 {
            return Err(Error::arity("pairing needs a pointwise tensor"));
        }
        if covectors.len() != self.p || vectors.len() != self.q {
            return Err(Error::degree("wrong number of tensor arguments"));
        }
        let mut cov_minors: BTreeMap<Blade, Scalar> = BTreeMap::new();
        let mut vec_minors: BTreeMap<Blade, Scalar> = BTreeMap::new();
        let mut acc = Scalar::default();
        for ((i, j), c) in self.terms() {
            let a = cov_minors.entry(i).or_insert_with(|| blade_minor(i, covectors));
            if a.is_zero() {
                continue;
            }
            let b = vec_minors.entry(j).or_insert_with(|| blade_minor(j, vectors));
            acc += c.as_constant().expect("pointwise coefficient") * &*a * &*b;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn matrix_round_trip() {
        let x = Poly::vars(2);
        let m = PolyMatrix::from_rows(
            2,
            vec![vec![x[0].clone(), Poly::zero(2)], vec![Poly::one(2), x[1].clone()]],
            2,
        )
        .unwrap();
        assert_eq!(TensorField::from_matrix(&m).to_matrix().unwrap(), m);
    }

    #[test]
    fn transform_by_identity_is_trivial() {
        let x = Poly::vars(2);
        let v = MultiVectorField::vector(&[x[1].clone(), x[0].clone()]);
        let t = TensorField::from_multivector(&v);
        let id = PolyMatrix::identity(2, 2);
        assert_eq!(t.transform(&id, &id).unwrap(), t);
    }

    #[test]
    fn pair_on_vectors() {
        // N = [[1,2],[3,4]] as a (1,1) tensor; N(∂_1, dx_2) = 3
        let m = crate::exact::Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]], 2).unwrap();
        let t = TensorField::from_matrix(&PolyMatrix::from_constant(0, &m));
        let v = t.pair(&[vec![int(0), int(1)]], &[vec![int(1), int(0)]]).unwrap();
        assert_eq!(v, int(3));
    }
}
