use num_traits::Zero;

use super::linalg::Matrix;
use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Polynomial map `Q^domain -> Q^codomain`, one polynomial per output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    domain: usize,
    comps: Vec<Poly>,
}

impl PolyMap {
    pub fn new(domain: usize, comps: Vec<Poly>) -> Result<Self> {
        if let Some((i, p)) = comps.iter().enumerate().find(|(_, p)| p.nvars() != domain) {
            return Err(Error::arity(format!(
                "component {i} has {} variables, map domain is {domain}",
                p.nvars()
            )));
        }
        Ok(PolyMap { domain, comps })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap {
            domain: n,
            comps: Poly::vars(n),
        }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if inner.codomain() != self.domain {
            return Err(Error::arity(format!(
                "cannot compose: inner map lands in dimension {}, outer expects {}",
                inner.codomain(),
                self.domain
            )));
        }
        Ok(PolyMap {
            domain: inner.domain,
            comps: self
                .comps
                .iter()
                .map(|p| p.compose(&inner.comps, inner.domain))
                .collect(),
        })
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        if point.len() != self.domain {
            return Err(Error::arity(format!(
                "point has {} coordinates, map domain is {}",
                point.len(),
                self.domain
            )));
        }
        Ok(self.comps.iter().map(|p| p.eval(point)).collect())
    }

    /// Jacobian matrix `∂f_i/∂x_j` (codomain × domain).
    pub fn jacobian(&self) -> PolyMatrix {
        let mut j = PolyMatrix::zeros(self.domain, self.codomain(), self.domain);
        for (i, p) in self.comps.iter().enumerate() {
            for k in 0..self.domain {
                j.set(i, k, p.derivative(k));
            }
        }
        j
    }

    pub fn jacobian_at(&self, point: &[Scalar]) -> Result<Matrix> {
        self.jacobian().eval(point)
    }

    /// Components `range` of the map.
    pub fn slice(&self, range: std::ops::Range<usize>) -> PolyMap {
        PolyMap {
            domain: self.domain,
            comps: self.comps[range].to_vec(),
        }
    }

    /// `x -> (self(x), other(x))`.
    pub fn pair(&self, other: &PolyMap) -> Result<PolyMap> {
        if self.domain != other.domain {
            return Err(Error::arity("paired maps need a common domain"));
        }
        let mut comps = self.comps.clone();
        comps.extend(other.comps.iter().cloned());
        Ok(PolyMap {
            domain: self.domain,
            comps,
        })
    }

    /// `(x, y) -> (self(x), other(y))`.
    pub fn product(&self, other: &PolyMap) -> PolyMap {
        let n = self.domain + other.domain;
        let comps = self
            .comps
            .iter()
            .map(|p| p.embed(n, 0))
            .chain(other.comps.iter().map(|p| p.embed(n, self.domain)))
            .collect();
        PolyMap { domain: n, comps }
    }

    /// The map precomposed with the projection onto variables
    /// `offset..offset+domain` of a `nvars`-dimensional space.
    pub fn embed(&self, nvars: usize, offset: usize) -> PolyMap {
        PolyMap {
            domain: nvars,
            comps: self.comps.iter().map(|p| p.embed(nvars, offset)).collect(),
        }
    }
}

/// Matrix with polynomial entries, all in the same ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            nvars,
            rows,
            cols,
            data: vec![Poly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let mut m = PolyMatrix::zeros(nvars, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(nvars));
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly>>, cols: usize) -> Result<Self> {
        let mut m = PolyMatrix::zeros(nvars, rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::arity(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, p) in r.into_iter().enumerate() {
                if p.nvars() != nvars {
                    return Err(Error::arity(format!(
                        "entry ({i},{j}) has {} variables, expected {nvars}",
                        p.nvars()
                    )));
                }
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    pub fn from_constant(nvars: usize, m: &Matrix) -> Self {
        let mut out = PolyMatrix::zeros(nvars, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, Poly::constant(nvars, m.get(i, j).clone()));
            }
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert_eq!(p.nvars(), self.nvars, "entry in wrong ring");
        self.data[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.nvars, self.rows, range.len());
        for i in 0..self.rows {
            for (k, j) in range.clone().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    /// Rows `range` as a new matrix.
    pub fn row_range(&self, range: std::ops::Range<usize>) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.nvars, range.len(), self.cols);
        for (k, i) in range.enumerate() {
            for j in 0..self.cols {
                out.set(k, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.nvars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows || self.nvars != other.nvars {
            return Err(Error::arity(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.nvars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(self.nvars);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.cols {
            return Err(Error::arity("vector length does not match matrix width"));
        }
        Ok((0..self.rows)
            .map(|i| {
                v.iter()
                    .enumerate()
                    .fold(Poly::zero(self.nvars), |acc, (k, x)| &acc + &(self.get(i, k) * x))
            })
            .collect())
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &PolyMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<PolyMatrix> {
        if (self.rows, self.cols, self.nvars) != (other.rows, other.cols, other.nvars) {
            return Err(Error::arity("matrix shapes differ"));
        }
        Ok(PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| -p).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    /// Substitutes `subs` into every entry.
    pub fn compose(&self, subs: &[Poly], target_nvars: usize) -> PolyMatrix {
        PolyMatrix {
            nvars: target_nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.compose(subs, target_nvars)).collect(),
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Matrix> {
        if point.len() != self.nvars {
            return Err(Error::arity("evaluation point has wrong arity"));
        }
        let mut m = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).eval(point));
            }
        }
        Ok(m)
    }

    /// Determinant by cofactor expansion; intended for the small square
    /// matrices that occur as splittings and Jacobians.
    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::arity("determinant of a non-square matrix"));
        }
        let idx: Vec<usize> = (0..self.cols).collect();
        Ok(self.minor_det(0, &idx))
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> Poly {
        if cols.is_empty() {
            return Poly::one(self.nvars);
        }
        let mut acc = Poly::zero(self.nvars);
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a * &self.minor_det(row + 1, &rest);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Polynomial inverse, available when the determinant is a nonzero
    /// constant.
    pub fn inverse_unimodular(&self) -> Option<PolyMatrix> {
        let det = self.det().ok()?.as_constant()?;
        if det.is_zero() {
            return None;
        }
        let n = self.rows;
        let inv_det = det.recip();
        let mut out = PolyMatrix::zeros(self.nvars, n, n);
        for i in 0..n {
            for j in 0..n {
                let sub = self.delete(i, j);
                let cof = sub.det().ok()?.scale(&inv_det);
                let cof = if (i + j) % 2 == 0 { cof } else { -cof };
                out.set(j, i, cof);
            }
        }
        Some(out)
    }

    fn delete(&self, r: usize, c: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.nvars, self.rows - 1, self.cols - 1);
        for (ii, i) in (0..self.rows).filter(|&i| i != r).enumerate() {
            for (jj, j) in (0..self.cols).filter(|&j| j != c).enumerate() {
                out.set(ii, jj, self.get(i, j).clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn jacobian_of_product_map() {
        let x = Poly::vars(2);
        let f = PolyMap::new(2, vec![&x[0] * &x[1], x[0].clone()]).unwrap();
        let j = f.jacobian();
        assert_eq!(j.get(0, 0), &x[1]);
        assert_eq!(j.get(0, 1), &x[0]);
        assert_eq!(j.get(1, 0), &Poly::one(2));
        assert!(j.get(1, 1).is_zero());
    }

    #[test]
    fn compose_maps() {
        let x = Poly::vars(1);
        let f = PolyMap::new(1, vec![&x[0] * &x[0]]).unwrap();
        let g = PolyMap::new(1, vec![&x[0] + &Poly::one(1)]).unwrap();
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg.eval(&[int(2)]).unwrap(), vec![int(9)]);
    }

    #[test]
    fn unimodular_inverse() {
        let x = Poly::vars(1);
        let m = PolyMatrix::from_rows(
            1,
            vec![vec![Poly::one(1), x[0].clone()], vec![Poly::zero(1), Poly::one(1)]],
            2,
        )
        .unwrap();
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), PolyMatrix::identity(1, 2));
        let sing = PolyMatrix::from_rows(
            1,
            vec![vec![x[0].clone(), Poly::zero(1)], vec![Poly::zero(1), Poly::one(1)]],
            2,
        )
        .unwrap();
        assert!(sing.inverse_unimodular().is_none());
    }

    #[test]
    fn mismatched_compose_is_arity_error() {
        let f = PolyMap::identity(2);
        let g = PolyMap::identity(3);
        assert!(matches!(f.compose(&g), Err(Error::Arity(_))));
    }
}
