use num_traits::{One, Zero};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::arity(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_columns(columns: &[Vec<Scalar>], rows: usize) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::arity(format!(
                    "column {j} has {} entries, expected {rows}",
                    c.len()
                )));
            }
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::arity(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::arity(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::arity("hstack of matrices with different heights"));
        }
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Determinant by Gaussian elimination; `None` unless square.
    pub fn det(&self) -> Option<Scalar> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Some(Scalar::zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &pivot;
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Some(det)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n)).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Solution set `particular + span(kernel)` of a consistent linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub rank: usize,
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinSolve {
    Solved(AffineSolution),
    NoSolution { rank: usize },
}

/// Solves `A x = b` exactly.
pub fn linsolve(a: &Matrix, b: &[Scalar]) -> Result<LinSolve> {
    if b.len() != a.rows() {
        return Err(Error::arity(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let col = Matrix::from_columns(&[b.to_vec()], a.rows())?;
    let (r, pivots) = a.hstack(&col)?.rref();
    let n = a.cols();
    if pivots.last() == Some(&n) {
        return Ok(LinSolve::NoSolution { rank: pivots.len() - 1 });
    }
    let mut particular = vec![Scalar::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        particular[pc] = r.get(row, n).clone();
    }
    Ok(LinSolve::Solved(AffineSolution {
        rank: pivots.len(),
        particular,
        kernel: a.kernel(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[2, 1], &[7, 4]]).det(), Some(int(1)));
        assert_eq!(m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]).det(), Some(int(-3)));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), Some(int(0)));
        assert_eq!(m(&[&[1, 2]]).det(), None);
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect(), cols).unwrap()
    }

    #[test]
    fn solves_unique_system() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let LinSolve::Solved(s) = linsolve(&a, &[int(3), int(5)]).unwrap() else {
            panic!("expected a solution");
        };
        assert_eq!(s.particular, vec![rat(4, 5), rat(7, 5)]);
        assert!(s.kernel.is_empty());
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn reports_inconsistency() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(
            linsolve(&a, &[int(1), int(3)]).unwrap(),
            LinSolve::NoSolution { rank: 1 }
        );
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(a.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::from_rows(vec![vec![int(1)], vec![]], 1).is_err());
    }
}
