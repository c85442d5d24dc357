use std::sync::Arc;

use super::PolyGroupoid;
use crate::error::{Error, Result};
use crate::exact::{linsolve, LinSolve, Matrix, RationalSampler, Scalar};

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl PolyGroupoid {
    fn check_point(&self, g: &[Scalar], xi: &[Scalar]) -> Result<()> {
        if g.len() != self.dim_g() || xi.len() != self.dim_g() {
            return Err(Error::arity("point or covector of the wrong dimension"));
        }
        Ok(())
    }

    /// Target of a covector `ξ ∈ T*_g G` in the cotangent groupoid, as a
    /// covector on `A` in the splitting frame: `ξ(→e_i(g))`.
    pub fn cotangent_target(&self, g: &[Scalar], xi: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_point(g, xi)?;
        let r = self.right_frame().eval(g)?;
        Ok((0..self.rank()).map(|i| dot(xi, &r.column(i))).collect())
    }

    /// Source of `ξ`: `ξ(←e_i(g))`.
    pub fn cotangent_source(&self, g: &[Scalar], xi: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_point(g, xi)?;
        let l = self.left_frame().eval(g)?;
        Ok((0..self.rank()).map(|i| dot(xi, &l.column(i))).collect())
    }

    /// Product `ξ · η ∈ T*_{gh} G`, defined by
    /// `(ξ·η)(dm(X, Y)) = ξ(X) + η(Y)` on composable tangent pairs.
    pub fn cotangent_multiply(&self, g: &[Scalar], h: &[Scalar], xi: &[Scalar], eta: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_point(g, xi)?;
        self.check_point(h, eta)?;
        self.multiply(g, h)?;
        if self.cotangent_source(g, xi)? != self.cotangent_target(h, eta)? {
            return Err(Error::Composability(
                "source of the first covector differs from target of the second".into(),
            ));
        }
        let n = self.dim_g();
        let dm = self.d_mult_at(g, h)?;
        let basis = self.composable_tangent_basis(g, h)?;
        let mut rows = Vec::with_capacity(basis.len());
        let mut rhs = Vec::with_capacity(basis.len());
        for v in &basis {
            rows.push(dm.mul_vec(v)?);
            rhs.push(dot(xi, &v[..n]) + dot(eta, &v[n..]));
        }
        let a = Matrix::from_rows(rows, n)?;
        match linsolve(&a, &rhs)? {
            LinSolve::Solved(s) if s.kernel.is_empty() => Ok(s.particular),
            LinSolve::Solved(_) => Err(Error::Structure(
                "multiplication is not a submersion at this pair".into(),
            )),
            LinSolve::NoSolution { .. } => Err(Error::Structure("covectors do not define a product".into())),
        }
    }

    /// Vectors `(X, Y)` spanning composable tangent pairs at `(g, h)`.
    pub fn composable_pairs(&self, g: &[Scalar], h: &[Scalar]) -> Result<Vec<(Vec<Scalar>, Vec<Scalar>)>> {
        let n = self.dim_g();
        Ok(self
            .composable_tangent_basis(g, h)?
            .into_iter()
            .map(|v| (v[..n].to_vec(), v[n..].to_vec()))
            .collect())
    }

    /// Basis of composable covector pairs `(ξ, η)` at `(g, h)`:
    /// `s(ξ) = t(η)`.
    pub fn composable_covector_pairs(&self, g: &[Scalar], h: &[Scalar]) -> Result<Vec<(Vec<Scalar>, Vec<Scalar>)>> {
        let n = self.dim_g();
        let l = self.left_frame().eval(g)?;
        let r = self.right_frame().eval(h)?;
        let mut rows = Vec::new();
        for i in 0..self.rank() {
            let mut row = l.column(i);
            row.extend(r.column(i).into_iter().map(|v| -v));
            rows.push(row);
        }
        let m = Matrix::from_rows(rows, 2 * n)?;
        Ok(m.kernel()
            .into_iter()
            .map(|v| (v[..n].to_vec(), v[n..].to_vec()))
            .collect())
    }
}

/// A composable pair of `Γ`-generators over a composable pair `(g, h)`.
#[derive(Debug)]
pub struct GammaFiber {
    pub param: Vec<Scalar>,
    pub g: Vec<Scalar>,
    pub h: Vec<Scalar>,
    pub gh: Vec<Scalar>,
    pub unit: Vec<Scalar>,
    /// `(X, Y, X·Y, 1_{s X})` for a basis of composable tangent pairs.
    pub vectors: Vec<[Vec<Scalar>; 4]>,
    /// `(ξ, η, ξ·η, 1_{s ξ})` for a basis of composable covector pairs.
    pub covectors: Vec<[Vec<Scalar>; 4]>,
}

fn gamma_fiber(gp: &PolyGroupoid, param: Vec<Scalar>) -> Result<GammaFiber> {
    let n = gp.dim_g();
    let m = gp.dim_m();
    let gh2 = gp.comp_param().eval(&param)?;
    let (g, h) = (gh2[..n].to_vec(), gh2[n..].to_vec());
    let gh = gp.multiply(&g, &h)?;
    let sg = gp.source().eval(&g)?;
    let unit = gp.unit().eval(&sg)?;
    let dm = gp.d_mult_at(&g, &h)?;
    let ds = gp.d_source().eval(&g)?;
    let du = gp.d_unit().eval(&sg)?;
    let to_a = gp.splitting_inverse()?.row_range(m..n).eval(&sg)?;
    let mut vectors = Vec::new();
    for (x, y) in gp.composable_pairs(&g, &h)? {
        let mut xy = x.clone();
        xy.extend_from_slice(&y);
        let prod = dm.mul_vec(&xy)?;
        let base = du.mul_vec(&ds.mul_vec(&x)?)?;
        vectors.push([x, y, prod, base]);
    }
    let mut covectors = Vec::new();
    for (xi, eta) in gp.composable_covector_pairs(&g, &h)? {
        let prod = gp.cotangent_multiply(&g, &h, &xi, &eta)?;
        let alpha = gp.cotangent_source(&g, &xi)?;
        let base = to_a.transpose().mul_vec(&alpha)?;
        covectors.push([xi, eta, prod, base]);
    }
    Ok(GammaFiber {
        param,
        g,
        h,
        gh,
        unit,
        vectors,
        covectors,
    })
}

impl PolyGroupoid {
    /// Fibers of `Γ` over `samples` seeded composable pairs, computed once
    /// per `(seed, samples)`.
    pub fn gamma_fibers(&self, seed: u64, samples: usize) -> Result<Arc<Vec<GammaFiber>>> {
        if let Some(f) = self.gamma_cache.lock().expect("cache lock").get(&(seed, samples)) {
            return Ok(f.clone());
        }
        let mut rng = RationalSampler::new(seed);
        let fibers = (0..samples)
            .map(|_| gamma_fiber(self, rng.point(self.comp_param().domain())))
            .collect::<Result<Vec<_>>>()?;
        let fibers = Arc::new(fibers);
        self.gamma_cache
            .lock()
            .expect("cache lock")
            .insert((seed, samples), fibers.clone());
        Ok(fibers)
    }
}

#[cfg(test)]
mod tests {
    use crate::catalog;
    use crate::exact::int;

    #[test]
    fn pair_cotangent_groupoid() {
        let g = catalog::pair(1);
        let a = [int(1), int(2)];
        let b = [int(2), int(5)];
        let xi = [int(3), int(7)];
        assert_eq!(g.cotangent_target(&a, &xi).unwrap(), vec![int(3)]);
        assert_eq!(g.cotangent_source(&a, &xi).unwrap(), vec![int(-7)]);
        let eta = [int(-7), int(4)];
        let prod = g.cotangent_multiply(&a, &b, &xi, &eta).unwrap();
        assert_eq!(prod, vec![int(3), int(4)]);
        let bad = [int(1), int(4)];
        assert!(g.cotangent_multiply(&a, &b, &xi, &bad).is_err());
    }
}
