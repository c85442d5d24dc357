//! Lie groupoids with polynomial structure maps, their Lie algebroids,
//! left/right translation of algebroid data and the cotangent groupoid.

mod algebroid;
mod cotangent;
mod oracle;
mod section;
mod translate;
mod validate;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use algebroid::LieAlgebroidData;
pub use cotangent::GammaFiber;
pub(crate) use oracle::combinations;
pub use oracle::{coisotropy_oracle, OracleShape};
pub use section::AlgebroidSection;
pub use validate::AxiomViolation;

use crate::error::{Error, Result};
use crate::exact::{linsolve, LinSolve, Matrix, Poly, PolyMap, PolyMatrix, Scalar};

/// Raw description of a groupoid `G ⇉ M` before validation.
///
/// `comp_param` parametrises composable pairs `(g, h)` with `s(g) = t(h)` by
/// an affine space `P`, and `mult` gives `gh` on `P`. `comp_proj` is a left
/// inverse of `comp_param` defined on all of `G × G`; it extends the
/// multiplication to a polynomial map on `G × G`. `triple_param` parametrises
/// composable triples. `splitting` is a matrix of vector fields along the
/// units whose first `dim_m` columns are the unit's differential and whose
/// remaining columns frame the algebroid `A ⊂ ker ds`.
#[derive(Clone, Debug)]
pub struct GroupoidSpec {
    pub name: String,
    pub dim_g: usize,
    pub dim_m: usize,
    pub source: PolyMap,
    pub target: PolyMap,
    pub unit: PolyMap,
    pub inverse: PolyMap,
    pub comp_param: PolyMap,
    pub mult: PolyMap,
    pub comp_proj: Option<PolyMap>,
    pub triple_param: Option<PolyMap>,
    pub splitting: PolyMatrix,
}

type FiberCache = Mutex<HashMap<(u64, usize), Arc<Vec<GammaFiber>>>>;

/// A polynomial Lie groupoid together with the frames derived from it.
#[derive(Debug)]
pub struct PolyGroupoid {
    spec: GroupoidSpec,
    comp_proj: PolyMap,
    triple_param: PolyMap,
    /// `M̃ = mult ∘ comp_proj` on `G × G`.
    mult_ext: PolyMap,
    splitting_inv: std::result::Result<PolyMatrix, String>,
    right_frame: PolyMatrix,
    left_frame: PolyMatrix,
    d_unit: PolyMatrix,
    d_source: PolyMatrix,
    d_target: PolyMatrix,
    algebroid: OnceLock<std::result::Result<LieAlgebroidData, Error>>,
    gamma_cache: FiberCache,
}

fn expect_shape(what: &str, m: &PolyMap, domain: usize, codomain: usize) -> Result<()> {
    if m.domain() != domain || m.codomain() != codomain {
        return Err(Error::arity(format!(
            "{what} must map Q^{domain} to Q^{codomain}, got Q^{} to Q^{}",
            m.domain(),
            m.codomain()
        )));
    }
    Ok(())
}

/// Left inverse of an affine-linear map, when it is injective.
fn affine_left_inverse(f: &PolyMap) -> Result<PolyMap> {
    let n = f.domain();
    let m = f.codomain();
    if f.comps().iter().any(|p| p.degree().unwrap_or(0) > 1) {
        return Err(Error::Structure(
            "comp_proj must be given when comp_param is not affine-linear".into(),
        ));
    }
    let zero = vec![Scalar::default(); n];
    let offset = f.eval(&zero)?;
    let a = f.jacobian_at(&zero)?;
    if a.rank() != n {
        return Err(Error::Structure("comp_param is not injective".into()));
    }
    // rows of the left inverse solve Aᵀ rᵢ = eᵢ
    let at = a.transpose();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Scalar::default(); n];
        e[i] = Scalar::from_integer(1.into());
        match linsolve(&at, &e)? {
            LinSolve::Solved(s) => rows.push(s.particular),
            LinSolve::NoSolution { .. } => return Err(Error::Structure("comp_param has no left inverse".into())),
        }
    }
    let x = Poly::vars(m);
    let comps = rows
        .iter()
        .map(|r| {
            r.iter().enumerate().fold(Poly::zero(m), |acc, (j, c)| {
                &acc + &(&x[j] - &Poly::constant(m, offset[j].clone())).scale(c)
            })
        })
        .collect();
    PolyMap::new(m, comps)
}

impl PolyGroupoid {
    pub fn new(spec: GroupoidSpec) -> Result<Self> {
        let (g, m) = (spec.dim_g, spec.dim_m);
        if m > g {
            return Err(Error::arity("base dimension exceeds arrow dimension"));
        }
        expect_shape("source", &spec.source, g, m)?;
        expect_shape("target", &spec.target, g, m)?;
        expect_shape("unit", &spec.unit, m, g)?;
        expect_shape("inverse", &spec.inverse, g, g)?;
        let p = spec.comp_param.domain();
        expect_shape("comp_param", &spec.comp_param, p, 2 * g)?;
        expect_shape("mult", &spec.mult, p, g)?;
        if spec.splitting.rows() != g || spec.splitting.cols() != g || spec.splitting.nvars() != m {
            return Err(Error::arity(format!(
                "splitting must be a {g}x{g} matrix over {m} variables"
            )));
        }
        let comp_proj = match &spec.comp_proj {
            Some(cp) => {
                expect_shape("comp_proj", cp, 2 * g, p)?;
                cp.clone()
            }
            None => affine_left_inverse(&spec.comp_param)?,
        };
        if comp_proj.compose(&spec.comp_param)? != PolyMap::identity(p) {
            return Err(Error::Structure("comp_proj is not a left inverse of comp_param".into()));
        }
        let triple_param = match &spec.triple_param {
            Some(tp) => {
                expect_shape("triple_param", tp, tp.domain(), 3 * g)?;
                tp.clone()
            }
            None if m == 0 => PolyMap::identity(3 * g),
            None => {
                return Err(Error::Structure(
                    "triple_param is required when the base is not a point".into(),
                ))
            }
        };
        let mult_ext = spec.mult.compose(&comp_proj)?;
        let d_unit = spec.unit.jacobian();
        let d_source = spec.source.jacobian();
        let d_target = spec.target.jacobian();
        let splitting_inv = Self::check_splitting(&spec, &d_unit);
        let rank = g - m;
        let frame = spec.splitting.columns(m..g);

        // right frame: ∂₁M̃(1_{t(g)}, g) · a(t(g))
        let gvars = Poly::vars(g);
        let unit_t = spec.unit.compose(&spec.target)?;
        let mut subs: Vec<Poly> = unit_t.comps().to_vec();
        subs.extend(gvars.iter().cloned());
        let jm = mult_ext.jacobian();
        let j1 = jm.columns(0..g).compose(&subs, g);
        let frame_t = frame.compose(spec.target.comps(), g);
        let right_frame = j1.mul(&frame_t)?;

        // left frame: -∂₂M̃(g, 1_{s(g)}) · d inv(1_{s(g)}) · a(s(g))
        let unit_s = spec.unit.compose(&spec.source)?;
        let mut subs: Vec<Poly> = gvars.clone();
        subs.extend(unit_s.comps().iter().cloned());
        let j2 = jm.columns(g..2 * g).compose(&subs, g);
        let dinv = spec.inverse.jacobian().compose(unit_s.comps(), g);
        let frame_s = frame.compose(spec.source.comps(), g);
        let left_frame = j2.mul(&dinv)?.mul(&frame_s)?.neg();
        debug_assert_eq!(right_frame.cols(), rank);

        Ok(PolyGroupoid {
            spec,
            comp_proj,
            triple_param,
            mult_ext,
            splitting_inv,
            right_frame,
            left_frame,
            d_unit,
            d_source,
            d_target,
            algebroid: OnceLock::new(),
            gamma_cache: Mutex::default(),
        })
    }

    fn check_splitting(spec: &GroupoidSpec, d_unit: &PolyMatrix) -> std::result::Result<PolyMatrix, String> {
        let (g, m) = (spec.dim_g, spec.dim_m);
        let s = &spec.splitting;
        if s.columns(0..m) != *d_unit {
            return Err("the first columns of the splitting must equal the unit's differential".into());
        }
        let ds_at_units = spec.source.jacobian().compose(spec.unit.comps(), m);
        let a_part = s.columns(m..g);
        if !ds_at_units.mul(&a_part).map_err(|e| e.to_string())?.is_zero() {
            return Err("splitting columns beyond the base are not tangent to the source fibres".into());
        }
        s.inverse_unimodular()
            .ok_or_else(|| "splitting determinant is not a nonzero constant".to_string())
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn spec(&self) -> &GroupoidSpec {
        &self.spec
    }

    pub fn dim_g(&self) -> usize {
        self.spec.dim_g
    }

    pub fn dim_m(&self) -> usize {
        self.spec.dim_m
    }

    /// Rank of the Lie algebroid.
    pub fn rank(&self) -> usize {
        self.spec.dim_g - self.spec.dim_m
    }

    pub fn source(&self) -> &PolyMap {
        &self.spec.source
    }

    pub fn target(&self) -> &PolyMap {
        &self.spec.target
    }

    pub fn unit(&self) -> &PolyMap {
        &self.spec.unit
    }

    pub fn inverse(&self) -> &PolyMap {
        &self.spec.inverse
    }

    pub fn comp_param(&self) -> &PolyMap {
        &self.spec.comp_param
    }

    pub fn mult(&self) -> &PolyMap {
        &self.spec.mult
    }

    pub fn comp_proj(&self) -> &PolyMap {
        &self.comp_proj
    }

    pub fn triple_param(&self) -> &PolyMap {
        &self.triple_param
    }

    /// Polynomial extension of the multiplication to all of `G × G`.
    pub fn mult_ext(&self) -> &PolyMap {
        &self.mult_ext
    }

    pub fn d_unit(&self) -> &PolyMatrix {
        &self.d_unit
    }

    pub fn d_source(&self) -> &PolyMatrix {
        &self.d_source
    }

    pub fn d_target(&self) -> &PolyMatrix {
        &self.d_target
    }

    /// Columns are the right-invariant vector fields of the frame of `A`.
    pub fn right_frame(&self) -> &PolyMatrix {
        &self.right_frame
    }

    /// Columns are the left-invariant vector fields of the frame of `A`.
    pub fn left_frame(&self) -> &PolyMatrix {
        &self.left_frame
    }

    pub fn splitting(&self) -> &PolyMatrix {
        &self.spec.splitting
    }

    pub fn splitting_inverse(&self) -> Result<&PolyMatrix> {
        self.splitting_inv.as_ref().map_err(|e| Error::Splitting(e.clone()))
    }

    /// Product of a composable pair given as a point of `G × G`.
    pub fn multiply(&self, g: &[Scalar], h: &[Scalar]) -> Result<Vec<Scalar>> {
        let sg = self.spec.source.eval(g)?;
        let th = self.spec.target.eval(h)?;
        if sg != th {
            return Err(Error::Composability("s(g) differs from t(h)".into()));
        }
        let mut gh = g.to_vec();
        gh.extend_from_slice(h);
        self.mult_ext.eval(&gh)
    }

    /// The value of the multiplication's differential at a composable pair.
    pub fn d_mult_at(&self, g: &[Scalar], h: &[Scalar]) -> Result<Matrix> {
        let mut gh = g.to_vec();
        gh.extend_from_slice(h);
        self.mult_ext.jacobian_at(&gh)
    }

    /// Basis of `T_{(g,h)} G^{(2)} = {(X, Y) : ds X = dt Y}`.
    pub fn composable_tangent_basis(&self, g: &[Scalar], h: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
        let ds = self.d_source.eval(g)?;
        let dt = self.d_target.eval(h)?;
        let mut neg = dt.clone();
        for i in 0..neg.rows() {
            for j in 0..neg.cols() {
                neg.set(i, j, -dt.get(i, j).clone());
            }
        }
        Ok(ds.hstack(&neg)?.kernel())
    }

    pub fn is_group(&self) -> bool {
        self.spec.dim_m == 0
    }
}

#[cfg(test)]
mod tests {
    use crate::catalog;
    use crate::exact::int;

    #[test]
    fn pair_frames() {
        let g = catalog::pair(1);
        let r = g.right_frame();
        let l = g.left_frame();
        // →u = (u(x), 0), ←u = (0, -u(y))
        assert_eq!(r.get(0, 0).as_constant(), Some(int(1)));
        assert!(r.get(1, 0).is_zero());
        assert!(l.get(0, 0).is_zero());
        assert_eq!(l.get(1, 0).as_constant(), Some(int(-1)));
        assert!(g.splitting_inverse().is_ok());
    }

    #[test]
    fn multiply_checks_composability() {
        let g = catalog::pair(1);
        let ok = g.multiply(&[int(1), int(2)], &[int(2), int(3)]).unwrap();
        assert_eq!(ok, vec![int(1), int(3)]);
        assert!(g.multiply(&[int(1), int(2)], &[int(5), int(3)]).is_err());
    }
}
