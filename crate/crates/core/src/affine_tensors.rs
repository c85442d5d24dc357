//! Affine functions and affine `(p,q)` tensors, seen as functions on the
//! groupoid `Γ = ⊕^q TG ⊕^p T*G`, with the groupoid of affine tensors, the
//! monoidal structure on `(1,1)` tensors and `Π ∘ Θ`.

use std::sync::Arc;

use crate::affine_forms::AffineForm;
use crate::affine_mv::AffineMV;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Mode, Poly, PolyMap, PolyMatrix, Scalar, DEFAULT_SAMPLES};
use crate::exterior::{Graded, TensorField};
use crate::groupoid::{combinations, AlgebroidSection, PolyGroupoid};
use crate::report::{Verdict, Witness};

/// `F(gh) - F(g) - F(h) + F(1_{s(g)})` on the parametrized composable pairs.
fn function_residual(gp: &PolyGroupoid, f: &Poly) -> Result<(Poly, Poly)> {
    let g = gp.dim_g();
    if f.nvars() != g {
        return Err(Error::arity("function does not live on the arrows"));
    }
    let cp = gp.comp_param();
    let p = cp.domain();
    let on = |map: &PolyMap| f.compose(map.comps(), p);
    let g1 = cp.slice(0..g);
    let g2 = cp.slice(g..2 * g);
    let unit_s = gp.unit().compose(&gp.source().compose(&g1)?)?;
    let mult = &(&on(gp.mult()) - &on(&g1)) - &on(&g2);
    let on_units = f.compose(gp.unit().comps(), gp.dim_m());
    Ok((&mult + &on(&unit_s), on_units))
}

pub fn is_affine_function(gp: &PolyGroupoid, f: &Poly, mode: Mode) -> Result<Verdict> {
    let (r, _) = function_residual(gp, f)?;
    let z = mode.test_zero(&[r], gp.comp_param().domain());
    Ok(if z.zero {
        Verdict::pass()
    } else {
        Verdict::fail(Some(Witness::new(
            "F(gh) differs from F(g) + F(h) - F(s(g))",
            z.witness.unwrap_or_default(),
        )))
    })
}

/// Affine with vanishing restriction to the units.
pub fn is_multiplicative_function(gp: &PolyGroupoid, f: &Poly, mode: Mode) -> Result<Verdict> {
    let v = is_affine_function(gp, f, mode)?;
    if !v.pass {
        return Ok(v);
    }
    let (_, on_units) = function_residual(gp, f)?;
    let z = mode.test_zero(&[on_units], gp.dim_m());
    Ok(if z.zero {
        Verdict::pass()
    } else {
        Verdict::fail(Some(Witness::new(
            "restriction to the units is nonzero",
            z.witness.unwrap_or_default(),
        )))
    })
}

/// Value of `F` at the point of `Γ` over `g` given by `covectors` and
/// `vectors`.
pub fn tensor_eval_on_gamma(
    f: &TensorField,
    g: &[Scalar],
    covectors: &[Vec<Scalar>],
    vectors: &[Vec<Scalar>],
) -> Result<Scalar> {
    let n = f.nvars();
    if g.len() != n || covectors.iter().chain(vectors).any(|v| v.len() != n) {
        return Err(Error::arity("slot data does not sit over the base point"));
    }
    f.eval(g).pair(covectors, vectors)
}

fn gamma_samples(mode: Mode) -> (u64, usize) {
    match mode {
        Mode::Exact => (0, DEFAULT_SAMPLES),
        Mode::Sampled { seed, samples } => (seed, samples),
    }
}

/// Tests `F(X·Y, ξ·η) = F(X, ξ) + F(Y, η) - F(1_{s(X, ξ)})` (dropping the
/// last term when `affine` is false) at seeded composable points of `Γ`,
/// on every choice of basis slots.
fn gamma_identity(gp: &PolyGroupoid, f: &TensorField, affine: bool, mode: Mode) -> Result<Verdict> {
    let n = gp.dim_g();
    if f.nvars() != n || f.contra_dim() != n || f.co_dim() != n {
        return Err(Error::arity("tensor field does not live on the arrows"));
    }
    let (p, q) = f.bidegree();
    let (seed, samples) = gamma_samples(mode);
    for fib in gp.gamma_fibers(seed, samples)?.iter() {
        let at = [f.eval(&fib.g), f.eval(&fib.h), f.eval(&fib.gh), f.eval(&fib.unit)];
        for ci in combinations(fib.covectors.len(), p) {
            for vi in combinations(fib.vectors.len(), q) {
                let slot = |k: usize| -> Result<Scalar> {
                    let cov: Vec<Vec<Scalar>> = ci.iter().map(|&i| fib.covectors[i][k].clone()).collect();
                    let vec: Vec<Vec<Scalar>> = vi.iter().map(|&i| fib.vectors[i][k].clone()).collect();
                    at[k].pair(&cov, &vec)
                };
                let mut defect = slot(2)? - slot(0)? - slot(1)?;
                if affine {
                    defect += slot(3)?;
                }
                if defect != Scalar::default() {
                    let label = if affine {
                        "affine identity on the tensor groupoid fails"
                    } else {
                        "multiplicative identity on the tensor groupoid fails"
                    };
                    return Ok(Verdict::fail(Some(Witness::new(label, fib.param.clone()))));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

pub fn is_affine_tensor(gp: &PolyGroupoid, f: &TensorField, mode: Mode) -> Result<Verdict> {
    gamma_identity(gp, f, true, mode)
}

pub fn is_multiplicative_tensor(gp: &PolyGroupoid, f: &TensorField, mode: Mode) -> Result<Verdict> {
    gamma_identity(gp, f, false, mode)
}

/// Checks `←(u ⊗ β) = ←u ⊗ s*β` and `→(u ⊗ β) = →u ⊗ t*β`.
pub fn translate_product_check(gp: &PolyGroupoid, u: &Graded, beta: &Graded) -> Result<bool> {
    let n = gp.dim_g();
    let f = AlgebroidSection::from_tensor(TensorField::product(u, beta)?, gp.rank(), gp.dim_m())?;
    let contra = |t: TensorField| t.contravariant();
    let ur = contra(gp.translate_right(&AlgebroidSection::from_contravariant(u, gp.dim_m())?)?)?;
    let ul = contra(gp.translate_left(&AlgebroidSection::from_contravariant(u, gp.dim_m())?)?)?;
    let pull = |map: &PolyMap| -> Result<Graded> {
        let form = crate::exterior::DifferentialForm::from_graded(beta.clone())?;
        Ok(form.pullback(map)?.into_graded())
    };
    let right = TensorField::product(&ur, &pull(gp.target())?)?;
    let left = TensorField::product(&ul, &pull(gp.source())?)?;
    debug_assert_eq!(right.nvars(), n);
    Ok(gp.translate_right(&f)? == right && gp.translate_left(&f)? == left)
}

/// An affine `(p,q)` tensor together with its component on the units.
#[derive(Clone, Debug)]
pub struct AffineTensor {
    parent: Arc<PolyGroupoid>,
    field: TensorField,
    base: AlgebroidSection,
}

impl PartialEq for AffineTensor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.field == other.field
    }
}

impl AffineTensor {
    pub fn new(parent: Arc<PolyGroupoid>, field: TensorField) -> Result<Self> {
        let v = is_affine_tensor(&parent, &field, Mode::Exact)?;
        if !v.pass {
            let why = v.witness.map(|w| w.label).unwrap_or_default();
            return Err(Error::NotAffine(why));
        }
        let (p, q) = field.bidegree();
        let base = parent.restrict_project(&field, p, q)?;
        Ok(AffineTensor { parent, field, base })
    }

    /// `→f + ←γ`.
    pub fn from_translates(
        parent: Arc<PolyGroupoid>,
        right: &AlgebroidSection,
        left: &AlgebroidSection,
    ) -> Result<Self> {
        let f = parent
            .translate_right(right)?
            .checked_add(&parent.translate_left(left)?)?;
        AffineTensor::new(parent, f)
    }

    pub fn parent(&self) -> &Arc<PolyGroupoid> {
        &self.parent
    }

    pub fn field(&self) -> &TensorField {
        &self.field
    }

    pub fn base(&self) -> &AlgebroidSection {
        &self.base
    }

    fn wrap(&self, field: TensorField) -> Result<AffineTensor> {
        AffineTensor::new(self.parent.clone(), field)
    }

    fn same_parent(&self, other: &AffineTensor) -> Result<()> {
        if !Arc::ptr_eq(&self.parent, &other.parent) {
            return Err(Error::arity("tensors live on different groupoids"));
        }
        Ok(())
    }

    /// `F_r = F - →f`.
    pub fn right_part(&self) -> Result<TensorField> {
        self.field.checked_sub(&self.parent.translate_right(&self.base)?)
    }

    /// `F_l = F - ←f`.
    pub fn left_part(&self) -> Result<TensorField> {
        self.field.checked_sub(&self.parent.translate_left(&self.base)?)
    }

    pub fn source_target(&self) -> Result<(TensorField, TensorField)> {
        Ok((self.right_part()?, self.left_part()?))
    }

    /// `F * F' = F + ←f'`, defined when `F_r = F'_l`.
    pub fn compose(&self, other: &AffineTensor) -> Result<AffineTensor> {
        self.same_parent(other)?;
        if self.right_part()? != other.left_part()? {
            return Err(Error::Composability(
                "source of the first tensor differs from target of the second".into(),
            ));
        }
        self.wrap(self.field.checked_add(&self.parent.translate_left(&other.base)?)?)
    }

    /// `F⁻¹ = F - →f - ←f`.
    pub fn inverse(&self) -> Result<AffineTensor> {
        let f = self
            .field
            .checked_sub(&self.parent.translate_right(&self.base)?)?
            .checked_sub(&self.parent.translate_left(&self.base)?)?;
        self.wrap(f)
    }

    pub fn checked_add(&self, other: &AffineTensor) -> Result<AffineTensor> {
        self.same_parent(other)?;
        self.wrap(self.field.checked_add(&other.field)?)
    }

    pub fn scale(&self, c: &Scalar) -> Result<AffineTensor> {
        self.wrap(self.field.scale(c))
    }
}

/// Blocks of `N|_M` in the frame `TM ⊕ A` of the splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitBlocks {
    pub n_tm: PolyMatrix,
    /// Upper right block; vanishes for affine tensors.
    pub upper: PolyMatrix,
    /// `pr_{T*M ⊗ A} N|_M`.
    pub n: PolyMatrix,
    /// Lower right block of the multiplicative part `N_r|_M`.
    pub n_a: PolyMatrix,
}

fn blocks_of(gp: &PolyGroupoid, mat: &PolyMatrix, correct_by: Option<&PolyMatrix>) -> Result<UnitBlocks> {
    let (g, m) = (gp.dim_g(), gp.dim_m());
    let on_units = mat.compose(gp.unit().comps(), m);
    let split = gp.splitting();
    let b = gp.splitting_inverse()?.mul(&on_units)?.mul(split)?;
    let block = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| b.row_range(rows).columns(cols);
    let n = block(m..g, 0..m);
    let mut n_a = block(m..g, m..g);
    if let Some(rho) = correct_by {
        n_a = n_a.sub(&n.mul(rho)?)?;
    }
    Ok(UnitBlocks {
        n_tm: block(0..m, 0..m),
        upper: block(0..m, m..g),
        n,
        n_a,
    })
}

/// An affine `(1,1)` tensor viewed as an endomorphism of `TG`.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine11 {
    tensor: AffineTensor,
    matrix: PolyMatrix,
    blocks: UnitBlocks,
}

impl Affine11 {
    pub fn new(parent: Arc<PolyGroupoid>, matrix: PolyMatrix) -> Result<Self> {
        let tensor = AffineTensor::new(parent.clone(), TensorField::from_matrix(&matrix))?;
        let rho = parent.anchor()?;
        let blocks = blocks_of(&parent, &matrix, Some(&rho))?;
        if !blocks.upper.is_zero() {
            return Err(Error::Structure("restriction to the units does not preserve TM".into()));
        }
        Ok(Affine11 { tensor, matrix, blocks })
    }

    pub fn from_tensor(t: AffineTensor) -> Result<Self> {
        let m = t.field().to_matrix()?;
        Affine11::new(t.parent().clone(), m)
    }

    /// The identity of `TG`.
    pub fn identity(parent: Arc<PolyGroupoid>) -> Result<Self> {
        let n = parent.dim_g();
        Affine11::new(parent, PolyMatrix::identity(n, n))
    }

    pub fn tensor(&self) -> &AffineTensor {
        &self.tensor
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn blocks(&self) -> &UnitBlocks {
        &self.blocks
    }

    pub fn parent(&self) -> &Arc<PolyGroupoid> {
        self.tensor.parent()
    }

    fn part(&self, t: TensorField) -> Result<PolyMatrix> {
        t.to_matrix()
    }

    pub fn right_matrix(&self) -> Result<PolyMatrix> {
        self.part(self.tensor.right_part()?)
    }

    pub fn left_matrix(&self) -> Result<PolyMatrix> {
        self.part(self.tensor.left_part()?)
    }

    /// Groupoid product in the 2-vector space.
    pub fn star(&self, other: &Affine11) -> Result<Affine11> {
        Affine11::from_tensor(self.tensor.compose(&other.tensor)?)
    }
}

/// Composition `N ∘ N'` of endomorphisms.
pub fn t11_compose(a: &Affine11, b: &Affine11) -> Result<Affine11> {
    if !Arc::ptr_eq(a.parent(), b.parent()) {
        return Err(Error::arity("tensors live on different groupoids"));
    }
    Affine11::new(a.parent().clone(), a.matrix.mul(&b.matrix)?)
}

/// Checks `(N∘N')_r = N_r∘N'_r`, `(N∘N')_l = N_l∘N'_l` and
/// `n(N∘N') = n_A∘n' + n∘n'_TM + n∘ρ∘n'`.
pub fn composition_laws_check(a: &Affine11, b: &Affine11) -> Result<Verdict> {
    let c = t11_compose(a, b)?;
    let fail = |what: &str| Ok(Verdict::fail(Some(Witness::new(what, vec![]))));
    if c.right_matrix()? != a.right_matrix()?.mul(&b.right_matrix()?)? {
        return fail("right part of a composition");
    }
    if c.left_matrix()? != a.left_matrix()?.mul(&b.left_matrix()?)? {
        return fail("left part of a composition");
    }
    let rho = a.parent().anchor()?;
    let (x, y) = (&a.blocks, &b.blocks);
    let want = x
        .n_a
        .mul(&y.n)?
        .add(&x.n.mul(&y.n_tm)?)?
        .add(&x.n.mul(&rho)?.mul(&y.n)?)?;
    if c.blocks.n != want {
        return fail("unit component of a composition");
    }
    Ok(Verdict::pass())
}

/// Interchange law `(N1 * N3) ∘ (N2 * N4) = (N1 ∘ N2) * (N3 ∘ N4)`, plus the
/// unit laws for the identity.
pub fn monoidal_interchange_check(n1: &Affine11, n2: &Affine11, n3: &Affine11, n4: &Affine11) -> Result<bool> {
    let lhs = t11_compose(&n1.star(n3)?, &n2.star(n4)?)?;
    let rhs = t11_compose(n1, n2)?.star(&t11_compose(n3, n4)?)?;
    if lhs.matrix != rhs.matrix {
        return Ok(false);
    }
    let id = Affine11::identity(n1.parent().clone())?;
    let unit_ok = [n1, n2, n3, n4].iter().all(|n| {
        matches!(t11_compose(&id, n), Ok(c) if c.matrix == n.matrix)
            && matches!(t11_compose(n, &id), Ok(c) if c.matrix == n.matrix)
    });
    // 1_x ∘ 1_y = 1_{x ∘ y} at multiplicative tensors
    let x = Affine11::new(n1.parent().clone(), n1.right_matrix()?)?;
    let y = Affine11::new(n2.parent().clone(), n2.right_matrix()?)?;
    let xy = t11_compose(&x, &y)?;
    let bifunctor_ok = x.star(&x)?.matrix == x.matrix && xy.star(&xy)?.matrix == xy.matrix;
    Ok(unit_ok && bifunctor_ok)
}

/// Matrix of `X ↦ ι_X Θ` (as a covector) for a 2-form.
fn lower_matrix(theta: &Graded) -> PolyMatrix {
    let n = theta.ngen();
    let mut out = PolyMatrix::zeros(theta.nvars(), n, n);
    for (b, c) in theta.terms() {
        let idx = crate::exterior::blade_indices(b);
        let (i, j) = (idx[0], idx[1]);
        out.set(j, i, c.clone());
        out.set(i, j, -c);
    }
    out
}

/// `Π ∘ Θ : TG → TG`, lowering with `Θ` and raising with `Π`.
pub fn pi_compose_theta(pi: &AffineMV, theta: &AffineForm) -> Result<Affine11> {
    if !Arc::ptr_eq(pi.parent(), theta.parent()) {
        return Err(Error::arity("fields live on different groupoids"));
    }
    if pi.degree() != 2 || theta.degree() != 2 {
        return Err(Error::degree("Π ∘ Θ needs a bivector field and a 2-form"));
    }
    let m = lower_matrix(pi.field().graded()).mul(&lower_matrix(theta.form().graded()))?;
    Affine11::new(pi.parent().clone(), m)
}

/// Checks `(Π∘Θ)_l = Π_l∘Θ_l`, `(Π∘Θ)_r = Π_r∘Θ_r` and the unit component
/// `π_{A*}∘θ + π∘θ_TM + π∘ρ*∘θ`, with `π_{A*}` and `θ_TM` read off the
/// multiplicative parts.
pub fn pi_theta_check(pi: &AffineMV, theta: &AffineForm) -> Result<Verdict> {
    let gp = pi.parent().clone();
    let c = pi_compose_theta(pi, theta)?;
    let fail = |what: &str| Ok(Verdict::fail(Some(Witness::new(what, vec![]))));
    let (pr, pl) = pi.source_target()?;
    let (tr, tl) = theta.source_target()?;
    let compose = |p: &crate::exterior::MultiVectorField, t: &crate::exterior::DifferentialForm| {
        lower_matrix(p.graded()).mul(&lower_matrix(t.graded()))
    };
    if c.right_matrix()? != compose(&pr, &tr)? {
        return fail("right part of the composite");
    }
    if c.left_matrix()? != compose(&pl, &tl)? {
        return fail("left part of the composite");
    }
    let (g, m) = (gp.dim_g(), gp.dim_m());
    let split = gp.splitting();
    let sinv = gp.splitting_inverse()?;
    let at_units = |x: &PolyMatrix| x.compose(gp.unit().comps(), m);
    // frame expressions of the raising and lowering maps at the units
    let p_r = sinv
        .mul(&at_units(&lower_matrix(pr.graded())))?
        .mul(&sinv.transpose())?;
    let p = sinv
        .mul(&at_units(&lower_matrix(pi.field().graded())))?
        .mul(&sinv.transpose())?;
    let q_r = split
        .transpose()
        .mul(&at_units(&lower_matrix(tr.graded())))?
        .mul(split)?;
    let q = split
        .transpose()
        .mul(&at_units(&lower_matrix(theta.form().graded())))?
        .mul(split)?;
    let blk = |x: &PolyMatrix, r: std::ops::Range<usize>, c: std::ops::Range<usize>| x.row_range(r).columns(c);
    let pi_a_star = blk(&p_r, m..g, 0..m);
    let pi_aa = blk(&p, m..g, m..g);
    let theta_tm = blk(&q_r, m..g, 0..m);
    let theta_mm = blk(&q, 0..m, 0..m);
    let rho = gp.anchor()?;
    let want = pi_a_star
        .mul(&theta_mm)?
        .add(&pi_aa.mul(&theta_tm)?)?
        .add(&pi_aa.mul(&rho.transpose())?.mul(&theta_mm)?)?;
    if c.blocks.n != want {
        return fail("unit component of the composite");
    }
    Ok(Verdict::pass())
}

/// Right-invariant endomorphism field `g ↦ R(g) L R(g)⁻¹` on a group.
pub fn right_invariant_endomorphism(gp: &PolyGroupoid, l: &Matrix) -> Result<PolyMatrix> {
    if !gp.is_group() {
        return Err(Error::Structure("right-invariant endomorphisms need a group".into()));
    }
    let r = gp.right_frame();
    let rinv = r
        .inverse_unimodular()
        .ok_or_else(|| Error::Structure("right frame is not unimodular".into()))?;
    r.mul(&PolyMatrix::from_constant(gp.dim_g(), l))?.mul(&rinv)
}

/// `Ad_g` as a polynomial matrix in `g`, the differential at the identity of
/// `h ↦ g h g⁻¹`.
pub fn adjoint(gp: &PolyGroupoid) -> Result<PolyMatrix> {
    if !gp.is_group() {
        return Err(Error::Structure("the adjoint action needs a group".into()));
    }
    let n = gp.dim_g();
    let all = PolyMap::identity(2 * n);
    let (g, h) = (all.slice(0..n), all.slice(n..2 * n));
    let gh = gp.mult_ext().compose(&g.pair(&h)?)?;
    let ginv = gp.inverse().compose(&g)?;
    let conj = gp.mult_ext().compose(&gh.pair(&ginv)?)?;
    let jac = conj.jacobian().columns(n..2 * n);
    let e: Vec<Scalar> = gp.unit().eval(&[])?;
    let mut subs = Poly::vars(n);
    subs.extend(e.into_iter().map(|c| Poly::constant(n, c)));
    Ok(jac.compose(&subs, n))
}

pub fn is_ad_equivariant(gp: &PolyGroupoid, l: &Matrix) -> Result<bool> {
    let ad = adjoint(gp)?;
    let lm = PolyMatrix::from_constant(gp.dim_g(), l);
    Ok(ad.mul(&lm)? == lm.mul(&ad)?)
}

/// Block field `(X, Y, u) ↦ (N1(x) X, N2(y) Y, →L u)` on `Pair(Q^n) × G`.
pub fn product_block_field(
    gp: &PolyGroupoid,
    group: &PolyGroupoid,
    n1: &PolyMatrix,
    n2: &PolyMatrix,
    l: &Matrix,
) -> Result<PolyMatrix> {
    let n = n1.rows();
    let k = group.dim_g();
    let dim = gp.dim_g();
    if dim != 2 * n + k || n2.rows() != n {
        return Err(Error::arity("block field does not fit the product groupoid"));
    }
    let vars = Poly::vars(dim);
    let a = n1.compose(&vars[..n], dim);
    let b = n2.compose(&vars[n..2 * n], dim);
    let c = right_invariant_endomorphism(group, l)?.compose(&vars[2 * n..], dim);
    let mut out = PolyMatrix::zeros(dim, dim, dim);
    for (off, blk) in [(0, &a), (n, &b), (2 * n, &c)] {
        for i in 0..blk.rows() {
            for j in 0..blk.cols() {
                out.set(off + i, off + j, blk.get(i, j).clone());
            }
        }
    }
    Ok(out)
}

/// Outcome of the group and product batteries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCases {
    /// Constant endomorphisms of the Lie algebra tried on the group.
    pub group_trials: usize,
    /// Those whose affineness disagreed with Ad-equivariance.
    pub group_mismatches: Vec<usize>,
    pub product_affine: bool,
    pub product_multiplicative_iff_equal: bool,
}

impl GroupCases {
    pub fn pass(&self) -> bool {
        self.group_mismatches.is_empty() && self.product_affine && self.product_multiplicative_iff_equal
    }
}

/// Compares affineness with Ad-equivariance on the group for every
/// endomorphism in `family`, and runs the block battery on the product
/// with `n1`, `n2` and the first equivariant member of `family`.
pub fn group_cases_check(
    group: &PolyGroupoid,
    product: &PolyGroupoid,
    family: &[Matrix],
    n1: &PolyMatrix,
    n2: &PolyMatrix,
    mode: Mode,
) -> Result<GroupCases> {
    let mut mismatches = Vec::new();
    let mut equivariant = None;
    for (i, l) in family.iter().enumerate() {
        let field = TensorField::from_matrix(&right_invariant_endomorphism(group, l)?);
        let affine = is_affine_tensor(group, &field, mode)?.pass;
        let eq = is_ad_equivariant(group, l)?;
        if eq && equivariant.is_none() {
            equivariant = Some(l.clone());
        }
        if affine != eq {
            mismatches.push(i);
        }
    }
    let l = equivariant.ok_or_else(|| Error::Structure("family has no equivariant member".into()))?;
    let mixed = TensorField::from_matrix(&product_block_field(product, group, n1, n2, &l)?);
    let diag1 = TensorField::from_matrix(&product_block_field(product, group, n1, n1, &l)?);
    let product_affine = is_affine_tensor(product, &mixed, mode)?.pass && is_affine_tensor(product, &diag1, mode)?.pass;
    let mixed_mult = is_multiplicative_tensor(product, &mixed, mode)?.pass;
    let diag_mult = is_multiplicative_tensor(product, &diag1, mode)?.pass;
    Ok(GroupCases {
        group_trials: family.len(),
        group_mismatches: mismatches,
        product_affine,
        product_multiplicative_iff_equal: diag_mult && (mixed_mult == (n1 == n2)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_forms::{is_affine_form, source_pullback, target_pullback};
    use crate::affine_mv::is_affine_mv;
    use crate::catalog;
    use crate::exact::int;
    use crate::exterior::{DifferentialForm, MultiVectorField};

    fn pair_normal_form(gp: &Arc<PolyGroupoid>, a: &PolyMatrix, b: &PolyMatrix) -> Affine11 {
        let m = gp.dim_m();
        let sec = |x: &PolyMatrix| AlgebroidSection::from_tensor(TensorField::from_matrix(x), m, m).unwrap();
        let t = AffineTensor::from_translates(gp.clone(), &sec(a), &sec(b)).unwrap();
        Affine11::from_tensor(t).unwrap()
    }

    fn diag(gp: &PolyGroupoid, a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        let n = a.rows();
        let dim = gp.dim_g();
        let vars = Poly::vars(dim);
        let mut out = PolyMatrix::zeros(dim, dim, dim);
        let a = a.compose(&vars[..n], dim);
        let b = b.compose(&vars[n..], dim);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a.get(i, j).clone());
                out.set(n + i, n + j, b.get(i, j).clone());
            }
        }
        out
    }

    #[test]
    fn functions_on_pair() {
        let g = catalog::pair(1);
        let v = Poly::vars(2);
        let f = &v[1] * &v[1];
        let s_minus_t = &f - &(&v[0] * &v[0]);
        assert!(is_multiplicative_function(&g, &s_minus_t, Mode::Exact).unwrap().pass);
        assert!(is_affine_function(&g, &f, Mode::Exact).unwrap().pass);
        assert!(!is_multiplicative_function(&g, &f, Mode::Exact).unwrap().pass);
        let bad = &v[0] * &v[1];
        let r = is_affine_function(&g, &bad, Mode::Exact).unwrap();
        assert!(!r.pass && r.witness.is_some());
    }

    #[test]
    fn consistency_with_fields_and_forms() {
        let g = catalog::pair(2);
        let x = Poly::vars(4);
        let fields = [
            MultiVectorField::vector(&[x[0].pow(2), x[1].clone(), -&x[2], Poly::zero(4)]),
            MultiVectorField::vector(&[&x[0] * &x[2], Poly::zero(4), Poly::zero(4), Poly::zero(4)]),
        ];
        for f in &fields {
            let t = TensorField::from_multivector(f);
            assert_eq!(
                is_affine_tensor(&g, &t, Mode::Exact).unwrap().pass,
                is_affine_mv(&g, f, Mode::Exact).unwrap().pass
            );
        }
        let alpha = DifferentialForm::covector(&[Poly::vars(2)[0].pow(2), Poly::int(2, 1)]);
        let good = &target_pullback(&g, &alpha).unwrap() + &source_pullback(&g, &alpha).unwrap();
        let bad = DifferentialForm::covector(&[&x[0] * &x[3], Poly::zero(4), Poly::zero(4), Poly::zero(4)]);
        for f in [good, bad] {
            let t = TensorField::from_form(&f);
            assert_eq!(
                is_affine_tensor(&g, &t, Mode::Exact).unwrap().pass,
                is_affine_form(&g, &f, Mode::Exact).unwrap().pass
            );
        }
    }

    #[test]
    fn pair_normal_forms() {
        let g = catalog::pair(1);
        let x = Poly::vars(1);
        let mat = |p: Poly| PolyMatrix::from_rows(1, vec![vec![p]], 1).unwrap();
        let (a, b, c, d) = (
            mat(x[0].clone()),
            mat(Poly::int(1, 2)),
            mat(Poly::int(1, -3)),
            mat(x[0].pow(2)),
        );
        let ab = pair_normal_form(&g, &a, &b);
        let cd = pair_normal_form(&g, &c, &d);
        // the normal form (A, B) acts as diag(A(x), -B(y))
        assert_eq!(ab.matrix(), &diag(&g, &a, &b.neg()));
        let prod = t11_compose(&ab, &cd).unwrap();
        let want = pair_normal_form(&g, &a.mul(&c).unwrap(), &b.mul(&d).unwrap().neg());
        assert_eq!(prod.matrix(), want.matrix());
        assert!(composition_laws_check(&ab, &cd).unwrap().pass);
        // multiplicable iff the second entry of the first is minus the first of the second
        let e = pair_normal_form(&g, &b.neg(), &d);
        assert_eq!(ab.star(&e).unwrap().matrix(), pair_normal_form(&g, &a, &d).matrix());
        assert!(matches!(ab.star(&cd), Err(Error::Composability(_))));
        let f = pair_normal_form(&g, &c, &a);
        let h = pair_normal_form(&g, &a.neg(), &b);
        assert!(monoidal_interchange_check(&ab, &f, &e, &h).unwrap());
        let mult = Affine11::new(g.clone(), diag(&g, &a, &a)).unwrap();
        assert!(
            is_multiplicative_tensor(&g, &TensorField::from_matrix(mult.matrix()), Mode::Exact)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn translates_of_products() {
        let g = catalog::pair(2);
        let x = Poly::vars(2);
        let u = Graded::linear(2, &[x[0].clone(), Poly::one(2)]);
        let beta = Graded::linear(2, &[Poly::one(2), &x[0] * &x[1]]);
        assert!(translate_product_check(&g, &u, &beta).unwrap());
    }

    #[test]
    fn pi_theta_on_pair2() {
        let g = catalog::pair(2);
        let x = Poly::vars(2);
        let bi = |c: Poly| {
            AlgebroidSection::from_contravariant(&Graded::from_terms(2, 2, 2, [(0b11, c)]).unwrap(), 2).unwrap()
        };
        let p = AffineMV::from_translates(g.clone(), &bi(&x[0] + &Poly::one(2)), &bi(x[1].clone())).unwrap();
        let alpha = DifferentialForm::from_terms(2, 2, [(0b11, x[0].clone())]).unwrap();
        let beta = DifferentialForm::from_terms(2, 2, [(0b11, Poly::int(2, 5))]).unwrap();
        let t = &target_pullback(&g, &alpha).unwrap() + &source_pullback(&g, &beta).unwrap();
        let t = AffineForm::new(g.clone(), t).unwrap();
        let v = pi_theta_check(&p, &t).unwrap();
        assert!(v.pass, "{v:?}");
        let zero = AffineForm::new(g.clone(), DifferentialForm::zero(4, 2)).unwrap();
        assert!(pi_compose_theta(&p, &zero).unwrap().matrix().is_zero());
    }

    #[test]
    fn heisenberg_and_product_cases() {
        let h = catalog::heisenberg();
        let prod = catalog::product_pair_heisenberg(1);
        let mut swap = Matrix::zeros(3, 3);
        swap.set(0, 2, int(1));
        swap.set(2, 0, int(1));
        swap.set(1, 1, int(1));
        let x = Poly::vars(1);
        let n1 = PolyMatrix::from_rows(1, vec![vec![x[0].clone()]], 1).unwrap();
        let n2 = PolyMatrix::from_rows(1, vec![vec![Poly::int(1, 2)]], 1).unwrap();
        let cases = group_cases_check(&h, &prod, &[Matrix::identity(3), swap], &n1, &n2, Mode::Exact).unwrap();
        assert!(cases.pass(), "{cases:?}");
    }
}
