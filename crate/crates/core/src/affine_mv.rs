//! Affine and multiplicative multivector fields: predicates, the
//! decomposition into right and left multiplicative parts, the groupoid of
//! affine fields, k-differentials and Poisson conditions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{Mode, Poly};
use crate::exterior::{DifferentialForm, Graded, MultiVectorField, TensorField};
use crate::groupoid::{AlgebroidSection, LieAlgebroidData, PolyGroupoid};
use crate::report::{Verdict, Witness};

fn check_on(gp: &PolyGroupoid, pi: &MultiVectorField) -> Result<()> {
    if pi.dim() != gp.dim_g() {
        return Err(Error::arity(format!(
            "field lives on Q^{}, groupoid arrows on Q^{}",
            pi.dim(),
            gp.dim_g()
        )));
    }
    if pi.degree() == 0 {
        return Err(Error::degree("affine functions are handled by the tensor predicates"));
    }
    Ok(())
}

fn invariance_verdict(gp: &PolyGroupoid, w: &TensorField, label: String, mode: Mode) -> Result<Verdict> {
    let z = gp.is_right_invariant(w, mode)?;
    Ok(if z.zero {
        Verdict::pass()
    } else {
        Verdict::fail(z.witness.map(|p| Witness::new(label, p)))
    })
}

pub(crate) fn as_tensor(m: &MultiVectorField) -> TensorField {
    TensorField::from_multivector(m)
}

/// `→π` as a multivector field.
pub fn right_translate_mv(gp: &PolyGroupoid, pi: &AlgebroidSection) -> Result<MultiVectorField> {
    gp.translate_right(pi)?.to_multivector()
}

/// `←π` as a multivector field.
pub fn left_translate_mv(gp: &PolyGroupoid, pi: &AlgebroidSection) -> Result<MultiVectorField> {
    gp.translate_left(pi)?.to_multivector()
}

/// `pr_{∧^k A} Π|_M`.
pub fn restrict_mv(gp: &PolyGroupoid, pi: &MultiVectorField) -> Result<AlgebroidSection> {
    gp.restrict_project(&as_tensor(pi), pi.degree(), 0)
}

/// Affine test through invariance: `[Π, →e_i]` and `ι_{t*dx_j} Π` must be
/// right-invariant for every frame section and every base coordinate.
pub fn is_affine_mv(gp: &PolyGroupoid, pi: &MultiVectorField, mode: Mode) -> Result<Verdict> {
    check_on(gp, pi)?;
    for i in 0..gp.rank() {
        let w = pi.schouten(&gp.right_invariant_vector(i))?;
        let v = invariance_verdict(
            gp,
            &as_tensor(&w),
            format!("[field, right e{}] not right-invariant", i + 1),
            mode,
        )?;
        if !v.pass {
            return Ok(v);
        }
    }
    for j in 0..gp.dim_m() {
        let xi = DifferentialForm::exact(&gp.target().comps()[j]);
        let w = pi.interior(&xi)?;
        let v = invariance_verdict(
            gp,
            &as_tensor(&w),
            format!("contraction with t*dx{} not right-invariant", j + 1),
            mode,
        )?;
        if !v.pass {
            return Ok(v);
        }
    }
    Ok(Verdict::pass())
}

/// Multiplicative = affine with vanishing restriction to the units.
pub fn is_multiplicative_mv(gp: &PolyGroupoid, pi: &MultiVectorField, mode: Mode) -> Result<Verdict> {
    let v = is_affine_mv(gp, pi, mode)?;
    if !v.pass {
        return Ok(v);
    }
    let base = restrict_mv(gp, pi)?;
    let coeffs: Vec<Poly> = base.tensor().terms().map(|(_, c)| c.clone()).collect();
    let z = mode.test_zero(&coeffs, gp.dim_m());
    Ok(if z.zero {
        Verdict::pass()
    } else {
        Verdict::fail(Some(Witness::new(
            "restriction to the units is nonzero",
            z.witness.unwrap_or_default(),
        )))
    })
}

/// An affine multivector field together with its component on the units.
#[derive(Clone, Debug)]
pub struct AffineMV {
    parent: Arc<PolyGroupoid>,
    field: MultiVectorField,
    base: AlgebroidSection,
}

impl PartialEq for AffineMV {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.field == other.field
    }
}

impl AffineMV {
    pub fn new(parent: Arc<PolyGroupoid>, field: MultiVectorField) -> Result<Self> {
        let v = is_affine_mv(&parent, &field, Mode::Exact)?;
        if !v.pass {
            let why = v.witness.map(|w| w.label).unwrap_or_default();
            return Err(Error::NotAffine(why));
        }
        let base = restrict_mv(&parent, &field)?;
        Ok(AffineMV { parent, field, base })
    }

    /// `→π + ←γ`, always affine.
    pub fn from_translates(
        parent: Arc<PolyGroupoid>,
        right: &AlgebroidSection,
        left: &AlgebroidSection,
    ) -> Result<Self> {
        let f = right_translate_mv(&parent, right)?.checked_add(&left_translate_mv(&parent, left)?)?;
        AffineMV::new(parent, f)
    }

    pub fn parent(&self) -> &Arc<PolyGroupoid> {
        &self.parent
    }

    pub fn field(&self) -> &MultiVectorField {
        &self.field
    }

    /// `π = pr_{∧^k A} Π|_M`.
    pub fn base(&self) -> &AlgebroidSection {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    fn same_parent(&self, other: &AffineMV) -> Result<()> {
        if !Arc::ptr_eq(&self.parent, &other.parent) {
            return Err(Error::arity("fields live on different groupoids"));
        }
        Ok(())
    }

    fn wrap(&self, field: MultiVectorField) -> Result<AffineMV> {
        AffineMV::new(self.parent.clone(), field)
    }

    /// `Π_r = Π - →π`, the source of `Π` as an arrow.
    pub fn right_part(&self) -> Result<MultiVectorField> {
        self.field.checked_sub(&right_translate_mv(&self.parent, &self.base)?)
    }

    /// `Π_l = Π - ←π`, the target of `Π` as an arrow.
    pub fn left_part(&self) -> Result<MultiVectorField> {
        self.field.checked_sub(&left_translate_mv(&self.parent, &self.base)?)
    }

    /// `(Π_r, Π_l)`.
    pub fn source_target(&self) -> Result<(MultiVectorField, MultiVectorField)> {
        Ok((self.right_part()?, self.left_part()?))
    }

    /// `Π * Π' = Π + ←π'`, defined when `Π_r = Π'_l`.
    pub fn compose(&self, other: &AffineMV) -> Result<AffineMV> {
        self.same_parent(other)?;
        if self.right_part()? != other.left_part()? {
            return Err(Error::Composability(
                "source of the first field differs from target of the second".into(),
            ));
        }
        let f = self.field.checked_add(&left_translate_mv(&self.parent, &other.base)?)?;
        self.wrap(f)
    }

    /// `Π⁻¹ = Π - →π - ←π`.
    pub fn inverse(&self) -> Result<AffineMV> {
        let f = self
            .field
            .checked_sub(&right_translate_mv(&self.parent, &self.base)?)?
            .checked_sub(&left_translate_mv(&self.parent, &self.base)?)?;
        self.wrap(f)
    }

    /// Identity arrow at a multiplicative field.
    pub fn unit_at(parent: Arc<PolyGroupoid>, multiplicative: MultiVectorField) -> Result<AffineMV> {
        let a = AffineMV::new(parent, multiplicative)?;
        if !a.base.is_zero() {
            return Err(Error::Structure("identity arrows need a multiplicative field".into()));
        }
        Ok(a)
    }

    pub fn checked_add(&self, other: &AffineMV) -> Result<AffineMV> {
        self.same_parent(other)?;
        self.wrap(self.field.checked_add(&other.field)?)
    }

    pub fn scale(&self, c: &crate::exact::Scalar) -> Result<AffineMV> {
        self.wrap(self.field.scale(c))
    }

    /// Schouten bracket; the result is again affine.
    pub fn bracket(&self, other: &AffineMV) -> Result<AffineMV> {
        self.same_parent(other)?;
        self.wrap(self.field.schouten(&other.field)?)
    }

    /// `δ f` with `→(δ f) = [Π, t*f]`.
    pub fn delta_function(&self, f: &Poly) -> Result<Graded> {
        let gp = &self.parent;
        let tf = f.compose(gp.target().comps(), gp.dim_g());
        let w = self.field.schouten(&MultiVectorField::function(tf))?;
        self.invariant_restriction(&w)
    }

    /// `δ X` with `→(δ X) = [Π, →X]` for a section `X` of `∧A`.
    pub fn delta_section(&self, x: &Graded) -> Result<Graded> {
        let gp = &self.parent;
        let sec = AlgebroidSection::from_contravariant(x, gp.dim_m())?;
        let w = self.field.schouten(&right_translate_mv(gp, &sec)?)?;
        self.invariant_restriction(&w)
    }

    fn invariant_restriction(&self, w: &MultiVectorField) -> Result<Graded> {
        let gp = &self.parent;
        if !gp.is_right_invariant(&as_tensor(w), Mode::Exact)?.zero {
            return Err(Error::Structure(
                "bracket with a right-invariant field is not right-invariant".into(),
            ));
        }
        restrict_mv(gp, w)?.contravariant()
    }

    pub fn k_differential(&self) -> Result<KDifferential> {
        let gp = &self.parent;
        let (m, r) = (gp.dim_m(), gp.rank());
        let coords = Poly::vars(m);
        let delta0 = coords
            .iter()
            .map(|x| self.delta_function(x))
            .collect::<Result<Vec<_>>>()?;
        let delta1 = (0..r)
            .map(|i| self.delta_section(&Graded::generator(m, r, i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(KDifferential {
            degree: self.degree(),
            rank: r,
            dim_m: m,
            delta0,
            delta1,
        })
    }
}

/// Degree `k-1` derivation of `Γ(∧A)`, stored by its values on base
/// coordinates and on the frame of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KDifferential {
    degree: usize,
    rank: usize,
    dim_m: usize,
    delta0: Vec<Graded>,
    delta1: Vec<Graded>,
}

impl KDifferential {
    /// `[π, ·]`, the k-differential of `→π`.
    pub fn inner(algebroid: &LieAlgebroidData, pi: &Graded) -> Result<Self> {
        let (m, r) = (algebroid.dim_m(), algebroid.rank());
        let delta0 = Poly::vars(m)
            .into_iter()
            .map(|x| algebroid.bracket(pi, &Graded::function(x, r)))
            .collect::<Result<Vec<_>>>()?;
        let delta1 = (0..r)
            .map(|i| algebroid.bracket(pi, &Graded::generator(m, r, i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(KDifferential {
            degree: pi.degree(),
            rank: r,
            dim_m: m,
            delta0,
            delta1,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn on_coordinate(&self, j: usize) -> &Graded {
        &self.delta0[j]
    }

    pub fn on_frame(&self, i: usize) -> &Graded {
        &self.delta1[i]
    }

    pub fn is_zero(&self) -> bool {
        self.delta0.iter().chain(&self.delta1).all(Graded::is_zero)
    }

    /// `δ f = Σ_j ∂_j f · δ(x_j)`.
    pub fn apply_function(&self, f: &Poly) -> Graded {
        let mut out = Graded::zero(self.dim_m, self.rank, self.degree - 1);
        for (j, d) in self.delta0.iter().enumerate() {
            out = &out + &d.scale_poly(&f.derivative(j));
        }
        out
    }

    /// Extends `δ` to all of `Γ(∧A)` as a derivation of degree `k-1`.
    pub fn apply(&self, x: &Graded) -> Result<Graded> {
        if x.nvars() != self.dim_m || x.ngen() != self.rank {
            return Err(Error::arity("section does not match the k-differential"));
        }
        let r = x.degree();
        let mut out = Graded::zero(self.dim_m, self.rank, r + self.degree - 1);
        let odd_k = (self.degree - 1) % 2 == 1;
        for (b, f) in x.terms() {
            let idx = crate::exterior::blade_indices(b);
            let gens: Vec<Graded> = idx
                .iter()
                .map(|&i| Graded::generator(self.dim_m, self.rank, i))
                .collect();
            let unit = Graded::function(Poly::one(self.dim_m), self.rank);
            let blade = gens.iter().try_fold(unit.clone(), |acc, g| acc.wedge(g))?;
            out = out.checked_add(&self.apply_function(f).wedge(&blade)?)?;
            for s in 0..gens.len() {
                let mut term = Graded::function(f.clone(), self.rank);
                for (t, g) in gens.iter().enumerate() {
                    let factor = if t == s { &self.delta1[idx[t]] } else { g };
                    term = term.wedge(factor)?;
                }
                let neg = odd_k && s % 2 == 1;
                out = if neg {
                    out.checked_sub(&term)?
                } else {
                    out.checked_add(&term)?
                };
            }
        }
        Ok(out)
    }

    /// Checks the bracket derivation laws on frame sections and base
    /// coordinates: `δ[X,Y] = [δX,Y] + [X,δY]` and
    /// `δ(ρ(X)f) = [δX, f] + [X, δf]`.
    pub fn check_bracket_laws(&self, algebroid: &LieAlgebroidData) -> Result<Verdict> {
        let (m, r) = (self.dim_m, self.rank);
        let e = |i| Graded::generator(m, r, i);
        for i in 0..r {
            for j in 0..r {
                let lhs = self.apply(&algebroid.bracket(&e(i), &e(j))?)?;
                let rhs = algebroid
                    .bracket(&self.delta1[i], &e(j))?
                    .checked_add(&algebroid.bracket(&e(i), &self.delta1[j])?)?;
                if lhs != rhs {
                    return Ok(Verdict::fail(Some(Witness::new(
                        format!("derivation law on e{} e{}", i + 1, j + 1),
                        vec![],
                    ))));
                }
            }
            for (a, x) in Poly::vars(m).into_iter().enumerate() {
                let xf = Graded::function(x.clone(), r);
                let lhs = self.apply_function(&algebroid.anchor_apply(i, &x));
                let rhs = algebroid
                    .bracket(&self.delta1[i], &xf)?
                    .checked_add(&algebroid.bracket(&e(i), &self.delta0[a])?)?;
                if lhs != rhs {
                    return Ok(Verdict::fail(Some(Witness::new(
                        format!("anchor law on e{} x{}", i + 1, a + 1),
                        vec![],
                    ))));
                }
            }
        }
        Ok(Verdict::pass())
    }
}

/// Checks `pr[Π,Π']|_M = δ_Π(π') - (-1)^{(k-1)(l-1)} δ_{Π'}(π) - [π,π']`.
pub fn decomposition_iso_check(p: &AffineMV, q: &AffineMV) -> Result<bool> {
    p.same_parent(q)?;
    let gp = p.parent();
    let alg = gp.lie_algebroid()?;
    let (k, l) = (p.degree() as i64, q.degree() as i64);
    let lhs = restrict_mv(gp, &p.field.schouten(&q.field)?)?.contravariant()?;
    let pi = p.base.contravariant()?;
    let pi2 = q.base.contravariant()?;
    let a = p.k_differential()?.apply(&pi2)?;
    let b = q.k_differential()?.apply(&pi)?;
    let c = alg.bracket(&pi, &pi2)?;
    let eps_neg = ((k - 1) * (l - 1)).rem_euclid(2) == 1;
    let b_term = if eps_neg { b } else { -&b };
    let rhs = a.checked_add(&b_term)?.checked_sub(&c)?;
    Ok(lhs == rhs)
}

/// Checks that the bracket is a functor:
/// `[P1 * P1', P2 * P2'] = [P1, P2] * [P1', P2']`.
pub fn lie2_functoriality_check(p1: &AffineMV, p1b: &AffineMV, p2: &AffineMV, p2b: &AffineMV) -> Result<bool> {
    let lhs = p1.compose(p1b)?.bracket(&p2.compose(p2b)?)?;
    let a = p1.bracket(p2)?;
    let b = p1b.bracket(p2b)?;
    match a.compose(&b) {
        Ok(rhs) => Ok(lhs.field == rhs.field),
        Err(Error::Composability(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Outcome of the Poisson analysis of an affine bivector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonReport {
    pub is_poisson: bool,
    pub bracket_right_invariant: bool,
    pub bracket_left_invariant: bool,
    pub right_part_poisson: bool,
    pub left_part_poisson: bool,
    /// `2 δ_{Π_r} π + [π, π]` vanishes.
    pub obstruction_vanishes: bool,
    /// Whether `Π⁻¹` is Poisson.
    pub inverse_poisson: bool,
}

impl PoissonReport {
    /// `Π_r` (`Π_l`) is Poisson exactly when `[Π, Π]` is right (left)
    /// invariant; given `Π_r` Poisson, `Π` is Poisson exactly when the
    /// obstruction vanishes; a Poisson `Π` has Poisson inverse and parts.
    pub fn consistent(&self) -> bool {
        let parts = self.right_part_poisson == self.bracket_right_invariant
            && self.left_part_poisson == self.bracket_left_invariant;
        let obstruction = !self.right_part_poisson || self.is_poisson == self.obstruction_vanishes;
        let inverse = !self.is_poisson || (self.inverse_poisson && self.right_part_poisson && self.left_part_poisson);
        parts && obstruction && inverse
    }
}

pub fn poisson_checks(p: &AffineMV) -> Result<PoissonReport> {
    if p.degree() != 2 {
        return Err(Error::degree("Poisson checks need a bivector field"));
    }
    let gp = p.parent();
    let self_bracket = |f: &MultiVectorField| -> Result<bool> { Ok(f.schouten(f)?.is_zero()) };
    let pp = p.field.schouten(&p.field)?;
    let t = as_tensor(&pp);
    let (pr, pl) = p.source_target()?;
    let right_mult = AffineMV::new(gp.clone(), pr.clone())?;
    let pi = p.base.contravariant()?;
    let obstruction = right_mult
        .k_differential()?
        .apply(&pi)?
        .scale(&crate::exact::int(2))
        .checked_add(&gp.lie_algebroid()?.bracket(&pi, &pi)?)?;
    Ok(PoissonReport {
        is_poisson: pp.is_zero(),
        bracket_right_invariant: gp.is_right_invariant(&t, Mode::Exact)?.zero,
        bracket_left_invariant: gp.is_left_invariant(&t, Mode::Exact)?.zero,
        right_part_poisson: self_bracket(&pr)?,
        left_part_poisson: self_bracket(&pl)?,
        obstruction_vanishes: obstruction.is_zero(),
        inverse_poisson: self_bracket(p.inverse()?.field())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exact::int;

    fn sec(gp: &PolyGroupoid, g: Graded) -> AlgebroidSection {
        AlgebroidSection::from_contravariant(&g, gp.dim_m()).unwrap()
    }

    #[test]
    fn abelian_examples() {
        let g = catalog::abelian(1);
        let x = Poly::vars(1);
        let lin = MultiVectorField::vector(&[&x[0] + &Poly::one(1)]);
        assert!(is_affine_mv(&g, &lin, Mode::Exact).unwrap().pass);
        assert!(!is_multiplicative_mv(&g, &lin, Mode::Exact).unwrap().pass);
        let sq = MultiVectorField::vector(&[x[0].pow(2)]);
        let v = is_affine_mv(&g, &sq, Mode::Exact).unwrap();
        assert!(!v.pass);
        assert!(v.witness.is_some());
    }

    #[test]
    fn right_translate_decomposition() {
        let g = catalog::pair(1);
        let x = Poly::vars(1);
        let pi = sec(&g, Graded::linear(1, &[&x[0] * &x[0]]));
        let a = AffineMV::from_translates(g.clone(), &pi, &AlgebroidSection::zero(1, 1, 1, 0)).unwrap();
        let (r, l) = a.source_target().unwrap();
        assert!(r.is_zero());
        let want = &right_translate_mv(&g, &pi).unwrap() - &left_translate_mv(&g, &pi).unwrap();
        assert_eq!(l, want);
        assert_eq!(a.inverse().unwrap().field(), &-&left_translate_mv(&g, &pi).unwrap());
    }

    #[test]
    fn inverse_laws() {
        let g = catalog::pair(1);
        let x = Poly::vars(1);
        let pi = sec(&g, Graded::linear(1, &[x[0].clone()]));
        let gam = sec(&g, Graded::linear(1, &[Poly::int(1, 3)]));
        let a = AffineMV::from_translates(g.clone(), &pi, &gam).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.compose(&inv).unwrap().field(), &a.left_part().unwrap());
        assert_eq!(inv.compose(&a).unwrap().field(), &a.right_part().unwrap());
        assert_eq!(inv.inverse().unwrap().field(), a.field());
        let twice = a.scale(&int(2)).unwrap();
        assert!(matches!(a.compose(&twice), Err(Error::Composability(_))));
    }

    fn bivector_pi(gp: &PolyGroupoid) -> AlgebroidSection {
        let (m, r) = (gp.dim_m(), gp.rank());
        let x = Poly::vars(m);
        let c = if m > 0 {
            &x[0] + &Poly::int(m, 2)
        } else {
            Poly::int(0, 2)
        };
        let g = Graded::from_terms(m, r, 2, [(0b11, c)]).unwrap();
        sec(gp, g)
    }

    #[test]
    fn k_differential_of_translates() {
        for id in ["heisenberg", "pair2"] {
            let g = catalog::by_id(id).unwrap();
            let pi = bivector_pi(&g);
            let zero = AlgebroidSection::zero(g.rank(), g.dim_m(), 2, 0);
            let right = AffineMV::from_translates(g.clone(), &pi, &zero).unwrap();
            let left = AffineMV::from_translates(g.clone(), &zero, &pi).unwrap();
            let alg = g.lie_algebroid().unwrap();
            let inner = KDifferential::inner(alg, &pi.contravariant().unwrap()).unwrap();
            assert_eq!(right.k_differential().unwrap(), inner, "{id}");
            assert!(left.k_differential().unwrap().is_zero(), "{id}");
        }
    }

    #[test]
    fn decomposition_on_mixed_fields() {
        for id in ["heisenberg", "pair2", "pair1xheis", "pair3"] {
            let g = catalog::by_id(id).unwrap();
            let pi = bivector_pi(&g);
            let zero2 = AlgebroidSection::zero(g.rank(), g.dim_m(), 2, 0);
            let mult = AffineMV::from_translates(g.clone(), &pi, &zero2)
                .unwrap()
                .left_part()
                .unwrap();
            assert!(is_multiplicative_mv(&g, &mult, Mode::Exact).unwrap().pass, "{id}");
            let (m, r) = (g.dim_m(), g.rank());
            let e12 = sec(&g, Graded::from_terms(m, r, 2, [(0b11, Poly::int(m, 3))]).unwrap());
            let p = AffineMV::new(g.clone(), &mult + &right_translate_mv(&g, &e12).unwrap()).unwrap();
            let q = AffineMV::from_translates(g.clone(), &pi, &pi).unwrap();
            let e1 = AlgebroidSection::generator(r, m, 0);
            let e2 = AlgebroidSection::generator(r, m, 1);
            let v = AffineMV::from_translates(g.clone(), &e1, &e2).unwrap();
            for (a, b) in [(&p, &q), (&q, &p), (&q, &q), (&p, &p), (&v, &q), (&p, &v), (&v, &v)] {
                assert!(decomposition_iso_check(a, b).unwrap(), "{id}");
            }
            let kd = AffineMV::new(g.clone(), mult).unwrap().k_differential().unwrap();
            assert!(kd.check_bracket_laws(g.lie_algebroid().unwrap()).unwrap().pass, "{id}");
        }
    }

    #[test]
    fn poisson_clauses_hold() {
        let g = catalog::heisenberg();
        let pi = bivector_pi(&g);
        let zero = AlgebroidSection::zero(3, 0, 2, 0);
        for (r, l) in [(&pi, &zero), (&zero, &pi), (&pi, &pi)] {
            let a = AffineMV::from_translates(g.clone(), r, l).unwrap();
            let rep = poisson_checks(&a).unwrap();
            assert!(rep.consistent(), "{rep:?}");
        }
        assert!(matches!(
            poisson_checks(
                &AffineMV::from_translates(
                    g.clone(),
                    &AlgebroidSection::generator(3, 0, 0),
                    &AlgebroidSection::zero(3, 0, 1, 0)
                )
                .unwrap()
            ),
            Err(Error::Degree(_))
        ));
    }

    #[test]
    fn functoriality_on_pair() {
        let g = catalog::pair(1);
        let x = Poly::vars(1);
        let a = sec(&g, Graded::linear(1, &[x[0].pow(2)]));
        let b = sec(&g, Graded::linear(1, &[&x[0] + &Poly::one(1)]));
        let z = AlgebroidSection::zero(1, 1, 1, 0);
        let p1 = AffineMV::from_translates(g.clone(), &a, &z).unwrap();
        let p1b = AffineMV::from_translates(g.clone(), &z, &a).unwrap();
        let p2 = AffineMV::from_translates(g.clone(), &b, &z).unwrap();
        let p2b = AffineMV::from_translates(g.clone(), &z, &b).unwrap();
        assert!(lie2_functoriality_check(&p1, &p1b, &p2, &p2b).unwrap());
    }
}
