//! Named check suites over catalog or user-supplied groupoids.
//!
//! Every check is deterministic given the seed: random sections and forms
//! are drawn from a [`RationalSampler`] seeded per groupoid, and the report
//! is sorted before it is returned.

use std::sync::Arc;

use crate::affine_forms::{
    base_form, cochain_iso_check, group_affine_kernel_trivial, is_affine_form, is_multiplicative_form,
    parallelogram_isotropy, source_pullback, target_pullback, AffineForm,
};
use crate::affine_mv::{
    decomposition_iso_check, is_affine_mv, is_multiplicative_mv, left_translate_mv, lie2_functoriality_check,
    poisson_checks, restrict_mv, right_translate_mv, AffineMV, KDifferential,
};
use crate::affine_tensors::{
    composition_laws_check, group_cases_check, is_affine_tensor, is_multiplicative_tensor, monoidal_interchange_check,
    pi_theta_check, t11_compose, translate_product_check, Affine11, AffineTensor,
};
use crate::catalog::{self, fixtures, fixtures::Fixture, fixtures::FixtureField};
use crate::error::{Error, Result};
use crate::exact::{int, Matrix, Mode, Poly, PolyMatrix, RationalSampler, Scalar, DEFAULT_SAMPLES};
use crate::exterior::{blades, DifferentialForm, Graded, MultiVectorField, TensorField};
use crate::groupoid::{coisotropy_oracle, AlgebroidSection, OracleShape, PolyGroupoid};
use crate::io::FieldData;
use crate::report::{CheckEntry, Report, Verdict, Witness};

/// Seed, identity-testing mode and oracle sample count of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub mode: Mode,
    pub samples: usize,
}

impl SuiteConfig {
    pub fn exact(seed: u64) -> Self {
        SuiteConfig {
            seed,
            mode: Mode::Exact,
            samples: DEFAULT_SAMPLES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layer {
    Groupoid,
    MultiVector,
    Forms,
    Tensors,
}

const ALL_LAYERS: &[Layer] = &[Layer::Groupoid, Layer::MultiVector, Layer::Forms, Layer::Tensors];

pub const SUITES: &[&str] = &["paper", "full", "groupoid", "mv", "forms", "tensors"];

/// Layers run by a named suite. `paper` and `full` are the same suite.
pub fn layers(suite: &str) -> Result<&'static [Layer]> {
    Ok(match suite {
        "paper" | "full" => ALL_LAYERS,
        "groupoid" => &ALL_LAYERS[0..1],
        "mv" => &ALL_LAYERS[1..2],
        "forms" => &ALL_LAYERS[2..3],
        "tensors" => &ALL_LAYERS[3..4],
        _ => {
            return Err(Error::Unknown {
                what: "suite".into(),
                name: suite.into(),
            })
        }
    })
}

/// A groupoid with the fixtures checked on it.
#[derive(Clone, Debug)]
pub struct Target {
    pub groupoid: Arc<PolyGroupoid>,
    pub fixtures: Vec<Fixture>,
    catalog_id: Option<String>,
}

impl Target {
    pub fn catalog(id: &str) -> Result<Self> {
        Ok(Target {
            groupoid: catalog::by_id(id)?,
            fixtures: fixtures::on(id)?,
            catalog_id: Some(id.to_string()),
        })
    }

    pub fn custom(groupoid: Arc<PolyGroupoid>) -> Result<Self> {
        let fixtures = fixtures::for_groupoid(&groupoid)?;
        Ok(Target {
            groupoid,
            fixtures,
            catalog_id: None,
        })
    }

    /// `catalog:<id>` or a path to groupoid JSON.
    pub fn load(arg: &str) -> Result<Self> {
        match arg.strip_prefix("catalog:") {
            Some(id) => Target::catalog(id),
            None => Target::custom(crate::io::load_groupoid(arg)?),
        }
    }

    fn name(&self) -> &str {
        self.groupoid.name()
    }
}

pub fn catalog_targets() -> Result<Vec<Target>> {
    catalog::ids().iter().map(|id| Target::catalog(id)).collect()
}

struct Recorder {
    cfg: SuiteConfig,
    entries: Vec<CheckEntry>,
}

impl Recorder {
    fn record(&mut self, check: &str, cite: &str, instance: &str, outcome: Result<Verdict>) {
        let verdict = outcome.unwrap_or_else(|e| Verdict::fail(Some(Witness::new(e.to_string(), vec![]))));
        self.entries.push(CheckEntry {
            check: check.into(),
            cite: cite.into(),
            instance: instance.into(),
            mode: self.cfg.mode.name().into(),
            seed: self.cfg.seed,
            pass: verdict.pass,
            witness: verdict.witness.map(|w| w.to_json()),
        });
    }
}

pub fn run_suite(suite: &str, targets: &[Target], cfg: &SuiteConfig) -> Result<Report> {
    let layers = layers(suite)?;
    let mut rec = Recorder {
        cfg: *cfg,
        entries: Vec::new(),
    };
    for t in targets {
        let mut rng = RationalSampler::new(cfg.seed ^ name_hash(t.name()));
        for layer in layers {
            match layer {
                Layer::Groupoid => groupoid_checks(&mut rec, t),
                Layer::MultiVector => mv_checks(&mut rec, t, &mut rng),
                Layer::Forms => form_checks(&mut rec, t, &mut rng),
                Layer::Tensors => tensor_checks(&mut rec, t, &mut rng),
            }
        }
    }
    Ok(Report::new(suite, cfg.seed, rec.entries))
}

pub const PREDICATES: &[&str] = &[
    "affine-mv",
    "multiplicative-mv",
    "oracle-parallelograms",
    "oracle-triangles",
    "affine-form",
    "multiplicative-form",
    "isotropy",
    "affine-tensor",
    "multiplicative-tensor",
];

/// Verdict and cite id of a named predicate on one field.
pub fn predicate(gp: &PolyGroupoid, name: &str, f: &FieldData, cfg: &SuiteConfig) -> Result<(Verdict, &'static str)> {
    let mode = cfg.mode;
    let wrong = || Error::parse("predicate", format!("{name} does not apply to a {} field", f.kind()));
    Ok(match (name, f) {
        ("affine-mv", FieldData::MultiVector(p)) => (is_affine_mv(gp, p, mode)?, "affine-mv-bracket-characterization"),
        ("multiplicative-mv", FieldData::MultiVector(p)) => (
            is_multiplicative_mv(gp, p, mode)?,
            "multiplicative-mv-bracket-characterization",
        ),
        ("oracle-parallelograms", FieldData::MultiVector(p)) => (
            coisotropy_oracle(gp, p, OracleShape::Parallelograms, cfg.seed, cfg.samples)?,
            "coisotropy-characterization-mv",
        ),
        ("oracle-triangles", FieldData::MultiVector(p)) => (
            coisotropy_oracle(gp, p, OracleShape::Triangles, cfg.seed, cfg.samples)?,
            "coisotropy-characterization-mv",
        ),
        ("affine-form", FieldData::Form(w)) => (is_affine_form(gp, w, mode)?, "affine-form-identity"),
        ("multiplicative-form", FieldData::Form(w)) => {
            (is_multiplicative_form(gp, w, mode)?, "multiplicative-form-identity")
        }
        ("isotropy", FieldData::Form(w)) => (parallelogram_isotropy(gp, w, mode)?, "isotropy-characterization-form"),
        ("affine-tensor", f) => (is_affine_tensor(gp, &f.tensor(), mode)?, "affine-tensor-identity"),
        ("multiplicative-tensor", f) => (
            is_multiplicative_tensor(gp, &f.tensor(), mode)?,
            "multiplicative-tensor-identity",
        ),
        _ if PREDICATES.contains(&name) => return Err(wrong()),
        _ => {
            return Err(Error::Unknown {
                what: "predicate".into(),
                name: name.into(),
            })
        }
    })
}

/// A one-entry report for a named predicate.
pub fn run_predicate(
    gp: &PolyGroupoid,
    name: &str,
    f: &FieldData,
    instance: &str,
    cfg: &SuiteConfig,
) -> Result<Report> {
    let (v, cite) = predicate(gp, name, f, cfg)?;
    let mut rec = Recorder {
        cfg: *cfg,
        entries: Vec::new(),
    };
    rec.record(name, cite, instance, Ok(v));
    Ok(Report::new("predicate", cfg.seed, rec.entries))
}

/// FNV-1a, so that each groupoid draws its own stream.
fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

fn fail(what: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict::fail(Some(Witness::new(what, vec![]))))
}

fn check(ok: bool, what: &str) -> Result<Verdict> {
    if ok {
        Ok(Verdict::pass())
    } else {
        fail(what)
    }
}

// ---- random data ----

fn rand_poly(m: usize, rng: &mut RationalSampler) -> Poly {
    let mut p = Poly::constant(m, rng.scalar());
    if m > 0 {
        let x = Poly::vars(m);
        p = &p + &x[0].scale(&rng.scalar());
        p = &p + &(&x[0] * &x[m - 1]).scale(&rng.scalar());
    }
    p
}

/// Random section of `∧^p A ⊗ ∧^q T*M` with coefficients of degree at most 2.
pub fn random_section(gp: &PolyGroupoid, p: usize, q: usize, rng: &mut RationalSampler) -> Result<AlgebroidSection> {
    let (r, m) = (gp.rank(), gp.dim_m());
    let mut terms = Vec::new();
    for i in blades(r, p) {
        for j in blades(m, q) {
            terms.push(((i, j), rand_poly(m, rng)));
        }
    }
    AlgebroidSection::from_terms(r, m, (p, q), terms)
}

pub fn random_base_form(m: usize, k: usize, rng: &mut RationalSampler) -> Result<DifferentialForm> {
    let terms: Vec<_> = blades(m, k).into_iter().map(|b| (b, rand_poly(m, rng))).collect();
    DifferentialForm::from_terms(m, k, terms)
}

// ---- 2-vector space laws ----

/// Arrows of a 2-vector space whose objects are the multiplicative fields.
pub trait Arrow: Sized {
    type Field: Clone + PartialEq;
    fn field(&self) -> &Self::Field;
    /// `(source, target)`.
    fn parts(&self) -> Result<(Self::Field, Self::Field)>;
    fn compose(&self, other: &Self) -> Result<Self>;
    fn inverse(&self) -> Result<Self>;
    fn plus(&self, other: &Self) -> Result<Self>;
    fn times(&self, c: &Scalar) -> Result<Self>;
    fn add_fields(a: &Self::Field, b: &Self::Field) -> Result<Self::Field>;
    fn scale_field(a: &Self::Field, c: &Scalar) -> Self::Field;
}

macro_rules! arrow_impl {
    ($ty:ty, $field:ty, $get:ident) => {
        impl Arrow for $ty {
            type Field = $field;
            fn field(&self) -> &$field {
                self.$get()
            }
            fn parts(&self) -> Result<($field, $field)> {
                self.source_target()
            }
            fn compose(&self, other: &Self) -> Result<Self> {
                <$ty>::compose(self, other)
            }
            fn inverse(&self) -> Result<Self> {
                <$ty>::inverse(self)
            }
            fn plus(&self, other: &Self) -> Result<Self> {
                self.checked_add(other)
            }
            fn times(&self, c: &Scalar) -> Result<Self> {
                self.scale(c)
            }
            fn add_fields(a: &$field, b: &$field) -> Result<$field> {
                a.checked_add(b)
            }
            fn scale_field(a: &$field, c: &Scalar) -> $field {
                a.scale(c)
            }
        }
    };
}

arrow_impl!(AffineMV, MultiVectorField, field);
arrow_impl!(AffineForm, DifferentialForm, form);
arrow_impl!(AffineTensor, TensorField, field);

/// Source and target of compositions, associativity, units, inverses,
/// linearity of source and target, and the interchange of sum and
/// composition.
///
/// `lefts` are fields whose sum with an object `X` is an arrow with target
/// `X` (left translates of base data); `make` wraps a field as an arrow.
pub fn two_vector_space_laws<A: Arrow>(
    a: &A,
    a2: &A,
    lefts: [&A::Field; 2],
    make: impl Fn(A::Field) -> Result<A>,
) -> Result<Verdict> {
    let (ar, al) = a.parts()?;
    let b = make(A::add_fields(&ar, lefts[0])?)?;
    let (br, bl) = b.parts()?;
    if bl != ar {
        return fail("constructed arrow does not end at the source");
    }
    let ab = a.compose(&b)?;
    let (abr, abl) = ab.parts()?;
    if abr != br || abl != al {
        return fail("source or target of a composition");
    }
    let c = make(A::add_fields(&br, lefts[1])?)?;
    if ab.compose(&c)?.field() != a.compose(&b.compose(&c)?)?.field() {
        return fail("associativity");
    }
    let unit_l = make(al.clone())?;
    let unit_r = make(ar.clone())?;
    if unit_l.compose(a)?.field() != a.field() || a.compose(&unit_r)?.field() != a.field() {
        return fail("unit laws");
    }
    let inv = a.inverse()?;
    if a.compose(&inv)?.field() != &al || inv.compose(a)?.field() != &ar || inv.inverse()?.field() != a.field() {
        return fail("inverse laws");
    }
    let (a2r, a2l) = a2.parts()?;
    let (sr, sl) = a.plus(a2)?.parts()?;
    if sr != A::add_fields(&ar, &a2r)? || sl != A::add_fields(&al, &a2l)? {
        return fail("source and target are not additive");
    }
    let c3 = int(3);
    let (tr, tl) = a.times(&c3)?.parts()?;
    if tr != A::scale_field(&ar, &c3) || tl != A::scale_field(&al, &c3) {
        return fail("source and target are not homogeneous");
    }
    let b2 = make(A::add_fields(&a2r, lefts[1])?)?;
    let lhs = a.plus(a2)?.compose(&b.plus(&b2)?)?;
    let rhs = ab.plus(&a2.compose(&b2)?)?;
    check(lhs.field() == rhs.field(), "composition is not linear")
}

// ---- groupoid layer ----

fn groupoid_checks(rec: &mut Recorder, t: &Target) {
    let gp = &t.groupoid;
    let name = t.name();
    let mode = rec.cfg.mode;
    rec.record(
        "groupoid-axioms",
        "groupoid-structure-identities",
        name,
        gp.validate_axioms(mode).map(|v| match v.first() {
            None => Verdict::pass(),
            Some(bad) => Verdict::fail(Some(bad.to_witness())),
        }),
    );
    let commute = (|| {
        for i in 0..gp.rank() {
            for j in 0..gp.rank() {
                let br = gp.right_invariant_vector(i).schouten(&gp.left_invariant_vector(j))?;
                if !br.is_zero() {
                    return fail(format!("[→e{}, ←e{}] is nonzero", i + 1, j + 1));
                }
            }
        }
        Ok(Verdict::pass())
    })();
    rec.record(
        "translation-frames-commute",
        "right-left-invariant-fields-commute",
        name,
        commute,
    );
}

// ---- multivector layer ----

fn oracle_samples(cfg: &SuiteConfig) -> usize {
    match cfg.mode {
        Mode::Sampled { samples, .. } => samples,
        Mode::Exact => cfg.samples,
    }
}

fn mv_fixture_checks(rec: &mut Recorder, gp: &PolyGroupoid, f: &Fixture, pi: &MultiVectorField) {
    let (mode, seed, samples) = (rec.cfg.mode, rec.cfg.seed, oracle_samples(&rec.cfg));
    let fast = || -> Result<(bool, bool)> {
        Ok((
            is_affine_mv(gp, pi, mode)?.pass,
            is_multiplicative_mv(gp, pi, mode)?.pass,
        ))
    };
    rec.record(
        "fixture-verdict",
        f.cite,
        &f.name,
        fast().map(|v| Verdict::from_bool(v == (f.affine, f.multiplicative))),
    );
    let oracle = (|| {
        let (affine, mult) = fast()?;
        let par = coisotropy_oracle(gp, pi, OracleShape::Parallelograms, seed, samples)?;
        let tri = coisotropy_oracle(gp, pi, OracleShape::Triangles, seed, samples)?;
        if par.pass != affine {
            return Ok(Verdict::fail(
                par.witness
                    .or(Some(Witness::new("parallelogram oracle disagrees", vec![]))),
            ));
        }
        if tri.pass != mult {
            return Ok(Verdict::fail(
                tri.witness.or(Some(Witness::new("triangle oracle disagrees", vec![]))),
            ));
        }
        Ok(Verdict::pass())
    })();
    rec.record("oracle-agreement-mv", "coisotropy-characterization-mv", &f.name, oracle);
    let decomposition = (|| {
        let base = restrict_mv(gp, pi)?;
        let r = pi.checked_sub(&right_translate_mv(gp, &base)?)?;
        let l = pi.checked_sub(&left_translate_mv(gp, &base)?)?;
        let affine = is_affine_mv(gp, pi, mode)?.pass;
        let (mr, ml) = (
            is_multiplicative_mv(gp, &r, mode)?.pass,
            is_multiplicative_mv(gp, &l, mode)?.pass,
        );
        check(
            affine == mr && mr == ml,
            "affine, right part and left part verdicts differ",
        )
    })();
    rec.record(
        "decomposition-mv",
        "affine-iff-parts-multiplicative-mv",
        &f.name,
        decomposition,
    );
}

fn mv_checks(rec: &mut Recorder, t: &Target, rng: &mut RationalSampler) {
    let gp = &t.groupoid;
    let name = t.name();
    for f in &t.fixtures {
        if let FixtureField::MultiVector(pi) = &f.field {
            mv_fixture_checks(rec, gp, f, pi);
        }
    }
    let r = gp.rank();
    for k in 1..=r.min(2) {
        let inst = format!("{name}/degree{k}");
        let out = (|| {
            let a = AffineMV::from_translates(
                gp.clone(),
                &random_section(gp, k, 0, rng)?,
                &random_section(gp, k, 0, rng)?,
            )?;
            let a2 = AffineMV::from_translates(
                gp.clone(),
                &random_section(gp, k, 0, rng)?,
                &random_section(gp, k, 0, rng)?,
            )?;
            let l1 = left_translate_mv(gp, &random_section(gp, k, 0, rng)?)?;
            let l2 = left_translate_mv(gp, &random_section(gp, k, 0, rng)?)?;
            two_vector_space_laws(&a, &a2, [&l1, &l2], |f| AffineMV::new(gp.clone(), f))
        })();
        rec.record("two-vector-space-mv", "affine-mv-two-vector-space", &inst, out);
        let kd = (|| {
            let pi = random_section(gp, k, 0, rng)?;
            let zero = AlgebroidSection::zero(r, gp.dim_m(), k, 0);
            let alg = gp.lie_algebroid()?;
            let right = AffineMV::from_translates(gp.clone(), &pi, &zero)?.k_differential()?;
            let left = AffineMV::from_translates(gp.clone(), &zero, &pi)?.k_differential()?;
            if right != KDifferential::inner(alg, &pi.contravariant()?)? {
                return fail("δ of a right translate is not [π, ·]");
            }
            if !left.is_zero() {
                return fail("δ of a left translate is nonzero");
            }
            let gamma = random_section(gp, k, 0, rng)?;
            let mixed = AffineMV::from_translates(gp.clone(), &pi, &gamma)?;
            let mult = AffineMV::new(gp.clone(), mixed.right_part()?)?;
            for field in [&mixed, &mult] {
                let v = field.k_differential()?.check_bracket_laws(alg)?;
                if !v.pass {
                    return Ok(v);
                }
            }
            Ok(Verdict::pass())
        })();
        rec.record("k-differential", "k-differential-of-affine-mv", &inst, kd);
    }
    // brackets of degrees (1,1) and (1,2)
    for l in 1..=r.min(2) {
        let inst = format!("{name}/degrees1,{l}");
        let built = (|| -> Result<_> {
            let (p1, p1b) = composable_mv(gp, 1, rng)?;
            let (p2, p2b) = composable_mv(gp, l, rng)?;
            Ok((p1, p1b, p2, p2b))
        })();
        let (p1, p1b, p2, p2b) = match built {
            Ok(x) => x,
            Err(e) => {
                rec.record("lie2-functor", "bracket-is-a-functor", &inst, Err(e));
                continue;
            }
        };
        rec.record(
            "lie2-functor",
            "bracket-is-a-functor",
            &inst,
            lie2_functoriality_check(&p1, &p1b, &p2, &p2b).map(Verdict::from_bool),
        );
        let closure = (|| {
            p1.bracket(&p2)?;
            let mr = p1.right_part()?.schouten(&p2.right_part()?)?;
            check(
                is_multiplicative_mv(gp, &mr, Mode::Exact)?.pass,
                "bracket of multiplicative fields",
            )
        })();
        rec.record("schouten-closure", "affine-mv-closed-under-schouten", &inst, closure);
        let component = (|| {
            let ok = decomposition_iso_check(&p1, &p2)?
                && decomposition_iso_check(&p2, &p1)?
                && decomposition_iso_check(&p1, &p1b)?;
            check(ok, "unit component of the bracket")
        })();
        rec.record(
            "schouten-component",
            "schouten-bracket-unit-component",
            &inst,
            component,
        );
    }
    if r >= 2 {
        poisson_battery(rec, t, rng);
    }
}

/// A random affine field `P` of degree `k` and `P'` with `P * P'` defined.
fn composable_mv(gp: &Arc<PolyGroupoid>, k: usize, rng: &mut RationalSampler) -> Result<(AffineMV, AffineMV)> {
    let p = AffineMV::from_translates(
        gp.clone(),
        &random_section(gp, k, 0, rng)?,
        &random_section(gp, k, 0, rng)?,
    )?;
    let left = left_translate_mv(gp, &random_section(gp, k, 0, rng)?)?;
    let q = AffineMV::new(gp.clone(), p.right_part()?.checked_add(&left)?)?;
    Ok((p, q))
}

fn bivector(gp: &PolyGroupoid, blade: u64, coeff: Poly) -> Result<AlgebroidSection> {
    let g = Graded::from_terms(gp.dim_m(), gp.rank(), 2, [(blade, coeff)])?;
    AlgebroidSection::from_contravariant(&g, gp.dim_m())
}

fn poisson_battery(rec: &mut Recorder, t: &Target, rng: &mut RationalSampler) {
    let gp = &t.groupoid;
    let (m, r) = (gp.dim_m(), gp.rank());
    let name = t.name();
    let consistent = (|| {
        let pi = random_section(gp, 2, 0, rng)?;
        let gamma = random_section(gp, 2, 0, rng)?;
        let zero = AlgebroidSection::zero(r, m, 2, 0);
        for (a, b) in [(&pi, &zero), (&zero, &pi), (&pi, &gamma)] {
            let rep = poisson_checks(&AffineMV::from_translates(gp.clone(), a, b)?)?;
            if !rep.consistent() {
                return fail(format!("inconsistent Poisson report {rep:?}"));
            }
        }
        Ok(Verdict::pass())
    })();
    rec.record(
        "poisson-clauses",
        "affine-poisson-criteria",
        &format!("{name}/random"),
        consistent,
    );
    // →π for a bivector section with [π, π] = 0
    let right = (|| {
        let alg = gp.lie_algebroid()?;
        let top = (1u64 << (r - 1)) | (1u64 << (r - 2));
        for blade in [0b11, 0b101 & ((1u64 << r) - 1), top] {
            if blade.count_ones() != 2 {
                continue;
            }
            let c = if m > 0 {
                &Poly::var(m, 0) + &Poly::int(m, 2)
            } else {
                Poly::int(0, 2)
            };
            let pi = bivector(gp, blade, c)?;
            let g = pi.contravariant()?;
            if !alg.bracket(&g, &g)?.is_zero() {
                continue;
            }
            let zero = AlgebroidSection::zero(r, m, 2, 0);
            let rep = poisson_checks(&AffineMV::from_translates(gp.clone(), &pi, &zero)?)?;
            return check(
                rep.is_poisson && rep.inverse_poisson && rep.consistent(),
                "→π is not Poisson",
            );
        }
        fail("no bivector section with [π, π] = 0 among the candidates")
    })();
    rec.record(
        "poisson-right-translate",
        "right-translate-of-poisson-section",
        &format!("{name}/right"),
        right,
    );
    if t.catalog_id.as_deref() == Some("pair2") {
        let explicit = (|| {
            let x = Poly::vars(2);
            let pi = bivector(gp, 0b11, &x[0].pow(2) + &Poly::one(2))?;
            let gamma = bivector(gp, 0b11, x[1].clone())?;
            let rep = poisson_checks(&AffineMV::from_translates(gp.clone(), &pi, &gamma)?)?;
            check(rep.is_poisson && rep.consistent(), "explicit affine Poisson field")
        })();
        rec.record("poisson-clauses", "affine-poisson-criteria", "pair2/explicit", explicit);
    }
}

// ---- forms layer ----

fn form_fixture_checks(rec: &mut Recorder, gp: &PolyGroupoid, f: &Fixture, theta: &DifferentialForm) {
    let mode = rec.cfg.mode;
    let fast = || -> Result<(bool, bool)> {
        Ok((
            is_affine_form(gp, theta, mode)?.pass,
            is_multiplicative_form(gp, theta, mode)?.pass,
        ))
    };
    rec.record(
        "fixture-verdict",
        f.cite,
        &f.name,
        fast().map(|v| Verdict::from_bool(v == (f.affine, f.multiplicative))),
    );
    let oracle = (|| {
        let iso = parallelogram_isotropy(gp, theta, mode)?;
        if iso.pass != fast()?.0 {
            return Ok(Verdict::fail(
                iso.witness.or(Some(Witness::new("isotropy disagrees", vec![]))),
            ));
        }
        Ok(Verdict::pass())
    })();
    rec.record(
        "oracle-agreement-form",
        "isotropy-characterization-form",
        &f.name,
        oracle,
    );
    let decomposition = (|| {
        let base = base_form(gp, theta)?;
        let r = theta.checked_sub(&target_pullback(gp, &base)?)?;
        let l = theta.checked_sub(&source_pullback(gp, &base)?)?;
        let affine = is_affine_form(gp, theta, mode)?.pass;
        let (mr, ml) = (
            is_multiplicative_form(gp, &r, mode)?.pass,
            is_multiplicative_form(gp, &l, mode)?.pass,
        );
        check(
            affine == mr && mr == ml,
            "affine, right part and left part verdicts differ",
        )
    })();
    rec.record(
        "decomposition-form",
        "affine-iff-parts-multiplicative-form",
        &f.name,
        decomposition,
    );
}

fn accepting_forms(t: &Target) -> Vec<&DifferentialForm> {
    t.fixtures
        .iter()
        .filter(|f| f.affine)
        .filter_map(|f| match &f.field {
            FixtureField::Form(w) => Some(w),
            FixtureField::MultiVector(_) => None,
        })
        .collect()
}

fn form_checks(rec: &mut Recorder, t: &Target, rng: &mut RationalSampler) {
    let gp = &t.groupoid;
    let name = t.name();
    let m = gp.dim_m();
    for f in &t.fixtures {
        if let FixtureField::Form(theta) = &f.field {
            form_fixture_checks(rec, gp, f, theta);
        }
    }
    let accepting = accepting_forms(t);
    for k in 1..=2 {
        let of_degree: Vec<&DifferentialForm> = accepting.iter().copied().filter(|w| w.degree() == k).collect();
        let [a, a2, ..] = of_degree.as_slice() else { continue };
        let out = (|| {
            let a = AffineForm::new(gp.clone(), (*a).clone())?;
            let a2 = AffineForm::new(gp.clone(), (*a2).clone())?;
            let left = |rng: &mut RationalSampler| -> Result<DifferentialForm> {
                if m >= k {
                    source_pullback(gp, &random_base_form(m, k, rng)?)
                } else {
                    Ok(DifferentialForm::zero(gp.dim_g(), k))
                }
            };
            let (l1, l2) = (left(rng)?, left(rng)?);
            two_vector_space_laws(&a, &a2, [&l1, &l2], |f| AffineForm::new(gp.clone(), f))
        })();
        rec.record(
            "two-vector-space-form",
            "affine-form-two-vector-space",
            &format!("{name}/degree{k}"),
            out,
        );
    }
    let affine: Result<Vec<AffineForm>> = accepting
        .iter()
        .map(|w| AffineForm::new(gp.clone(), (*w).clone()))
        .collect();
    let cochain = affine
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|fs| cochain_iso_check(fs));
    rec.record("cochain-isomorphism", "affine-forms-cochain-splitting", name, cochain);
    let im = affine.and_then(|fs| {
        for a in fs.iter().filter(|a| a.degree() >= 1) {
            a.im_form()?;
        }
        Ok(Verdict::pass())
    });
    rec.record("im-form", "im-form-equations", name, im);
    if gp.is_group() {
        let out = (|| {
            for k in 2..=gp.dim_g() {
                if !group_affine_kernel_trivial(gp, k, 2)? {
                    return fail(format!("a nonzero affine {k}-form exists"));
                }
            }
            Ok(Verdict::pass())
        })();
        rec.record("group-forms-vanish", "group-affine-forms-degree-at-most-one", name, out);
    }
}

// ---- tensor layer ----

fn tensor_fixture_checks(rec: &mut Recorder, gp: &PolyGroupoid, f: &Fixture) {
    let mode = rec.cfg.mode;
    let (t, fast) = match &f.field {
        FixtureField::MultiVector(pi) => (
            TensorField::from_multivector(pi),
            (|| {
                Ok((
                    is_affine_mv(gp, pi, mode)?.pass,
                    is_multiplicative_mv(gp, pi, mode)?.pass,
                ))
            })(),
        ),
        FixtureField::Form(w) => (
            TensorField::from_form(w),
            (|| {
                Ok((
                    is_affine_form(gp, w, mode)?.pass,
                    is_multiplicative_form(gp, w, mode)?.pass,
                ))
            })(),
        ),
    };
    let consistent = fast.and_then(|(a, mu)| {
        let ta = is_affine_tensor(gp, &t, mode)?.pass;
        let tm = is_multiplicative_tensor(gp, &t, mode)?.pass;
        check((ta, tm) == (a, mu), "tensor verdicts differ from the field verdicts")
    });
    rec.record(
        "tensor-consistency",
        "tensor-predicates-extend-fields-and-forms",
        &f.name,
        consistent,
    );
    let decomposition = (|| {
        let (p, q) = t.bidegree();
        let base = gp.restrict_project(&t, p, q)?;
        let r = t.checked_sub(&gp.translate_right(&base)?)?;
        let l = t.checked_sub(&gp.translate_left(&base)?)?;
        let affine = is_affine_tensor(gp, &t, mode)?.pass;
        let (mr, ml) = (
            is_multiplicative_tensor(gp, &r, mode)?.pass,
            is_multiplicative_tensor(gp, &l, mode)?.pass,
        );
        check(
            affine == mr && mr == ml,
            "affine, right part and left part verdicts differ",
        )
    })();
    rec.record(
        "decomposition-tensor",
        "affine-iff-parts-multiplicative-tensor",
        &f.name,
        decomposition,
    );
}

/// `c·id + →f + ←g` for random sections `f`, `g` of `A ⊗ T*M`.
fn random_affine11(gp: &Arc<PolyGroupoid>, rng: &mut RationalSampler) -> Result<Affine11> {
    let n = gp.dim_g();
    let f = gp.translate_right(&random_section(gp, 1, 1, rng)?)?;
    let g = gp.translate_left(&random_section(gp, 1, 1, rng)?)?;
    let id = TensorField::from_matrix(&PolyMatrix::identity(n, n)).scale(&rng.scalar());
    Affine11::new(gp.clone(), id.checked_add(&f)?.checked_add(&g)?.to_matrix()?)
}

/// An affine (1,1) tensor with target the right part of `n`.
fn after(gp: &Arc<PolyGroupoid>, n: &Affine11, rng: &mut RationalSampler) -> Result<Affine11> {
    let left = gp.translate_left(&random_section(gp, 1, 1, rng)?)?.to_matrix()?;
    Affine11::new(gp.clone(), n.right_matrix()?.add(&left)?)
}

fn tensor_checks(rec: &mut Recorder, t: &Target, rng: &mut RationalSampler) {
    let gp = &t.groupoid;
    let name = t.name();
    let (m, r) = (gp.dim_m(), gp.rank());
    for f in &t.fixtures {
        tensor_fixture_checks(rec, gp, f);
    }
    let mut bidegrees = vec![(1, 1)];
    if r >= 2 && m >= 1 {
        bidegrees.push((2, 1));
    }
    for (p, q) in bidegrees {
        let out = (|| {
            let arrow = |rng: &mut RationalSampler| -> Result<AffineTensor> {
                let base = if (p, q) == (1, 1) {
                    TensorField::from_matrix(&PolyMatrix::identity(gp.dim_g(), gp.dim_g())).scale(&rng.scalar())
                } else {
                    TensorField::zero_on(gp.dim_g(), p, q)
                };
                let f = base
                    .checked_add(&gp.translate_right(&random_section(gp, p, q, rng)?)?)?
                    .checked_add(&gp.translate_left(&random_section(gp, p, q, rng)?)?)?;
                AffineTensor::new(gp.clone(), f)
            };
            let a = arrow(rng)?;
            let a2 = arrow(rng)?;
            let l1 = gp.translate_left(&random_section(gp, p, q, rng)?)?;
            let l2 = gp.translate_left(&random_section(gp, p, q, rng)?)?;
            two_vector_space_laws(&a, &a2, [&l1, &l2], |f| AffineTensor::new(gp.clone(), f))
        })();
        rec.record(
            "two-vector-space-tensor",
            "affine-tensor-two-vector-space",
            &format!("{name}/type{p},{q}"),
            out,
        );
    }
    let laws = (|| {
        let a = random_affine11(gp, rng)?;
        let b = random_affine11(gp, rng)?;
        let v = composition_laws_check(&a, &b)?;
        if !v.pass {
            return Ok(v);
        }
        composition_laws_check(&b, &a)
    })();
    rec.record("t11-composition", "affine-endomorphism-composition", name, laws);
    let interchange = (|| {
        let n1 = random_affine11(gp, rng)?;
        let n2 = random_affine11(gp, rng)?;
        let n3 = after(gp, &n1, rng)?;
        let n4 = after(gp, &n2, rng)?;
        check(
            monoidal_interchange_check(&n1, &n2, &n3, &n4)?,
            "interchange or unit law",
        )
    })();
    rec.record(
        "monoidal-interchange",
        "strict-monoidal-endomorphisms",
        name,
        interchange,
    );
    if m >= 1 {
        let out = (|| {
            let u = random_section(gp, 1, 0, rng)?.contravariant()?;
            let beta = random_base_form(m, 1, rng)?.into_graded();
            check(translate_product_check(gp, &u, &beta)?, "translate of a product")
        })();
        rec.record("translate-product", "translates-of-decomposable-tensors", name, out);
    }
    if r >= 2 && m >= 2 {
        let out = (|| {
            let p = AffineMV::from_translates(
                gp.clone(),
                &random_section(gp, 2, 0, rng)?,
                &random_section(gp, 2, 0, rng)?,
            )?;
            let alpha = random_base_form(m, 2, rng)?;
            let beta = random_base_form(m, 2, rng)?;
            let theta = target_pullback(gp, &alpha)?.checked_add(&source_pullback(gp, &beta)?)?;
            pi_theta_check(&p, &AffineForm::new(gp.clone(), theta)?)
        })();
        rec.record("pi-theta", "bivector-after-two-form", name, out);
    }
    match t.catalog_id.as_deref() {
        Some(id @ ("pair1" | "pair2" | "pair3")) => {
            rec.record(
                "pair-normal-forms",
                "pair-endomorphism-normal-form",
                id,
                pair_normal_forms(gp, rng),
            );
        }
        Some(id @ ("pair1xheis" | "pair2xheis")) => {
            rec.record(
                "group-cases",
                "group-and-product-endomorphisms",
                id,
                group_cases(gp, rng),
            );
        }
        _ => {}
    }
}

fn random_matrix(m: usize, rng: &mut RationalSampler) -> PolyMatrix {
    let rows = (0..m).map(|_| (0..m).map(|_| rand_poly(m, rng)).collect()).collect();
    PolyMatrix::from_rows(m, rows, m).expect("square matrix")
}

fn pair_normal_form(gp: &Arc<PolyGroupoid>, a: &PolyMatrix, b: &PolyMatrix) -> Result<Affine11> {
    let m = gp.dim_m();
    let sec = |x: &PolyMatrix| AlgebroidSection::from_tensor(TensorField::from_matrix(x), m, m);
    Affine11::from_tensor(AffineTensor::from_translates(gp.clone(), &sec(a)?, &sec(b)?)?)
}

/// `diag(A(x), B(y))` on `Pair(Q^m)`.
fn pair_diag(gp: &PolyGroupoid, a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let m = a.rows();
    let dim = gp.dim_g();
    let vars = Poly::vars(dim);
    let (a, b) = (a.compose(&vars[..m], dim), b.compose(&vars[m..], dim));
    let mut out = PolyMatrix::zeros(dim, dim, dim);
    for i in 0..m {
        for j in 0..m {
            out.set(i, j, a.get(i, j).clone());
            out.set(m + i, m + j, b.get(i, j).clone());
        }
    }
    out
}

/// `(A, B) = →A + ←B` acts as `diag(A, -B)`, composes to `(AC, -BD)`, is
/// multiplicable with `(C, D)` exactly when `C = -B`, and `diag(A, A)` is
/// multiplicative.
fn pair_normal_forms(gp: &Arc<PolyGroupoid>, rng: &mut RationalSampler) -> Result<Verdict> {
    let m = gp.dim_m();
    let [a, b, c, d] = [(); 4].map(|_| random_matrix(m, rng));
    let ab = pair_normal_form(gp, &a, &b)?;
    if ab.matrix() != &pair_diag(gp, &a, &b.neg()) {
        return fail("normal form does not act block-diagonally");
    }
    let cd = pair_normal_form(gp, &c, &d)?;
    let prod = t11_compose(&ab, &cd)?;
    if prod.matrix() != pair_normal_form(gp, &a.mul(&c)?, &b.mul(&d)?.neg())?.matrix() {
        return fail("composition of normal forms");
    }
    let e = pair_normal_form(gp, &b.neg(), &d)?;
    if ab.star(&e)?.matrix() != pair_normal_form(gp, &a, &d)?.matrix() {
        return fail("product of multiplicable normal forms");
    }
    if c != b.neg() && !matches!(ab.star(&cd), Err(Error::Composability(_))) {
        return fail("non-multiplicable normal forms were multiplied");
    }
    let diag = TensorField::from_matrix(&pair_diag(gp, &a, &a));
    check(
        is_multiplicative_tensor(gp, &diag, Mode::Exact)?.pass,
        "diag(A, A) is not multiplicative",
    )
}

fn group_cases(product: &PolyGroupoid, rng: &mut RationalSampler) -> Result<Verdict> {
    let heis = catalog::heisenberg();
    let n = product.dim_m();
    let mut family = vec![Matrix::identity(3)];
    let mut swap = Matrix::zeros(3, 3);
    swap.set(0, 2, int(1));
    swap.set(2, 0, int(1));
    swap.set(1, 1, int(1));
    family.push(swap);
    let mut scale_center = Matrix::identity(3);
    scale_center.set(2, 2, int(2));
    family.push(scale_center);
    let mut to_center = Matrix::zeros(3, 3);
    to_center.set(2, 0, int(1));
    family.push(to_center);
    let n1 = random_matrix(n, rng);
    let n2 = random_matrix(n, rng);
    let cases = group_cases_check(&heis, product, &family, &n1, &n2, Mode::Exact)?;
    check(cases.pass(), &format!("{cases:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layers_by_name() {
        assert_eq!(layers("paper").unwrap(), layers("full").unwrap());
        assert!(layers("nope").is_err());
    }

    #[test]
    fn pair1_suite_passes() {
        let r = run_suite("paper", &[Target::catalog("pair1").unwrap()], &SuiteConfig::exact(3)).unwrap();
        let bad: Vec<_> = r.checks.iter().filter(|c| !c.pass).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }
}
