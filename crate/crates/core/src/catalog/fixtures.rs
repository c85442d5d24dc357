//! Accepting and rejecting multivector fields and forms on every catalog
//! groupoid, with their expected verdicts.

use crate::affine_forms::{source_pullback, target_pullback};
use crate::affine_mv::{left_translate_mv, right_translate_mv};
use crate::error::Result;
use crate::exact::{Poly, RationalSampler, Scalar};
use crate::exterior::{DifferentialForm, Graded, MultiVectorField};
use crate::groupoid::{AlgebroidSection, PolyGroupoid};

use super::{by_id, ids};

/// Seed of the perturbation coefficients used by rejecting fixtures.
pub const PERTURBATION_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq)]
pub enum FixtureField {
    MultiVector(MultiVectorField),
    Form(DifferentialForm),
}

impl FixtureField {
    pub fn degree(&self) -> usize {
        match self {
            FixtureField::MultiVector(m) => m.degree(),
            FixtureField::Form(f) => f.degree(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub groupoid: String,
    pub field: FixtureField,
    pub affine: bool,
    pub multiplicative: bool,
    pub cite: &'static str,
}

fn nonzero(rng: &mut RationalSampler) -> Scalar {
    loop {
        let c = rng.scalar();
        if c != Scalar::default() {
            return c;
        }
    }
}

/// `v_1 v_n` times a random nonzero constant: a degree two term mixing the
/// first and last coordinates.
fn perturbation(n: usize, rng: &mut RationalSampler) -> Poly {
    (&Poly::var(n, 0) * &Poly::var(n, n - 1)).scale(&nonzero(rng))
}

fn first_blade(k: usize) -> u64 {
    (1u64 << k) - 1
}

fn section(gp: &PolyGroupoid, k: usize, coeff: Poly) -> Result<AlgebroidSection> {
    let g = Graded::from_terms(gp.dim_m(), gp.rank(), k, [(first_blade(k), coeff)])?;
    AlgebroidSection::from_contravariant(&g, gp.dim_m())
}

fn base_coeff(m: usize, c: i64) -> Poly {
    if m == 0 {
        Poly::int(0, c)
    } else {
        &Poly::var(m, 0) + &Poly::int(m, c)
    }
}

/// Multivector fixtures on one groupoid: `→π`, `→π - ←π`, `→π + ←γ` and a
/// perturbed copy of each.
fn multivector_family(gp: &PolyGroupoid, rng: &mut RationalSampler) -> Result<Vec<Fixture>> {
    let id = gp.name();
    let (m, n) = (gp.dim_m(), gp.dim_g());
    let mut out = Vec::new();
    for k in 1..=gp.rank().min(2) {
        let pi = section(gp, k, base_coeff(m, 1))?;
        let gamma = section(gp, k, Poly::int(m, 3))?;
        let right = right_translate_mv(gp, &pi)?;
        let left_pi = left_translate_mv(gp, &pi)?;
        let left_gamma = left_translate_mv(gp, &gamma)?;
        let accepting = [
            ("right", right.clone(), false),
            ("mult", &right - &left_pi, true),
            ("mixed", &right + &left_gamma, false),
        ];
        for (tag, field, mult) in accepting {
            let noise = MultiVectorField::from_terms(n, k, [(first_blade(k), perturbation(n, rng))])?;
            out.push(Fixture {
                name: format!("{id}/mv{k}/{tag}"),
                groupoid: id.to_string(),
                field: FixtureField::MultiVector(field.clone()),
                affine: true,
                multiplicative: mult,
                cite: if mult {
                    "multiplicative-mv-from-translates"
                } else {
                    "affine-mv-from-translates"
                },
            });
            out.push(Fixture {
                name: format!("{id}/mv{k}/{tag}+noise"),
                groupoid: id.to_string(),
                field: FixtureField::MultiVector(&field + &noise),
                affine: false,
                multiplicative: false,
                cite: "perturbed-affine-mv",
            });
        }
    }
    Ok(out)
}

/// Forms on the base used to build form fixtures.
fn base_forms(m: usize) -> Vec<DifferentialForm> {
    let mut out = Vec::new();
    if m >= 1 {
        let x = Poly::vars(m);
        let mut comps = vec![Poly::zero(m); m];
        comps[0] = &x[0].pow(2) + &Poly::one(m);
        comps[m - 1] = &comps[m - 1] + &x[m - 1];
        out.push(DifferentialForm::covector(&comps));
    }
    if m >= 2 {
        let c = &Poly::var(m, 0) + &Poly::int(m, 2);
        out.push(DifferentialForm::from_terms(m, 2, [(0b11, c)]).expect("2-form"));
    }
    out
}

/// Multiplicative 1-forms on a group factor: differentials of the
/// homomorphisms to `Q` given by the first two coordinates.
fn character_forms(id: &str, n: usize, offset: usize) -> Vec<DifferentialForm> {
    let count = match id {
        "abelian1" => 1,
        _ => 2,
    };
    (0..count)
        .map(|i| DifferentialForm::exact(&Poly::var(n, offset + i)))
        .collect()
}

fn form_family(gp: &PolyGroupoid, rng: &mut RationalSampler) -> Result<Vec<Fixture>> {
    let id = gp.name();
    let (m, n) = (gp.dim_m(), gp.dim_g());
    let mut accepting: Vec<(String, DifferentialForm, bool, &'static str)> = Vec::new();
    for (i, theta) in base_forms(m).iter().enumerate() {
        let s = source_pullback(gp, theta)?;
        let t = target_pullback(gp, theta)?;
        let k = theta.degree();
        accepting.push((
            format!("form{k}/s*theta{i}"),
            s.clone(),
            false,
            "source-pullback-affine",
        ));
        accepting.push((
            format!("form{k}/t*theta{i}"),
            t.clone(),
            false,
            "target-pullback-affine",
        ));
        accepting.push((
            format!("form{k}/s*-t*theta{i}"),
            &s - &t,
            true,
            "source-minus-target-multiplicative",
        ));
    }
    if let [alpha, ..] = base_forms(m).as_slice() {
        let beta = alpha.scale(&crate::exact::int(-2));
        let f = &target_pullback(gp, alpha)? + &source_pullback(gp, &beta)?;
        accepting.push(("form1/pr1*alpha+pr2*beta".into(), f, false, "pair-forms-affine"));
    }
    let group_offset = match id {
        _ if gp.is_group() => Some(0),
        "pair1xheis" => Some(2),
        "pair2xheis" => Some(4),
        _ => None,
    };
    if let Some(off) = group_offset {
        for (i, f) in character_forms(id, n, off).into_iter().enumerate() {
            accepting.push((format!("form1/character{i}"), f, true, "group-forms-multiplicative"));
        }
    }
    let mut out = Vec::new();
    for (tag, form, mult, cite) in accepting {
        let k = form.degree();
        let noise = DifferentialForm::from_terms(n, k, [(first_blade(k), perturbation(n, rng))])?;
        out.push(Fixture {
            name: format!("{id}/{tag}"),
            groupoid: id.to_string(),
            field: FixtureField::Form(form.clone()),
            affine: true,
            multiplicative: mult,
            cite,
        });
        out.push(Fixture {
            name: format!("{id}/{tag}+noise"),
            groupoid: id.to_string(),
            field: FixtureField::Form(&form + &noise),
            affine: false,
            multiplicative: false,
            cite: "perturbed-affine-form",
        });
    }
    Ok(out)
}

/// Worked examples with known verdicts.
fn named_examples() -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    let x = Poly::vars(1);
    let mv = |name: &str, id: &str, f: MultiVectorField, affine, multiplicative, cite| Fixture {
        name: name.to_string(),
        groupoid: id.to_string(),
        field: FixtureField::MultiVector(f),
        affine,
        multiplicative,
        cite,
    };
    out.push(mv(
        "abelian1/linear",
        "abelian1",
        MultiVectorField::vector(&[x[0].scale(&crate::exact::int(3))]),
        true,
        true,
        "abelian-linear-multiplicative",
    ));
    out.push(mv(
        "abelian1/linear+constant",
        "abelian1",
        MultiVectorField::vector(&[&x[0] + &Poly::int(1, 2)]),
        true,
        false,
        "abelian-affine-linear-plus-constant",
    ));
    out.push(mv(
        "abelian1/x2dx",
        "abelian1",
        MultiVectorField::vector(&[x[0].pow(2)]),
        false,
        false,
        "abelian-quadratic-not-affine",
    ));
    // (Π(x), Π'(y)) on the pair groupoid
    let y = Poly::vars(4);
    let pair = MultiVectorField::from_terms(4, 2, [(0b0011, &y[0] * &y[1]), (0b1100, y[3].pow(2))])?;
    out.push(mv(
        "pair2/pi-x+pi'-y",
        "pair2",
        pair,
        true,
        false,
        "pair-two-fields-affine",
    ));
    let z = Poly::vars(2);
    let forms = [
        (
            "pair1/constant-dxdy",
            DifferentialForm::from_terms(2, 2, [(0b11, Poly::int(2, 1))])?,
            false,
        ),
        (
            "pair1/(x-y)^2dxdy",
            DifferentialForm::from_terms(2, 2, [(0b11, (&z[0] - &z[1]).pow(2))])?,
            false,
        ),
    ];
    for (name, f, ok) in forms {
        out.push(Fixture {
            name: name.to_string(),
            groupoid: "pair1".into(),
            field: FixtureField::Form(f),
            affine: ok,
            multiplicative: false,
            cite: "pair-form-not-affine",
        });
    }
    Ok(out)
}

/// Generated multivector and form families on any groupoid.
pub fn for_groupoid(gp: &PolyGroupoid) -> Result<Vec<Fixture>> {
    let mut rng = RationalSampler::new(PERTURBATION_SEED);
    let mut out = multivector_family(gp, &mut rng)?;
    out.extend(form_family(gp, &mut rng)?);
    Ok(out)
}

/// Worked examples and generated families on one catalog groupoid.
pub fn on(id: &str) -> Result<Vec<Fixture>> {
    let mut out: Vec<Fixture> = named_examples()?.into_iter().filter(|f| f.groupoid == id).collect();
    let gp = by_id(id)?;
    out.extend(for_groupoid(&gp)?);
    Ok(out)
}

/// All multivector and form fixtures, in a fixed order.
pub fn all() -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for id in ids() {
        out.extend(on(id)?);
    }
    Ok(out)
}

pub fn by_name(name: &str) -> Result<Fixture> {
    all()?
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| crate::error::Error::Unknown {
            what: "fixture".into(),
            name: name.into(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enough_fixtures_in_each_family() {
        let all = all().unwrap();
        let count = |mv: bool, affine: bool| {
            all.iter()
                .filter(|f| matches!(f.field, FixtureField::MultiVector(_)) == mv && f.affine == affine)
                .count()
        };
        for mv in [true, false] {
            assert!(count(mv, true) >= 20);
            assert!(count(mv, false) >= 20);
        }
        let mut names: Vec<&str> = all.iter().map(|f| f.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len());
    }

    #[test]
    fn verdicts_match_fast_paths() {
        use crate::affine_forms::{is_affine_form, is_multiplicative_form};
        use crate::affine_mv::{is_affine_mv, is_multiplicative_mv};
        use crate::exact::Mode;
        let mut bad = Vec::new();
        for f in all().unwrap() {
            let gp = by_id(&f.groupoid).unwrap();
            let (a, m) = match &f.field {
                FixtureField::MultiVector(x) => (
                    is_affine_mv(&gp, x, Mode::Exact).unwrap().pass,
                    is_multiplicative_mv(&gp, x, Mode::Exact).unwrap().pass,
                ),
                FixtureField::Form(x) => (
                    is_affine_form(&gp, x, Mode::Exact).unwrap().pass,
                    is_multiplicative_form(&gp, x, Mode::Exact).unwrap().pass,
                ),
            };
            if (a, m) != (f.affine, f.multiplicative) {
                bad.push((f.name.clone(), a, m));
            }
        }
        assert!(bad.is_empty(), "{bad:?}");
    }
}
