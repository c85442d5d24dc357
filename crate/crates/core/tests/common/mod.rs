//! Seeded property checks of the exterior-calculus laws, 100 cases each.

use affinoid::exact::{int, Poly, PolyMap};
use affinoid::exterior::{blades, DifferentialForm, Graded, MultiVectorField};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const N: usize = 3;

fn runner() -> TestRunner {
    let config = Config {
        cases: 100,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]))
}

/// Polynomials of degree at most 2 with small integer coefficients.
fn poly(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, nvars), -3i64..=3), 0..=3).prop_map(move |terms| {
        let terms = terms.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= 2);
        Poly::from_terms(nvars, terms.map(|(e, c)| (e, int(c)))).expect("arity matches")
    })
}

fn graded(degree: usize) -> impl Strategy<Value = Graded> {
    let bs = blades(N, degree);
    prop::collection::vec(poly(N), bs.len())
        .prop_map(move |cs| Graded::from_terms(N, N, degree, bs.iter().copied().zip(cs)).expect("valid blades"))
}

fn mv() -> impl Strategy<Value = MultiVectorField> {
    (0usize..=3)
        .prop_flat_map(graded)
        .prop_map(|g| MultiVectorField::from_graded(g).unwrap())
}

fn form(max: usize) -> impl Strategy<Value = DifferentialForm> {
    (0usize..=max)
        .prop_flat_map(graded)
        .prop_map(|g| DifferentialForm::from_graded(g).unwrap())
}

fn map(domain: usize, codomain: usize) -> impl Strategy<Value = PolyMap> {
    prop::collection::vec(poly(domain), codomain).prop_map(move |c| PolyMap::new(domain, c).unwrap())
}

fn odd(n: usize) -> bool {
    n % 2 == 1
}

fn sign(neg: bool, x: &MultiVectorField) -> MultiVectorField {
    if neg {
        -x
    } else {
        x.clone()
    }
}

/// Sum that ignores zero terms, whose degree is not meaningful.
fn add(x: &MultiVectorField, y: &MultiVectorField) -> MultiVectorField {
    if x.is_zero() {
        y.clone()
    } else if y.is_zero() {
        x.clone()
    } else {
        x.checked_add(y).unwrap()
    }
}

pub fn schouten_graded_antisymmetry() -> Result<(), String> {
    runner()
        .run(&(mv(), mv()), |(p, q)| {
            let (a, b) = (p.degree(), q.degree());
            let pq = p.schouten(&q).unwrap();
            let qp = q.schouten(&p).unwrap();
            prop_assert_eq!(pq, sign(!odd((a + 1) * (b + 1)), &qp));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn schouten_graded_jacobi() -> Result<(), String> {
    runner()
        .run(&(mv(), mv(), mv()), |(p, q, r)| {
            let (a, b, c) = (p.degree(), q.degree(), r.degree());
            if a + b > N + 1 || b + c > N + 1 || a + c > N + 1 {
                return Ok(());
            }
            let t1 = sign(odd((a + 1) * (c + 1)), &p.schouten(&q.schouten(&r).unwrap()).unwrap());
            let t2 = sign(odd((b + 1) * (a + 1)), &q.schouten(&r.schouten(&p).unwrap()).unwrap());
            let t3 = sign(odd((c + 1) * (b + 1)), &r.schouten(&p.schouten(&q).unwrap()).unwrap());
            let sum = add(&add(&t1, &t2), &t3);
            prop_assert!(sum.is_zero());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn schouten_leibniz() -> Result<(), String> {
    runner()
        .run(&(mv(), mv(), mv()), |(p, q, r)| {
            let (a, b, c) = (p.degree(), q.degree(), r.degree());
            if b + c > N || a + b + c > N + 1 {
                return Ok(());
            }
            let qr = q.wedge(&r).unwrap();
            let lhs = p.schouten(&qr).unwrap();
            let first = p.schouten(&q).unwrap().wedge(&r).unwrap();
            let second = sign(odd((a + 1) * b), &q.wedge(&p.schouten(&r).unwrap()).unwrap());
            let diff = add(&lhs, &-&add(&first, &second));
            prop_assert!(diff.is_zero(), "[P, Q^R] = {:?}", lhs);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn exterior_derivative_squares_to_zero() -> Result<(), String> {
    runner()
        .run(&form(1), |w| {
            prop_assert!(w.d().d().is_zero());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn pullback_is_functorial_and_commutes_with_d() -> Result<(), String> {
    runner()
        .run(&(form(2), map(2, N), map(N, 2)), |(w, g, f)| {
            // w lives on Q^3; g: Q^2 -> Q^3 and f: Q^3 -> Q^2.
            let gf = g.compose(&f).unwrap();
            let direct = w.pullback(&gf).unwrap();
            let staged = w.pullback(&g).unwrap().pullback(&f).unwrap();
            prop_assert_eq!(&direct, &staged);
            prop_assert_eq!(w.d().pullback(&g).unwrap(), w.pullback(&g).unwrap().d());
            Ok(())
        })
        .map_err(|e| e.to_string())
}
