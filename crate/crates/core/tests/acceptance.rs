//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;

use affinoid::catalog::fixtures::{self, FixtureField};
use affinoid::report::Report;
use affinoid::suite::{catalog_targets, run_suite, SuiteConfig};

const SEED: u64 = 7;

type Outcome = Result<String, String>;
type Law = fn() -> Result<(), String>;

fn full_suite() -> Report {
    let targets = catalog_targets().expect("catalog loads");
    run_suite("full", &targets, &SuiteConfig::exact(SEED)).expect("suite runs")
}

/// Every entry of each named check passes, with at least `min` entries per
/// check.
fn all_pass(report: &Report, checks: &[(&str, usize)]) -> Outcome {
    let mut summary = Vec::new();
    for &(check, min) in checks {
        let entries: Vec<_> = report.checks.iter().filter(|c| c.check == check).collect();
        if entries.len() < min {
            return Err(format!("{check}: {} entries, need {min}", entries.len()));
        }
        if let Some(bad) = entries.iter().find(|c| !c.pass) {
            let why = bad.witness.as_ref().map(|w| w.label.as_str()).unwrap_or("failed");
            return Err(format!("{check} on {}: {why}", bad.instance));
        }
        summary.push(format!("{check} x{}", entries.len()));
    }
    Ok(summary.join(", "))
}

fn instance_passes(report: &Report, check: &str, instance: &str) -> Outcome {
    match report
        .checks
        .iter()
        .find(|c| c.check == check && c.instance == instance)
    {
        Some(c) if c.pass => Ok(format!("{check} on {instance}")),
        Some(_) => Err(format!("{check} fails on {instance}")),
        None => Err(format!("{check} missing for {instance}")),
    }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    Ok(format!("{}; {}", a?, b?))
}

fn exterior_laws() -> Outcome {
    let laws: [(&str, Law); 5] = [
        ("antisymmetry", common::schouten_graded_antisymmetry),
        ("jacobi", common::schouten_graded_jacobi),
        ("leibniz", common::schouten_leibniz),
        ("d^2", common::exterior_derivative_squares_to_zero),
        ("pullback", common::pullback_is_functorial_and_commutes_with_d),
    ];
    for (name, law) in laws {
        law().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok("5 laws x 100 seeded cases".into())
}

fn oracle_equivalence(report: &Report) -> Outcome {
    let all = fixtures::all().map_err(|e| e.to_string())?;
    let mv: Vec<_> = all
        .iter()
        .filter(|f| matches!(f.field, FixtureField::MultiVector(_)))
        .collect();
    let accepting = mv.iter().filter(|f| f.affine).count();
    let rejecting = mv.len() - accepting;
    if accepting < 20 || rejecting < 20 {
        return Err(format!(
            "{accepting} accepting and {rejecting} rejecting multivector fixtures"
        ));
    }
    let checks = all_pass(
        report,
        &[("oracle-agreement-mv", mv.len()), ("oracle-agreement-form", 1)],
    )?;
    Ok(format!("{accepting} accepting, {rejecting} rejecting; {checks}"))
}

fn affine_form_fixtures() -> Result<usize, String> {
    Ok(fixtures::all()
        .map_err(|e| e.to_string())?
        .iter()
        .filter(|f| f.affine && matches!(f.field, FixtureField::Form(_)))
        .count())
}

fn forms_layer(report: &Report) -> Outcome {
    let n = affine_form_fixtures()?;
    if n < 10 {
        return Err(format!("only {n} affine-form fixtures"));
    }
    let checks = all_pass(
        report,
        &[("cochain-isomorphism", 9), ("im-form", 9), ("group-forms-vanish", 1)],
    )?;
    let heis = instance_passes(report, "group-forms-vanish", "heisenberg")?;
    Ok(format!("{n} affine-form fixtures; {checks}; {heis}"))
}

fn main() -> ExitCode {
    let report = full_suite();
    let fixture_count = fixtures::all().map(|f| f.len()).unwrap_or(0);
    let results: Vec<(&str, Outcome)> = vec![
        ("exterior-calculus laws", exterior_laws()),
        ("oracle and characterization agree", oracle_equivalence(&report)),
        (
            "decomposition biconditionals",
            all_pass(
                &report,
                &[
                    ("decomposition-mv", 1),
                    ("decomposition-form", 1),
                    ("decomposition-tensor", fixture_count),
                    ("fixture-verdict", fixture_count),
                ],
            ),
        ),
        (
            "2-vector space axioms",
            all_pass(
                &report,
                &[
                    ("two-vector-space-mv", 9),
                    ("two-vector-space-form", 1),
                    ("two-vector-space-tensor", 9),
                ],
            ),
        ),
        (
            "graded Lie 2-algebra",
            all_pass(
                &report,
                &[
                    ("lie2-functor", 10),
                    ("schouten-closure", 10),
                    ("schouten-component", 10),
                ],
            ),
        ),
        ("infinitesimal layer", all_pass(&report, &[("k-differential", 9)])),
        (
            "poisson layer",
            both(
                instance_passes(&report, "poisson-clauses", "pair2/explicit"),
                all_pass(&report, &[("poisson-clauses", 2), ("poisson-right-translate", 1)]),
            ),
        ),
        ("forms layer", forms_layer(&report)),
        (
            "tensor layer",
            both(
                all_pass(
                    &report,
                    &[
                        ("tensor-consistency", fixture_count),
                        ("t11-composition", 9),
                        ("monoidal-interchange", 9),
                        ("pair-normal-forms", 3),
                        ("group-cases", 2),
                        ("translate-product", 1),
                    ],
                ),
                instance_passes(&report, "pi-theta", "pair2"),
            ),
        ),
        ("determinism", {
            let again = full_suite();
            if report.to_json() == again.to_json() {
                Ok(format!("{} bytes identical across two runs", again.to_json().len()))
            } else {
                Err("reports differ between runs".into())
            }
        }),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
