//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! check fails, 2 on input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::affine_forms::AffineForm;
use crate::affine_mv::{decomposition_iso_check, AffineMV};
use crate::affine_tensors::{composition_laws_check, monoidal_interchange_check, Affine11, AffineTensor};
use crate::catalog::{self, fixtures};
use crate::error::{Error, Result};
use crate::exact::{Mode, DEFAULT_SAMPLES};
use crate::groupoid::{AlgebroidSection, PolyGroupoid};
use crate::io::{self, FieldData};
use crate::report::{CheckEntry, Report, Verdict};
use crate::suite::{self, SuiteConfig, Target};

#[derive(Parser, Debug)]
#[command(
    name = "affinoid",
    version,
    about = "Exact checks of affine and multiplicative structures on polynomial Lie groupoids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a predicate on a field, or a named suite.
    Check(CheckArgs),
    /// Split an affine field into its right and left parts and its base.
    Decompose(FieldArgs),
    /// Schouten bracket of two affine multivector fields.
    Bracket(FieldArgs),
    /// Compose affine fields in the 2-vector space; four (1,1) tensors run
    /// the interchange law instead.
    Compose(FieldArgs),
    /// List or export catalog groupoids and fixtures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    /// Export a groupoid by id, or a fixture field by name.
    Export {
        id: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Sampled,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// `catalog:<id>` or a groupoid JSON file.
    #[arg(long)]
    pub groupoid: Option<String>,
    #[arg(long, env = "AFFINOID_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long)]
    pub field: Option<PathBuf>,
    #[arg(long, conflicts_with = "suite", requires = "field")]
    pub predicate: Option<String>,
    #[arg(long)]
    pub suite: Option<String>,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long = "field", required = true)]
    pub fields: Vec<PathBuf>,
}

/// Failure that ends a command: an input error (exit 2) or a failed check
/// (exit 1).
#[derive(Debug)]
enum Halt {
    Input(Error),
    Failed(String),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAffine(_) | Error::Composability(_) | Error::Structure(_) => Halt::Failed(e.to_string()),
            e => Halt::Input(e),
        }
    }
}

type Outcome = std::result::Result<Output, Halt>;

#[derive(Serialize)]
struct Output {
    #[serde(flatten)]
    report: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
}

impl RunArgs {
    fn mode(&self) -> Mode {
        match self.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Sampled => Mode::Sampled {
                seed: self.seed,
                samples: self.samples,
            },
        }
    }

    fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            seed: self.seed,
            mode: self.mode(),
            samples: self.samples,
        }
    }

    fn entry(&self, check: &str, cite: &str, instance: &str, v: Verdict) -> CheckEntry {
        CheckEntry {
            check: check.into(),
            cite: cite.into(),
            instance: instance.into(),
            mode: self.mode().name().into(),
            seed: self.seed,
            pass: v.pass,
            witness: v.witness.map(|w| w.to_json()),
        }
    }
}

struct Loaded {
    groupoid: Arc<PolyGroupoid>,
    fields: Vec<(String, FieldData)>,
}

fn instance_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Reads the fields and resolves the groupoid from `--groupoid` or from the
/// first field file.
fn load(run: &RunArgs, paths: &[PathBuf]) -> std::result::Result<Loaded, Halt> {
    let mut fields = Vec::new();
    let mut named = None;
    for p in paths {
        let doc = io::parse_field_doc(&io::read_file(p)?)?;
        named = named.or(doc.groupoid);
        fields.push((instance_name(p), doc.field));
    }
    let spec = run
        .groupoid
        .clone()
        .or(named)
        .ok_or_else(|| Halt::Input(Error::parse("groupoid", "no --groupoid given and the field names none")))?;
    let groupoid = io::load_groupoid(&spec)?;
    for (name, f) in &fields {
        let t = f.tensor();
        if t.nvars() != groupoid.dim_g() || matches!(f, FieldData::Section(_)) {
            return Err(Halt::Input(Error::parse(
                name.clone(),
                format!(
                    "field does not live on {} (dimension {})",
                    groupoid.name(),
                    groupoid.dim_g()
                ),
            )));
        }
    }
    Ok(Loaded { groupoid, fields })
}

fn cmd_check(args: &CheckArgs) -> Outcome {
    let run = &args.run;
    if let Some(pred) = &args.predicate {
        let path = args.field.as_ref().expect("clap requires --field");
        let loaded = load(run, std::slice::from_ref(path))?;
        let (name, f) = &loaded.fields[0];
        let report = suite::run_predicate(&loaded.groupoid, pred, f, name, &run.suite_config())?;
        return Ok(Output { report, result: None });
    }
    let suite_name = args.suite.as_deref().unwrap_or("full");
    suite::layers(suite_name)?;
    let targets = match &run.groupoid {
        Some(g) => vec![Target::load(g)?],
        None => suite::catalog_targets()?,
    };
    let report = suite::run_suite(suite_name, &targets, &run.suite_config())?;
    Ok(Output { report, result: None })
}

fn section_value(s: &AlgebroidSection) -> Value {
    io::field_to_value(&FieldData::Section(s.clone()))
}

fn cmd_decompose(args: &FieldArgs) -> Outcome {
    let run = &args.run;
    let loaded = load(run, &args.fields)?;
    let gp = loaded.groupoid.clone();
    let (name, f) = &loaded.fields[0];
    let not_affine = |pred: &str| Halt::Failed(format!("{pred} fails on {name}"));
    let (check, result) = match f {
        FieldData::MultiVector(p) => {
            let a = AffineMV::new(gp, p.clone()).map_err(|_| not_affine("affine-mv"))?;
            let (r, l) = a.source_target()?;
            (
                "decompose-mv",
                json!({
                    "right": io::field_to_value(&FieldData::MultiVector(r)),
                    "left": io::field_to_value(&FieldData::MultiVector(l)),
                    "base": section_value(a.base()),
                }),
            )
        }
        FieldData::Form(w) => {
            let a = AffineForm::new(gp, w.clone()).map_err(|_| not_affine("affine-form"))?;
            let (r, l) = a.source_target()?;
            (
                "decompose-form",
                json!({
                    "right": io::field_to_value(&FieldData::Form(r)),
                    "left": io::field_to_value(&FieldData::Form(l)),
                    "base": io::field_to_value(&FieldData::Form(a.base().clone())),
                }),
            )
        }
        FieldData::Tensor(t) => {
            let a = AffineTensor::new(gp, t.clone()).map_err(|_| not_affine("affine-tensor"))?;
            let (r, l) = a.source_target()?;
            (
                "decompose-tensor",
                json!({
                    "right": io::field_to_value(&FieldData::Tensor(r)),
                    "left": io::field_to_value(&FieldData::Tensor(l)),
                    "base": section_value(a.base()),
                }),
            )
        }
        FieldData::Section(_) => unreachable!("rejected by load"),
    };
    let entry = run.entry(check, "affine-decomposition", name, Verdict::pass());
    Ok(Output {
        report: Report::new("decompose", run.seed, vec![entry]),
        result: Some(result),
    })
}

fn expect_count(loaded: &Loaded, counts: &[usize]) -> std::result::Result<(), Halt> {
    if counts.contains(&loaded.fields.len()) {
        Ok(())
    } else {
        Err(Halt::Input(Error::parse(
            "field",
            format!("expected {counts:?} fields, got {}", loaded.fields.len()),
        )))
    }
}

fn as_mv(gp: &Arc<PolyGroupoid>, (name, f): &(String, FieldData)) -> std::result::Result<AffineMV, Halt> {
    match f {
        FieldData::MultiVector(p) => {
            AffineMV::new(gp.clone(), p.clone()).map_err(|_| Halt::Failed(format!("affine-mv fails on {name}")))
        }
        _ => Err(Halt::Input(Error::parse(name.clone(), "expected a multivector field"))),
    }
}

fn cmd_bracket(args: &FieldArgs) -> Outcome {
    let run = &args.run;
    let loaded = load(run, &args.fields)?;
    expect_count(&loaded, &[2])?;
    let gp = &loaded.groupoid;
    let p = as_mv(gp, &loaded.fields[0])?;
    let q = as_mv(gp, &loaded.fields[1])?;
    let inst = format!("{},{}", loaded.fields[0].0, loaded.fields[1].0);
    let bracket = p.bracket(&q);
    let closure = Verdict::from_bool(bracket.is_ok());
    let component = Verdict::from_bool(decomposition_iso_check(&p, &q)?);
    let result = bracket
        .ok()
        .map(|b| json!({ "bracket": io::field_to_value(&FieldData::MultiVector(b.field().clone())) }));
    let checks = vec![
        run.entry("schouten-closure", "affine-mv-closed-under-schouten", &inst, closure),
        run.entry(
            "schouten-component",
            "schouten-bracket-unit-component",
            &inst,
            component,
        ),
    ];
    Ok(Output {
        report: Report::new("bracket", run.seed, checks),
        result,
    })
}

fn cmd_compose(args: &FieldArgs) -> Outcome {
    let run = &args.run;
    let loaded = load(run, &args.fields)?;
    expect_count(&loaded, &[2, 4])?;
    let gp = &loaded.groupoid;
    let inst = loaded
        .fields
        .iter()
        .map(|(n, _)| n.as_str())
        .collect::<Vec<_>>()
        .join(",");
    if loaded.fields.len() == 4 {
        let ns = loaded
            .fields
            .iter()
            .map(|(name, f)| match f {
                FieldData::Tensor(t) if t.bidegree() == (1, 1) => Affine11::new(gp.clone(), t.to_matrix()?),
                _ => Err(Error::parse(name.clone(), "the interchange law needs (1,1) tensors")),
            })
            .collect::<Result<Vec<_>>>()?;
        let ok = monoidal_interchange_check(&ns[0], &ns[1], &ns[2], &ns[3])?;
        let entry = run.entry(
            "monoidal-interchange",
            "strict-monoidal-endomorphisms",
            &inst,
            Verdict::from_bool(ok),
        );
        return Ok(Output {
            report: Report::new("compose", run.seed, vec![entry]),
            result: None,
        });
    }
    let (a, b) = (&loaded.fields[0].1, &loaded.fields[1].1);
    let not_affine = |pred: &str, name: &str| Halt::Failed(format!("{pred} fails on {name}"));
    let names = (&loaded.fields[0].0, &loaded.fields[1].0);
    let mut checks = Vec::new();
    let composite = match (a, b) {
        (FieldData::MultiVector(_), FieldData::MultiVector(_)) => {
            let x = as_mv(gp, &loaded.fields[0])?;
            let y = as_mv(gp, &loaded.fields[1])?;
            let c = x.compose(&y)?;
            let ends = c.right_part()? == y.right_part()? && c.left_part()? == x.left_part()?;
            checks.push(run.entry(
                "composite-ends",
                "affine-mv-two-vector-space",
                &inst,
                Verdict::from_bool(ends),
            ));
            FieldData::MultiVector(c.field().clone())
        }
        (FieldData::Form(p), FieldData::Form(q)) => {
            let x = AffineForm::new(gp.clone(), p.clone()).map_err(|_| not_affine("affine-form", names.0))?;
            let y = AffineForm::new(gp.clone(), q.clone()).map_err(|_| not_affine("affine-form", names.1))?;
            let c = x.compose(&y)?;
            let ends = c.right_part()? == y.right_part()? && c.left_part()? == x.left_part()?;
            checks.push(run.entry(
                "composite-ends",
                "affine-form-two-vector-space",
                &inst,
                Verdict::from_bool(ends),
            ));
            FieldData::Form(c.form().clone())
        }
        (FieldData::Tensor(p), FieldData::Tensor(q)) => {
            let x = AffineTensor::new(gp.clone(), p.clone()).map_err(|_| not_affine("affine-tensor", names.0))?;
            let y = AffineTensor::new(gp.clone(), q.clone()).map_err(|_| not_affine("affine-tensor", names.1))?;
            let c = x.compose(&y)?;
            let ends = c.right_part()? == y.right_part()? && c.left_part()? == x.left_part()?;
            checks.push(run.entry(
                "composite-ends",
                "affine-tensor-two-vector-space",
                &inst,
                Verdict::from_bool(ends),
            ));
            if p.bidegree() == (1, 1) {
                let v = composition_laws_check(&Affine11::from_tensor(x)?, &Affine11::from_tensor(y)?)?;
                checks.push(run.entry("t11-composition", "affine-endomorphism-composition", &inst, v));
            }
            FieldData::Tensor(c.field().clone())
        }
        _ => {
            return Err(Halt::Input(Error::parse(
                "field",
                "compose needs two fields of the same kind",
            )))
        }
    };
    Ok(Output {
        report: Report::new("compose", run.seed, checks),
        result: Some(json!({ "composite": io::field_to_value(&composite) })),
    })
}

fn cmd_catalog(action: &CatalogAction) -> std::result::Result<String, Halt> {
    match action {
        CatalogAction::List => {
            let mut groupoids = Vec::new();
            for id in catalog::ids() {
                let gp = catalog::by_id(id)?;
                groupoids.push(json!({"id": id, "dim_G": gp.dim_g(), "dim_M": gp.dim_m(), "rank": gp.rank()}));
            }
            let fx: Vec<Value> = fixtures::all()?
                .iter()
                .map(|f| {
                    json!({
                        "name": f.name,
                        "groupoid": f.groupoid,
                        "kind": if matches!(f.field, fixtures::FixtureField::MultiVector(_)) { "mv" } else { "form" },
                        "degree": f.field.degree(),
                        "affine": f.affine,
                        "multiplicative": f.multiplicative,
                        "cite": f.cite,
                    })
                })
                .collect();
            let mut s =
                serde_json::to_string_pretty(&json!({"groupoids": groupoids, "fixtures": fx})).expect("serialises");
            s.push('\n');
            Ok(s)
        }
        CatalogAction::Export { id } => Ok(catalog::export(id)?),
    }
}

fn write_out(out: Option<&Path>, text: &str) -> std::result::Result<(), Halt> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Halt::Input(Error::parse(p.display().to_string(), e.to_string())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Halt::Input(Error::parse("stdout", e.to_string())))
        }
    }
}

/// Runs a parsed command and returns the exit code.
pub fn execute(cli: &Cli) -> i32 {
    let (outcome, out) = match &cli.command {
        Command::Check(a) => (cmd_check(a), a.run.out.as_deref()),
        Command::Decompose(a) => (cmd_decompose(a), a.run.out.as_deref()),
        Command::Bracket(a) => (cmd_bracket(a), a.run.out.as_deref()),
        Command::Compose(a) => (cmd_compose(a), a.run.out.as_deref()),
        Command::Catalog { action, out } => {
            let r = cmd_catalog(action).and_then(|s| write_out(out.as_deref(), &s));
            return match r {
                Ok(()) => 0,
                Err(h) => report_halt(h),
            };
        }
    };
    match outcome {
        Ok(o) => {
            let mut text = serde_json::to_string_pretty(&o).expect("output serialises");
            text.push('\n');
            if let Err(h) = write_out(out, &text) {
                return report_halt(h);
            }
            if o.report.all_passed() {
                0
            } else {
                for c in o.report.checks.iter().filter(|c| !c.pass) {
                    let label = c.witness.as_ref().map(|w| w.label.as_str()).unwrap_or("failed");
                    eprintln!("check {} failed on {}: {label}", c.check, c.instance);
                }
                1
            }
        }
        Err(h) => report_halt(h),
    }
}

fn report_halt(h: Halt) -> i32 {
    match h {
        Halt::Input(e) => {
            eprintln!("error: {e}");
            2
        }
        Halt::Failed(msg) => {
            eprintln!("failed: {msg}");
            1
        }
    }
}

/// Parses arguments and runs; `--help` and `--version` exit 0, other usage
/// errors exit 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
