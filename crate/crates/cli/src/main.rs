//! Command-line front end: load a scenario, run one pipeline, emit a report.
//!
//! Exit codes: 0 on success, 1 when a validation or domain check fails,
//! 2 on input problems (unreadable file, malformed JSON, unresolved names,
//! a command applied to the wrong scenario kind, or bad flags).

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kncover::cover::{build_action, classify, Sign};
use kncover::monodromy::h1_theta;
use kncover::monoid::{build_local_model, ghost_rank, monodromy_cone};
use kncover::scenario::{MonodromyScenario, Scenario, ScenarioError};

/// Cap on materialized sign-cohomology class representatives.
const H1_CLASS_CAP: usize = 16;

#[derive(Parser)]
#[command(
    name = "kncover",
    version,
    about = "Classify real loci of toric degenerations as branched covers",
    long_about = "Exact integer/GF(2) pipelines over JSON scenario files: relation and \
                  balancing validation, orbit classification of the real cover, sign \
                  cohomology, and toric local models. Scenario paths may use the \
                  form example:NAME to load a builtin (see `kncover example`)."
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaChoice {
    /// Replace the sign data by the zero cohomology class.
    Zero,
    /// Replace the sign data by the first nonzero cohomology class.
    Nonzero,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scenario: relations, balancing, or local-model consistency.
    Validate { scenario: String },
    /// Orbit and branch-point classification of the real cover.
    Classify {
        scenario: String,
        /// Base component to classify over.
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        fiber: String,
        /// Override the sign data by a cohomology class representative.
        #[arg(long, value_enum)]
        theta: Option<ThetaChoice>,
    },
    /// Sign cohomology (GF(2)) of the representation.
    H1 { scenario: String },
    /// Build the local model: monoid, monodromy cone, ghost rank.
    LocalModel {
        scenario: String,
        /// Override the lattice enumeration bound of the scenario.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Print a builtin scenario as JSON (quartic-k3, simple-k3, focus-focus).
    Example { name: String },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

/// A failed run: exit code plus the message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Failure {
        let code = match e {
            // Problems with the input file itself.
            ScenarioError::Json(_)
            | ScenarioError::UnknownName { .. }
            | ScenarioError::WrongLength { .. }
            | ScenarioError::WrongKind { .. }
            | ScenarioError::MissingMonodromy => 2,
            // Well-formed input that fails a domain check.
            ScenarioError::Linalg(_)
            | ScenarioError::Monodromy(_)
            | ScenarioError::Complex(_)
            | ScenarioError::Monoid(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn run(cli: Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Validate { scenario } => load(scenario).and_then(|s| validate_cmd(&s)),
        Command::Classify {
            scenario,
            fiber,
            theta,
        } => load(scenario).and_then(|s| classify_cmd(&s, fiber, *theta)),
        Command::H1 { scenario } => load(scenario).and_then(|s| h1_cmd(&s)),
        Command::LocalModel { scenario, bound } => {
            load(scenario).and_then(|s| local_model_cmd(&s, *bound))
        }
        Command::Example { name } => return example_cmd(name),
    };
    match outcome {
        Ok(outcome) => {
            emit(&cli, &outcome);
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

/// A completed command: machine report, human lines, and the pass/fail bit.
struct Outcome {
    ok: bool,
    report: Value,
    text: Vec<String>,
}

fn emit(cli: &Cli, outcome: &Outcome) {
    match cli.format {
        Format::Json => {
            let envelope = json!({
                "command": command_name(&cli.command),
                "ok": outcome.ok,
                "report": outcome.report,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope).expect("reports serialize")
            );
        }
        Format::Text => {
            for line in &outcome.text {
                println!("{line}");
            }
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Validate { .. } => "validate",
        Command::Classify { .. } => "classify",
        Command::H1 { .. } => "h1",
        Command::LocalModel { .. } => "local-model",
        Command::Example { .. } => "example",
    }
}

/// Load a scenario from a file path or an `example:NAME` reference.
fn load(path: &str) -> Result<Scenario, Failure> {
    if let Some(name) = path.strip_prefix("example:") {
        return kncover::builtin::by_name(name).ok_or_else(|| {
            Failure::input(format!(
                "unknown builtin example {name:?} (available: {})",
                kncover::builtin::NAMES.join(", ")
            ))
        });
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {path}: {e}")))?;
    Ok(Scenario::from_json(&text)?)
}

/// The monodromy data of a scenario, if its kind carries one.
fn monodromy_part(scenario: &Scenario) -> Result<&MonodromyScenario, Failure> {
    match scenario {
        Scenario::Monodromy(m) => Ok(m),
        Scenario::Complex(c) => Ok(c.monodromy()?),
        Scenario::LocalModel(_) => Err(ScenarioError::WrongKind {
            kind: "local_model",
        }
        .into()),
    }
}

fn validate_cmd(scenario: &Scenario) -> Result<Outcome, Failure> {
    match scenario {
        Scenario::Monodromy(m) => {
            let rep = m.to_rep()?;
            let verify = rep.verify().map_err(|e| Failure::domain(e.to_string()))?;
            let ok = verify.is_ok();
            let mut text = vec![format!(
                "validate (monodromy): {} generators, {} relation(s) checked: {}",
                rep.presentation.generators.len(),
                rep.presentation.relations.len(),
                if ok { "ok" } else { "FAIL" }
            )];
            for defect in &verify.defects {
                text.push(format!(
                    "  relation {} composes to a non-identity value",
                    defect.relation
                ));
            }
            if verify.partial {
                text.push("  note: relations are marked partial".into());
            }
            Ok(Outcome {
                ok,
                report: json!({"kind": "monodromy", "verify": verify}),
                text,
            })
        }
        Scenario::Complex(c) => {
            let data = c.to_complex()?;
            let balance = data
                .complex
                .validate_balancing(&data.mpl)
                .map_err(|e| Failure::domain(e.to_string()))?;
            let verify = match &c.monodromy {
                Some(m) => Some(
                    m.to_rep()?
                        .verify()
                        .map_err(|e| Failure::domain(e.to_string()))?,
                ),
                None => None,
            };
            let ok = balance.is_balanced() && verify.as_ref().is_none_or(|v| v.is_ok());
            let mut text = vec![format!(
                "validate (complex): {} vertices, {} edges, {} faces, {} singular points",
                data.complex.cells(0).len(),
                data.complex.cells(1).len(),
                data.complex.cells(2).len(),
                data.singular_points.len()
            )];
            if balance.is_balanced() {
                text.push("  balancing: ok".into());
            } else {
                for v in &balance.violations {
                    text.push(format!(
                        "  balancing violation at vertex {}: defect {}",
                        v.vertex, v.defect
                    ));
                }
            }
            match &verify {
                Some(v) if v.is_ok() => text.push("  embedded monodromy: ok".into()),
                Some(v) => text.push(format!(
                    "  embedded monodromy: {} relation defect(s)",
                    v.defects.len()
                )),
                None => {}
            }
            Ok(Outcome {
                ok,
                report: json!({
                    "kind": "complex",
                    "balance": balance,
                    "singular_points": data.singular_points.len(),
                    "verify": verify,
                }),
                text,
            })
        }
        Scenario::LocalModel(lm) => {
            let spec = lm.to_spec();
            let model =
                build_local_model(&spec, lm.bound).map_err(|e| Failure::domain(e.to_string()))?;
            let ok = model.consistent;
            Ok(Outcome {
                ok,
                report: json!({
                    "kind": "local_model",
                    "consistent": model.consistent,
                    "generators": model.monoid.generators(),
                }),
                text: vec![format!(
                    "validate (local model): {} monoid generators, consistency: {}",
                    model.monoid.generators().len(),
                    if ok { "ok" } else { "FAIL" }
                )],
            })
        }
    }
}

fn classify_cmd(
    scenario: &Scenario,
    fiber: &str,
    theta: Option<ThetaChoice>,
) -> Result<Outcome, Failure> {
    let sign: Sign = fiber
        .parse()
        .map_err(|e: String| Failure::input(format!("--fiber: {e}")))?;
    let m = monodromy_part(scenario)?;
    let mut rep = m.to_rep()?;
    if let Some(choice) = theta {
        let h1 = h1_theta(&rep, H1_CLASS_CAP).map_err(|e| Failure::domain(e.to_string()))?;
        let assignment = match choice {
            ThetaChoice::Zero => &h1.representatives[0],
            ThetaChoice::Nonzero => h1.representatives.get(1).ok_or_else(|| {
                Failure::domain("the sign cohomology is trivial; no nonzero class exists")
            })?,
        };
        rep = rep
            .with_theta(assignment)
            .map_err(|e| Failure::domain(e.to_string()))?;
    }
    let action = build_action(&rep, sign).map_err(|e| Failure::domain(e.to_string()))?;
    let report = classify(&action, &m.branch_points, m.base_euler)
        .map_err(|e| Failure::domain(e.to_string()))?;

    let mut text = vec![format!(
        "classify: fiber {}, total degree {}, {} component(s)",
        report.sign,
        report.total_degree,
        report.components.len()
    )];
    for (i, comp) in report.components.iter().enumerate() {
        let simple = comp.branch.iter().filter(|b| b.simple).count();
        let genus = match comp.genus {
            Some(g) => format!("genus {g}"),
            None => "genus undefined".into(),
        };
        text.push(format!(
            "  component {}: degree {}, points {:?}, euler {}, {}, branch points: {} ({} simple)",
            i + 1,
            comp.degree,
            comp.points,
            comp.euler,
            genus,
            comp.branch.len(),
            simple
        ));
    }
    Ok(Outcome {
        ok: true,
        report: serde_json::to_value(&report).expect("reports serialize"),
        text,
    })
}

fn h1_cmd(scenario: &Scenario) -> Result<Outcome, Failure> {
    let m = monodromy_part(scenario)?;
    let rep = m.to_rep()?;
    let h1 = h1_theta(&rep, H1_CLASS_CAP).map_err(|e| Failure::domain(e.to_string()))?;
    let text = vec![
        format!(
            "h1: dimension {} (cocycles {}, coboundaries {})",
            h1.dimension, h1.cocycle_dim, h1.coboundary_dim
        ),
        format!(
            "  representatives: {}{}",
            h1.representatives.len(),
            if h1.truncated { " (truncated)" } else { "" }
        ),
    ];
    Ok(Outcome {
        ok: true,
        report: serde_json::to_value(&h1).expect("reports serialize"),
        text,
    })
}

fn local_model_cmd(scenario: &Scenario, bound: Option<i64>) -> Result<Outcome, Failure> {
    let Scenario::LocalModel(lm) = scenario else {
        return Err(ScenarioError::WrongKind {
            kind: scenario.kind(),
        }
        .into());
    };
    let spec = lm.to_spec();
    let bound = bound.unwrap_or(lm.bound);
    let model = build_local_model(&spec, bound).map_err(|e| Failure::domain(e.to_string()))?;
    let cone = monodromy_cone(&spec).map_err(|e| Failure::domain(e.to_string()))?;
    let face = model
        .t_direction_face()
        .map_err(|e| Failure::domain(e.to_string()))?;
    let ghost = ghost_rank(&model.monoid, &face).map_err(|e| Failure::domain(e.to_string()))?;

    let fmt_vecs = |vs: &[kncover::IntVector]| {
        vs.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let text = vec![
        format!(
            "local model: ambient rank {}, bound {}",
            model.monoid.ambient_rank(),
            bound
        ),
        format!(
            "  monoid generators ({}): {}",
            model.monoid.generators().len(),
            fmt_vecs(model.monoid.generators())
        ),
        format!(
            "  consistency check: {}",
            if model.consistent { "ok" } else { "FAIL" }
        ),
        format!(
            "  monodromy cone: {} (minor gcd {}); generators: {}",
            if cone.is_standard {
                "standard"
            } else {
                "not standard"
            },
            cone.minor_gcd,
            fmt_vecs(cone.cone.generators())
        ),
        format!(
            "  t-direction face: {} generator(s); ghost rank {}; real fiber {} point(s)",
            face.len(),
            ghost.rank,
            ghost.fiber_size
        ),
    ];
    Ok(Outcome {
        ok: model.consistent,
        report: json!({
            "consistent": model.consistent,
            "ambient_rank": model.monoid.ambient_rank(),
            "bound": bound,
            "monoid_generators": model.monoid.generators(),
            "model_cone": model.model_cone.generators(),
            "monodromy_cone": cone,
            "t_face_generators": face,
            "ghost": ghost,
        }),
        text,
    })
}

fn example_cmd(name: &str) -> i32 {
    match kncover::builtin::by_name(name) {
        Some(scenario) => {
            print!("{}", scenario.to_json());
            0
        }
        None => {
            eprintln!(
                "error: unknown builtin example {name:?} (available: {})",
                kncover::builtin::NAMES.join(", ")
            );
            2
        }
    }
}
