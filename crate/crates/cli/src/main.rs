use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cubical_core::builders::{self, zonotope_boundary, Arrangement};
use cubical_core::cubation::{self, Cubation, Immersion};
use cubical_core::derivative::{derivation_check, strata_counts, DerivativeComplex};
use cubical_core::json::{
    labelled_poset_to_value, parse_vectors, poset_from_value, poset_to_value,
};
use cubical_core::lattice::{expected_rank, mine_modular_equations, span_e};
use cubical_core::parity::{self, ChainOperators, ParityError};
use cubical_core::poset::validate_cubical_poset;
use cubical_core::{validate_cubical, CubicalComplex};

const SCHEMA: &str = "cubical-report/1";

#[derive(Parser)]
#[command(name = "cubical", version, about = "Build and check cubical complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

/// Where a complex comes from; exactly one must be given.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Catalogue name such as `cube4`, `8gon`, `zono(3,4)` or `cube3*edge`.
    #[arg(long)]
    catalogue: Option<String>,
    /// Poset JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Arrangement JSON file; builds the zonotope boundary.
    #[arg(long)]
    arrangement: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a complex and print it as poset JSON.
    Build(Source),
    /// Derivative complex, its f-vector and the derivative identity.
    Derive {
        #[command(flatten)]
        source: Source,
        /// Also check the product rule against this catalogue complex.
        #[arg(long)]
        times: Option<String>,
    },
    /// f-vector.
    Fvec(Source),
    /// Vertex bicoloring, or an odd cycle.
    Bicolor(Source),
    /// Common Euler characteristic of vertex links.
    Eulerian(Source),
    /// Parity of face numbers of a cubical sphere.
    Thm52 {
        #[command(flatten)]
        source: Source,
        /// Also test the chain-operator identities on this many random chains.
        #[arg(long)]
        identities: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Integer-lattice analysis of f-vector families.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Modular equations satisfied by a list of integer vectors.
    Mine {
        #[arg(long)]
        input: PathBuf,
    },
    /// Cubical sphere from a normal-crossing immersion.
    Cubate {
        /// Immersion JSON file.
        #[arg(long, required_unless_present = "fixture", conflicts_with = "fixture")]
        input: Option<PathBuf>,
        /// Built-in immersion, see `catalogue`.
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Check that a poset is a cubical complex.
    Validate(Source),
    /// List catalogue complexes and built-in immersions.
    Catalogue,
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Affine span of the zonotopal f-vectors in dimension `dim`.
    Span {
        #[arg(long)]
        dim: usize,
        /// Number of family members to span; defaults to `dim + 2`.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Same as the top-level `mine`.
    Mine {
        #[arg(long)]
        input: PathBuf,
    },
}

enum Failure {
    /// Exit 1: the input was fine but a check failed.
    Check(Value),
    /// Exit 2.
    Input { kind: &'static str, message: String },
}

type Outcome = Result<Value, Failure>;

fn input_error(kind: &'static str, e: impl ToString) -> Failure {
    Failure::Input {
        kind,
        message: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error("io", format!("{}: {e}", path.display())))
}

fn parse_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| input_error("parse", e))
}

/// A complex plus sign-vector labels when it came from an arrangement.
struct Loaded {
    complex: CubicalComplex,
    labels: Option<Vec<Vec<i8>>>,
    name: String,
}

fn load(source: &Source) -> Result<Loaded, Failure> {
    if let Some(name) = &source.catalogue {
        let complex = builders::catalogue(name).map_err(|e| input_error("catalogue", e))?;
        return Ok(Loaded {
            complex,
            labels: None,
            name: name.clone(),
        });
    }
    if let Some(path) = &source.arrangement {
        let arr =
            Arrangement::from_json(&parse_json(path)?).map_err(|e| input_error("schema", e))?;
        let z = zonotope_boundary(&arr).map_err(|e| input_error("arrangement", e))?;
        return Ok(Loaded {
            complex: z.complex,
            labels: Some(z.covectors),
            name: path.display().to_string(),
        });
    }
    let path = source.input.as_ref().expect("clap enforces one source");
    let (poset, _) = poset_from_value(&parse_json(path)?).map_err(|e| input_error("schema", e))?;
    let complex = match validate_cubical(poset.clone()) {
        Ok(c) => c,
        Err(_) => validate_cubical_poset(poset).map_err(|e| input_error("not-cubical", e))?,
    };
    Ok(Loaded {
        complex,
        labels: None,
        name: path.display().to_string(),
    })
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Build(source) => {
            let l = load(&source)?;
            let poset = match &l.labels {
                Some(labels) => labelled_poset_to_value(l.complex.poset(), labels),
                None => poset_to_value(l.complex.poset()),
            };
            Ok(
                json!({"name": l.name, "f": l.complex.f_vector(), "lattice": l.complex.is_lattice(), "poset": poset}),
            )
        }
        Command::Fvec(source) => Ok(json!({"f": load(&source)?.complex.f_vector()})),
        Command::Derive { source, times } => derive(&load(&source)?.complex, times.as_deref()),
        Command::Bicolor(source) => bicolor(&load(&source)?.complex),
        Command::Eulerian(source) => match parity::eulerian_degree(&load(&source)?.complex) {
            Ok(n) => Ok(json!({"eulerian_degree": n})),
            Err(ParityError::NotEulerian(a, b)) => {
                Err(Failure::Check(json!({"not_eulerian": [a, b]})))
            }
            Err(e) => Err(input_error("complex", e)),
        },
        Command::Thm52 {
            source,
            identities,
            seed,
        } => thm52(&load(&source)?.complex, identities, seed),
        Command::Lattice {
            command: LatticeCommand::Span { dim, count },
        } => span(dim, count),
        Command::Lattice {
            command: LatticeCommand::Mine { input },
        }
        | Command::Mine { input } => mine(&input),
        Command::Cubate { input, fixture } => {
            let imm = match (input, fixture) {
                (Some(path), _) => Immersion::from_json(&read(&path)?),
                (None, Some(name)) => cubation::fixture(&name),
                (None, None) => unreachable!("clap requires one of the two"),
            };
            cubate(imm)
        }
        Command::Validate(source) => validate(&source),
        Command::Catalogue => Ok(json!({
            "complexes": builders::catalogue_names(),
            "spheres": builders::catalogue_spheres(),
            "three_spheres": builders::catalogue_three_spheres(),
            "immersions": cubation::fixture_names(),
        })),
    }
}

fn derive(k: &CubicalComplex, times: Option<&str>) -> Outcome {
    let d = DerivativeComplex::build(k).map_err(|e| input_error("complex", e))?;
    let check = d.check_derivative(k);
    let mut report = json!({
        "f": d.dk.f_vector(),
        "paired_f": d.nk.f_vector(),
        "check_derivative": check,
        "involution": d.check_involution(),
        "strata": strata_counts(k, &d),
    });
    let mut pass = check;
    if let Some(name) = times {
        let other = builders::catalogue(name).map_err(|e| input_error("catalogue", e))?;
        match derivation_check(k, &other) {
            Ok(r) => {
                report["product_rule"] = json!({"f_lhs": r.f_lhs, "f_rhs": r.f_rhs, "pass": true})
            }
            Err(e) => {
                report["product_rule"] = json!({"pass": false, "error": e.to_string()});
                pass = false;
            }
        }
    }
    if pass {
        Ok(report)
    } else {
        Err(Failure::Check(report))
    }
}

fn bicolor(k: &CubicalComplex) -> Outcome {
    match parity::bicolor(k) {
        Ok(c) => {
            let mut report = json!({
                "black": c.black_count(),
                "white": c.white_count(),
                "coloring": c,
            });
            if let Ok(counts) = parity::color_count_check(k) {
                report["color_counts"] = json!(counts);
            }
            Ok(report)
        }
        Err(ParityError::Obstruction(cycle)) => Err(Failure::Check(json!({"odd_cycle": cycle}))),
        Err(e) => Err(input_error("complex", e)),
    }
}

fn thm52(k: &CubicalComplex, identities: Option<usize>, seed: u64) -> Outcome {
    let mut report = match parity::theorem52_check(k) {
        Ok(r) => json!(r),
        Err(ParityError::TheoremViolation(msg)) => {
            return Err(Failure::Check(
                json!({"check": "thm52", "pass": false, "violation": msg}),
            ))
        }
        Err(ParityError::HypothesisFailure(msg)) => {
            return Err(Failure::Check(
                json!({"check": "thm52", "pass": false, "hypothesis_failure": msg}),
            ))
        }
        Err(e) => return Err(input_error("complex", e)),
    };
    if let Some(count) = identities {
        let ops = ChainOperators::new(k).map_err(|e| input_error("complex", e))?;
        let r = ops.check_identities(count, seed);
        let ok = r.pass;
        report["identities"] = json!(r);
        if !ok {
            report["pass"] = json!(false);
            return Err(Failure::Check(report));
        }
    }
    Ok(report)
}

fn span(dim: usize, count: Option<usize>) -> Outcome {
    let count = count.unwrap_or(dim + 2);
    let l = span_e(dim, count).map_err(|e| Failure::Check(json!({"error": e.to_string()})))?;
    let rows = |m: &cubical_core::lattice::IntMatrix| -> Vec<Vec<String>> {
        m.row_vecs()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    };
    let sat = l.saturation();
    let rank_ok = l.rank() == expected_rank(dim);
    let report = json!({
        "dim": dim,
        "count": count,
        "rank": l.rank(),
        "expected_rank": expected_rank(dim),
        "base": l.base().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "generators": rows(l.generators()),
        "saturation": rows(sat.generators()),
        "smith_invariants": l.smith_invariants().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "pass": rank_ok,
    });
    if rank_ok {
        Ok(report)
    } else {
        Err(Failure::Check(report))
    }
}

fn mine(path: &Path) -> Outcome {
    let vectors = parse_vectors(&read(path)?).map_err(|e| input_error("schema", e))?;
    let equations = mine_modular_equations(&vectors).map_err(|e| input_error("schema", e))?;
    let verified = equations
        .iter()
        .all(|eq| vectors.iter().all(|v| eq.holds_for(v)));
    let report = json!({"equations": equations, "verified": verified});
    if verified {
        Ok(report)
    } else {
        Err(Failure::Check(report))
    }
}

fn cubate(imm: Result<Immersion, cubation::CubationError>) -> Outcome {
    use cubation::CubationError as E;
    let classify = |e: E| match e {
        E::Json(_) | E::Unsupported(_) => input_error("schema", e),
        E::NotSphere(_)
        | E::NotClosedManifold(_)
        | E::NotSimplicial(_)
        | E::NotNormalCrossing(_)
        | E::SheetNotSeparating { .. } => input_error("immersion", e),
        other => {
            Failure::Check(json!({"check": "cubation", "pass": false, "error": other.to_string()}))
        }
    };
    let imm = imm.map_err(classify)?;
    let c = Cubation::build(imm).map_err(classify)?;
    let r = c.verify().map_err(classify)?;
    let mut report = json!(r);
    if c.dim() % 2 == 1 {
        report["top_multiple_points"] =
            json!(cubation::verify_top_multiple_points(&c.immersion).map_err(classify)?);
    }
    report["complex"] = poset_to_value(c.complex().poset());
    if r.pass {
        Ok(report)
    } else {
        Err(Failure::Check(report))
    }
}

fn validate(source: &Source) -> Outcome {
    if source.input.is_none() {
        let l = load(source)?;
        return Ok(
            json!({"valid": true, "lattice": l.complex.is_lattice(), "f": l.complex.f_vector()}),
        );
    }
    let path = source.input.as_ref().expect("checked above");
    let (poset, _) = poset_from_value(&parse_json(path)?).map_err(|e| input_error("schema", e))?;
    match validate_cubical(poset.clone()) {
        Ok(c) => Ok(json!({"valid": true, "lattice": true, "f": c.f_vector()})),
        Err(lattice_err) => match validate_cubical_poset(poset) {
            Ok(c) => Ok(
                json!({"valid": true, "lattice": false, "f": c.f_vector(), "note": lattice_err.to_string()}),
            ),
            Err(e) => Err(Failure::Check(
                json!({"valid": false, "error": e.to_string()}),
            )),
        },
    }
}

fn with_schema(command: &str, mut body: Value) -> Value {
    if let Value::Object(map) = &mut body {
        map.insert("schema".into(), json!(SCHEMA));
        map.insert("command".into(), json!(command));
    }
    body
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), String> {
    match output {
        Some(path) => {
            fs::write(path, format!("{text}\n")).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            // a closed pipe (`| head`) is not an error
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
            _ => Ok(()),
        },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Build(_) => "build",
        Command::Derive { .. } => "derive",
        Command::Fvec(_) => "fvec",
        Command::Bicolor(_) => "bicolor",
        Command::Eulerian(_) => "eulerian",
        Command::Thm52 { .. } => "thm52",
        Command::Lattice {
            command: LatticeCommand::Span { .. },
        } => "lattice span",
        Command::Lattice {
            command: LatticeCommand::Mine { .. },
        } => "lattice mine",
        Command::Mine { .. } => "mine",
        Command::Cubate { .. } => "cubate",
        Command::Validate(_) => "validate",
        Command::Catalogue => "catalogue",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Json = cli.format;
    let name = command_name(&cli.command);
    let (body, code) = match run(cli.command) {
        Ok(v) => (v, 0),
        Err(Failure::Check(v)) => (v, 1),
        Err(Failure::Input { kind, message }) => {
            let doc = with_schema(name, json!({"error": {"kind": kind, "message": message}}));
            eprintln!("{doc}");
            return ExitCode::from(2);
        }
    };
    let text = with_schema(name, body).to_string();
    if let Err(e) = emit(&text, cli.output.as_deref()) {
        eprintln!(
            "{}",
            with_schema(name, json!({"error": {"kind": "io", "message": e}}))
        );
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
