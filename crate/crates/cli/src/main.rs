use std::fs;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use moorediag::cj::{composition_table_text, representable, square_text, CjObject};
use moorediag::diagrams::{eed_hom_system, eta_hom_system, ExtEtaDiagram};
use moorediag::duality::{delta_dual_explicit, j_dual};
use moorediag::ext::{ext_group, phi};
use moorediag::json::{encode_eed, parse_diagram, parse_extension, Diagram, MapJson};
use moorediag::verify::run_verify;
use moorediag::{Error, FgGroup, HomSpace};

#[derive(Parser)]
#[command(
    name = "moorediag",
    version,
    about = "Exact algebra of Moore diagrams and extended eta-diagrams"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Group literals such as `Z/2+Z/4+Z`.
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// The group Hom(U, V).
    Hom { u: String, v: String },
    /// The group Ext(U, V).
    Ext { u: String, v: String },
    /// Φ(E): U[2] -> V/2 for an extension given as JSON.
    Phi { file: String },
    Diagram {
        #[command(subcommand)]
        op: DiagramOp,
    },
    Dual {
        #[command(subcommand)]
        op: DualOp,
    },
    Cj {
        #[command(subcommand)]
        op: CjOp,
    },
    /// Runs a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_order: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GroupOp {
    Normalize { literal: String },
}

#[derive(Subcommand)]
enum DiagramOp {
    /// Checks every defining relation.
    Validate { files: Vec<String> },
    /// Checks short exactness.
    Exact { files: Vec<String> },
    /// The group of morphisms from the first diagram to the second.
    Homset { source: String, target: String },
}

#[derive(Subcommand)]
enum DualOp {
    J { file: String },
    Delta { file: String },
}

#[derive(Subcommand)]
enum CjOp {
    Table,
    Representable { object: String },
    Square,
}

/// Parse errors exit with 1, everything else the library rejects with 2.
enum Failure {
    Parse(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::DimensionMismatch(_) => Failure::Parse(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Out = Result<String, Failure>;

fn group(s: &str) -> Result<FgGroup, Failure> {
    Ok(s.parse::<FgGroup>()?)
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{path}: {e}")))
}

fn diagram(path: &str) -> Result<Diagram, Failure> {
    parse_diagram(&read(path)?).map_err(|e| match Failure::from(e) {
        Failure::Parse(m) => Failure::Parse(format!("{path}: {m}")),
        Failure::Domain(m) => Failure::Domain(format!("{path}: {m}")),
    })
}

fn eed(path: &str) -> Result<ExtEtaDiagram, Failure> {
    match diagram(path)? {
        Diagram::Eed(n) => {
            if let Some(f) = n.validate().first_failure() {
                return Err(Failure::Domain(format!("{path}: relation failed: {f}")));
            }
            Ok(n)
        }
        d => Err(Failure::Domain(format!(
            "{path}: expected an eed diagram, got {}",
            d.kind()
        ))),
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn group_out(fmt: Format, g: &FgGroup) -> String {
    match fmt {
        Format::Text => g.to_string(),
        Format::Json => pretty(&json!({"group": g.to_string()})),
    }
}

fn run(cli: Cli) -> Out {
    let fmt = cli.format;
    match cli.command {
        Command::Group {
            op: GroupOp::Normalize { literal },
        } => Ok(group_out(fmt, &group(&literal)?)),
        Command::Hom { u, v } => Ok(group_out(
            fmt,
            HomSpace::new(&group(&u)?, &group(&v)?).group(),
        )),
        Command::Ext { u, v } => Ok(group_out(fmt, &ext_group(&group(&u)?, &group(&v)?))),
        Command::Phi { file } => {
            let e = parse_extension(&read(&file)?)?;
            let p = phi(&e)?;
            Ok(match fmt {
                Format::Text => format!("{} -> {}: {}", p.domain(), p.codomain(), p.matrix()),
                Format::Json => pretty(&MapJson::of(&p)),
            })
        }
        Command::Diagram { op } => diagram_cmd(fmt, op),
        Command::Dual { op } => {
            let dual = match op {
                DualOp::J { file } => j_dual(&eed(&file)?)?,
                DualOp::Delta { file } => delta_dual_explicit(&eed(&file)?).diagram,
            };
            Ok(match fmt {
                Format::Text => dual.to_string(),
                Format::Json => pretty(&encode_eed(&dual)),
            })
        }
        Command::Cj { op } => Ok(match op {
            CjOp::Table => composition_table_text().trim_end().to_string(),
            CjOp::Square => square_text().trim_end().to_string(),
            CjOp::Representable { object } => {
                let x: CjObject = object.parse()?;
                let fx = representable(x);
                match fmt {
                    Format::Text => format!("F_{x}: {fx}"),
                    Format::Json => pretty(&encode_eed(&fx)),
                }
            }
        }),
        Command::Verify {
            suite,
            max_order,
            seed,
        } => {
            let start = Instant::now();
            let report = run_verify(&suite, max_order, seed)?;
            // Kept out of the report so equal runs give identical output.
            eprintln!("{suite}: {:.2?}", start.elapsed());
            let body = match fmt {
                Format::Text => report.to_text().trim_end().to_string(),
                Format::Json => report.to_json(),
            };
            if report.passed {
                Ok(body)
            } else {
                println!("{body}");
                Err(Failure::Domain(format!("verification failed: {suite}")))
            }
        }
    }
}

fn diagram_cmd(fmt: Format, op: DiagramOp) -> Out {
    match op {
        DiagramOp::Validate { files } => {
            let mut lines = Vec::new();
            let mut bad = None;
            for f in &files {
                let d = diagram(f)?;
                let report = match &d {
                    Diagram::Moore(m) => m.validate(),
                    Diagram::Eed(n) => n.validate(),
                    Diagram::Eta(_) => moorediag::diagrams::ValidationReport {
                        checks: vec![("2eta=0".into(), true)],
                    },
                };
                let line = match fmt {
                    Format::Text => match report.first_failure() {
                        None => format!("{f}: valid {}", d.kind()),
                        Some(r) => format!("{f}: relation failed: {r}"),
                    },
                    Format::Json => serde_json::to_string(&json!({
                        "file": f,
                        "kind": d.kind(),
                        "valid": report.ok(),
                        "checks": report.checks.iter().map(|(n, b)| json!([n, b])).collect::<Vec<_>>(),
                    }))
                    .expect("serializable"),
                };
                if !report.ok() && bad.is_none() {
                    bad = Some(line.clone());
                }
                lines.push(line);
            }
            match bad {
                None => Ok(lines.join("\n")),
                Some(_) => Err(Failure::Domain(lines.join("\n"))),
            }
        }
        DiagramOp::Exact { files } => {
            let mut lines = Vec::new();
            for f in &files {
                let exact = match diagram(f)? {
                    Diagram::Moore(m) if m.validate().ok() => m.is_exact(),
                    Diagram::Eed(n) if n.validate().ok() => n.is_exact(),
                    Diagram::Eta(_) => {
                        return Err(Failure::Domain(format!(
                            "{f}: exactness is defined for moore and eed diagrams"
                        )))
                    }
                    _ => return Err(Failure::Domain(format!("{f}: diagram does not validate"))),
                };
                lines.push(match fmt {
                    Format::Text => format!("{f}: {}", if exact { "exact" } else { "not exact" }),
                    Format::Json => serde_json::to_string(&json!({"file": f, "exact": exact}))
                        .expect("serializable"),
                });
            }
            Ok(lines.join("\n"))
        }
        DiagramOp::Homset { source, target } => {
            let sys = match (diagram(&source)?, diagram(&target)?) {
                (Diagram::Eed(n), Diagram::Eed(n2)) => {
                    let (n, n2) = (Arc::new(n), Arc::new(n2));
                    for (p, d) in [(&source, &n), (&target, &n2)] {
                        if let Some(r) = d.validate().first_failure() {
                            return Err(Failure::Domain(format!("{p}: relation failed: {r}")));
                        }
                    }
                    eed_hom_system(&n, &n2)
                }
                (Diagram::Moore(m), Diagram::Moore(m2)) => {
                    moorediag::diagrams::moore_hom_system(&m, &m2)
                }
                (Diagram::Eta(p), Diagram::Eta(p2)) => eta_hom_system(&p, &p2),
                (a, b) => {
                    return Err(Failure::Domain(format!(
                        "morphisms need diagrams of one kind, got {} and {}",
                        a.kind(),
                        b.kind()
                    )))
                }
            };
            let g = sys.group();
            let size = g.order().map_or("infinite".to_string(), |o| o.to_string());
            Ok(match fmt {
                Format::Text => format!("{g} ({size} morphisms)"),
                Format::Json => pretty(&json!({"group": g.to_string(), "size": size})),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("{m}");
            ExitCode::from(2)
        }
    }
}
