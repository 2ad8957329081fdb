use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sgdim::dimension::{
    codimension, codimension_bounds, dimension_bounds, exact_dimension, kurz_napel_lower, pairwise_incompatible,
    verify_intersection, Budget, DimensionReport,
};
use sgdim::hierarchical::{os3_witness_set, HierarchicalSpec, Kind};
use sgdim::io::GameFile;
use sgdim::report::{analyze, dimension_text, to_json, AnalyzeOptions};
use sgdim::{repro, Error, SimpleGame};

const EXIT_USAGE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_ASSERTION: u8 = 3;

#[derive(Parser)]
#[command(name = "sgdim", version, about = "Weightedness, certificates and dimension of simple games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure, weightedness and certificates of one game.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Search for a certificate of non-weightedness.
        #[arg(long)]
        certificates: bool,
        /// Longest certificate tried.
        #[arg(long, value_name = "LEN")]
        max_cert_len: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Dimension bounds, or the exact dimension with `--exact`.
    Dimension {
        #[command(flatten)]
        input: InputArgs,
        /// Witness game with k head players and m classes, e.g. `--os3 k=2 m=3`.
        #[arg(long, num_args = 2, value_names = ["k=K", "m=M"], conflicts_with_all = ["file", "game", "hier"])]
        os3: Option<Vec<String>>,
        #[arg(long)]
        exact: bool,
        /// Largest number of maximal losing coalitions for the exact search.
        #[arg(long, value_name = "N")]
        budget: Option<usize>,
        /// Search steps (nodes plus separation problems) for the exact search.
        #[arg(long, value_name = "N")]
        max_steps: Option<u64>,
        /// Only the clique lower bound.
        #[arg(long, conflicts_with = "exact")]
        lower_only: bool,
        /// Work on the dual game, giving codimension.
        #[arg(long)]
        codim: bool,
        #[arg(long)]
        json: bool,
    },
    /// Rerun one end-to-end scenario and print PASS/FAIL per check.
    Repro {
        /// One of prop5, os3, osconj, sec4, delta1, codim.
        name: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Game file, or `-` for stdin.
    #[arg(value_name = "FILE", conflicts_with_all = ["game", "hier"])]
    file: Option<String>,
    /// Game file, or `-` for stdin.
    #[arg(long, value_name = "FILE", conflicts_with = "hier")]
    game: Option<String>,
    /// Hierarchical game kind: disj or conj.
    #[arg(long, alias = "kind", value_name = "KIND", requires_all = ["n", "k"])]
    hier: Option<String>,
    /// Class sizes for `--hier`.
    #[arg(long, value_delimiter = ',', requires = "hier")]
    n: Option<Vec<usize>>,
    /// Thresholds for `--hier`.
    #[arg(long, value_delimiter = ',', requires = "hier")]
    k: Option<Vec<usize>>,
}

enum Failure {
    Usage(String),
    Assertion(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn load_game(input: &InputArgs) -> Result<SimpleGame, Failure> {
    if let Some(kind) = &input.hier {
        let kind = Kind::parse(kind).ok_or_else(|| Failure::Usage(format!("unknown kind '{kind}'; use disj or conj")))?;
        let spec = HierarchicalSpec::new(
            kind,
            input.n.clone().unwrap_or_default(),
            input.k.clone().unwrap_or_default(),
        )?;
        return Ok(sgdim::hierarchical::build(&spec)?);
    }
    let path = input
        .file
        .as_deref()
        .or(input.game.as_deref())
        .ok_or_else(|| Failure::Usage("no input: give a FILE, --game FILE or --hier".into()))?;
    let text = read_source(path)?;
    let file = GameFile::parse(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    Ok(file.game()?)
}

fn parse_os3(values: &[String]) -> Result<(usize, usize), Failure> {
    let mut k = None;
    let mut m = None;
    for v in values {
        let (key, value) = v
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("expected key=value, got '{v}'")))?;
        let value: usize = value
            .parse()
            .map_err(|_| Failure::Usage(format!("'{v}': value must be an integer")))?;
        match key {
            "k" => k = Some(value),
            "m" => m = Some(value),
            _ => return Err(Failure::Usage(format!("unknown key '{key}' in --os3"))),
        }
    }
    match (k, m) {
        (Some(k), Some(m)) => Ok((k, m)),
        _ => Err(Failure::Usage("--os3 needs k=<int> m=<int>".into())),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze {
            input,
            certificates,
            max_cert_len,
            json,
        } => {
            let g = load_game(&input)?;
            let report = analyze(
                &g,
                AnalyzeOptions {
                    certificates,
                    max_certificate_len: max_cert_len,
                },
            );
            if json {
                println!("{}", to_json(&report));
            } else {
                print!("{}", report.to_text());
            }
            let verified = (!report.weighted.holds || report.weighted.witness_verified)
                && (!report.roughly_weighted.holds || report.roughly_weighted.witness_verified);
            if !verified {
                return Err(Failure::Assertion("a representation failed verification".into()));
            }
            Ok(0)
        }
        Command::Dimension {
            input,
            os3,
            exact,
            budget,
            max_steps,
            lower_only,
            codim,
            json,
        } => {
            let mut witness_note = None;
            let game = match &os3 {
                Some(values) => {
                    let (k, m) = parse_os3(values)?;
                    let (g, witness) = os3_witness_set(k, m)?;
                    if !pairwise_incompatible(&g, &witness) {
                        return Err(Failure::Assertion("witness set is not pairwise incompatible".into()));
                    }
                    let upper = k.pow(m as u32) * (2 * k - 1).pow(m as u32 - 1);
                    witness_note = Some(format!(
                        "witness set of {} pairwise incompatible coalitions verified; closed-form bounds {}..{upper}",
                        witness.len(),
                        witness.len()
                    ));
                    g
                }
                None => load_game(&input)?,
            };
            let target = if codim { game.dual() } else { game.clone() };
            if lower_only {
                let (lower, witness) = kurz_napel_lower(&target);
                if json {
                    println!("{}", to_json(&serde_json::json!({ "lower": lower, "witness_lower": witness })));
                } else {
                    let list: Vec<String> = witness.iter().map(ToString::to_string).collect();
                    println!("lower={lower}");
                    println!("lower witness: {}", list.join(","));
                }
                return Ok(0);
            }
            let mut report: DimensionReport = if exact {
                let mut b = Budget::default();
                if let Some(n) = budget {
                    b.max_losing = n;
                }
                if let Some(s) = max_steps {
                    b.max_steps = s;
                }
                if codim {
                    codimension(&game, b)
                } else {
                    exact_dimension(&game, b)
                }
            } else if codim {
                codimension_bounds(&game)
            } else {
                dimension_bounds(&game)
            };
            if let Some(note) = witness_note {
                report.notes.push(note);
            }
            if !verify_intersection(&target, &report.witness_upper) {
                return Err(Failure::Assertion("upper witness does not represent the game".into()));
            }
            if json {
                println!("{}", to_json(&report));
            } else {
                print!("{}", dimension_text(&report));
            }
            Ok(if exact && report.exact.is_none() { EXIT_BUDGET } else { 0 })
        }
        Command::Repro { name, json } => {
            let checks = repro::run(&name)?;
            if json {
                let rows: Vec<_> = checks
                    .iter()
                    .map(|c| serde_json::json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
                    .collect();
                println!("{}", to_json(&rows));
            } else {
                for c in &checks {
                    println!("{c}");
                }
            }
            Ok(if checks.iter().all(|c| c.pass) { 0 } else { EXIT_ASSERTION })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Assertion(msg)) => {
            eprintln!("internal assertion failed: {msg}");
            ExitCode::from(EXIT_ASSERTION)
        }
    }
}
