use clap::{Args, Parser, Subcommand, ValueEnum};
use pentagon_loss::analytics::{find_threshold, preannounced, LossMode, RecurrenceCurve};
use pentagon_loss::code::{build_pentagon_code, verify_encoding_identities};
use pentagon_loss::gates::cx_candidate;
use pentagon_loss::graph::{graph_stabilizers, ring_graph, GraphSpec};
use pentagon_loss::montecarlo::{to_csv, with_jobs, SimConfig, Simulator};
use pentagon_loss::pauli::Basis;
use pentagon_loss::report::{
    code_text, comparison, parse_grid, parse_levels, policy_text, table1, table2, table3, GateVerdicts,
    OVERHEAD_EPSILON,
};
use pentagon_loss::strategy::{published_tree, validate_policy, MeasurementPolicy, NonpreRecurrence};
use std::process::ExitCode;

/// Loss tolerance of the concatenated five-qubit ring code.
#[derive(Parser)]
#[command(name = "pentaloss", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to a file instead of stdout. `--out csv` and `--out json` pick a format.
    #[arg(long)]
    out: Option<String>,
}

impl Output {
    fn resolve(&self, default: Format) -> (Format, Option<&str>) {
        match self.out.as_deref() {
            Some("csv") => (Format::Csv, None),
            Some("json") => (Format::Json, None),
            path => (self.format.unwrap_or(default), path),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Show the code: stabilizers, logical operators and minimal representatives.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Nontrivial fixed point of the level recurrence.
    Threshold {
        #[arg(long, default_value = "pre")]
        mode: LossMode,
        #[arg(long, value_enum, default_value = "code")]
        base: BaseMap,
    },
    /// Effective loss against physical loss for a range of levels.
    Curve {
        #[arg(long, default_value = "pre")]
        mode: LossMode,
        #[arg(long, default_value = "1..5")]
        levels: String,
        #[arg(long, default_value = "0:0.5:0.005")]
        grid: String,
        #[command(flatten)]
        output: Output,
    },
    /// Regenerate one of the published tables.
    Table {
        #[arg(long)]
        which: u8,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo estimate of the effective loss.
    Simulate {
        #[arg(long, default_value = "pre")]
        mode: LossMode,
        /// Loss probability, or a grid `start:stop:step` / list.
        #[arg(long)]
        p: String,
        /// Level count or range `a..b`.
        #[arg(long, default_value = "1")]
        levels: String,
        #[arg(long, default_value_t = 1_000_000)]
        shots: u64,
        #[arg(long, env = "PENTALOSS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "Z")]
        basis: Basis,
        /// Nonpre mode: reveal losses before bases are chosen.
        #[arg(long)]
        revealed: bool,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run verifications; exits with 2 when anomalies are found.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Pentagon overheads next to the cited tree-code overheads.
    Compare {
        #[arg(long, default_value_t = OVERHEAD_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value = "0.01:0.45:0.01")]
        grid: String,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum CodeAction {
    Show {
        #[arg(long)]
        basis: Option<Basis>,
        /// Only the minimum-weight representatives of `--basis`.
        #[arg(long, requires = "basis")]
        min_weight: bool,
        /// Print the stabilizers of an n-cycle graph state instead.
        #[arg(long)]
        ring: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// Logical CZ flow, CX correlations and the Hadamard chain.
    Gates {
        /// 8-vertex edge list for the CX pattern; defaults to the shipped candidate.
        #[arg(long)]
        adjacency: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Validate a measurement policy; defaults to the published decision tree.
    Tree {
        #[arg(long)]
        policy: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "Z")]
        targets: Vec<Basis>,
        #[arg(long)]
        json: bool,
    },
    /// Encoding-circuit operator identities.
    Encoding {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaseMap {
    Code,
    Identity,
}

type Outcome = Result<ExitCode, Box<dyn std::error::Error>>;

fn emit(text: &str, path: Option<&str>) -> Result<(), Box<dyn std::error::Error>> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{path}: {e}"))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read(path: &str) -> Result<String, Box<dyn std::error::Error>> {
    std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}").into())
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Box<dyn std::error::Error>> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn recurrence() -> Result<NonpreRecurrence, pentagon_loss::Error> {
    NonpreRecurrence::build(&build_pentagon_code()?)
}

fn code_show(basis: Option<Basis>, min_weight: bool, ring: Option<usize>, as_json: bool) -> Outcome {
    if let Some(n) = ring {
        let stabs = graph_stabilizers(&ring_graph(n)?);
        let text = if as_json {
            json(&stabs)?
        } else {
            stabs.iter().map(|s| format!("{s}\n")).collect()
        };
        emit(&text, None)?;
        return Ok(ExitCode::SUCCESS);
    }
    let code = build_pentagon_code()?;
    let text = match (basis, min_weight) {
        (Some(b), true) => {
            let reps = code.minimal_representatives(b)?;
            if as_json {
                json(&reps)?
            } else {
                reps.iter().map(|r| format!("{r}\n")).collect()
            }
        }
        (Some(b), false) => {
            let coset = code.coset(b)?;
            if as_json {
                json(&coset)?
            } else {
                coset.iter().map(|r| format!("{r}\n")).collect()
            }
        }
        (None, _) => {
            let desc = code.describe()?;
            if as_json {
                json(&desc)?
            } else {
                code_text(&desc)
            }
        }
    };
    emit(&text, None)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Code {
            action: CodeAction::Show {
                basis,
                min_weight,
                ring,
                json,
            },
        } => code_show(basis, min_weight, ring, json),
        Command::Threshold { mode, base } => {
            let t = match (mode, base) {
                (_, BaseMap::Identity) => find_threshold(&|p: f64| p),
                (LossMode::Preannounced, BaseMap::Code) => find_threshold(&preannounced),
                (LossMode::Nonpreannounced, BaseMap::Code) => find_threshold(&recurrence()?),
            };
            match t {
                Some(t) => println!("{t:.9}"),
                None => println!("no threshold"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Curve {
            mode,
            levels,
            grid,
            output,
        } => {
            let (lo, hi) = parse_levels(&levels)?;
            let grid = parse_grid(&grid)?;
            let curve = match mode {
                LossMode::Preannounced => RecurrenceCurve::sample(mode, &preannounced, hi, &grid)?,
                LossMode::Nonpreannounced => RecurrenceCurve::sample(mode, &recurrence()?, hi, &grid)?,
            };
            let curve = RecurrenceCurve {
                points: curve.points.into_iter().filter(|pt| pt.level >= lo).collect(),
                ..curve
            };
            let (format, path) = output.resolve(Format::Csv);
            let text = match format {
                Format::Json => json(&curve)?,
                _ => curve.to_csv(),
            };
            emit(&text, path)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { which, output } => {
            let table = match which {
                1 => table1()?,
                2 => table2()?,
                3 => table3(&recurrence()?)?,
                other => return Err(format!("no table {other}; expected 1, 2 or 3").into()),
            };
            let (format, path) = output.resolve(Format::Text);
            let text = match format {
                Format::Text => table.to_text(),
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json()? + "\n",
            };
            emit(&text, path)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            mode,
            p,
            levels,
            shots,
            seed,
            basis,
            revealed,
            jobs,
            output,
        } => {
            let ps = parse_grid(&p)?;
            let (lo, hi) = parse_levels(&levels)?;
            let mut configs = Vec::new();
            for levels in lo..=hi {
                for &p in &ps {
                    configs.push(SimConfig {
                        basis,
                        revealed_loss: revealed,
                        ..SimConfig::new(mode, p, levels, shots, seed)
                    });
                }
            }
            let sim = Simulator::new()?;
            let reports = with_jobs(jobs, || {
                if configs.len() == 1 {
                    vec![sim.run(&configs[0])]
                } else {
                    sim.sweep(&configs).unwrap_or_default()
                }
            })?;
            let reports = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
            let (format, path) = output.resolve(Format::Json);
            let text = match format {
                Format::Csv => to_csv(&reports),
                _ => reports
                    .iter()
                    .map(|r| serde_json::to_string(r).map(|s| s + "\n"))
                    .collect::<Result<String, _>>()?,
            };
            emit(&text, path)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { what } => match what {
            VerifyWhat::Gates { adjacency, json: as_json } => {
                let graph = match adjacency {
                    Some(path) => GraphSpec::from_edge_list(8, &read(&path)?)?,
                    None => cx_candidate()?,
                };
                let verdicts = GateVerdicts::run(&build_pentagon_code()?, &graph)?;
                let text = if as_json { json(&verdicts)? } else { verdicts.to_text() };
                emit(&text, None)?;
                Ok(verdict(verdicts.passed()))
            }
            VerifyWhat::Tree {
                policy,
                targets,
                json: as_json,
            } => {
                let policy: MeasurementPolicy = match policy {
                    Some(path) => serde_json::from_str(&read(&path)?)?,
                    None => published_tree(),
                };
                let policy = MeasurementPolicy::new(policy.n_qubits, policy.target, policy.root)?;
                let report = validate_policy(&policy, &build_pentagon_code()?, &targets)?;
                let text = if as_json {
                    json(&report)?
                } else {
                    policy_text(&report, &policy.failure_polynomial())
                };
                emit(&text, None)?;
                Ok(verdict(report.is_clean()))
            }
            VerifyWhat::Encoding { json: as_json } => {
                let report = verify_encoding_identities(&build_pentagon_code()?)?;
                let text = if as_json {
                    json(&report)?
                } else {
                    report
                        .checks
                        .iter()
                        .map(|c| format!("{}: {}\n", if c.passed { "pass" } else { "FAIL" }, c.name))
                        .collect()
                };
                emit(&text, None)?;
                Ok(verdict(report.passed()))
            }
        },
        Command::Compare { epsilon, grid, output } => {
            let report = comparison(&recurrence()?, &parse_grid(&grid)?, epsilon)?;
            let (format, path) = output.resolve(Format::Json);
            let text = match format {
                Format::Csv => report.to_csv(),
                _ => json(&report)?,
            };
            emit(&text, path)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::FAILURE;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
