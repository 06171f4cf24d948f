//! Command-line surface for the double-complex cohomology lab.
//!
//! Exit codes: 0 success, 1 a theorem-backed check failed (an engine bug,
//! never an input property), 2 input error (unreadable file, parse error,
//! d² ≠ 0, unknown parameter).

use bicomplex::dcx::parse_dcx;
use bicomplex::report::{
    analyze_file, corpus_to_json, parse_param_args, run_corpus, to_json, to_markdown,
};
use bicomplex::verify::run_fuzz;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "bicomplex",
    version,
    about = "Exact cohomology of bounded double complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a `.se` or `.dcx` file.
    Analyze {
        file: PathBuf,
        /// Parameter binding `name=rational` (repeatable).
        #[arg(long = "param", value_name = "NAME=RAT")]
        params: Vec<String>,
        /// Focus the report on one bidegree.
        #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true)]
        pq: Option<Vec<i32>>,
        /// Emit canonical JSON.
        #[arg(long, conflicts_with = "md")]
        json: bool,
        /// Emit markdown (the default).
        #[arg(long)]
        md: bool,
        /// Write the report to a file instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Parse and validate a file, reporting differential-identity violations.
    Validate { file: PathBuf },
    /// Run the theorem battery over seeded random complexes.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 20)]
        budget: usize,
        /// Directory for failure dumps (replayable `.dcx`).
        #[arg(long, value_name = "DIR", default_value = ".")]
        dump_dir: PathBuf,
    },
    /// Operations on the committed corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Analyze every corpus entry and compare against the fixtures.
    Run {
        /// Corpus directory.
        #[arg(long, value_name = "DIR", default_value = "corpus")]
        dir: PathBuf,
        /// Rewrite fixtures from the independent oracle.
        #[arg(long)]
        update_fixtures: bool,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Analyze {
            file,
            params,
            pq,
            json,
            md: _,
            out,
        } => {
            let params = parse_param_args(&params).map_err(|e| e.to_string())?;
            let focus = pq.map(|v| (v[0], v[1]));
            let analysis = analyze_file(&file, &params, focus).map_err(|e| e.to_string())?;
            let rendered = if json {
                to_json(&analysis.report)
            } else {
                to_markdown(&analysis.report)
            };
            match out {
                Some(path) => std::fs::write(&path, rendered)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => println!("{rendered}"),
            }
            if analysis.report.violations.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "{} theorem-backed check(s) failed; this is an engine bug",
                    analysis.report.violations.len()
                );
                Ok(ExitCode::from(1))
            }
        }
        Command::Validate { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let dc = match file.extension().and_then(|e| e.to_str()) {
                Some("se") => {
                    let se = bicomplex::lie::parse(&text).map_err(|e| e.to_string())?;
                    let model = bicomplex::lie::LieModel::build(&se, &Default::default())
                        .map_err(|e| e.to_string())?;
                    model.complex
                }
                Some("dcx") => parse_dcx(&text).map_err(|e| e.to_string())?,
                _ => return Err(format!("unsupported extension: {}", file.display())),
            };
            let violations = dc.validate();
            if violations.is_empty() {
                println!("ok: all differential identities hold");
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &violations {
                    println!("violation {v}");
                }
                Err(format!(
                    "{} differential identity violation(s)",
                    violations.len()
                ))
            }
        }
        Command::Fuzz {
            seed,
            count,
            budget,
            dump_dir,
        } => {
            let summary = run_fuzz(seed, count, budget);
            println!(
                "fuzz: {} instance(s), budget {budget}, {} failure(s)",
                summary.count,
                summary.failures.len()
            );
            for failure in &summary.failures {
                let path = dump_dir.join(format!("fuzz-failure-seed{}.dcx", failure.seed));
                std::fs::write(&path, &failure.dcx)
                    .map_err(|e| format!("cannot dump {}: {e}", path.display()))?;
                println!(
                    "  instance {} (seed {}) dumped to {}",
                    failure.index,
                    failure.seed,
                    path.display()
                );
                for f in &failure.findings {
                    println!("    {f}");
                }
            }
            if summary.failures.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Corpus { action } => match action {
            CorpusAction::Run {
                dir,
                update_fixtures,
                json,
            } => {
                let summary = run_corpus(&dir, update_fixtures).map_err(|e| e.to_string())?;
                if json {
                    println!("{}", corpus_to_json(&summary));
                } else {
                    for e in &summary.entries {
                        println!(
                            "{:<22} engine-fixture {} oracle-fixture {} violations {}",
                            e.name,
                            if e.engine_matches_fixture {
                                "ok"
                            } else {
                                "DRIFT"
                            },
                            if e.oracle_matches_fixture {
                                "ok"
                            } else {
                                "DRIFT"
                            },
                            e.violations
                        );
                    }
                    println!(
                        "corpus: {} entries, drift {}, ok: {}",
                        summary.entries.len(),
                        summary.drift,
                        summary.ok
                    );
                }
                if summary.ok {
                    Ok(ExitCode::SUCCESS)
                } else {
                    Ok(ExitCode::from(1))
                }
            }
        },
    }
}
