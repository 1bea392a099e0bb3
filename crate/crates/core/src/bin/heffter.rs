use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use heffter::cycles::{develop_columns, develop_rows};
use heffter::report::{
    conformance_report, cycles_report, embedding_report, orderings_report, search_report,
    verification_report,
};
use heffter::search::Strategy;
use heffter::{
    build_face_set, certify, compatible_orderings, construct_raw_h3,
    find_simple_column_permutation, generate_heffter, genus_closed_form, simple_h3, ArrayFile,
    CertReport, ColumnPermutation, Error, HeffterArray, SearchConfig,
};

/// Simple Heffter arrays, their cycle systems and biembeddings.
#[derive(Parser)]
#[command(name = "heffter", version)]
struct Cli {
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Array file ("heffter m n v" header, then one row per line).
    #[arg(long)]
    file: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Backtracking,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the simple 3 x n array.
    Gen3 {
        #[arg(long)]
        n: usize,
        /// Emit the array before its columns are reordered.
        #[arg(long)]
        raw: bool,
    },
    /// Check the Heffter axioms and simplicity.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Also fail when the array is not simple.
        #[arg(long)]
        require_simple: bool,
    },
    /// Apply a column permutation such as "(1,2,6,8,5,3,4,7)".
    Reorder {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        perm: String,
    },
    /// Build the compatible row and column orderings.
    Orderings {
        #[command(flatten)]
        input: Input,
    },
    /// Develop the row or column cycle system.
    Develop {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "cols", required_unless_present = "cols")]
        rows: bool,
        #[arg(long)]
        cols: bool,
        /// List every cycle instead of the base cycles.
        #[arg(long)]
        expand: bool,
    },
    /// Build and certify the embedding.
    Embed {
        #[command(flatten)]
        input: Input,
        /// List every face instead of the base faces.
        #[arg(long)]
        expand: bool,
    },
    /// Closed-form genus of the embedding from an m x n array.
    Genus {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3)]
        m: u64,
    },
    /// Find a column order making every row simple.
    Search {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = StrategyArg::Backtracking)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = SearchConfig::default().node_budget)]
        budget: u64,
    },
    /// Generate an m x n Heffter array with simple columns.
    Generate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Randomised restarts with this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = SearchConfig::default().node_budget)]
        budget: u64,
    },
}

type Outcome = Result<(String, bool), Error>;

fn load(input: &Input) -> Result<HeffterArray, Error> {
    let text = fs::read_to_string(&input.file).map_err(|e| Error::Parse {
        line: 0,
        column: None,
        message: format!("cannot read {}: {e}", input.file.display()),
    })?;
    ArrayFile::parse(&text).map(|f| f.array)
}

fn array_text(h: HeffterArray, comment: String) -> String {
    ArrayFile::new(h).with_comment(comment).serialize()
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Gen3 { n, raw } => {
            let h = if raw {
                construct_raw_h3(n)?
            } else {
                simple_h3(n)?
            };
            let ok = h.is_heffter() && (raw || h.is_simple());
            let label = if raw { "unordered" } else { "simple" };
            Ok((array_text(h, format!("{label} 3x{n}")), ok))
        }
        Command::Verify {
            input,
            require_simple,
        } => {
            let h = load(&input)?;
            let mut r = verification_report(&h);
            if let Some(c) = conformance_report(&h) {
                r.merge("conformance", &c);
            }
            let ok = r.get_bool("verify.heffter") == Some(true)
                && (!require_simple || r.get_bool("verify.simple") == Some(true));
            Ok((r.serialize(), ok))
        }
        Command::Reorder { input, perm } => {
            let h = load(&input)?;
            let p: ColumnPermutation = perm.parse()?;
            let out = h.reorder_columns(&p)?;
            let ok = out.is_heffter();
            Ok((array_text(out, format!("columns reordered by {p}")), ok))
        }
        Command::Orderings { input } => {
            let h = load(&input)?;
            let pair = compatible_orderings(&h)?;
            let r = orderings_report(&h, &pair);
            let ok = r.get_bool("composite.single_cycle") == Some(true);
            Ok((r.serialize(), ok))
        }
        Command::Develop {
            input,
            rows,
            expand,
            ..
        } => {
            let h = load(&input)?;
            let cs = if rows {
                develop_rows(&h)?
            } else {
                develop_columns(&h)?
            };
            let r = cycles_report(&cs, expand);
            let ok = ["cycles.exact_cover", "cycles.simple", "cycles.cyclic"]
                .iter()
                .all(|k| r.get_bool(k) == Some(true));
            Ok((r.serialize(), ok))
        }
        Command::Embed { input, expand } => {
            let h = load(&input)?;
            let pair = compatible_orderings(&h)?;
            let faces = build_face_set(&h, &pair)?;
            let cert = certify(&faces)?;
            let r = embedding_report(&faces, &cert, expand);
            Ok((r.serialize(), cert.all_ok()))
        }
        Command::Genus { n, m } => match genus_closed_form(m, n) {
            Some(g) => Ok((format!("{g}\n"), true)),
            None => Ok((format!("no integer genus for {m}x{n}\n"), false)),
        },
        Command::Search {
            input,
            strategy,
            budget,
        } => {
            let h = load(&input)?;
            let cfg = SearchConfig {
                strategy: match strategy {
                    StrategyArg::Exhaustive => Strategy::Exhaustive,
                    StrategyArg::Backtracking => Strategy::Backtracking,
                },
                node_budget: budget,
                seed: None,
            };
            match find_simple_column_permutation(&h, &cfg) {
                Ok(outcome) => {
                    let ok = outcome.report.is_heffter() && outcome.report.is_simple();
                    Ok((search_report(&outcome).serialize(), ok))
                }
                Err(e @ (Error::NoneExists | Error::BudgetExceeded { .. })) => {
                    let mut r = CertReport::new();
                    let result = if e == Error::NoneExists {
                        "none-exists"
                    } else {
                        "budget-exceeded"
                    };
                    r.set("search.result", result).set("search.message", &e);
                    Ok((r.serialize(), false))
                }
                Err(e) => Err(e),
            }
        }
        Command::Generate { m, n, seed, budget } => {
            let cfg = SearchConfig {
                node_budget: budget,
                seed,
                ..SearchConfig::default()
            };
            let h = generate_heffter(m, n, &cfg)?;
            let ok = h.is_heffter();
            let how = seed.map_or("deterministic search".to_string(), |s| format!("seed {s}"));
            Ok((array_text(h, format!("generated {m}x{n}, {how}")), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("warning: {e}");
        }
    }
    match run(cli.command) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
