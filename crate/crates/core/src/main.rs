use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hfi::correction_terms::{correction_terms, realization_family};
use hfi::graded_roots::{RootProfile, SymmetricRootProfile};
use hfi::ingest_cli::report::DEFAULT_ORACLE_LIMIT;
use hfi::ingest_cli::{evaluate, BrieskornParams, EvalError, EvalOptions, PlumbingGraph, DEFAULT_AR_BOUND};
use hfi::monotone::MonotoneRoot;
use hfi::rational::fmt_q;

#[derive(Parser)]
#[command(name = "hfi", version, about = "Local equivalence classes and involutive correction terms")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Definite,
    Rational,
    Ar,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression such as "Sigma(5,8,13) - Y(1)".
    Eval {
        expr: String,
        /// Cross-check (d, d̄, d̲) on the tensor product complex.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        truncation: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        oracle_limit: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include the oracle complex in the JSON report.
        #[arg(long)]
        dump_complex: bool,
    },
    /// Graded root of a Brieskorn sphere, as a root file.
    Root {
        #[command(subcommand)]
        source: RootSource,
    },
    /// Monotone subroot and class of a root file.
    Decompose {
        /// Path, optionally prefixed by `@`.
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Lattice checks on a plumbing graph file.
    Plumbing {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ar")]
        check: Check,
        #[arg(long, default_value_t = DEFAULT_AR_BOUND)]
        bound: u32,
    },
    /// Class with prescribed d̄ - d = 2M, d - d̲ = 2N, d and μ̄, indexed by k.
    Family {
        #[arg(long = "M")]
        m: u32,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        mu: i64,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
}

#[derive(Subcommand)]
enum RootSource {
    Sigma {
        a: u64,
        b: u64,
        c: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write gradings shifted down by 2, tagged `convention: hf-minus`.
        #[arg(long)]
        hf_minus: bool,
    },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Eval { expr, oracle, truncation, oracle_limit, format, dump_complex } => {
            let opts = EvalOptions { oracle, truncation, oracle_limit, dump_complex, base_dir: None };
            match evaluate(&expr, &opts) {
                Ok(r) => {
                    match format {
                        Format::Json => println!("{}", r.to_json_string()),
                        Format::Text => print!("{}", r.to_text()),
                    }
                    if r.oracle_mismatch() {
                        return fail(3, "oracle disagrees with the closed form");
                    }
                    ExitCode::SUCCESS
                }
                Err(EvalError::Parse(e)) => {
                    eprintln!("{expr}\n{:>w$}", "^", w = e.column);
                    fail(2, e)
                }
                Err(e) => fail(1, e),
            }
        }
        Cmd::Root { source: RootSource::Sigma { a, b, c, output, hf_minus } } => {
            let root = match BrieskornParams::new(a, b, c).and_then(|p| p.root()) {
                Ok(r) => r,
                Err(e) => return fail(1, e),
            };
            let mut text = format!("# {}  d = {}\n# monotone {}\n# class {}\n", root.params, fmt_q(&root.d), root.monotone, root.class);
            if hf_minus {
                text += "convention: hf-minus\n";
                text += &root.profile.profile().shifted((-2).into()).to_text();
            } else {
                text += &root.profile.profile().to_text();
            }
            match output {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &text) {
                        return fail(1, format!("{}: {e}", path.display()));
                    }
                    eprintln!("wrote {}", path.display());
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Cmd::Decompose { file, format } => {
            let path = file.strip_prefix('@').unwrap_or(&file);
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return fail(1, format!("{path}: {e}")),
            };
            let profile = match RootProfile::from_text(&text).and_then(SymmetricRootProfile::new) {
                Ok(p) => p,
                Err(e) => return fail(2, format!("{path}: {e}")),
            };
            let m = MonotoneRoot::extract(&profile);
            let class = m.decompose();
            let t = correction_terms(&class);
            match format {
                Format::Json => {
                    let v = serde_json::json!({
                        "profile": profile.to_string(),
                        "monotone": m.to_string(),
                        "class": class.to_json(),
                        "terms": t,
                        "mu_bar": fmt_q(&class.mu_bar()),
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
                Format::Text => {
                    println!("profile   {profile}");
                    println!("monotone  {m}");
                    println!("class     {class}");
                    println!("terms     {t}");
                    println!("mu_bar    {}", fmt_q(&class.mu_bar()));
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Plumbing { file, check, bound } => {
            let g = match std::fs::read_to_string(&file).map_err(|e| e.to_string()).and_then(|t| {
                PlumbingGraph::parse(&t).map_err(|e| e.to_string())
            }) {
                Ok(g) => g,
                Err(e) => return fail(2, format!("{}: {e}", file.display())),
            };
            let definite = match g.is_negative_definite() {
                Ok(v) => v,
                Err(e) => return fail(1, e),
            };
            println!("vertices           {}", g.len());
            if let Ok(det) = g.determinant() {
                println!("determinant        {det}");
            }
            println!("negative definite  {definite}");
            if matches!(check, Check::Definite) {
                return ExitCode::SUCCESS;
            }
            if !definite {
                return fail(1, "not negative definite; rationality is undefined");
            }
            if let Ok(k2) = g.k_squared() {
                println!("K^2                {k2}");
            }
            match g.is_rational() {
                Ok(r) => println!("rational           {r}"),
                Err(e) => return fail(1, e),
            }
            if matches!(check, Check::Ar) {
                match g.is_almost_rational(bound) {
                    Ok(v) => println!("almost rational    {v}"),
                    Err(e) => return fail(1, e),
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Family { m, n, d, mu, k } => match realization_family(m, n, d, mu, k) {
            Ok(class) => {
                println!("class     {class}");
                println!("terms     {}", correction_terms(&class));
                println!("mu_bar    {}", fmt_q(&class.mu_bar()));
                ExitCode::SUCCESS
            }
            Err(e) => fail(1, e),
        },
    }
}
