//! Command-line front end. [`run`] executes one invocation in-process and
//! returns its exit code and output streams; the binary forwards them.
//!
//! Exit codes: 0 affirmative, 1 negative verdict, 2 input error, 3
//! undecided or refused for budget.

pub mod bundle;
pub mod repfile;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use galrep_core::local_bound::{paper_m_bound, LocalFieldParams, PaperBound};
use galrep_core::newton::{compositions, d_m, dim_lambda, newton_coefficient};
use galrep_core::poteq::{
    m_character, pe_decide_with, twist_equivalent_finite, uniform_m_bound, PEStatus, PeConfig,
    DEFAULT_CLOSURE_CAP,
};
use galrep_core::weil::{budget_from_env, enumerate_weil, trace_class_bound};
use galrep_core::Error as CoreError;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "galrep", version, about = "Exact potential-equivalence toolkit")]
struct Cli {
    /// Plain text instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    plain: bool,
    /// JSON output (the default).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide potential equivalence of two representation files.
    CheckPe {
        first: PathBuf,
        second: PathBuf,
        /// Longest word tested for kind=free.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        closure_cap: usize,
    },
    /// Tr(rho(w)^m) for a word w over generator indices.
    MChar {
        rep: PathBuf,
        /// Comma-separated generator indices; empty for the identity.
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long)]
        m: u64,
    },
    /// Coefficients expressing the m-th power sum through exterior powers.
    Newton {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
    },
    /// The rank bound d_m(n).
    Dm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
    },
    /// Power bounds over a local field (--ell/--e/--f) or Q(zeta_N) (--order).
    Mbound(MboundArgs),
    /// Weil polynomials of degree d for (q, w).
    Weil {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        w: u32,
        #[arg(long)]
        d: usize,
        #[arg(long, conflicts_with = "places")]
        count_only: bool,
        /// Print weil_count^T, the bound on classes told apart by T places.
        #[arg(long)]
        places: Option<u32>,
    },
    /// Test-set simulation on a JSON group/places/representations bundle.
    Falsim { bundle: PathBuf },
    /// Search for a linear character twisting one finite representation into another.
    Twist {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        closure_cap: usize,
    },
}

#[derive(Debug, Args)]
struct MboundArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, requires_all = ["e", "f"], conflicts_with = "order", required_unless_present = "order")]
    ell: Option<u64>,
    #[arg(long, requires = "ell")]
    e: Option<u64>,
    #[arg(long, requires = "ell")]
    f: Option<u64>,
    /// Cyclotomic order N of the coefficient field.
    #[arg(long)]
    order: Option<usize>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Undecided(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::BudgetExceeded { .. } => Failure::Undecided(format!("error[E_BUDGET]: {e}")),
            other => Failure::Input(format!("error[E_INPUT]: {other}")),
        }
    }
}

impl From<repfile::RepFileError> for Failure {
    fn from(e: repfile::RepFileError) -> Self {
        Failure::Input(format!("error[{}]: {e}", e.code()))
    }
}

struct Output {
    code: i32,
    text: String,
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize")
}

fn emit<T: Serialize>(plain: bool, value: &T, plain_text: impl FnOnce() -> String, code: i32) -> Output {
    Output {
        code,
        text: if plain { plain_text() } else { json(value) },
    }
}

/// Runs one command line; `args` excludes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("galrep".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: EXIT_OK, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = out.text;
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code: out.code, stdout, stderr: String::new() }
        }
        Err(Failure::Input(msg)) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: msg + "\n" },
        Err(Failure::Undecided(msg)) => Outcome { code: EXIT_UNDECIDED, stdout: String::new(), stderr: msg + "\n" },
    }
}

fn parse_word(text: &str) -> Result<Vec<usize>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::Input(format!("error[E_INPUT]: bad word index {t:?}")))
        })
        .collect()
}

#[derive(Serialize)]
struct NewtonRow {
    parts: Vec<u32>,
    coefficient: String,
    dim_lambda: String,
}

#[derive(Serialize)]
struct UniformBound {
    n: usize,
    order: usize,
    value: String,
}

fn factored(bound: &PaperBound) -> String {
    let mut parts: Vec<String> = bound
        .factors
        .iter()
        .map(|(p, k)| if *k == 1 { p.to_string() } else { format!("{p}^{k}") })
        .collect();
    if !bound.is_fully_factored() {
        parts.push(format!("[{}]", bound.cofactor));
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    format!("{} = {}", bound.value, parts.join(" * "))
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let plain = cli.plain;
    Ok(match &cli.command {
        Command::CheckPe { first, second, depth, closure_cap } => {
            let a = repfile::parse_rep_file(first)?;
            let b = repfile::parse_rep_file(second)?;
            let config = PeConfig { closure_cap: *closure_cap };
            let verdict = pe_decide_with(&a, &b, *depth, &config)?;
            let code = match verdict.status {
                PEStatus::EquivalentWithWitness => EXIT_OK,
                PEStatus::NotEquivalent => EXIT_NEGATIVE,
                PEStatus::UndecidedAtDepth => EXIT_UNDECIDED,
            };
            let text = || {
                let mut s = match verdict.status {
                    PEStatus::EquivalentWithWitness => {
                        format!("equivalent_with_witness m={}", verdict.witness_m.unwrap_or(0))
                    }
                    PEStatus::NotEquivalent => "not_equivalent".to_string(),
                    PEStatus::UndecidedAtDepth => format!("undecided_at_depth {depth}"),
                };
                if let Some(w) = &verdict.counterexample {
                    s.push_str(&format!(" counterexample={w:?}"));
                }
                s
            };
            emit(plain, &verdict, text, code)
        }
        Command::MChar { rep, word, m } => {
            let rep = repfile::parse_rep_file(rep)?;
            let word = parse_word(word)?;
            let value = m_character(&rep, &word, *m)?;
            let out = serde_json::json!({ "word": word, "m": m, "value": value.to_string() });
            emit(plain, &out, || value.to_string(), EXIT_OK)
        }
        Command::Newton { n, m } => {
            if *n == 0 || *m == 0 {
                return Err(Failure::Input("error[E_INPUT]: n and m must be at least 1".into()));
            }
            let rows = compositions(*n, *m)
                .iter()
                .map(|r| {
                    Ok(NewtonRow {
                        parts: r.parts().to_vec(),
                        coefficient: newton_coefficient(r)?.to_string(),
                        dim_lambda: dim_lambda(*n, r)?.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, CoreError>>()?;
            let text = || {
                rows.iter()
                    .map(|r| format!("{:?} {} {}", r.parts, r.coefficient, r.dim_lambda))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            emit(plain, &rows, text, EXIT_OK)
        }
        Command::Dm { n, m } => {
            let value = d_m(*n, *m)?;
            let out = serde_json::json!({ "n": n, "m": m, "d_m": value.to_string() });
            emit(plain, &out, || value.to_string(), EXIT_OK)
        }
        Command::Mbound(args) => match (args.ell, args.e, args.f, args.order) {
            (Some(ell), Some(e), Some(f), None) => {
                let params = LocalFieldParams::new(ell, e, f)?;
                let bound = paper_m_bound(args.n, &params)?;
                emit(plain, &bound, || factored(&bound), EXIT_OK)
            }
            (None, None, None, Some(order)) => {
                let value = uniform_m_bound(args.n, order)?;
                let out = UniformBound { n: args.n, order, value: value.to_string() };
                emit(plain, &out, || value.to_string(), EXIT_OK)
            }
            _ => return Err(Failure::Input("error[E_INPUT]: give --ell, --e, --f or --order".into())),
        },
        Command::Weil { q, w, d, count_only, places } => {
            budget_from_env()?;
            if let Some(t) = places {
                let value = trace_class_bound(*q, *w, *d, *t)?;
                let out = serde_json::json!({ "places": t, "bound": value.to_string() });
                return Ok(emit(plain, &out, || value.to_string(), EXIT_OK));
            }
            let polys = enumerate_weil(*q, *w, *d)?;
            if *count_only {
                emit(plain, &polys.len(), || polys.len().to_string(), EXIT_OK)
            } else {
                let lists: Vec<&Vec<i128>> = polys.iter().map(|p| &p.coeffs).collect();
                let text = || {
                    lists
                        .iter()
                        .map(|c| c.iter().map(i128::to_string).collect::<Vec<_>>().join(" "))
                        .collect::<Vec<_>>()
                        .join("\n")
                };
                emit(plain, &lists, text, EXIT_OK)
            }
        }
        Command::Falsim { bundle } => {
            let text = std::fs::read_to_string(bundle).map_err(|e| {
                Failure::Input(format!("error[E_IO]: cannot read {}: {e}", bundle.display()))
            })?;
            let parsed: bundle::Bundle = serde_json::from_str(&text)
                .map_err(|e| Failure::Input(format!("error[E_SCHEMA]: {e}")))?;
            let report = bundle::run_bundle(&parsed)?;
            let code = if report.check.holds { EXIT_OK } else { EXIT_NEGATIVE };
            let text = || {
                let c = &report.check;
                format!(
                    "holds={} cover={} agree_on_cover={} agree_everywhere={} spans_equal={} single_representative_spans_equal={}",
                    c.holds,
                    report.cover.join(","),
                    c.traces_agree_on_cover,
                    c.traces_agree_everywhere,
                    c.spans_equal,
                    c.single_representative_spans_equal
                )
            };
            emit(plain, &report, text, code)
        }
        Command::Twist { first, second, closure_cap } => {
            let a = repfile::parse_rep_file(first)?;
            let b = repfile::parse_rep_file(second)?;
            let config = PeConfig { closure_cap: *closure_cap };
            let found = twist_equivalent_finite(&a, &b, &config)?;
            let code = if found.is_some() { EXIT_OK } else { EXIT_NEGATIVE };
            let out = serde_json::json!({ "twist": found });
            let text = || match &found {
                Some(chi) => format!(
                    "twist root_order={} generator_exponents={:?}",
                    chi.root_order, chi.generator_exponents
                ),
                None => "none".to_string(),
            };
            emit(plain, &out, text, code)
        }
    })
}
