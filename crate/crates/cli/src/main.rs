//! `macd`: compute and verify characters from the command line.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage or parse error,
//! 3 unsupported Cartan type, 4 invalid module spec.

mod cache;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use macd::affweyl::ReducedWord;
use macd::charring::CharPoly;
use macd::demazure::{char_global_weyl, char_local_weyl, e_zero};
use macd::macdinf::{
    char_u, char_u_global, char_wm, char_wm_global, decomposition_sweep_global, decomposition_sweep_local, e_infinity,
    spec_families, verify_global_ratio, verify_path_count, verify_theorem1, verify_u_global_extreme, verify_words,
    weight_box, CharTable, ModuleSpec, Provenance, VerificationReport,
};
use macd::qbgpath::Qbg;
use macd::rootsys::{CartanType, RootSystem, Weight, WeylElt};
use macd::verify_orth::{orth_sweep, verify_orthogonality, OrthStatus, Pairing};

use cache::Cache;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] macd::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("verification failed: {0} claim(s) did not hold")]
    Failed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use macd::Error as E;
        match self {
            CliError::Failed(_) | CliError::Lib(E::VerificationFailed(_)) => 1,
            CliError::Lib(E::UnsupportedType(_)) => 3,
            CliError::Lib(E::SpecInvalid(_) | E::NotDominant(_) | E::AssumptionViolated(_) | E::NotReduced { .. }) => 4,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "macd",
    version,
    about = "Nonsymmetric Macdonald polynomials at t = 0 and t = ∞, and their module characters"
)]
struct Cli {
    /// Cartan type, e.g. A2, C2, G2.
    #[arg(long = "type", global = true)]
    cartan_type: Option<String>,

    /// Truncation order N for q-series (results are exact modulo q^N).
    #[arg(long, global = true, env = "MACD_ORDER", default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    order: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[arg(long, global = true, env = "MACD_CACHE_DIR", default_value = ".macd-cache")]
    cache_dir: PathBuf,

    /// Bypass the result cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Explicit reduced word for t_{λ_-} as JSON, e.g. '{"letters":[0,1]}'
    /// (or @file). Used by `char --module Wm|Wmglobal`.
    #[arg(long, global = true)]
    word: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// E_λ(x, q, 0) or E_λ(x, q⁻¹, ∞).
    E {
        #[arg(long, value_enum)]
        variant: Variant,
        /// Fundamental coordinates, e.g. -1,2.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Character of a module.
    Char(CharArgs),
    /// The quantum Bruhat graph, as DOT (default) or JSON (--format json).
    Qbg,
    /// Run a verification suite over a box of weights.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest |coordinate| of the swept weights.
        #[arg(long = "box", default_value_t = 1)]
        bound: i32,
        /// Pair ch U_{-μ} instead of ch U_μ with ch D_λ (orthogonality).
        #[arg(long)]
        dual: bool,
    },
    /// (ch U_μ, ch D_λ)_C modulo q^N.
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Use ch U_{-μ}.
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Zero,
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Module {
    #[value(name = "U")]
    U,
    #[value(name = "Uglobal")]
    UGlobal,
    #[value(name = "Wm")]
    Wm,
    #[value(name = "Wmglobal")]
    WmGlobal,
    #[value(name = "D")]
    D,
    #[value(name = "weyl")]
    Weyl,
    #[value(name = "weylglobal")]
    WeylGlobal,
}

#[derive(Args, Debug)]
struct CharArgs {
    #[arg(long, value_enum)]
    module: Module,
    /// λ for U, Uglobal, D, weyl, weylglobal.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    /// σ as a word in simple reflections, e.g. 1,2 (empty for the identity).
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    sigma: String,
    /// Antidominant λ_- for Wm, Wmglobal.
    #[arg(long, allow_hyphen_values = true)]
    lambda_minus: Option<String>,
    /// Antidominant μ with λ_- - μ antidominant; defaults to λ_-.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, default_value_t = 0)]
    m: usize,
    /// Length of the t_μ prefix of an explicit --word (defaults to its length).
    #[arg(long)]
    prefix: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Theorem1,
    DecompLocal,
    DecompGlobal,
    Orthogonality,
    Words,
}

struct Session {
    rs: RootSystem,
    order: u32,
    format: Format,
    cache: Option<Cache>,
    word: Option<Value>,
}

impl Session {
    fn weight(&self, s: &str) -> Result<Weight> {
        let w: Weight = s.parse()?;
        self.rs.check_rank(w.rank())?;
        Ok(w)
    }

    fn sigma(&self, s: &str) -> Result<WeylElt> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(WeylElt::identity(self.rs.rank()));
        }
        let word = s
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(i) if (1..=self.rs.rank()).contains(&i) => Ok(i),
                _ => Err(CliError::Usage(format!("bad simple reflection {t:?} in σ = {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.rs.from_word(&word))
    }

    fn qbg(&self) -> Qbg {
        Qbg::new(&self.rs)
    }

    /// Looks `request` up in the cache, computing and storing on a miss.
    fn cached(&self, request: Value, compute: impl FnOnce() -> Result<(CharPoly, Provenance)>) -> Result<Value> {
        let request = json!({"version": cache::TOOL_VERSION, "type": self.rs.cartan_type().to_string(), "N": self.order, "request": request});
        let key = cache::key(&request);
        if let Some(payload) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            if CharPoly::from_json(&payload["character"]).is_ok() {
                return Ok(payload);
            }
        }
        let (ch, provenance) = compute()?;
        let payload = json!({"character": ch.to_json(), "provenance": provenance});
        if let Some(c) = &self.cache {
            if let Err(e) = c.put(&key, &payload) {
                eprintln!("warning: {e} (cache dir {})", c.dir().display());
            }
        }
        Ok(payload)
    }

    fn emit_character(&self, request: Value, payload: Value) -> Result<()> {
        let ch = CharPoly::from_json(&payload["character"])?;
        match self.format {
            Format::Text => println!("{}", ch.to_text()),
            Format::Latex => println!("{}", ch.to_latex()),
            Format::Json => {
                let out = json!({
                    "type": self.rs.cartan_type().to_string(),
                    "request": request,
                    "character": payload["character"],
                    "provenance": payload["provenance"],
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            }
        }
        Ok(())
    }

    fn explicit_word(&self) -> Result<Option<ReducedWord>> {
        self.word
            .as_ref()
            .map(|v| Ok(ReducedWord::from_json(&self.rs, v)?))
            .transpose()
    }
}

fn read_word(arg: &str) -> Result<Value> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("reading {path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("--word is not valid JSON: {e}")))
}

fn cmd_e(s: &Session, variant: Variant, weight: &str) -> Result<()> {
    let lambda = s.weight(weight)?;
    let request = json!({"op": "e", "variant": format!("{variant:?}").to_lowercase(), "weight": lambda.coords()});
    let payload = s.cached(request.clone(), || {
        Ok(match variant {
            Variant::Zero => (e_zero(&s.rs, &lambda)?, Provenance::PathSum),
            Variant::Infinity => (e_infinity(&s.qbg(), &lambda)?, Provenance::PathSum),
        })
    })?;
    s.emit_character(request, payload)
}

fn module_spec(s: &Session, a: &CharArgs) -> Result<ModuleSpec> {
    let lm = s.weight(
        a.lambda_minus
            .as_deref()
            .ok_or_else(|| CliError::Usage("--lambda-minus is required for Wm modules".into()))?,
    )?;
    let mu = match &a.mu {
        Some(m) => s.weight(m)?,
        None => lm,
    };
    let sigma = s.sigma(&a.sigma)?;
    match s.explicit_word()? {
        None => Ok(ModuleSpec::new(&s.rs, sigma, lm, mu, a.m)?),
        Some(word) => {
            let prefix = a.prefix.unwrap_or(word.len());
            Ok(ModuleSpec::with_word(&s.rs, sigma, lm, mu, word, prefix, a.m)?)
        }
    }
}

fn cmd_char(s: &Session, a: &CharArgs) -> Result<()> {
    let need_weight = || -> Result<Weight> {
        s.weight(
            a.weight
                .as_deref()
                .ok_or_else(|| CliError::Usage(format!("--weight is required for module {:?}", a.module)))?,
        )
    };
    if s.word.is_some() && !matches!(a.module, Module::Wm | Module::WmGlobal) {
        return Err(CliError::Usage("--word applies to Wm and Wmglobal only".into()));
    }
    let n = s.order;
    let (request, payload) = match a.module {
        Module::Wm | Module::WmGlobal => {
            let spec = module_spec(s, a)?;
            let global = a.module == Module::WmGlobal;
            let request = json!({
                "op": "char",
                "module": if global { "Wmglobal" } else { "Wm" },
                "sigma": s.rs.reduced_word(&spec.sigma),
                "lambda_minus": spec.lambda_minus.coords(),
                "mu": spec.mu.coords(),
                "m": spec.m,
                "word": spec.word.to_json(),
                "prefix": spec.prefix_len,
            });
            let payload = s.cached(request.clone(), || {
                let r = if global {
                    char_wm_global(&s.qbg(), &spec, n)?
                } else {
                    char_wm(&s.qbg(), &spec)?
                };
                Ok((r.char, r.provenance))
            })?;
            (request, payload)
        }
        module => {
            let lambda = need_weight()?;
            let name = match module {
                Module::U => "U",
                Module::UGlobal => "Uglobal",
                Module::D => "D",
                Module::Weyl => "weyl",
                _ => "weylglobal",
            };
            let request = json!({"op": "char", "module": name, "weight": lambda.coords()});
            let payload = s.cached(request.clone(), || {
                Ok(match module {
                    Module::U => {
                        let r = char_u(&s.qbg(), &lambda)?;
                        (r.char, r.provenance)
                    }
                    Module::UGlobal => {
                        let r = char_u_global(&s.qbg(), &lambda, n)?;
                        (r.char, r.provenance)
                    }
                    Module::D => (e_zero(&s.rs, &lambda)?, Provenance::PathSum),
                    Module::Weyl => (char_local_weyl(&s.rs, &lambda)?, Provenance::PathSum),
                    _ => (char_global_weyl(&s.rs, &lambda, n)?, Provenance::Division),
                })
            })?;
            (request, payload)
        }
    };
    s.emit_character(request, payload)
}

fn cmd_qbg(s: &Session) -> Result<()> {
    let g = s.qbg();
    match s.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&g.to_json()).expect("serializable")),
        _ => print!("{}", g.to_dot()),
    }
    Ok(())
}

fn run_suite(s: &Session, suite: Suite, b: i32) -> Result<Vec<VerificationReport>> {
    let g = s.qbg();
    let rs = &s.rs;
    let mut out = Vec::new();
    match suite {
        Suite::Theorem1 => {
            for lambda in weight_box(rs.rank(), b.max(-1)) {
                out.push(verify_theorem1(&g, &lambda)?);
            }
        }
        Suite::DecompLocal | Suite::DecompGlobal => {
            for (lm, mu) in spec_families(rs, b) {
                let table = CharTable::new(&g, lm, mu)?;
                if suite == Suite::DecompLocal {
                    out.extend(decomposition_sweep_local(&g, &table)?);
                    if mu == lm {
                        for sigma in g.vertices() {
                            for m in 0..=table.base.prefix_len {
                                out.push(verify_path_count(&g, &table.spec(*sigma, m))?);
                            }
                        }
                    }
                } else {
                    out.extend(decomposition_sweep_global(&g, &table, s.order)?);
                    for sigma in g.vertices() {
                        for m in 0..=table.base.prefix_len {
                            out.push(verify_global_ratio(&g, &table.spec(*sigma, m), s.order)?);
                        }
                    }
                }
            }
            if suite == Suite::DecompGlobal {
                for lambda in weight_box(rs.rank(), b) {
                    out.push(verify_u_global_extreme(&g, &lambda, s.order)?);
                }
            }
        }
        Suite::Words => out = verify_words(rs, b)?,
        Suite::Orthogonality => unreachable!("handled separately"),
    }
    Ok(out)
}

fn cmd_verify(s: &Session, suite: Suite, b: i32, dual: bool) -> Result<()> {
    let name = suite
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let start = Instant::now();
    if suite == Suite::Orthogonality {
        let pairing = if dual { Pairing::Dual } else { Pairing::Stated };
        let report = orth_sweep(&s.qbg(), b, s.order, pairing)?;
        let failed = report.count(OrthStatus::Fail);
        match s.format {
            Format::Json => {
                let mut v = report.to_json();
                v["suite"] = json!(name);
                v["box"] = json!(b);
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            _ => {
                print!("{}", report.to_table());
                println!(
                    "{name} {} box {b} N={}: {} ok, {failed} failed, {} diagonal, {} skipped ({:.1}s)",
                    s.rs.cartan_type(),
                    s.order,
                    report.count(OrthStatus::Ok),
                    report.count(OrthStatus::Diagonal),
                    report.count(OrthStatus::SkippedTrivial),
                    start.elapsed().as_secs_f64()
                );
            }
        }
        return if failed == 0 {
            Ok(())
        } else {
            Err(CliError::Failed(failed))
        };
    }
    let reports = run_suite(s, suite, b)?;
    let failed = reports.iter().filter(|r| !r.is_ok()).count();
    match s.format {
        Format::Json => {
            let v = json!({
                "suite": name,
                "type": s.rs.cartan_type().to_string(),
                "box": b,
                "N": s.order,
                "passed": reports.len() - failed,
                "failed": failed,
                "reports": reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        }
        _ => {
            for r in &reports {
                let status = if r.is_ok() { "ok  " } else { "FAIL" };
                let detail = match (&r.note, &r.witness) {
                    (Some(n), _) => format!(" — {n}"),
                    (None, Some(w)) => format!(" — difference {w}"),
                    _ => String::new(),
                };
                println!("{status} {}{detail}", r.claim);
            }
            println!(
                "{name} {} box {b}: {} passed, {failed} failed ({:.1}s)",
                s.rs.cartan_type(),
                reports.len() - failed,
                start.elapsed().as_secs_f64()
            );
        }
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Failed(failed))
    }
}

fn cmd_pair(s: &Session, mu: &str, lambda: &str, dual: bool) -> Result<()> {
    let (mu, lambda) = (s.weight(mu)?, s.weight(lambda)?);
    let pairing = if dual { Pairing::Dual } else { Pairing::Stated };
    let entry = verify_orthogonality(&s.qbg(), &mu, &lambda, s.order, pairing)?;
    let series = entry.series.as_ref().expect("computed entries carry a series");
    match s.format {
        Format::Json => {
            let mut v = entry.to_json();
            v["type"] = json!(s.rs.cartan_type().to_string());
            v["pairing"] = json!(pairing);
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        }
        _ => println!("{series}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let ty: CartanType = cli
        .cartan_type
        .as_deref()
        .ok_or_else(|| CliError::Usage("--type is required".into()))?
        .parse()?;
    let session = Session {
        rs: RootSystem::new(ty),
        order: cli.order,
        format: cli.format,
        cache: (!cli.no_cache).then(|| Cache::new(&cli.cache_dir)),
        word: cli.word.as_deref().map(read_word).transpose()?,
    };
    match &cli.command {
        Command::E { variant, weight } => cmd_e(&session, *variant, weight),
        Command::Char(a) => cmd_char(&session, a),
        Command::Qbg => cmd_qbg(&session),
        Command::Verify { suite, bound, dual } => cmd_verify(&session, *suite, *bound, *dual),
        Command::Pair { mu, lambda, dual } => cmd_pair(&session, mu, lambda, *dual),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
