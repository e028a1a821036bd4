//! `htm`: sampling, special-function evaluation, identity checks and
//! limit experiments from the command line.
//!
//! Exit codes: 0 pass, 1 statistical failure, 2 usage or domain error,
//! 3 I/O error, 4 unsupported regime.

mod params;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use htm_core::distributions::{sample, FAMILIES};
use htm_core::identities::{self, find, registry, CANONICAL_N, CANONICAL_SEED};
use htm_core::limit::{IndexRule, LimitExperiment, Reference, Statistic, Summand, Theorem};
use htm_core::special::{self, InversionGrid};
use htm_core::verification::{MetricsConfig, VerificationReport};
use htm_core::{format_number, RandomStream};
use serde::Serialize;

use params::{dist_spec, ParamArgs};

#[derive(Debug, Parser)]
#[command(name = "htm", version, about = "Heavy-tailed mixture laws: sampling, evaluation and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw a sample and write it as CSV (`index,value`) with a JSON sidecar.
    Sample {
        /// Family name, see `htm list --dists`.
        #[arg(long)]
        dist: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Stable skewness: symmetric or one-sided.
        #[arg(long)]
        theta: Option<String>,
        /// Sampling route for multi-method families.
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long, env = "HTM_SEED")]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Evaluate a special function over `lo:hi:step`, CSV `x,value`.
    Eval {
        #[arg(long = "fn", value_enum)]
        function: Function,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a mixture identity (or `all` of them) by simulation.
    Verify {
        #[arg(long)]
        identity: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = CANONICAL_N)]
        n: usize,
        #[arg(long, env = "HTM_SEED")]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a random-sum convergence experiment.
    Limit {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        nu: f64,
        /// Comma-separated sample sizes.
        #[arg(long, value_delimiter = ',')]
        n_grid: Vec<f64>,
        /// Comma-separated, decreasing success probabilities (lemma14).
        #[arg(long, value_delimiter = ',')]
        p_grid: Vec<f64>,
        #[arg(long, default_value_t = 100_000)]
        reps: usize,
        #[arg(long, env = "HTM_SEED")]
        seed: Option<u64>,
        /// Summand law: stable, rademacher, normal, exponential.
        #[arg(long)]
        summand: Option<String>,
        #[arg(long, value_enum)]
        control: Option<Control>,
        #[arg(long, value_enum, default_value_t = RefArg::Limit)]
        reference: RefArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// List families, identities or theorem tags (all three by default).
    List {
        #[arg(long)]
        dists: bool,
        #[arg(long)]
        identities: bool,
        #[arg(long)]
        theorems: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Control {
    /// Replace the random index by `n`.
    FixedIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RefArg {
    Limit,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Function {
    GenlinnikCf,
    GenlinnikCdf,
    GenlinnikPdf,
    GenmlLst,
    Ml,
    MlDensity,
    MlCdf,
    StableRatioDensity,
    StableRatioCdf,
    StableCf,
    StableLst,
    GgDensity,
    GleserDensity,
    SnedecorDensity,
    LaplaceCdf,
    NormalCdf,
}

/// Everything that ends a command early.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(htm_core::Error),
    Io(PathBuf, io::Error),
}

impl From<htm_core::Error> for Failure {
    fn from(e: htm_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Core(htm_core::Error::Domain(_)) => 2,
            Failure::Io(..) => 3,
            Failure::Core(_) => 4,
        }
    }
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("htm: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cmd: Command) -> Result<Verdict, Failure> {
    match cmd {
        Command::Sample { dist, params, theta, method, n, seed, out, format } => {
            cmd_sample(&dist, &params, theta.as_deref(), method.as_deref(), n, seed, out, format)
        }
        Command::Eval { function, params, grid, out } => cmd_eval(function, &params, &grid, out),
        Command::Verify { identity, params, n, seed, out } => cmd_verify(&identity, &params, n, seed, out),
        Command::Limit { theorem, alpha, nu, n_grid, p_grid, reps, seed, summand, control, reference, out, format } => {
            let theorem: Theorem = theorem.parse()?;
            let grid = match (theorem, n_grid.is_empty(), p_grid.is_empty()) {
                (Theorem::Lemma14, true, false) => p_grid,
                (Theorem::Lemma14, _, _) => return Err(Failure::Usage("lemma14 takes --p-grid only".into())),
                (_, false, true) => n_grid,
                _ => return Err(Failure::Usage(format!("{theorem} takes --n-grid only"))),
            };
            let alpha = match (theorem, alpha) {
                (Theorem::Lemma14, None) => 2.0,
                (Theorem::Lemma14, Some(_)) => return Err(Failure::Usage("lemma14 takes no --alpha".into())),
                (_, Some(a)) => a,
                (_, None) => return Err(Failure::Usage(format!("{theorem} needs --alpha"))),
            };
            let mut e = LimitExperiment::new(theorem, alpha, nu, grid, reps, seed.unwrap_or(CANONICAL_SEED));
            if let Some(s) = summand {
                let s: Summand = s.parse()?;
                match theorem {
                    Theorem::Thm7 | Theorem::Thm8 => e.statistic = Statistic::sample_mean(s),
                    _ if s == Summand::Stable => {}
                    _ => return Err(Failure::Usage(format!("{theorem} only takes stable summands"))),
                }
            }
            if control == Some(Control::FixedIndex) {
                e.index = IndexRule::Fixed;
            }
            if reference == RefArg::Normal {
                e.reference = Reference::StandardNormal;
            }
            let report = e.run()?;
            let body = match format {
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json() + "\n",
            };
            emit(out.as_deref(), &body, format, || report.to_json() + "\n")?;
            Ok(if report.pass { Verdict::Pass } else { Verdict::Fail })
        }
        Command::List { dists, identities, theorems } => {
            let all = !(dists || identities || theorems);
            let mut s = String::new();
            if all || dists {
                for f in FAMILIES {
                    s += &format!("{}\t{}", f.name, f.constraints);
                    if !f.methods.is_empty() {
                        s += &format!("\tmethods: {}", f.methods.join(", "));
                    }
                    s.push('\n');
                }
            }
            if all || identities {
                for c in registry() {
                    s += &format!("{}\t{}\t{}\n", c.id, c.anchor, c.domain_text());
                }
            }
            if all || theorems {
                for t in Theorem::ALL {
                    s += &format!("{}\t{}\n", t, t.describe());
                }
            }
            write_stdout(&s)?;
            Ok(Verdict::Pass)
        }
    }
}

#[derive(Serialize)]
struct SampleMeta<'a> {
    spec: &'a htm_core::DistSpec,
    seed: u64,
    substream: u64,
    n: usize,
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    dist: &str,
    params: &ParamArgs,
    theta: Option<&str>,
    method: Option<&str>,
    n: usize,
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Format,
) -> Result<Verdict, Failure> {
    let spec = dist_spec(dist, params.collect()?, theta, method)?;
    spec.validate()?;
    let seed = seed.unwrap_or(CANONICAL_SEED);
    let batch = sample(&spec, n, &RandomStream::new(seed, 0))?;
    let meta = SampleMeta { spec: &batch.spec, seed, substream: batch.substream, n };
    let body = match format {
        Format::Csv => {
            let mut s = String::with_capacity(n * 16 + 12);
            s += "index,value\n";
            for (i, v) in batch.values.iter().enumerate() {
                s += &format!("{i},{}\n", format_number(*v));
            }
            s
        }
        Format::Json => to_json(&batch),
    };
    emit(out.as_deref(), &body, format, || to_json(&meta))?;
    Ok(Verdict::Pass)
}

fn cmd_eval(function: Function, params: &ParamArgs, grid: &str, out: Option<PathBuf>) -> Result<Verdict, Failure> {
    use Function::*;
    let xs = parse_grid(grid)?;
    let mut ps = params.collect()?.context(&format!("function {}", function_name(function)));
    let f: Box<dyn Fn(f64) -> htm_core::Result<f64>> = match function {
        GenlinnikCf | GenlinnikCdf | GenlinnikPdf => {
            let (a, nu) = (ps.req("alpha")?, ps.req("nu")?);
            let g = InversionGrid::for_params(a, nu);
            match function {
                GenlinnikCf => Box::new(move |x| special::genlinnik_cf(a, nu, x)),
                GenlinnikCdf => Box::new(move |x| special::cdf_by_inversion(a, nu, x, &g)),
                _ => Box::new(move |x| special::pdf_by_inversion(a, nu, x, &g)),
            }
        }
        GenmlLst => {
            let (d, nu) = (ps.req("delta")?, ps.req("nu")?);
            Box::new(move |s| special::genml_lst(d, nu, s))
        }
        Ml | MlDensity | MlCdf => {
            let d = ps.req("delta")?;
            match function {
                Ml => Box::new(move |z| special::mittag_leffler(d, z)),
                MlDensity => Box::new(move |x| special::ml_density(d, x)),
                _ => Box::new(move |x| special::ml_cdf(d, x)),
            }
        }
        StableRatioDensity => {
            let d = ps.req("delta")?;
            Box::new(move |x| special::stable_ratio_density(d, x))
        }
        StableRatioCdf => {
            let d = ps.req("delta")?;
            Box::new(move |x| special::stable_ratio_cdf(d, x))
        }
        StableCf => {
            let a = ps.req("alpha")?;
            Box::new(move |t| special::stable_symmetric_cf(a, t))
        }
        StableLst => {
            let a = ps.req("alpha")?;
            Box::new(move |s| special::stable_one_sided_lst(a, s))
        }
        GgDensity => {
            let (r, a, l) = (ps.req("r")?, ps.req("alpha")?, ps.opt("lambda", 1.0));
            Box::new(move |x| special::gg_density(r, a, l, x))
        }
        GleserDensity => {
            let (r, mu) = (ps.req("r")?, ps.opt("mu", 1.0));
            Box::new(move |z| special::gleser_mixing_density(r, mu, z))
        }
        SnedecorDensity => {
            let r = ps.req("r")?;
            Box::new(move |x| special::snedecor_fisher_density(r, x))
        }
        LaplaceCdf => Box::new(|x| Ok(special::laplace_cdf(x))),
        NormalCdf => Box::new(|x| Ok(special::normal_cdf(x))),
    };
    ps.finish()?;
    let mut s = String::from("x,value\n");
    for x in xs {
        s += &format!("{},{}\n", format_number(x), format_number(f(x)?));
    }
    emit(out.as_deref(), &s, Format::Csv, String::new)?;
    Ok(Verdict::Pass)
}

fn function_name(f: Function) -> String {
    f.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn cmd_verify(id: &str, params: &ParamArgs, n: usize, seed: Option<u64>, out: Option<PathBuf>) -> Result<Verdict, Failure> {
    let seed = seed.unwrap_or(CANONICAL_SEED);
    let cfg = MetricsConfig::default();
    let ps = params.collect()?;
    if id.eq_ignore_ascii_case("all") {
        if !ps.map.is_empty() {
            return Err(Failure::Usage("--identity all runs each case on its own grid and takes no parameters".into()));
        }
        let mut reports: Vec<VerificationReport> = Vec::new();
        let mut summary = String::from("id\tverdict\tpoints\tworst_ks\tks_threshold\n");
        for case in registry() {
            let rs = identities::verify_grid(case, n, seed, &cfg)?;
            let passed = rs.iter().filter(|r| r.pass).count();
            let worst = rs
                .iter()
                .filter_map(|r| r.metric("ks"))
                .max_by(|a, b| (a.value / a.threshold).total_cmp(&(b.value / b.threshold)))
                .expect("every grid has points");
            summary += &format!(
                "{}\t{}\t{}/{}\t{}\t{}\n",
                case.id,
                if passed == rs.len() { "pass" } else { "FAIL" },
                passed,
                rs.len(),
                format_number(worst.value),
                format_number(worst.threshold)
            );
            reports.extend(rs);
        }
        write_stdout(&summary)?;
        if let Some(path) = &out {
            write_file(path, &to_json(&reports))?;
        }
        return Ok(if reports.iter().all(|r| r.pass) { Verdict::Pass } else { Verdict::Fail });
    }
    let case = find(id).ok_or_else(|| {
        Failure::Usage(format!("unknown identity {id:?}; expected I01..I{:02} or all", registry().len()))
    })?;
    let report = identities::verify(case, &ps.map, n, seed, &cfg)?;
    emit(out.as_deref(), &(report.to_json() + "\n"), Format::Json, String::new)?;
    Ok(if report.pass { Verdict::Pass } else { Verdict::Fail })
}

/// Parses `lo:hi:step`; `lo == hi` gives a single point.
fn parse_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::Usage(format!("--grid expects lo:hi:step with lo <= hi and step > 0, got {s:?}"));
    let parts: Vec<f64> = s.split(':').map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    let [lo, hi, step] = parts[..] else { return Err(bad()) };
    if !(lo.is_finite() && hi.is_finite() && step > 0.0 && step.is_finite() && lo <= hi) {
        return Err(bad());
    }
    let count = ((hi - lo) / step + 1e-9).floor() + 1.0;
    if count > 1e7 {
        return Err(Failure::Usage(format!("--grid {s:?} has more than 1e7 points")));
    }
    Ok((0..count as usize).map(|i| lo + i as f64 * step).collect())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Writes `body` to `out` or stdout. A CSV written to a file gets a JSON
/// sidecar with the same stem.
fn emit(out: Option<&Path>, body: &str, format: Format, sidecar: impl FnOnce() -> String) -> Result<(), Failure> {
    match out {
        None => write_stdout(body),
        Some(path) => {
            write_file(path, body)?;
            if format == Format::Csv {
                let side = sidecar();
                if !side.is_empty() {
                    write_file(&sidecar_path(path), &side)?;
                }
            }
            Ok(())
        }
    }
}

fn sidecar_path(path: &Path) -> PathBuf {
    if path.extension().is_some_and(|e| e == "json") {
        let mut s = path.as_os_str().to_owned();
        s.push(".meta.json");
        PathBuf::from(s)
    } else {
        path.with_extension("json")
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), Failure> {
    fs::write(path, body).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write_stdout(body: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(body.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e))
}
