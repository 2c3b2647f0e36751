//! Command-line front end. Every command is deterministic; errors carry a
//! short reason code and an exit status.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::decompose::{
    cardinality_bound, covers, greedy_two_sets, marker_decomposition, records_to_csv, sturmian_st,
    thue_morse_st, verify_cover, CoverReport, DecomposeError, LeveledLanguage, SplitRecord,
};
use crate::experiments::{self, ExperimentError, Model};
use crate::factors::{stabilization_check, window_profile, FactorError, FactorIndex};
use crate::periodicity::PeriodicityError;
use crate::words::{WordError, WordSource};
use crate::wordspec::{parse_exponent, parse_growth, parse_word_spec};

pub const DEFAULT_N_MAX: usize = 128;
pub const WINDOW_FACTOR: usize = 50;
pub const DEFAULT_FIT_WINDOW: usize = 1_000_000;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "facdecomp",
    version,
    about = "Factor complexity and S·T decompositions of infinite words"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct WindowArgs {
    /// Largest factor length considered.
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub n_max: usize,
    /// Prefix length to index [default: 50 * n-max].
    #[arg(long)]
    pub window: Option<usize>,
}

impl WindowArgs {
    fn window(&self) -> usize {
        self.window.unwrap_or(WINDOW_FACTOR * self.n_max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Marker,
    Greedy,
    Tm,
    Sturmian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentName {
    ECount,
    ClaimPairs,
    Fit,
    Lemma1,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a prefix of a word.
    Word {
        spec: String,
        #[arg(long)]
        prefix: usize,
    },
    /// Emit `n,p,g` rows for a stabilized window.
    Complexity {
        spec: String,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build S and T and write them with the split records and a stats summary.
    Decompose {
        #[arg(value_enum)]
        method: Method,
        spec: String,
        #[command(flatten)]
        window: WindowArgs,
        /// Output directory [default: decompose-<method>].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that every factor splits over the given S and T files.
    Verify {
        spec: String,
        #[arg(long = "s")]
        s_file: PathBuf,
        #[arg(long = "t")]
        t_file: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Counting experiments and growth fits, as `n,count,model,ratio` CSV.
    Experiment {
        #[arg(value_enum)]
        name: ExperimentName,
        /// Comma-separated lengths.
        #[arg(long, value_delimiter = ',')]
        n: Vec<u64>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        model: Option<String>,
        /// Length range `lo:hi` for fits.
        #[arg(long, value_parser = parse_range)]
        range: Option<(usize, usize)>,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, default_value_t = 3)]
        k: u64,
        #[arg(long, default_value = "isqrt")]
        f: String,
        #[arg(long, default_value = "p")]
        kpq: String,
        /// Largest accepted ratio spread [default: 2.5 for nlogn, 4 otherwise].
        #[arg(long)]
        spread: Option<f64>,
        /// Sets audited by `lemma1`.
        #[arg(long, value_enum, default_value_t = Method::Tm)]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got `{s}`"))?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound `{hi}`"))?;
    if lo == 0 || lo > hi {
        return Err(format!("need 1 <= lo <= hi, got {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// The resolved parameters of one run, recorded next to its outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub word: Option<String>,
    pub window: Option<usize>,
    pub n_max: Option<usize>,
    pub out: Option<PathBuf>,
    pub options: BTreeMap<String, String>,
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

impl FromStr for RunConfig {
    type Err = serde_json::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_str(s)
    }
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig {
            command: command.into(),
            word: None,
            window: None,
            n_max: None,
            out: None,
            options: BTreeMap::new(),
        }
    }

    pub fn option(mut self, key: &str, value: impl ToString) -> Self {
        self.options.insert(key.into(), value.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: &'static str,
    pub exit: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, exit: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            exit,
            message: message.into(),
        }
    }

    /// `error: <code>: <message>` on one line.
    pub fn line(&self) -> String {
        let msg: String = self
            .message
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ");
        format!("error: {}: {}", self.code, msg)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line())
    }
}

impl std::error::Error for CliError {}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        let (code, exit) = match e {
            WordError::Parse { .. } => ("bad-spec", EXIT_USAGE),
            WordError::ResourceLimit { .. } => ("resource-limit", EXIT_PRECONDITION),
            _ => ("bad-word", EXIT_PRECONDITION),
        };
        CliError::new(code, exit, e.to_string())
    }
}

impl From<FactorError> for CliError {
    fn from(e: FactorError) -> Self {
        match e {
            FactorError::Word(w) => w.into(),
            FactorError::WindowTooSmall { .. } => {
                CliError::new("window-too-small", EXIT_PRECONDITION, e.to_string())
            }
            FactorError::OutOfRange { .. } => {
                CliError::new("out-of-range", EXIT_PRECONDITION, e.to_string())
            }
        }
    }
}

impl From<PeriodicityError> for CliError {
    fn from(e: PeriodicityError) -> Self {
        match e {
            PeriodicityError::Factor(f) => f.into(),
            PeriodicityError::MarkerPropertyViolation { .. } => {
                CliError::new("marker-violation", EXIT_PRECONDITION, e.to_string())
            }
            PeriodicityError::OrderOutOfRange { .. } => {
                CliError::new("order-out-of-range", EXIT_PRECONDITION, e.to_string())
            }
            _ => CliError::new("periodicity", EXIT_PRECONDITION, e.to_string()),
        }
    }
}

impl From<DecomposeError> for CliError {
    fn from(e: DecomposeError) -> Self {
        let code = match e {
            DecomposeError::Factor(f) => return f.into(),
            DecomposeError::Periodicity(p) => return p.into(),
            DecomposeError::PreconditionViolation(_) => "precondition",
            DecomposeError::NotAFactor(_) => "not-a-factor",
            DecomposeError::NoMarkerFound(_) => "no-marker",
            DecomposeError::NoClassifiableOccurrence(_) => "no-classifiable-occurrence",
            DecomposeError::NotSturmian { .. } => "not-sturmian",
            DecomposeError::NotLinear { .. } => "not-linear",
            DecomposeError::NoFeasibleSplit { .. } => "no-feasible-split",
            DecomposeError::Overflow => "overflow",
            DecomposeError::SetFormat { .. } => "set-format",
        };
        CliError::new(code, EXIT_PRECONDITION, e.to_string())
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        let code = match e {
            ExperimentError::Decompose(d) => return d.into(),
            ExperimentError::RangeOutOfProfile { .. } => "range-out-of-profile",
            ExperimentError::ModelNotPositive { .. } => "model-not-positive",
            ExperimentError::UnknownModel(_) => {
                return CliError::new("bad-model", EXIT_USAGE, e.to_string())
            }
            ExperimentError::Precondition(_) => "precondition",
        };
        CliError::new(code, EXIT_PRECONDITION, e.to_string())
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::new("io", EXIT_PRECONDITION, format!("{}: {e}", path.display()))
}

/// What a command produced: text for stdout, a summary for stderr, and the
/// exit status (nonzero when a verification did not pass).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub failure: Option<CliError>,
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_error(dir, e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| io_error(path, e))?;
    tmp.persist(path).map_err(|e| io_error(path, e.error))?;
    Ok(())
}

fn resolve(path: &Path) -> Result<PathBuf, CliError> {
    std::path::absolute(path).map_err(|e| io_error(path, e))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn emit(out: Option<&Path>, text: String) -> Result<String, CliError> {
    match out {
        Some(p) => {
            write_atomic(p, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Parses the spec and indexes a window after checking it is stable up to `n_max`.
pub fn stable_index(spec: &str, args: &WindowArgs) -> Result<(WordSource, FactorIndex), CliError> {
    let source = parse_word_spec(spec)?;
    let window = args.window();
    if args.n_max == 0 || window < 2 * args.n_max {
        return Err(FactorError::WindowTooSmall {
            window,
            n_max: args.n_max,
        }
        .into());
    }
    if !stabilization_check(&source, window, args.n_max)? {
        return Err(CliError::new(
            "unstable-window",
            EXIT_PRECONDITION,
            format!(
                "profiles of windows {window} and {} differ up to n = {}",
                2 * window,
                args.n_max
            ),
        ));
    }
    let index = FactorIndex::build(&source, window, args.n_max)?;
    Ok((source, index))
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Word { spec, prefix } => cmd_word(&spec, prefix),
        Command::Complexity { spec, window, out } => cmd_complexity(&spec, &window, out.as_deref()),
        Command::Decompose {
            method,
            spec,
            window,
            out,
        } => cmd_decompose(method, &spec, &window, out.as_deref()),
        Command::Verify {
            spec,
            s_file,
            t_file,
            window,
        } => cmd_verify(&spec, &s_file, &t_file, &window),
        Command::Experiment {
            name,
            n,
            word,
            model,
            range,
            window,
            k,
            f,
            kpq,
            spread,
            method,
            out,
        } => {
            let opts = ExperimentOptions {
                n,
                word,
                model,
                range,
                window,
                k,
                f,
                kpq,
                spread,
                method,
            };
            cmd_experiment(name, &opts, out.as_deref())
        }
    }
}

pub fn cmd_word(spec: &str, n: usize) -> Result<Outcome, CliError> {
    let source = parse_word_spec(spec)?;
    let prefix = source.prefix(n)?;
    Ok(Outcome {
        stdout: format!("{}\n", source.alphabet().render(&prefix)),
        ..Outcome::default()
    })
}

pub fn cmd_complexity(
    spec: &str,
    args: &WindowArgs,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let source = parse_word_spec(spec)?;
    let window = args.window();
    let profile = window_profile(&source, window, args.n_max)?;
    if !stabilization_check(&source, window, args.n_max)? {
        return Err(CliError::new(
            "unstable-window",
            EXIT_PRECONDITION,
            format!(
                "profiles of windows {window} and {} differ up to n = {}",
                2 * window,
                args.n_max
            ),
        ));
    }
    let out = out.map(resolve).transpose()?;
    Ok(Outcome {
        stdout: emit(out.as_deref(), profile.to_csv())?,
        ..Outcome::default()
    })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Marker => "marker",
        Method::Greedy => "greedy",
        Method::Tm => "tm",
        Method::Sturmian => "sturmian",
    }
}

/// Summary of a decomposition run, rendered as `key: value` lines.
#[derive(Debug, Clone)]
struct Stats {
    lines: Vec<String>,
}

impl Stats {
    fn push(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn render(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            writeln!(s, "{l}").expect("writing to a String");
        }
        s
    }
}

/// `S`, `T`, split records, per-length bound and `(covered, total, uncovered)`.
type Built = (
    LeveledLanguage,
    LeveledLanguage,
    Vec<SplitRecord>,
    f64,
    (usize, usize, Vec<String>),
);

fn per_length_max(l: &LeveledLanguage) -> usize {
    l.max_count()
}

pub fn cmd_decompose(
    method: Method,
    spec: &str,
    args: &WindowArgs,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let name = method_name(method);
    let default_out = PathBuf::from(format!("decompose-{name}"));
    let out_dir = resolve(out.unwrap_or(&default_out))?;
    let (source, index) = stable_index(spec, args)?;
    let config = RunConfig {
        word: Some(source.to_string()),
        window: Some(index.window_len()),
        n_max: Some(index.n_max()),
        out: Some(out_dir.clone()),
        ..RunConfig::new(&format!("decompose {name}"))
    };
    let (c, _) = index.slope_constants();
    let mut stats = Stats {
        lines: vec![format!("config: {config}"), format!("method: {name}")],
    };

    let (s, t, records, bound, coverage): Built = match method {
        Method::Marker => {
            let (family, dec) = marker_decomposition(&index)?;
            let r = family.r();
            let bound = cardinality_bound(r, family.c, family.d);
            stats.push(format!("C: {}", family.c));
            stats.push(format!("D: {}", family.d));
            stats.push(format!("R: {r}"));
            stats.push(format!("orders: 1..={}", family.max_order()));
            write_atomic(&out_dir.join("markers.jsonl"), &family.to_jsonl(&index))?;
            let rep = verify_cover(&index, &dec.s, &dec.t, index.n_max());
            (
                dec.s,
                dec.t,
                dec.records,
                bound,
                cover_summary(&index, &rep),
            )
        }
        Method::Tm => {
            let d = thue_morse_st(index.n_max());
            let records = d.cut_all(&index)?;
            let rep = verify_cover(&index, &d.s1, &d.s2, index.n_max());
            stats.push(format!("C: {c}"));
            (d.s1, d.s2, records, 2.0, cover_summary(&index, &rep))
        }
        Method::Sturmian => {
            let (s1, s2) = sturmian_st(&index)?;
            let rep = verify_cover(&index, &s1, &s2, index.n_max());
            let records = index
                .all_factors()
                .filter_map(|v| {
                    (0..=v.len())
                        .find(|&cut| s1.contains(&v[..cut]) && s2.contains(&v[cut..]))
                        .map(|cut| SplitRecord {
                            v: v.into(),
                            s: v[..cut].into(),
                            t: v[cut..].into(),
                            order: None,
                            position: index.first_occurrence(v).expect("indexed factor"),
                            class: None,
                        })
                })
                .collect();
            stats.push(format!("C: {c}"));
            let bound = index.alphabet().size() as f64;
            (s1, s2, records, bound, cover_summary(&index, &rep))
        }
        Method::Greedy => {
            let prefix = index.window();
            let lang: LeveledLanguage = (1..=index.n_max()).map(|n| &prefix[..n]).collect();
            let k = (1..=index.n_max())
                .map(|n| (lang.accumulative(n) as u64).div_ceil(n as u64))
                .max()
                .unwrap_or(0);
            let g = greedy_two_sets(&lang, k)?;
            let records: Vec<SplitRecord> = g
                .cuts
                .iter()
                .map(|(v, cut)| SplitRecord {
                    v: v.clone(),
                    s: v[..*cut].into(),
                    t: v[*cut..].into(),
                    order: None,
                    position: 0,
                    class: None,
                })
                .collect();
            let uncovered: Vec<String> = lang
                .words()
                .filter(|v| !covers(&g.s, &g.t, v))
                .map(|v| index.render(v))
                .collect();
            stats.push("language: prefixes".to_string());
            stats.push(format!("K: {k}"));
            let total = lang.len();
            (
                g.s,
                g.t,
                records,
                (2 * k + 1) as f64,
                (total - uncovered.len(), total, uncovered),
            )
        }
    };

    let (s_max, t_max) = (per_length_max(&s), per_length_max(&t));
    let (covered, total, uncovered) = coverage;
    let ratio = if total == 0 {
        1.0
    } else {
        covered as f64 / total as f64
    };
    stats.push(format!("per-length max: S={s_max} T={t_max}"));
    stats.push(format!("bound: {bound}"));
    stats.push(format!(
        "bound respected: {}",
        s_max as f64 <= bound && t_max as f64 <= bound
    ));
    stats.push(format!("coverage: {ratio:?} ({covered}/{total})"));
    for v in uncovered.iter().take(10) {
        stats.push(format!("uncovered: {v}"));
    }

    let alphabet = source.alphabet();
    write_atomic(&out_dir.join("S.jsonl"), &s.to_jsonl(alphabet, "S"))?;
    write_atomic(&out_dir.join("T.jsonl"), &t.to_jsonl(alphabet, "T"))?;
    write_atomic(
        &out_dir.join("splits.csv"),
        &records_to_csv(&index, &records),
    )?;
    let text = stats.render();
    write_atomic(&out_dir.join("stats.txt"), &text)?;

    let failure = if covered < total {
        Some(CliError::new(
            "coverage-incomplete",
            EXIT_VERIFICATION,
            format!("coverage {ratio} ({covered}/{total})"),
        ))
    } else if !(s_max as f64 <= bound && t_max as f64 <= bound) {
        Some(CliError::new(
            "bound-exceeded",
            EXIT_VERIFICATION,
            format!("per-length max S={s_max} T={t_max} exceeds {bound}"),
        ))
    } else {
        None
    };
    Ok(Outcome {
        stdout: text,
        stderr: String::new(),
        failure,
    })
}

fn cover_summary(index: &FactorIndex, rep: &CoverReport) -> (usize, usize, Vec<String>) {
    (
        rep.covered,
        rep.total,
        rep.uncovered.iter().map(|w| index.render(w)).collect(),
    )
}

pub fn cmd_verify(
    spec: &str,
    s_file: &Path,
    t_file: &Path,
    args: &WindowArgs,
) -> Result<Outcome, CliError> {
    let (s_file, t_file) = (resolve(s_file)?, resolve(t_file)?);
    let (source, index) = stable_index(spec, args)?;
    let s = LeveledLanguage::from_jsonl(&read(&s_file)?, source.alphabet())?;
    let t = LeveledLanguage::from_jsonl(&read(&t_file)?, source.alphabet())?;
    let rep = verify_cover(&index, &s, &t, index.n_max());
    let mut text = format!(
        "coverage: {:?} ({}/{})\nper-length max: S={} T={}\n",
        rep.coverage(),
        rep.covered,
        rep.total,
        rep.s_max(),
        rep.t_max()
    );
    for v in &rep.uncovered {
        writeln!(text, "uncovered: {}", index.render(v)).expect("writing to a String");
    }
    let failure = (!rep.is_complete()).then(|| {
        let first = rep
            .uncovered
            .first()
            .map(|v| index.render(v))
            .unwrap_or_default();
        CliError::new(
            "coverage-incomplete",
            EXIT_VERIFICATION,
            format!(
                "coverage {} ({}/{}); first uncovered factor {first}",
                rep.coverage(),
                rep.covered,
                rep.total
            ),
        )
    });
    Ok(Outcome {
        stdout: text,
        stderr: String::new(),
        failure,
    })
}

#[derive(Debug, Clone)]
pub struct ExperimentOptions {
    pub n: Vec<u64>,
    pub word: Option<String>,
    pub model: Option<String>,
    pub range: Option<(usize, usize)>,
    pub window: Option<usize>,
    pub k: u64,
    pub f: String,
    pub kpq: String,
    pub spread: Option<f64>,
    pub method: Method,
}

pub fn cmd_experiment(
    name: ExperimentName,
    o: &ExperimentOptions,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let out = out.map(resolve).transpose()?;
    let (csv, summary, failure) = match name {
        ExperimentName::ECount => {
            let ns = if o.n.is_empty() {
                vec![1_000, 10_000, 100_000, 1_000_000]
            } else {
                o.n.clone()
            };
            if let Some(&n) = ns.iter().find(|&&n| n < 9) {
                return Err(CliError::new(
                    "precondition",
                    EXIT_PRECONDITION,
                    format!("e-count needs n >= 9, got {n}"),
                ));
            }
            let rows = experiments::e_count_rows(&ns);
            let limit = o.spread.unwrap_or(2.5);
            let spread = experiments::ratio_spread(rows.iter().map(|r| r.ratio));
            let failure = (spread > limit).then(|| {
                CliError::new(
                    "spread-exceeded",
                    EXIT_VERIFICATION,
                    format!("spread {spread} > {limit}"),
                )
            });
            (
                experiments::rows_to_csv(&rows),
                format!("# e-count spread={spread} limit={limit}\n"),
                failure,
            )
        }
        ExperimentName::ClaimPairs => {
            let ns = if o.n.is_empty() {
                vec![1_000, 10_000, 100_000]
            } else {
                o.n.clone()
            };
            let f = parse_growth(&o.f)?;
            let kpq = parse_exponent(&o.kpq)?;
            let rows = experiments::claim_pair_rows(&ns, o.k, f, kpq)?;
            let increasing = rows.windows(2).all(|w| w[0].ratio < w[1].ratio);
            (
                experiments::rows_to_csv(&rows),
                format!(
                    "# claim-pairs k={} f={f} kpq={kpq} ratio-increasing={increasing}\n",
                    o.k
                ),
                None,
            )
        }
        ExperimentName::Fit => {
            let spec = o
                .word
                .as_deref()
                .ok_or_else(|| CliError::new("usage", EXIT_USAGE, "fit needs --word"))?;
            let model: Model = o.model.as_deref().unwrap_or("n").parse()?;
            let (lo, hi) = o
                .range
                .ok_or_else(|| CliError::new("usage", EXIT_USAGE, "fit needs --range lo:hi"))?;
            let source = parse_word_spec(spec)?;
            let window = o.window.unwrap_or(DEFAULT_FIT_WINDOW);
            let profile = window_profile(&source, window, hi)?;
            let fit = experiments::growth_fit(&profile, model, lo, hi)?;
            let limit = o
                .spread
                .unwrap_or(if model == Model::NLogN { 2.5 } else { 4.0 });
            let accepted = fit.accepts(limit);
            let summary = format!(
                "# fit word={source} model={model} range={lo}:{hi} window={window} ratio_min={} ratio_max={} spread={} accepted={accepted}\n",
                fit.ratio_min,
                fit.ratio_max,
                fit.spread()
            );
            let failure = (!accepted).then(|| {
                CliError::new(
                    "fit-rejected",
                    EXIT_VERIFICATION,
                    format!("spread {} > {limit}", fit.spread()),
                )
            });
            (fit.to_csv(), summary, failure)
        }
        ExperimentName::Lemma1 => {
            let spec = o.word.as_deref().unwrap_or("tm");
            let n = o.n.first().copied().unwrap_or(32) as usize;
            let args = WindowArgs {
                n_max: n,
                window: o.window,
            };
            let (_, index) = stable_index(spec, &args)?;
            let sets = match o.method {
                Method::Tm => {
                    let d = thue_morse_st(n);
                    vec![d.s1, d.s2]
                }
                Method::Sturmian => {
                    let (a, b) = sturmian_st(&index)?;
                    vec![a, b]
                }
                Method::Marker => {
                    let (_, dec) = marker_decomposition(&index)?;
                    vec![dec.s, dec.t]
                }
                Method::Greedy => {
                    return Err(CliError::new(
                        "usage",
                        EXIT_USAGE,
                        "lemma1 audits tm, sturmian or marker sets",
                    ));
                }
            };
            let rep = experiments::lemma1_audit(&sets, &index, n)?;
            let ratio = rep.measured as f64 / rep.bound as f64;
            let csv = format!(
                "n,count,model,ratio\n{},{},lemma1,{ratio}\n",
                rep.n, rep.measured
            );
            let summary = format!(
                "# lemma1 C={} k={} bound={} measured={} margin={}\n",
                rep.c,
                rep.k,
                rep.bound,
                rep.measured,
                rep.margin()
            );
            let failure = (!rep.holds()).then(|| {
                CliError::new(
                    "bound-exceeded",
                    EXIT_VERIFICATION,
                    format!("p({n}) = {} > {}", rep.measured, rep.bound),
                )
            });
            (csv, summary, failure)
        }
    };
    Ok(Outcome {
        stdout: emit(out.as_deref(), csv)?,
        stderr: summary,
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_config_round_trip() {
        let cfg = RunConfig {
            word: Some("sturm:2,(1,3)".into()),
            window: Some(6400),
            n_max: Some(128),
            out: Some("/tmp/a b".into()),
            ..RunConfig::new("decompose marker")
        }
        .option("spread", 4.0);
        let text = cfg.to_string();
        let back: RunConfig = text.parse().unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.to_string(), text);
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("100:1000"), Ok((100, 1000)));
        assert!(parse_range("0:5").is_err());
        assert!(parse_range("9:5").is_err());
        assert!(parse_range("7").is_err());
    }

    #[test]
    fn error_lines_are_single_line() {
        let e = CliError::new("x", 3, "a\nb  c");
        assert_eq!(e.line(), "error: x: a b c");
    }
}
