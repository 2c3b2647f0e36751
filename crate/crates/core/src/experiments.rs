//! Counting experiments and growth fits for the quadratic and block-product words.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::decompose::{product_complexity_bound, DecomposeError, LeveledLanguage};
use crate::factors::{ComplexityProfile, FactorIndex};
use crate::words::{isqrt, ExponentFn, FiniteWord, GrowthFn};
use crate::wordspec::parse_growth;

#[derive(Debug, Error, PartialEq)]
pub enum ExperimentError {
    #[error("range {lo}:{hi} is outside the profile 1..={n_max}")]
    RangeOutOfProfile { lo: usize, hi: usize, n_max: usize },
    #[error("model {model} is not positive at n = {n}")]
    ModelNotPositive { model: String, n: usize },
    #[error("unknown model `{0}` (expected n, n2, nlogn or n2f:<f>)")]
    UnknownModel(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

/// `a b^l a b^(l+1) ... a b^(l+k-1) a` over `a = 0`, `b = 1`.
pub fn w_kl(k: usize, l: usize) -> FiniteWord {
    let mut w = Vec::with_capacity(w_kl_len(k as u64, l as u64) as usize);
    for j in 0..k {
        w.push(0);
        w.extend(std::iter::repeat_n(1, l + j));
    }
    w.push(0);
    w.into()
}

/// `|w_kl| = k (l + (k + 1) / 2) + 1`, kept in integers.
pub fn w_kl_len(k: u64, l: u64) -> u64 {
    k * l + k * (k + 1) / 2 + 1
}

/// Smallest integer `l` with `l >= sqrt(n)`.
fn ceil_sqrt(n: u64) -> u64 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// `#{(k, l) : k >= 3, l >= sqrt(n), |w_kl| <= n}`.
///
/// Only `k` with `k^2 < 2n` can qualify; for each such `k` the admissible `l`
/// form an interval.
pub fn count_e(n: u64) -> u64 {
    let lo = ceil_sqrt(n);
    let mut total = 0;
    let mut k = 3u64;
    while k * k < 2 * n {
        let fixed = k * (k + 1) / 2 + 1;
        if fixed <= n {
            let hi = (n - fixed) / k;
            if hi >= lo {
                total += hi - lo + 1;
            }
        }
        k += 1;
    }
    total
}

/// `#{(p, q) : p, q >= 1, (p + q)(2k - 1) < n - 2, q <= f(p), k(p, q) >= 2k - 1}`.
pub fn claim_pairs(n: u64, k: u64, f: GrowthFn, kpq: ExponentFn) -> Result<u64, ExperimentError> {
    if k < 1 || n < 3 {
        return Err(ExperimentError::Precondition(format!(
            "need k >= 1 and n >= 3, got k = {k}, n = {n}"
        )));
    }
    let m = 2 * k - 1;
    let limit = n - 2;
    let count = (1..)
        .take_while(|&p| (p + 1) * m < limit)
        .map(|p: u64| {
            let fp = f.eval(p);
            (1..=fp)
                .take_while(|&q| (p + q) * m < limit)
                .filter(|&q| kpq.eval(p, q) >= m)
                .count() as u64
        })
        .sum();
    Ok(count)
}

/// Comparison function for growth fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    N,
    N2,
    NLogN,
    N2F(GrowthFn),
}

impl Model {
    pub fn eval(&self, n: usize) -> f64 {
        let x = n as f64;
        match self {
            Model::N => x,
            Model::N2 => x * x,
            Model::NLogN => x * x.ln(),
            Model::N2F(f) => x * x * f.eval(n as u64) as f64,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::N => write!(f, "n"),
            Model::N2 => write!(f, "n2"),
            Model::NLogN => write!(f, "nlogn"),
            Model::N2F(g) => write!(f, "n2f:{g}"),
        }
    }
}

impl FromStr for Model {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "n" => Ok(Model::N),
            "n2" => Ok(Model::N2),
            "nlogn" => Ok(Model::NLogN),
            "n2f" => Ok(Model::N2F(GrowthFn::Isqrt)),
            other => other
                .strip_prefix("n2f:")
                .and_then(|g| parse_growth(g).ok())
                .map(Model::N2F)
                .ok_or_else(|| ExperimentError::UnknownModel(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthFit {
    pub model: Model,
    pub lo: usize,
    pub hi: usize,
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// `(n, p(n), p(n) / model(n))` over the range.
    pub rows: Vec<(usize, u64, f64)>,
}

impl GrowthFit {
    pub fn spread(&self) -> f64 {
        if self.ratio_min > 0.0 {
            self.ratio_max / self.ratio_min
        } else {
            f64::INFINITY
        }
    }

    pub fn accepts(&self, max_spread: f64) -> bool {
        self.ratio_min > 0.0 && self.spread() <= max_spread
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count,model,ratio\n");
        for &(n, p, r) in &self.rows {
            writeln!(out, "{n},{p},{},{r}", self.model).expect("writing to a String");
        }
        out
    }
}

/// Ratio extremes of `p(n) / model(n)` for `lo <= n <= hi`.
pub fn growth_fit(
    profile: &ComplexityProfile,
    model: Model,
    lo: usize,
    hi: usize,
) -> Result<GrowthFit, ExperimentError> {
    let n_max = profile.n_max();
    if lo < 1 || lo > hi || hi > n_max {
        return Err(ExperimentError::RangeOutOfProfile { lo, hi, n_max });
    }
    let mut rows = Vec::with_capacity(hi - lo + 1);
    for n in lo..=hi {
        let m = model.eval(n);
        if m.is_nan() || m <= 0.0 {
            return Err(ExperimentError::ModelNotPositive {
                model: model.to_string(),
                n,
            });
        }
        let p = profile.p(n).expect("n within the profile");
        rows.push((n, p, p as f64 / m));
    }
    let ratio_min = rows.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
    let ratio_max = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    Ok(GrowthFit {
        model,
        lo,
        hi,
        ratio_min,
        ratio_max,
        rows,
    })
}

/// Row of a counting experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountRow {
    pub n: u64,
    pub count: u64,
    pub model: String,
    pub ratio: f64,
}

pub fn rows_to_csv(rows: &[CountRow]) -> String {
    let mut out = String::from("n,count,model,ratio\n");
    for r in rows {
        writeln!(out, "{},{},{},{}", r.n, r.count, r.model, r.ratio).expect("writing to a String");
    }
    out
}

/// `count_e(n) / (n ln n)` for each `n`, in input order.
pub fn e_count_rows(ns: &[u64]) -> Vec<CountRow> {
    ns.par_iter()
        .map(|&n| {
            let count = count_e(n);
            CountRow {
                n,
                count,
                model: "nlogn".into(),
                ratio: count as f64 / (n as f64 * (n as f64).ln()),
            }
        })
        .collect()
}

/// `claim_pairs(n, k) / n` for each `n`, in input order.
pub fn claim_pair_rows(
    ns: &[u64],
    k: u64,
    f: GrowthFn,
    kpq: ExponentFn,
) -> Result<Vec<CountRow>, ExperimentError> {
    ns.par_iter()
        .map(|&n| {
            let count = claim_pairs(n, k, f, kpq)?;
            Ok(CountRow {
                n,
                count,
                model: "n".into(),
                ratio: count as f64 / n as f64,
            })
        })
        .collect()
}

/// `max / min` of a list of ratios; infinite when the minimum is not positive.
pub fn ratio_spread(ratios: impl IntoIterator<Item = f64>) -> f64 {
    let (lo, hi) = ratios
        .into_iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), r| {
            (lo.min(r), hi.max(r))
        });
    if lo > 0.0 {
        hi / lo
    } else {
        f64::INFINITY
    }
}

/// Measured `p(n)` against `C^(k+1) binom(n + k, k)` for a product of `k + 1` sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub n: usize,
    pub measured: u64,
    pub c: u64,
    pub k: u64,
    pub bound: u64,
}

impl Lemma1Report {
    pub fn holds(&self) -> bool {
        self.measured <= self.bound
    }

    pub fn margin(&self) -> i128 {
        i128::from(self.bound) - i128::from(self.measured)
    }
}

pub fn lemma1_audit(
    sets: &[LeveledLanguage],
    index: &FactorIndex,
    n: usize,
) -> Result<Lemma1Report, ExperimentError> {
    if sets.is_empty() {
        return Err(ExperimentError::Precondition("no sets given".into()));
    }
    let c = sets
        .iter()
        .map(|s| s.max_count().max(s.count(0)) as u64)
        .max()
        .unwrap_or(0);
    let k = sets.len() as u64 - 1;
    let bound = product_complexity_bound(c, k, n as u64)?;
    let measured = index
        .complexity(n)
        .map_err(|e| ExperimentError::Precondition(e.to_string()))?;
    Ok(Lemma1Report {
        n,
        measured,
        c,
        k,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::WordSource;

    fn naive_e(n: u64) -> u64 {
        let mut c = 0;
        for k in 3..=n {
            for l in 1..=n {
                if l * l >= n && w_kl_len(k, l) <= n {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn small_words() {
        let render = |w: FiniteWord| {
            w.iter()
                .map(|&x| if x == 0 { 'a' } else { 'b' })
                .collect::<String>()
        };
        assert_eq!(render(w_kl(2, 1)), "ababba");
        assert_eq!(render(w_kl(1, 1)), "aba");
    }

    #[test]
    fn length_formula() {
        for k in 1..=100 {
            for l in 1..=100 {
                assert_eq!(w_kl(k, l).len() as u64, w_kl_len(k as u64, l as u64));
            }
        }
    }

    #[test]
    fn w_kl_are_abk_factors() {
        let idx = FactorIndex::build(&WordSource::abk(), 20_000, 64).unwrap();
        let text = idx.window();
        for k in 1..=5 {
            for l in 1..=8 {
                let w = w_kl(k, l);
                assert!(text.windows(w.len()).any(|x| x == &w[..]), "k={k} l={l}");
            }
        }
    }

    #[test]
    fn count_e_matches_naive() {
        for n in (1..=300).chain([999, 1000, 1024, 2000]) {
            assert_eq!(count_e(n), naive_e(n), "n = {n}");
        }
        assert_eq!(count_e(9), 0);
    }

    fn naive_pairs(n: u64, k: u64, f: GrowthFn, kpq: ExponentFn) -> u64 {
        let m = 2 * k - 1;
        let mut c = 0;
        for p in 1..n {
            for q in 1..n {
                if (p + q) * m < n - 2 && q <= f.eval(p) && kpq.eval(p, q) >= m {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn claim_pairs_matches_naive() {
        let f = GrowthFn::Isqrt;
        let kpq = ExponentFn::P { mul: 1 };
        for n in [3, 4, 10, 57, 200, 1000] {
            for k in 1..=4 {
                assert_eq!(
                    claim_pairs(n, k, f, kpq).unwrap(),
                    naive_pairs(n, k, f, kpq),
                    "n={n} k={k}"
                );
            }
        }
        assert_eq!(claim_pairs(5, 3, f, kpq).unwrap(), 0);
        assert!(claim_pairs(2, 1, f, kpq).is_err());
    }

    #[test]
    fn model_round_trip() {
        for s in ["n", "n2", "nlogn", "n2f:isqrt", "n2f:log2"] {
            assert_eq!(s.parse::<Model>().unwrap().to_string(), s);
        }
        assert_eq!("n2f".parse::<Model>().unwrap(), Model::N2F(GrowthFn::Isqrt));
        assert!("n3".parse::<Model>().is_err());
    }

    #[test]
    fn fibonacci_fit() {
        let idx = FactorIndex::build(&WordSource::fibonacci(), 10_000, 100).unwrap();
        let fit = growth_fit(idx.profile(), Model::N, 10, 100).unwrap();
        assert!(fit.accepts(1.1), "{}", fit.spread());
        assert_eq!(fit.rows[0], (10, 11, 1.1));
        assert!(!growth_fit(idx.profile(), Model::N2, 10, 100)
            .unwrap()
            .accepts(4.0));
        assert!(matches!(
            growth_fit(idx.profile(), Model::N, 10, 101),
            Err(ExperimentError::RangeOutOfProfile { .. })
        ));
        assert!(matches!(
            growth_fit(idx.profile(), Model::NLogN, 1, 10),
            Err(ExperimentError::ModelNotPositive { n: 1, .. })
        ));
    }

    #[test]
    fn constant_word_rejected() {
        let src = crate::parse_word_spec("ultper:|0").unwrap();
        let idx = FactorIndex::build(&src, 5000, 100).unwrap();
        let fit = growth_fit(idx.profile(), Model::N2, 10, 100).unwrap();
        assert!(fit.ratio_max <= 0.01);
        assert!(!fit.accepts(4.0));
    }

    #[test]
    fn lemma1_thue_morse() {
        let idx = FactorIndex::build(&WordSource::thue_morse(), 1600, 32).unwrap();
        let d = crate::decompose::thue_morse_st(32);
        let rep = lemma1_audit(&[d.s1, d.s2], &idx, 32).unwrap();
        assert_eq!((rep.c, rep.k), (2, 1));
        assert_eq!(rep.bound, 4 * 33);
        assert!(rep.holds());
    }

    #[test]
    fn csv_rows_are_ordered() {
        let rows = e_count_rows(&[1000, 100, 10_000]);
        let ns: Vec<u64> = rows.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![1000, 100, 10_000]);
        assert!(rows_to_csv(&rows).starts_with("n,count,model,ratio\n1000,"));
    }
}
