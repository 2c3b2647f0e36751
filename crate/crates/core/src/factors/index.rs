use rayon::prelude::*;

use super::profile::ComplexityProfile;
use super::suffix_array::{lcp_array, suffix_array};
use super::FactorError;
use crate::words::{Alphabet, FiniteWord, Letter, WordSource};

/// Default ratio between window length and `n_max`.
pub const STABILIZATION_FACTOR: usize = 50;

/// Small set of letters, one bit per letter index.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LetterSet([u64; 4]);

impl LetterSet {
    pub fn insert(&mut self, l: Letter) {
        self.0[(l >> 6) as usize] |= 1 << (l & 63);
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.0[(l >> 6) as usize] & (1 << (l & 63)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..=255u8).filter(|&l| self.contains(l))
    }
}

/// One distinct factor of the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorEntry {
    /// First occurrence in the window.
    pub first: u32,
    /// Letters `a` such that `wa` occurs in the window.
    pub right: LetterSet,
    /// Letters `a` such that `aw` occurs in the window.
    pub left: LetterSet,
}

/// All distinct factors of a window prefix, per length up to `n_max`.
///
/// Factors of each length are stored in lexicographic order as
/// first-occurrence positions into the window.
#[derive(Debug, Clone)]
pub struct FactorIndex {
    source: String,
    alphabet: Alphabet,
    window: Vec<Letter>,
    n_max: usize,
    sa: Vec<u32>,
    levels: Vec<Vec<FactorEntry>>,
    profile: ComplexityProfile,
}

impl FactorIndex {
    pub fn build(source: &WordSource, window: usize, n_max: usize) -> Result<Self, FactorError> {
        if n_max == 0 {
            return Err(FactorError::OutOfRange {
                n: 0,
                lo: 1,
                hi: usize::MAX,
            });
        }
        if window < 2 * n_max {
            return Err(FactorError::WindowTooSmall { window, n_max });
        }
        let text = source.prefix(window)?;
        Ok(Self::from_text(
            source.name().to_string(),
            source.alphabet().clone(),
            text.into_letters(),
            n_max,
        ))
    }

    /// Indexes an explicit window; `n_max` is clamped to the window length.
    pub fn from_text(
        source: String,
        alphabet: Alphabet,
        window: Vec<Letter>,
        n_max: usize,
    ) -> Self {
        let n_max = n_max.min(window.len());
        let sa = suffix_array(&window);
        let lcp = lcp_array(&window, &sa);
        let levels: Vec<Vec<FactorEntry>> = (1..=n_max)
            .into_par_iter()
            .map(|n| level(&window, &sa, &lcp, n))
            .collect();
        let profile =
            ComplexityProfile::from_counts(levels.iter().map(|l| l.len() as u64).collect());
        FactorIndex {
            source,
            alphabet,
            window,
            n_max,
            sa,
            levels,
            profile,
        }
    }

    pub fn source_name(&self) -> &str {
        &self.source
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn window(&self) -> &[Letter] {
        &self.window
    }

    pub fn window_len(&self) -> usize {
        self.window.len()
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn profile(&self) -> &ComplexityProfile {
        &self.profile
    }

    pub fn render(&self, w: &[Letter]) -> String {
        self.alphabet.render(w)
    }

    fn check_len(&self, n: usize, hi: usize) -> Result<(), FactorError> {
        if n == 0 || n > hi {
            return Err(FactorError::OutOfRange { n, lo: 1, hi });
        }
        Ok(())
    }

    pub fn complexity(&self, n: usize) -> Result<u64, FactorError> {
        self.profile.p(n)
    }

    pub fn accumulative(&self, n: usize) -> Result<u64, FactorError> {
        self.profile.g(n)
    }

    /// `(C, K)`: smallest integers with `p(n) <= C n` and `g(n) <= K n` for `n <= n_max`.
    pub fn slope_constants(&self) -> (u64, u64) {
        (self.profile.slope(), self.profile.accumulative_slope())
    }

    /// Entries of length `n`, lexicographically ordered.
    pub fn entries(&self, n: usize) -> Result<&[FactorEntry], FactorError> {
        self.check_len(n, self.n_max)?;
        Ok(&self.levels[n - 1])
    }

    /// Distinct factors of length `n` as window slices, lexicographically ordered.
    pub fn factors(&self, n: usize) -> Result<impl Iterator<Item = &[Letter]> + '_, FactorError> {
        let entries = self.entries(n)?;
        Ok(entries.iter().map(move |e| self.slice(e.first as usize, n)))
    }

    /// Every indexed factor, by increasing length then lexicographically.
    pub fn all_factors(&self) -> impl Iterator<Item = &[Letter]> + '_ {
        (1..=self.n_max).flat_map(move |n| {
            self.levels[n - 1]
                .iter()
                .map(move |e| self.slice(e.first as usize, n))
        })
    }

    fn slice(&self, pos: usize, n: usize) -> &[Letter] {
        &self.window[pos..pos + n]
    }

    pub fn entry(&self, w: &[Letter]) -> Option<&FactorEntry> {
        let n = w.len();
        if n == 0 || n > self.n_max {
            return None;
        }
        let level = &self.levels[n - 1];
        level
            .binary_search_by(|e| self.slice(e.first as usize, n).cmp(w))
            .ok()
            .map(|i| &level[i])
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        w.is_empty() || self.entry(w).is_some()
    }

    pub fn first_occurrence(&self, w: &[Letter]) -> Option<usize> {
        if w.is_empty() {
            return Some(0);
        }
        if w.len() <= self.n_max {
            return self.entry(w).map(|e| e.first as usize);
        }
        self.occurrences(w).first().copied()
    }

    fn special(
        &self,
        n: usize,
        pick: impl Fn(&FactorEntry) -> &LetterSet,
    ) -> Result<Vec<FiniteWord>, FactorError> {
        self.check_len(n, self.n_max.saturating_sub(1))?;
        Ok(self.levels[n - 1]
            .iter()
            .filter(|e| pick(e).len() >= 2)
            .map(|e| FiniteWord::from(self.slice(e.first as usize, n)))
            .collect())
    }

    /// Factors of length `n` with at least two right extensions in the window.
    pub fn right_special(&self, n: usize) -> Result<Vec<FiniteWord>, FactorError> {
        self.special(n, |e| &e.right)
    }

    /// Factors of length `n` with at least two left extensions in the window.
    pub fn left_special(&self, n: usize) -> Result<Vec<FiniteWord>, FactorError> {
        self.special(n, |e| &e.left)
    }

    /// All start positions of `w` in the window, ascending. The empty word
    /// occurs at every position `0..=window_len`.
    pub fn occurrences(&self, w: &[Letter]) -> Vec<usize> {
        if w.is_empty() {
            return (0..=self.window.len()).collect();
        }
        let head = |p: u32| {
            let s = &self.window[p as usize..];
            &s[..s.len().min(w.len())]
        };
        let lo = self.sa.partition_point(|&p| head(p) < w);
        let hi = lo + self.sa[lo..].partition_point(|&p| head(p) == w);
        let mut out: Vec<usize> = self.sa[lo..hi].iter().map(|&p| p as usize).collect();
        out.sort_unstable();
        out
    }

    /// Smallest `n0 < n_max` with `p(n0 + 1) = p(n0)`; `None` means aperiodic
    /// within the window.
    pub fn detect_eventual_periodicity(&self) -> Option<usize> {
        self.profile.first_plateau()
    }
}

fn level(text: &[Letter], sa: &[u32], lcp: &[u32], n: usize) -> Vec<FactorEntry> {
    let len = text.len();
    let mut out: Vec<FactorEntry> = Vec::new();
    let mut open = false;
    for (r, &pos) in sa.iter().enumerate() {
        let pos = pos as usize;
        if len - pos < n {
            open = false;
            continue;
        }
        if !open || (lcp[r] as usize) < n {
            out.push(FactorEntry {
                first: pos as u32,
                right: LetterSet::default(),
                left: LetterSet::default(),
            });
            open = true;
        }
        let e = out.last_mut().expect("group opened above");
        e.first = e.first.min(pos as u32);
        if pos + n < len {
            e.right.insert(text[pos + n]);
        }
        if pos > 0 {
            e.left.insert(text[pos - 1]);
        }
    }
    out
}

/// True iff the complexity profiles of windows `window` and `2 * window` agree
/// for every length up to `n_max`.
pub fn stabilization_check(
    source: &WordSource,
    window: usize,
    n_max: usize,
) -> Result<bool, FactorError> {
    let small = source.prefix(window)?;
    let large = source.prefix(2 * window)?;
    Ok(ComplexityProfile::of_text(&small, n_max) == ComplexityProfile::of_text(&large, n_max))
}

/// Complexity profile of a window without materializing the per-factor index.
pub fn window_profile(
    source: &WordSource,
    window: usize,
    n_max: usize,
) -> Result<ComplexityProfile, FactorError> {
    if n_max == 0 {
        return Err(FactorError::OutOfRange {
            n: 0,
            lo: 1,
            hi: usize::MAX,
        });
    }
    if window < 2 * n_max {
        return Err(FactorError::WindowTooSmall { window, n_max });
    }
    let text = source.prefix(window)?;
    Ok(ComplexityProfile::of_text(&text, n_max))
}
