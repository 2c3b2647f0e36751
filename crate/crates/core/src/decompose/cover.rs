use std::collections::HashSet;

use rayon::prelude::*;

use super::LeveledLanguage;
use crate::factors::FactorIndex;
use crate::words::{FiniteWord, Letter};

/// Result of checking `Fac ⊆ S · T` on an index.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverReport {
    pub n_max: usize,
    pub total: usize,
    pub covered: usize,
    /// Uncovered factors, by length then lexicographically.
    pub uncovered: Vec<FiniteWord>,
    /// `|S ∩ Σ^n|` for `n = 0..=n_max`.
    pub s_counts: Vec<usize>,
    /// `|T ∩ Σ^n|` for `n = 0..=n_max`.
    pub t_counts: Vec<usize>,
}

impl CoverReport {
    pub fn coverage(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.covered as f64 / self.total as f64
        }
    }

    pub fn is_complete(&self) -> bool {
        self.covered == self.total
    }

    /// Largest per-length count of `S` over lengths `1..=n_max`.
    pub fn s_max(&self) -> usize {
        self.s_counts.iter().skip(1).copied().max().unwrap_or(0)
    }

    pub fn t_max(&self) -> usize {
        self.t_counts.iter().skip(1).copied().max().unwrap_or(0)
    }
}

/// Whether `v` splits as `s t` with `s` in `s_set` and `t` in `t_set`.
pub fn covers(s_set: &LeveledLanguage, t_set: &LeveledLanguage, v: &[Letter]) -> bool {
    (0..=v.len()).any(|c| s_set.contains(&v[..c]) && t_set.contains(&v[c..]))
}

/// Checks every indexed factor of length at most `n_max` for a split in `S · T`.
pub fn verify_cover(
    index: &FactorIndex,
    s: &LeveledLanguage,
    t: &LeveledLanguage,
    n_max: usize,
) -> CoverReport {
    let n_max = n_max.min(index.n_max());
    let s_words: HashSet<&[Letter]> = s.words().collect();
    let t_words: HashSet<&[Letter]> = t.words().collect();
    let s_lengths: Vec<usize> = (0..=n_max).filter(|&n| s.count(n) > 0).collect();
    let check = |v: &[Letter]| {
        s_lengths
            .iter()
            .take_while(|&&c| c <= v.len())
            .any(|&c| s_words.contains(&v[..c]) && t_words.contains(&v[c..]))
    };
    let factors: Vec<&[Letter]> = (1..=n_max)
        .flat_map(|n| index.factors(n).expect("length within the index"))
        .collect();
    let uncovered: Vec<FiniteWord> = factors
        .par_iter()
        .filter(|v| !check(v))
        .map(|&v| FiniteWord::from(v))
        .collect();
    CoverReport {
        n_max,
        total: factors.len(),
        covered: factors.len() - uncovered.len(),
        uncovered,
        s_counts: s.counts_up_to(n_max),
        t_counts: t.counts_up_to(n_max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordspec::parse_word_spec;

    fn index(spec: &str, n_max: usize) -> FactorIndex {
        FactorIndex::build(&parse_word_spec(spec).unwrap(), 50 * n_max, n_max).unwrap()
    }

    #[test]
    fn degenerate_witness_covers_everything() {
        let idx = index("tm", 32);
        let s: LeveledLanguage = idx.all_factors().collect();
        let t = LeveledLanguage::with_epsilon();
        let rep = verify_cover(&idx, &s, &t, 32);
        assert_eq!(rep.coverage(), 1.0);
        assert_eq!(rep.s_max(), idx.complexity(32).unwrap() as usize);
    }

    #[test]
    fn empty_s_covers_nothing() {
        let idx = index("fib", 32);
        let rep = verify_cover(
            &idx,
            &LeveledLanguage::new(),
            &LeveledLanguage::with_epsilon(),
            32,
        );
        assert_eq!(rep.covered, 0);
        assert_eq!(rep.coverage(), 0.0);
        assert_eq!(rep.uncovered.len(), rep.total);
    }

    #[test]
    fn brute_force_agreement() {
        let idx = index("fib", 16);
        let s: LeveledLanguage = [&[0u8][..], &[0, 1], &[1, 0], &[]].into_iter().collect();
        let t: LeveledLanguage = [&[0u8][..], &[1], &[0, 0], &[]].into_iter().collect();
        let rep = verify_cover(&idx, &s, &t, 16);
        let brute: Vec<FiniteWord> = idx
            .all_factors()
            .filter(|v| !covers(&s, &t, v))
            .map(FiniteWord::from)
            .collect();
        assert_eq!(rep.uncovered, brute);
    }
}
