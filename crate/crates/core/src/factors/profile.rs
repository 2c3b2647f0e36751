use std::fmt::Write as _;

use super::suffix_array::{lcp_array, suffix_array};
use super::FactorError;

/// Complexity counts `p(n)` and accumulative counts `g(n)` for `1 <= n <= n_max`,
/// with the smallest integer slopes bounding both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityProfile {
    p: Vec<u64>,
    g: Vec<u64>,
    slope: u64,
    accumulative_slope: u64,
}

impl ComplexityProfile {
    /// Builds a profile from `p(1), p(2), ...`.
    pub fn from_counts(p: Vec<u64>) -> Self {
        let mut g = Vec::with_capacity(p.len());
        let mut acc = 0u64;
        for &c in &p {
            acc += c;
            g.push(acc);
        }
        let ceil_ratio = |v: u64, n: usize| v.div_ceil(n as u64);
        let slope = p
            .iter()
            .enumerate()
            .map(|(i, &c)| ceil_ratio(c, i + 1))
            .max()
            .unwrap_or(0)
            .max(1);
        let accumulative_slope = g
            .iter()
            .enumerate()
            .map(|(i, &c)| ceil_ratio(c, i + 1))
            .max()
            .unwrap_or(0)
            .max(1);
        ComplexityProfile {
            p,
            g,
            slope,
            accumulative_slope,
        }
    }

    /// Distinct-factor counts of `text` for lengths `1..=n_max`, from the suffix
    /// array: each suffix contributes the lengths above its LCP with the previous one.
    pub fn of_text(text: &[u8], n_max: usize) -> Self {
        let sa = suffix_array(text);
        let lcp = lcp_array(text, &sa);
        Self::from_suffix_array(text.len(), &sa, &lcp, n_max)
    }

    pub(crate) fn from_suffix_array(len: usize, sa: &[u32], lcp: &[u32], n_max: usize) -> Self {
        let mut diff = vec![0i64; n_max + 2];
        for (r, &pos) in sa.iter().enumerate() {
            let lo = lcp[r] as usize + 1;
            let hi = (len - pos as usize).min(n_max);
            if lo <= hi {
                diff[lo] += 1;
                diff[hi + 1] -= 1;
            }
        }
        let mut p = Vec::with_capacity(n_max);
        let mut run = 0i64;
        for d in diff.iter().take(n_max + 1).skip(1) {
            run += d;
            p.push(run as u64);
        }
        Self::from_counts(p)
    }

    pub fn n_max(&self) -> usize {
        self.p.len()
    }

    pub fn p(&self, n: usize) -> Result<u64, FactorError> {
        self.check(n)?;
        Ok(self.p[n - 1])
    }

    pub fn g(&self, n: usize) -> Result<u64, FactorError> {
        self.check(n)?;
        Ok(self.g[n - 1])
    }

    pub fn counts(&self) -> &[u64] {
        &self.p
    }

    pub fn accumulated(&self) -> &[u64] {
        &self.g
    }

    /// Smallest integer `C` with `p(n) <= C n` on the profile's range.
    pub fn slope(&self) -> u64 {
        self.slope
    }

    /// Smallest integer `K` with `g(n) <= K n` on the profile's range.
    pub fn accumulative_slope(&self) -> u64 {
        self.accumulative_slope
    }

    /// Smallest `n0 < n_max` with `p(n0 + 1) = p(n0)`.
    pub fn first_plateau(&self) -> Option<usize> {
        self.p.windows(2).position(|w| w[0] == w[1]).map(|i| i + 1)
    }

    fn check(&self, n: usize) -> Result<(), FactorError> {
        if n == 0 || n > self.p.len() {
            return Err(FactorError::OutOfRange {
                n,
                lo: 1,
                hi: self.p.len(),
            });
        }
        Ok(())
    }

    /// `n,p,g` with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,p,g\n");
        for (i, (p, g)) in self.p.iter().zip(&self.g).enumerate() {
            writeln!(out, "{},{},{}", i + 1, p, g).expect("writing to a String");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn sliding_count(text: &[u8], n: usize) -> u64 {
        if n > text.len() {
            return 0;
        }
        text.windows(n).collect::<HashSet<_>>().len() as u64
    }

    #[test]
    fn constants_from_counts() {
        let prof = ComplexityProfile::from_counts(vec![2, 3, 4, 5]);
        assert_eq!(prof.slope(), 2);
        assert_eq!(prof.g(4).unwrap(), 14);
        // g = 2, 5, 9, 14 -> ceil ratios 2, 3, 3, 4
        assert_eq!(prof.accumulative_slope(), 4);
        assert_eq!(prof.first_plateau(), None);
        let flat = ComplexityProfile::from_counts(vec![1, 1, 1]);
        assert_eq!((flat.slope(), flat.accumulative_slope()), (1, 1));
        assert_eq!(flat.first_plateau(), Some(1));
    }

    #[test]
    fn out_of_range() {
        let prof = ComplexityProfile::from_counts(vec![1, 1]);
        assert!(prof.p(0).is_err());
        assert!(prof.p(3).is_err());
    }

    #[test]
    fn csv_layout() {
        let prof = ComplexityProfile::from_counts(vec![2, 4, 6]);
        assert_eq!(prof.to_csv(), "n,p,g\n1,2,2\n2,4,6\n3,6,12\n");
    }

    proptest! {
        #[test]
        fn suffix_array_counts_match_sliding_frame(
            text in proptest::collection::vec(0u8..3, 1..300),
            n_max in 1usize..40,
        ) {
            let prof = ComplexityProfile::of_text(&text, n_max);
            for n in 1..=n_max {
                prop_assert_eq!(prof.p(n).unwrap(), sliding_count(&text, n));
                if n >= 2 {
                    prop_assert_eq!(prof.g(n).unwrap() - prof.g(n - 1).unwrap(), prof.p(n).unwrap());
                }
            }
        }
    }
}
