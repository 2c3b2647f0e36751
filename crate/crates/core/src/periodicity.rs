//! Minimal periods, occurrence classification and marker sets.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factors::{FactorError, FactorIndex};
use crate::words::{FiniteWord, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeriodicityError {
    #[error("the empty word has no period")]
    EmptyWord,
    #[error("occurrence at {position} of length {len} does not fit in a window of {window}")]
    OccurrenceOutOfWindow {
        position: usize,
        len: usize,
        window: usize,
    },
    #[error(
        "occurrence at {position} needs {needed} letters of right context, window has {available}"
    )]
    InsufficientRightContext {
        position: usize,
        needed: usize,
        available: usize,
    },
    #[error("order-{order} markers miss the factor {witness} of length {len}")]
    MarkerPropertyViolation {
        order: u32,
        len: usize,
        witness: String,
    },
    #[error("marker length {len} times D = {d} exceeds n_max = {n_max}")]
    OrderOutOfRange { len: usize, d: u64, n_max: usize },
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// Least period of `w` and the corresponding prefix `w[..p]`.
pub fn minimal_period(w: &[Letter]) -> Result<(usize, FiniteWord), PeriodicityError> {
    if w.is_empty() {
        return Err(PeriodicityError::EmptyWord);
    }
    let p = w.len() - longest_border(w);
    Ok((p, FiniteWord::from(&w[..p])))
}

/// Length of the longest proper border, from the prefix function.
fn longest_border(w: &[Letter]) -> usize {
    let mut pi = vec![0usize; w.len()];
    for i in 1..w.len() {
        let mut b = pi[i - 1];
        while b > 0 && w[i] != w[b] {
            b = pi[b - 1];
        }
        if w[i] == w[b] {
            b += 1;
        }
        pi[i] = b;
    }
    pi.last().copied().unwrap_or(0)
}

/// How an occurrence sits relative to the periodic continuation of its
/// minimal period. An occurrence that is neither initial nor final is internal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OccurrenceClass {
    pub initial: bool,
    pub r#final: bool,
}

impl OccurrenceClass {
    pub fn is_internal(&self) -> bool {
        !self.initial && !self.r#final
    }

    pub fn is_extreme(&self) -> bool {
        !self.is_internal()
    }

    pub fn label(&self) -> &'static str {
        match (self.initial, self.r#final) {
            (false, false) => "internal",
            (true, false) => "initial",
            (false, true) => "final",
            (true, true) => "initial+final",
        }
    }
}

impl fmt::Display for OccurrenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Classifies the occurrence `window[j..j + n]`.
///
/// The occurrence is initial when some letter among the `p` positions
/// after `j` differs from the letter `p` places to its left (positions
/// falling before the window start are skipped), and final when some letter
/// among the last `p` positions differs from the one `p` places to its right.
/// Here `p` is the minimal period of the occurrence.
pub fn classify_occurrence(
    window: &[Letter],
    j: usize,
    n: usize,
) -> Result<OccurrenceClass, PeriodicityError> {
    if n == 0 || j + n > window.len() {
        return Err(PeriodicityError::OccurrenceOutOfWindow {
            position: j,
            len: n,
            window: window.len(),
        });
    }
    let (p, _) = minimal_period(&window[j..j + n])?;
    let available = window.len() - (j + n);
    if available < p {
        return Err(PeriodicityError::InsufficientRightContext {
            position: j,
            needed: p,
            available,
        });
    }
    let initial = (j.max(p)..j + p).any(|x| window[x] != window[x - p]);
    let r#final = (j + n - p..j + n).any(|x| window[x] != window[x + p]);
    Ok(OccurrenceClass { initial, r#final })
}

/// Markers of one order: right special factors of length `2^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerSet {
    pub order: u32,
    pub markers: Vec<FiniteWord>,
    pub d: u64,
}

impl MarkerSet {
    pub fn is_empty(&self) -> bool {
        self.markers.is_empty()
    }

    pub fn len(&self) -> usize {
        1 << self.order
    }

    pub fn cardinality(&self) -> usize {
        self.markers.len()
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.markers.iter().any(|m| m.letters() == w)
    }
}

/// Verified marker sets for orders `1..=max_order` with their constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerFamily {
    pub c: u64,
    pub d: u64,
    pub sets: Vec<MarkerSet>,
}

impl MarkerFamily {
    pub fn max_order(&self) -> u32 {
        self.sets.last().map_or(0, |s| s.order)
    }

    pub fn order(&self, k: u32) -> Option<&MarkerSet> {
        self.sets.iter().find(|s| s.order == k)
    }

    /// Largest marker-set cardinality over the verified orders.
    pub fn r(&self) -> usize {
        self.sets
            .iter()
            .map(MarkerSet::cardinality)
            .max()
            .unwrap_or(0)
    }

    /// One JSON object per marker: `{"k":…,"marker":"…"}`.
    pub fn to_jsonl(&self, index: &FactorIndex) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            k: u32,
            marker: &'a str,
        }
        let mut out = String::new();
        for set in &self.sets {
            let mut rendered: Vec<String> = set.markers.iter().map(|m| index.render(m)).collect();
            rendered.sort();
            for m in &rendered {
                out.push_str(
                    &serde_json::to_string(&Row {
                        k: set.order,
                        marker: m,
                    })
                    .expect("plain struct"),
                );
                out.push('\n');
            }
        }
        out
    }
}

/// True iff every indexed factor of length `d * n` contains one of `markers`.
pub fn verify_marker_property(
    index: &FactorIndex,
    markers: &[FiniteWord],
    n: usize,
    d: u64,
) -> Result<bool, PeriodicityError> {
    Ok(first_unmarked(index, markers, n, d)?.is_none())
}

fn first_unmarked(
    index: &FactorIndex,
    markers: &[FiniteWord],
    n: usize,
    d: u64,
) -> Result<Option<FiniteWord>, PeriodicityError> {
    let span = (d as usize).saturating_mul(n);
    if n == 0 || span > index.n_max() {
        return Err(PeriodicityError::OrderOutOfRange {
            len: n,
            d,
            n_max: index.n_max(),
        });
    }
    let set: HashSet<&[Letter]> = markers
        .iter()
        .filter(|m| m.len() == n)
        .map(|m| m.letters())
        .collect();
    Ok(index
        .factors(span)?
        .find(|f| !f.windows(n).any(|w| set.contains(w)))
        .map(FiniteWord::from))
}

/// Right special factors of length `2^k`, verified to be `(C + 1)`-markers.
pub fn build_markers(index: &FactorIndex, k: u32, c: u64) -> Result<MarkerSet, PeriodicityError> {
    build_markers_with_d(index, k, c + 1)
}

pub fn build_markers_with_d(
    index: &FactorIndex,
    k: u32,
    d: u64,
) -> Result<MarkerSet, PeriodicityError> {
    let len = 1usize << k;
    if len + 1 > index.n_max() || (d as usize).saturating_mul(len) > index.n_max() {
        return Err(PeriodicityError::OrderOutOfRange {
            len,
            d,
            n_max: index.n_max(),
        });
    }
    let markers = index.right_special(len)?;
    if let Some(w) = first_unmarked(index, &markers, len, d)? {
        return Err(PeriodicityError::MarkerPropertyViolation {
            order: k,
            len: w.len(),
            witness: index.render(&w),
        });
    }
    Ok(MarkerSet {
        order: k,
        markers,
        d,
    })
}

/// Largest order whose markers can be verified inside the index.
pub fn max_verifiable_order(n_max: usize, d: u64) -> u32 {
    let mut k = 0;
    while (d as usize).saturating_mul(1 << (k + 1)) <= n_max && (1usize << (k + 1)) < n_max {
        k += 1;
    }
    k
}

/// Marker sets for every verifiable order, with `D = C + 1` and `C` the
/// index's measured slope.
pub fn build_marker_family(index: &FactorIndex) -> Result<MarkerFamily, PeriodicityError> {
    let (c, _) = index.slope_constants();
    build_marker_family_with_d(index, c + 1)
}

pub fn build_marker_family_with_d(
    index: &FactorIndex,
    d: u64,
) -> Result<MarkerFamily, PeriodicityError> {
    let (c, _) = index.slope_constants();
    let top = max_verifiable_order(index.n_max(), d);
    if top == 0 {
        return Err(PeriodicityError::OrderOutOfRange {
            len: 2,
            d,
            n_max: index.n_max(),
        });
    }
    let sets = (1..=top)
        .map(|k| build_markers_with_d(index, k, d))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MarkerFamily { c, d, sets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordspec::parse_word_spec;
    use proptest::prelude::*;

    fn brute_period(w: &[u8]) -> usize {
        (1..=w.len())
            .find(|&p| (0..w.len() - p).all(|i| w[i] == w[i + p]))
            .unwrap()
    }

    fn word(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn small_periods() {
        assert_eq!(
            minimal_period(&word("0101")).unwrap(),
            (2, vec![0, 1].into())
        );
        let aabaa: Vec<u8> = "aabaa".bytes().map(|b| b - b'a').collect();
        assert_eq!(minimal_period(&aabaa).unwrap(), (3, vec![0, 0, 1].into()));
        assert_eq!(minimal_period(&word("0110")).unwrap().0, 3);
        assert_eq!(minimal_period(&[]), Err(PeriodicityError::EmptyWord));
    }

    #[test]
    fn exhaustive_binary_words_agree_with_brute_force() {
        for len in 1..=16usize {
            for bits in 0u32..(1 << len) {
                let w: Vec<u8> = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
                assert_eq!(minimal_period(&w).unwrap().0, brute_period(&w));
            }
        }
    }

    proptest! {
        #[test]
        fn periods_agree_beyond_sixteen(w in proptest::collection::vec(0u8..2, 17..200)) {
            prop_assert_eq!(minimal_period(&w).unwrap().0, brute_period(&w));
        }
    }

    #[test]
    fn classification_examples() {
        let c = classify_occurrence(&word("010101010"), 0, 4).unwrap();
        assert!(c.is_internal());
        // Only the p letters after the occurrence are compared.
        let c = classify_occurrence(&word("0101011"), 0, 4).unwrap();
        assert!(c.is_internal());
        let c = classify_occurrence(&word("010100"), 0, 4).unwrap();
        assert_eq!(c.label(), "final");
        let c = classify_occurrence(&word("11010101"), 2, 4).unwrap();
        assert_eq!(c.label(), "initial");
        let c = classify_occurrence(&word("11010100"), 2, 4).unwrap();
        assert_eq!(c.label(), "initial+final");
        assert!(matches!(
            classify_occurrence(&word("010101"), 2, 4),
            Err(PeriodicityError::InsufficientRightContext { .. })
        ));
    }

    proptest! {
        #[test]
        fn internal_occurrences_repeat_at_the_period(
            window in proptest::collection::vec(0u8..2, 10..120),
            j in 0usize..60,
            n in 1usize..20,
        ) {
            prop_assume!(j + n <= window.len());
            if let Ok(class) = classify_occurrence(&window, j, n) {
                if class.is_internal() {
                    let (p, _) = minimal_period(&window[j..j + n]).unwrap();
                    prop_assert_eq!(&window[j + p..j + p + n], &window[j..j + n]);
                    if j >= p {
                        prop_assert_eq!(&window[j - p..j - p + n], &window[j..j + n]);
                    }
                }
            }
        }
    }

    fn index(spec: &str, n_max: usize) -> FactorIndex {
        FactorIndex::build(&parse_word_spec(spec).unwrap(), 50 * n_max, n_max).unwrap()
    }

    #[test]
    fn fibonacci_order_one_markers() {
        let idx = index("fib", 64);
        let set = build_markers(&idx, 1, 2).unwrap();
        assert_eq!(set.d, 3);
        assert_eq!(set.cardinality(), 1);
        assert_eq!(idx.render(&set.markers[0]), "10");
        assert!(verify_marker_property(&idx, &set.markers, 2, 3).unwrap());
    }

    #[test]
    fn thue_morse_markers() {
        let idx = index("tm", 128);
        let (c, _) = idx.slope_constants();
        let set = build_markers(&idx, 2, c).unwrap();
        assert!(verify_marker_property(&idx, &set.markers, 4, c + 1).unwrap());
        assert!(!verify_marker_property(&idx, &[], 4, c + 1).unwrap());
        assert!(verify_marker_property(&idx, &[], 100, 2).is_err());
    }

    #[test]
    fn periodic_source_has_no_markers() {
        let idx = index("ultper:|0", 32);
        assert!(matches!(
            build_markers(&idx, 1, 1),
            Err(PeriodicityError::MarkerPropertyViolation { .. })
        ));
    }

    #[test]
    fn verifiable_orders() {
        assert_eq!(max_verifiable_order(128, 4), 5);
        assert_eq!(max_verifiable_order(128, 5), 4);
        assert_eq!(max_verifiable_order(5, 3), 0);
    }
}
