//! The suffix/prefix decomposition of the Thue–Morse word.
//!
//! `S1` holds the suffixes of the blocks `φ^r(0)` and `φ^r(1)`, `S2` their
//! prefixes. A factor occurring at `[i, i + n)` is cut at the interior
//! boundary of largest 2-adic valuation: the left part is then a suffix of
//! the aligned block ending there, the right part a prefix of the next one.

use super::{DecomposeError, LeveledLanguage, SplitRecord};
use crate::factors::FactorIndex;
use crate::words::{Letter, Morphism};

#[derive(Debug, Clone)]
pub struct ThueMorseDecomposition {
    pub n_max: usize,
    pub s1: LeveledLanguage,
    pub s2: LeveledLanguage,
}

/// `S1` and `S2` restricted to lengths `0..=n_max`.
pub fn thue_morse_st(n_max: usize) -> ThueMorseDecomposition {
    let phi = Morphism::thue_morse();
    let mut blocks: Vec<[Vec<Letter>; 2]> = vec![[vec![0], vec![1]]];
    while blocks.last().expect("nonempty")[0].len() < 2 * n_max.max(1) {
        let [a, b] = blocks.last().expect("nonempty");
        blocks.push([phi.apply(a).into_letters(), phi.apply(b).into_letters()]);
    }
    let mut s1 = LeveledLanguage::with_epsilon();
    let mut s2 = LeveledLanguage::with_epsilon();
    for block in blocks.iter().flatten() {
        for m in 1..=block.len().min(n_max) {
            s1.insert(&block[block.len() - m..]);
            s2.insert(&block[..m]);
        }
    }
    ThueMorseDecomposition { n_max, s1, s2 }
}

/// Boundary (as a window offset) for the occurrence `[i, i + n)`: the interior
/// position with the most trailing zeros, or `i + n` when `n <= 1`.
pub fn thue_morse_cut(i: usize, n: usize) -> usize {
    ((i + 1)..(i + n))
        .max_by_key(|m| m.trailing_zeros())
        .unwrap_or(i + n)
}

impl ThueMorseDecomposition {
    /// Cuts the first occurrence of `v` in the index window.
    pub fn cut(&self, index: &FactorIndex, v: &[Letter]) -> Result<SplitRecord, DecomposeError> {
        let i = index
            .first_occurrence(v)
            .ok_or_else(|| DecomposeError::NotAFactor(index.render(v)))?;
        let c = thue_morse_cut(i, v.len()) - i;
        Ok(SplitRecord {
            v: v.into(),
            s: v[..c].into(),
            t: v[c..].into(),
            order: None,
            position: i,
            class: None,
        })
    }

    pub fn cut_all(&self, index: &FactorIndex) -> Result<Vec<SplitRecord>, DecomposeError> {
        index.all_factors().map(|v| self.cut(index, v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::WordSource;

    #[test]
    fn two_words_per_length() {
        let d = thue_morse_st(128);
        for m in 1..=128 {
            assert_eq!(d.s1.count(m), 2, "S1 length {m}");
            assert_eq!(d.s2.count(m), 2, "S2 length {m}");
        }
        assert_eq!(d.s1.count(129), 0);
    }

    #[test]
    fn cut_of_eleven() {
        let idx = FactorIndex::build(&WordSource::thue_morse(), 3200, 64).unwrap();
        let d = thue_morse_st(64);
        let rec = d.cut(&idx, &[1, 1]).unwrap();
        assert_eq!(rec.position, 1);
        assert_eq!((rec.s.letters(), rec.t.letters()), (&[1u8][..], &[1u8][..]));
        let rec = d.cut(&idx, &[0]).unwrap();
        assert_eq!((rec.s.letters(), rec.t.letters()), (&[0u8][..], &[][..]));
    }

    #[test]
    fn cut_rule() {
        assert_eq!(thue_morse_cut(1, 2), 2);
        assert_eq!(thue_morse_cut(5, 1), 6);
        assert_eq!(thue_morse_cut(3, 10), 8);
        assert_eq!(thue_morse_cut(0, 2), 1);
    }

    #[test]
    fn cuts_land_in_the_sets() {
        let idx = FactorIndex::build(&WordSource::thue_morse(), 6400, 128).unwrap();
        let d = thue_morse_st(128);
        for rec in d.cut_all(&idx).unwrap() {
            assert!(d.s1.contains(&rec.s), "{rec:?}");
            assert!(d.s2.contains(&rec.t), "{rec:?}");
        }
    }
}
