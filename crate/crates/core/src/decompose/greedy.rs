//! Greedy two-set decomposition of a language with linearly bounded
//! accumulative complexity.
//!
//! Words are taken by nondecreasing length. Each word is split where the
//! fewest new pieces are needed, leftmost first; a piece may be added to a
//! set only while that set holds at most `2K` words of the piece's length, so
//! no length ever exceeds `2K + 1` words.

use super::{DecomposeError, LeveledLanguage};
use crate::words::FiniteWord;

#[derive(Debug, Clone)]
pub struct GreedyOutcome {
    pub s: LeveledLanguage,
    pub t: LeveledLanguage,
    /// Chosen cut for each word of the input, in processing order.
    pub cuts: Vec<(FiniteWord, usize)>,
    /// `(max |S ∩ Σ^n|, max |T ∩ Σ^n|)` after each word, empty word included.
    pub load_history: Vec<(usize, usize)>,
}

fn max_load(l: &LeveledLanguage) -> usize {
    l.max_count().max(l.count(0))
}

pub fn greedy_two_sets(
    language: &LeveledLanguage,
    k: u64,
) -> Result<GreedyOutcome, DecomposeError> {
    let room = 2 * k as usize;
    let mut s = LeveledLanguage::new();
    let mut t = LeveledLanguage::new();
    let mut cuts = Vec::new();
    let mut load_history = Vec::new();
    for (step, v) in language.words().enumerate() {
        let mut best: Option<(usize, usize)> = None;
        for c in 0..=v.len() {
            let (head, tail) = v.split_at(c);
            let s_in = s.contains(head);
            let t_in = t.contains(tail);
            if (s_in || s.count(head.len()) <= room) && (t_in || t.count(tail.len()) <= room) {
                let cost = usize::from(!s_in) + usize::from(!t_in);
                if best.is_none_or(|(b, _)| cost < b) {
                    best = Some((cost, c));
                    if cost == 0 {
                        break;
                    }
                }
            }
        }
        let (_, c) = best.ok_or_else(|| DecomposeError::NoFeasibleSplit {
            word: FiniteWord::from(v),
            step,
        })?;
        let (head, tail) = v.split_at(c);
        s.insert(head);
        t.insert(tail);
        cuts.push((FiniteWord::from(v), c));
        load_history.push((max_load(&s), max_load(&t)));
    }
    Ok(GreedyOutcome {
        s,
        t,
        cuts,
        load_history,
    })
}

/// Applies [`greedy_two_sets`] to each factor language of a product, giving
/// `2 k` sets whose product (in order) contains the original product.
pub fn refine_decomposition(
    parts: &[LeveledLanguage],
    ks: &[u64],
) -> Result<Vec<LeveledLanguage>, DecomposeError> {
    if parts.len() != ks.len() {
        return Err(DecomposeError::PreconditionViolation(format!(
            "{} parts but {} constants",
            parts.len(),
            ks.len()
        )));
    }
    let mut out = Vec::with_capacity(2 * parts.len());
    for (part, &k) in parts.iter().zip(ks) {
        let g = greedy_two_sets(part, k)?;
        out.push(g.s);
        out.push(g.t);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::covers;
    use crate::words::WordSource;

    fn prefixes(source: &WordSource, n_max: usize) -> LeveledLanguage {
        let w = source.prefix(n_max).unwrap();
        (1..=n_max).map(|n| &w[..n]).collect()
    }

    #[test]
    fn thue_morse_prefixes_with_k_one() {
        let lang = prefixes(&WordSource::thue_morse(), 64);
        assert!(lang.accumulative_bound_holds(1));
        let g = greedy_two_sets(&lang, 1).unwrap();
        assert!(g.load_history.iter().all(|&(a, b)| a <= 3 && b <= 3));
        for v in lang.words() {
            assert!(covers(&g.s, &g.t, v));
        }
        for (v, c) in &g.cuts {
            assert!(g.s.contains(&v[..*c]) && g.t.contains(&v[*c..]));
        }
    }

    #[test]
    fn epsilon_only() {
        let g = greedy_two_sets(&LeveledLanguage::with_epsilon(), 1).unwrap();
        assert!(g.s.includes_epsilon() && g.t.includes_epsilon());
        assert_eq!(g.s.len() + g.t.len(), 2);
    }

    fn all_words(max_len: usize) -> LeveledLanguage {
        let mut lang = LeveledLanguage::new();
        for len in 1..=max_len {
            for bits in 0u32..(1 << len) {
                let w: Vec<u8> = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
                lang.insert(&w);
            }
        }
        lang
    }

    #[test]
    fn dense_language_fails() {
        // 2^6 words of length 6 exceed what two sets of at most 3 words per
        // length can produce: 1*3 + 5*9 + 3*1 = 51.
        let lang = all_words(6);
        assert!(!lang.accumulative_bound_holds(1));
        assert!(matches!(
            greedy_two_sets(&lang, 1),
            Err(DecomposeError::NoFeasibleSplit { .. })
        ));
    }

    #[test]
    fn refine_two_parts() {
        let a = prefixes(&WordSource::thue_morse(), 32);
        let b = prefixes(&WordSource::fibonacci(), 32);
        let sets = refine_decomposition(&[a.clone(), b.clone()], &[1, 1]).unwrap();
        assert_eq!(sets.len(), 4);
        assert!(sets.iter().all(|s| s.max_count().max(s.count(0)) <= 3));
        for x in a.words() {
            for y in b.words() {
                let v = [x, y].concat();
                let covered = (0..=x.len())
                    .any(|c| sets[0].contains(&x[..c]) && sets[1].contains(&x[c..]))
                    && (0..=y.len())
                        .any(|c| sets[2].contains(&y[..c]) && sets[3].contains(&y[c..]));
                assert!(covered, "{v:?}");
            }
        }
        assert!(refine_decomposition(std::slice::from_ref(&a), &[1, 2]).is_err());
        assert!(refine_decomposition(&[a, all_words(6)], &[1, 1]).is_err());
    }
}
