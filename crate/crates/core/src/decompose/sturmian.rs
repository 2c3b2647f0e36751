use super::{DecomposeError, LeveledLanguage};
use crate::factors::FactorIndex;
use crate::words::FiniteWord;

/// `S1 = {v a : v right special} ∪ {ε}` and `S2 = {a v : v left special} ∪ {ε}`,
/// for special factors of lengths `0..n_max` (the empty word counts as special).
pub fn sturmian_st(
    index: &FactorIndex,
) -> Result<(LeveledLanguage, LeveledLanguage), DecomposeError> {
    let n_max = index.n_max();
    for n in 1..=n_max {
        let p = index.complexity(n)?;
        if p != n as u64 + 1 {
            return Err(DecomposeError::NotSturmian { n, p });
        }
    }
    let letters: Vec<u8> = index.factors(1)?.map(|f| f[0]).collect();
    let mut s1 = LeveledLanguage::with_epsilon();
    let mut s2 = LeveledLanguage::with_epsilon();
    for &a in &letters {
        s1.insert(&[a]);
        s2.insert(&[a]);
    }
    for n in 1..n_max {
        for v in index.right_special(n)? {
            for &a in &letters {
                s1.insert(&v.concat(&[a]));
            }
        }
        for v in index.left_special(n)? {
            for &a in &letters {
                s2.insert(&FiniteWord::new(vec![a]).concat(&v));
            }
        }
    }
    Ok((s1, s2))
}
