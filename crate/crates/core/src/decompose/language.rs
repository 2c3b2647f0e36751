use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::DecomposeError;
use crate::words::{Alphabet, FiniteWord, Letter};

/// A language stored per word length.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LeveledLanguage {
    by_length: BTreeMap<usize, BTreeSet<FiniteWord>>,
    includes_epsilon: bool,
}

#[derive(Serialize, Deserialize)]
struct SetRecord {
    len: usize,
    word: String,
    set: String,
}

impl LeveledLanguage {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_epsilon() -> Self {
        LeveledLanguage {
            includes_epsilon: true,
            ..Self::default()
        }
    }

    /// Inserts `w`; returns false if it was already present.
    pub fn insert(&mut self, w: &[Letter]) -> bool {
        if w.is_empty() {
            return !std::mem::replace(&mut self.includes_epsilon, true);
        }
        self.by_length
            .entry(w.len())
            .or_default()
            .insert(FiniteWord::from(w))
    }

    pub fn remove(&mut self, w: &[Letter]) -> bool {
        if w.is_empty() {
            return std::mem::replace(&mut self.includes_epsilon, false);
        }
        let Some(level) = self.by_length.get_mut(&w.len()) else {
            return false;
        };
        let removed = level.remove(w);
        if level.is_empty() {
            self.by_length.remove(&w.len());
        }
        removed
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        if w.is_empty() {
            return self.includes_epsilon;
        }
        self.by_length.get(&w.len()).is_some_and(|l| l.contains(w))
    }

    pub fn includes_epsilon(&self) -> bool {
        self.includes_epsilon
    }

    /// Number of words of length `n` (`p_L(n)`); length 0 counts the empty word.
    pub fn count(&self, n: usize) -> usize {
        if n == 0 {
            return usize::from(self.includes_epsilon);
        }
        self.by_length.get(&n).map_or(0, BTreeSet::len)
    }

    /// `g_L(n)`: number of words of lengths `1..=n`.
    pub fn accumulative(&self, n: usize) -> usize {
        self.by_length.range(1..=n).map(|(_, l)| l.len()).sum()
    }

    /// Largest per-length count over nonempty lengths.
    pub fn max_count(&self) -> usize {
        self.by_length
            .values()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0)
    }

    /// Per-length counts for lengths `0..=n_max`.
    pub fn counts_up_to(&self, n_max: usize) -> Vec<usize> {
        (0..=n_max).map(|n| self.count(n)).collect()
    }

    pub fn max_len(&self) -> usize {
        self.by_length.keys().next_back().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        usize::from(self.includes_epsilon)
            + self.by_length.values().map(BTreeSet::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Words ordered by length, then lexicographically; the empty word first.
    pub fn words(&self) -> impl Iterator<Item = &[Letter]> + '_ {
        let eps: &[Letter] = &[];
        self.includes_epsilon.then_some(eps).into_iter().chain(
            self.by_length
                .values()
                .flat_map(|l| l.iter().map(|w| w.letters())),
        )
    }

    pub fn level(&self, n: usize) -> impl Iterator<Item = &FiniteWord> + '_ {
        self.by_length.get(&n).into_iter().flat_map(|l| l.iter())
    }

    /// `g_L(n) <= k n` for every length `n` up to the longest word.
    pub fn accumulative_bound_holds(&self, k: u64) -> bool {
        let mut acc = 0u64;
        (1..=self.max_len()).all(|n| {
            acc += self.count(n) as u64;
            acc <= k * n as u64
        })
    }

    /// JSONL records `{"len":…,"word":"…","set":"…"}` sorted by length then word.
    pub fn to_jsonl(&self, alphabet: &Alphabet, set_name: &str) -> String {
        let mut rows: Vec<(usize, String)> = self
            .words()
            .map(|w| (w.len(), alphabet.render(w)))
            .collect();
        rows.sort();
        let mut out = String::new();
        for (len, word) in rows {
            let rec = SetRecord {
                len,
                word,
                set: set_name.to_string(),
            };
            out.push_str(&serde_json::to_string(&rec).expect("plain struct"));
            out.push('\n');
        }
        out
    }

    /// Parses JSONL produced by [`LeveledLanguage::to_jsonl`]. Blank lines are skipped.
    pub fn from_jsonl(text: &str, alphabet: &Alphabet) -> Result<Self, DecomposeError> {
        let mut lang = LeveledLanguage::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |reason: String| DecomposeError::SetFormat {
                line: i + 1,
                reason,
            };
            let rec: SetRecord = serde_json::from_str(line).map_err(|e| bad(e.to_string()))?;
            let w = alphabet.parse(&rec.word).ok_or_else(|| {
                bad(format!(
                    "word `{}` uses letters outside the alphabet",
                    rec.word
                ))
            })?;
            if w.len() != rec.len {
                return Err(bad(format!(
                    "len {} does not match word `{}`",
                    rec.len, rec.word
                )));
            }
            lang.insert(&w);
        }
        Ok(lang)
    }
}

impl<'a> FromIterator<&'a [Letter]> for LeveledLanguage {
    fn from_iter<I: IntoIterator<Item = &'a [Letter]>>(iter: I) -> Self {
        let mut lang = LeveledLanguage::new();
        for w in iter {
            lang.insert(w);
        }
        lang
    }
}
