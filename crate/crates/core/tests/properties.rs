use std::collections::{BTreeSet, HashSet};

use facdecomp::decompose::{covers, greedy_two_sets, LeveledLanguage};
use facdecomp::periodicity::{classify_occurrence, minimal_period};
use facdecomp::words::Directive;
use facdecomp::{parse_word_spec, ComplexityProfile, FactorIndex};
use proptest::prelude::*;

fn brute_factors(w: &[u8], n: usize) -> BTreeSet<Vec<u8>> {
    w.windows(n).map(<[u8]>::to_vec).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn index_matches_brute_force(w in proptest::collection::vec(0u8..3, 8..200), n_max in 1usize..4) {
        let idx = FactorIndex::from_text("t".into(), facdecomp::Alphabet::new(vec!['a', 'b', 'c']), w.clone(), n_max);
        for n in 1..=n_max {
            let got: BTreeSet<Vec<u8>> = idx.factors(n).unwrap().map(<[u8]>::to_vec).collect();
            prop_assert_eq!(got, brute_factors(&w, n));
            for f in idx.factors(n).unwrap() {
                let occ: Vec<usize> = (0..=w.len() - n).filter(|&i| &w[i..i + n] == f).collect();
                prop_assert_eq!(idx.occurrences(f), occ);
            }
        }
    }

    #[test]
    fn sturmian_prefixes_have_n_plus_one(head in proptest::collection::vec(1u32..4, 0..3), period in proptest::collection::vec(1u32..4, 1..3)) {
        let d = Directive::new(head, period).unwrap();
        let src = facdecomp::words::sturmian_characteristic(d);
        let w = src.prefix(6000).unwrap();
        let prof = ComplexityProfile::of_text(&w, 24);
        for n in 1..=24 {
            prop_assert_eq!(prof.p(n).unwrap(), n as u64 + 1);
        }
    }

    #[test]
    fn period_is_a_period(w in proptest::collection::vec(0u8..2, 1..40)) {
        let (p, prefix) = minimal_period(&w).unwrap();
        prop_assert!((p..w.len()).all(|i| w[i] == w[i - p]));
        prop_assert_eq!(&prefix[..], &w[..p]);
    }

    #[test]
    fn greedy_never_exceeds_cap(seed in proptest::collection::vec(0u8..2, 40..80)) {
        // The prefixes of any word have g(n) = n.
        let lang: LeveledLanguage = (1..=seed.len()).map(|n| &seed[..n]).collect();
        let g = greedy_two_sets(&lang, 1).unwrap();
        prop_assert!(g.load_history.iter().all(|&(s, t)| s <= 3 && t <= 3));
        for v in lang.words() {
            prop_assert!(covers(&g.s, &g.t, v));
        }
    }

    #[test]
    fn language_jsonl_round_trip(words in proptest::collection::vec(proptest::collection::vec(0u8..2, 0..8), 0..20)) {
        let lang: LeveledLanguage = words.iter().map(Vec::as_slice).collect();
        let ab = facdecomp::Alphabet::binary_digits();
        let text = lang.to_jsonl(&ab, "S");
        let back = LeveledLanguage::from_jsonl(&text, &ab).unwrap();
        prop_assert_eq!(back.to_jsonl(&ab, "S"), text);
        let distinct: HashSet<&Vec<u8>> = words.iter().collect();
        prop_assert_eq!(back.len(), distinct.len());
    }
}

#[test]
fn occurrence_classes_partition_thue_morse_windows() {
    let idx = FactorIndex::build(&parse_word_spec("tm").unwrap(), 1600, 32).unwrap();
    let w = idx.window();
    for n in [2usize, 4, 8] {
        for f in idx.factors(n).unwrap() {
            for j in idx.occurrences(f) {
                if let Ok(c) = classify_occurrence(w, j, n) {
                    assert_eq!(c.is_internal(), !c.is_extreme());
                }
            }
        }
    }
}
