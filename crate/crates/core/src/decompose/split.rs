//! Marker-based splitting of factors into a product `S · T`.

use std::fmt::Write as _;

use rayon::prelude::*;

use super::{DecomposeError, LeveledLanguage};
use crate::factors::FactorIndex;
use crate::periodicity::{
    build_marker_family, classify_occurrence, MarkerFamily, OccurrenceClass, PeriodicityError,
};
use crate::words::{FiniteWord, Letter};

/// One factor `v = s t`.
///
/// For factors of length at least `2D`, `order` is the order `k` of the
/// marker cut at its midpoint; `class` is the class of the chosen marker
/// occurrence. `position` is the window position of the occurrence of `v`
/// that was split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitRecord {
    pub v: FiniteWord,
    pub s: FiniteWord,
    pub t: FiniteWord,
    pub order: Option<u32>,
    pub position: usize,
    pub class: Option<OccurrenceClass>,
}

impl SplitRecord {
    /// The marker straddling the cut, when the split used one.
    pub fn marker(&self) -> Option<FiniteWord> {
        let half = 1usize << (self.order? - 1);
        Some(
            self.s[self.s.len() - half..]
                .iter()
                .chain(&self.t[..half])
                .copied()
                .collect::<Vec<_>>()
                .into(),
        )
    }
}

/// `l / (2D) < 2^k <= 2 l`, the range of marker orders that can produce a
/// part of length `l`.
pub fn order_window_holds(l: usize, k: u32, d: u64) -> bool {
    let pow = 1u128 << k;
    let l = l as u128;
    l < 2 * u128::from(d) * pow && pow <= 2 * l
}

/// Upper bound `R (log2 D + 2) [1 + 4 C (2D + 1)]` on the per-length
/// cardinalities of the marker-built `S` and `T`.
pub fn cardinality_bound(r: usize, c: u64, d: u64) -> f64 {
    let (r, c, d) = (r as f64, c as f64, d as f64);
    r * (d.log2() + 2.0) * (1.0 + 4.0 * c * (2.0 * d + 1.0))
}

/// Splits `v` at the midpoint of a marker of the largest order it contains.
///
/// The split uses the first occurrence of `v` in the window, the marker of
/// that order with the leftmost occurrence in `v`, and among the occurrences
/// of that marker inside `v` the first extreme one, or the first internal one
/// when all are internal. Occurrences without enough right context in the
/// window are not classified.
pub fn split_factor(
    index: &FactorIndex,
    markers: &MarkerFamily,
    v: &[Letter],
) -> Result<SplitRecord, DecomposeError> {
    let n = v.len();
    let min_len = 2 * markers.d as usize;
    if n < min_len {
        return Err(DecomposeError::PreconditionViolation(format!(
            "factor of length {n} is shorter than 2D = {min_len}"
        )));
    }
    let i = index
        .first_occurrence(v)
        .ok_or_else(|| DecomposeError::NotAFactor(index.render(v)))?;

    let (order, offset) = markers
        .sets
        .iter()
        .rev()
        .filter(|set| set.len() <= n)
        .find_map(|set| {
            let len = set.len();
            (0..=n - len)
                .find(|&x| set.contains(&v[x..x + len]))
                .map(|x| (set.order, x))
        })
        .ok_or_else(|| DecomposeError::NoMarkerFound(index.render(v)))?;

    let len = 1usize << order;
    let m = &v[offset..offset + len];
    let window = index.window();
    let mut first_internal = None;
    let mut chosen = None;
    for x in offset..=n - len {
        if &v[x..x + len] != m {
            continue;
        }
        match classify_occurrence(window, i + x, len) {
            Ok(class) if class.is_extreme() => {
                chosen = Some((x, class));
                break;
            }
            Ok(class) => {
                first_internal.get_or_insert((x, class));
            }
            Err(PeriodicityError::InsufficientRightContext { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let (x, class) = chosen
        .or(first_internal)
        .ok_or_else(|| DecomposeError::NoClassifiableOccurrence(index.render(v)))?;
    let cut = x + len / 2;
    Ok(SplitRecord {
        v: v.into(),
        s: v[..cut].into(),
        t: v[cut..].into(),
        order: Some(order),
        position: i,
        class: Some(class),
    })
}

/// `S`, `T` and the split of every indexed factor.
#[derive(Debug, Clone)]
pub struct MarkerDecomposition {
    pub s: LeveledLanguage,
    pub t: LeveledLanguage,
    pub records: Vec<SplitRecord>,
}

/// Builds `S` and `T` from the marker splits of every indexed factor.
///
/// Factors shorter than `2D` (and the empty word) go into `S` whole and are
/// paired with the empty word in `T`.
pub fn build_st(
    index: &FactorIndex,
    markers: &MarkerFamily,
) -> Result<MarkerDecomposition, DecomposeError> {
    let min_len = 2 * markers.d as usize;
    let factors: Vec<&[Letter]> = index.all_factors().collect();
    let records = factors
        .par_iter()
        .map(|&v| {
            if v.len() < min_len {
                Ok(SplitRecord {
                    v: v.into(),
                    s: v.into(),
                    t: FiniteWord::empty(),
                    order: None,
                    position: index.first_occurrence(v).expect("indexed factor"),
                    class: None,
                })
            } else {
                split_factor(index, markers, v)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut s = LeveledLanguage::with_epsilon();
    let mut t = LeveledLanguage::with_epsilon();
    for r in &records {
        s.insert(&r.s);
        t.insert(&r.t);
    }
    Ok(MarkerDecomposition { s, t, records })
}

/// The slope `C = max ceil(p(n)/n)` of the index, provided it is already
/// reached on the first half of the length range. A slope still growing at
/// `n_max` is the desk-scale symptom of superlinear complexity.
pub fn linear_slope(index: &FactorIndex) -> Result<u64, DecomposeError> {
    let counts = index.profile().counts();
    let slope = |hi: usize| {
        (1..=hi)
            .map(|n| counts[n - 1].div_ceil(n as u64))
            .max()
            .unwrap_or(0)
    };
    let (half, full) = (slope(index.n_max() / 2), slope(index.n_max()));
    if full > half {
        return Err(DecomposeError::NotLinear {
            half,
            full,
            n_max: index.n_max(),
        });
    }
    Ok(full)
}

/// Linearity check, markers with `D = C + 1`, then [`build_st`].
pub fn marker_decomposition(
    index: &FactorIndex,
) -> Result<(MarkerFamily, MarkerDecomposition), DecomposeError> {
    linear_slope(index)?;
    let family = build_marker_family(index)?;
    let dec = build_st(index, &family)?;
    Ok((family, dec))
}

/// CSV `v,s,t,k,pos,class`; absent fields are left empty.
pub fn records_to_csv(index: &FactorIndex, records: &[SplitRecord]) -> String {
    let mut out = String::from("v,s,t,k,pos,class\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            index.render(&r.v),
            index.render(&r.s),
            index.render(&r.t),
            r.order.map(|k| k.to_string()).unwrap_or_default(),
            r.position,
            r.class.map(|c| c.label()).unwrap_or_default(),
        )
        .expect("writing to a String");
    }
    out
}
