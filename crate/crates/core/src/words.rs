//! Generators for prefixes of infinite words.
//!
//! Every source is a pure description: `letter_at(i)` and `prefix(n)` are
//! functions of the parameters alone. Positions are 0-based; the usual
//! 1-based inclusive notation `u[i..j]` translates to the slice
//! `u[i - 1..j]`.

use std::fmt;
use std::ops::Deref;

use thiserror::Error;

/// A letter is an index into the alphabet of its source.
pub type Letter = u8;

/// Default cap on generated prefix lengths.
pub const DEFAULT_PREFIX_CAP: usize = 1 << 24;

/// Number of arguments sampled when checking monotonicity of growth functions.
const GROWTH_SAMPLE: u64 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("morphism is not prolongable on its start letter: {0}")]
    NotProlongable(String),
    #[error("fixed point is finite ({0} letters)")]
    FiniteFixedPoint(usize),
    #[error("invalid directive: {0}")]
    InvalidDirective(String),
    #[error("invalid growth function: {0}")]
    InvalidGrowth(String),
    #[error("invalid periodic word: {0}")]
    InvalidPeriodic(String),
    #[error("requested prefix of {requested} letters exceeds the cap of {cap}")]
    ResourceLimit { requested: usize, cap: usize },
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },
}

/// A finite word over letter indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteWord(Vec<Letter>);

impl FiniteWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FiniteWord(letters)
    }

    pub fn empty() -> Self {
        FiniteWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &[Letter]) -> FiniteWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        FiniteWord(v)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.render(&self.0)
    }
}

impl Deref for FiniteWord {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for FiniteWord {
    fn from(v: Vec<Letter>) -> Self {
        FiniteWord(v)
    }
}

impl From<&[Letter]> for FiniteWord {
    fn from(v: &[Letter]) -> Self {
        FiniteWord(v.to_vec())
    }
}

impl std::borrow::Borrow<[Letter]> for FiniteWord {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

/// Rendering map from letter indices to characters. Characters are kept in
/// ascending order so that rendered strings sort like letter sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet(Vec<char>);

impl Alphabet {
    pub fn new(mut chars: Vec<char>) -> Self {
        chars.sort_unstable();
        chars.dedup();
        assert!(chars.len() <= 255, "alphabet larger than 255 letters");
        Alphabet(chars)
    }

    pub fn binary_digits() -> Self {
        Alphabet(vec!['0', '1'])
    }

    pub fn ab() -> Self {
        Alphabet(vec!['a', 'b'])
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn chars(&self) -> &[char] {
        &self.0
    }

    pub fn letter_of(&self, c: char) -> Option<Letter> {
        self.0.iter().position(|&x| x == c).map(|i| i as Letter)
    }

    pub fn char_of(&self, l: Letter) -> char {
        self.0[l as usize]
    }

    pub fn render(&self, letters: &[Letter]) -> String {
        letters.iter().map(|&l| self.char_of(l)).collect()
    }

    pub fn parse(&self, s: &str) -> Option<FiniteWord> {
        s.chars()
            .map(|c| self.letter_of(c))
            .collect::<Option<Vec<_>>>()
            .map(FiniteWord)
    }
}

/// A substitution on letter indices together with the letter it is iterated on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<FiniteWord>,
    start: Letter,
}

impl Morphism {
    pub fn new(images: Vec<FiniteWord>, start: Letter) -> Result<Self, WordError> {
        let size = images.len();
        if (start as usize) >= size {
            return Err(WordError::NotProlongable(format!(
                "start letter {start} outside an alphabet of {size}"
            )));
        }
        if let Some(bad) = images
            .iter()
            .flat_map(|img| img.iter())
            .find(|&&l| (l as usize) >= size)
        {
            return Err(WordError::NotProlongable(format!(
                "image letter {bad} outside an alphabet of {size}"
            )));
        }
        let img = &images[start as usize];
        if img.len() < 2 || img[0] != start {
            return Err(WordError::NotProlongable(format!(
                "image of the start letter has length {} and {} with it",
                img.len(),
                if img.first() == Some(&start) {
                    "begins"
                } else {
                    "does not begin"
                }
            )));
        }
        Ok(Morphism { images, start })
    }

    pub fn thue_morse() -> Self {
        Morphism::new(vec![vec![0, 1].into(), vec![1, 0].into()], 0).expect("valid morphism")
    }

    pub fn image(&self, l: Letter) -> &FiniteWord {
        &self.images[l as usize]
    }

    pub fn images(&self) -> &[FiniteWord] {
        &self.images
    }

    pub fn start(&self) -> Letter {
        self.start
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, w: &[Letter]) -> FiniteWord {
        let mut out = Vec::new();
        for &l in w {
            out.extend_from_slice(self.image(l));
        }
        FiniteWord(out)
    }
}

/// Integer growth function used by the block-product word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthFn {
    /// floor(sqrt(n))
    Isqrt,
    /// floor(cbrt(n))
    Icbrt,
    /// floor(log2(n)) + 1
    Log2,
    /// mul * n + add
    Affine { mul: u64, add: i64 },
}

impl GrowthFn {
    pub fn eval(&self, n: u64) -> u64 {
        match *self {
            GrowthFn::Isqrt => isqrt(n),
            GrowthFn::Icbrt => icbrt(n),
            GrowthFn::Log2 => {
                if n == 0 {
                    0
                } else {
                    64 - u64::from(n.leading_zeros())
                }
            }
            GrowthFn::Affine { mul, add } => {
                let v = i128::from(mul) * i128::from(n) + i128::from(add);
                v.clamp(0, i128::from(u64::MAX)) as u64
            }
        }
    }

    /// Checks `f(1) >= 1`, `f(n) <= n`, monotonicity and growth on sampled arguments.
    pub fn validate(&self) -> Result<(), WordError> {
        if self.eval(1) < 1 {
            return Err(WordError::InvalidGrowth(format!(
                "f(1) = {} < 1",
                self.eval(1)
            )));
        }
        let mut prev = self.eval(1);
        for n in 1..=GROWTH_SAMPLE {
            let v = self.eval(n);
            if v > n {
                return Err(WordError::InvalidGrowth(format!("f({n}) = {v} > {n}")));
            }
            if v < prev {
                return Err(WordError::InvalidGrowth(format!("f decreases at {n}")));
            }
            prev = v;
        }
        if self.eval(GROWTH_SAMPLE) <= self.eval(1) {
            return Err(WordError::InvalidGrowth(
                "f does not grow on the sampled range".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for GrowthFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GrowthFn::Isqrt => write!(f, "isqrt"),
            GrowthFn::Icbrt => write!(f, "icbrt"),
            GrowthFn::Log2 => write!(f, "log2"),
            GrowthFn::Affine { mul, add } => {
                let lead = match mul {
                    0 => String::new(),
                    1 => "n".to_string(),
                    m => format!("{m}n"),
                };
                match (lead.is_empty(), add) {
                    (true, a) => write!(f, "{a}"),
                    (false, 0) => write!(f, "{lead}"),
                    (false, a) if a > 0 => write!(f, "{lead}+{a}"),
                    (false, a) => write!(f, "{lead}{a}"),
                }
            }
        }
    }
}

/// Exponent function k(p, q) of the block-product word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentFn {
    /// k(p, q) = mul * p
    P { mul: u64 },
    /// k(p, q) = p + q
    PPlusQ,
    /// k(p, q) = c
    Const(u64),
}

impl ExponentFn {
    pub fn eval(&self, p: u64, q: u64) -> u64 {
        match *self {
            ExponentFn::P { mul } => mul * p,
            ExponentFn::PPlusQ => p + q,
            ExponentFn::Const(c) => c,
        }
    }

    /// Checks `k(p,q) <= k(p,q+1)` and `k(p,f(p)) <= k(p+1,1)` on sampled arguments.
    pub fn validate(&self, f: &GrowthFn) -> Result<(), WordError> {
        for p in 1..=256u64 {
            let fp = f.eval(p);
            for q in 1..fp {
                if self.eval(p, q) > self.eval(p, q + 1) {
                    return Err(WordError::InvalidGrowth(format!(
                        "k({p},{q}) > k({p},{})",
                        q + 1
                    )));
                }
            }
            if self.eval(p, fp) > self.eval(p + 1, 1) {
                return Err(WordError::InvalidGrowth(format!(
                    "k({p},f({p})) > k({},1)",
                    p + 1
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ExponentFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExponentFn::P { mul: 1 } => write!(f, "p"),
            ExponentFn::P { mul } => write!(f, "{mul}p"),
            ExponentFn::PPlusQ => write!(f, "p+q"),
            ExponentFn::Const(c) => write!(f, "{c}"),
        }
    }
}

/// An eventually periodic sequence of positive integers: `head` then `period` forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Directive {
    head: Vec<u32>,
    period: Vec<u32>,
}

impl Directive {
    pub fn new(head: Vec<u32>, period: Vec<u32>) -> Result<Self, WordError> {
        if period.is_empty() {
            return Err(WordError::InvalidDirective("empty periodic part".into()));
        }
        if let Some(z) = head.iter().chain(&period).find(|&&a| a == 0) {
            return Err(WordError::InvalidDirective(format!(
                "entry {z} is not positive"
            )));
        }
        Ok(Directive { head, period })
    }

    pub fn all_ones() -> Self {
        Directive {
            head: vec![],
            period: vec![1],
        }
    }

    /// The 1-based entry `a_n`.
    pub fn entry(&self, n: usize) -> u32 {
        assert!(n >= 1);
        let i = n - 1;
        if i < self.head.len() {
            self.head[i]
        } else {
            self.period[(i - self.head.len()) % self.period.len()]
        }
    }
}

impl fmt::Display for Directive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.head {
            write!(f, "{a},")?;
        }
        let p: Vec<String> = self.period.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", p.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceKind {
    MorphicFixedPoint(Morphism),
    SturmianCharacteristic(Directive),
    UltimatelyPeriodic {
        preperiod: FiniteWord,
        period: FiniteWord,
    },
    AbkProduct,
    PqBlockProduct {
        f: GrowthFn,
        k: ExponentFn,
    },
}

/// Deterministic generator of prefixes of one infinite word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSource {
    kind: SourceKind,
    alphabet: Alphabet,
    cap: usize,
    name: String,
}

impl WordSource {
    fn with(kind: SourceKind, alphabet: Alphabet, name: String) -> Self {
        WordSource {
            kind,
            alphabet,
            cap: DEFAULT_PREFIX_CAP,
            name,
        }
    }

    pub fn thue_morse() -> Self {
        let mut s = fixed_point(Morphism::thue_morse(), Alphabet::binary_digits())
            .expect("Thue-Morse morphism is prolongable");
        s.name = "tm".into();
        s
    }

    pub fn fibonacci() -> Self {
        let mut s = sturmian_characteristic(Directive::all_ones());
        s.name = "fib".into();
        s
    }

    /// The word `a b a b b a b b b ...`: product over k >= 1 of `a b^k`.
    pub fn abk() -> Self {
        WordSource::with(SourceKind::AbkProduct, Alphabet::ab(), "abk".into())
    }

    pub fn ultimately_periodic(
        preperiod: FiniteWord,
        period: FiniteWord,
        alphabet: Alphabet,
    ) -> Result<Self, WordError> {
        if period.is_empty() {
            return Err(WordError::InvalidPeriodic("period must be nonempty".into()));
        }
        let name = format!(
            "ultper:{}|{}",
            preperiod.render(&alphabet),
            period.render(&alphabet)
        );
        Ok(WordSource::with(
            SourceKind::UltimatelyPeriodic { preperiod, period },
            alphabet,
            name,
        ))
    }

    pub fn kind(&self) -> &SourceKind {
        &self.kind
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Canonical word-spec string.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        match &self.kind {
            SourceKind::UltimatelyPeriodic { preperiod, period } => {
                if i < preperiod.len() {
                    preperiod[i]
                } else {
                    period[(i - preperiod.len()) % period.len()]
                }
            }
            SourceKind::AbkProduct => abk_letter(i as u64),
            _ => self.generate(i + 1)[i],
        }
    }

    pub fn prefix(&self, n: usize) -> Result<FiniteWord, WordError> {
        if n > self.cap {
            return Err(WordError::ResourceLimit {
                requested: n,
                cap: self.cap,
            });
        }
        if let SourceKind::MorphicFixedPoint(m) = &self.kind {
            return morphic_prefix(m, n).map(FiniteWord);
        }
        Ok(FiniteWord(self.generate(n)))
    }

    /// Generates `n` letters for the total constructions.
    fn generate(&self, n: usize) -> Vec<Letter> {
        match &self.kind {
            SourceKind::MorphicFixedPoint(m) => {
                morphic_prefix(m, n).expect("fixed point checked infinite at construction")
            }
            SourceKind::SturmianCharacteristic(d) => sturmian_prefix(d, n),
            SourceKind::UltimatelyPeriodic { .. } => (0..n).map(|i| self.letter_at(i)).collect(),
            SourceKind::AbkProduct => {
                let mut out = Vec::with_capacity(n);
                let mut k = 1usize;
                while out.len() < n {
                    out.push(0);
                    out.extend(std::iter::repeat_n(1, k));
                    k += 1;
                }
                out.truncate(n);
                out
            }
            SourceKind::PqBlockProduct { f, k } => pq_prefix(f, k, n),
        }
    }
}

impl fmt::Display for WordSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn abk_letter(i: u64) -> Letter {
    // Block k starts at offset (k-1)(k+2)/2.
    let mut k = (isqrt(2 * i + 2)).max(1);
    while (k - 1) * (k + 2) / 2 > i {
        k -= 1;
    }
    while k * (k + 3) / 2 <= i {
        k += 1;
    }
    if i == (k - 1) * (k + 2) / 2 {
        0
    } else {
        1
    }
}

fn morphic_prefix(m: &Morphism, n: usize) -> Result<Vec<Letter>, WordError> {
    let mut w: Vec<Letter> = m.image(m.start()).to_vec();
    let mut next = 1;
    while w.len() < n {
        if next >= w.len() {
            return Err(WordError::FiniteFixedPoint(w.len()));
        }
        let l = w[next];
        w.extend_from_slice(m.image(l));
        next += 1;
    }
    w.truncate(n);
    Ok(w)
}

/// Standard words `s_{-1} = 1`, `s_0 = 0`, `s_n = s_{n-1}^{a_n} s_{n-2}`.
fn sturmian_prefix(d: &Directive, n: usize) -> Vec<Letter> {
    let mut older: Vec<Letter> = vec![1];
    let mut cur: Vec<Letter> = vec![0];
    let mut step = 1;
    while cur.len() < n {
        let a = d.entry(step) as usize;
        let mut next = Vec::with_capacity(cur.len() * a + older.len());
        for _ in 0..a {
            next.extend_from_slice(&cur);
            if next.len() >= n {
                break;
            }
        }
        if next.len() < n {
            next.extend_from_slice(&older);
        }
        older = cur;
        cur = next;
        step += 1;
    }
    cur.truncate(n);
    cur
}

fn pq_prefix(f: &GrowthFn, k: &ExponentFn, n: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(n);
    let mut p = 1u64;
    'outer: loop {
        for q in 1..=f.eval(p) {
            for _ in 0..k.eval(p, q) {
                out.extend(std::iter::repeat_n(0, p as usize));
                out.extend(std::iter::repeat_n(1, q as usize));
                if out.len() >= n {
                    break 'outer;
                }
            }
        }
        p += 1;
    }
    out.truncate(n);
    out
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn icbrt(n: u64) -> u64 {
    let mut r = (n as f64).cbrt() as u64;
    while r * r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Source for the fixed point of a prolongable morphism.
pub fn fixed_point(m: Morphism, alphabet: Alphabet) -> Result<WordSource, WordError> {
    if alphabet.size() != m.alphabet_size() {
        return Err(WordError::NotProlongable(format!(
            "alphabet has {} letters but the morphism {}",
            alphabet.size(),
            m.alphabet_size()
        )));
    }
    // A fixed point is infinite iff iterating never stalls; one long probe
    // suffices since the generated prefix only grows through images.
    let probe = 1 << 12;
    morphic_prefix(&m, probe)?;
    let rules: Vec<String> = (0..m.alphabet_size())
        .map(|l| {
            format!(
                "{}->{}",
                alphabet.char_of(l as Letter),
                m.image(l as Letter).render(&alphabet)
            )
        })
        .collect();
    let name = format!(
        "morphic:{}@{}",
        rules.join(","),
        alphabet.char_of(m.start())
    );
    Ok(WordSource::with(
        SourceKind::MorphicFixedPoint(m),
        alphabet,
        name,
    ))
}

/// Characteristic Sturmian word of the given directive sequence.
pub fn sturmian_characteristic(d: Directive) -> WordSource {
    let name = format!("sturm:{d}");
    WordSource::with(
        SourceKind::SturmianCharacteristic(d),
        Alphabet::binary_digits(),
        name,
    )
}

/// Product over p >= 1 and 1 <= q <= f(p) of `(a^p b^q)^{k(p,q)}`.
pub fn pq_block_product(f: GrowthFn, k: ExponentFn) -> Result<WordSource, WordError> {
    f.validate()?;
    k.validate(&f)?;
    if k.eval(1, 1) == 0 {
        return Err(WordError::InvalidGrowth("k(1,1) must be positive".into()));
    }
    let name = format!("pq:f={f},k={k}");
    Ok(WordSource::with(
        SourceKind::PqBlockProduct { f, k },
        Alphabet::ab(),
        name,
    ))
}
