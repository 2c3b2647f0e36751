//! Parser for the word-spec mini-language.
//!
//! ```text
//! spec     := "tm" | "fib" | "abk"
//!           | "sturm:" (int ",")* "(" int ("," int)* ")"
//!           | "morphic:" rule ("," rule)* "@" char
//!           | "ultper:" chars "|" chars
//!           | "pq" [":" opt ("," opt)*]
//! rule     := char "->" chars
//! opt      := "f=" growth | "k=" exponent
//! growth   := "isqrt" | "icbrt" | "log2" | [int] "n" [("+"|"-") int] | int
//! exponent := [int] "p" | "p+q" | int
//! ```
//!
//! Parsed sources print back to their canonical spec via `Display`.

use std::collections::BTreeMap;

use crate::words::{
    fixed_point, pq_block_product, sturmian_characteristic, Alphabet, Directive, ExponentFn,
    GrowthFn, Morphism, WordError, WordSource,
};

fn parse_err(token: &str, reason: impl Into<String>) -> WordError {
    WordError::Parse {
        token: token.to_string(),
        reason: reason.into(),
    }
}

pub fn parse_word_spec(spec: &str) -> Result<WordSource, WordError> {
    let spec = spec.trim();
    let (head, body) = match spec.split_once(':') {
        Some((h, b)) => (h, Some(b)),
        None => (spec, None),
    };
    match (head, body) {
        ("tm", None) => Ok(WordSource::thue_morse()),
        ("fib", None) => Ok(WordSource::fibonacci()),
        ("abk", None) => Ok(WordSource::abk()),
        ("sturm", Some(b)) => parse_sturm(b),
        ("morphic", Some(b)) => parse_morphic(b),
        ("ultper", Some(b)) => parse_ultper(b),
        ("pq", b) => parse_pq(b.unwrap_or("")),
        ("tm" | "fib" | "abk", Some(_)) => Err(parse_err(spec, "takes no parameters")),
        (h @ ("sturm" | "morphic" | "ultper"), None) => {
            Err(parse_err(h, "missing `:` and parameters"))
        }
        (h, _) => Err(parse_err(h, "unknown word kind")),
    }
}

fn parse_positive(tok: &str) -> Result<u32, WordError> {
    let tok = tok.trim();
    let v: i64 = tok
        .parse()
        .map_err(|_| parse_err(tok, "expected an integer"))?;
    if v <= 0 {
        return Err(WordError::InvalidDirective(format!(
            "entry `{tok}` is not positive"
        )));
    }
    u32::try_from(v).map_err(|_| parse_err(tok, "integer too large"))
}

fn parse_sturm(body: &str) -> Result<WordSource, WordError> {
    let open = body
        .find('(')
        .ok_or_else(|| parse_err(body, "missing parenthesized periodic tail"))?;
    let tail = &body[open..];
    if !tail.ends_with(')') {
        return Err(parse_err(tail, "periodic tail must end with `)`"));
    }
    let head_str = body[..open].trim_end_matches(',');
    let head = if head_str.is_empty() {
        Vec::new()
    } else {
        head_str
            .split(',')
            .map(parse_positive)
            .collect::<Result<Vec<_>, _>>()?
    };
    let inner = &tail[1..tail.len() - 1];
    if inner.trim().is_empty() {
        return Err(parse_err(tail, "empty periodic tail"));
    }
    let period = inner
        .split(',')
        .map(parse_positive)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(sturmian_characteristic(Directive::new(head, period)?))
}

fn single_char(tok: &str) -> Result<char, WordError> {
    let mut it = tok.chars();
    match (it.next(), it.next()) {
        (Some(c), None) if !"-> ,@|:()".contains(c) => Ok(c),
        _ => Err(parse_err(tok, "expected a single letter")),
    }
}

fn parse_morphic(body: &str) -> Result<WordSource, WordError> {
    let (rules, start) = body
        .rsplit_once('@')
        .ok_or_else(|| parse_err(body, "missing `@start`"))?;
    let start = single_char(start)?;
    let mut images: BTreeMap<char, String> = BTreeMap::new();
    for rule in rules.split(',') {
        let (from, to) = rule
            .split_once("->")
            .ok_or_else(|| parse_err(rule, "expected `x->word`"))?;
        let from = single_char(from)?;
        if to.chars().any(|c| "-> ,@|:()".contains(c)) {
            return Err(parse_err(to, "image contains a reserved character"));
        }
        if images.insert(from, to.to_string()).is_some() {
            return Err(parse_err(rule, "letter has two rules"));
        }
    }
    let mut chars: Vec<char> = images.keys().copied().collect();
    chars.extend(images.values().flat_map(|v| v.chars()));
    chars.push(start);
    let alphabet = Alphabet::new(chars);
    let mut imgs = Vec::with_capacity(alphabet.size());
    for &c in alphabet.chars() {
        let img = images
            .get(&c)
            .ok_or_else(|| parse_err(&c.to_string(), "letter has no rule"))?;
        imgs.push(
            alphabet
                .parse(img)
                .expect("image letters are in the alphabet"),
        );
    }
    let start = alphabet.letter_of(start).expect("start is in the alphabet");
    fixed_point(Morphism::new(imgs, start)?, alphabet)
}

fn parse_ultper(body: &str) -> Result<WordSource, WordError> {
    let (v, w) = body
        .split_once('|')
        .ok_or_else(|| parse_err(body, "expected `preperiod|period`"))?;
    if let Some(c) = v
        .chars()
        .chain(w.chars())
        .find(|c| "-> ,@|:()".contains(*c))
    {
        return Err(parse_err(&c.to_string(), "reserved character in word"));
    }
    if w.is_empty() {
        return Err(WordError::InvalidPeriodic("period must be nonempty".into()));
    }
    let alphabet = Alphabet::new(v.chars().chain(w.chars()).collect());
    let pre = alphabet.parse(v).expect("letters drawn from the word");
    let per = alphabet.parse(w).expect("letters drawn from the word");
    WordSource::ultimately_periodic(pre, per, alphabet)
}

fn parse_int<T: std::str::FromStr>(tok: &str) -> Result<T, WordError> {
    tok.parse()
        .map_err(|_| parse_err(tok, "expected an integer"))
}

pub fn parse_growth(tok: &str) -> Result<GrowthFn, WordError> {
    let tok = tok.trim();
    match tok {
        "isqrt" => return Ok(GrowthFn::Isqrt),
        "icbrt" => return Ok(GrowthFn::Icbrt),
        "log2" => return Ok(GrowthFn::Log2),
        _ => {}
    }
    match tok.find('n') {
        None => Ok(GrowthFn::Affine {
            mul: 0,
            add: parse_int(tok)?,
        }),
        Some(pos) => {
            let mul = if pos == 0 { 1 } else { parse_int(&tok[..pos])? };
            let rest = &tok[pos + 1..];
            let add = if rest.is_empty() {
                0
            } else if let Some(r) = rest.strip_prefix('+') {
                parse_int::<i64>(r)?
            } else if rest.starts_with('-') {
                parse_int::<i64>(rest)?
            } else {
                return Err(parse_err(tok, "expected `+c` or `-c` after `n`"));
            };
            Ok(GrowthFn::Affine { mul, add })
        }
    }
}

pub fn parse_exponent(tok: &str) -> Result<ExponentFn, WordError> {
    let tok = tok.trim();
    if tok == "p+q" {
        return Ok(ExponentFn::PPlusQ);
    }
    if let Some(m) = tok.strip_suffix('p') {
        let mul = if m.is_empty() { 1 } else { parse_int(m)? };
        return Ok(ExponentFn::P { mul });
    }
    Ok(ExponentFn::Const(parse_int(tok)?))
}

fn parse_pq(body: &str) -> Result<WordSource, WordError> {
    let mut f = GrowthFn::Isqrt;
    let mut k = ExponentFn::P { mul: 1 };
    for opt in body.split(',').filter(|s| !s.trim().is_empty()) {
        let (key, val) = opt
            .split_once('=')
            .ok_or_else(|| parse_err(opt, "expected `f=...` or `k=...`"))?;
        match key.trim() {
            "f" => f = parse_growth(val)?,
            "k" => k = parse_exponent(val)?,
            other => return Err(parse_err(other, "unknown option")),
        }
    }
    pq_block_product(f, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(spec: &str, n: usize) -> String {
        let s = parse_word_spec(spec).unwrap();
        s.prefix(n).unwrap().render(s.alphabet())
    }

    #[test]
    fn builtins() {
        assert_eq!(word("tm", 8), "01101001");
        assert_eq!(word("abk", 9), "ababbabbb");
        assert_eq!(word("fib", 8), "01001010");
        assert_eq!(word("ultper:|0", 3), "000");
        assert_eq!(word("ultper:01|10", 7), "0110101");
        assert_eq!(word("pq", 8), "abaabaab");
    }

    #[test]
    fn morphic_rules() {
        assert_eq!(word("morphic:0->01,1->10@0", 8), "01101001");
        assert_eq!(word("morphic:c->cab,a->ab,b->b@c", 10), "cababbabbb");
    }

    #[test]
    fn sturm_forms() {
        assert_eq!(word("sturm:(1)", 13), "0100101001001");
        assert_eq!(word("sturm:2,(1)", 7), "0010001");
    }

    #[test]
    fn canonical_round_trip() {
        for spec in [
            "tm",
            "fib",
            "abk",
            "sturm:2,3,(1,2)",
            "morphic:a->ab,b->a@a",
            "ultper:01|10",
            "ultper:|0",
            "pq:f=isqrt,k=p",
            "pq:f=log2,k=3p",
            "pq:f=icbrt,k=p",
            "pq:f=n,k=2p",
        ] {
            let s = parse_word_spec(spec).unwrap();
            let again = parse_word_spec(s.name()).unwrap();
            assert_eq!(s.name(), again.name(), "{spec}");
            assert_eq!(s.prefix(200).unwrap(), again.prefix(200).unwrap());
        }
    }

    #[test]
    fn errors_name_the_token() {
        match parse_word_spec("bogus") {
            Err(WordError::Parse { token, .. }) => assert_eq!(token, "bogus"),
            other => panic!("{other:?}"),
        }
        match parse_word_spec("sturm:1,x,(1)") {
            Err(WordError::Parse { token, .. }) => assert_eq!(token, "x"),
            other => panic!("{other:?}"),
        }
        match parse_word_spec("morphic:0->01,1=10@0") {
            Err(WordError::Parse { token, .. }) => assert_eq!(token, "1=10"),
            other => panic!("{other:?}"),
        }
        match parse_word_spec("morphic:0->012,1->10@0") {
            Err(WordError::Parse { token, .. }) => assert_eq!(token, "2"),
            other => panic!("{other:?}"),
        }
        match parse_word_spec("pq:g=isqrt") {
            Err(WordError::Parse { token, .. }) => assert_eq!(token, "g"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_word_spec("sturm:1,0,(1)"),
            Err(WordError::InvalidDirective(_))
        ));
        assert!(matches!(
            parse_word_spec("pq:f=n+1"),
            Err(WordError::InvalidGrowth(_))
        ));
        assert!(matches!(
            parse_word_spec("morphic:0->0@0"),
            Err(WordError::NotProlongable(_))
        ));
    }
}
