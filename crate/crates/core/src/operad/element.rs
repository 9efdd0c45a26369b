use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::Scalar;

/// A finite rational combination of basis keys of one arity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element<K: Ord> {
    arity: usize,
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> Element<K> {
    pub fn zero(arity: usize) -> Self {
        Element {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(arity: usize, key: K) -> Self {
        Self::term(arity, key, Scalar::one())
    }

    pub fn term(arity: usize, key: K, coeff: Scalar) -> Self {
        let mut e = Self::zero(arity);
        e.add_term(key, coeff);
        e
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut e = Self::zero(arity);
        for (k, c) in terms {
            e.add_term(k, c);
        }
        e
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, Scalar)> {
        self.terms.into_iter()
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += coeff · other`.
    pub fn add_scaled(&mut self, other: &Element<K>, coeff: &Scalar) {
        debug_assert_eq!(self.arity, other.arity, "adding elements of different arity");
        if coeff.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * coeff);
        }
    }

    pub fn add(&mut self, other: &Element<K>) {
        self.add_scaled(other, &Scalar::one());
    }

    pub fn scaled(&self, coeff: &Scalar) -> Self {
        let mut e = Self::zero(self.arity);
        e.add_scaled(self, coeff);
        e
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Scalar::one())
    }

    pub fn sub(&self, other: &Element<K>) -> Self {
        let mut e = self.clone();
        e.add_scaled(other, &-Scalar::one());
        e
    }

    /// Keeps only the terms whose key satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Element {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone + fmt::Display> Element<K> {
    /// `{ "arity": n, "terms": [ { "key": …, "coeff": "p/q" } ] }`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| json!({ "key": k.to_string(), "coeff": c.to_string() }))
            .collect();
        json!({ "arity": self.arity, "terms": terms })
    }
}

impl<K: Ord + Clone + FromStr<Err = Error>> Element<K> {
    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::arg(format!("malformed element JSON: {m}"));
        let arity = value
            .get("arity")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing arity"))? as usize;
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?;
        let mut e = Element::zero(arity);
        for t in terms {
            let key = t
                .get("key")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("term without key"))?;
            let coeff = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("term without coeff"))?;
            e.add_term(key.parse()?, coeff.parse()?);
        }
        Ok(e)
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n == 0 {
                write!(f, "{c} · {k}")?;
            } else if c.is_negative() {
                write!(f, " - {} · {k}", c.abs())?;
            } else {
                write!(f, " + {c} · {k}")?;
            }
        }
        Ok(())
    }
}

/// Parses `c · key + c · key - …`; a bare term has coefficient `1` and `*`
/// may stand for `·`. Each term is handed to `parse_term`, which may itself
/// produce a combination. Offsets in errors are 1-based character positions.
pub fn parse_element<K, F>(text: &str, mut parse_term: F) -> Result<Element<K>>
where
    K: Ord + Clone,
    F: FnMut(&str) -> Result<Element<K>>,
{
    let chars: Vec<char> = text.chars().collect();
    // split on top-level `+`/`-` that start a new term
    let mut pieces: Vec<(usize, bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut start = 0usize;
    let mut negative = false;
    for (k, &c) in chars.iter().enumerate() {
        match c {
            '(' | '{' | '[' | '<' => depth += 1,
            ')' | '}' | ']' | '>' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (c == '+' || c == '-') {
            if !current.trim().is_empty() {
                pieces.push((start, negative, std::mem::take(&mut current)));
                negative = false;
            }
            current.clear();
            negative ^= c == '-';
            start = k + 1;
        } else {
            current.push(c);
        }
    }
    if !current.trim().is_empty() {
        pieces.push((start, negative, current));
    } else if pieces.is_empty() || negative {
        return Err(Error::parse(chars.len() + 1, "expected a term"));
    }

    let mut total: Option<Element<K>> = None;
    for (start, negative, piece) in pieces {
        let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
        let offset = start + lead;
        let body = piece.trim();
        if body == "0" {
            continue;
        }
        let (coeff, key_text, key_offset) = match body.find(['·', '*']) {
            Some(pos) => {
                let coeff: Scalar = body[..pos]
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(offset + 1, format!("bad coefficient `{}`", body[..pos].trim())))?;
                let rest = &body[pos..];
                let rest = &rest[rest.chars().next().unwrap().len_utf8()..];
                let skipped = body[..pos].chars().count() + 1 + rest.chars().take_while(|c| c.is_whitespace()).count();
                (coeff, rest.trim(), offset + skipped)
            }
            None => (Scalar::one(), body, offset),
        };
        let coeff = if negative { -coeff } else { coeff };
        let term = parse_term(key_text).map_err(|e| match e {
            Error::Parse { offset: o, message } => Error::Parse {
                offset: key_offset + o,
                message,
            },
            other => other,
        })?;
        match &mut total {
            None => total = Some(term.scaled(&coeff)),
            Some(t) => {
                if t.arity() != term.arity() {
                    return Err(Error::ArityMismatch {
                        expected: t.arity(),
                        found: term.arity(),
                    });
                }
                t.add_scaled(&term, &coeff);
            }
        }
    }
    total.ok_or_else(|| Error::parse(1, "zero element has no arity; write a key"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
    struct K(String);

    impl fmt::Display for K {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str(&self.0)
        }
    }

    impl FromStr for K {
        type Err = Error;
        fn from_str(s: &str) -> Result<Self> {
            if s.is_empty() || s.contains(' ') {
                return Err(Error::parse(1, "bad key"));
            }
            Ok(K(s.to_string()))
        }
    }

    fn term(s: &str) -> Result<Element<K>> {
        Ok(Element::basis(2, s.parse()?))
    }

    #[test]
    fn display_and_parse() {
        let e = parse_element("2 · a - 1/2 · b + c", term).unwrap();
        assert_eq!(e.to_string(), "2 · a - 1/2 · b + 1 · c");
        let again = parse_element(&e.to_string(), term).unwrap();
        assert_eq!(again, e);
        let e = parse_element("-1 · d1.d1|1|1", term).unwrap();
        assert_eq!(e.to_string(), "-1 · d1.d1|1|1");
        assert!(parse_element("a - a", term).unwrap().is_zero());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match parse_element("a + x· b", term) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_element("", term).is_err());
    }

    #[test]
    fn json_round_trip() {
        let e = parse_element("3/4 · a - 2 · b", term).unwrap();
        let back: Element<K> = Element::from_json(&e.to_json()).unwrap();
        assert_eq!(back, e);
        assert_eq!(e.to_json()["terms"][0]["coeff"], "3/4");
    }
}
