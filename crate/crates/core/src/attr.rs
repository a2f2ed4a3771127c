//! Attribute values and symbols.
//!
//! Attributes form a small recursive algebra: the blank symbol `σ`, signed
//! integers, symbols, pairs and ordered sequences. Embeddings build nested
//! values out of these (a pair of an attribute and a direction marker, a
//! sequence of per-timestamp pairs, ...), so equality and ordering are fully
//! structural.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::Error;
use crate::text::{write_symbol, Cursor};

/// An interned-by-refcount symbol from a finite alphabet.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(s: impl AsRef<str>) -> Self {
        Symbol(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbol(f, self.as_str())
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AttrValue {
    /// The blank symbol `σ`.
    Blank,
    Int(i64),
    Sym(Symbol),
    Pair(Box<AttrValue>, Box<AttrValue>),
    Seq(Vec<AttrValue>),
}

impl AttrValue {
    pub fn sym(s: impl AsRef<str>) -> Self {
        AttrValue::Sym(Symbol::new(s))
    }

    pub fn pair(a: AttrValue, b: AttrValue) -> Self {
        AttrValue::Pair(Box::new(a), Box::new(b))
    }

    pub fn seq(items: impl IntoIterator<Item = AttrValue>) -> Self {
        AttrValue::Seq(items.into_iter().collect())
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, AttrValue::Blank)
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            AttrValue::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_sym(&self) -> Option<&Symbol> {
        match self {
            AttrValue::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&AttrValue, &AttrValue)> {
        match self {
            AttrValue::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_seq(&self) -> Option<&[AttrValue]> {
        match self {
            AttrValue::Seq(items) => Some(items),
            _ => None,
        }
    }

    /// Calls `f` on every symbol occurring anywhere inside the value.
    pub fn visit_symbols<'a>(&'a self, f: &mut impl FnMut(&'a Symbol)) {
        match self {
            AttrValue::Blank | AttrValue::Int(_) => {}
            AttrValue::Sym(s) => f(s),
            AttrValue::Pair(a, b) => {
                a.visit_symbols(f);
                b.visit_symbols(f);
            }
            AttrValue::Seq(items) => items.iter().for_each(|i| i.visit_symbols(f)),
        }
    }
}

impl fmt::Display for AttrValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttrValue::Blank => f.write_str("σ"),
            AttrValue::Int(i) => write!(f, "{i}"),
            AttrValue::Sym(s) => write!(f, "{s}"),
            AttrValue::Pair(a, b) => write!(f, "({a}, {b})"),
            AttrValue::Seq(items) => {
                f.write_str("[")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl FromStr for AttrValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s, 1);
        let value = cur.attr()?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("trailing input after attribute value"));
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_nested_values() {
        let v = AttrValue::seq([
            AttrValue::pair(AttrValue::sym("a"), AttrValue::Int(0)),
            AttrValue::pair(AttrValue::sym("b"), AttrValue::Int(1)),
        ]);
        assert_eq!(v.to_string(), "[(a, 0), (b, 1)]");
        assert_eq!(AttrValue::Blank.to_string(), "σ");
        assert_eq!(AttrValue::seq([]).to_string(), "[]");
    }

    #[test]
    fn quotes_symbols_that_are_not_identifiers() {
        assert_eq!(AttrValue::sym("0").to_string(), "\"0\"");
        assert_eq!(AttrValue::sym("(a, 1)").to_string(), "\"(a, 1)\"");
        assert_eq!(AttrValue::sym("x\"y").to_string(), "\"x\\\"y\"");
        assert_eq!(AttrValue::sym("σ").to_string(), "\"σ\"");
    }

    #[test]
    fn parses_what_it_renders() {
        for text in [
            "σ",
            "-1",
            "42",
            "a",
            "\"0\"",
            "(a, -1)",
            "[(σ, 0), [\"x y\", (1, 2)], []]",
        ] {
            let v: AttrValue = text.parse().unwrap();
            assert_eq!(v.to_string(), text);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("(a,".parse::<AttrValue>().is_err());
        assert!("a b".parse::<AttrValue>().is_err());
        assert!("".parse::<AttrValue>().is_err());
        assert!("\"unterminated".parse::<AttrValue>().is_err());
    }
}
