//! Low-level lexing shared by the attribute grammar and the graph exchange
//! format. Everything is line oriented; a [`Cursor`] walks one line and
//! reports errors with 1-based line and column.

use std::fmt;

use crate::attr::{AttrValue, Symbol};
use crate::error::Error;

pub(crate) fn is_bare_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn write_symbol(f: &mut impl fmt::Write, s: &str) -> fmt::Result {
    if is_bare_symbol(s) {
        return f.write_str(s);
    }
    f.write_char('"')?;
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            '\r' => f.write_str("\\r")?,
            '\t' => f.write_str("\\t")?,
            c => f.write_char(c)?,
        }
    }
    f.write_char('"')
}

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str, line: usize) -> Self {
        Cursor { src, pos: 0, line }
    }

    pub fn column(&self) -> usize {
        self.src[..self.pos].chars().count() + 1
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.bump();
        }
    }

    /// Skips whitespace, then consumes `c` if it is next.
    pub fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub fn expect_str(&mut self, s: &str) -> Result<(), Error> {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            Err(self.error(format!("expected '{s}'")))
        }
    }

    /// A run of non-whitespace characters, used for directive keywords.
    pub fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if !c.is_whitespace()) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    pub fn int(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        let col = self.column();
        if self.peek() == Some('-') {
            self.bump();
        }
        if self.digits().is_empty() {
            return Err(self.error("expected an integer"));
        }
        self.src[start..self.pos].parse().map_err(|_| Error::Syntax {
            line: self.line,
            column: col,
            message: "integer out of range".into(),
        })
    }

    pub fn natural(&mut self) -> Result<u64, Error> {
        self.skip_ws();
        let col = self.column();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected a natural number"));
        }
        digits.parse().map_err(|_| Error::Syntax {
            line: self.line,
            column: col,
            message: "number out of range".into(),
        })
    }

    pub fn symbol(&mut self) -> Result<Symbol, Error> {
        self.skip_ws();
        match self.peek() {
            Some('"') => self.quoted(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.bump();
                }
                Ok(Symbol::new(&self.src[start..self.pos]))
            }
            _ => Err(self.error("expected a symbol")),
        }
    }

    fn quoted(&mut self) -> Result<Symbol, Error> {
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error("unterminated quoted symbol")),
                Some('"') => break,
                Some('\\') => match self.bump() {
                    Some('"') => out.push('"'),
                    Some('\\') => out.push('\\'),
                    Some('n') => out.push('\n'),
                    Some('r') => out.push('\r'),
                    Some('t') => out.push('\t'),
                    _ => return Err(self.error("unknown escape sequence")),
                },
                Some(c) => out.push(c),
            }
        }
        Ok(Symbol::new(out))
    }

    pub fn attr(&mut self) -> Result<AttrValue, Error> {
        self.skip_ws();
        match self.peek() {
            Some('σ') => {
                self.bump();
                Ok(AttrValue::Blank)
            }
            Some('(') => {
                self.bump();
                let a = self.attr()?;
                self.expect(',')?;
                let b = self.attr()?;
                self.expect(')')?;
                Ok(AttrValue::pair(a, b))
            }
            Some('[') => {
                self.bump();
                let mut items = Vec::new();
                if self.eat(']') {
                    return Ok(AttrValue::Seq(items));
                }
                loop {
                    items.push(self.attr()?);
                    if self.eat(']') {
                        break;
                    }
                    self.expect(',')?;
                }
                Ok(AttrValue::Seq(items))
            }
            Some(c) if c == '-' || c.is_ascii_digit() => Ok(AttrValue::Int(self.int()?)),
            Some(_) => Ok(AttrValue::Sym(self.symbol()?)),
            None => Err(self.error("expected an attribute value")),
        }
    }
}
