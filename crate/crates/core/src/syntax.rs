//! Text syntax for free-ring elements and words.
//!
//! ```text
//! poly := term (("+" | "-") term)*      term := ["-"] [int] letter*
//! word := "1" | atom (("*")? atom)*
//! atom := "t(" i "," j ";" poly ")" | "z(" i "," j ";" poly ";" poly ")"
//!       | "y(" i "," j ";" poly ";" poly ")"
//!       | "c(" i "," j ";" poly ";" h "," k ";" poly ")"     followed by an optional "^-1"
//! ```
//!
//! Letters are `a1 b2 c3 d1 r4`, or `i<k>` / `i<k>_<idx>` for the `k`-th ideal
//! of a multiple commutator. Whitespace is insignificant.

use std::fmt;

use num_bigint::BigInt;

use crate::matgroup::{expand_factors, Factor, Generator, GroupWord};
use crate::ring::{Letter, Monomial, Poly, Tag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor { chars: text.chars().collect(), pos: 0 }
    }

    fn location(&self, at: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..at.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error_at(&self, at: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = self.location(at);
        ParseError { line, column, message: message.into() }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("`{f}`"));
            Err(self.error(format!("expected `{c}`, found {found}")))
        }
    }

    /// Digits directly at the cursor, no whitespace skipped.
    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn letter(cur: &mut Cursor) -> Result<Option<Letter>, ParseError> {
    let start = {
        cur.skip_ws();
        cur.pos
    };
    let tag = match cur.chars.get(cur.pos) {
        Some('a') => Tag::A,
        Some('b') => Tag::B,
        Some('c') => Tag::C,
        Some('d') => Tag::D,
        Some('r') => Tag::R,
        Some('i') => Tag::I(0),
        _ => return Ok(None),
    };
    cur.pos += 1;
    let num = |cur: &mut Cursor, what: &str| -> Result<u32, ParseError> {
        let d = cur.digits().ok_or_else(|| cur.error(format!("expected {what} after letter")))?;
        match d.parse::<u32>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(cur.error_at(start, format!("{what} must be a positive integer"))),
        }
    };
    if tag == Tag::I(0) {
        let k = num(cur, "ideal number")?;
        let idx = if cur.chars.get(cur.pos) == Some(&'_') {
            cur.pos += 1;
            num(cur, "index")?
        } else {
            1
        };
        return Ok(Some(Letter::new(Tag::I(k), idx)));
    }
    Ok(Some(Letter::new(tag, num(cur, "index")?)))
}

fn term(cur: &mut Cursor, sign: i32) -> Result<Poly, ParseError> {
    cur.skip_ws();
    let start = cur.pos;
    let coeff = match cur.digits() {
        Some(d) => d.parse::<BigInt>().expect("digits"),
        None => BigInt::from(1),
    };
    let mut letters = Vec::new();
    while let Some(l) = letter(cur)? {
        letters.push(l);
    }
    if cur.pos == start {
        return Err(cur.error("expected a term"));
    }
    Ok(Poly::term(coeff * sign, Monomial(letters)))
}

fn poly(cur: &mut Cursor) -> Result<Poly, ParseError> {
    let mut sign = if cur.eat('-') { -1 } else { 1 };
    if sign == 1 {
        cur.eat('+');
    }
    let mut acc = term(cur, sign)?;
    loop {
        sign = match cur.peek() {
            Some('+') => 1,
            Some('-') => -1,
            _ => return Ok(acc),
        };
        cur.pos += 1;
        acc = acc + term(cur, sign)?;
    }
}

fn index(cur: &mut Cursor) -> Result<usize, ParseError> {
    cur.skip_ws();
    let d = cur.digits().ok_or_else(|| cur.error("expected an index"))?;
    match d.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(cur.error("indices start at 1")),
    }
}

fn pair(cur: &mut Cursor, at: usize) -> Result<(usize, usize), ParseError> {
    let i = index(cur)?;
    cur.expect(',')?;
    let j = index(cur)?;
    if i == j {
        return Err(cur.error_at(at, format!("i=j ({i}) is not an elementary position")));
    }
    Ok((i, j))
}

fn atom(cur: &mut Cursor) -> Result<Factor, ParseError> {
    let at = {
        cur.skip_ws();
        cur.pos
    };
    let kind = cur.chars[cur.pos];
    cur.pos += 1;
    cur.expect('(')?;
    let (i, j) = pair(cur, at)?;
    cur.expect(';')?;
    let x = poly(cur)?;
    let gen = match kind {
        't' => Generator::t(i, j, x),
        'z' | 'y' => {
            cur.expect(';')?;
            let c = poly(cur)?;
            if kind == 'z' {
                Generator::z(i, j, x, c)
            } else {
                Generator::y(i, j, x, c)
            }
        }
        _ => {
            cur.expect(';')?;
            let (h, k) = pair(cur, at)?;
            cur.expect(';')?;
            let y = poly(cur)?;
            Generator::c(i, j, x, h, k, y)
        }
    };
    cur.expect(')')?;
    let mut f = Factor::new(gen);
    if cur.eat('^') {
        cur.expect('-')?;
        cur.skip_ws();
        if cur.digits().as_deref() != Some("1") {
            return Err(cur.error("only the exponent -1 is supported"));
        }
        f = f.inverted();
    }
    Ok(f)
}

pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let mut cur = Cursor::new(text);
    let p = poly(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(p)
}

/// The atoms of a word, in order, without expanding them.
pub fn parse_factors(text: &str) -> Result<Vec<Factor>, ParseError> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    if cur.peek() == Some('1') {
        cur.pos += 1;
        if !cur.at_end() {
            return Err(cur.error("unexpected input after the identity word"));
        }
        return Ok(out);
    }
    loop {
        match cur.peek() {
            Some('t' | 'z' | 'y' | 'c') => out.push(atom(&mut cur)?),
            Some(other) => return Err(cur.error(format!("expected an atom, found `{other}`"))),
            None if out.is_empty() => return Err(cur.error("empty word")),
            None => return Ok(out),
        }
        cur.eat('*');
        if out.last().is_some() && cur.at_end() {
            return Ok(out);
        }
    }
}

/// Parse and expand a word in `GL(n, R)`.
pub fn parse_word(text: &str, n: usize) -> Result<GroupWord, ParseError> {
    let factors = parse_factors(text)?;
    if let Some(big) = factors.iter().map(|f| f.gen.max_index()).max().filter(|&m| m > n) {
        let cur = Cursor::new(text);
        return Err(cur.error_at(0, format!("index {big} exceeds n = {n}")));
    }
    expand_factors(n, &factors).map_err(|e| Cursor::new(text).error_at(0, e.to_string()))
}

/// Render factors in the word syntax.
pub fn format_factors(factors: &[Factor]) -> String {
    if factors.is_empty() {
        return "1".into();
    }
    factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" * ")
}
