//! The input document: a small key/value format with nested integer arrays.
//!
//! ```text
//! # comment
//! format_version = 1
//! name = "veronese(2,2)"
//! ambient_rank = 2
//! generators = [
//!   [2, 0],
//!   [1, 1],
//!   [0, 2],
//! ]
//! ```
//!
//! One `key = value` entry per line. Values are integers (unbounded),
//! double-quoted strings, or bracketed arrays, which may span lines and
//! allow a trailing comma. `format_version`, `ambient_rank` and
//! `generators` are required; `name` is optional. Unknown and repeated keys
//! are errors.

use std::fmt;

use fsig_core::exact::Integer;
use fsig_core::semigroup::SemigroupPresentation;
use num_traits::{Signed, ToPrimitive};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub name: Option<String>,
    pub ambient_rank: usize,
    pub generators: Vec<Vec<Integer>>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let entries = Parser::new(text)?.entries()?;
        let mut version = None;
        let mut name = None;
        let mut rank = None;
        let mut gens = None;
        for (line, key, value) in entries {
            let slot_taken = match key.as_str() {
                "format_version" => version.replace((line, value)).is_some(),
                "name" => name.replace((line, value)).is_some(),
                "ambient_rank" => rank.replace((line, value)).is_some(),
                "generators" => gens.replace((line, value)).is_some(),
                _ => return err(line, format!("unknown key `{key}`")),
            };
            if slot_taken {
                return err(line, format!("key `{key}` appears more than once"));
            }
        }

        let (line, version) = version.ok_or(ParseError { line: 0, message: "missing key `format_version`".into() })?;
        match version {
            Value::Int(v) if v == Integer::from(FORMAT_VERSION) => {}
            Value::Int(v) => return err(line, format!("unsupported format_version {v}, expected {FORMAT_VERSION}")),
            _ => return err(line, "`format_version` must be an integer"),
        }

        let name = match name {
            None => None,
            Some((_, Value::Str(s))) => Some(s),
            Some((line, _)) => return err(line, "`name` must be a string"),
        };

        let (line, rank) = rank.ok_or(ParseError { line: 0, message: "missing key `ambient_rank`".into() })?;
        let ambient_rank = match rank {
            Value::Int(v) if v.is_positive() => {
                v.to_usize().ok_or(ParseError { line, message: "`ambient_rank` is too large".into() })?
            }
            Value::Int(_) => return err(line, "`ambient_rank` must be positive"),
            _ => return err(line, "`ambient_rank` must be an integer"),
        };

        let (line, gens) = gens.ok_or(ParseError { line: 0, message: "missing key `generators`".into() })?;
        let Value::Array(rows) = gens else {
            return err(line, "`generators` must be an array of integer arrays");
        };
        if rows.is_empty() {
            return err(line, "`generators` is empty");
        }
        let mut generators = Vec::with_capacity(rows.len());
        for (k, row) in rows.into_iter().enumerate() {
            let Value::Array(items) = row else {
                return err(line, format!("generator {} is not an array", k + 1));
            };
            if items.len() != ambient_rank {
                return err(
                    line,
                    format!("generator {} has {} entries, ambient_rank is {ambient_rank}", k + 1, items.len()),
                );
            }
            let mut g = Vec::with_capacity(items.len());
            for item in items {
                match item {
                    Value::Int(v) if !v.is_negative() => g.push(v),
                    Value::Int(_) => return err(line, format!("generator {} has a negative entry", k + 1)),
                    _ => return err(line, format!("generator {} has a non-integer entry", k + 1)),
                }
            }
            generators.push(g);
        }
        Ok(InputDocument { name, ambient_rank, generators })
    }

    pub fn from_presentation(p: &SemigroupPresentation) -> Self {
        InputDocument {
            name: p.name().map(str::to_string),
            ambient_rank: p.ambient_rank(),
            generators: p.generators().to_vec(),
        }
    }

    /// Validated presentation; errors here are document errors too.
    pub fn presentation(&self) -> Result<SemigroupPresentation, ParseError> {
        let p = SemigroupPresentation::new(self.ambient_rank, self.generators.clone())
            .map_err(|e| ParseError { line: 0, message: e.to_string() })?;
        Ok(match &self.name {
            Some(n) => p.with_name(n.clone()),
            None => p,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("format_version = {FORMAT_VERSION}\n"));
        if let Some(name) = &self.name {
            out.push_str(&format!("name = {}\n", quote(name)));
        }
        out.push_str(&format!("ambient_rank = {}\n", self.ambient_rank));
        out.push_str("generators = [\n");
        for g in &self.generators {
            let items: Vec<String> = g.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("  [{}],\n", items.join(", ")));
        }
        out.push_str("]\n");
        out
    }
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Int(Integer),
    Str(String),
    Array(Vec<Value>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(Integer),
    Str(String),
    Equals,
    Open,
    Close,
    Comma,
    Newline,
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { tokens: tokenize(text)?, pos: 0 })
    }

    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn last_line(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.0)
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek(), Some((_, Token::Newline))) {
            self.pos += 1;
        }
    }

    fn entries(mut self) -> Result<Vec<(usize, String, Value)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_newlines();
            let Some((line, tok)) = self.next() else { return Ok(out) };
            let Token::Ident(key) = tok else {
                return err(line, "expected a key");
            };
            match self.next() {
                Some((_, Token::Equals)) => {}
                _ => return err(line, format!("expected `=` after `{key}`")),
            }
            let value = self.value(line)?;
            match self.next() {
                None | Some((_, Token::Newline)) => {}
                Some((l, _)) => return err(l, "expected end of line after value"),
            }
            out.push((line, key, value));
        }
    }

    fn value(&mut self, line: usize) -> Result<Value, ParseError> {
        match self.next() {
            Some((_, Token::Int(v))) => Ok(Value::Int(v)),
            Some((_, Token::Str(s))) => Ok(Value::Str(s)),
            Some((l, Token::Open)) => {
                let mut items = Vec::new();
                loop {
                    self.skip_newlines();
                    if matches!(self.peek(), Some((_, Token::Close))) {
                        self.pos += 1;
                        return Ok(Value::Array(items));
                    }
                    items.push(self.value(l)?);
                    self.skip_newlines();
                    match self.next() {
                        Some((_, Token::Comma)) => {}
                        Some((_, Token::Close)) => return Ok(Value::Array(items)),
                        Some((l, _)) => return err(l, "expected `,` or `]` in array"),
                        None => return err(self.last_line(), "unterminated array"),
                    }
                }
            }
            Some((l, _)) => err(l, "expected a value"),
            None => err(line, "missing value"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1;
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                out.push((line, Token::Newline));
                line += 1;
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '=' | '[' | ']' | ',' => {
                chars.next();
                let tok = match c {
                    '=' => Token::Equals,
                    '[' => Token::Open,
                    ']' => Token::Close,
                    _ => Token::Comma,
                };
                out.push((line, tok));
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None | Some('\n') => return err(line, "unterminated string"),
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            Some('n') => s.push('\n'),
                            Some('t') => s.push('\t'),
                            _ => return err(line, "unknown escape in string"),
                        },
                        Some(c) => s.push(c),
                    }
                }
                out.push((line, Token::Str(s)));
            }
            c if c == '-' || c == '+' || c.is_ascii_digit() => {
                let mut s = String::new();
                s.push(c);
                chars.next();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() || d == '_' {
                        if d != '_' {
                            s.push(d);
                        }
                        chars.next();
                    } else {
                        break;
                    }
                }
                let v: Integer = s.parse().map_err(|_| ParseError { line, message: format!("bad integer `{s}`") })?;
                out.push((line, Token::Int(v)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((line, Token::Ident(s)));
            }
            c => return err(line, format!("unexpected character `{c}`")),
        }
    }
    Ok(out)
}
