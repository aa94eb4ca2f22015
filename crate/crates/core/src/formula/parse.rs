//! Recursive-descent parser for the ASCII/Unicode formula syntax.
//!
//! Precedence, tightest first: `~ [] <>`, then `&`, then `|`, then
//! `> >>` (non-associative; nested conditionals need parentheses), then
//! `-> <->` (also non-associative). Single-letter identifiers are atom
//! aliases: `p q r s t u v w x y z a b ... o` name `p0 p1 p2 ...` in that
//! order. `?a` .. `?z` are schema metavariables.

use super::Formula;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

const ATOM_LETTERS: &str = "pqrstuvwxyzabcdefghijklmno";

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Atom(u32),
    Meta(u8),
    Not,
    And,
    Or,
    Imp,
    Iff,
    Cond,
    StrongCond,
    Nec,
    Poss,
    Top,
    Bot,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: pos,
            message: message.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.bytes.len() {
            let start = self.pos;
            let rest = &self.src[self.pos..];
            let c = rest.chars().next().unwrap();
            if c.is_whitespace() {
                self.pos += c.len_utf8();
                continue;
            }
            let tok = if rest.starts_with("<->") {
                self.pos += 3;
                Tok::Iff
            } else if rest.starts_with("->") {
                self.pos += 2;
                Tok::Imp
            } else if rest.starts_with(">>") {
                self.pos += 2;
                Tok::StrongCond
            } else if rest.starts_with("<>") {
                self.pos += 2;
                Tok::Poss
            } else if rest.starts_with("[]") {
                self.pos += 2;
                Tok::Nec
            } else if rest.starts_with("#t") {
                self.pos += 2;
                Tok::Top
            } else if rest.starts_with("#f") {
                self.pos += 2;
                Tok::Bot
            } else {
                match c {
                    '>' => {
                        self.pos += 1;
                        Tok::Cond
                    }
                    '~' | '¬' => {
                        self.pos += c.len_utf8();
                        Tok::Not
                    }
                    '&' | '∧' => {
                        self.pos += c.len_utf8();
                        Tok::And
                    }
                    '|' | '∨' => {
                        self.pos += c.len_utf8();
                        Tok::Or
                    }
                    '→' => {
                        self.pos += c.len_utf8();
                        Tok::Imp
                    }
                    '↔' => {
                        self.pos += c.len_utf8();
                        Tok::Iff
                    }
                    '□' => {
                        self.pos += c.len_utf8();
                        Tok::Nec
                    }
                    '◇' => {
                        self.pos += c.len_utf8();
                        Tok::Poss
                    }
                    '≫' => {
                        self.pos += c.len_utf8();
                        Tok::StrongCond
                    }
                    '⊤' => {
                        self.pos += c.len_utf8();
                        Tok::Top
                    }
                    '⊥' => {
                        self.pos += c.len_utf8();
                        Tok::Bot
                    }
                    '(' => {
                        self.pos += 1;
                        Tok::LParen
                    }
                    ')' => {
                        self.pos += 1;
                        Tok::RParen
                    }
                    '?' => {
                        self.pos += 1;
                        let m = self.bytes.get(self.pos).copied().ok_or_else(|| {
                            self.error(start, "expected letter after '?'")
                        })?;
                        if !m.is_ascii_lowercase() {
                            return Err(
                                self.error(start, "expected letter a-z after '?'")
                            );
                        }
                        self.pos += 1;
                        Tok::Meta(m - b'a')
                    }
                    c if c.is_ascii_alphabetic() => self.lex_ident(start)?,
                    other => {
                        return Err(self
                            .error(start, format!("unexpected character '{other}'")))
                    }
                }
            };
            out.push((start, tok));
        }
        Ok(out)
    }

    fn lex_ident(&mut self, start: usize) -> Result<Tok, ParseError> {
        let mut end = self.pos;
        while end < self.bytes.len()
            && (self.bytes[end].is_ascii_alphanumeric() || self.bytes[end] == b'_')
        {
            end += 1;
        }
        let word = &self.src[self.pos..end];
        self.pos = end;
        // p<digits> is an explicit atom index.
        if let Some(digits) = word.strip_prefix('p') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                let k: u32 = digits
                    .parse()
                    .map_err(|_| self.error(start, "atom index out of range"))?;
                return Ok(Tok::Atom(k));
            }
        }
        if word.len() == 1 {
            if let Some(k) = ATOM_LETTERS.find(word) {
                return Ok(Tok::Atom(k as u32));
            }
        }
        Err(self.error(start, format!("unknown identifier '{word}'")))
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.offset(),
            message: message.into(),
        }
    }

    // Lowest level: -> and <->, non-associative.
    fn parse_imp(&mut self) -> Result<Formula, ParseError> {
        let left = self.parse_cond()?;
        match self.peek() {
            Some(Tok::Imp) => {
                self.bump();
                let right = self.parse_cond()?;
                if matches!(self.peek(), Some(Tok::Imp) | Some(Tok::Iff)) {
                    return Err(self.err(
                        "'->'/'<->' is non-associative; parenthesize the nested implication",
                    ));
                }
                Ok(Formula::imp(left, right))
            }
            Some(Tok::Iff) => {
                self.bump();
                let right = self.parse_cond()?;
                if matches!(self.peek(), Some(Tok::Imp) | Some(Tok::Iff)) {
                    return Err(self.err(
                        "'->'/'<->' is non-associative; parenthesize the nested implication",
                    ));
                }
                Ok(Formula::iff(left, right))
            }
            _ => Ok(left),
        }
    }

    // > and >>, non-associative: nested conditionals need parentheses.
    fn parse_cond(&mut self) -> Result<Formula, ParseError> {
        let left = self.parse_or()?;
        match self.peek() {
            Some(Tok::Cond) => {
                self.bump();
                let right = self.parse_or()?;
                if matches!(self.peek(), Some(Tok::Cond) | Some(Tok::StrongCond)) {
                    return Err(self.err(
                        "nested '>' is ambiguous; parenthesize the inner conditional",
                    ));
                }
                Ok(Formula::cond(left, right))
            }
            Some(Tok::StrongCond) => {
                self.bump();
                let right = self.parse_or()?;
                if matches!(self.peek(), Some(Tok::Cond) | Some(Tok::StrongCond)) {
                    return Err(self.err(
                        "nested '>' is ambiguous; parenthesize the inner conditional",
                    ));
                }
                Ok(Formula::strong_cond(left, right))
            }
            _ => Ok(left),
        }
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.parse_and()?;
        while matches!(self.peek(), Some(Tok::Or)) {
            self.bump();
            let right = self.parse_and()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.parse_unary()?;
        while matches!(self.peek(), Some(Tok::And)) {
            self.bump();
            let right = self.parse_unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        match self.bump() {
            Some(Tok::Not) => Ok(Formula::neg(self.parse_unary()?)),
            Some(Tok::Nec) => Ok(Formula::nec(self.parse_unary()?)),
            Some(Tok::Poss) => Ok(Formula::poss(self.parse_unary()?)),
            Some(Tok::Atom(k)) => Ok(Formula::atom(k)),
            Some(Tok::Meta(k)) => Ok(Formula::meta(k)),
            Some(Tok::Top) => Ok(Formula::Top),
            Some(Tok::Bot) => Ok(Formula::Bot),
            Some(Tok::LParen) => {
                let inner = self.parse_imp()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos = self.pos.saturating_sub(1);
                        Err(self.err("expected ')'"))
                    }
                }
            }
            Some(_) => {
                self.pos -= 1;
                Err(self.err("expected a formula"))
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a formula. Errors carry the byte offset of the offending token.
pub fn parse(src: &str) -> Result<Formula, ParseError> {
    let toks = Lexer::new(src).tokens()?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let f = p.parse_imp()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after formula"));
    }
    Ok(f)
}
