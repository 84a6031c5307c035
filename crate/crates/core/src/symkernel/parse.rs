//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ["^" nat] | "(" expr ")" ["^" nat] | int ["/" int] | "i"
//! atom   := "t" | "z" nat "_" nat | "zb" nat "_" nat
//! ```
//!
//! Whitespace is insignificant. Positions in errors are byte offsets.

use num_bigint::BigInt;
use num_traits::Zero;

use super::expr::{CoordId, CoordKind, Expr};
use super::gaussian::GaussianRational;
use super::KernelError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, KernelError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                out.push((start, Tok::Int(text[start..pos].parse().unwrap())));
                continue;
            }
            'a'..='z' | 'A'..='Z' => {
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                out.push((start, Tok::Ident(text[start..pos].to_string())));
                continue;
            }
            other => {
                return Err(KernelError::Parse {
                    pos,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((start, tok));
        pos += 1;
    }
    Ok(out)
}

/// Decode a coordinate name such as `t`, `z0_1`, `zb2_3`.
pub fn parse_coord(name: &str) -> Option<CoordId> {
    if name == "t" {
        return Some(CoordId::TIME);
    }
    let (kind, rest) = if let Some(rest) = name.strip_prefix("zb") {
        (CoordKind::Anti, rest)
    } else if let Some(rest) = name.strip_prefix('z') {
        (CoordKind::Holo, rest)
    } else {
        return None;
    };
    let (level, index) = rest.split_once('_')?;
    if level.is_empty()
        || index.is_empty()
        || !level.bytes().all(|b| b.is_ascii_digit())
        || !index.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let level: u32 = level.parse().ok()?;
    let index: u32 = index.parse().ok()?;
    CoordId::new(kind, level, index).ok()
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    check: &'a dyn Fn(CoordId) -> bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, KernelError> {
        Err(KernelError::Parse {
            pos: self.offset(),
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, KernelError> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, KernelError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Option<u32>, KernelError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.bump();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.bump();
                match u32::try_from(n) {
                    Ok(e) => Ok(Some(e)),
                    Err(_) => self.err("exponent too large"),
                }
            }
            Some(Tok::Minus) => self.err("negative powers are not allowed"),
            _ => self.err("expected a natural number after '^'"),
        }
    }

    fn factor(&mut self) -> Result<Expr, KernelError> {
        let start = self.offset();
        match self.bump() {
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return self.err("expected ')'");
                }
                let e = self.exponent()?.unwrap_or(1);
                Ok(inner.pow(e as i64)?)
            }
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            Ok(Expr::constant(GaussianRational::from_big_ratio(n, d)))
                        }
                        Some(Tok::Int(_)) => {
                            self.pos -= 1;
                            self.err("zero denominator")
                        }
                        _ => {
                            self.pos -= 1;
                            self.err("expected an integer denominator")
                        }
                    }
                } else {
                    Ok(Expr::constant(GaussianRational::from_big_ratio(
                        n,
                        BigInt::from(1),
                    )))
                }
            }
            Some(Tok::Ident(name)) if name == "i" => Ok(Expr::i()),
            Some(Tok::Ident(name)) => {
                let Some(c) = parse_coord(&name) else {
                    self.pos -= 1;
                    return self.err(format!("unknown identifier '{name}'"));
                };
                if !(self.check)(c) {
                    return Err(KernelError::OutOfChart { name, pos: start });
                }
                let e = self.exponent()?.unwrap_or(1);
                Ok(Expr::coord(c).pow(e as i64)?)
            }
            Some(_) => {
                self.pos -= 1;
                self.err("expected a coordinate, number, 'i' or '('")
            }
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse with no restriction on which coordinates may appear.
pub fn parse(text: &str) -> Result<Expr, KernelError> {
    parse_checked(text, &|_| true)
}

/// Parse, rejecting any coordinate for which `allowed` returns false.
pub fn parse_checked(text: &str, allowed: &dyn Fn(CoordId) -> bool) -> Result<Expr, KernelError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        check: allowed,
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}
