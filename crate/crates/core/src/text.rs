//! Text forms for polynomials over `F_q`.
//!
//! Two grammars are accepted:
//!
//! * caret expressions such as `x^4+x+1` or `x^2 + 2*x + 1`, in the variable
//!   `x` (or `y`), with coefficients written as field-element encodings and
//!   an optional `*` before the variable;
//! * little-endian comma lists of encodings, `1,1,0,0,1` for `x^4+x+1`.
//!
//! A bare integer is read as a constant under either grammar.

use std::fmt::Write as _;

use thiserror::Error;

use crate::field::{Field, Fq, FqElem};
use crate::poly::{FqPoly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

/// Parses either grammar, choosing by content.
pub fn parse_poly(field: &Fq, text: &str) -> Result<FqPoly, ParseError> {
    if text.contains(',') {
        parse_encoding_list(field, text)
    } else {
        parse_caret(field, text)
    }
}

fn parse_encoding(field: &Fq, digits: &str, pos: usize) -> Result<FqElem, ParseError> {
    let v: u64 = match digits.parse() {
        Ok(v) => v,
        Err(_) => return err(pos, format!("invalid coefficient {digits:?}")),
    };
    match field.elem(v).ok() {
        Some(e) => Ok(e),
        None => err(
            pos,
            format!("coefficient {v} is not an element of F_{}", field.order()),
        ),
    }
}

pub fn parse_encoding_list(field: &Fq, text: &str) -> Result<FqPoly, ParseError> {
    let mut coeffs = Vec::new();
    let mut pos = 0;
    for part in text.split(',') {
        let trimmed = part.trim();
        if trimmed.is_empty() {
            return err(pos, "empty entry in coefficient list");
        }
        let offset = pos + part.find(trimmed).unwrap_or(0);
        coeffs.push(parse_encoding(field, trimmed, offset)?);
        pos += part.len() + 1;
    }
    Ok(PolyRing::new(field).poly(coeffs))
}

struct Cursor<'s> {
    bytes: &'s [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            (
                start,
                std::str::from_utf8(&self.bytes[start..self.pos]).unwrap(),
            )
        })
    }
}

pub fn parse_caret(field: &Fq, text: &str) -> Result<FqPoly, ParseError> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut coeffs: Vec<FqElem> = Vec::new();
    let mut var: Option<u8> = None;
    let mut first = true;
    loop {
        let negate = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            return match cur.peek() {
                None => break,
                Some(c) => err(cur.pos, format!("unexpected {:?}", c as char)),
            };
        };
        first = false;

        let term_start = cur.pos;
        let coef = match cur.digits() {
            Some((at, d)) => {
                let c = parse_encoding(field, d, at)?;
                cur.eat(b'*');
                Some(c)
            }
            None => None,
        };
        let degree = match cur.peek() {
            Some(c @ (b'x' | b'y')) => {
                if var.is_some_and(|v| v != c) {
                    return err(cur.pos, "mixed variables");
                }
                var = Some(c);
                cur.pos += 1;
                if cur.eat(b'^') {
                    match cur.digits() {
                        Some((at, d)) => match d.parse::<usize>() {
                            Ok(e) if e <= 1 << 20 => e,
                            _ => return err(at, format!("exponent {d} too large")),
                        },
                        None => return err(cur.pos, "expected exponent after '^'"),
                    }
                } else {
                    1
                }
            }
            _ if coef.is_some() => 0,
            _ => return err(term_start, "expected a term"),
        };
        let mut c = coef.unwrap_or_else(|| field.one());
        if negate {
            c = field.neg(&c);
        }
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, field.zero());
        }
        coeffs[degree] = field.add(&coeffs[degree], &c);
        if cur.peek().is_none() {
            break;
        }
    }
    if coeffs.is_empty() {
        return err(0, "empty polynomial");
    }
    Ok(PolyRing::new(field).poly(coeffs))
}

/// Caret form in `x`, highest degree first; `0` for the zero polynomial.
pub fn format_caret(f: &FqPoly) -> String {
    format_caret_in(f, 'x')
}

pub fn format_caret_in(f: &FqPoly, var: char) -> String {
    let mut out = String::new();
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        let v = c.encoding();
        if v == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        match (v, i) {
            (_, 0) => write!(out, "{v}").unwrap(),
            (1, 1) => out.push(var),
            (1, _) => write!(out, "{var}^{i}").unwrap(),
            (_, 1) => write!(out, "{v}*{var}").unwrap(),
            _ => write!(out, "{v}*{var}^{i}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Little-endian encoding list, `0` for the zero polynomial.
pub fn format_encoding_list(f: &FqPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = f
        .coeffs()
        .iter()
        .map(|c| c.encoding().to_string())
        .collect();
    parts.join(",")
}
