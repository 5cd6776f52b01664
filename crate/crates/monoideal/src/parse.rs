//! Text syntax for monomial ideals.
//!
//! Grammar: comma-separated monomials; a monomial is `1` or a product of
//! variables with optional `^k` exponents and optional `*` separators.
//! Variables are `x`, `y` in two variables, or `x1..xd` in general.
//! Whitespace is insignificant. Example: `x^3, x^2*y^8, x*y^15, y^21`.

use crate::error::{Error, Result};
use crate::ideal::{Exp, ExponentVector, MonomialIdeal};

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

#[derive(Debug, PartialEq)]
enum Tok {
    Var(usize), // 0-based variable index
    Caret,
    Star,
    Comma,
    One,
    Int(Exp),
    End,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { bytes: text.as_bytes(), pos: 0 }
    }

    fn err(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Parse { position: pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<Exp> {
        let start = self.pos;
        let mut value: Exp = 0;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            let d = (self.bytes[self.pos] - b'0') as Exp;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d))
                .ok_or_else(|| self.err(start, "exponent too large"))?;
            self.pos += 1;
        }
        Ok(value)
    }

    fn next(&mut self) -> Result<(usize, Tok)> {
        self.skip_ws();
        if self.pos >= self.bytes.len() {
            return Ok((self.pos, Tok::End));
        }
        let at = self.pos;
        match self.bytes[self.pos] {
            b'^' => {
                self.pos += 1;
                Ok((at, Tok::Caret))
            }
            b'*' => {
                self.pos += 1;
                Ok((at, Tok::Star))
            }
            b',' => {
                self.pos += 1;
                Ok((at, Tok::Comma))
            }
            b'y' => {
                self.pos += 1;
                Ok((at, Tok::Var(1)))
            }
            b'x' => {
                self.pos += 1;
                if self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    let idx = self.number()?;
                    if idx == 0 {
                        return Err(self.err(at, "variable indices start at x1"));
                    }
                    Ok((at, Tok::Var(idx as usize - 1)))
                } else {
                    Ok((at, Tok::Var(0)))
                }
            }
            b'1' if !self
                .bytes
                .get(self.pos + 1)
                .map(|b| b.is_ascii_digit())
                .unwrap_or(false) =>
            {
                self.pos += 1;
                Ok((at, Tok::One))
            }
            b'0'..=b'9' => {
                let v = self.number()?;
                Ok((at, Tok::Int(v)))
            }
            b'-' => Err(self.err(at, "negative exponents are not allowed")),
            c => Err(self.err(at, format!("unexpected character '{}'", c as char))),
        }
    }

    fn peek(&mut self) -> Result<(usize, Tok)> {
        let save = self.pos;
        let t = self.next();
        self.pos = save;
        t
    }
}

/// Parse the comma-separated ideal syntax. The ambient dimension is the
/// smallest one consistent with the variables that occur (`y` counts as the
/// second variable); pass `dim` to force a larger ambient ring.
pub fn parse_ideal_with_dim(text: &str, dim: Option<usize>) -> Result<MonomialIdeal> {
    let mut lx = Lexer::new(text);
    // each raw generator is a (variable -> exponent) list
    let mut raw: Vec<Vec<(usize, Exp)>> = Vec::new();
    let mut max_var = 0usize;

    loop {
        // one monomial
        let mut factors: Vec<(usize, Exp)> = Vec::new();
        let mut saw_one = false;
        loop {
            let (at, tok) = lx.peek()?;
            match tok {
                Tok::Var(v) => {
                    lx.next()?;
                    let e = match lx.peek()? {
                        (_, Tok::Caret) => {
                            lx.next()?;
                            let (eat, etok) = lx.next()?;
                            match etok {
                                Tok::Int(k) => k,
                                Tok::One => 1,
                                _ => return Err(lx.err(eat, "expected an exponent after '^'")),
                            }
                        }
                        _ => 1,
                    };
                    factors.push((v, e));
                    max_var = max_var.max(v + 1);
                    // optional '*'
                    if let (_, Tok::Star) = lx.peek()? {
                        lx.next()?;
                    }
                }
                Tok::One => {
                    lx.next()?;
                    saw_one = true;
                    if let (_, Tok::Star) = lx.peek()? {
                        lx.next()?;
                    }
                }
                Tok::Comma | Tok::End => break,
                Tok::Int(_) => return Err(lx.err(at, "a coefficient is not a monomial")),
                Tok::Caret => return Err(lx.err(at, "'^' must follow a variable")),
                Tok::Star => return Err(lx.err(at, "'*' must follow a factor")),
            }
        }
        if factors.is_empty() && !saw_one {
            let (at, _) = lx.peek()?;
            return Err(lx.err(at, "empty monomial"));
        }
        raw.push(factors);

        match lx.next()? {
            (_, Tok::Comma) => continue,
            (_, Tok::End) => break,
            (at, _) => return Err(lx.err(at, "expected ',' or end of input")),
        }
    }

    let inferred = max_var.max(1);
    let d = match dim {
        Some(d) if d < inferred => {
            return Err(Error::Parse {
                position: 0,
                message: format!("input uses {inferred} variables but dim {d} was requested"),
            })
        }
        Some(d) => d,
        None => inferred,
    };

    let gens = raw
        .into_iter()
        .map(|factors| {
            let mut coords = vec![0 as Exp; d];
            for (v, e) in factors {
                coords[v] = coords[v].checked_add(e).expect("exponent overflow");
            }
            ExponentVector::new(coords)
        })
        .collect();
    MonomialIdeal::new(d, gens)
}

pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    parse_ideal_with_dim(text, None)
}

fn var_name(i: usize, dim: usize) -> String {
    if dim <= 2 {
        if i == 0 { "x".into() } else { "y".into() }
    } else {
        format!("x{}", i + 1)
    }
}

/// Canonical text form: generators in the stored (descending lex) order,
/// `*` between factors, `^` only for exponents above 1.
pub fn format_ideal(ideal: &MonomialIdeal) -> String {
    let d = ideal.dim();
    let mons: Vec<String> = ideal
        .gens()
        .iter()
        .map(|g| {
            let parts: Vec<String> = g
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        var_name(i, d)
                    } else {
                        format!("{}^{}", var_name(i, d), e)
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect();
    mons.join(", ")
}
