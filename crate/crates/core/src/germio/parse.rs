//! Recursive-descent parser for polynomial germs in the variables `x`, `y`.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr     := '-'? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := 'x' | 'y' | rational | '(' expr ')'
//! rational := nat ('/' nat)?
//! ```
//!
//! Implicit multiplication is not part of the grammar: `2*x` parses, `2x`
//! does not. A parenthesized subexpression may again start with a unary
//! minus. Exponents are capped at [`MAX_EXPONENT`] to keep expansion of
//! powers of sums desk-sized; the cap is a resource guard, not a grammar
//! rule, and exceeding it is reported as a parse error at the exponent.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::scalar::Rat;
use crate::QxyPoly;

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LPar,
    RPar,
    VarX,
    VarY,
    Int(BigInt),
    End,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::LPar => write!(f, "'('"),
            Tok::RPar => write!(f, "')'"),
            Tok::VarX => write!(f, "'x'"),
            Tok::VarY => write!(f, "'y'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut it = text.chars().peekable();
    while let Some(&c) = it.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |it: &mut std::iter::Peekable<std::str::Chars>| {
            let c = it.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut it);
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(d) = it.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                bump(&mut it);
            }
            let n: BigInt = digits.parse().expect("digit string");
            out.push(Spanned { tok: Tok::Int(n), line: tl, col: tc });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(d) = it.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                name.push(*d);
                bump(&mut it);
            }
            let tok = match name.as_str() {
                "x" => Tok::VarX,
                "y" => Tok::VarY,
                _ => {
                    return Err(err(
                        tl,
                        tc,
                        format!("unknown variable '{name}': only 'x' and 'y' are allowed"),
                    ))
                }
            };
            out.push(Spanned { tok, line: tl, col: tc });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LPar,
            ')' => Tok::RPar,
            _ => return Err(err(tl, tc, format!("unexpected character '{c}'"))),
        };
        bump(&mut it);
        out.push(Spanned { tok, line: tl, col: tc });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if &self.peek().tok == t {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &str) -> Error {
        let s = self.peek();
        err(s.line, s.col, format!("unexpected {}; expected {expected}", s.tok))
    }

    /// Like [`Parser::unexpected`], for positions where an operator or a
    /// closing delimiter must follow; hints when the stray token looks like
    /// the start of a factor.
    fn unexpected_op(&self, expected: &str) -> Error {
        let s = self.peek();
        let hint = match s.tok {
            Tok::VarX | Tok::VarY | Tok::Int(_) | Tok::LPar => {
                " (implicit multiplication is not supported; write '*')"
            }
            _ => "",
        };
        err(s.line, s.col, format!("unexpected {}; expected {expected}{hint}", s.tok))
    }

    fn expr(&mut self) -> Result<QxyPoly> {
        let neg = self.eat(&Tok::Minus);
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc + self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QxyPoly> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QxyPoly> {
        let base = self.base()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let s = self.peek();
        let (line, col) = (s.line, s.col);
        let Tok::Int(n) = &s.tok else {
            return Err(self.unexpected("an exponent"));
        };
        let Ok(e) = u32::try_from(n.clone()) else {
            return Err(err(line, col, format!("exponent {n} is too large (cap {MAX_EXPONENT})")));
        };
        if e > MAX_EXPONENT {
            return Err(err(line, col, format!("exponent {e} is too large (cap {MAX_EXPONENT})")));
        }
        self.pos += 1;
        Ok(pow(&base, e))
    }

    fn base(&mut self) -> Result<QxyPoly> {
        let s = self.peek();
        match s.tok.clone() {
            Tok::VarX => {
                self.pos += 1;
                Ok(QxyPoly::x())
            }
            Tok::VarY => {
                self.pos += 1;
                Ok(QxyPoly::y())
            }
            Tok::Int(n) => {
                self.pos += 1;
                if !self.eat(&Tok::Slash) {
                    return Ok(QxyPoly::constant(Rat::from_integer(n)));
                }
                let d = self.peek();
                let (dl, dc) = (d.line, d.col);
                let Tok::Int(den) = d.tok.clone() else {
                    return Err(self.unexpected("a denominator"));
                };
                if den.is_zero() {
                    return Err(err(dl, dc, "denominator is zero".to_string()));
                }
                self.pos += 1;
                Ok(QxyPoly::constant(Rat::new(n, den)))
            }
            Tok::LPar => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RPar) {
                    return Err(self.unexpected_op("'+', '-', '*', or ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.unexpected("'x', 'y', a number, or '('")),
        }
    }
}

fn pow(base: &QxyPoly, e: u32) -> QxyPoly {
    let mut acc = QxyPoly::one();
    let mut sq = base.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * sq.clone();
        }
        e >>= 1;
        if e > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}

/// Parses a polynomial in `x`, `y` with rational coefficients.
///
/// Whitespace is insignificant. Errors carry the 1-based line and column of
/// the offending token.
pub fn parse_poly(text: &str) -> Result<QxyPoly> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.unexpected_op("'+', '-', '*', or end of input"));
    }
    Ok(e)
}
