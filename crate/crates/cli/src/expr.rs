//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' natural)?
//! atom   := rational | identifier | '(' expr ')'
//! ```
//!
//! Multiplication is always explicit, `^` takes a nonnegative integer
//! exponent, and rational literals are `p` or `p/q`.  Errors carry the line
//! and column of the offending token.

use std::sync::Arc;

use formalflow::algebra::rational_from_str;
use formalflow::{Error, FieldElement, MultiPoly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>, // token and its 1-based column
    pos: usize,
    line: usize,
    end_col: usize,
}

fn lex(text: &str, line: usize, col_offset: usize) -> Result<Lexer, Error> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col_offset + i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, col));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Number(chars[start..i].iter().collect()), col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(Error::input(format!(
                    "line {line}, column {col}: unexpected character '{other}'"
                )))
            }
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        line,
        end_col: col_offset + chars.len() + 1,
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::input(format!("line {}, column {}: {msg}", self.line, self.col()))
    }
}

/// Parse one polynomial over `ring`.  `line` and `col_offset` locate the
/// text inside its source file for error reporting.
pub fn parse_poly(
    text: &str,
    ring: &Arc<PolyRing>,
    line: usize,
    col_offset: usize,
) -> Result<MultiPoly, Error> {
    let mut lx = lex(text, line, col_offset)?;
    if lx.peek().is_none() {
        return Err(lx.err("empty expression"));
    }
    let poly = parse_expr(&mut lx, ring)?;
    if lx.peek().is_some() {
        return Err(lx.err("trailing input after expression"));
    }
    Ok(poly)
}

fn parse_expr(lx: &mut Lexer, ring: &Arc<PolyRing>) -> Result<MultiPoly, Error> {
    let mut acc = parse_term(lx, ring)?;
    loop {
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.next();
                acc = &acc + &parse_term(lx, ring)?;
            }
            Some(Tok::Minus) => {
                lx.next();
                acc = &acc - &parse_term(lx, ring)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term(lx: &mut Lexer, ring: &Arc<PolyRing>) -> Result<MultiPoly, Error> {
    let mut acc = parse_factor(lx, ring)?;
    while lx.peek() == Some(&Tok::Star) {
        lx.next();
        acc = &acc * &parse_factor(lx, ring)?;
    }
    Ok(acc)
}

fn parse_factor(lx: &mut Lexer, ring: &Arc<PolyRing>) -> Result<MultiPoly, Error> {
    if lx.peek() == Some(&Tok::Minus) {
        lx.next();
        return Ok(parse_factor(lx, ring)?.neg());
    }
    let base = parse_atom(lx, ring)?;
    if lx.peek() == Some(&Tok::Caret) {
        lx.next();
        let e = match lx.peek() {
            Some(Tok::Number(_)) => {
                let Some(Tok::Number(digits)) = lx.next() else {
                    unreachable!()
                };
                digits
                    .parse::<u32>()
                    .map_err(|_| lx.err("exponent out of range"))?
            }
            _ => return Err(lx.err("expected a nonnegative integer exponent after '^'")),
        };
        return Ok(base.pow(e));
    }
    Ok(base)
}

fn parse_atom(lx: &mut Lexer, ring: &Arc<PolyRing>) -> Result<MultiPoly, Error> {
    match lx.peek().cloned() {
        Some(Tok::Number(digits)) => {
            lx.next();
            // Optional '/q' completes a rational literal.
            let literal = if lx.peek() == Some(&Tok::Slash) {
                lx.next();
                match lx.peek().cloned() {
                    Some(Tok::Number(den)) => {
                        lx.next();
                        if den.trim_start_matches('0').is_empty() {
                            return Err(lx.err("zero denominator in rational literal"));
                        }
                        format!("{digits}/{den}")
                    }
                    _ => return Err(lx.err("expected a denominator after '/'")),
                }
            } else {
                digits
            };
            let value = rational_from_str(&literal)
                .map_err(|_| lx.err("malformed rational literal"))?;
            Ok(MultiPoly::constant(ring.clone(), FieldElement::Rat(value)))
        }
        Some(Tok::Ident(name)) => {
            lx.next();
            match ring.var_index(&name) {
                Some(i) => Ok(MultiPoly::var(ring.clone(), i)),
                None => Err(Error::input(format!(
                    "line {}, column {}: unknown variable '{name}'",
                    lx.line,
                    lx.toks[lx.pos - 1].1
                ))),
            }
        }
        Some(Tok::LParen) => {
            lx.next();
            let inner = parse_expr(lx, ring)?;
            if lx.peek() != Some(&Tok::RParen) {
                return Err(lx.err("expected ')'"));
            }
            lx.next();
            Ok(inner)
        }
        Some(Tok::Slash) => Err(lx.err("'/' is only valid inside a rational literal p/q")),
        _ => Err(lx.err("expected a number, variable, or '('")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::grevlex(&["x", "y", "z"])
    }

    fn parse(s: &str) -> Result<MultiPoly, Error> {
        parse_poly(s, &ring(), 1, 0)
    }

    #[test]
    fn round_trips_canonical_renderings() {
        for s in [
            "x^2*z - y^2 - 11",
            "x - 1",
            "-1/2*x + 5/3",
            "0",
            "x*y*z",
            "x^2 - 1/5*y^2 - 11/5",
        ] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn precedence_binds_caret_over_star_over_plus() {
        assert_eq!(parse("x + y*z^2").unwrap(), parse("x + (y*(z^2))").unwrap());
        assert_eq!(parse("-x^2").unwrap(), parse("-(x^2)").unwrap());
        assert_eq!(parse("(x + y)^2").unwrap(), parse("x^2 + 2*x*y + y^2").unwrap());
    }

    #[test]
    fn rational_literals_are_exact() {
        let p = parse("2/4*x").unwrap();
        assert_eq!(p.to_string(), "1/2*x");
        assert!(parse("1/0").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("x + ").unwrap_err();
        assert!(e.to_string().contains("line 1, column 5"), "{e}");
        let e = parse("x + w").unwrap_err();
        assert!(e.to_string().contains("unknown variable 'w'"), "{e}");
        let e = parse("x y").unwrap_err();
        assert!(e.to_string().contains("trailing input"), "{e}");
        let e = parse("x ^ y").unwrap_err();
        assert!(e.to_string().contains("exponent"), "{e}");
        let e = parse("x + $").unwrap_err();
        assert!(e.to_string().contains("unexpected character"), "{e}");
    }
}
