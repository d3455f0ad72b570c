//! Text representation of polynomials.
//!
//! Grammar (whitespace-insensitive between tokens):
//!
//! ```text
//! expr     := '-'? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' INTEGER)?
//! base     := NUMBER | IDENT | '(' expr ')'
//! NUMBER   := INTEGER ('/' POSINT)?      (the '/' binds at the token level)
//! IDENT    := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! There is no implicit multiplication (`2x` is an error) and no decimal
//! notation (`0.5` is an error; write `1/2`). Exponents are literal
//! nonnegative integers. The canonical `Display` form of a polynomial parses
//! back to an equal polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::MultiPoly;
use crate::rat::Rat;
use crate::ring::{valid_var_name, Ring};

/// Syntax or name-resolution error, with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num { value: Rat, had_slash: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, col, message: message.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.bump();
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn tokens(mut self) -> Result<Vec<Token>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.peek().is_some_and(|b| b == b' ' || b == b'\t' || b == b'\r' || b == b'\n') {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(b) = self.peek() else { break };
            let tok = match b {
                b'+' => {
                    self.bump();
                    Tok::Plus
                }
                b'-' => {
                    self.bump();
                    Tok::Minus
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'^' => {
                    self.bump();
                    Tok::Caret
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b'0'..=b'9' => {
                    let num = self.digits();
                    let numer: BigInt = num.parse().expect("digits parse as BigInt");
                    if self.peek() == Some(b'/') {
                        let (sl, sc) = (self.line, self.col);
                        self.bump();
                        if !self.peek().is_some_and(|b| b.is_ascii_digit()) {
                            return Err(self.err(
                                sl,
                                sc,
                                "expected digits after '/' in a rational literal",
                            ));
                        }
                        let den = self.digits();
                        let denom: BigInt = den.parse().expect("digits parse as BigInt");
                        if denom.is_zero() {
                            return Err(self.err(sl, sc, "rational literal has denominator 0"));
                        }
                        Tok::Num { value: Rat::new(numer, denom), had_slash: true }
                    } else {
                        Tok::Num { value: Rat::from_integer(numer), had_slash: false }
                    }
                }
                b'.' => {
                    return Err(self.err(
                        line,
                        col,
                        "decimal literals are not supported; write a fraction like 1/2",
                    ));
                }
                b'/' => {
                    return Err(self.err(
                        line,
                        col,
                        "'/' is only allowed inside a rational literal like 3/4",
                    ));
                }
                _ if b.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self
                        .peek()
                        .is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_')
                    {
                        self.bump();
                    }
                    let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                    debug_assert!(valid_var_name(&name));
                    Tok::Ident(name)
                }
                _ => {
                    let ch = self.src[self.pos..]
                        .iter()
                        .take(4)
                        .copied()
                        .collect::<Vec<_>>();
                    let ch = String::from_utf8_lossy(&ch).chars().next().unwrap_or('?');
                    return Err(self.err(line, col, format!("unexpected character {ch:?}")));
                }
            };
            out.push(Token { tok, line, col });
        }
        Ok(out)
    }
}

struct Parser<'r> {
    tokens: Vec<Token>,
    pos: usize,
    ring: &'r Ring,
    end_line: usize,
    end_col: usize,
}

impl<'r> Parser<'r> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek()
            .map(|t| (t.line, t.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, message: message.into() }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek().map(|t| &t.tok) == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut negate = false;
        if self.eat(&Tok::Minus) {
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat(&Tok::Plus) {
                let t = self.term()?;
                acc = acc.checked_add(&t).expect("same ring");
            } else if self.eat(&Tok::Minus) {
                let t = self.term()?;
                acc = acc.checked_sub(&t).expect("same ring");
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            let f = self.factor()?;
            acc = acc.checked_mul(&f).expect("same ring");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.base()?;
        if self.eat(&Tok::Caret) {
            let Some(tok) = self.peek().cloned() else {
                return Err(self.err_here("expected an integer exponent after '^'"));
            };
            let Tok::Num { value, had_slash } = &tok.tok else {
                return Err(ParseError {
                    line: tok.line,
                    col: tok.col,
                    message: "expected an integer exponent after '^'".into(),
                });
            };
            if *had_slash {
                return Err(ParseError {
                    line: tok.line,
                    col: tok.col,
                    message: "exponent must be an integer, not a fraction".into(),
                });
            }
            let exp: u32 = value
                .to_integer()
                .try_into()
                .map_err(|_| ParseError {
                    line: tok.line,
                    col: tok.col,
                    message: "exponent is too large".into(),
                })?;
            self.pos += 1;
            Ok(base.pow(exp))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<MultiPoly, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err_here("expected a number, a variable, or '('"));
        };
        match &tok.tok {
            Tok::Num { value, .. } => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.ring, value.clone()))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                match self.ring.index_of(name) {
                    Some(i) => Ok(MultiPoly::variable(self.ring, i)),
                    None => Err(ParseError {
                        line: tok.line,
                        col: tok.col,
                        message: format!("unknown variable {name:?} (variables are {})", self.ring),
                    }),
                }
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err_here("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(ParseError {
                line: tok.line,
                col: tok.col,
                message: "expected a number, a variable, or '('".into(),
            }),
        }
    }
}

fn end_position(text: &str) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for b in text.bytes() {
        if b == b'\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

fn run_parser(text: &str, tokens: Vec<Token>, ring: &Ring) -> Result<MultiPoly, ParseError> {
    let (end_line, end_col) = end_position(text);
    if tokens.is_empty() {
        return Err(ParseError {
            line: end_line,
            col: end_col,
            message: "empty input: expected a polynomial".into(),
        });
    }
    let mut p = Parser { tokens, pos: 0, ring, end_line, end_col };
    let poly = p.expr()?;
    if let Some(tok) = p.peek() {
        let what = match &tok.tok {
            Tok::RParen => "unmatched ')'".to_string(),
            Tok::Num { .. } | Tok::Ident(_) | Tok::LParen => {
                "expected an operator ('+', '-', '*', '^') between factors; implicit multiplication is not supported".to_string()
            }
            other => format!("unexpected token {other:?}"),
        };
        return Err(ParseError { line: tok.line, col: tok.col, message: what });
    }
    Ok(poly)
}

/// Parse over a known ring. Identifiers outside the ring are errors.
pub fn parse_in_ring(text: &str, ring: &Ring) -> Result<MultiPoly, ParseError> {
    let tokens = Lexer::new(text).tokens()?;
    run_parser(text, tokens, ring)
}

/// Parse with an inferred ring: the variables are exactly the identifiers
/// that occur, sorted by name.
pub fn parse_poly(text: &str) -> Result<(MultiPoly, Ring), ParseError> {
    let tokens = Lexer::new(text).tokens()?;
    let mut names: Vec<String> = tokens
        .iter()
        .filter_map(|t| match &t.tok {
            Tok::Ident(n) => Some(n.clone()),
            _ => None,
        })
        .collect();
    names.sort();
    names.dedup();
    let ring = Ring::new(names).expect("lexer produces valid, deduplicated names");
    let poly = run_parser(text, tokens, &ring)?;
    Ok((poly, ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn parses_readme_examples() {
        let (p, ring) = parse_poly("x^2 + y^2 - 1").unwrap();
        assert_eq!(ring.vars(), ["x", "y"]);
        assert_eq!(p.to_string(), "x^2 + y^2 - 1");

        let (p, _) = parse_poly("-4*x^2 + 4*v").unwrap();
        assert_eq!(p.to_string(), "-4*x^2 + 4*v");

        let (p, _) = parse_poly("b^2 - 4*c").unwrap();
        assert_eq!(p.to_string(), "b^2 - 4*c");
    }

    #[test]
    fn rational_literals() {
        let (p, ring) = parse_poly("1/2*x - 3/4").unwrap();
        assert_eq!(ring.vars(), ["x"]);
        let x = MultiPoly::variable(&ring, 0);
        let expect = &x.scaled(&rat(1, 2)) - &MultiPoly::constant(&ring, rat(3, 4));
        assert_eq!(p, expect);
    }

    #[test]
    fn parentheses_and_nested_negation() {
        let (p, ring) = parse_poly("(x + 1)*(x - 1) - (-1)").unwrap();
        let x = MultiPoly::variable(&ring, 0);
        assert_eq!(p, x.pow(2));
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_poly("x^2+2*x*y+y^2").unwrap().0;
        let b = parse_poly("  x^2 \n + 2 * x * y\t+ y^2 ").unwrap().0;
        assert_eq!(a, b);
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "x^2 - v",
            "-4*x^2 + 4*v",
            "x^3 - 3*x + 1",
            "1/2*x - 7",
            "x^2*y^2 + x*y + 1",
            "0",
        ] {
            let (p, ring) = parse_poly(text).unwrap();
            let again = parse_in_ring(&p.to_string(), &ring).unwrap();
            assert_eq!(p, again, "round trip through {text:?}");
        }
    }

    #[test]
    fn error_positions() {
        let e = parse_poly("x^2 + $").unwrap_err();
        assert_eq!((e.line, e.col), (1, 7));

        let e = parse_poly("x +\n* y").unwrap_err();
        assert_eq!((e.line, e.col), (2, 1));

        let e = parse_poly("2x").unwrap_err();
        assert!(e.message.contains("implicit multiplication"));

        let e = parse_poly("x^(2)").unwrap_err();
        assert!(e.message.contains("exponent"));

        let e = parse_poly("x^1/2").unwrap_err();
        assert!(e.message.contains("integer"), "{}", e.message);

        let e = parse_poly("1/0").unwrap_err();
        assert!(e.message.contains("denominator"));

        let e = parse_poly("").unwrap_err();
        assert!(e.message.contains("empty"));

        let e = parse_poly("(x + 1").unwrap_err();
        assert!(e.message.contains("')'"));

        let e = parse_poly("x + 1)").unwrap_err();
        assert!(e.message.contains("unmatched"));

        let e = parse_poly("0.5*x").unwrap_err();
        assert!(e.message.contains("fraction"));
    }

    #[test]
    fn unknown_variable_with_declared_ring() {
        let ring = Ring::of(&["x", "v"]);
        let e = parse_in_ring("x + y", &ring).unwrap_err();
        assert!(e.message.contains("unknown variable"));
        assert_eq!((e.line, e.col), (1, 5));
        let p = parse_in_ring("x^2 - v", &ring).unwrap();
        assert_eq!(p.degree_in(0), 2);
    }

    #[test]
    fn leading_minus_binds_whole_first_term_only() {
        let (p, ring) = parse_poly("-x^2 + y").unwrap();
        let x = MultiPoly::variable(&ring, 0);
        let y = MultiPoly::variable(&ring, 1);
        assert_eq!(p, &(-&x.pow(2)) + &y);
        // exponent binds tighter than the leading minus
        assert_eq!(p.eval_rat(&[rat_int(2), rat_int(0)]), rat_int(-4));
    }
}
