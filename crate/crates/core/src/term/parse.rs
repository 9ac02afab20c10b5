//! Recursive-descent parser for the ASCII term syntax.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := factor (("*" | "/") factor)*
//! factor  := "-" factor | power
//! power   := atom ("^" int)?
//! atom    := rational | ident | "(" expr ")" | "[]"
//!          | ("s" | "sqrt" | "inv" | "re" | "conj") "(" expr ")"
//! rational:= int ("/" int)?
//! ```
//!
//! `int/int` is read as one rational literal only when it opens a `term`
//! (possibly after unary minus) and the denominator is non-zero, so
//! `x * 2/3` stays `(x * 2) / 3` and `1/0` is a division. Exponents are
//! integer literals and unroll into products; negative exponents invert.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::Term;
use crate::kernel::Rational;

const MAX_EXPONENT: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at position {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("expected {expected} at position {pos}, found {found}")]
    Unexpected {
        expected: &'static str,
        found: String,
        pos: usize,
    },
    #[error("exponent at position {pos} must be an integer literal")]
    ExponentNotInteger { pos: usize },
    #[error("exponent at position {pos} exceeds {MAX_EXPONENT} in magnitude")]
    ExponentTooLarge { pos: usize },
}

impl ParseError {
    /// Byte offset of the error in the input.
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnexpectedChar { pos, .. }
            | ParseError::Unexpected { pos, .. }
            | ParseError::ExponentNotInteger { pos }
            | ParseError::ExponentTooLarge { pos } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
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
    Hole,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Hole => "'[]'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        if ch.is_ascii_digit() {
            let mut end = pos;
            while let Some(&(i, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            let n: BigInt = src[pos..end].parse().expect("digits");
            out.push((Tok::Int(n), pos));
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let mut end = pos;
            while let Some(&(i, c)) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            out.push((Tok::Ident(src[pos..end].to_string()), pos));
            continue;
        }
        chars.next();
        let tok = match ch {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => match chars.next() {
                Some((_, ']')) => Tok::Hole,
                _ => return Err(ParseError::UnexpectedChar { ch, pos }),
            },
            _ => return Err(ParseError::UnexpectedChar { ch, pos }),
        };
        out.push((tok, pos));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.at + offset).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            expected,
            found: self.peek().describe(),
            pos: self.pos(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expr(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Term::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Term::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.factor(true)?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Term::mul(lhs, self.factor(false)?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Term::mul(lhs, Term::inv(self.factor(false)?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self, opens_term: bool) -> Result<Term, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Term::neg(self.factor(opens_term)?));
        }
        self.power(opens_term)
    }

    fn power(&mut self, opens_term: bool) -> Result<Term, ParseError> {
        let base = self.atom(opens_term)?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let Tok::Int(n) = self.bump() else {
            return Err(ParseError::ExponentNotInteger { pos });
        };
        let n = n
            .to_u64()
            .filter(|&n| n <= MAX_EXPONENT)
            .ok_or(ParseError::ExponentTooLarge { pos })?;
        let product = match n {
            0 => Term::One,
            _ => (1..n).fold(base.clone(), |acc, _| Term::mul(acc, base.clone())),
        };
        Ok(if negative { Term::inv(product) } else { product })
    }

    fn atom(&mut self, opens_term: bool) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if opens_term && *self.peek() == Tok::Slash {
                    if let Tok::Int(d) = self.peek_at(1).clone() {
                        if !d.is_zero() {
                            self.bump();
                            self.bump();
                            return Ok(Term::num(Rational::new(n, d)));
                        }
                    }
                }
                Ok(Term::num(Rational::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.bump();
                let wrap: Option<fn(Term) -> Term> = match name.as_str() {
                    "s" => Some(Term::sign),
                    "sqrt" => Some(Term::sqrt),
                    "inv" => Some(Term::inv),
                    "re" => Some(|t| Term::Re(Box::new(t))),
                    "conj" => Some(|t| Term::Conj(Box::new(t))),
                    _ => None,
                };
                match wrap {
                    Some(f) => {
                        self.expect(Tok::LParen, "'(' after function name")?;
                        let inner = self.expr()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(f(inner))
                    }
                    None => Ok(Term::Var(name)),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Hole => {
                self.bump();
                Ok(Term::Hole)
            }
            _ => Err(self.unexpected("a number, variable, function or '('")),
        }
    }
}

/// Parses a term. Function names (`s`, `sqrt`, `inv`, `re`, `conj`) are
/// reserved and cannot be used as variables.
pub fn parse(src: &str) -> Result<Term, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0 };
    let t = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn division_by_zero_literal_is_division() {
        assert_eq!(parse("1/0").unwrap(), Term::mul(Term::One, Term::inv(Term::Zero)));
    }

    #[test]
    fn sign_times_sqrt() {
        assert_eq!(
            parse("s(x)*sqrt(y)").unwrap(),
            Term::mul(Term::sign(v("x")), Term::sqrt(v("y")))
        );
    }

    #[test]
    fn subtraction_desugars() {
        assert_eq!(parse("x - y").unwrap(), Term::add(v("x"), Term::neg(v("y"))));
    }

    #[test]
    fn rational_literals_only_open_terms() {
        let half = Term::num(Rational::new(1.into(), 2.into()));
        assert_eq!(parse("1/2").unwrap(), half);
        assert_eq!(parse("2/4").unwrap(), half);
        assert_eq!(
            parse("x * 2/3").unwrap(),
            Term::mul(Term::mul(v("x"), Term::int(2)), Term::inv(Term::int(3)))
        );
        assert_eq!(parse("-1/2").unwrap(), Term::neg(half.clone()));
        assert_eq!(
            parse("1/2/3").unwrap(),
            Term::mul(half, Term::inv(Term::int(3)))
        );
    }

    #[test]
    fn powers_unroll() {
        assert_eq!(parse("x^2").unwrap(), Term::mul(v("x"), v("x")));
        assert_eq!(
            parse("x^-2").unwrap(),
            Term::inv(Term::mul(v("x"), v("x")))
        );
        assert_eq!(parse("x^0").unwrap(), Term::One);
        assert_eq!(parse("-x^2").unwrap(), Term::neg(Term::mul(v("x"), v("x"))));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("x - y - z").unwrap(),
            Term::sub(Term::sub(v("x"), v("y")), v("z"))
        );
        assert_eq!(
            parse("x + y * z").unwrap(),
            Term::add(v("x"), Term::mul(v("y"), v("z")))
        );
        assert_eq!(
            parse("x / y * z").unwrap(),
            Term::mul(Term::mul(v("x"), Term::inv(v("y"))), v("z"))
        );
    }

    #[test]
    fn hole_and_functions() {
        assert_eq!(parse("sqrt([])").unwrap(), Term::sqrt(Term::Hole));
        assert_eq!(parse("inv(re(conj(x)))").unwrap().size(), 4);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("x + * y").unwrap_err();
        assert_eq!(e.position(), 4);
        assert!(matches!(parse("x ^ y").unwrap_err(), ParseError::ExponentNotInteger { pos: 4 }));
        assert!(matches!(parse("x ^ 1000").unwrap_err(), ParseError::ExponentTooLarge { .. }));
        assert!(matches!(parse("x $ y").unwrap_err(), ParseError::UnexpectedChar { ch: '$', pos: 2 }));
        assert_eq!(parse("(x + y").unwrap_err().position(), 6);
        assert_eq!(parse("sqrt x").unwrap_err().position(), 5);
        assert_eq!(parse("x y").unwrap_err().position(), 2);
        assert_eq!(parse("").unwrap_err().position(), 0);
    }
}
