//! Printing with minimal parentheses, inverse to [`parse`](super::parse).
//!
//! Fixed choices: `a + (−b)` prints as `a - b`; a product with an inverse
//! prints as `a * inv(b)`, never `a/b`, so `/` only appears inside rational
//! literals. A fractional literal that does not open a term is
//! parenthesized, e.g. `x * (2/3)`.

use num_traits::{One, Signed, Zero};

use super::Term;

const EXPR: u8 = 0;
const TERM: u8 = 1;
const FACTOR: u8 = 2;

pub fn render(t: &Term) -> String {
    let mut out = String::new();
    write(t, EXPR, true, &mut out);
    out
}

fn level(t: &Term) -> u8 {
    match t {
        Term::Add(..) => EXPR,
        Term::Mul(..) => TERM,
        Term::Neg(..) => FACTOR,
        _ => u8::MAX,
    }
}

fn write(t: &Term, min: u8, opens: bool, out: &mut String) {
    let wrap = level(t) < min;
    if wrap {
        out.push('(');
    }
    let opens = opens || wrap;
    match t {
        Term::Zero => out.push('0'),
        Term::One => out.push('1'),
        Term::Num(q) => {
            if q.is_zero() || q.is_one() || q.is_negative() {
                write(&Term::num(q.clone()), min, opens, out);
            } else if q.is_integer() {
                out.push_str(&q.numer().to_string());
            } else if opens {
                out.push_str(&format!("{}/{}", q.numer(), q.denom()));
            } else {
                out.push_str(&format!("({}/{})", q.numer(), q.denom()));
            }
        }
        Term::Var(name) => out.push_str(name),
        Term::Hole => out.push_str("[]"),
        Term::Add(a, b) => {
            write(a, EXPR, opens, out);
            match b.as_ref() {
                Term::Neg(c) => {
                    out.push_str(" - ");
                    write(c, TERM, true, out);
                }
                _ => {
                    out.push_str(" + ");
                    write(b, TERM, true, out);
                }
            }
        }
        Term::Mul(a, b) => {
            write(a, TERM, opens, out);
            out.push_str(" * ");
            write(b, FACTOR, false, out);
        }
        Term::Neg(a) => {
            out.push('-');
            write(a, FACTOR, opens, out);
        }
        Term::Inv(a) => call("inv", a, out),
        Term::Sign(a) => call("s", a, out),
        Term::Sqrt(a) => call("sqrt", a, out),
        Term::Re(a) => call("re", a, out),
        Term::Conj(a) => call("conj", a, out),
    }
    if wrap {
        out.push(')');
    }
}

fn call(name: &str, arg: &Term, out: &mut String) {
    out.push_str(name);
    out.push('(');
    write(arg, EXPR, true, out);
    out.push(')');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn documented_examples() {
        assert_eq!(render(&Term::add(v("x"), Term::neg(v("y")))), "x - y");
        assert_eq!(render(&Term::inv(Term::sqrt(v("x")))), "inv(sqrt(x))");
        assert_eq!(
            render(&Term::mul(Term::add(Term::One, v("b")), Term::inv(v("c")))),
            "(1 + b) * inv(c)"
        );
    }

    #[test]
    fn minimal_parentheses() {
        for src in [
            "x + (y + z)",
            "x * (y * z)",
            "(x + y) * z",
            "x - (y + z)",
            "x - -y",
            "-x * y",
            "x * -y",
            "-(x * y)",
            "x * (2/3)",
            "2/3 * x",
            "-2/3",
            "x - 1/2",
            "sqrt(1/2) * 3",
            "s(s(x)) + []",
        ] {
            let t = parse(src).unwrap();
            assert_eq!(render(&t), src, "rendering of {src}");
        }
    }

    #[test]
    fn division_is_printed_with_inv() {
        assert_eq!(render(&parse("1/0").unwrap()), "1 * inv(0)");
        assert_eq!(render(&parse("x/y/z").unwrap()), "x * inv(y) * inv(z)");
    }
}
