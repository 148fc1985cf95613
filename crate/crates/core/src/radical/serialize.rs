//! Text, LaTeX and s-expression rendering, plus the s-expression parser.
//!
//! The s-expression grammar is the machine interchange format:
//!
//! ```text
//! expr := atom | "(" op expr expr ")" | "(sqrt" expr ")"
//! op   := "add" | "sub" | "mul" | "div"
//! atom := integer | integer "/" positive-integer      (decimal digits)
//! ```
//!
//! `parse_sexpr` is the inverse of `serialize(_, Format::Sexpr)` up to
//! whitespace.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Node, RadicalExpr};
use crate::rational::BigRational;

/// Output formats for [`RadicalExpr::serialize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Sexpr,
}

/// Parse failure with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

impl RadicalExpr {
    /// Deterministic rendering in the chosen format.
    pub fn serialize(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut memo = HashMap::new();
                text(self, 0, &mut memo)
            }
            Format::Latex => latex(self),
            Format::Sexpr => {
                let mut out = String::new();
                sexpr(self, &mut out);
                out
            }
        }
    }
}

// Precedence levels: 1 additive, 2 multiplicative, 3 atoms.
fn precedence(e: &RadicalExpr) -> u8 {
    match &*e.0 {
        Node::Add(..) | Node::Sub(..) => 1,
        Node::Mul(..) | Node::Div(..) => 2,
        Node::Rational(q) => {
            if q.is_negative() {
                1
            } else if q.denom().is_one() {
                3
            } else {
                2
            }
        }
        Node::Sqrt(..) => 3,
    }
}

fn text(e: &RadicalExpr, min_prec: u8, memo: &mut HashMap<(*const Node, u8), String>) -> String {
    let key = (Rc::as_ptr(&e.0), min_prec);
    if let Some(s) = memo.get(&key) {
        return s.clone();
    }
    let prec = precedence(e);
    let body = match &*e.0 {
        Node::Rational(q) => {
            if q.denom().is_one() {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            }
        }
        Node::Add(a, b) => format!("{} + {}", text(a, 1, memo), text(b, 2, memo)),
        Node::Sub(a, b) => format!("{} - {}", text(a, 1, memo), text(b, 2, memo)),
        Node::Mul(a, b) => format!("{}*{}", text(a, 2, memo), text(b, 3, memo)),
        Node::Div(a, b) => format!("{}/{}", text(a, 2, memo), text(b, 3, memo)),
        Node::Sqrt(a) => format!("sqrt({})", text(a, 0, memo)),
    };
    let out = if prec < min_prec { format!("({body})") } else { body };
    memo.insert(key, out.clone());
    out
}

fn latex(e: &RadicalExpr) -> String {
    fn go(e: &RadicalExpr, min_prec: u8, memo: &mut HashMap<(*const Node, u8), String>) -> String {
        let key = (Rc::as_ptr(&e.0), min_prec);
        if let Some(s) = memo.get(&key) {
            return s.clone();
        }
        let prec = match &*e.0 {
            Node::Add(..) | Node::Sub(..) => 1,
            Node::Mul(..) => 2,
            // \frac and \sqrt carry their own grouping
            Node::Div(..) | Node::Sqrt(..) => 3,
            Node::Rational(q) => {
                if q.is_negative() && q.denom().is_one() {
                    1
                } else {
                    3
                }
            }
        };
        let body = match &*e.0 {
            Node::Rational(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else if q.is_negative() {
                    format!("-\\frac{{{}}}{{{}}}", q.numer().magnitude(), q.denom())
                } else {
                    format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
                }
            }
            Node::Add(a, b) => format!("{}+{}", go(a, 1, memo), go(b, 2, memo)),
            Node::Sub(a, b) => format!("{}-{}", go(a, 1, memo), go(b, 2, memo)),
            Node::Mul(a, b) => format!("{}\\cdot {}", go(a, 2, memo), go(b, 3, memo)),
            Node::Div(a, b) => format!("\\frac{{{}}}{{{}}}", go(a, 0, memo), go(b, 0, memo)),
            Node::Sqrt(a) => format!("\\sqrt{{{}}}", go(a, 0, memo)),
        };
        let out = if prec < min_prec { format!("\\left({body}\\right)") } else { body };
        memo.insert(key, out.clone());
        out
    }
    let mut memo = HashMap::new();
    go(e, 0, &mut memo)
}

fn sexpr(e: &RadicalExpr, out: &mut String) {
    match &*e.0 {
        Node::Rational(q) => {
            if q.denom().is_one() {
                out.push_str(&q.numer().to_string());
            } else {
                out.push_str(&format!("{}/{}", q.numer(), q.denom()));
            }
        }
        Node::Add(a, b) => sexpr_bin(out, "add", a, b),
        Node::Sub(a, b) => sexpr_bin(out, "sub", a, b),
        Node::Mul(a, b) => sexpr_bin(out, "mul", a, b),
        Node::Div(a, b) => sexpr_bin(out, "div", a, b),
        Node::Sqrt(a) => {
            out.push_str("(sqrt ");
            sexpr(a, out);
            out.push(')');
        }
    }
}

fn sexpr_bin(out: &mut String, op: &str, a: &RadicalExpr, b: &RadicalExpr) {
    out.push('(');
    out.push_str(op);
    out.push(' ');
    sexpr(a, out);
    out.push(' ');
    sexpr(b, out);
    out.push(')');
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    LParen(usize),
    RParen(usize),
    Atom(usize, String),
}

impl Token {
    fn position(&self) -> usize {
        match self {
            Token::LParen(p) | Token::RParen(p) => *p,
            Token::Atom(p, _) => *p,
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' {
            tokens.push(Token::LParen(i));
            i += 1;
        } else if c == ')' {
            tokens.push(Token::RParen(i));
            i += 1;
        } else {
            let start = i;
            while i < bytes.len() {
                let c = bytes[i] as char;
                if c.is_whitespace() || c == '(' || c == ')' {
                    break;
                }
                i += 1;
            }
            tokens.push(Token::Atom(start, s[start..i].to_string()));
        }
    }
    Ok(tokens)
}

/// Parse the s-expression grammar documented at module level.
pub fn parse_sexpr(s: &str) -> Result<RadicalExpr, ParseError> {
    let tokens = tokenize(s)?;
    let mut pos = 0;
    let expr = parse_expr(&tokens, &mut pos, s.len())?;
    if pos != tokens.len() {
        return Err(ParseError {
            position: tokens[pos].position(),
            message: "unexpected trailing input".into(),
        });
    }
    Ok(expr)
}

fn parse_expr(
    tokens: &[Token],
    pos: &mut usize,
    input_len: usize,
) -> Result<RadicalExpr, ParseError> {
    let tok = tokens
        .get(*pos)
        .ok_or(ParseError { position: input_len, message: "unexpected end of input".into() })?;
    match tok {
        Token::Atom(p, a) => {
            *pos += 1;
            parse_atom(a, *p)
        }
        Token::LParen(p) => {
            *pos += 1;
            let head = match tokens.get(*pos) {
                Some(Token::Atom(_, a)) => a.clone(),
                Some(t) => {
                    return Err(ParseError {
                        position: t.position(),
                        message: "expected operator after '('".into(),
                    })
                }
                None => {
                    return Err(ParseError {
                        position: input_len,
                        message: "unexpected end of input".into(),
                    })
                }
            };
            *pos += 1;
            let expr = match head.as_str() {
                "sqrt" => {
                    let a = parse_expr(tokens, pos, input_len)?;
                    a.sqrt()
                }
                "add" | "sub" | "mul" | "div" => {
                    let a = parse_expr(tokens, pos, input_len)?;
                    let b = parse_expr(tokens, pos, input_len)?;
                    match head.as_str() {
                        "add" => a.add(&b),
                        "sub" => a.sub(&b),
                        "mul" => a.mul(&b),
                        _ => a.div(&b),
                    }
                }
                other => {
                    return Err(ParseError {
                        position: *p,
                        message: format!("unknown operator '{other}'"),
                    })
                }
            };
            match tokens.get(*pos) {
                Some(Token::RParen(_)) => {
                    *pos += 1;
                    Ok(expr)
                }
                Some(t) => {
                    Err(ParseError { position: t.position(), message: "expected ')'".into() })
                }
                None => Err(ParseError { position: input_len, message: "missing ')'".into() }),
            }
        }
        Token::RParen(p) => Err(ParseError { position: *p, message: "unexpected ')'".into() }),
    }
}

fn parse_atom(a: &str, p: usize) -> Result<RadicalExpr, ParseError> {
    let err = |msg: &str| ParseError { position: p, message: msg.to_string() };
    let (num_str, den_str) = match a.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (a, None),
    };
    let num: BigInt = num_str.parse().map_err(|_| err(&format!("invalid number '{a}'")))?;
    let den: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| err(&format!("invalid number '{a}'")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    if den.is_negative() {
        return Err(err("denominator must be positive"));
    }
    Ok(RadicalExpr::rational(BigRational::new(num, den)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn leaf(n: i64) -> RadicalExpr {
        RadicalExpr::integer(n)
    }

    fn golden() -> RadicalExpr {
        leaf(-1).add(&leaf(5).sqrt()).div(&leaf(4))
    }

    #[test]
    fn text_format_golden() {
        assert_eq!(golden().serialize(Format::Text), "(-1 + sqrt(5))/4");
    }

    #[test]
    fn latex_format_golden() {
        assert_eq!(golden().serialize(Format::Latex), "\\frac{-1+\\sqrt{5}}{4}");
    }

    #[test]
    fn sexpr_format_golden() {
        assert_eq!(golden().serialize(Format::Sexpr), "(div (add -1 (sqrt 5)) 4)");
    }

    #[test]
    fn parse_simple() {
        assert_eq!(parse_sexpr("(sqrt 2)").unwrap(), leaf(2).sqrt());
        assert_eq!(parse_sexpr("  3/4 ").unwrap(), RadicalExpr::rational(rat(3, 4)));
        assert_eq!(parse_sexpr("(add 1 (mul 2 3))").unwrap(), leaf(1).add(&leaf(2).mul(&leaf(3))));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_sexpr("(sqrt").unwrap_err();
        assert_eq!(e.position, 5);
        let e = parse_sexpr("(sqrt 2))").unwrap_err();
        assert_eq!(e.position, 8);
        assert!(parse_sexpr("(pow 2 3)").is_err());
        assert!(parse_sexpr("(add 1)").is_err());
        assert!(parse_sexpr("1/0").is_err());
        assert!(parse_sexpr("").is_err());
    }

    #[test]
    fn round_trip_structural() {
        let exprs = [
            golden(),
            leaf(2).sqrt().sqrt(),
            leaf(7).sub(&leaf(-3)).mul(&RadicalExpr::rational(rat(2, 9))),
            leaf(1).div(&leaf(1).add(&leaf(2).sqrt())),
        ];
        for e in exprs {
            let s = e.serialize(Format::Sexpr);
            let back = parse_sexpr(&s).unwrap();
            assert_eq!(back, e, "round trip failed for {s}");
        }
    }

    #[test]
    fn text_parenthesisation() {
        // subtraction binds: a - (b + c) keeps parens, (a - b) + c does not need them
        let e = leaf(1).sub(&leaf(2).add(&leaf(3)));
        assert_eq!(e.serialize(Format::Text), "1 - (2 + 3)");
        let e = leaf(1).sub(&leaf(2)).add(&leaf(3));
        assert_eq!(e.serialize(Format::Text), "1 - 2 + 3");
        // negative atoms get parenthesised where the sign would be ambiguous
        let e = leaf(3).mul(&leaf(-5));
        assert_eq!(e.serialize(Format::Text), "3*(-5)");
        let e = leaf(3).sub(&leaf(-5));
        assert_eq!(e.serialize(Format::Text), "3 - (-5)");
        // rational atoms keep multiplicative grouping unambiguous
        let e = RadicalExpr::rational(rat(3, 4)).mul(&leaf(7).sqrt());
        assert_eq!(e.serialize(Format::Text), "3/4*sqrt(7)");
        let e = leaf(7).sqrt().mul(&RadicalExpr::rational(rat(3, 4)));
        assert_eq!(e.serialize(Format::Text), "sqrt(7)*(3/4)");
    }

    #[test]
    fn proptest_round_trip_and_simplify() {
        use proptest::prelude::*;

        fn arb_expr() -> impl Strategy<Value = RadicalExpr> {
            let leaf = (any::<i32>(), 1u32..200)
                .prop_map(|(n, d)| RadicalExpr::rational(rat(n as i64, d as i64)));
            leaf.prop_recursive(5, 64, 3, |inner| {
                prop_oneof![
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(&b)),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| a.sub(&b)),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(&b)),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| a.div(&b)),
                    inner.prop_map(|a| a.sqrt()),
                ]
            })
        }

        let mut runner = proptest::test_runner::TestRunner::new_with_rng(
            proptest::test_runner::Config { cases: 1000, ..Default::default() },
            proptest::test_runner::TestRng::deterministic_rng(
                proptest::test_runner::RngAlgorithm::ChaCha,
            ),
        );
        runner
            .run(&arb_expr(), |e| {
                // round trip through the machine format
                let s = e.serialize(Format::Sexpr);
                let back = parse_sexpr(&s).map_err(|e| {
                    proptest::test_runner::TestCaseError::fail(format!("parse: {e}"))
                })?;
                prop_assert_eq!(&back, &e);
                // simplification preserves value whenever the original evaluates
                if let Ok(before) = e.eval_interval(96) {
                    let after = e.simplify().eval_interval(96).map_err(|err| {
                        proptest::test_runner::TestCaseError::fail(format!(
                            "simplified eval: {err}"
                        ))
                    })?;
                    prop_assert!(before.intersect(&after).is_some());
                }
                Ok(())
            })
            .unwrap();
    }
}
