//! Text form of polynomials.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*  |  '0'
//! term     := [rational '*'] atom
//! atom     := opname '(' expr ',' expr ')' | var
//! var      := 'x' digits
//! rational := integer ['/' positive-integer]
//! ```
//!
//! Operations are written functionally; arguments may themselves be sums and
//! are expanded bilinearly. Every resulting term must use each of
//! `x1 … xn` exactly once.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{ParseError, Result};
use crate::freeop::{Monomial, Poly, Tree};
use crate::linalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ops: &'a [String],
}

/// Expanded terms, each tagged with the offset of the term it came from.
type Terms = Vec<(usize, Rational, Tree)>;

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> std::result::Result<T, ParseError> {
        Err(ParseError::new(at, message))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> std::result::Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.err(self.pos, format!("expected `{c}`, found `{d}`")),
            None => self.err(self.pos, format!("expected `{c}`, found end of input")),
        }
    }

    fn integer(&mut self) -> std::result::Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..].chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return self.err(start, "expected an integer");
        }
        self.pos += digits;
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn identifier(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let first = rest.chars().next()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let len = rest
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .count();
        self.pos += len;
        Some((start, &self.src[start..start + len]))
    }

    fn expr(&mut self) -> std::result::Result<Terms, ParseError> {
        let mut out = Terms::new();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -Rational::one()
            }
            Some('+') => {
                self.pos += 1;
                Rational::one()
            }
            _ => Rational::one(),
        };
        loop {
            for (at, c, t) in self.term()? {
                out.push((at, c * &sign, t));
            }
            sign = match self.peek() {
                Some('+') => Rational::one(),
                Some('-') => -Rational::one(),
                _ => return Ok(out),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> std::result::Result<Terms, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let coefficient = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.integer()?;
            let mut value = Rational::from_integer(num);
            if self.peek() == Some('/') {
                self.pos += 1;
                let at = self.pos;
                let den = self.integer()?;
                if den.is_zero() {
                    return self.err(at, "zero denominator");
                }
                value /= Rational::from_integer(den);
            }
            self.expect('*')?;
            value
        } else {
            Rational::one()
        };
        Ok(self
            .atom()?
            .into_iter()
            .map(|(_, c, t)| (start, c * &coefficient, t))
            .collect())
    }

    fn atom(&mut self) -> std::result::Result<Terms, ParseError> {
        let Some((start, name)) = self.identifier() else {
            return match self.peek() {
                Some(c) => self.err(self.pos, format!("expected a variable or operation, found `{c}`")),
                None => self.err(self.pos, "expected a variable or operation, found end of input"),
            };
        };
        if let Some(index) = variable_index(name) {
            if index == 0 || index > 255 {
                return self.err(start, format!("variable `{name}` out of range x1..x255"));
            }
            return Ok(vec![(start, Rational::one(), Tree::Leaf((index - 1) as u8))]);
        }
        let Some(op) = self.ops.iter().position(|o| o == name) else {
            return self.err(start, format!("unknown operation `{name}` (known: {})", self.ops.join(", ")));
        };
        self.expect('(')?;
        let left = self.expr()?;
        self.expect(',')?;
        let right = self.expr()?;
        self.expect(')')?;
        let mut out = Terms::new();
        for (_, cl, tl) in &left {
            for (_, cr, tr) in &right {
                out.push((start, cl * cr, Tree::node(op as u8, tl.clone(), tr.clone())));
            }
        }
        Ok(out)
    }
}

fn variable_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Parses `src` over the operation names `ops`.
///
/// The arity is inferred from the largest variable unless `arity` is given;
/// the bare expression `0` needs an explicit arity.
pub fn parse_expr(src: &str, ops: &[String], arity: Option<usize>) -> Result<Poly> {
    let mut p = Parser { src, pos: 0, ops };
    if p.peek() == Some('0') {
        let save = p.pos;
        p.pos += 1;
        if p.peek().is_none() {
            let Some(n) = arity else {
                return Err(ParseError::new(save, "cannot infer the arity of `0`").into());
            };
            if n == 0 {
                return Err(crate::Error::ZeroArity);
            }
            return Ok(Poly::zero(n, ops.len()));
        }
        p.pos = save;
    }
    let terms = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(ParseError::new(p.pos, format!("unexpected `{c}` after expression")).into());
    }
    let max_var = terms
        .iter()
        .flat_map(|(_, _, t)| t.leaves())
        .max()
        .map_or(0, |v| v as usize + 1);
    let n = arity.unwrap_or(max_var);
    for (at, _, t) in &terms {
        check_multilinear(t, n, *at)?;
    }
    let terms = terms
        .iter()
        .map(|(_, c, t)| Ok((Monomial::from_tree(t)?, c.clone())))
        .collect::<Result<Vec<_>>>()?;
    Poly::from_terms(n, ops.len(), terms)
}

fn check_multilinear(t: &Tree, n: usize, at: usize) -> Result<()> {
    let leaves = t.leaves();
    let mut seen = BTreeSet::new();
    for v in &leaves {
        if *v as usize >= n {
            return Err(ParseError::new(at, format!("variable x{} exceeds the arity {n}", v + 1)).into());
        }
        if !seen.insert(*v) {
            return Err(ParseError::new(at, format!("not multilinear: x{} occurs twice in one term", v + 1)).into());
        }
    }
    if let Some(missing) = (0..n as u8).find(|v| !seen.contains(v)) {
        return Err(ParseError::new(at, format!("not multilinear: x{} is missing from a term", missing + 1)).into());
    }
    Ok(())
}

fn render_coefficient(out: &mut String, c: &Rational, first: bool, format: Format) {
    let negative = c.is_negative();
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    let abs = c.abs();
    if abs.is_one() {
        return;
    }
    match format {
        Format::Text => out.push_str(&format!("{abs}*")),
        Format::Latex if abs.is_integer() => out.push_str(&format!("{abs} ")),
        Format::Latex => out.push_str(&format!("\\frac{{{}}}{{{}}} ", abs.numer(), abs.denom())),
    }
}

fn latex_op(name: &str, single: bool) -> String {
    for (prefix, symbol) in [("prec", "\\prec"), ("succ", "\\succ")] {
        if name == prefix {
            return symbol.to_string();
        }
        if let Some(rest) = name.strip_prefix(prefix).and_then(|r| r.strip_prefix('_')) {
            return format!("{symbol}_{{{}}}", rest.replace('_', "\\_"));
        }
    }
    if single {
        "\\cdot".to_string()
    } else {
        format!("\\mathbin{{\\mathrm{{{}}}}}", name.replace('_', "\\_"))
    }
}

fn render_tree(out: &mut String, t: &Tree, ops: &[String], format: Format, top: bool) {
    match (t, format) {
        (Tree::Leaf(v), Format::Text) => out.push_str(&format!("x{}", v + 1)),
        (Tree::Leaf(v), Format::Latex) => out.push_str(&format!("x_{{{}}}", v + 1)),
        (Tree::Node(op, l, r), Format::Text) => {
            out.push_str(&ops[*op as usize]);
            out.push('(');
            render_tree(out, l, ops, format, false);
            out.push(',');
            render_tree(out, r, ops, format, false);
            out.push(')');
        }
        (Tree::Node(op, l, r), Format::Latex) => {
            if !top {
                out.push('(');
            }
            render_tree(out, l, ops, format, false);
            out.push_str(&format!(" {} ", latex_op(&ops[*op as usize], ops.len() == 1)));
            render_tree(out, r, ops, format, false);
            if !top {
                out.push(')');
            }
        }
    }
}

/// Canonical rendering: terms in monomial order, coefficient `1` omitted.
pub fn render(p: &Poly, ops: &[String], format: Format) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        render_coefficient(&mut out, c, i == 0, format);
        render_tree(&mut out, &m.to_tree(), ops, format, true);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn ops(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn associator_round_trip() {
        let m = ops(&["m"]);
        let p = parse_expr("m(m(x1,x2),x3) - m(x1,m(x2,x3))", &m, None).unwrap();
        assert_eq!(p.arity(), 3);
        assert_eq!(p.len(), 2);
        assert_eq!(render(&p, &m, Format::Text), "m(m(x1,x2),x3) - m(x1,m(x2,x3))");
        assert_eq!(parse_expr(&render(&p, &m, Format::Text), &m, Some(3)).unwrap(), p);
    }

    #[test]
    fn right_commutativity_text() {
        let m = ops(&["m"]);
        let p = parse_expr(" - m(m(x1, x3), x2) + m(m(x1,x2),x3)", &m, None).unwrap();
        assert_eq!(render(&p, &m, Format::Text), "m(m(x1,x2),x3) - m(m(x1,x3),x2)");
    }

    #[test]
    fn derived_symbols_in_latex() {
        let d = ops(&["prec", "succ"]);
        let p = parse_expr("prec(succ(x1,x2),x3) - succ(x1,prec(x2,x3))", &d, None).unwrap();
        let latex = render(&p, &d, Format::Latex);
        assert!(latex.contains("\\prec") && latex.contains("\\succ"), "{latex}");
    }

    #[test]
    fn coefficients_and_bilinear_arguments() {
        let m = ops(&["m"]);
        let p = parse_expr("-1/2*m(x2,x1) + 3/2*m(x1,x2)", &m, None).unwrap();
        assert_eq!(render(&p, &m, Format::Text), "3/2*m(x1,x2) - 1/2*m(x2,x1)");
        let q = parse_expr("m(m(x1,x2) - m(x2,x1), x3)", &m, None).unwrap();
        assert_eq!(render(&q, &m, Format::Text), "m(m(x1,x2),x3) - m(m(x2,x1),x3)");
    }

    #[test]
    fn zero_and_single_leaf() {
        let m = ops(&["m"]);
        let z = parse_expr("0", &m, Some(3)).unwrap();
        assert!(z.is_zero());
        assert_eq!(render(&z, &m, Format::Text), "0");
        assert!(parse_expr("0", &m, None).is_err());
        let x = parse_expr("x1", &m, None).unwrap();
        assert_eq!(x.arity(), 1);
    }

    #[test]
    fn diagnostics() {
        let m = ops(&["m"]);
        let err = |s: &str| match parse_expr(s, &m, None).unwrap_err() {
            Error::Parse(e) => e,
            other => panic!("{other:?}"),
        };
        assert!(err("m(x1,x1)").message.contains("twice"));
        assert_eq!(err("m(x1,x2) + m(x2,x2)").position, 11);
        assert!(err("m(x1,x3)").message.contains("missing"));
        assert!(err("q(x1,x2)").message.contains("unknown operation"));
        assert_eq!(err("m(x1 x2)").position, 5);
        assert!(err("m(x1,x2) +").message.contains("end of input"));
        assert!(err("1/0*x1").message.contains("zero denominator"));
    }
}
