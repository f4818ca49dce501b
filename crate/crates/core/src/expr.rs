//! Expressions over minors, coordinate generators and Berezinians of
//! matrices of expressions, with an ASCII grammar and LaTeX output.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' '-'? int)?
//! atom    := int ('/' int)? | gen | minor | ber | '(' expr ')'
//! gen     := ('x' | 'y' | 'al' | 'be') '[' int ',' int ']'
//! minor   := ('X' | 'Xs') '[' slots ('|' slots)? ']'
//! slots   := (slot (',' slot)*)?
//! slot    := '^'? int
//! ber     := ('Ber' | 'Bers') '[' int '|' int ']' '(' row (';' row)* ')'
//! row     := expr (',' expr)*
//! ```
//!
//! Inside a minor, `^` marks a fake column: an odd column in an even slot
//! or an even column in an odd slot.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::SuperAlgebra;
use crate::error::{Error, Result};
use crate::minors::{Column, MinorSymbol};
use crate::superscalar::ParityClass;
use crate::supermatrix::{ParitySignature, SuperMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(BigRational),
    Gen(String),
    Minor(MinorSymbol),
    Sum(Vec<Expr>),
    Neg(Box<Expr>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, i64),
    Ber { starred: bool, sig: ParitySignature, entries: Vec<Expr> },
}

/// Supplies values for the leaves of an [`Expr`].
pub trait Resolver {
    type Value: SuperAlgebra;
    fn ctx(&self) -> <Self::Value as SuperAlgebra>::Ctx;
    fn minor(&self, m: &MinorSymbol) -> Result<Self::Value>;
    fn generator(&self, name: &str) -> Result<Self::Value>;
}

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Num(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn minor(m: MinorSymbol) -> Expr {
        Expr::Minor(m)
    }

    pub fn product(factors: Vec<Expr>) -> Expr {
        if factors.len() == 1 {
            factors.into_iter().next().expect("one factor")
        } else {
            Expr::Product(factors)
        }
    }

    pub fn pow(base: Expr, e: i64) -> Expr {
        if e == 1 {
            base
        } else {
            Expr::Pow(Box::new(base), e)
        }
    }

    pub fn neg(e: Expr) -> Expr {
        match e {
            Expr::Neg(inner) => *inner,
            other => Expr::Neg(Box::new(other)),
        }
    }

    pub fn evaluate<R: Resolver>(&self, res: &R) -> Result<R::Value> {
        let ctx = res.ctx();
        Ok(match self {
            Expr::Num(q) => R::Value::from_rational(&ctx, q),
            Expr::Gen(name) => res.generator(name)?,
            Expr::Minor(m) => res.minor(m)?,
            Expr::Sum(terms) => {
                let mut acc = R::Value::zero(&ctx);
                for t in terms {
                    acc = acc.plus(&t.evaluate(res)?);
                }
                acc
            }
            Expr::Neg(inner) => inner.evaluate(res)?.negated(),
            Expr::Product(factors) => {
                let mut acc = R::Value::one(&ctx);
                for f in factors {
                    acc = acc.times(&f.evaluate(res)?);
                }
                acc
            }
            Expr::Pow(base, e) => {
                let b = base.evaluate(res)?;
                let b = if *e < 0 { b.inverse_even()? } else { b };
                let mut acc = R::Value::one(&ctx);
                for _ in 0..e.unsigned_abs() {
                    acc = acc.times(&b);
                }
                acc
            }
            Expr::Ber { starred, sig, entries } => {
                let values = entries.iter().map(|e| e.evaluate(res)).collect::<Result<Vec<_>>>()?;
                let n = sig.len();
                let m = SuperMatrix::new(&ctx, *sig, *sig, values)?;
                debug_assert_eq!(m.row_signature().len(), n);
                if *starred {
                    m.berezinian_star()?
                } else {
                    m.berezinian()?
                }
            }
        })
    }

    /// Visits every minor leaf.
    pub fn minors(&self) -> Vec<&MinorSymbol> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Minor(m) = e {
                out.push(m);
            }
        });
        out
    }

    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Sum(v) | Expr::Product(v) => v.iter().for_each(|e| e.walk(f)),
            Expr::Ber { entries, .. } => entries.iter().for_each(|e| e.walk(f)),
            Expr::Neg(e) | Expr::Pow(e, _) => e.walk(f),
            _ => {}
        }
    }

    /// Applies `f` to the minor leaves in depth-first order, passing the
    /// leaf position.
    pub fn map_minors(&self, f: &mut impl FnMut(usize, &MinorSymbol) -> MinorSymbol) -> Expr {
        let mut counter = 0;
        self.map_minors_inner(f, &mut counter)
    }

    fn map_minors_inner(
        &self,
        f: &mut impl FnMut(usize, &MinorSymbol) -> MinorSymbol,
        counter: &mut usize,
    ) -> Expr {
        match self {
            Expr::Minor(m) => {
                let out = f(*counter, m);
                *counter += 1;
                Expr::Minor(out)
            }
            Expr::Sum(v) => Expr::Sum(v.iter().map(|e| e.map_minors_inner(f, counter)).collect()),
            Expr::Product(v) => {
                Expr::Product(v.iter().map(|e| e.map_minors_inner(f, counter)).collect())
            }
            Expr::Neg(e) => Expr::Neg(Box::new(e.map_minors_inner(f, counter))),
            Expr::Pow(e, k) => Expr::Pow(Box::new(e.map_minors_inner(f, counter)), *k),
            Expr::Ber { starred, sig, entries } => Expr::Ber {
                starred: *starred,
                sig: *sig,
                entries: entries.iter().map(|e| e.map_minors_inner(f, counter)).collect(),
            },
            other => other.clone(),
        }
    }

    /// Parity of the expression if it can be read off syntactically.
    pub fn parity_class(&self) -> ParityClass {
        match self {
            Expr::Num(q) if q.is_zero() => ParityClass::Zero,
            Expr::Num(_) => ParityClass::Even,
            Expr::Gen(name) => {
                if name.starts_with("al") || name.starts_with("be") {
                    ParityClass::Odd
                } else {
                    ParityClass::Even
                }
            }
            Expr::Minor(m) => {
                if m.is_odd() {
                    ParityClass::Odd
                } else {
                    ParityClass::Even
                }
            }
            Expr::Neg(e) => e.parity_class(),
            Expr::Pow(e, k) => {
                if *k % 2 == 0 {
                    ParityClass::Even
                } else {
                    e.parity_class()
                }
            }
            Expr::Product(v) => v.iter().fold(ParityClass::Even, |acc, e| {
                match (acc, e.parity_class()) {
                    (ParityClass::Zero, _) | (_, ParityClass::Zero) => ParityClass::Zero,
                    (ParityClass::Inhomogeneous, _) | (_, ParityClass::Inhomogeneous) => {
                        ParityClass::Inhomogeneous
                    }
                    (a, b) => {
                        if (a == ParityClass::Odd) != (b == ParityClass::Odd) {
                            ParityClass::Odd
                        } else {
                            ParityClass::Even
                        }
                    }
                }
            }),
            Expr::Sum(v) => v.iter().fold(ParityClass::Zero, |acc, e| match (acc, e.parity_class()) {
                (ParityClass::Zero, b) => b,
                (a, ParityClass::Zero) => a,
                (a, b) if a == b => a,
                _ => ParityClass::Inhomogeneous,
            }),
            Expr::Ber { sig, entries, .. } => {
                // A fake column (one column of opposite parity) makes the
                // Berezinian odd.
                let n = sig.len();
                let mut flipped = 0;
                for j in 0..n {
                    let col_parity = sig.parity(j);
                    let flips = (0..n).any(|i| {
                        let expected = sig.parity(i) + col_parity;
                        let class = entries[i * n + j].parity_class();
                        class != ParityClass::Zero && !class.admits(expected)
                    });
                    if flips {
                        flipped += 1;
                    }
                }
                if flipped % 2 == 1 {
                    ParityClass::Odd
                } else {
                    ParityClass::Even
                }
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Sum(v) if v.len() > 1 => 1,
            Expr::Neg(_) => 2,
            Expr::Num(q) if q.is_negative() => 2,
            Expr::Num(q) if !q.is_integer() => 3,
            Expr::Product(v) if v.len() > 1 => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn text_at(&self, min: u8) -> String {
        let s = self.to_text();
        if self.precedence() < min {
            format!("({s})")
        } else {
            s
        }
    }

    /// ASCII text accepted by [`parse_expression`].
    pub fn to_text(&self) -> String {
        match self {
            Expr::Num(q) => q.to_string(),
            Expr::Gen(name) => name.clone(),
            Expr::Minor(m) => m.to_text(),
            Expr::Sum(v) => {
                if v.is_empty() {
                    return "0".into();
                }
                let mut out = v[0].text_at(2);
                for t in &v[1..] {
                    match t {
                        Expr::Neg(inner) => {
                            out.push_str(" - ");
                            out.push_str(&inner.text_at(3));
                        }
                        other => {
                            out.push_str(" + ");
                            out.push_str(&other.text_at(3));
                        }
                    }
                }
                out
            }
            Expr::Neg(e) => format!("-{}", e.text_at(3)),
            Expr::Product(v) => {
                if v.is_empty() {
                    return "1".into();
                }
                v.iter().map(|e| e.text_at(4)).collect::<Vec<_>>().join("*")
            }
            Expr::Pow(b, k) => format!("{}^{}", b.text_at(5), k),
            Expr::Ber { starred, sig, entries } => {
                let n = sig.len();
                let rows: Vec<String> = (0..n)
                    .map(|i| {
                        (0..n).map(|j| entries[i * n + j].to_text()).collect::<Vec<_>>().join(", ")
                    })
                    .collect();
                format!(
                    "{}[{}|{}]({})",
                    if *starred { "Bers" } else { "Ber" },
                    sig.even,
                    sig.odd,
                    rows.join("; ")
                )
            }
        }
    }

    fn latex_at(&self, min: u8) -> String {
        let s = self.to_latex();
        if self.precedence() < min {
            format!("\\left({s}\\right)")
        } else {
            s
        }
    }

    pub fn to_latex(&self) -> String {
        match self {
            Expr::Num(q) => {
                if q.is_integer() {
                    q.to_string()
                } else {
                    format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
                }
            }
            Expr::Gen(name) => generator_latex(name),
            Expr::Minor(m) => m.to_latex(),
            Expr::Sum(v) => {
                if v.is_empty() {
                    return "0".into();
                }
                let mut out = v[0].latex_at(2);
                for t in &v[1..] {
                    match t {
                        Expr::Neg(inner) => {
                            out.push_str(" - ");
                            out.push_str(&inner.latex_at(3));
                        }
                        other => {
                            out.push_str(" + ");
                            out.push_str(&other.latex_at(3));
                        }
                    }
                }
                out
            }
            Expr::Neg(e) => format!("-{}", e.latex_at(3)),
            Expr::Product(v) => v.iter().map(|e| e.latex_at(4)).collect::<Vec<_>>().join(""),
            Expr::Pow(b, k) => match b.as_ref() {
                Expr::Minor(_) | Expr::Gen(_) => format!("{}^{{{}}}", b.to_latex(), k),
                other => format!("\\left({}\\right)^{{{}}}", other.to_latex(), k),
            },
            Expr::Ber { starred, sig, entries } => {
                let n = sig.len();
                let mut rows = Vec::new();
                for i in 0..n {
                    let mut cells = Vec::new();
                    for j in 0..n {
                        if j == sig.even && j > 0 {
                            cells.push("\\vline".to_string());
                        }
                        cells.push(entries[i * n + j].to_latex());
                    }
                    let mut row = cells.join(" & ");
                    if i + 1 == sig.even && sig.odd > 0 {
                        row.push_str("\\\\ \\hline ");
                    } else if i + 1 < n {
                        row.push_str("\\\\ ");
                    }
                    rows.push(row);
                }
                format!(
                    "\\mathrm{{Ber}}{}\\begin{{pmatrix}}{}\\end{{pmatrix}}",
                    if *starred { "^{*}" } else { "" },
                    rows.concat()
                )
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

fn generator_latex(name: &str) -> String {
    let Some(open) = name.find('[') else {
        return name.to_string();
    };
    let head = &name[..open];
    let inner = name[open + 1..].trim_end_matches(']');
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 2 {
        return name.to_string();
    }
    let hat = |s: &str| format!("\\hat{{{s}}}");
    let (sym, a, b) = match head {
        "x" => ("x", parts[0].to_string(), parts[1].to_string()),
        "y" => ("y", hat(parts[0]), hat(parts[1])),
        "al" => ("\\alpha", parts[0].to_string(), hat(parts[1])),
        "be" => ("\\beta", hat(parts[0]), parts[1].to_string()),
        _ => return name.to_string(),
    };
    format!("{sym}_{{{a}{b}}}")
}

/// Parses the expression grammar in the module documentation.
pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error_at(&self, pos: usize, message: &str) -> Error {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Syntax { line, column, message: message.to_string() }
    }

    fn error(&self, message: &str) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        self.src[start..self.pos].parse().map_err(|_| self.error_at(start, "bad integer"))
    }

    fn small(&mut self) -> Result<usize> {
        let start = self.pos;
        let v = self.integer()?;
        usize::try_from(v).map_err(|_| self.error_at(start, "index too large"))
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat('+') {
                terms.push(self.term()?);
            } else if self.eat('-') {
                terms.push(Expr::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().expect("term") } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.unary()?];
        while self.eat('*') {
            factors.push(self.unary()?);
        }
        Ok(Expr::product(factors))
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let k = self.small()? as i64;
        let k = if negative { -k } else { k };
        if k.abs() >= 2 && base.parity_class() == ParityClass::Odd {
            return Err(self.error_at(start, "odd element raised to a power of at least 2"));
        }
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let save = self.pos;
                if self.eat('/') {
                    if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        let start = self.pos;
                        let d = self.integer()?;
                        if d.is_zero() {
                            return Err(self.error_at(start, "zero denominator"));
                        }
                        return Ok(Expr::Num(BigRational::new(n, d)));
                    }
                    self.pos = save;
                }
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident();
                match name {
                    "x" | "y" | "al" | "be" => {
                        self.expect('[')?;
                        let a = self.small()?;
                        self.expect(',')?;
                        let b = self.small()?;
                        self.expect(']')?;
                        Ok(Expr::Gen(format!("{name}[{a},{b}]")))
                    }
                    "X" | "Xs" => self.minor(name == "Xs"),
                    "Ber" | "Bers" => self.ber(name == "Bers"),
                    _ => Err(self.error_at(start, &format!("unknown generator `{name}`"))),
                }
            }
            Some(c) => Err(self.error(&format!("unexpected `{c}`"))),
        }
    }

    fn slots(&mut self, odd_class: bool) -> Result<Vec<Column>> {
        let mut out = Vec::new();
        if matches!(self.peek(), Some('|') | Some(']')) {
            return Ok(out);
        }
        loop {
            let fake = self.eat('^');
            let i = self.small()?;
            out.push(if fake != odd_class { Column::Odd(i) } else { Column::Even(i) });
            if !self.eat(',') {
                break;
            }
        }
        Ok(out)
    }

    fn minor(&mut self, starred: bool) -> Result<Expr> {
        let start = self.pos;
        self.expect('[')?;
        let even_slots = self.slots(false)?;
        let odd_slots = if self.eat('|') { self.slots(true)? } else { Vec::new() };
        self.expect(']')?;
        let m = MinorSymbol { starred, even_slots, odd_slots };
        if m.fake_count() > 1 {
            return Err(self.error_at(start, "at most one fake column"));
        }
        if m.fake_count() == 1 {
            let fake_even = m.even_slots.iter().any(|c| c.is_odd());
            if fake_even == starred {
                return Err(self.error_at(
                    start,
                    "an odd column in an even slot needs X, an even column in an odd slot needs Xs",
                ));
            }
        }
        Ok(Expr::Minor(m))
    }

    fn ber(&mut self, starred: bool) -> Result<Expr> {
        let start = self.pos;
        self.expect('[')?;
        let r = self.small()?;
        self.expect('|')?;
        let s = self.small()?;
        self.expect(']')?;
        self.expect('(')?;
        let mut entries = Vec::new();
        let mut rows = 0;
        loop {
            let mut width = 0;
            loop {
                entries.push(self.expr()?);
                width += 1;
                if !self.eat(',') {
                    break;
                }
            }
            if width != r + s {
                return Err(self.error_at(start, "Berezinian rows must have r+s entries"));
            }
            rows += 1;
            if !self.eat(';') {
                break;
            }
        }
        self.expect(')')?;
        if rows != r + s {
            return Err(self.error_at(start, "Berezinian needs r+s rows"));
        }
        Ok(Expr::Ber { starred, sig: ParitySignature::new(r, s), entries })
    }
}

/// Rational one, for callers building expressions.
pub fn one() -> Expr {
    Expr::Num(BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let e = parse_expression("X[1|1]*Xs[1|1]-1").unwrap();
        assert_eq!(e.to_text(), "X[1|1]*Xs[1|1] - 1");
        assert_eq!(parse_expression(&e.to_text()).unwrap(), e);
    }

    #[test]
    fn odd_square_is_rejected() {
        let err = parse_expression("al[1,1]^2").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, column: 1, .. }), "{err:?}");
        assert!(parse_expression("X[^2|1]^2").is_err());
        assert!(parse_expression("X[2|1]^2").is_ok());
    }

    #[test]
    fn fake_markers() {
        let Expr::Minor(m) = parse_expression("X[^2|1]").unwrap() else { panic!() };
        assert_eq!(m.even_slots, vec![Column::Odd(2)]);
        assert!(m.is_odd());
        let Expr::Minor(m) = parse_expression("Xs[1|^3]").unwrap() else { panic!() };
        assert_eq!(m.odd_slots, vec![Column::Even(3)]);
        assert!(parse_expression("Xs[^1|1]").is_err());
    }

    #[test]
    fn error_positions() {
        match parse_expression("X[1|1] +\n  q[1,1]") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ber_round_trip() {
        let text = "Ber[1|1](X[2|1], X[^2|1]; Xs[1|^2], Xs[1|2])";
        let e = parse_expression(text).unwrap();
        assert_eq!(e.to_text(), text);
        assert_eq!(e.parity_class(), ParityClass::Even);
    }

    #[test]
    fn latex_forms() {
        let e = parse_expression("X[1|1]*Xs[1|1]").unwrap();
        assert_eq!(e.to_latex(), "X_{1|\\hat{1}}X^*_{1|\\hat{1}}");
        assert_eq!(parse_expression("be[1,2]").unwrap().to_latex(), "\\beta_{\\hat{1}2}");
    }
}
