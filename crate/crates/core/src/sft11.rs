//! Invariants of SL(1|1): the abstract `Y`/`Y*` polynomial ring, its
//! rewriting to standard products, and the leading-term machinery on the
//! Laurent-exterior coordinate ring.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::SuperAlgebra;
use crate::error::{Error, Result};
use crate::expr::{parse_expression, Expr};
use crate::minors::{minor_of, Column, GenericMatrix, MinorSymbol};
use crate::relations::sl11_plucker_relations;
use crate::superscalar::{OddSet, ParityClass, Ring, Scalar};
use crate::supermatrix::{ParitySignature, SuperMatrix};

/// Rewriting passes allowed before giving up.
pub const DEFAULT_FUEL: usize = 10_000;

// ---------------------------------------------------------------------------
// Laurent-exterior coordinate ring

/// `Q[x_{1i}^{±1}, y_{1̂ĵ}^{±1}] ⊗ Λ[α_{1ĵ}, β_{1̂j}]` for a `1|1 × p|q`
/// matrix. Even slots are `x_1..x_p, y_1..y_q`; odd slots are
/// `α_1..α_q, β_1..β_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LaurentCtx {
    pub p: usize,
    pub q: usize,
}

impl LaurentCtx {
    pub fn new(p: usize, q: usize) -> Result<LaurentCtx> {
        if p == 0 || q == 0 || p + q > 32 {
            return Err(Error::Dimension(format!("Laurent ring for p={p}, q={q}")));
        }
        Ok(LaurentCtx { p, q })
    }

    pub fn even_len(&self) -> usize {
        self.p + self.q
    }

    pub fn odd_len(&self) -> usize {
        self.p + self.q
    }

    pub fn even_name(&self, k: usize) -> String {
        if k < self.p {
            format!("x[1,{}]", k + 1)
        } else {
            format!("y[1,{}]", k - self.p + 1)
        }
    }

    pub fn odd_name(&self, k: usize) -> String {
        if k < self.q {
            format!("al[1,{}]", k + 1)
        } else {
            format!("be[1,{}]", k - self.q + 1)
        }
    }

    /// The coordinate matrix with rows `(x | α)` and `(β | y)`.
    pub fn coordinate_matrix(&self) -> SuperMatrix<Laurent> {
        let (p, q) = (self.p, self.q);
        SuperMatrix::from_fn(
            self,
            ParitySignature::new(1, 1),
            ParitySignature::new(p, q),
            |i, j| match (i == 0, j < p) {
                (true, true) => Laurent::even_var(self, j),
                (true, false) => Laurent::odd_var(self, j - p),
                (false, true) => Laurent::odd_var(self, q + j),
                (false, false) => Laurent::even_var(self, j),
            },
        )
    }
}

/// `Π x^{a} (x^{-1})^{b} Π ξ^{c}`, stored as signed even exponents (so
/// `a·b = 0` per generator) and a set of odd generators in increasing
/// order. `Ord` is the three-case order on this basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisMonomial {
    pub exps: Vec<i32>,
    pub odd: OddSet,
}

impl BasisMonomial {
    pub fn one(ctx: &LaurentCtx) -> BasisMonomial {
        BasisMonomial { exps: vec![0; ctx.even_len()], odd: OddSet::EMPTY }
    }

    pub fn a(&self, k: usize) -> u32 {
        self.exps[k].max(0) as u32
    }

    pub fn b(&self, k: usize) -> u32 {
        (-self.exps[k]).max(0) as u32
    }

    pub fn c(&self, k: usize) -> u32 {
        ((self.odd.0 >> k) & 1) as u32
    }

    /// The product, or `None` when odd generators repeat. The flag is the
    /// sign of reordering the odd part.
    pub fn mul(&self, other: &BasisMonomial) -> Option<(BasisMonomial, bool)> {
        let (odd, negative) = OddSet::merge(self.odd, other.odd)?;
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Some((BasisMonomial { exps, odd }, negative))
    }

    pub fn display_with(&self, ctx: &LaurentCtx) -> String {
        let mut parts = Vec::new();
        for (k, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ctx.even_name(k)),
                _ => parts.push(format!("{}^{e}", ctx.even_name(k))),
            }
        }
        parts.extend(self.odd.indices().map(|k| ctx.odd_name(k)));
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Orders on the monomial basis. `Printed` is the three-case order with
/// positive exponents first (larger wins), then inverse
/// exponents (smaller wins), then odd generators (present wins).
/// `InverseFirst` swaps the first two cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Printed,
    InverseFirst,
}

impl MonomialOrder {
    pub fn compare(self, x: &BasisMonomial, y: &BasisMonomial) -> Ordering {
        let n = x.exps.len();
        let by_a = || {
            (0..n).find(|&k| x.a(k) != y.a(k)).map(|k| y.a(k).cmp(&x.a(k)))
        };
        let by_b = || {
            (0..n).find(|&k| x.b(k) != y.b(k)).map(|k| x.b(k).cmp(&y.b(k)))
        };
        let first = match self {
            MonomialOrder::Printed => by_a().or_else(by_b),
            MonomialOrder::InverseFirst => by_b().or_else(by_a),
        };
        if let Some(o) = first {
            return o;
        }
        let diff = x.odd.0 ^ y.odd.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let k = diff.trailing_zeros() as usize;
        y.c(k).cmp(&x.c(k))
    }
}

impl Ord for BasisMonomial {
    fn cmp(&self, other: &BasisMonomial) -> Ordering {
        MonomialOrder::Printed.compare(self, other)
    }
}

impl PartialOrd for BasisMonomial {
    fn partial_cmp(&self, other: &BasisMonomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the Laurent-exterior ring. Terms iterate from the
/// smallest basis monomial, so the first one is the leading term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    ctx: LaurentCtx,
    terms: BTreeMap<BasisMonomial, BigRational>,
}

impl Laurent {
    pub fn monomial(ctx: &LaurentCtx, m: BasisMonomial, c: BigRational) -> Laurent {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Laurent { ctx: *ctx, terms }
    }

    pub fn even_var(ctx: &LaurentCtx, k: usize) -> Laurent {
        let mut m = BasisMonomial::one(ctx);
        m.exps[k] = 1;
        Laurent::monomial(ctx, m, BigRational::one())
    }

    pub fn odd_var(ctx: &LaurentCtx, k: usize) -> Laurent {
        let m = BasisMonomial { exps: vec![0; ctx.even_len()], odd: OddSet::single(k) };
        Laurent::monomial(ctx, m, BigRational::one())
    }

    pub fn ctx(&self) -> &LaurentCtx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(terms: &mut BTreeMap<BasisMonomial, BigRational>, m: BasisMonomial, c: BigRational) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Converts a symbolic scalar over `generic_matrix(1,1,p,q)`; every
    /// denominator factor must be a single coordinate.
    pub fn from_scalar(ctx: &LaurentCtx, v: &Scalar) -> Result<Laurent> {
        let ring = v.ring();
        if ring.even_count() != ctx.even_len() || ring.odd_count() != ctx.odd_len() {
            return Err(Error::ContextMismatch);
        }
        let den = v.denominator();
        let mut shift = vec![0i32; ctx.even_len()];
        for (f, e) in den.factors() {
            let k = f.as_variable().ok_or_else(|| {
                Error::NotLaurent(format!("denominator factor {}", f.display_with(ring.even_names())))
            })?;
            shift[k] -= e as i32;
        }
        let scale = BigRational::new(BigInt::one(), den.constant().to_big());
        let mut terms = BTreeMap::new();
        for (odd, poly) in v.numerator_terms() {
            for (mono, c) in poly.terms() {
                let exps = (0..ctx.even_len()).map(|k| mono.exp(k) as i32 + shift[k]).collect();
                let coeff = BigRational::from_integer(c.to_big()) * &scale;
                Laurent::accumulate(&mut terms, BasisMonomial { exps, odd: *odd }, coeff);
            }
        }
        Ok(Laurent { ctx: *ctx, terms })
    }

    /// The same element as a symbolic scalar of `ring`, whose generators
    /// must follow the `generic_matrix(1,1,p,q)` layout.
    pub fn to_scalar(&self, ring: &Ring) -> Result<Scalar> {
        if ring.even_count() != self.ctx.even_len() || ring.odd_count() != self.ctx.odd_len() {
            return Err(Error::ContextMismatch);
        }
        let mut acc = Scalar::zero(ring);
        for (m, c) in &self.terms {
            let mut t = Scalar::from_rational(ring, c);
            for (k, &e) in m.exps.iter().enumerate() {
                if e != 0 {
                    t = t.mul(&Scalar::even_var(ring, k).powi(e as i64)?);
                }
            }
            for k in m.odd.indices() {
                t = t.mul(&Scalar::odd_var(ring, k));
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let c = c.abs();
            let body = m.display_with(&self.ctx);
            if c.is_one() {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&c.to_string());
            } else {
                out.push_str(&format!("{c}*{body}"));
            }
        }
        out
    }
}

impl SuperAlgebra for Laurent {
    type Ctx = LaurentCtx;

    fn zero(ctx: &LaurentCtx) -> Laurent {
        Laurent { ctx: *ctx, terms: BTreeMap::new() }
    }

    fn from_int(ctx: &LaurentCtx, v: i64) -> Laurent {
        Laurent::from_rational(ctx, &BigRational::from_integer(BigInt::from(v)))
    }

    fn from_rational(ctx: &LaurentCtx, v: &BigRational) -> Laurent {
        Laurent::monomial(ctx, BasisMonomial::one(ctx), v.clone())
    }

    fn context(&self) -> LaurentCtx {
        self.ctx
    }

    fn plus(&self, other: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Laurent::accumulate(&mut terms, m.clone(), c.clone());
        }
        Laurent { ctx: self.ctx, terms }
    }

    fn minus(&self, other: &Laurent) -> Laurent {
        self.plus(&other.negated())
    }

    fn negated(&self) -> Laurent {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Laurent { ctx: self.ctx, terms }
    }

    fn times(&self, other: &Laurent) -> Laurent {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca * cb;
                    Laurent::accumulate(&mut terms, m, if negative { -c } else { c });
                }
            }
        }
        Laurent { ctx: self.ctx, terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn parity_class(&self) -> ParityClass {
        let mut even = false;
        let mut odd = false;
        for m in self.terms.keys() {
            if m.odd.len() % 2 == 1 {
                odd = true;
            } else {
                even = true;
            }
        }
        match (even, odd) {
            (false, false) => ParityClass::Zero,
            (true, false) => ParityClass::Even,
            (false, true) => ParityClass::Odd,
            (true, true) => ParityClass::Inhomogeneous,
        }
    }

    /// Units are exactly the even elements whose body is one monomial.
    fn has_unit_body(&self) -> bool {
        self.terms.keys().filter(|m| m.odd.is_empty()).count() == 1
    }

    fn inverse_even(&self) -> Result<Laurent> {
        if !self.has_unit_body() || self.parity_class() != ParityClass::Even {
            return Err(Error::NotInvertible(self.display()));
        }
        let (m, c) = self.terms.iter().find(|(m, _)| m.odd.is_empty()).expect("unit body");
        let inv_body = Laurent::monomial(
            &self.ctx,
            BasisMonomial { exps: m.exps.iter().map(|e| -e).collect(), odd: OddSet::EMPTY },
            c.recip(),
        );
        let one = Laurent::one(&self.ctx);
        let nil = self.times(&inv_body).minus(&one).negated();
        let mut sum = one.clone();
        let mut power = one;
        loop {
            power = power.times(&nil);
            if power.is_zero() {
                break;
            }
            sum = sum.plus(&power);
        }
        Ok(sum.times(&inv_body))
    }
}

/// The minimal basis monomial with non-zero coefficient.
pub fn leading_term(v: &Laurent) -> Result<BasisMonomial> {
    v.terms.keys().next().cloned().ok_or_else(|| Error::Invalid("leading term of zero".into()))
}

pub fn leading_term_in(order: MonomialOrder, v: &Laurent) -> Result<BasisMonomial> {
    v.terms
        .keys()
        .min_by(|x, y| order.compare(x, y))
        .cloned()
        .ok_or_else(|| Error::Invalid("leading term of zero".into()))
}

/// Leading term of a scalar over `generic_matrix(1,1,p,q)`.
pub fn leading_term_of_scalar(v: &Scalar, p: usize, q: usize) -> Result<BasisMonomial> {
    leading_term(&Laurent::from_scalar(&LaurentCtx::new(p, q)?, v)?)
}

// ---------------------------------------------------------------------------
// Abstract generators and polynomials

/// Generators of the abstract invariant ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YGen {
    /// `Y_{i|μ̂}`, even.
    Minor { i: usize, mu: usize },
    /// `Y_{η̂|ν̂}`, odd.
    Fake { eta: usize, nu: usize },
    /// `Y*_{j|ν̂}`, even.
    Star { j: usize, nu: usize },
    /// `Y*_{i|j}`, odd.
    StarFake { i: usize, j: usize },
}

impl YGen {
    pub fn is_odd(self) -> bool {
        matches!(self, YGen::Fake { .. } | YGen::StarFake { .. })
    }

    pub fn symbol(self) -> MinorSymbol {
        let (starred, even, odd) = match self {
            YGen::Minor { i, mu } => (false, Column::Even(i), Column::Odd(mu)),
            YGen::Fake { eta, nu } => (false, Column::Odd(eta), Column::Odd(nu)),
            YGen::Star { j, nu } => (true, Column::Even(j), Column::Odd(nu)),
            YGen::StarFake { i, j } => (true, Column::Even(i), Column::Even(j)),
        };
        MinorSymbol { starred, even_slots: vec![even], odd_slots: vec![odd] }
    }

    pub fn from_symbol(m: &MinorSymbol) -> Result<YGen> {
        let bad = || Error::Minor(format!("{m} is not a 1|1 minor"));
        if m.even_slots.len() != 1 || m.odd_slots.len() != 1 {
            return Err(bad());
        }
        Ok(match (m.starred, m.even_slots[0], m.odd_slots[0]) {
            (false, Column::Even(i), Column::Odd(mu)) => YGen::Minor { i, mu },
            (false, Column::Odd(eta), Column::Odd(nu)) => YGen::Fake { eta, nu },
            (true, Column::Even(j), Column::Odd(nu)) => YGen::Star { j, nu },
            (true, Column::Even(i), Column::Even(j)) => YGen::StarFake { i, j },
            _ => return Err(bad()),
        })
    }

    pub fn validate(self, p: usize, q: usize) -> Result<()> {
        self.symbol()
            .validate(1, 1, p, q)
            .map_err(|_| Error::OutOfRange(format!("{} at p={p}, q={q}", self.symbol())))
    }

    /// `X·X* = 1` partner of an even generator.
    pub fn partner(self) -> Option<YGen> {
        match self {
            YGen::Minor { i, mu } => Some(YGen::Star { j: i, nu: mu }),
            YGen::Star { j, nu } => Some(YGen::Minor { i: j, mu: nu }),
            _ => None,
        }
    }

    /// Generators whose image vanishes identically.
    fn is_null(self) -> bool {
        matches!(self, YGen::Fake { eta, nu } if eta == nu)
            || matches!(self, YGen::StarFake { i, j } if i == j)
    }

    /// Standard expressions: `Y_{1|μ̂}, Y_{i|1̂}, Y_{η̂|1̂}, Y*_{1|λ̂},
    /// Y*_{j|1̂}, Y*_{1|l}` with `i, η, j, l > 1`.
    pub fn is_standard(self) -> bool {
        match self {
            YGen::Minor { i, mu } => i == 1 || mu == 1,
            YGen::Fake { eta, nu } => nu == 1 && eta > 1,
            YGen::Star { j, nu } => j == 1 || nu == 1,
            YGen::StarFake { i, j } => i == 1 && j > 1,
        }
    }
}

impl fmt::Display for YGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Every generator at size `p|q`, in canonical order.
pub fn all_generators(p: usize, q: usize) -> Vec<YGen> {
    let mut out = Vec::new();
    for i in 1..=p {
        for mu in 1..=q {
            out.push(YGen::Minor { i, mu });
        }
    }
    for eta in 1..=q {
        for nu in 1..=q {
            out.push(YGen::Fake { eta, nu });
        }
    }
    for j in 1..=p {
        for nu in 1..=q {
            out.push(YGen::Star { j, nu });
        }
    }
    for i in 1..=p {
        for j in 1..=p {
            out.push(YGen::StarFake { i, j });
        }
    }
    out
}

/// A word in canonical order: generators ascending, odd ones at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YMonomial(Vec<(YGen, u32)>);

impl YMonomial {
    pub fn one() -> YMonomial {
        YMonomial(Vec::new())
    }

    pub fn generator(g: YGen) -> YMonomial {
        YMonomial(vec![(g, 1)])
    }

    /// Builds a monomial from powers; `None` if an odd generator repeats.
    pub fn from_powers(powers: &[(YGen, u32)]) -> Option<YMonomial> {
        let mut m = YMonomial::one();
        for &(g, e) in powers {
            for _ in 0..e {
                let (next, _) = m.mul(&YMonomial::generator(g))?;
                m = next;
            }
        }
        Some(m)
    }

    pub fn factors(&self) -> &[(YGen, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, g: YGen) -> u32 {
        self.0.iter().find(|(h, _)| *h == g).map_or(0, |(_, e)| *e)
    }

    /// Product with the Koszul sign; `None` when an odd generator repeats.
    pub fn mul(&self, other: &YMonomial) -> Option<(YMonomial, bool)> {
        let mut inversions = 0usize;
        for (gb, _) in other.0.iter().filter(|(g, _)| g.is_odd()) {
            for (ga, _) in self.0.iter().filter(|(g, _)| g.is_odd()) {
                match ga.cmp(gb) {
                    Ordering::Equal => return None,
                    Ordering::Greater => inversions += 1,
                    Ordering::Less => {}
                }
            }
        }
        let mut merged: BTreeMap<YGen, u32> = self.0.iter().copied().collect();
        for &(g, e) in &other.0 {
            *merged.entry(g).or_insert(0) += e;
        }
        Some((YMonomial(merged.into_iter().collect()), inversions % 2 == 1))
    }

    pub fn is_standard(&self) -> bool {
        self.0.iter().all(|(g, _)| g.is_standard())
            && !self.0.iter().any(|(g, _)| g.partner().is_some_and(|h| self.exponent(h) > 0))
    }

    fn to_expr(&self) -> Vec<Expr> {
        self.0.iter().map(|&(g, e)| Expr::pow(Expr::minor(g.symbol()), e as i64)).collect()
    }
}

/// A finite combination of canonical words with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantPolynomial {
    terms: BTreeMap<YMonomial, BigRational>,
}

impl InvariantPolynomial {
    pub fn zero() -> InvariantPolynomial {
        InvariantPolynomial::default()
    }

    pub fn constant(c: BigRational) -> InvariantPolynomial {
        InvariantPolynomial::term(YMonomial::one(), c)
    }

    pub fn one() -> InvariantPolynomial {
        InvariantPolynomial::constant(BigRational::one())
    }

    pub fn generator(g: YGen) -> InvariantPolynomial {
        InvariantPolynomial::term(YMonomial::generator(g), BigRational::one())
    }

    pub fn term(m: YMonomial, c: BigRational) -> InvariantPolynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        InvariantPolynomial { terms }
    }

    /// Product of generators in the given order.
    pub fn word(c: i64, gens: &[YGen]) -> InvariantPolynomial {
        let mut acc = InvariantPolynomial::constant(BigRational::from_integer(BigInt::from(c)));
        for &g in gens {
            acc = acc.mul(&InvariantPolynomial::generator(g));
        }
        acc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&YMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(YMonomial::degree).max().unwrap_or(0)
    }

    fn accumulate(&mut self, m: YMonomial, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &InvariantPolynomial) -> InvariantPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> InvariantPolynomial {
        InvariantPolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &InvariantPolynomial) -> InvariantPolynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &InvariantPolynomial) -> InvariantPolynomial {
        let mut out = InvariantPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.accumulate(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> InvariantPolynomial {
        (0..e).fold(InvariantPolynomial::one(), |acc, _| acc.mul(self))
    }

    pub fn validate(&self, p: usize, q: usize) -> Result<()> {
        for m in self.terms.keys() {
            for (g, _) in &m.0 {
                g.validate(p, q)?;
            }
        }
        Ok(())
    }

    /// Reads an expression in minors. `Ber`/`Bers` of `1|1` blocks and
    /// negative powers are accepted when every inverted entry is a single
    /// even generator, whose inverse is its `X·X* = 1` partner.
    pub fn from_expr(e: &Expr) -> Result<InvariantPolynomial> {
        Ok(match e {
            Expr::Num(q) => InvariantPolynomial::constant(q.clone()),
            Expr::Gen(name) => return Err(Error::UnknownGenerator(name.clone())),
            Expr::Minor(m) => InvariantPolynomial::generator(YGen::from_symbol(m)?),
            Expr::Sum(ts) => {
                let mut acc = InvariantPolynomial::zero();
                for t in ts {
                    acc = acc.add(&InvariantPolynomial::from_expr(t)?);
                }
                acc
            }
            Expr::Neg(inner) => InvariantPolynomial::from_expr(inner)?.neg(),
            Expr::Product(fs) => {
                let mut acc = InvariantPolynomial::one();
                for f in fs {
                    acc = acc.mul(&InvariantPolynomial::from_expr(f)?);
                }
                acc
            }
            Expr::Pow(base, k) => {
                let b = InvariantPolynomial::from_expr(base)?;
                if *k >= 0 {
                    b.pow(*k as u32)
                } else {
                    inverse(&b)?.pow(k.unsigned_abs() as u32)
                }
            }
            Expr::Ber { starred, sig, entries } => {
                if *sig != ParitySignature::new(1, 1) {
                    return Err(Error::Invalid("only 1|1 Berezinians are invariant words".into()));
                }
                let v = entries
                    .iter()
                    .map(InvariantPolynomial::from_expr)
                    .collect::<Result<Vec<_>>>()?;
                let (a, b, c, d) = (&v[0], &v[1], &v[2], &v[3]);
                if *starred {
                    let ai = inverse(a)?;
                    d.mul(&ai).sub(&c.mul(b).mul(&ai).mul(&ai))
                } else {
                    let di = inverse(d)?;
                    a.mul(&di).sub(&b.mul(c).mul(&di).mul(&di))
                }
            }
        })
    }

    pub fn parse(text: &str) -> Result<InvariantPolynomial> {
        InvariantPolynomial::from_expr(&parse_expression(text)?)
    }

    pub fn to_expr(&self) -> Expr {
        if self.terms.is_empty() {
            return Expr::int(0);
        }
        let terms: Vec<Expr> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut factors = m.to_expr();
                let abs = c.abs();
                if !abs.is_one() || factors.is_empty() {
                    factors.insert(0, Expr::Num(abs));
                }
                let t = Expr::product(factors);
                if c.is_negative() {
                    Expr::neg(t)
                } else {
                    t
                }
            })
            .collect();
        if terms.len() == 1 {
            terms.into_iter().next().expect("one term")
        } else {
            Expr::Sum(terms)
        }
    }

    pub fn to_text(&self) -> String {
        self.to_expr().to_text()
    }

    pub fn to_latex(&self) -> String {
        self.to_expr().to_latex()
    }
}

impl fmt::Display for InvariantPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

fn inverse(v: &InvariantPolynomial) -> Result<InvariantPolynomial> {
    if v.terms.len() == 1 {
        let (m, c) = v.terms.iter().next().expect("one term");
        if let [(g, 1)] = m.0.as_slice() {
            if let Some(h) = g.partner() {
                return Ok(InvariantPolynomial::term(YMonomial::generator(h), c.recip()));
            }
        }
    }
    Err(Error::NotInvertible(format!("{v} is not a single even minor")))
}

// ---------------------------------------------------------------------------
// The map π

/// Images of the generators in the Laurent-exterior ring.
pub struct LaurentPi {
    ctx: LaurentCtx,
    images: HashMap<YGen, Laurent>,
}

impl LaurentPi {
    pub fn new(p: usize, q: usize) -> Result<LaurentPi> {
        let ctx = LaurentCtx::new(p, q)?;
        let a = ctx.coordinate_matrix();
        let mut images = HashMap::new();
        for g in all_generators(p, q) {
            images.insert(g, minor_of(&a, &g.symbol())?);
        }
        Ok(LaurentPi { ctx, images })
    }

    pub fn ctx(&self) -> &LaurentCtx {
        &self.ctx
    }

    pub fn generator(&self, g: YGen) -> Result<&Laurent> {
        self.images
            .get(&g)
            .ok_or_else(|| Error::OutOfRange(format!("{g} at p={}, q={}", self.ctx.p, self.ctx.q)))
    }

    pub fn monomial(&self, m: &YMonomial) -> Result<Laurent> {
        let mut acc = Laurent::one(&self.ctx);
        for &(g, e) in &m.0 {
            let v = self.generator(g)?;
            for _ in 0..e {
                acc = acc.times(v);
            }
        }
        Ok(acc)
    }

    pub fn evaluate(&self, f: &InvariantPolynomial) -> Result<Laurent> {
        let mut acc = Laurent::zero(&self.ctx);
        for (m, c) in &f.terms {
            let t = self.monomial(m)?;
            acc = acc.plus(&t.times(&Laurent::from_rational(&self.ctx, c)));
        }
        Ok(acc)
    }
}

/// `π(f)` as a symbolic scalar over `generic_matrix(1,1,p,q)`.
pub fn pi_evaluate(f: &InvariantPolynomial, p: usize, q: usize) -> Result<Scalar> {
    pi_evaluate_on(&GenericMatrix::new(1, 1, p, q)?, f)
}

pub fn pi_evaluate_on(generic: &GenericMatrix, f: &InvariantPolynomial) -> Result<Scalar> {
    let (p, q) = (generic.matrix().col_signature().even, generic.matrix().col_signature().odd);
    f.validate(p, q)?;
    let ring = generic.ring();
    let mut acc = Scalar::zero(ring);
    for (m, c) in &f.terms {
        let mut t = Scalar::from_rational(ring, c);
        for &(g, e) in &m.0 {
            let v = generic.super_minor(&g.symbol())?;
            for _ in 0..e {
                t = t.mul(&v);
            }
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Rewriting

/// Expansion of a non-standard generator in standard ones, or `None` if
/// `g` is already standard.
fn expansion(g: YGen) -> Option<InvariantPolynomial> {
    use YGen::*;
    if g.is_null() {
        return Some(InvariantPolynomial::zero());
    }
    if g.is_standard() {
        return None;
    }
    let x11 = Minor { i: 1, mu: 1 };
    let xs11 = Star { j: 1, nu: 1 };
    Some(match g {
        Minor { i, mu } => InvariantPolynomial::word(1, &[xs11, Minor { i: 1, mu }, Minor { i, mu: 1 }])
            .sub(&InvariantPolynomial::word(
                1,
                &[xs11, Fake { eta: mu, nu: 1 }, Minor { i: 1, mu }, Minor { i: 1, mu }, StarFake { i: 1, j: i }],
            )),
        Star { j, nu } => InvariantPolynomial::word(1, &[x11, Star { j, nu: 1 }, Star { j: 1, nu }]).sub(
            &InvariantPolynomial::word(
                1,
                &[x11, StarFake { i: 1, j }, Star { j, nu: 1 }, Star { j, nu: 1 }, Fake { eta: nu, nu: 1 }],
            ),
        ),
        Fake { eta, nu } => InvariantPolynomial::word(1, &[xs11, Minor { i: 1, mu: nu }, Fake { eta, nu: 1 }])
            .sub(&InvariantPolynomial::word(
                1,
                &[xs11, Fake { eta: nu, nu: 1 }, Minor { i: 1, mu: nu }, Minor { i: 1, mu: nu }, Star { j: 1, nu: eta }],
            )),
        StarFake { i: k, j: l } => InvariantPolynomial::word(1, &[x11, Star { j: k, nu: 1 }, StarFake { i: 1, j: l }])
            .sub(&InvariantPolynomial::word(
                1,
                &[x11, StarFake { i: 1, j: k }, Star { j: k, nu: 1 }, Star { j: k, nu: 1 }, Minor { i: l, mu: 1 }],
            )),
    })
}

/// Drops words containing a vanishing generator and cancels `Y·Y*` pairs.
fn cancel_pairs(f: &InvariantPolynomial) -> InvariantPolynomial {
    let mut out = InvariantPolynomial::zero();
    'terms: for (m, c) in &f.terms {
        let mut powers: BTreeMap<YGen, u32> = BTreeMap::new();
        for &(g, e) in &m.0 {
            if g.is_null() {
                continue 'terms;
            }
            powers.insert(g, e);
        }
        let minors: Vec<YGen> =
            powers.keys().copied().filter(|g| matches!(g, YGen::Minor { .. })).collect();
        for g in minors {
            let h = g.partner().expect("even generator");
            if let (Some(&a), Some(&b)) = (powers.get(&g), powers.get(&h)) {
                let k = a.min(b);
                for (gen, e) in [(g, a - k), (h, b - k)] {
                    if e == 0 {
                        powers.remove(&gen);
                    } else {
                        powers.insert(gen, e);
                    }
                }
            }
        }
        out.accumulate(YMonomial(powers.into_iter().collect()), c.clone());
    }
    out
}

fn substitute(f: &InvariantPolynomial) -> InvariantPolynomial {
    let mut out = InvariantPolynomial::zero();
    for (m, c) in &f.terms {
        let mut acc = InvariantPolynomial::constant(c.clone());
        for &(g, e) in &m.0 {
            let factor = expansion(g).unwrap_or_else(|| InvariantPolynomial::generator(g));
            acc = acc.mul(&factor.pow(e));
        }
        out = out.add(&acc);
    }
    out
}

/// Rewrites `f` into a combination of standard products.
pub fn rewrite_to_standard(f: &InvariantPolynomial) -> Result<InvariantPolynomial> {
    rewrite_with_fuel(f, DEFAULT_FUEL)
}

pub fn rewrite_with_fuel(f: &InvariantPolynomial, fuel: usize) -> Result<InvariantPolynomial> {
    let mut current = cancel_pairs(f);
    for _ in 0..fuel {
        if current.terms.keys().all(YMonomial::is_standard) {
            return Ok(current);
        }
        current = cancel_pairs(&substitute(&current));
    }
    match current.terms.keys().find(|m| !m.is_standard()) {
        None => Ok(current),
        Some(m) => Err(Error::FuelExhausted(InvariantPolynomial::term(m.clone(), BigRational::one()).to_text())),
    }
}

// ---------------------------------------------------------------------------
// Standard products

/// `P_{1|μ} P_{i|1̂} P_{η̂|1̂} P*_{1|λ} P*_{j|1̂} P*_{1|l}`, each factor a
/// list of increasing indices with exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StandardProduct {
    pub mu: Vec<(usize, u32)>,
    pub i: Vec<(usize, u32)>,
    pub eta: Vec<usize>,
    pub lambda: Vec<(usize, u32)>,
    pub j: Vec<(usize, u32)>,
    pub l: Vec<usize>,
}

impl StandardProduct {
    pub fn from_monomial(m: &YMonomial) -> Option<StandardProduct> {
        if !m.is_standard() {
            return None;
        }
        let mut sp = StandardProduct::default();
        for &(g, e) in &m.0 {
            match g {
                YGen::Minor { i: 1, mu } => sp.mu.push((mu, e)),
                YGen::Minor { i, .. } => sp.i.push((i, e)),
                YGen::Fake { eta, .. } => sp.eta.push(eta),
                YGen::Star { j: 1, nu } => sp.lambda.push((nu, e)),
                YGen::Star { j, .. } => sp.j.push((j, e)),
                YGen::StarFake { j, .. } => sp.l.push(j),
            }
        }
        Some(sp)
    }

    /// The six factors as words, in product order.
    pub fn factors(&self) -> [Vec<(YGen, u32)>; 6] {
        [
            self.mu.iter().map(|&(mu, d)| (YGen::Minor { i: 1, mu }, d)).collect(),
            self.i.iter().map(|&(i, d)| (YGen::Minor { i, mu: 1 }, d)).collect(),
            self.eta.iter().map(|&eta| (YGen::Fake { eta, nu: 1 }, 1)).collect(),
            self.lambda.iter().map(|&(nu, d)| (YGen::Star { j: 1, nu }, d)).collect(),
            self.j.iter().map(|&(j, d)| (YGen::Star { j, nu: 1 }, d)).collect(),
            self.l.iter().map(|&j| (YGen::StarFake { i: 1, j }, 1)).collect(),
        ]
    }

    /// The canonical word. The product order places the odd
    /// factors in canonical order already, so no sign arises.
    pub fn monomial(&self) -> YMonomial {
        let powers: Vec<(YGen, u32)> = self.factors().concat();
        YMonomial::from_powers(&powers).expect("standard products have distinct odd factors")
    }

    pub fn degree(&self) -> u32 {
        self.monomial().degree()
    }

    pub fn is_valid(&self, p: usize, q: usize) -> bool {
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        let keys = |v: &[(usize, u32)]| v.iter().map(|x| x.0).collect::<Vec<_>>();
        let positive = |v: &[(usize, u32)]| v.iter().all(|x| x.1 > 0);
        let within = |v: &[usize], lo: usize, hi: usize| v.iter().all(|&x| x >= lo && x <= hi);
        let (mu, i, la, j) = (keys(&self.mu), keys(&self.i), keys(&self.lambda), keys(&self.j));
        [&mu, &i, &self.eta, &la, &j, &self.l].iter().all(|v| increasing(v))
            && [&self.mu, &self.i, &self.lambda, &self.j].iter().all(|v| positive(v))
            && within(&mu, 1, q)
            && within(&i, 2, p)
            && within(&self.eta, 2, q)
            && within(&la, 1, q)
            && within(&j, 2, p)
            && within(&self.l, 2, p)
            && !mu.iter().any(|x| la.contains(x))
            && !i.iter().any(|x| j.contains(x))
    }

    pub fn to_text(&self) -> String {
        InvariantPolynomial::term(self.monomial(), BigRational::one()).to_text()
    }
}

/// All standard products of degree at most `max_degree`, the empty
/// product included.
pub fn standard_products(p: usize, q: usize, max_degree: u32) -> Vec<StandardProduct> {
    let gens: Vec<YGen> = all_generators(p, q).into_iter().filter(|g| g.is_standard()).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(YGen, u32)> = Vec::new();
    fn walk(
        gens: &[YGen],
        from: usize,
        left: u32,
        stack: &mut Vec<(YGen, u32)>,
        out: &mut Vec<StandardProduct>,
    ) {
        let m = YMonomial(stack.clone());
        if m.is_standard() {
            out.push(StandardProduct::from_monomial(&m).expect("standard"));
        } else {
            return;
        }
        for k in from..gens.len() {
            let g = gens[k];
            let top = if g.is_odd() { left.min(1) } else { left };
            for e in 1..=top {
                stack.push((g, e));
                walk(gens, k + 1, left - e, stack, out);
                stack.pop();
            }
        }
    }
    walk(&gens, 0, max_degree, &mut stack, &mut out);
    out
}

/// Outcome of the distinct-leading-terms test.
#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub count: usize,
    pub leading_terms: Vec<BasisMonomial>,
    /// Pairs of positions sharing a leading term.
    pub collisions: Vec<(usize, usize)>,
}

impl IndependenceReport {
    pub fn verified(&self) -> bool {
        self.collisions.is_empty()
    }
}

pub fn independence_check(products: &[StandardProduct], p: usize, q: usize) -> Result<IndependenceReport> {
    independence_check_in(MonomialOrder::Printed, products, p, q)
}

pub fn independence_check_in(
    order: MonomialOrder,
    products: &[StandardProduct],
    p: usize,
    q: usize,
) -> Result<IndependenceReport> {
    let pi = LaurentPi::new(p, q)?;
    let leading_terms = products
        .par_iter()
        .map(|sp| {
            if !sp.is_valid(p, q) {
                return Err(Error::Invalid(format!("{} is not standard at p={p}, q={q}", sp.to_text())));
            }
            leading_term_in(order, &pi.monomial(&sp.monomial())?)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut seen: HashMap<&BasisMonomial, usize> = HashMap::new();
    let mut collisions = Vec::new();
    for (k, lt) in leading_terms.iter().enumerate() {
        if let Some(&first) = seen.get(lt) {
            collisions.push((first, k));
        } else {
            seen.insert(lt, k);
        }
    }
    Ok(IndependenceReport { count: products.len(), leading_terms, collisions })
}

/// The leading terms tabulated for the six factor types, multiplied out.
pub fn tabulated_leading_term(sp: &StandardProduct, ctx: &LaurentCtx) -> BasisMonomial {
    let p = ctx.p;
    let (x, y) = (|i: usize| i - 1, |k: usize| p + k - 1);
    let (al, be) = (|k: usize| k - 1, |j: usize| ctx.q + j - 1);
    let mut m = BasisMonomial::one(ctx);
    for &(mu, d) in &sp.mu {
        m.exps[x(1)] += d as i32;
        m.exps[y(mu)] -= d as i32;
    }
    for &(i, d) in &sp.i {
        m.exps[x(i)] += d as i32;
        m.exps[y(1)] -= d as i32;
    }
    for &eta in &sp.eta {
        m.exps[y(1)] -= 1;
        m.odd.0 |= 1 << al(eta);
    }
    for &(la, d) in &sp.lambda {
        m.exps[y(la)] += d as i32;
        m.exps[x(1)] -= d as i32;
    }
    for &(j, d) in &sp.j {
        m.exps[y(1)] += d as i32;
        m.exps[x(j)] -= d as i32;
    }
    for &l in &sp.l {
        m.exps[x(1)] -= 1;
        m.odd.0 |= 1 << be(l);
    }
    m
}

/// Per product: does the computed leading term match the tabulated one,
/// and is it the product of the leading terms of its six factors?
#[derive(Clone, Debug, Default)]
pub struct LeadingTermSurvey {
    pub count: usize,
    pub table_mismatches: Vec<usize>,
    pub non_multiplicative: Vec<usize>,
}

pub fn leading_term_survey(
    order: MonomialOrder,
    products: &[StandardProduct],
    p: usize,
    q: usize,
) -> Result<LeadingTermSurvey> {
    let pi = LaurentPi::new(p, q)?;
    let ctx = *pi.ctx();
    let rows = products
        .par_iter()
        .map(|sp| -> Result<(bool, bool)> {
            let lt = leading_term_in(order, &pi.monomial(&sp.monomial())?)?;
            let mut product = Some(BasisMonomial::one(&ctx));
            for factor in sp.factors() {
                let m = YMonomial::from_powers(&factor).expect("distinct odd factors");
                let f = leading_term_in(order, &pi.monomial(&m)?)?;
                product = product.and_then(|acc| acc.mul(&f).map(|(m, _)| m));
            }
            Ok((tabulated_leading_term(sp, &ctx) == lt, product.as_ref() == Some(&lt)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut survey = LeadingTermSurvey { count: products.len(), ..Default::default() };
    for (k, (table, mult)) in rows.into_iter().enumerate() {
        if !table {
            survey.table_mismatches.push(k);
        }
        if !mult {
            survey.non_multiplicative.push(k);
        }
    }
    Ok(survey)
}

// ---------------------------------------------------------------------------
// Membership

#[derive(Clone, Debug)]
pub struct Membership {
    pub in_ideal: bool,
    pub normal_form: InvariantPolynomial,
    /// Whether `π(f)` vanishes in the Laurent-exterior ring.
    pub image_zero: bool,
}

impl Membership {
    pub fn consistent(&self) -> bool {
        self.in_ideal == self.image_zero
    }

    pub fn standard_terms(&self) -> Vec<(StandardProduct, BigRational)> {
        self.normal_form
            .terms()
            .map(|(m, c)| (StandardProduct::from_monomial(m).expect("normal forms are standard"), c.clone()))
            .collect()
    }
}

pub fn normal_form_membership(f: &InvariantPolynomial, p: usize, q: usize) -> Result<Membership> {
    normal_form_membership_with(&LaurentPi::new(p, q)?, f)
}

pub fn normal_form_membership_with(pi: &LaurentPi, f: &InvariantPolynomial) -> Result<Membership> {
    f.validate(pi.ctx.p, pi.ctx.q)?;
    let normal_form = rewrite_to_standard(f)?;
    let image_zero = pi.evaluate(f)?.is_zero();
    Ok(Membership { in_ideal: normal_form.is_zero(), normal_form, image_zero })
}

/// `lhs − rhs` for every instance of (sp1)–(sp4) at `p|q`.
pub fn relation_polynomials(p: usize, q: usize) -> Result<Vec<InvariantPolynomial>> {
    sl11_plucker_relations(p, q)?
        .iter()
        .map(|rel| {
            Ok(InvariantPolynomial::from_expr(&rel.lhs)?.sub(&InvariantPolynomial::from_expr(&rel.rhs)?))
        })
        .collect()
}

/// Every word of degree at most `max_degree`, the (sp) relations, and
/// the degree-three multiples of the (sp1) relations.
pub fn membership_corpus(p: usize, q: usize, max_degree: u32) -> Result<Vec<InvariantPolynomial>> {
    let gens = all_generators(p, q);
    let mut words = vec![YMonomial::one()];
    let mut frontier = vec![(YMonomial::one(), 0usize)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for (m, from) in &frontier {
            for (k, &g) in gens.iter().enumerate().skip(*from) {
                if let Some((w, _)) = m.mul(&YMonomial::generator(g)) {
                    words.push(w.clone());
                    next.push((w, k));
                }
            }
        }
        frontier = next;
    }
    let mut corpus: Vec<InvariantPolynomial> =
        words.into_iter().map(|w| InvariantPolynomial::term(w, BigRational::one())).collect();
    let relations = relation_polynomials(p, q)?;
    for rel in relations.iter().take(p * q) {
        for &g in &gens {
            corpus.push(rel.mul(&InvariantPolynomial::generator(g)));
        }
    }
    corpus.extend(relations);
    Ok(corpus)
}

#[derive(Clone, Debug, Default)]
pub struct CorpusReport {
    pub checked: usize,
    pub in_ideal: usize,
    /// Texts of polynomials on which rewriting and `π` disagree.
    pub disagreements: Vec<String>,
}

impl CorpusReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

pub fn check_membership_corpus(p: usize, q: usize, max_degree: u32) -> Result<CorpusReport> {
    let pi = LaurentPi::new(p, q)?;
    let corpus = membership_corpus(p, q, max_degree)?;
    let outcomes = corpus
        .par_iter()
        .map(|f| normal_form_membership_with(&pi, f).map(|m| (m.in_ideal, m.consistent())))
        .collect::<Result<Vec<_>>>()?;
    let mut report = CorpusReport { checked: corpus.len(), ..Default::default() };
    for (f, (in_ideal, ok)) in corpus.iter().zip(outcomes) {
        if in_ideal {
            report.in_ideal += 1;
        }
        if !ok {
            report.disagreements.push(f.to_text());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str) -> InvariantPolynomial {
        InvariantPolynomial::parse(text).unwrap()
    }

    #[test]
    fn laurent_inverse() {
        let ctx = LaurentCtx::new(2, 2).unwrap();
        let x = Laurent::even_var(&ctx, 0);
        let u = x.plus(&Laurent::odd_var(&ctx, 0).times(&Laurent::odd_var(&ctx, 3)));
        let inv = u.inverse_even().unwrap();
        assert!(u.times(&inv).same_as(&Laurent::one(&ctx)));
    }

    #[test]
    fn sp1_is_in_ideal() {
        let m = normal_form_membership(&poly("X[1|1]*Xs[1|1]-1"), 2, 2).unwrap();
        assert!(m.in_ideal && m.image_zero);
    }

    #[test]
    fn standard_generator_is_its_own_normal_form() {
        let f = poly("X[1|1]");
        let m = normal_form_membership(&f, 2, 2).unwrap();
        assert!(!m.in_ideal);
        assert_eq!(m.normal_form, f);
    }

    #[test]
    fn expansion_of_y22() {
        let nf = rewrite_to_standard(&poly("X[2|2]")).unwrap();
        let expected = poly("Xs[1|1]*X[1|2]*X[2|1] - Xs[1|1]*X[^2|1]*X[1|2]^2*Xs[1|^2]");
        assert_eq!(nf, expected);
    }

    #[test]
    fn leading_term_of_a_variable() {
        let ctx = LaurentCtx::new(2, 1).unwrap();
        let x = Laurent::even_var(&ctx, 0);
        assert_eq!(leading_term(&x).unwrap().display_with(&ctx), "x[1,1]");
    }

    #[test]
    fn text_round_trip() {
        let f = poly("2*X[2|1]*X[^2|1] - Xs[1|^2]*X[^2|1] + 1/3");
        assert_eq!(InvariantPolynomial::parse(&f.to_text()).unwrap(), f);
    }
}
