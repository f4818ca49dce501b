//! Exact arithmetic in the supercommutative ring
//! `Frac(Q[x_1..x_m]) ⊗ Λ(ξ_1..ξ_n)`.
//!
//! A [`Scalar`] is stored as `N / D` where the numerator `N` is a finite sum
//! of integer polynomials times sorted odd monomials `ξ_S`, and `D` is a
//! [`Denominator`]: a positive integer times a product of powers of
//! primitive polynomials. Every denominator arises from inverting the body
//! of an even element; new denominators are split against the factors the
//! ring was declared with (for coordinate rings these are the determinants
//! of the diagonal blocks), so products of generic minors keep a factored,
//! reduced denominator without a multivariate gcd.
//!
//! Equality is decided by subtraction, which is exact whatever the
//! factorization of the denominator.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::budget;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::poly::{mono_factors, Mono, Poly, MAX_VARS};

/// Maximum number of odd generators (odd monomials are 64-bit masks).
pub const MAX_ODD: usize = 64;

const PRIME: u64 = (1u64 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: bool) -> Parity {
        if b {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Parity {
        Parity::from_bit(!self.is_odd())
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.is_odd() ^ rhs.is_odd())
    }
}

/// Parity classification of an arbitrary (possibly inhomogeneous) element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParityClass {
    Zero,
    Even,
    Odd,
    Inhomogeneous,
}

impl ParityClass {
    /// True when compatible with homogeneous parity `p` (zero is compatible
    /// with both).
    pub fn admits(self, p: Parity) -> bool {
        match self {
            ParityClass::Zero => true,
            ParityClass::Even => p == Parity::Even,
            ParityClass::Odd => p == Parity::Odd,
            ParityClass::Inhomogeneous => false,
        }
    }

    pub fn parity(self) -> Option<Parity> {
        match self {
            ParityClass::Even => Some(Parity::Even),
            ParityClass::Odd => Some(Parity::Odd),
            _ => None,
        }
    }
}

/// A sorted set of odd generator indices, stored as a bit mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct OddSet(pub u64);

impl OddSet {
    pub const EMPTY: OddSet = OddSet(0);

    pub fn single(i: usize) -> OddSet {
        OddSet(1u64 << i)
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn parity(self) -> Parity {
        Parity::from_bit(self.len() % 2 == 1)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// `ξ_a ξ_b = sign * ξ_{a∪b}`; `None` if the sets intersect. The sign is
    /// the parity of the merge permutation.
    #[inline]
    pub fn merge(a: OddSet, b: OddSet) -> Option<(OddSet, bool)> {
        if a.0 & b.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut bits = b.0;
        while bits != 0 {
            let j = bits.trailing_zeros();
            let above = if j >= 63 { 0 } else { a.0 >> (j + 1) };
            inversions += above.count_ones();
            bits &= bits - 1;
        }
        Some((OddSet(a.0 | b.0), inversions % 2 == 1))
    }
}

impl PartialOrd for OddSet {
    fn partial_cmp(&self, other: &OddSet) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OddSet {
    fn cmp(&self, other: &OddSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.reverse_bits().cmp(&other.0.reverse_bits()).reverse())
    }
}

/// One irreducible-by-construction denominator factor: primitive, with a
/// positive leading coefficient and positive degree.
#[derive(Clone)]
pub struct Factor {
    poly: Poly,
    /// A point (mod a prime) on the zero set of the factor, used to reject
    /// non-divisible numerators cheaply.
    root: Option<Vec<u64>>,
}

impl Factor {
    fn new(poly: Poly) -> Factor {
        let root = find_root(&poly);
        Factor { poly, root }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// False only if `f` surely does not divide `p`.
    fn may_divide(&self, p: &Poly) -> bool {
        if let Some(v) = self.poly.as_variable() {
            return p.terms().iter().all(|(m, _)| m.exp(v) > 0);
        }
        match &self.root {
            Some(pt) => p.eval_mod(pt, PRIME) == 0,
            None => true,
        }
    }

    fn divide(&self, p: &Poly) -> Option<Poly> {
        if !self.may_divide(p) {
            return None;
        }
        p.exact_div(&self.poly)
    }
}

impl PartialEq for Factor {
    fn eq(&self, other: &Factor) -> bool {
        self.poly == other.poly
    }
}

impl Eq for Factor {}

impl std::hash::Hash for Factor {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.poly.hash(state)
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Factor) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Factor) -> Ordering {
        self.poly.cmp(&other.poly)
    }
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.poly)
    }
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Finds a point on `f = 0` mod PRIME by solving for a variable of degree 1.
fn find_root(f: &Poly) -> Option<Vec<u64>> {
    let v = (0..MAX_VARS).find(|&v| f.degree_in(v) == 1)?;
    // f = f1 * x_v + f0
    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    for _ in 0..8 {
        let mut pt = vec![0u64; MAX_VARS];
        for (i, slot) in pt.iter_mut().enumerate() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            *slot = (state ^ (i as u64).wrapping_mul(0x2545F4914F6CDD1D)) % PRIME;
        }
        let mut f1 = 0u64;
        let mut f0 = 0u64;
        for (m, c) in f.terms() {
            let mut t = c.rem_u64(PRIME);
            for (w, &e) in m.exponents().iter().enumerate() {
                if w == v {
                    continue;
                }
                for _ in 0..e {
                    t = mulmod(t, pt[w]);
                }
            }
            if m.exp(v) == 1 {
                f1 = (f1 + t) % PRIME;
            } else {
                f0 = (f0 + t) % PRIME;
            }
        }
        if f1 == 0 {
            continue;
        }
        let inv = powmod(f1, PRIME - 2);
        pt[v] = mulmod((PRIME - f0) % PRIME, inv);
        return Some(pt);
    }
    None
}

/// `constant * Π factor^exponent` with `constant > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Denominator {
    constant: Int,
    factors: Vec<(Arc<Factor>, u32)>,
}

impl Denominator {
    pub fn one() -> Denominator {
        Denominator { constant: Int::ONE, factors: Vec::new() }
    }

    pub fn is_one(&self) -> bool {
        self.constant.is_one() && self.factors.is_empty()
    }

    pub fn constant(&self) -> &Int {
        &self.constant
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.factors.iter().map(|(f, e)| (f.poly(), *e))
    }

    fn insert(&mut self, f: Arc<Factor>, e: u32) {
        if e == 0 {
            return;
        }
        match self.factors.binary_search_by(|(g, _)| g.as_ref().cmp(f.as_ref())) {
            Ok(i) => self.factors[i].1 += e,
            Err(i) => self.factors.insert(i, (f, e)),
        }
    }

    fn mul(&self, other: &Denominator) -> Denominator {
        let mut out = self.clone();
        out.constant = &self.constant * &other.constant;
        for (f, e) in &other.factors {
            out.insert(f.clone(), *e);
        }
        out
    }

    /// Least common multiple and the cofactors `lcm/self`, `lcm/other`.
    fn lcm(&self, other: &Denominator) -> (Denominator, Poly, Poly) {
        let g = self.constant.gcd(&other.constant);
        let ca = other.constant.div_exact(&g);
        let cb = self.constant.div_exact(&g);
        let mut lcm = Denominator { constant: &self.constant * &ca, factors: Vec::new() };
        let mut cof_a = Poly::constant(ca);
        let mut cof_b = Poly::constant(cb);
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            let ord = match (self.factors.get(i), other.factors.get(j)) {
                (Some(a), Some(b)) => a.0.as_ref().cmp(b.0.as_ref()),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Less => {
                    let (f, e) = &self.factors[i];
                    cof_b = cof_b.mul(&f.poly.pow(*e));
                    lcm.factors.push((f.clone(), *e));
                    i += 1;
                }
                Ordering::Greater => {
                    let (f, e) = &other.factors[j];
                    cof_a = cof_a.mul(&f.poly.pow(*e));
                    lcm.factors.push((f.clone(), *e));
                    j += 1;
                }
                Ordering::Equal => {
                    let (f, ea) = &self.factors[i];
                    let eb = other.factors[j].1;
                    let e = (*ea).max(eb);
                    cof_a = cof_a.mul(&f.poly.pow(e - ea));
                    cof_b = cof_b.mul(&f.poly.pow(e - eb));
                    lcm.factors.push((f.clone(), e));
                    i += 1;
                    j += 1;
                }
            }
        }
        (lcm, cof_a, cof_b)
    }

    /// The expanded polynomial.
    pub fn expand(&self) -> Poly {
        let mut p = Poly::constant(self.constant.clone());
        for (f, e) in &self.factors {
            p = p.mul(&f.poly.pow(*e));
        }
        p
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        if !self.constant.is_one() || self.factors.is_empty() {
            parts.push(self.constant.to_string());
        }
        for (f, e) in &self.factors {
            let base = if f.poly.len() == 1 {
                f.poly.display_with(names)
            } else {
                format!("({})", f.poly.display_with(names))
            };
            if *e == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{base}^{e}"));
            }
        }
        parts.join("*")
    }
}

/// An element of `Frac(Q[x])`: a polynomial over a factored denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    pub numerator: Poly,
    pub denominator: Denominator,
}

impl RationalFunction {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let num = self.numerator.display_with(names);
        if self.denominator.is_one() {
            num
        } else {
            format!("({})/({})", num, self.denominator.display_with(names))
        }
    }
}

/// Generator names and denominator factors of a coefficient ring.
#[derive(Debug)]
pub struct RingContext {
    even: Vec<String>,
    odd: Vec<String>,
    factors: Vec<Arc<Factor>>,
}

pub type Ring = Arc<RingContext>;

impl RingContext {
    /// Declares `Frac(Q[even]) ⊗ Λ(odd)`.
    pub fn declare<S: AsRef<str>>(even: &[S], odd: &[S]) -> Result<Ring> {
        RingContext::declare_with_factors(even, odd, Vec::new())
    }

    /// Like [`RingContext::declare`], additionally registering polynomials
    /// that new denominators are split against.
    pub fn declare_with_factors<S: AsRef<str>>(
        even: &[S],
        odd: &[S],
        factors: Vec<Poly>,
    ) -> Result<Ring> {
        let even: Vec<String> = even.iter().map(|s| s.as_ref().to_string()).collect();
        let odd: Vec<String> = odd.iter().map(|s| s.as_ref().to_string()).collect();
        if even.len() > MAX_VARS {
            return Err(Error::Capacity(format!("{} even generators (max {MAX_VARS})", even.len())));
        }
        if odd.len() > MAX_ODD {
            return Err(Error::Capacity(format!("{} odd generators (max {MAX_ODD})", odd.len())));
        }
        let mut seen = std::collections::HashSet::new();
        for n in even.iter().chain(odd.iter()) {
            if n.is_empty() || !seen.insert(n.clone()) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        let mut fs: Vec<Poly> = factors
            .into_iter()
            .filter(|p| !p.is_constant())
            .map(|p| p.primitive_part().1)
            .collect();
        fs.sort();
        fs.dedup();
        // Larger factors first so that composite candidates are split by
        // their largest known pieces.
        fs.sort_by_key(|p| std::cmp::Reverse(p.total_degree()));
        Ok(Arc::new(RingContext {
            even,
            odd,
            factors: fs.into_iter().map(|p| Arc::new(Factor::new(p))).collect(),
        }))
    }

    pub fn even_count(&self) -> usize {
        self.even.len()
    }

    pub fn odd_count(&self) -> usize {
        self.odd.len()
    }

    pub fn even_names(&self) -> &[String] {
        &self.even
    }

    pub fn odd_names(&self) -> &[String] {
        &self.odd
    }

    pub fn even_index(&self, name: &str) -> Option<usize> {
        self.even.iter().position(|n| n == name)
    }

    pub fn odd_index(&self, name: &str) -> Option<usize> {
        self.odd.iter().position(|n| n == name)
    }
}

/// Returns the generator called `name`.
pub fn generator(ring: &Ring, name: &str) -> Result<Scalar> {
    if let Some(i) = ring.even_index(name) {
        return Ok(Scalar::even_var(ring, i));
    }
    if let Some(j) = ring.odd_index(name) {
        return Ok(Scalar::odd_var(ring, j));
    }
    Err(Error::UnknownGenerator(name.to_string()))
}

/// An element of `Frac(Q[x]) ⊗ Λ(ξ)`.
#[derive(Clone)]
pub struct Scalar {
    ring: Ring,
    terms: Vec<(OddSet, Poly)>,
    den: Denominator,
}

impl Scalar {
    pub fn zero(ring: &Ring) -> Scalar {
        Scalar { ring: ring.clone(), terms: Vec::new(), den: Denominator::one() }
    }

    pub fn one(ring: &Ring) -> Scalar {
        Scalar::from_int(ring, 1)
    }

    pub fn from_int(ring: &Ring, v: i64) -> Scalar {
        Scalar::from_poly(ring, OddSet::EMPTY, Poly::constant(Int::from(v)))
    }

    pub fn from_rational(ring: &Ring, q: &BigRational) -> Scalar {
        let mut den = Denominator::one();
        let mut num = q.numer().clone();
        let mut d = q.denom().clone();
        if d < BigInt::zero() {
            d = -d;
            num = -num;
        }
        den.constant = Int::from(d);
        Scalar::normalized(ring, vec![(OddSet::EMPTY, Poly::constant(Int::from(num)))], den)
    }

    pub fn from_poly(ring: &Ring, odd: OddSet, p: Poly) -> Scalar {
        Scalar::normalized(ring, vec![(odd, p)], Denominator::one())
    }

    pub fn even_var(ring: &Ring, i: usize) -> Scalar {
        assert!(i < ring.even_count(), "even generator index out of range");
        Scalar::from_poly(ring, OddSet::EMPTY, Poly::var(i))
    }

    pub fn odd_var(ring: &Ring, j: usize) -> Scalar {
        assert!(j < ring.odd_count(), "odd generator index out of range");
        Scalar::from_poly(ring, OddSet::single(j), Poly::one())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one()
            && self.terms.len() == 1
            && self.terms[0].0.is_empty()
            && self.terms[0].1.is_one()
    }

    /// Numerator terms `(ξ_S, N_S)`; the value is `Σ N_S ξ_S / denominator`.
    pub fn numerator_terms(&self) -> &[(OddSet, Poly)] {
        &self.terms
    }

    pub fn denominator(&self) -> &Denominator {
        &self.den
    }

    /// Number of (odd monomial, even monomial) pairs in the numerator.
    pub fn size(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).sum()
    }

    /// The coefficient of `ξ_S` as a reduced rational function.
    pub fn coefficient(&self, odd: OddSet) -> RationalFunction {
        let num = self
            .terms
            .iter()
            .find(|(s, _)| *s == odd)
            .map(|(_, p)| p.clone())
            .unwrap_or_default();
        reduce_rational(num, self.den.clone())
    }

    pub fn odd_sets(&self) -> impl Iterator<Item = OddSet> + '_ {
        self.terms.iter().map(|(s, _)| *s)
    }

    pub fn parity(&self) -> ParityClass {
        let mut even = false;
        let mut odd = false;
        for (s, _) in &self.terms {
            if s.parity().is_odd() {
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

    /// Coefficient of the empty odd monomial.
    pub fn body(&self) -> RationalFunction {
        self.coefficient(OddSet::EMPTY)
    }

    /// `self - body(self)`.
    pub fn soul(&self) -> Scalar {
        let terms = self.terms.iter().filter(|(s, _)| !s.is_empty()).cloned().collect();
        Scalar::normalized(&self.ring, terms, self.den.clone())
    }

    /// The body as a scalar.
    pub fn body_scalar(&self) -> Scalar {
        let terms = self.terms.iter().filter(|(s, _)| s.is_empty()).cloned().collect();
        Scalar::normalized(&self.ring, terms, self.den.clone())
    }

    pub fn has_unit_body(&self) -> bool {
        self.terms.first().map(|(s, _)| s.is_empty()).unwrap_or(false)
    }

    fn check_ring(&self, other: &Scalar) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(s, p)| (*s, p.neg())).collect(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.try_add(other).expect("Scalar::add")
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.try_mul(other).expect("Scalar::mul")
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Integer power; negative exponents need an invertible even element.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.invert_even_unit()?.pow((-e) as u32))
        }
    }

    /// Exact equality test.
    pub fn equals(&self, other: &Scalar) -> bool {
        if self.terms == other.terms && self.den == other.den {
            return true;
        }
        self.sub(other).is_zero()
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        budget::charge((self.size() + other.size()) as u64);
        if self.den == other.den {
            let terms = merge_terms(&self.terms, &other.terms);
            return Scalar::normalized(&self.ring, terms, self.den.clone());
        }
        let (lcm, ca, cb) = self.den.lcm(&other.den);
        let a: Vec<(OddSet, Poly)> = self.terms.iter().map(|(s, p)| (*s, p.mul(&ca))).collect();
        let b: Vec<(OddSet, Poly)> = other.terms.iter().map(|(s, p)| (*s, p.mul(&cb))).collect();
        Scalar::normalized(&self.ring, merge_terms(&a, &b), lcm)
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() || budget::exhausted() {
            return Scalar::zero(&self.ring);
        }
        let mut a = self.terms.clone();
        let mut b = other.terms.clone();
        let mut da = self.den.clone();
        let mut db = other.den.clone();
        cancel_against(&mut a, &mut db);
        cancel_against(&mut b, &mut da);
        let terms = multiply_terms(&a, &b);
        Scalar::normalized(&self.ring, terms, da.mul(&db))
    }

    /// Inverse of an even element with non-zero body, computed as
    /// `b⁻¹ Σ_k (-soul·b⁻¹)^k`; the series stops once a power vanishes.
    pub fn invert_even_unit(&self) -> Result<Scalar> {
        match self.parity() {
            ParityClass::Even => {}
            ParityClass::Zero => return Err(Error::NotInvertible("zero".into())),
            ParityClass::Odd => return Err(Error::NotInvertible("odd element".into())),
            ParityClass::Inhomogeneous => {
                return Err(Error::NotInvertible("inhomogeneous element".into()))
            }
        }
        if !self.has_unit_body() {
            return Err(Error::NotInvertible("body is zero".into()));
        }
        let n0 = &self.terms[0].1;
        // body⁻¹ = den / n0
        let (unit, prim) = n0.primitive_part();
        let mut candidates: Vec<Arc<Factor>> = self.den.factors.iter().map(|(f, _)| f.clone()).collect();
        candidates.extend(self.ring.factors.iter().cloned());
        let mut new_den = split_into_factors(&prim, &candidates);
        new_den.constant = unit.abs();
        let mut num = self.den.expand();
        if unit.is_negative() {
            num = num.neg();
        }
        let body_inv = Scalar::normalized(&self.ring, vec![(OddSet::EMPTY, num)], new_den);
        let soul = self.soul();
        if soul.is_zero() {
            return Ok(body_inv);
        }
        let step = soul.mul(&body_inv).neg();
        let mut acc = Scalar::one(&self.ring);
        let mut power = Scalar::one(&self.ring);
        for _ in 0..=self.ring.odd_count() {
            power = power.mul(&step);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(body_inv.mul(&acc))
    }

    /// Builds a scalar in canonical form from raw numerator terms.
    fn normalized(ring: &Ring, mut terms: Vec<(OddSet, Poly)>, mut den: Denominator) -> Scalar {
        terms.retain(|(_, p)| !p.is_zero());
        if terms.is_empty() {
            return Scalar::zero(ring);
        }
        terms.sort_by_key(|a| a.0);
        // integer content against the constant
        let mut g = den.constant.clone();
        for (_, p) in &terms {
            if g.is_one() {
                break;
            }
            g = g.gcd(&p.content());
        }
        if !g.is_one() {
            for (_, p) in terms.iter_mut() {
                *p = p.div_int_exact(&g);
            }
            den.constant = den.constant.div_exact(&g);
        }
        // polynomial factors
        let mut k = 0;
        while k < den.factors.len() {
            let f = den.factors[k].0.clone();
            while den.factors[k].1 > 0 {
                match divide_all(&terms, &f) {
                    Some(q) => {
                        terms = q;
                        den.factors[k].1 -= 1;
                    }
                    None => break,
                }
            }
            if den.factors[k].1 == 0 {
                den.factors.remove(k);
            } else {
                k += 1;
            }
        }
        Scalar { ring: ring.clone(), terms, den }
    }

    /// Canonical text: `(Σ c*x^e*ξ_i*ξ_j)/(denominator)`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let even = self.ring.even_names();
        let odd = self.ring.odd_names();
        let mut out = String::new();
        let mut first = true;
        for (s, p) in &self.terms {
            let odd_part: Vec<String> = s.indices().map(|i| odd[i].clone()).collect();
            for (m, c) in p.terms() {
                let neg = c.is_negative();
                if first {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                first = false;
                let mut factors = mono_factors(m, even);
                factors.extend(odd_part.iter().cloned());
                let abs = c.abs();
                if factors.is_empty() {
                    out.push_str(&abs.to_string());
                } else {
                    if !abs.is_one() {
                        out.push_str(&abs.to_string());
                        out.push('*');
                    }
                    out.push_str(&factors.join("*"));
                }
            }
        }
        if self.den.is_one() {
            out
        } else {
            let many = self.size() > 1;
            let num = if many { format!("({out})") } else { out };
            format!("{num}/({})", self.den.display_with(even))
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.equals(other)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

fn merge_terms(a: &[(OddSet, Poly)], b: &[(OddSet, Poly)]) -> Vec<(OddSet, Poly)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let p = a[i].1.add(&b[j].1);
                if !p.is_zero() {
                    out.push((a[i].0, p));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn multiply_terms(a: &[(OddSet, Poly)], b: &[(OddSet, Poly)]) -> Vec<(OddSet, Poly)> {
    let mut groups: FxHashMap<u64, FxHashMap<Mono, Int>> = FxHashMap::default();
    for (sa, pa) in a {
        for (sb, pb) in b {
            let Some((s, negative)) = OddSet::merge(*sa, *sb) else {
                continue;
            };
            if !budget::charge((pa.len() * pb.len()) as u64) {
                return Vec::new();
            }
            let acc = groups.entry(s.0).or_default();
            for (ma, ca) in pa.terms() {
                for (mb, cb) in pb.terms() {
                    let mut c = ca * cb;
                    if negative {
                        c = -&c;
                    }
                    *acc.entry(ma.mul(mb)).or_default() += &c;
                }
            }
        }
    }
    groups
        .into_iter()
        .map(|(s, m)| (OddSet(s), Poly::from_terms(m.into_iter().collect())))
        .collect()
}

/// Divides every numerator polynomial by `f`, if all are divisible.
fn divide_all(terms: &[(OddSet, Poly)], f: &Factor) -> Option<Vec<(OddSet, Poly)>> {
    let mut order: Vec<usize> = (0..terms.len()).collect();
    order.sort_by_key(|&i| terms[i].1.len());
    for &i in &order {
        if !f.may_divide(&terms[i].1) {
            return None;
        }
    }
    let mut out: Vec<Option<Poly>> = vec![None; terms.len()];
    for &i in &order {
        out[i] = Some(f.divide(&terms[i].1)?);
    }
    Some(terms.iter().zip(out).map(|((s, _), q)| (*s, q.unwrap())).collect())
}

/// Cancels factors of `den` that divide `terms` before a multiplication.
fn cancel_against(terms: &mut Vec<(OddSet, Poly)>, den: &mut Denominator) {
    let g = {
        let mut g = den.constant.clone();
        for (_, p) in terms.iter() {
            if g.is_one() {
                break;
            }
            g = g.gcd(&p.content());
        }
        g
    };
    if !g.is_one() {
        for (_, p) in terms.iter_mut() {
            *p = p.div_int_exact(&g);
        }
        den.constant = den.constant.div_exact(&g);
    }
    let mut k = 0;
    while k < den.factors.len() {
        let f = den.factors[k].0.clone();
        while den.factors[k].1 > 0 {
            match divide_all(terms, &f) {
                Some(q) => {
                    *terms = q;
                    den.factors[k].1 -= 1;
                }
                None => break,
            }
        }
        if den.factors[k].1 == 0 {
            den.factors.remove(k);
        } else {
            k += 1;
        }
    }
}

/// Factors a primitive polynomial with positive leading coefficient into
/// variables, known factors and one leftover.
fn split_into_factors(p: &Poly, known: &[Arc<Factor>]) -> Denominator {
    let mut den = Denominator::one();
    let mut rest = p.clone();
    // monomial content
    for v in 0..MAX_VARS {
        let k = rest.terms().iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0);
        if k > 0 {
            let f = Factor::new(Poly::var(v));
            for _ in 0..k {
                rest = rest.exact_div(&f.poly).expect("monomial content");
            }
            den.insert(Arc::new(f), k as u32);
        }
    }
    for f in known {
        if rest.is_constant() {
            break;
        }
        if f.poly.as_variable().is_some() {
            continue;
        }
        let mut e = 0;
        while let Some(q) = f.divide(&rest) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            den.insert(f.clone(), e);
        }
    }
    if !rest.is_constant() {
        let (u, prim) = rest.primitive_part();
        debug_assert!(u.is_one());
        den.insert(Arc::new(Factor::new(prim)), 1);
    } else {
        debug_assert!(rest.is_one());
    }
    den
}

fn reduce_rational(num: Poly, mut den: Denominator) -> RationalFunction {
    if num.is_zero() {
        return RationalFunction { numerator: num, denominator: Denominator::one() };
    }
    let mut terms = vec![(OddSet::EMPTY, num)];
    cancel_against(&mut terms, &mut den);
    RationalFunction { numerator: terms.pop().unwrap().1, denominator: den }
}

/// Evaluates a polynomial at rational values of the even variables.
pub fn eval_poly_rational(p: &Poly, values: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (m, c) in p.terms() {
        let mut t = BigRational::from_integer(c.to_big());
        for (v, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                t *= &values[v];
            }
        }
        acc += t;
    }
    acc
}

impl Denominator {
    pub fn eval_rational(&self, values: &[BigRational]) -> BigRational {
        let mut acc = BigRational::from_integer(self.constant.to_big());
        for (f, e) in &self.factors {
            let v = eval_poly_rational(&f.poly, values);
            for _ in 0..*e {
                acc *= &v;
            }
        }
        acc
    }
}

impl One for Denominator {
    fn one() -> Denominator {
        Denominator::one()
    }
}

impl std::ops::Mul for Denominator {
    type Output = Denominator;
    fn mul(self, rhs: Denominator) -> Denominator {
        Denominator::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        RingContext::declare(&["a", "b"], &["xi1", "xi2", "xi3"]).unwrap()
    }

    #[test]
    fn declare_validates_names() {
        let r = ring();
        assert_eq!(r.even_count(), 2);
        assert_eq!(r.odd_count(), 3);
        let q = RingContext::declare::<&str>(&[], &[]).unwrap();
        assert!(Scalar::one(&q).is_one());
        assert_eq!(
            RingContext::declare(&["a", "a"], &["x"]).unwrap_err(),
            Error::DuplicateName("a".into())
        );
        assert!(RingContext::declare(&["a"], &["a"]).is_err());
    }

    #[test]
    fn anticommutation_and_nilpotency() {
        let r = ring();
        let x1 = Scalar::odd_var(&r, 0);
        let x2 = Scalar::odd_var(&r, 1);
        assert!((&x2 * &x1).equals(&(&x1 * &x2).neg()));
        assert!((&x1 * &x1).is_zero());
    }

    #[test]
    fn square_of_even_nilpotent_vanishes() {
        let r = ring();
        let a = Scalar::even_var(&r, 0);
        let n = &Scalar::odd_var(&r, 0) * &Scalar::odd_var(&r, 1);
        let lhs = &(&a + &n) * &(&a - &n);
        assert!(lhs.equals(&(&a * &a)));
    }

    #[test]
    fn parity_classes() {
        let r = ring();
        let a = Scalar::even_var(&r, 0);
        let x1 = Scalar::odd_var(&r, 0);
        let x2 = Scalar::odd_var(&r, 1);
        assert_eq!((&a + &(&x1 * &x2)).parity(), ParityClass::Even);
        assert_eq!((&x1 + &(&a * &x2)).parity(), ParityClass::Odd);
        assert_eq!((&a + &x1).parity(), ParityClass::Inhomogeneous);
        assert_eq!(Scalar::zero(&r).parity(), ParityClass::Zero);
    }

    #[test]
    fn body_and_soul_split() {
        let r = ring();
        let a = Scalar::even_var(&r, 0);
        let n = &Scalar::odd_var(&r, 0) * &Scalar::odd_var(&r, 1);
        let s = &a + &n;
        assert_eq!(s.body().numerator, Poly::var(0));
        assert!(s.soul().equals(&n));
        assert!((&s.body_scalar() + &s.soul()).equals(&s));
        let x1 = Scalar::odd_var(&r, 0);
        assert!(x1.body().is_zero());
        let c = Scalar::from_rational(&r, &BigRational::new(3.into(), 2.into()));
        assert!(c.soul().is_zero());
        assert_eq!(c.body().denominator.constant(), &Int::from(2));
    }

    #[test]
    fn inverses_of_even_units() {
        let r = ring();
        let one = Scalar::one(&r);
        let n = &Scalar::odd_var(&r, 0) * &Scalar::odd_var(&r, 1);
        let inv = (&one + &n).invert_even_unit().unwrap();
        assert!(inv.equals(&(&one - &n)));

        let a = Scalar::even_var(&r, 0);
        let s = &a + &n;
        let inv = s.invert_even_unit().unwrap();
        let ainv = a.invert_even_unit().unwrap();
        let expected = &ainv - &(&(&ainv * &ainv) * &n);
        assert!(inv.equals(&expected));
        assert!((&s * &inv).is_one());
        assert!((&inv * &s).is_one());

        assert!(Scalar::odd_var(&r, 0).invert_even_unit().is_err());
        assert!(n.invert_even_unit().is_err());
    }

    #[test]
    fn rational_functions_cancel() {
        let r = ring();
        let a = Scalar::even_var(&r, 0);
        let b = Scalar::even_var(&r, 1);
        let s = &a + &b;
        let q = &s * &s.invert_even_unit().unwrap();
        assert!(q.is_one());
        let t = &(&a * &b) * &(&a.invert_even_unit().unwrap() * &b.invert_even_unit().unwrap());
        assert!(t.is_one());
        // 1/a + 1/b = (a+b)/(ab)
        let sum = &a.invert_even_unit().unwrap() + &b.invert_even_unit().unwrap();
        let prod = &s * &(&a * &b).invert_even_unit().unwrap();
        assert!(sum.equals(&prod));
    }

    #[test]
    fn merge_sign_counts_inversions() {
        // ξ2 ξ0 = -ξ0 ξ2
        assert_eq!(OddSet::merge(OddSet(0b100), OddSet(0b001)), Some((OddSet(0b101), true)));
        assert_eq!(OddSet::merge(OddSet(0b001), OddSet(0b100)), Some((OddSet(0b101), false)));
        // ξ1ξ2 · ξ0 = ξ0ξ1ξ2 (two transpositions)
        assert_eq!(OddSet::merge(OddSet(0b110), OddSet(0b001)), Some((OddSet(0b111), false)));
        assert_eq!(OddSet::merge(OddSet(0b11), OddSet(0b10)), None);
    }

    #[test]
    fn text_form() {
        let r = ring();
        let a = Scalar::even_var(&r, 0);
        let x = &Scalar::odd_var(&r, 1) * &Scalar::odd_var(&r, 0);
        let s = &(&a * &a) + &x;
        assert_eq!(s.to_text(), "a^2 - xi1*xi2");
        let t = a.invert_even_unit().unwrap();
        assert_eq!(t.to_text(), "1/(a)");
    }
}
