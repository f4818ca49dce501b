//! Numeric Grassmann numbers: rational combinations of products of fresh
//! odd generators `η_1..η_n`, plus evaluation of symbolic scalars into them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rustc_hash::FxHashMap;

use crate::algebra::SuperAlgebra;
use crate::error::{Error, Result};
use crate::superscalar::{eval_poly_rational, OddSet, ParityClass, Scalar, MAX_ODD};

/// Number of `η` generators of a numeric Grassmann algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrassmannCtx {
    pub generators: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Grassmann {
    ctx: GrassmannCtx,
    /// Sorted by odd set, no zero coefficients.
    terms: Vec<(OddSet, BigRational)>,
}

impl Grassmann {
    pub fn new(ctx: GrassmannCtx) -> Grassmann {
        Grassmann { ctx, terms: Vec::new() }
    }

    pub fn rational(ctx: GrassmannCtx, q: BigRational) -> Grassmann {
        Grassmann::from_terms(ctx, vec![(OddSet::EMPTY, q)])
    }

    /// `c * η_i`.
    pub fn eta(ctx: GrassmannCtx, i: usize, c: BigRational) -> Grassmann {
        assert!(i < ctx.generators);
        Grassmann::from_terms(ctx, vec![(OddSet::single(i), c)])
    }

    pub fn from_terms(ctx: GrassmannCtx, terms: Vec<(OddSet, BigRational)>) -> Grassmann {
        let mut acc: FxHashMap<OddSet, BigRational> = FxHashMap::default();
        for (s, c) in terms {
            *acc.entry(s).or_insert_with(BigRational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|a| a.0);
        Grassmann { ctx, terms }
    }

    pub fn terms(&self) -> &[(OddSet, BigRational)] {
        &self.terms
    }

    pub fn body(&self) -> BigRational {
        match self.terms.first() {
            Some((s, c)) if s.is_empty() => c.clone(),
            _ => BigRational::zero(),
        }
    }

    fn combine(&self, other: &Grassmann, sign: bool) -> Grassmann {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let flip = |c: &BigRational| if sign { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, flip(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + flip(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(s, c)| (*s, flip(c))));
        Grassmann { ctx: self.ctx, terms: out }
    }

    pub fn scale(&self, k: &BigRational) -> Grassmann {
        if k.is_zero() {
            return Grassmann::new(self.ctx);
        }
        Grassmann {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(s, c)| (*s, c * k)).collect(),
        }
    }

    pub fn product(&self, other: &Grassmann) -> Grassmann {
        let mut acc: FxHashMap<OddSet, BigRational> = FxHashMap::default();
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                if let Some((s, negative)) = OddSet::merge(*sa, *sb) {
                    let c = ca * cb;
                    let e = acc.entry(s).or_insert_with(BigRational::zero);
                    if negative {
                        *e -= c;
                    } else {
                        *e += c;
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|a| a.0);
        Grassmann { ctx: self.ctx, terms }
    }
}

impl fmt::Debug for Grassmann {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| {
                let etas: Vec<String> = s.indices().map(|i| format!("η{}", i + 1)).collect();
                if etas.is_empty() {
                    c.to_string()
                } else {
                    format!("{}*{}", c, etas.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl SuperAlgebra for Grassmann {
    type Ctx = GrassmannCtx;

    fn zero(ctx: &GrassmannCtx) -> Self {
        Grassmann::new(*ctx)
    }
    fn from_int(ctx: &GrassmannCtx, v: i64) -> Self {
        Grassmann::rational(*ctx, BigRational::from_integer(BigInt::from(v)))
    }
    fn from_rational(ctx: &GrassmannCtx, v: &BigRational) -> Self {
        Grassmann::rational(*ctx, v.clone())
    }
    fn context(&self) -> GrassmannCtx {
        self.ctx
    }
    fn plus(&self, other: &Self) -> Self {
        self.combine(other, false)
    }
    fn minus(&self, other: &Self) -> Self {
        self.combine(other, true)
    }
    fn negated(&self) -> Self {
        Grassmann {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(s, c)| (*s, -c.clone())).collect(),
        }
    }
    fn times(&self, other: &Self) -> Self {
        self.product(other)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn parity_class(&self) -> ParityClass {
        let odd = self.terms.iter().any(|(s, _)| s.len() % 2 == 1);
        let even = self.terms.iter().any(|(s, _)| s.len() % 2 == 0);
        match (even, odd) {
            (false, false) => ParityClass::Zero,
            (true, false) => ParityClass::Even,
            (false, true) => ParityClass::Odd,
            (true, true) => ParityClass::Inhomogeneous,
        }
    }
    fn has_unit_body(&self) -> bool {
        !self.body().is_zero()
    }
    fn inverse_even(&self) -> Result<Self> {
        match self.parity_class() {
            ParityClass::Even => {}
            _ => return Err(Error::NotInvertible("not an even element".into())),
        }
        let b = self.body();
        if b.is_zero() {
            return Err(Error::NotInvertible("body is zero".into()));
        }
        let binv = b.recip();
        let soul = Grassmann {
            ctx: self.ctx,
            terms: self.terms.iter().filter(|(s, _)| !s.is_empty()).cloned().collect(),
        };
        let step = soul.scale(&-binv.clone());
        let mut acc = Grassmann::one(&self.ctx);
        let mut power = Grassmann::one(&self.ctx);
        for _ in 0..=self.ctx.generators {
            power = power.product(&step);
            if power.terms.is_empty() {
                break;
            }
            acc = acc.plus(&power);
        }
        Ok(acc.scale(&binv))
    }
}

/// Values for the generators of a ring: rationals for even generators and
/// Grassmann numbers for odd ones.
#[derive(Clone, Debug)]
pub struct Assignment {
    pub even: Vec<BigRational>,
    pub odd: Vec<Grassmann>,
    pub ctx: GrassmannCtx,
}

impl Assignment {
    /// A random assignment. Each odd generator maps to a random non-zero
    /// multiple of its own `η` plus, when `mix` is set, a random multiple of
    /// one other `η`.
    pub fn random<R: Rng>(rng: &mut R, even: usize, odd: usize, mix: bool) -> Assignment {
        let ctx = GrassmannCtx { generators: odd.min(MAX_ODD) };
        let even_vals = (0..even).map(|_| random_nonzero_rational(rng)).collect();
        let odd_vals = (0..odd)
            .map(|j| {
                let mut g = Grassmann::eta(ctx, j, random_nonzero_rational(rng));
                if mix && odd > 1 {
                    let k = (j + 1 + rng.gen_range(0..odd - 1)) % odd;
                    g = g.plus(&Grassmann::eta(ctx, k, random_nonzero_rational(rng)));
                }
                g
            })
            .collect();
        Assignment { even: even_vals, odd: odd_vals, ctx }
    }
}

/// A random rational `±a/b` with `1 ≤ a ≤ 97`, `1 ≤ b ≤ 13`.
pub fn random_nonzero_rational<R: Rng>(rng: &mut R) -> BigRational {
    let a: i64 = rng.gen_range(1..=97);
    let b: i64 = rng.gen_range(1..=13);
    let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
    BigRational::new(BigInt::from(sign * a), BigInt::from(b))
}

/// Evaluates a symbolic scalar at `assignment`.
pub fn evaluate_numeric(s: &Scalar, assignment: &Assignment) -> Result<Grassmann> {
    let ring = s.ring();
    if assignment.even.len() < ring.even_count() {
        return Err(Error::MissingAssignment(ring.even_names()[assignment.even.len()].clone()));
    }
    if assignment.odd.len() < ring.odd_count() {
        return Err(Error::MissingAssignment(ring.odd_names()[assignment.odd.len()].clone()));
    }
    let den = s.denominator().eval_rational(&assignment.even);
    if den.is_zero() {
        return Err(Error::NotInvertible("denominator vanishes at the assignment".into()));
    }
    let ctx = assignment.ctx;
    let mut acc = Grassmann::new(ctx);
    for (set, poly) in s.numerator_terms() {
        let c = eval_poly_rational(poly, &assignment.even);
        if c.is_zero() {
            continue;
        }
        let mut term = Grassmann::rational(ctx, c);
        for j in set.indices() {
            term = term.product(&assignment.odd[j]);
        }
        acc = acc.plus(&term);
    }
    Ok(acc.scale(&den.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superscalar::RingContext;
    use rand::SeedableRng;
    use num_traits::One;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn eta_anticommute() {
        let ctx = GrassmannCtx { generators: 2 };
        let one = BigRational::one();
        let a = Grassmann::eta(ctx, 0, one.clone());
        let b = Grassmann::eta(ctx, 1, one);
        assert!(a.times(&b).plus(&b.times(&a)).is_zero());
        assert!(a.times(&a).is_zero());
    }

    #[test]
    fn even_inverse() {
        let ctx = GrassmannCtx { generators: 2 };
        let a = Grassmann::eta(ctx, 0, BigRational::one());
        let b = Grassmann::eta(ctx, 1, BigRational::one());
        let s = Grassmann::from_int(&ctx, 3).plus(&a.times(&b));
        let inv = s.inverse_even().unwrap();
        assert!(s.times(&inv).minus(&Grassmann::one(&ctx)).is_zero());
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let ring = RingContext::declare(&["x", "y"], &["a", "b", "c"]).unwrap();
        let x = Scalar::even_var(&ring, 0);
        let y = Scalar::even_var(&ring, 1);
        let a = Scalar::odd_var(&ring, 0);
        let b = Scalar::odd_var(&ring, 1);
        let c = Scalar::odd_var(&ring, 2);
        let s = &(&x + &(&a * &b)) * &y.invert_even_unit().unwrap();
        let t = &(&y * &c) + &(&x * &a);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let asg = Assignment::random(&mut rng, 2, 3, true);
        let lhs = evaluate_numeric(&(&s * &t), &asg).unwrap();
        let rhs = evaluate_numeric(&s, &asg).unwrap().times(&evaluate_numeric(&t, &asg).unwrap());
        assert!(lhs.same_as(&rhs));
    }

    #[test]
    fn unit_evaluates_to_one() {
        let ring = RingContext::declare(&["x"], &[]).unwrap();
        let x = Scalar::even_var(&ring, 0);
        let s = &x * &x.invert_even_unit().unwrap();
        let asg = Assignment {
            even: vec![BigRational::new(7.into(), 3.into())],
            odd: vec![],
            ctx: GrassmannCtx { generators: 0 },
        };
        let v = evaluate_numeric(&s, &asg).unwrap();
        assert!(v.same_as(&Grassmann::from_int(&asg.ctx, 1)));
    }
}
