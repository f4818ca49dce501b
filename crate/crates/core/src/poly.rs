//! Sparse multivariate polynomials over Z in degree-lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::int::Int;

/// Upper bound on the number of even variables of a ring.
pub const MAX_VARS: usize = 40;

/// Exponent vector. The derived order is degree-lexicographic because
/// `deg` is compared first and `exps` lexicographically after it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    deg: u16,
    exps: [u8; MAX_VARS],
}

impl Mono {
    pub const ONE: Mono = Mono { deg: 0, exps: [0; MAX_VARS] };

    pub fn var(i: usize) -> Mono {
        let mut m = Mono::ONE;
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> Mono {
        let mut m = Mono::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = e;
            m.deg += e as u16;
        }
        m
    }

    pub fn degree(&self) -> u16 {
        self.deg
    }

    pub fn exp(&self, i: usize) -> u8 {
        self.exps[i]
    }

    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        m.deg += other.deg;
        m
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        m
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..MAX_VARS)
            .filter(|&i| self.exps[i] > 0)
            .map(|i| format!("v{}^{}", i, self.exps[i]))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Polynomial with integer coefficients, terms sorted with the leading
/// (largest) monomial first and no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Int)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: Int) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Mono::ONE, c)] }
        }
    }

    pub fn one() -> Poly {
        Poly::constant(Int::ONE)
    }

    pub fn var(i: usize) -> Poly {
        Poly { terms: vec![(Mono::var(i), Int::ONE)] }
    }

    pub fn monomial(m: Mono, c: Int) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted terms, merging duplicates.
    pub fn from_terms(terms: Vec<(Mono, Int)>) -> Poly {
        let mut map: FxHashMap<Mono, Int> = FxHashMap::default();
        for (m, c) in terms {
            *map.entry(m).or_default() += &c;
        }
        Poly::from_map(map)
    }

    fn from_map(map: FxHashMap<Mono, Int>) -> Poly {
        let mut terms: Vec<(Mono, Int)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Int)] {
        &self.terms
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

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Constant coefficient (zero if absent).
    pub fn constant_term(&self) -> Int {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Int::ZERO,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Int)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u16 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u8 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    /// Index of the single variable if this is `x_v` exactly.
    pub fn as_variable(&self) -> Option<usize> {
        if self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.degree() == 1 {
            (0..MAX_VARS).find(|&i| self.terms[0].0.exp(i) == 1)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, k: &Int) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, k: &Int) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c * k)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut map: FxHashMap<Mono, Int> = FxHashMap::default();
        map.reserve(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *map.entry(m1.mul(m2)).or_default() += &(c1 * c2);
            }
        }
        Poly::from_map(map)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, k: &Int) -> Poly {
        if k.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.div_exact(k))).collect() }
    }

    /// Splits `self = unit * p` with `p` primitive and its leading
    /// coefficient positive. Returns `(unit, p)`; `unit` carries the sign.
    pub fn primitive_part(&self) -> (Int, Poly) {
        if self.is_zero() {
            return (Int::ONE, Poly::zero());
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -&g;
        }
        (g.clone(), self.div_int_exact(&g))
    }

    /// Exact quotient `self / f` if `f` divides `self` in Z[x].
    pub fn exact_div(&self, f: &Poly) -> Option<Poly> {
        if f.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if f.terms.len() == 1 {
            let (fm, fc) = &f.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !fm.divides(m) {
                    return None;
                }
                out.push((fm.quotient_of(m), c.checked_div(fc)?));
            }
            return Some(Poly { terms: out });
        }
        if f.total_degree() > self.total_degree() {
            return None;
        }
        let (flm, flc) = &f.terms[0];
        if !flm.divides(&self.terms[0].0) {
            return None;
        }
        let last_f = f.terms.last().unwrap();
        if !last_f.0.divides(&self.terms.last().unwrap().0) {
            return None;
        }
        for v in 0..MAX_VARS {
            if f.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let mut rem: BTreeMap<Mono, Int> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, Int)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !flm.divides(&m) {
                return None;
            }
            let qc = c.checked_div(flc)?;
            let qm = flm.quotient_of(&m);
            for (fm, fc) in f.terms.iter().skip(1) {
                let prod = fm.mul(&qm);
                let delta = fc * &qc;
                match rem.entry(prod) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let v = e.get() - &delta;
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-&delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Evaluation modulo a prime `p < 2^62`.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        let mut acc: u128 = 0;
        for (m, c) in &self.terms {
            let mut t = c.rem_u64(p) as u128;
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t * point[v] as u128 % p as u128;
                }
            }
            acc = (acc + t) % p as u128;
        }
        acc as u64
    }

    /// Sums `f(term)` over all terms.
    pub fn map_terms<F: FnMut(&Mono, &Int) -> Poly>(&self, mut f: F) -> Poly {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            acc = acc.add(&f(m, c));
        }
        acc
    }

    /// Formats with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors = mono_factors(m, names);
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
        out
    }
}

pub(crate) fn mono_factors(m: &Mono, names: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for (v, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = names.get(v).cloned().unwrap_or_else(|| format!("v{v}"));
        if e == 1 {
            out.push(name);
        } else {
            out.push(format!("{name}^{e}"));
        }
    }
    out
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Poly) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let o = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn deglex_order_puts_higher_degree_first() {
        let p = x(1).add(&x(0).mul(&x(0))).add(&Poly::one());
        let lead = p.leading().unwrap().0;
        assert_eq!(lead.degree(), 2);
        assert_eq!(p.constant_term(), Int::ONE);
    }

    #[test]
    fn exact_division_recovers_factor() {
        let f = x(0).mul(&x(3)).sub(&x(1).mul(&x(2)));
        let g = x(0).add(&x(4)).add(&Poly::constant(Int::from(3)));
        let prod = f.mul(&g);
        assert_eq!(prod.exact_div(&f), Some(g.clone()));
        assert_eq!(prod.exact_div(&g), Some(f.clone()));
        assert_eq!(prod.add(&Poly::one()).exact_div(&f), None);
        assert_eq!(x(0).exact_div(&x(1)), None);
    }

    #[test]
    fn primitive_part_normalizes_sign_and_content() {
        let p = x(0).scale(&Int::from(-6)).add(&Poly::constant(Int::from(4)));
        let (u, q) = p.primitive_part();
        assert_eq!(u, Int::from(-2));
        assert_eq!(q, x(0).scale(&Int::from(3)).sub(&Poly::constant(Int::from(2))));
    }

    #[test]
    fn modular_evaluation() {
        let p = x(0).mul(&x(1)).sub(&Poly::constant(Int::from(5)));
        assert_eq!(p.eval_mod(&[3, 4], 101), 7);
        assert_eq!(p.eval_mod(&[1, 1], 101), 97);
    }
}
