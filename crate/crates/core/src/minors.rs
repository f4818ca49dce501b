//! The generic coordinate supermatrix, its super minors and fake super
//! minors, and the decomposition `A = Ã·B` behind the first fundamental
//! theorem.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::algebra::SuperAlgebra;
use crate::error::{Error, Result};
use crate::grassmann::{random_nonzero_rational, Assignment, Grassmann, GrassmannCtx};
use crate::poly::Poly;
use crate::superscalar::{Ring, RingContext, Scalar};
use crate::supermatrix::{Grid, MatrixKind, ParitySignature, SuperMatrix};

/// A column of the coordinate matrix, numbered from 1 within its parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    Even(usize),
    Odd(usize),
}

impl Column {
    pub fn index(self) -> usize {
        match self {
            Column::Even(i) | Column::Odd(i) => i,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Column::Odd(_))
    }
}

/// `X[i1..ir|m1..ms]` or `Xs[..]`: the Berezinian (or inverted
/// Berezinian) of a column selection. An even slot may hold one odd column
/// (type-I fake, unstarred) or an odd slot one even column (type-II fake,
/// starred).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorSymbol {
    pub starred: bool,
    pub even_slots: Vec<Column>,
    pub odd_slots: Vec<Column>,
}

impl MinorSymbol {
    pub fn plain(starred: bool, even: &[usize], odd: &[usize]) -> MinorSymbol {
        MinorSymbol {
            starred,
            even_slots: even.iter().map(|&i| Column::Even(i)).collect(),
            odd_slots: odd.iter().map(|&i| Column::Odd(i)).collect(),
        }
    }

    pub fn fake_count(&self) -> usize {
        self.even_slots.iter().filter(|c| c.is_odd()).count()
            + self.odd_slots.iter().filter(|c| !c.is_odd()).count()
    }

    pub fn is_fake(&self) -> bool {
        self.fake_count() > 0
    }

    /// True for an odd element: exactly one fake column.
    pub fn is_odd(&self) -> bool {
        self.fake_count() % 2 == 1
    }

    /// Checks the symbol against sizes `r|s × p|q`.
    pub fn validate(&self, r: usize, s: usize, p: usize, q: usize) -> Result<()> {
        if self.even_slots.len() != r || self.odd_slots.len() != s {
            return Err(Error::Minor(format!("{self} needs {r} even and {s} odd slots")));
        }
        for c in self.even_slots.iter().chain(&self.odd_slots) {
            let bound = if c.is_odd() { q } else { p };
            if c.index() == 0 || c.index() > bound {
                return Err(Error::Minor(format!("{self}: column index out of range")));
            }
        }
        let fake_even = self.even_slots.iter().filter(|c| c.is_odd()).count();
        let fake_odd = self.odd_slots.iter().filter(|c| !c.is_odd()).count();
        if fake_even + fake_odd > 1 {
            return Err(Error::Minor(format!("{self}: at most one fake column")));
        }
        if fake_even == 1 && self.starred {
            return Err(Error::Minor(format!("{self}: an odd column in an even slot needs X")));
        }
        if fake_odd == 1 && !self.starred {
            return Err(Error::Minor(format!("{self}: an even column in an odd slot needs Xs")));
        }
        Ok(())
    }

    /// Text form with `^` marking a fake column.
    pub fn to_text(&self) -> String {
        let slot = |c: &Column, odd_slot: bool| {
            if c.is_odd() != odd_slot {
                format!("^{}", c.index())
            } else {
                c.index().to_string()
            }
        };
        let even: Vec<String> = self.even_slots.iter().map(|c| slot(c, false)).collect();
        let odd: Vec<String> = self.odd_slots.iter().map(|c| slot(c, true)).collect();
        let head = if self.starred { "Xs" } else { "X" };
        if odd.is_empty() {
            format!("{head}[{}]", even.join(","))
        } else {
            format!("{head}[{}|{}]", even.join(","), odd.join(","))
        }
    }

    /// LaTeX form with hats on odd columns.
    pub fn to_latex(&self) -> String {
        let col = |c: &Column| match c {
            Column::Even(i) => i.to_string(),
            Column::Odd(i) => format!("\\hat{{{i}}}"),
        };
        let even: Vec<String> = self.even_slots.iter().map(col).collect();
        let odd: Vec<String> = self.odd_slots.iter().map(col).collect();
        let sep = |v: &[String]| {
            if v.iter().all(|s| s.len() == 1) {
                v.concat()
            } else {
                v.join(",")
            }
        };
        let head = if self.starred { "X^*" } else { "X" };
        if odd.is_empty() {
            format!("{head}_{{{}}}", sep(&even))
        } else {
            format!("{head}_{{{}|{}}}", sep(&even), sep(&odd))
        }
    }
}

impl fmt::Display for MinorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Berezinian (or inverted Berezinian) of the selected columns of an
/// `r|s × p|q` matrix.
pub fn minor_of<T: SuperAlgebra>(a: &SuperMatrix<T>, m: &MinorSymbol) -> Result<T> {
    let rows = a.row_signature();
    let cols = a.col_signature();
    m.validate(rows.even, rows.odd, cols.even, cols.odd)?;
    let abs = |c: &Column| match c {
        Column::Even(i) => i - 1,
        Column::Odd(i) => cols.even + i - 1,
    };
    let ctx = a.ctx();
    let sig = ParitySignature::new(rows.even, rows.odd);
    let selected: Vec<usize> = m.even_slots.iter().chain(&m.odd_slots).map(abs).collect();
    let sub = SuperMatrix::from_fn(ctx, rows, sig, |i, j| a.get(i, selected[j]).clone());
    if m.starred {
        sub.berezinian_star()
    } else {
        sub.berezinian()
    }
}

/// The coordinate matrix `A` of size `r|s × p|q` with entries `x[i,j]`,
/// `al[i,k]`, `be[l,j]`, `y[l,k]` over a fresh ring.
pub struct GenericMatrix {
    pub r: usize,
    pub s: usize,
    pub p: usize,
    pub q: usize,
    ring: Ring,
    matrix: SuperMatrix<Scalar>,
    cache: RwLock<HashMap<MinorSymbol, Scalar>>,
}

impl fmt::Debug for GenericMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenericMatrix({}|{} x {}|{})", self.r, self.s, self.p, self.q)
    }
}

/// Combinations of `k` elements of `1..=n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

fn block_minors(vars: &dyn Fn(usize, usize) -> usize, rows: usize, cols: usize) -> Vec<Poly> {
    if rows == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for sel in combinations(cols, rows) {
        // Leibniz expansion over permutations of the selected columns.
        let mut acc = Poly::zero();
        let mut perm: Vec<usize> = (0..rows).collect();
        loop {
            let mut term = Poly::constant(if permutation_sign(&perm) { (-1).into() } else { 1.into() });
            for (i, &pi) in perm.iter().enumerate() {
                term = term.mul(&Poly::var(vars(i, sel[pi] - 1)));
            }
            acc = acc.add(&term);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out.push(acc);
    }
    out
}

fn permutation_sign(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl GenericMatrix {
    pub fn new(r: usize, s: usize, p: usize, q: usize) -> Result<GenericMatrix> {
        if r > p || s > q {
            return Err(Error::Dimension(format!(
                "minors of a {r}|{s} x {p}|{q} matrix need r <= p and s <= q"
            )));
        }
        let mut even = Vec::new();
        for i in 1..=r {
            for j in 1..=p {
                even.push(format!("x[{i},{j}]"));
            }
        }
        for l in 1..=s {
            for k in 1..=q {
                even.push(format!("y[{l},{k}]"));
            }
        }
        let mut odd = Vec::new();
        for i in 1..=r {
            for k in 1..=q {
                odd.push(format!("al[{i},{k}]"));
            }
        }
        for l in 1..=s {
            for j in 1..=p {
                odd.push(format!("be[{l},{j}]"));
            }
        }
        let x_var = |i: usize, j: usize| i * p + j;
        let y_var = |l: usize, k: usize| r * p + l * q + k;
        let mut factors = block_minors(&x_var, r, p);
        factors.extend(block_minors(&y_var, s, q));
        let ring = RingContext::declare_with_factors(&even, &odd, factors)?;
        let rows = ParitySignature::new(r, s);
        let cols = ParitySignature::new(p, q);
        let matrix = SuperMatrix::from_fn(&ring, rows, cols, |i, j| match (i < r, j < p) {
            (true, true) => Scalar::even_var(&ring, x_var(i, j)),
            (false, false) => Scalar::even_var(&ring, y_var(i - r, j - p)),
            (true, false) => Scalar::odd_var(&ring, i * q + (j - p)),
            (false, true) => Scalar::odd_var(&ring, r * q + (i - r) * p + j),
        });
        Ok(GenericMatrix { r, s, p, q, ring, matrix, cache: RwLock::new(HashMap::new()) })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn matrix(&self) -> &SuperMatrix<Scalar> {
        &self.matrix
    }

    /// `x[i,j]`, 1-based.
    pub fn x(&self, i: usize, j: usize) -> Scalar {
        self.matrix.get(i - 1, j - 1).clone()
    }

    /// `y[l,k]`, 1-based.
    pub fn y(&self, l: usize, k: usize) -> Scalar {
        self.matrix.get(self.r + l - 1, self.p + k - 1).clone()
    }

    /// `al[i,k]`, 1-based.
    pub fn al(&self, i: usize, k: usize) -> Scalar {
        self.matrix.get(i - 1, self.p + k - 1).clone()
    }

    /// `be[l,j]`, 1-based.
    pub fn be(&self, l: usize, j: usize) -> Scalar {
        self.matrix.get(self.r + l - 1, j - 1).clone()
    }

    /// The super minor (or fake super minor) named by `m`, memoized.
    pub fn super_minor(&self, m: &MinorSymbol) -> Result<Scalar> {
        if let Some(v) = self.cache.read().expect("minor cache").get(m) {
            return Ok(v.clone());
        }
        let v = minor_of(&self.matrix, m)?;
        if crate::budget::exhausted() {
            return Ok(v);
        }
        self.cache.write().expect("minor cache").insert(m.clone(), v.clone());
        Ok(v)
    }

    /// All plain and fake minors with increasing plain indices. Fake
    /// columns occupy the last slot of their class.
    pub fn all_minor_symbols(&self) -> Vec<MinorSymbol> {
        enumerate_minor_symbols(self.r, self.s, self.p, self.q)
    }

    /// The distinguished selection `1..r|1..s`.
    pub fn leading_symbol(&self) -> MinorSymbol {
        let even: Vec<usize> = (1..=self.r).collect();
        let odd: Vec<usize> = (1..=self.s).collect();
        MinorSymbol::plain(false, &even, &odd)
    }

    /// `A = Ã·B` where `Ã` is the leading `r|s` columns of `A` with the
    /// first column rescaled so that `Ber Ã = 1`: the first even column is
    /// divided by `X_{1..r|1..s}`, or for `r = 0` the first odd column is
    /// multiplied by it.
    pub fn fft_decompose(&self) -> Result<FftDecomposition> {
        if self.r + self.s == 0 {
            return Err(Error::Dimension("the decomposition needs r + s >= 1".into()));
        }
        let x_lead = self.super_minor(&self.leading_symbol())?;
        let scale = if self.r > 0 { x_lead.invert_even_unit()? } else { x_lead };
        let rows = ParitySignature::new(self.r, self.s);
        let a_tilde = SuperMatrix::from_fn(&self.ring, rows, rows, |i, j| {
            let col = if j < self.r { j } else { self.p + j - self.r };
            let v = self.matrix.get(i, col).clone();
            if j == 0 {
                v.mul(&scale)
            } else {
                v
            }
        });
        let b = a_tilde.inverse()?.multiply(&self.matrix)?;
        Ok(FftDecomposition { a_tilde, b })
    }

    /// Compares every entry of `B` with its closed form in minors: row 1
    /// of the even part is `X` with column `j` in slot 1, other even rows
    /// carry a factor `X*_{lead}`, odd rows are `X_{lead}·X*` with column
    /// `j` in the odd slot (for `r = 0` the first odd row is `X*` alone).
    pub fn verify_fft_entries(&self, dec: &FftDecomposition) -> Result<FftReport> {
        let (r, s, p, q) = (self.r, self.s, self.p, self.q);
        let lead_even: Vec<Column> = (1..=r).map(Column::Even).collect();
        let lead_odd: Vec<Column> = (1..=s).map(Column::Odd).collect();
        let x_lead = self.super_minor(&self.leading_symbol())?;
        let xs_lead = self.super_minor(&MinorSymbol {
            starred: true,
            even_slots: lead_even.clone(),
            odd_slots: lead_odd.clone(),
        })?;
        let mut entries = Vec::new();
        for row in 0..r + s {
            for col in 0..p + q {
                let target = if col < p { Column::Even(col + 1) } else { Column::Odd(col - p + 1) };
                let (formula, predicted) = if row < r {
                    let mut even = lead_even.clone();
                    even[row] = target;
                    let sym =
                        MinorSymbol { starred: false, even_slots: even, odd_slots: lead_odd.clone() };
                    let minor = self.super_minor(&sym)?;
                    if row == 0 {
                        (sym.to_text(), minor)
                    } else {
                        (format!("{}*{sym}", xs_lead_name(r, s)), xs_lead.mul(&minor))
                    }
                } else {
                    let mut odd = lead_odd.clone();
                    odd[row - r] = target;
                    let sym =
                        MinorSymbol { starred: true, even_slots: lead_even.clone(), odd_slots: odd };
                    let minor = self.super_minor(&sym)?;
                    if r == 0 && row == 0 {
                        (sym.to_text(), minor)
                    } else {
                        (format!("{}*{sym}", x_lead_name(r, s)), x_lead.mul(&minor))
                    }
                };
                let matches = predicted.equals(dec.b.get(row, col));
                entries.push(FftEntry { row, col, formula, matches });
            }
        }
        Ok(FftReport { entries })
    }
}

fn x_lead_name(r: usize, s: usize) -> String {
    let e: Vec<usize> = (1..=r).collect();
    let o: Vec<usize> = (1..=s).collect();
    MinorSymbol::plain(false, &e, &o).to_text()
}

fn xs_lead_name(r: usize, s: usize) -> String {
    let e: Vec<usize> = (1..=r).collect();
    let o: Vec<usize> = (1..=s).collect();
    MinorSymbol::plain(true, &e, &o).to_text()
}

/// All minor symbols of sizes `r|s × p|q` (see
/// [`GenericMatrix::all_minor_symbols`]).
pub fn enumerate_minor_symbols(r: usize, s: usize, p: usize, q: usize) -> Vec<MinorSymbol> {
    let mut out = Vec::new();
    let evens = combinations(p, r);
    let odds = combinations(q, s);
    for starred in [false, true] {
        for e in &evens {
            for o in &odds {
                out.push(MinorSymbol::plain(starred, e, o));
            }
        }
    }
    if r >= 1 {
        for e in combinations(p, r - 1) {
            for o in &odds {
                for f in 1..=q {
                    let mut even: Vec<Column> = e.iter().map(|&i| Column::Even(i)).collect();
                    even.push(Column::Odd(f));
                    out.push(MinorSymbol {
                        starred: false,
                        even_slots: even,
                        odd_slots: o.iter().map(|&k| Column::Odd(k)).collect(),
                    });
                }
            }
        }
    }
    if s >= 1 {
        for e in &evens {
            for o in combinations(q, s - 1) {
                for f in 1..=p {
                    let mut odd: Vec<Column> = o.iter().map(|&k| Column::Odd(k)).collect();
                    odd.push(Column::Even(f));
                    out.push(MinorSymbol {
                        starred: true,
                        even_slots: e.iter().map(|&i| Column::Even(i)).collect(),
                        odd_slots: odd,
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct FftDecomposition {
    pub a_tilde: SuperMatrix<Scalar>,
    pub b: SuperMatrix<Scalar>,
}

#[derive(Clone, Debug)]
pub struct FftEntry {
    pub row: usize,
    pub col: usize,
    /// The closed form predicted for this entry.
    pub formula: String,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct FftReport {
    pub entries: Vec<FftEntry>,
}

impl FftReport {
    /// True when every entry equals its predicted closed form.
    pub fn consistent(&self) -> bool {
        self.entries.iter().all(|e| e.matches)
    }
}

/// A random element of `SL(r|s)` over a numeric Grassmann algebra, built
/// as `M₊ M₀ M₋` with the first row of `V` rescaled so `det V = det W`.
/// Odd entries are random combinations of the generators `η_k` with
/// `k ∈ odd_range`.
pub fn random_sl_element<R: Rng>(
    rng: &mut R,
    ctx: GrassmannCtx,
    r: usize,
    s: usize,
    odd_range: std::ops::Range<usize>,
) -> Result<SuperMatrix<Grassmann>> {
    let odd_entry = |rng: &mut R| {
        let mut g = Grassmann::new(ctx);
        if odd_range.is_empty() {
            return g;
        }
        for _ in 0..2 {
            let k = rng.gen_range(odd_range.clone());
            g = g.plus(&Grassmann::eta(ctx, k, random_nonzero_rational(rng)));
        }
        g
    };
    let even_entry = |rng: &mut R| Grassmann::rational(ctx, random_nonzero_rational(rng));
    loop {
        let x = Grid::from_fn(r, s, |_, _| odd_entry(rng));
        let z = Grid::from_fn(s, r, |_, _| odd_entry(rng));
        let mut v = Grid::from_fn(r, r, |_, _| even_entry(rng));
        let w = Grid::from_fn(s, s, |_, _| even_entry(rng));
        let dv = v.det(&ctx)?;
        let dw = w.det(&ctx)?;
        if !dv.has_unit_body() || !dw.has_unit_body() {
            continue;
        }
        let mut w = w;
        if r > 0 {
            let k = dw.times(&dv.inverse_even()?);
            for j in 0..r {
                v.data[j] = k.times(&v.data[j]);
            }
        } else if s > 0 {
            let k = dw.inverse_even()?;
            for j in 0..s {
                w.data[j] = k.times(&w.data[j]);
            }
        }
        let udl = crate::supermatrix::Udl { x, v, w, z };
        let (plus, middle, minus) = udl.factors(&ctx);
        return plus.multiply(&middle)?.multiply(&minus);
    }
}

/// Outcome of checking minors at `g·A` against minors at `A`.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub trials: usize,
    pub symbols: usize,
    pub failures: Vec<(usize, MinorSymbol)>,
}

/// For `trials` random `g ∈ SL(r|s)`, evaluates every symbolic minor at a
/// random numeric point `A₀` and compares with the numerically computed
/// minor of `g·A₀`.
pub fn check_invariance<R: Rng>(
    generic: &GenericMatrix,
    trials: usize,
    rng: &mut R,
) -> Result<InvarianceReport> {
    let symbols = generic.all_minor_symbols();
    let ring = generic.ring();
    let n_odd = ring.odd_count();
    let extra = 2 * generic.r * generic.s + 2;
    let mut failures = Vec::new();
    let symbolic: Vec<Scalar> =
        symbols.iter().map(|m| generic.super_minor(m)).collect::<Result<_>>()?;
    for trial in 0..trials {
        let mut asg = Assignment::random(rng, ring.even_count(), n_odd, true);
        let ctx = GrassmannCtx { generators: n_odd + extra };
        asg.ctx = ctx;
        asg.odd = asg
            .odd
            .iter()
            .map(|g| Grassmann::from_terms(ctx, g.terms().to_vec()))
            .collect();
        let a0 = generic.matrix().map(&ctx, |s| crate::grassmann::evaluate_numeric(s, &asg))?;
        let g = random_sl_element(rng, ctx, generic.r, generic.s, n_odd..n_odd + extra)?;
        let ga = g.multiply(&a0)?;
        for (m, sym) in symbols.iter().zip(&symbolic) {
            let before = crate::grassmann::evaluate_numeric(sym, &asg)?;
            let after = minor_of(&ga, m)?;
            if !before.same_as(&after) {
                failures.push((trial, m.clone()));
            }
        }
    }
    Ok(InvarianceReport { trials, symbols: symbols.len(), failures })
}

/// `q` as a Grassmann constant.
pub fn rational_entry(ctx: GrassmannCtx, n: i64, d: i64) -> Grassmann {
    Grassmann::rational(ctx, BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Kind of the column selection behind a minor symbol.
pub fn selection_kind(m: &MinorSymbol) -> MatrixKind {
    if m.even_slots.iter().any(|c| c.is_odd()) {
        MatrixKind::FakeI
    } else if m.odd_slots.iter().any(|c| !c.is_odd()) {
        MatrixKind::FakeII
    } else {
        MatrixKind::Even
    }
}

/// Shared handle used by the relation generators.
pub type SharedGeneric = Arc<GenericMatrix>;
