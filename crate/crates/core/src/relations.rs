//! Jacobi identities and the Plücker relation families, with symbolic and
//! seeded numeric verification.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::RwLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::SuperAlgebra;
use crate::budget;
use crate::error::{Error, Result};
use crate::expr::{Expr, Resolver};
use crate::grassmann::{evaluate_numeric, Assignment, Grassmann, GrassmannCtx};
use crate::minors::{combinations, minor_of, Column, GenericMatrix, MinorSymbol};
use crate::superscalar::{generator, Ring, Scalar};
use crate::supermatrix::{Grid, SuperMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    ClassicalPlucker,
    Sp1,
    Sp2,
    Sp3,
    Sp4,
    Gsp1,
    Gsp2,
    Gsp3,
    Gsp4,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::ClassicalPlucker => "classical-plucker",
            Family::Sp1 => "sp1",
            Family::Sp2 => "sp2",
            Family::Sp3 => "sp3",
            Family::Sp4 => "sp4",
            Family::Gsp1 => "gsp1",
            Family::Gsp2 => "gsp2",
            Family::Gsp3 => "gsp3",
            Family::Gsp4 => "gsp4",
        }
    }

    /// The family in symbolic-index notation.
    pub fn latex_template(self) -> &'static str {
        match self {
            Family::ClassicalPlucker => {
                "\\sum_{k=1}^{r+1}(-1)^{k}X_{i_1\\cdots i_{r-1}j_k}X_{j_1\\cdots\\tilde{\\jmath}_k\\cdots j_{r+1}}=0"
            }
            Family::Sp1 => "X_{i|\\hat\\mu}X^*_{i|\\hat\\mu}=1",
            Family::Sp2 => {
                "X_{i|\\hat\\mu}X_{j|\\hat\\nu}=\\mathrm{Ber}\\begin{pmatrix}X_{j|\\hat\\mu} & \\vline & X_{\\hat\\nu|\\hat\\mu}\\\\ \\hline X^*_{i|j} & \\vline & X^*_{i|\\hat\\nu}\\end{pmatrix}"
            }
            Family::Sp3 => {
                "X_{i|\\hat\\mu}X_{\\hat\\lambda|\\hat\\nu}=\\mathrm{Ber}\\begin{pmatrix}X_{\\hat\\lambda|\\hat\\mu} & \\vline & X_{\\hat\\nu|\\hat\\mu}\\\\ \\hline X^*_{i|\\hat\\lambda} & \\vline & X^*_{i|\\hat\\nu}\\end{pmatrix}"
            }
            Family::Sp4 => {
                "X^*_{i|\\hat\\mu}X^*_{j|k}=\\mathrm{Ber}^*\\begin{pmatrix}X_{j|\\hat\\mu} & \\vline & X_{k|\\hat\\mu}\\\\ \\hline X^*_{i|j} & \\vline & X^*_{i|k}\\end{pmatrix}"
            }
            Family::Gsp1 => "X_{\\underline{i}|\\underline{\\hat\\mu}}X^*_{\\underline{i}|\\underline{\\hat\\mu}}=1",
            Family::Gsp2 => {
                "(X_{\\underline{i}|\\underline{\\hat\\mu}})^{r+s-1}X_{\\underline{j}|\\underline{\\hat\\nu}}=\\mathrm{Ber}\\begin{pmatrix}X_{\\underline{i}_a(j_t)|\\underline{\\hat\\mu}} & \\vline & X_{\\underline{i}_a(\\nu_\\beta)|\\underline{\\hat\\mu}}\\\\ \\hline X^*_{\\underline{i}|\\underline{\\hat\\mu}_\\alpha(j_t)} & \\vline & X^*_{\\underline{i}|\\underline{\\hat\\mu}_\\alpha(\\nu_\\beta)}\\end{pmatrix}"
            }
            Family::Gsp3 => {
                "(X_{\\underline{i}|\\underline{\\hat\\mu}})^{r+s-1}X_{j_1\\dots j_{r-1}\\hat\\lambda|\\underline{\\hat\\nu}}=\\mathrm{Ber}\\begin{pmatrix}X_{\\underline{i}_a(j_t)|\\underline{\\hat\\mu}} & X_{\\underline{i}_a(\\hat\\lambda)|\\underline{\\hat\\mu}} & \\vline & X_{\\underline{i}_a(\\nu_\\beta)|\\underline{\\hat\\mu}}\\\\ \\hline X^*_{\\underline{i}|\\underline{\\hat\\mu}_\\alpha(j_t)} & X^*_{\\underline{i}|\\underline{\\hat\\mu}_\\alpha(\\hat\\lambda)} & \\vline & X^*_{\\underline{i}|\\underline{\\hat\\mu}_\\alpha(\\nu_\\beta)}\\end{pmatrix}"
            }
            Family::Gsp4 => {
                "(X^*_{\\underline{i}|\\underline{\\hat\\mu}})^{-r-s+1}X^*_{\\underline{j}|\\nu_1\\dots\\nu_{s-1}y}=\\mathrm{Ber}^*\\begin{pmatrix}X_{\\underline{i}_a(j_t)|\\underline{\\hat\\mu}} & \\vline & X_{\\underline{i}_a(\\nu_\\beta)|\\underline{\\hat\\mu}} & X_{\\underline{i}_a(y)|\\underline{\\hat\\mu}}\\\\ \\hline X^*_{\\underline{i}|\\underline{\\hat\\mu}_\\alpha(j_t)} & \\vline & X^*_{\\underline{i}|\\underline{\\hat\\mu}_\\alpha(\\nu_\\beta)} & X^*_{\\underline{i}|\\underline{\\hat\\mu}_\\alpha(y)}\\end{pmatrix}"
            }
        }
    }

    pub fn parse(name: &str) -> Option<Family> {
        [
            Family::ClassicalPlucker,
            Family::Sp1,
            Family::Sp2,
            Family::Sp3,
            Family::Sp4,
            Family::Gsp1,
            Family::Gsp2,
            Family::Gsp3,
            Family::Gsp4,
        ]
        .into_iter()
        .find(|f| f.name() == name)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sizes `r|s × p|q` of the coordinate matrix a relation lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub r: usize,
    pub s: usize,
    pub p: usize,
    pub q: usize,
}

impl Shape {
    pub fn new(r: usize, s: usize, p: usize, q: usize) -> Shape {
        Shape { r, s, p, q }
    }

    pub fn generic(self) -> Result<GenericMatrix> {
        GenericMatrix::new(self.r, self.s, self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Numeric,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Numeric => "numeric",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub mode: Option<Mode>,
    pub trials: usize,
    pub seed: Option<u64>,
    /// `None` while unchecked or when the check could not finish.
    pub verified: Option<bool>,
    pub witness: Option<String>,
    pub error: Option<String>,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "mode": self.mode.map(Mode::name),
            "trials": self.trials,
            "seed": self.seed,
            "verified": self.verified,
        });
        if let Some(w) = &self.witness {
            v["witness"] = json!(w);
        }
        if let Some(e) = &self.error {
            v["error"] = json!(e);
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub family: Family,
    pub shape: Shape,
    /// Named multi-indices, 1-based.
    pub indices: Vec<(String, Vec<usize>)>,
    pub lhs: Expr,
    pub rhs: Expr,
    pub certificate: Certificate,
}

impl Relation {
    fn new(family: Family, shape: Shape, indices: Vec<(&str, Vec<usize>)>, lhs: Expr, rhs: Expr) -> Relation {
        Relation {
            family,
            shape,
            indices: indices.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            lhs,
            rhs,
            certificate: Certificate::default(),
        }
    }

    pub fn to_text(&self) -> String {
        format!("{} = {}", self.lhs.to_text(), self.rhs.to_text())
    }

    pub fn to_latex(&self) -> String {
        format!("{}={}", self.lhs.to_latex(), self.rhs.to_latex())
    }

    pub fn to_json(&self) -> Value {
        let mut indices = serde_json::Map::new();
        for (k, v) in &self.indices {
            indices.insert(k.clone(), json!(v));
        }
        json!({
            "family": self.family.name(),
            "shape": [self.shape.r, self.shape.s, self.shape.p, self.shape.q],
            "indices": indices,
            "lhs": self.lhs.to_text(),
            "rhs": self.rhs.to_text(),
            "certificate": self.certificate.to_json(),
        })
    }
}

/// The JSON document for a list of relations.
pub fn relations_json(relations: &[Relation]) -> Value {
    json!({
        "schema": 1,
        "relations": relations.iter().map(Relation::to_json).collect::<Vec<_>>(),
    })
}

fn evens(v: &[usize]) -> Vec<Column> {
    v.iter().map(|&i| Column::Even(i)).collect()
}

fn odds(v: &[usize]) -> Vec<Column> {
    v.iter().map(|&i| Column::Odd(i)).collect()
}

fn x(even: Vec<Column>, odd: Vec<Column>) -> Expr {
    Expr::Minor(MinorSymbol { starred: false, even_slots: even, odd_slots: odd })
}

fn xs(even: Vec<Column>, odd: Vec<Column>) -> Expr {
    Expr::Minor(MinorSymbol { starred: true, even_slots: even, odd_slots: odd })
}

fn replaced(base: &[Column], slot: usize, c: Column) -> Vec<Column> {
    let mut out = base.to_vec();
    out[slot] = c;
    out
}

/// Classical Plücker relations among the `r×r` minors of an `r×p`
/// matrix. Each instance is brought to a canonical form (sorted minors,
/// like terms collected, first coefficient positive); zero and repeated
/// instances are dropped.
pub fn classical_plucker_relations(r: usize, p: usize) -> Result<Vec<Relation>> {
    if r > p {
        return Err(Error::Dimension(format!("r = {r} exceeds p = {p}")));
    }
    let shape = Shape::new(r, 0, p, 0);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    if r == 0 {
        return Ok(out);
    }
    for i in combinations(p, r - 1) {
        for j in combinations(p, r + 1) {
            let mut terms: BTreeMap<(Vec<usize>, Vec<usize>), i64> = BTreeMap::new();
            for k in 0..=r {
                let mut first = i.clone();
                first.push(j[k]);
                let second: Vec<usize> =
                    j.iter().enumerate().filter(|&(t, _)| t != k).map(|(_, &v)| v).collect();
                let Some((s1, a)) = sort_with_sign(&first) else { continue };
                let Some((s2, b)) = sort_with_sign(&second) else { continue };
                // (-1)^k with k counted from 1.
                let sign = if (k + 1) % 2 == 0 { 1 } else { -1 } * s1 * s2;
                let key = if a <= b { (a, b) } else { (b, a) };
                *terms.entry(key).or_insert(0) += sign;
            }
            terms.retain(|_, c| *c != 0);
            let Some(&lead) = terms.values().next() else { continue };
            if lead < 0 {
                terms.values_mut().for_each(|c| *c = -*c);
            }
            let key: Vec<_> = terms.iter().map(|(k, c)| (k.clone(), *c)).collect();
            if !seen.insert(key) {
                continue;
            }
            let sum = terms
                .iter()
                .map(|((a, b), &c)| {
                    let mut factors = Vec::new();
                    if c.abs() != 1 {
                        factors.push(Expr::int(c.abs()));
                    }
                    factors.push(x(evens(a), vec![]));
                    factors.push(x(evens(b), vec![]));
                    let t = Expr::product(factors);
                    if c < 0 {
                        Expr::neg(t)
                    } else {
                        t
                    }
                })
                .collect();
            out.push(Relation::new(
                Family::ClassicalPlucker,
                shape,
                vec![("i", i.clone()), ("j", j.clone())],
                Expr::Sum(sum),
                Expr::int(0),
            ));
        }
    }
    Ok(out)
}

/// Sorts `v`, returning the permutation sign, or `None` on a repeat.
fn sort_with_sign(v: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut w = v.to_vec();
    let mut sign = 1;
    for a in 0..w.len() {
        for b in 0..w.len() - 1 - a {
            if w[b] > w[b + 1] {
                w.swap(b, b + 1);
                sign = -sign;
            } else if w[b] == w[b + 1] {
                return None;
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((sign, w))
}

/// The relations (sp1)–(sp4) among the minors of a `1|1 × p|q` matrix,
/// over all index values.
pub fn sl11_plucker_relations(p: usize, q: usize) -> Result<Vec<Relation>> {
    if p == 0 || q == 0 {
        return Err(Error::Dimension("p and q must be at least 1".into()));
    }
    let shape = Shape::new(1, 1, p, q);
    let e = |i: usize| Column::Even(i);
    let o = |i: usize| Column::Odd(i);
    let ber = |starred: bool, entries: Vec<Expr>| Expr::Ber {
        starred,
        sig: crate::supermatrix::ParitySignature::new(1, 1),
        entries,
    };
    let mut out = Vec::new();
    for i in 1..=p {
        for mu in 1..=q {
            out.push(Relation::new(
                Family::Sp1,
                shape,
                vec![("i", vec![i]), ("mu", vec![mu])],
                Expr::Product(vec![x(vec![e(i)], vec![o(mu)]), xs(vec![e(i)], vec![o(mu)])]),
                Expr::int(1),
            ));
        }
    }
    for i in 1..=p {
        for j in 1..=p {
            for mu in 1..=q {
                for nu in 1..=q {
                    out.push(Relation::new(
                        Family::Sp2,
                        shape,
                        vec![("i", vec![i]), ("j", vec![j]), ("mu", vec![mu]), ("nu", vec![nu])],
                        Expr::Product(vec![x(vec![e(i)], vec![o(mu)]), x(vec![e(j)], vec![o(nu)])]),
                        ber(
                            false,
                            vec![
                                x(vec![e(j)], vec![o(mu)]),
                                x(vec![o(nu)], vec![o(mu)]),
                                xs(vec![e(i)], vec![e(j)]),
                                xs(vec![e(i)], vec![o(nu)]),
                            ],
                        ),
                    ));
                }
            }
        }
    }
    for i in 1..=p {
        for mu in 1..=q {
            for lambda in 1..=q {
                for nu in 1..=q {
                    out.push(Relation::new(
                        Family::Sp3,
                        shape,
                        vec![
                            ("i", vec![i]),
                            ("mu", vec![mu]),
                            ("lambda", vec![lambda]),
                            ("nu", vec![nu]),
                        ],
                        Expr::Product(vec![
                            x(vec![e(i)], vec![o(mu)]),
                            x(vec![o(lambda)], vec![o(nu)]),
                        ]),
                        ber(
                            false,
                            vec![
                                x(vec![o(lambda)], vec![o(mu)]),
                                x(vec![o(nu)], vec![o(mu)]),
                                xs(vec![e(i)], vec![o(lambda)]),
                                xs(vec![e(i)], vec![o(nu)]),
                            ],
                        ),
                    ));
                }
            }
        }
    }
    for i in 1..=p {
        for j in 1..=p {
            for k in 1..=p {
                for mu in 1..=q {
                    out.push(Relation::new(
                        Family::Sp4,
                        shape,
                        vec![("i", vec![i]), ("j", vec![j]), ("k", vec![k]), ("mu", vec![mu])],
                        Expr::Product(vec![xs(vec![e(i)], vec![o(mu)]), xs(vec![e(j)], vec![e(k)])]),
                        ber(
                            true,
                            vec![
                                x(vec![e(j)], vec![o(mu)]),
                                x(vec![e(k)], vec![o(mu)]),
                                xs(vec![e(i)], vec![e(j)]),
                                xs(vec![e(i)], vec![e(k)]),
                            ],
                        ),
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Which SL(r|s) families to generate, and how many instances of each.
#[derive(Clone, Debug)]
pub struct GspOptions {
    pub families: Vec<Family>,
    /// Maximum number of instances per family.
    pub limit: Option<usize>,
    /// Use the exponent `−r−s+1` on `X*` in (gsp4) instead of `r+s−1`.
    pub printed_gsp4_exponent: bool,
}

impl Default for GspOptions {
    fn default() -> Self {
        GspOptions {
            families: vec![Family::Gsp1, Family::Gsp2, Family::Gsp3, Family::Gsp4],
            limit: None,
            printed_gsp4_exponent: false,
        }
    }
}

/// The relations (gsp1)–(gsp4) for `SL(r|s)` acting on `r|s × p|q`
/// matrices. Plain multi-indices range over strictly increasing tuples.
pub fn slrs_plucker_relations(shape: Shape, options: &GspOptions) -> Result<Vec<Relation>> {
    let Shape { r, s, p, q } = shape;
    if r > p || s > q {
        return Err(Error::Dimension(format!("{r}|{s} x {p}|{q}: need r <= p and s <= q")));
    }
    let n = r + s;
    let sig = crate::supermatrix::ParitySignature::new;
    let even_sets = combinations(p, r);
    let odd_sets = combinations(q, s);
    let mut out = Vec::new();
    let full = |count: usize| options.limit.is_some_and(|l| count >= l);
    let gsp4_exponent = if options.printed_gsp4_exponent { 1 - n as i64 } else { n as i64 - 1 };
    for &family in &options.families {
        let mut count = 0;
        match family {
            Family::Gsp1 => {
                'outer: for i in &even_sets {
                    for mu in &odd_sets {
                        if full(count) {
                            break 'outer;
                        }
                        out.push(Relation::new(
                            family,
                            shape,
                            vec![("i", i.clone()), ("mu", mu.clone())],
                            Expr::Product(vec![x(evens(i), odds(mu)), xs(evens(i), odds(mu))]),
                            Expr::int(1),
                        ));
                        count += 1;
                    }
                }
            }
            Family::Gsp2 => {
                'outer: for i in &even_sets {
                    for mu in &odd_sets {
                        for j in &even_sets {
                            for nu in &odd_sets {
                                if full(count) {
                                    break 'outer;
                                }
                                let (ie, mo) = (evens(i), odds(mu));
                                let mut cols: Vec<Column> = evens(j);
                                cols.extend(odds(nu));
                                let entries = minor_matrix(&ie, &mo, &cols);
                                out.push(Relation::new(
                                    family,
                                    shape,
                                    vec![
                                        ("i", i.clone()),
                                        ("mu", mu.clone()),
                                        ("j", j.clone()),
                                        ("nu", nu.clone()),
                                    ],
                                    Expr::Product(vec![
                                        Expr::pow(x(ie.clone(), mo.clone()), (n - 1) as i64),
                                        x(evens(j), odds(nu)),
                                    ]),
                                    Expr::Ber { starred: false, sig: sig(r, s), entries },
                                ));
                                count += 1;
                            }
                        }
                    }
                }
            }
            Family::Gsp3 => {
                if r == 0 {
                    continue;
                }
                'outer: for i in &even_sets {
                    for mu in &odd_sets {
                        for j in combinations(p, r - 1) {
                            for lambda in 1..=q {
                                for nu in &odd_sets {
                                    if full(count) {
                                        break 'outer;
                                    }
                                    let (ie, mo) = (evens(i), odds(mu));
                                    let mut cols: Vec<Column> = evens(&j);
                                    cols.push(Column::Odd(lambda));
                                    let lhs_even = cols.clone();
                                    cols.extend(odds(nu));
                                    let entries = minor_matrix(&ie, &mo, &cols);
                                    out.push(Relation::new(
                                        family,
                                        shape,
                                        vec![
                                            ("i", i.clone()),
                                            ("mu", mu.clone()),
                                            ("j", j.clone()),
                                            ("lambda", vec![lambda]),
                                            ("nu", nu.clone()),
                                        ],
                                        Expr::Product(vec![
                                            Expr::pow(x(ie.clone(), mo.clone()), (n - 1) as i64),
                                            x(lhs_even, odds(nu)),
                                        ]),
                                        Expr::Ber { starred: false, sig: sig(r, s), entries },
                                    ));
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
            Family::Gsp4 => {
                if s == 0 {
                    continue;
                }
                'outer: for i in &even_sets {
                    for mu in &odd_sets {
                        for j in &even_sets {
                            for nu in combinations(q, s - 1) {
                                for y in 1..=p {
                                    if full(count) {
                                        break 'outer;
                                    }
                                    let (ie, mo) = (evens(i), odds(mu));
                                    let mut lhs_odd = odds(&nu);
                                    lhs_odd.push(Column::Even(y));
                                    let mut cols: Vec<Column> = evens(j);
                                    cols.extend(lhs_odd.iter().copied());
                                    let entries = minor_matrix(&ie, &mo, &cols);
                                    out.push(Relation::new(
                                        family,
                                        shape,
                                        vec![
                                            ("i", i.clone()),
                                            ("mu", mu.clone()),
                                            ("j", j.clone()),
                                            ("nu", nu.clone()),
                                            ("y", vec![y]),
                                        ],
                                        Expr::Product(vec![
                                            Expr::pow(xs(ie.clone(), mo.clone()), gsp4_exponent),
                                            xs(evens(j), lhs_odd),
                                        ]),
                                        Expr::Ber { starred: true, sig: sig(r, s), entries },
                                    ));
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
            other => {
                return Err(Error::Invalid(format!("{other} is not an SL(r|s) family")));
            }
        }
    }
    Ok(out)
}

/// Entries `X_{i_a(c)|μ}` (even rows `a`) and `X*_{i|μ_α(c)}` (odd rows
/// `α`) for the columns `c` in `cols`, row-major.
fn minor_matrix(i: &[Column], mu: &[Column], cols: &[Column]) -> Vec<Expr> {
    let mut entries = Vec::with_capacity((i.len() + mu.len()) * cols.len());
    for a in 0..i.len() {
        for &c in cols {
            entries.push(x(replaced(i, a, c), mu.to_vec()));
        }
    }
    for alpha in 0..mu.len() {
        for &c in cols {
            entries.push(xs(i.to_vec(), replaced(mu, alpha, c)));
        }
    }
    entries
}

/// Resolves leaves to exact symbolic values on a generic matrix.
pub struct SymbolicPoint<'a> {
    pub generic: &'a GenericMatrix,
}

impl Resolver for SymbolicPoint<'_> {
    type Value = Scalar;
    fn ctx(&self) -> Ring {
        self.generic.ring().clone()
    }
    fn minor(&self, m: &MinorSymbol) -> Result<Scalar> {
        self.generic.super_minor(m)
    }
    fn generator(&self, name: &str) -> Result<Scalar> {
        generator(self.generic.ring(), name)
    }
}

/// A random rational point in a numeric Grassmann algebra, with the
/// minors of the evaluated coordinate matrix computed on demand.
pub struct NumericPoint {
    ring: Ring,
    assignment: Assignment,
    matrix: SuperMatrix<Grassmann>,
    cache: RwLock<HashMap<MinorSymbol, Grassmann>>,
}

impl NumericPoint {
    pub fn random<R: Rng>(generic: &GenericMatrix, rng: &mut R) -> Result<NumericPoint> {
        let ring = generic.ring().clone();
        let assignment = Assignment::random(rng, ring.even_count(), ring.odd_count(), true);
        let matrix = generic.matrix().map(&assignment.ctx, |s| evaluate_numeric(s, &assignment))?;
        Ok(NumericPoint { ring, assignment, matrix, cache: RwLock::new(HashMap::new()) })
    }

    /// `count` points drawn from a ChaCha8 stream seeded with `seed`.
    pub fn seeded(generic: &GenericMatrix, count: usize, seed: u64) -> Result<Vec<NumericPoint>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| NumericPoint::random(generic, &mut rng)).collect()
    }

    pub fn matrix(&self) -> &SuperMatrix<Grassmann> {
        &self.matrix
    }
}

impl Resolver for NumericPoint {
    type Value = Grassmann;
    fn ctx(&self) -> GrassmannCtx {
        self.assignment.ctx
    }
    fn minor(&self, m: &MinorSymbol) -> Result<Grassmann> {
        if let Some(v) = self.cache.read().expect("numeric cache").get(m) {
            return Ok(v.clone());
        }
        let v = minor_of(&self.matrix, m)?;
        self.cache.write().expect("numeric cache").insert(m.clone(), v.clone());
        Ok(v)
    }
    fn generator(&self, name: &str) -> Result<Grassmann> {
        if let Some(i) = self.ring.even_index(name) {
            Ok(Grassmann::rational(self.assignment.ctx, self.assignment.even[i].clone()))
        } else if let Some(i) = self.ring.odd_index(name) {
            Ok(self.assignment.odd[i].clone())
        } else {
            Err(Error::UnknownGenerator(name.to_string()))
        }
    }
}

/// `lhs − rhs` as an exact symbolic scalar, within `cap` term operations.
pub fn symbolic_difference(rel: &Relation, generic: &GenericMatrix, cap: u64) -> Result<Scalar> {
    let point = SymbolicPoint { generic };
    budget::with_budget(cap, || -> Result<Scalar> {
        let l = rel.lhs.evaluate(&point)?;
        let r = rel.rhs.evaluate(&point)?;
        Ok(l.sub(&r))
    })?
}

fn numeric_certificate(rel: &Relation, points: &[NumericPoint], seed: u64) -> Certificate {
    let mut cert = Certificate {
        mode: Some(Mode::Numeric),
        trials: points.len(),
        seed: Some(seed),
        ..Certificate::default()
    };
    let mut checked = 0;
    for (t, point) in points.iter().enumerate() {
        let diff = rel
            .lhs
            .evaluate(point)
            .and_then(|l| rel.rhs.evaluate(point).map(|r| l.minus(&r)));
        match diff {
            Ok(d) if d.is_zero() => checked += 1,
            Ok(d) => {
                cert.verified = Some(false);
                cert.witness = Some(format!(
                    "seed {seed}, trial {t}: lhs - rhs = {}",
                    grassmann_text(&d, point.ctx())
                ));
                return cert;
            }
            Err(e) => cert.error = Some(format!("trial {t}: {e}")),
        }
    }
    if checked > 0 {
        cert.verified = Some(true);
    }
    cert
}

fn grassmann_text(g: &Grassmann, _ctx: GrassmannCtx) -> String {
    let terms = g.terms();
    let body = g.body();
    if terms.len() == 1 && terms[0].0.is_empty() {
        body.to_string()
    } else {
        format!("body {body} with {} nonzero Grassmann terms", terms.len())
    }
}

/// Verifies one relation on its own generic matrix.
pub fn verify_relation(rel: &Relation, mode: Mode, trials: usize, seed: u64) -> Result<Certificate> {
    let generic = rel.shape.generic()?;
    Ok(match mode {
        Mode::Symbolic => symbolic_certificate(rel, &generic, budget::configured_cap()),
        Mode::Numeric => {
            let points = NumericPoint::seeded(&generic, trials, seed)?;
            numeric_certificate(rel, &points, seed)
        }
    })
}

fn symbolic_certificate(rel: &Relation, generic: &GenericMatrix, cap: u64) -> Certificate {
    let mut cert = Certificate { mode: Some(Mode::Symbolic), ..Certificate::default() };
    match symbolic_difference(rel, generic, cap) {
        Ok(d) if d.is_zero() => cert.verified = Some(true),
        Ok(d) => {
            cert.verified = Some(false);
            let text = d.to_text();
            cert.witness = Some(if text.len() > 400 {
                format!("lhs - rhs has {} numerator terms", d.size())
            } else {
                format!("lhs - rhs = {text}")
            });
        }
        Err(e) => cert.error = Some(e.to_string()),
    }
    cert
}

/// Verifies every relation in place. All relations must share one shape;
/// they are checked in parallel against a shared generic matrix.
pub fn verify_all(relations: &mut [Relation], mode: Mode, trials: usize, seed: u64) -> Result<()> {
    let Some(first) = relations.first() else { return Ok(()) };
    let shape = first.shape;
    if relations.iter().any(|r| r.shape != shape) {
        return Err(Error::Dimension("relations of different shapes".into()));
    }
    let generic = shape.generic()?;
    let cap = budget::configured_cap();
    match mode {
        Mode::Symbolic => relations
            .par_iter_mut()
            .for_each(|rel| rel.certificate = symbolic_certificate(rel, &generic, cap)),
        Mode::Numeric => {
            let points = NumericPoint::seeded(&generic, trials, seed)?;
            relations
                .par_iter_mut()
                .for_each(|rel| rel.certificate = numeric_certificate(rel, &points, seed));
        }
    }
    Ok(())
}

/// A single injected change to a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Negates one summand of the left side, or the whole right side.
    FlipSign,
    /// Changes one column index of one minor occurrence.
    ChangeIndex { leaf: usize, slot: usize, from: usize, to: usize },
}

/// Applies a random mutation. Index changes avoid minors whose inverted
/// diagonal block would be singular.
pub fn mutate<R: Rng>(rel: &Relation, rng: &mut R) -> Option<(Relation, Mutation)> {
    let mut out = rel.clone();
    out.certificate = Certificate::default();
    if rng.gen_bool(0.5) {
        match &rel.lhs {
            Expr::Sum(terms) if terms.len() > 1 => {
                let k = rng.gen_range(0..terms.len());
                let mut terms = terms.clone();
                terms[k] = Expr::neg(terms[k].clone());
                out.lhs = Expr::Sum(terms);
            }
            _ => out.rhs = Expr::neg(rel.rhs.clone()),
        }
        return Some((out, Mutation::FlipSign));
    }
    let lhs_leaves = rel.lhs.minors().len();
    let total = lhs_leaves + rel.rhs.minors().len();
    if total == 0 {
        return None;
    }
    for _ in 0..32 {
        let leaf = rng.gen_range(0..total);
        let m = if leaf < lhs_leaves {
            rel.lhs.minors()[leaf].clone()
        } else {
            rel.rhs.minors()[leaf - lhs_leaves].clone()
        };
        let slots = m.even_slots.len() + m.odd_slots.len();
        let slot = rng.gen_range(0..slots);
        let col = if slot < m.even_slots.len() {
            m.even_slots[slot]
        } else {
            m.odd_slots[slot - m.even_slots.len()]
        };
        let bound = if col.is_odd() { rel.shape.q } else { rel.shape.p };
        if bound < 2 {
            continue;
        }
        let mut to = rng.gen_range(1..bound);
        if to >= col.index() {
            to += 1;
        }
        let new_col = if col.is_odd() { Column::Odd(to) } else { Column::Even(to) };
        let mut mutated = m.clone();
        if slot < m.even_slots.len() {
            mutated.even_slots[slot] = new_col;
        } else {
            mutated.odd_slots[slot - m.even_slots.len()] = new_col;
        }
        if !evaluable(&mutated) {
            continue;
        }
        let apply = |e: &Expr, offset: usize| {
            e.map_minors(&mut |k, sym| if k + offset == leaf { mutated.clone() } else { sym.clone() })
        };
        out.lhs = apply(&rel.lhs, 0);
        out.rhs = apply(&rel.rhs, lhs_leaves);
        return Some((out, Mutation::ChangeIndex { leaf, slot, from: col.index(), to }));
    }
    None
}

/// False when the block inverted by Ber (odd slots) or Ber* (even slots)
/// repeats a column.
fn evaluable(m: &MinorSymbol) -> bool {
    let inverted = if m.starred { &m.even_slots } else { &m.odd_slots };
    let set: BTreeSet<_> = inverted.iter().collect();
    set.len() == inverted.len()
}

#[derive(Clone, Debug, Default)]
pub struct MutationReport {
    /// Relations skipped because their left side vanishes identically.
    pub vacuous: usize,
    pub mutants: usize,
    pub falsified: usize,
    /// Mutants that numeric checks did not falsify and that are still
    /// symbolic identities.
    pub equivalent: usize,
    /// Mutants that are false but were not falsified, as relation text.
    pub survivors: Vec<String>,
}

impl MutationReport {
    /// Falsified fraction of the mutants that are not identities.
    pub fn rate(&self) -> f64 {
        let live = self.mutants - self.equivalent;
        if live == 0 {
            1.0
        } else {
            self.falsified as f64 / live as f64
        }
    }

    /// Falsified fraction of all mutants.
    pub fn raw_rate(&self) -> f64 {
        if self.mutants == 0 {
            1.0
        } else {
            self.falsified as f64 / self.mutants as f64
        }
    }
}

/// Mutates each relation that is not vacuous `per_relation` times and
/// checks each mutant numerically on `trials` seeded points. Mutants that
/// fail to evaluate at the first point are redrawn.
/// Mutants that survive are re-checked symbolically to separate
/// equivalent mutants from misses.
pub fn mutation_soundness(
    relations: &[Relation],
    per_relation: usize,
    trials: usize,
    seed: u64,
) -> Result<MutationReport> {
    let mut by_shape: Vec<(Shape, Vec<&Relation>)> = Vec::new();
    for rel in relations {
        match by_shape.iter_mut().find(|(s, _)| *s == rel.shape) {
            Some((_, v)) => v.push(rel),
            None => by_shape.push((rel.shape, vec![rel])),
        }
    }
    let cap = budget::configured_cap();
    let mut report = MutationReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (shape, rels) in by_shape {
        let generic = shape.generic()?;
        let points = NumericPoint::seeded(&generic, trials, seed ^ 0x9e37_79b9)?;
        let mut mutants = Vec::new();
        for rel in rels {
            if vacuous(rel, &generic)? {
                report.vacuous += 1;
                continue;
            }
            for _ in 0..per_relation {
                // Only mutants that evaluate (no singular inverted block)
                // are kept.
                for _ in 0..8 {
                    let Some((m, _)) = mutate(rel, &mut rng) else { break };
                    let defined = points.first().is_none_or(|pt| {
                        m.lhs.evaluate(pt).is_ok() && m.rhs.evaluate(pt).is_ok()
                    });
                    if defined {
                        mutants.push(m);
                        break;
                    }
                }
            }
        }
        let results: Vec<(bool, bool, String)> = mutants
            .par_iter()
            .map(|m| {
                let cert = numeric_certificate(m, &points, seed);
                let falsified = cert.verified == Some(false);
                if falsified {
                    return (true, false, String::new());
                }
                let symbolic = symbolic_certificate(m, &generic, cap);
                let mut text = m.to_text();
                if let Some(e) = cert.error.or(symbolic.error) {
                    text.push_str(&format!(" ({e})"));
                }
                (false, symbolic.verified == Some(true), text)
            })
            .collect();
        for (falsified, equivalent, text) in results {
            report.mutants += 1;
            if falsified {
                report.falsified += 1;
            } else if equivalent {
                report.equivalent += 1;
            } else {
                report.survivors.push(text);
            }
        }
    }
    Ok(report)
}

/// True when every summand of the left side and the right side vanish,
/// so a sign change cannot be observed.
fn vacuous(rel: &Relation, generic: &GenericMatrix) -> Result<bool> {
    let point = SymbolicPoint { generic };
    let parts: Vec<&Expr> = match &rel.lhs {
        Expr::Sum(terms) => terms.iter().collect(),
        other => vec![other],
    };
    for part in parts.into_iter().chain(std::iter::once(&rel.rhs)) {
        if !part.evaluate(&point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of a Jacobi identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiOutcome {
    /// The exponent of `−1`.
    pub t: usize,
    pub holds: bool,
    /// False when both sides vanish, so the sign is not tested.
    pub lhs_nonzero: bool,
}

/// `det A · det (A⁻¹)^ṽ_ũ = (−1)^{r(n+1)} det A^u_v` for `u` the last `r`
/// rows and `v` the first `r` columns.
pub fn jacobi_check<T: SuperAlgebra>(a: &Grid<T>, ctx: &T::Ctx, r: usize) -> Result<JacobiOutcome> {
    let n = a.rows;
    if a.cols != n || r > n {
        return Err(Error::Dimension(format!("need a square matrix and r <= n, got r = {r}")));
    }
    let det = a.det(ctx)?;
    if !det.has_unit_body() {
        return Err(Error::NotInvertible("singular matrix".into()));
    }
    let inv = a.inverse_even(ctx)?;
    let kept_inverse = Grid::from_fn(r, r, |i, j| inv.at(i, n - r + j).clone());
    let complement = Grid::from_fn(n - r, n - r, |i, j| a.at(i, r + j).clone());
    let t = r * (n + 1);
    let lhs = det.times(&kept_inverse.det(ctx)?);
    let mut rhs = complement.det(ctx)?;
    if t % 2 == 1 {
        rhs = rhs.negated();
    }
    Ok(JacobiOutcome { t, holds: lhs.same_as(&rhs), lhs_nonzero: !lhs.is_zero() })
}

/// `Ber A · Ber (A⁻¹)^ṽ_ũ = (−1)^t Ber A^u_v` with `t = r(p+1) + s(q+1)`,
/// `u` the last `r` even and last `s` odd rows, `v` the first `r` even and
/// first `s` odd columns.
pub fn super_jacobi_check<T: SuperAlgebra>(a: &SuperMatrix<T>, r: usize, s: usize) -> Result<JacobiOutcome> {
    let sig = a.row_signature();
    if a.col_signature() != sig {
        return Err(Error::Dimension("super Jacobi needs a square supermatrix".into()));
    }
    let (p, q) = (sig.even, sig.odd);
    if r > p || s > q {
        return Err(Error::Dimension(format!("need r <= p and s <= q, got {r}|{s} in {p}|{q}")));
    }
    let ber = a.berezinian()?;
    let inv = a.inverse()?;
    let rows: Vec<usize> = (0..r).chain((0..s).map(|k| p + k)).collect();
    let cols: Vec<usize> = (p - r..p).chain((q - s..q).map(|k| p + k)).collect();
    let kept_inverse = inv.select(&rows, &cols)?;
    let sel = crate::supermatrix::IndexSelection {
        removed_even_rows: (p - r..p).collect(),
        removed_odd_rows: (q - s..q).collect(),
        removed_even_cols: (0..r).collect(),
        removed_odd_cols: (0..s).collect(),
    };
    let complement = a.submatrix_delete(&sel)?;
    let t = r * (p + 1) + s * (q + 1);
    let lhs = ber.times(&kept_inverse.berezinian()?);
    let mut rhs = complement.berezinian()?;
    if t % 2 == 1 {
        rhs = rhs.negated();
    }
    Ok(JacobiOutcome { t, holds: lhs.same_as(&rhs), lhs_nonzero: !lhs.is_zero() })
}

/// The generic invertible `p|q × p|q` coordinate matrix.
pub fn generic_square(p: usize, q: usize) -> Result<GenericMatrix> {
    GenericMatrix::new(p, q, p, q)
}

/// A generic invertible `p|q × p|q` matrix written as `M₊ M₀ M₋` in free
/// block coordinates `X` (odd), `V`, `W` (even), `Z` (odd). The map from
/// these coordinates to the matrix entries is birational, so an identity
/// of rational functions holds on this matrix exactly when it holds on
/// the matrix of independent coordinates.
pub fn factored_generic_square(p: usize, q: usize) -> Result<(Ring, SuperMatrix<Scalar>)> {
    let mut even = Vec::new();
    for i in 1..=p {
        for j in 1..=p {
            even.push(format!("v[{i},{j}]"));
        }
    }
    for k in 1..=q {
        for l in 1..=q {
            even.push(format!("w[{k},{l}]"));
        }
    }
    let mut odd = Vec::new();
    for i in 1..=p {
        for k in 1..=q {
            odd.push(format!("xi[{i},{k}]"));
        }
    }
    for k in 1..=q {
        for j in 1..=p {
            odd.push(format!("ze[{k},{j}]"));
        }
    }
    let det_of = |offset: usize, n: usize| -> crate::poly::Poly {
        let cells: Vec<_> = (0..n * n).map(|k| crate::poly::Poly::var(offset + k)).collect();
        leibniz(&cells, n)
    };
    let factors = vec![det_of(0, p), det_of(p * p, q)];
    let ring = crate::superscalar::RingContext::declare_with_factors(&even, &odd, factors)?;
    let udl = crate::supermatrix::Udl {
        x: Grid::from_fn(p, q, |i, k| Scalar::odd_var(&ring, i * q + k)),
        v: Grid::from_fn(p, p, |i, j| Scalar::even_var(&ring, i * p + j)),
        w: Grid::from_fn(q, q, |k, l| Scalar::even_var(&ring, p * p + k * q + l)),
        z: Grid::from_fn(q, p, |k, j| Scalar::odd_var(&ring, p * q + k * p + j)),
    };
    let (plus, middle, minus) = udl.factors(&ring);
    let m = plus.multiply(&middle)?.multiply(&minus)?;
    Ok((ring, m))
}

fn leibniz(cells: &[crate::poly::Poly], n: usize) -> crate::poly::Poly {
    if n == 0 {
        return crate::poly::Poly::one();
    }
    let mut acc = crate::poly::Poly::zero();
    for c in 0..n {
        let minor: Vec<_> = (1..n)
            .flat_map(|i| (0..n).filter(move |&j| j != c).map(move |j| (i, j)))
            .map(|(i, j)| cells[i * n + j].clone())
            .collect();
        let term = cells[c].mul(&leibniz(&minor, n - 1));
        acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}
