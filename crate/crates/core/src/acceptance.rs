//! The acceptance suite: one check per criterion, each reporting a
//! pass/fail line with the evidence behind it.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::SuperAlgebra;
use crate::error::{Error, Result};
use crate::grassmann::{random_nonzero_rational, Grassmann, GrassmannCtx};
use crate::minors::{check_invariance, GenericMatrix};
use crate::relations::{
    classical_plucker_relations, factored_generic_square, mutation_soundness, sl11_plucker_relations,
    slrs_plucker_relations, super_jacobi_check, symbolic_difference, verify_all, GspOptions, Mode, Relation,
    Shape,
};
use crate::sft11::{
    check_membership_corpus, independence_check_in, leading_term_survey, standard_products, MonomialOrder,
};
use crate::superscalar::{generator, RingContext, Scalar};
use crate::supermatrix::{ParitySignature, SuperMatrix};

pub const CRITERIA: [u8; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {}: {} ({:.1}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.seconds
        )
    }
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "classical Plucker 2x4",
        2 => "super Cramer SL(1|1)",
        3 => "super Jacobi identity",
        4 => "SL(1|1) super Plucker corpus",
        5 => "SL(r|s) relations",
        6 => "FFT decomposition",
        7 => "invariance of minors",
        8 => "SFT for SL(1|1)",
        9 => "algebra kernel properties",
        10 => "mutation soundness",
        _ => "unknown criterion",
    }
}

pub fn run(id: u8) -> Outcome {
    let start = Instant::now();
    let result = match id {
        1 => classical_2x4(),
        2 => cramer_1x1(),
        3 => super_jacobi(),
        4 => sl11_corpus(),
        5 => slrs_relations(),
        6 => fft(),
        7 => invariance(),
        8 => sft11(),
        9 => kernel_properties(),
        10 => mutation(),
        _ => Err(Error::OutOfRange(format!("criterion {id}"))),
    };
    let (passed, detail) = match result {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    Outcome { id, title: title(id), passed, detail, seconds: start.elapsed().as_secs_f64() }
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(|&id| run(id)).collect()
}

type Check = Result<(bool, String)>;

fn verified_count(rels: &[Relation]) -> usize {
    rels.iter().filter(|r| r.certificate.verified == Some(true)).count()
}

fn first_failure(rels: &[Relation]) -> String {
    rels.iter()
        .find(|r| r.certificate.verified != Some(true))
        .map(|r| {
            let why = r.certificate.witness.clone().or(r.certificate.error.clone()).unwrap_or_default();
            format!("; first failure {} ({why})", r.to_text())
        })
        .unwrap_or_default()
}

fn classical_2x4() -> Check {
    let rels = classical_plucker_relations(2, 4)?;
    let expected = "X[1,2]*X[3,4] - X[1,3]*X[2,4] + X[1,4]*X[2,3] = 0";
    let generic = GenericMatrix::new(2, 0, 4, 0)?;
    let zero = match rels.as_slice() {
        [rel] => symbolic_difference(rel, &generic, crate::budget::configured_cap())?.is_zero(),
        _ => false,
    };
    let text = rels.iter().map(Relation::to_text).collect::<Vec<_>>().join("; ");
    let passed = rels.len() == 1 && text == expected && zero;
    Ok((passed, format!("{text}; expands to zero: {zero}")))
}

fn cramer_1x1() -> Check {
    let ring = RingContext::declare(&["a", "b", "c"], &["alpha", "beta", "gamma"])?;
    let g = |n: &str| generator(&ring, n);
    let (a, b, c) = (g("a")?, g("b")?, g("c")?);
    let (alpha, beta, gamma) = (g("alpha")?, g("beta")?, g("gamma")?);
    let sig = ParitySignature::new(1, 1);
    let m = SuperMatrix::new(&ring, sig, sig, vec![a.clone(), alpha.clone(), beta.clone(), b.clone()])?;
    let sol = m.super_cramer_solve(&[c.clone(), gamma.clone()])?;
    let binv = b.invert_even_unit()?;
    let ainv = a.invert_even_unit()?;
    let x = c.sub(&alpha.mul(&binv).mul(&gamma)).mul(&a.sub(&alpha.mul(&binv).mul(&beta)).invert_even_unit()?);
    let eta = gamma.sub(&beta.mul(&ainv).mul(&c)).mul(&b.sub(&beta.mul(&ainv).mul(&alpha)).invert_even_unit()?);
    let ok_x = sol[0].equals(&x);
    let ok_eta = sol[1].equals(&eta);
    Ok((ok_x && ok_eta, format!("x matches: {ok_x}; eta matches: {ok_eta}")))
}

fn super_jacobi() -> Check {
    let mut cases = 0;
    let mut failures = Vec::new();
    for p in 1..=3 {
        for q in 1..=3 {
            let (_ring, m) = factored_generic_square(p, q)?;
            for r in 0..p {
                for s in 0..q {
                    cases += 1;
                    let out = super_jacobi_check(&m, r, s)?;
                    if !out.holds {
                        failures.push(format!("(p,q,r,s)=({p},{q},{r},{s})"));
                    }
                }
            }
        }
    }
    Ok((failures.is_empty(), format!("{} of {cases} cases hold{}", cases - failures.len(), join_failures(&failures))))
}

fn join_failures(f: &[String]) -> String {
    if f.is_empty() {
        String::new()
    } else {
        format!("; failing {}", f.join(", "))
    }
}

fn sl11_corpus() -> Check {
    let mut total = 0;
    let mut ok = 0;
    let mut note = String::new();
    for p in 1..=3 {
        for q in 1..=3 {
            let mut rels = sl11_plucker_relations(p, q)?;
            verify_all(&mut rels, Mode::Symbolic, 0, 0)?;
            total += rels.len();
            ok += verified_count(&rels);
            if note.is_empty() {
                note = first_failure(&rels);
            }
        }
    }
    Ok((ok == total, format!("{ok} of {total} instances expand to zero{note}")))
}

fn slrs_relations() -> Check {
    let mut parts = Vec::new();
    let mut passed = true;
    for (r, s, p, q) in [(2, 1, 3, 2), (1, 2, 2, 3), (2, 2, 3, 3)] {
        let mut rels = slrs_plucker_relations(Shape::new(r, s, p, q), &GspOptions::default())?;
        verify_all(&mut rels, Mode::Symbolic, 0, 0)?;
        let ok = verified_count(&rels);
        passed &= ok == rels.len();
        parts.push(format!("{r}|{s}x{p}|{q}: {ok}/{}{}", rels.len(), first_failure(&rels)));
    }
    let mut identical = true;
    for p in 1..=3 {
        for q in 1..=3 {
            let gsp = slrs_plucker_relations(Shape::new(1, 1, p, q), &GspOptions::default())?;
            let sp = sl11_plucker_relations(p, q)?;
            let texts = |v: &[Relation]| {
                let mut t: Vec<String> = v.iter().map(Relation::to_text).collect();
                t.sort();
                t
            };
            identical &= texts(&gsp) == texts(&sp);
        }
    }
    passed &= identical;
    Ok((passed, format!("{}; 1|1 gsp term-identical to sp: {identical}", parts.join(", "))))
}

fn fft() -> Check {
    let mut sizes = 0;
    let mut failures = Vec::new();
    for r in 0..=3 {
        for s in 0..=3 - r {
            if r + s == 0 {
                continue;
            }
            for p in r..=5 {
                for q in s..=5 - p {
                    sizes += 1;
                    let generic = GenericMatrix::new(r, s, p, q)?;
                    let dec = generic.fft_decompose()?;
                    let reassembled = dec.a_tilde.multiply(&dec.b)?.same_as(generic.matrix());
                    let ber_one = dec.a_tilde.berezinian()?.is_one();
                    let entries = generic.verify_fft_entries(&dec)?.consistent();
                    if !(reassembled && ber_one && entries) {
                        failures.push(format!(
                            "{r}|{s}x{p}|{q} (A=AB {reassembled}, Ber 1 {ber_one}, entries {entries})"
                        ));
                    }
                }
            }
        }
    }
    Ok((failures.is_empty(), format!("{} of {sizes} sizes consistent{}", sizes - failures.len(), join_failures(&failures))))
}

fn invariance() -> Check {
    let mut parts = Vec::new();
    let mut passed = true;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (r, s, p, q) in [(1, 1, 2, 2), (2, 1, 3, 2), (1, 2, 2, 3)] {
        let generic = GenericMatrix::new(r, s, p, q)?;
        let report = check_invariance(&generic, 20, &mut rng)?;
        passed &= report.failures.is_empty();
        parts.push(format!(
            "{r}|{s}x{p}|{q}: {} minors x {} trials, {} failures",
            report.symbols,
            report.trials,
            report.failures.len()
        ));
    }
    Ok((passed, parts.join("; ")))
}

fn sft11() -> Check {
    let mut checked = 0;
    let mut in_ideal = 0;
    let mut disagreements = Vec::new();
    let mut products = 0;
    let mut table_collisions = 0;
    let mut printed_collisions = 0;
    let mut table_mismatch = 0;
    for p in 1..=3 {
        for q in 1..=3 {
            let report = check_membership_corpus(p, q, 3)?;
            checked += report.checked;
            in_ideal += report.in_ideal;
            disagreements.extend(report.disagreements);
            let sps = standard_products(p, q, 3);
            products += sps.len();
            table_collisions += independence_check_in(MonomialOrder::InverseFirst, &sps, p, q)?.collisions.len();
            printed_collisions += independence_check_in(MonomialOrder::Printed, &sps, p, q)?.collisions.len();
            table_mismatch += leading_term_survey(MonomialOrder::InverseFirst, &sps, p, q)?.table_mismatches.len();
        }
    }
    let passed = disagreements.is_empty() && table_collisions == 0 && table_mismatch == 0;
    Ok((
        passed,
        format!(
            "membership agrees with pi on {}/{checked} polynomials ({in_ideal} in the ideal); \
             {products} standard products, {table_collisions} leading-term collisions under the order \
             reproducing the tabulated leading terms ({table_mismatch} table mismatches); \
             positive-exponents-first order gives {printed_collisions} collisions",
            checked - disagreements.len()
        ),
    ))
}

/// A random element of parity `odd` with up to two-generator souls.
pub fn random_grassmann<R: Rng>(rng: &mut R, ctx: GrassmannCtx, odd: bool) -> Grassmann {
    let n = ctx.generators;
    let mut g = if odd {
        Grassmann::new(ctx)
    } else {
        Grassmann::rational(ctx, random_nonzero_rational(rng))
    };
    for _ in 0..2 {
        let a = rng.gen_range(0..n);
        let mut term = Grassmann::eta(ctx, a, random_nonzero_rational(rng));
        if !odd {
            let b = rng.gen_range(0..n);
            term = term.times(&Grassmann::eta(ctx, b, random_nonzero_rational(rng)));
        }
        g = g.plus(&term);
    }
    g
}

/// A random even supermatrix with invertible diagonal blocks.
pub fn random_supermatrix<R: Rng>(rng: &mut R, ctx: GrassmannCtx, sig: ParitySignature) -> SuperMatrix<Grassmann> {
    loop {
        let m = SuperMatrix::from_fn(&ctx, sig, sig, |i, j| {
            random_grassmann(rng, ctx, sig.parity(i) != sig.parity(j))
        });
        let (b1, _, _, b4) = m.blocks();
        let units = [b1, b4].iter().all(|b| b.det(&ctx).map(|d| d.has_unit_body()).unwrap_or(false));
        if units && m.udl_decompose().is_ok() {
            return m;
        }
    }
}

fn kernel_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let ctx = GrassmannCtx { generators: 6 };
    let shapes = [(1, 1), (2, 1), (1, 2), (2, 2)];
    let instances = 100;
    let mut fails: BTreeMap<&str, usize> = BTreeMap::new();
    let mut bump = |k: &'static str, ok: bool| {
        *fails.entry(k).or_default() += usize::from(!ok);
    };
    for k in 0..instances {
        let (pa, pb) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
        let a = random_grassmann(&mut rng, ctx, pa);
        let b = random_grassmann(&mut rng, ctx, pb);
        let swapped = b.times(&a);
        bump("supercommutativity", a.times(&b).same_as(&if pa && pb { swapped.negated() } else { swapped }));
        let (r, s) = shapes[k % shapes.len()];
        let sig = ParitySignature::new(r, s);
        let m = random_supermatrix(&mut rng, ctx, sig);
        let n = random_supermatrix(&mut rng, ctx, sig);
        let product = m.multiply(&n)?.berezinian()?;
        bump("Ber multiplicativity", product.same_as(&m.berezinian()?.times(&n.berezinian()?)));
        bump("Ber* = Ber of inverse", m.berezinian_star()?.same_as(&m.inverse()?.berezinian()?));
        let udl = m.udl_decompose()?;
        let (plus, middle, minus) = udl.factors(&ctx);
        bump("UDL reassembly", plus.multiply(&middle)?.multiply(&minus)?.same_as(&m));
    }
    let symbolic = symbolic_supercommutativity()?;
    let passed = symbolic && fails.values().all(|&f| f == 0);
    let mut detail: Vec<String> =
        fails.iter().map(|(k, f)| format!("{k} {}/{instances}", instances - f)).collect();
    detail.push(format!("symbolic supercommutativity: {symbolic}"));
    let detail = detail.join(", ");
    Ok((passed, detail))
}

fn symbolic_supercommutativity() -> Result<bool> {
    let ring = RingContext::declare(&["u", "v"], &["xi", "eta"])?;
    let g = |n: &str| generator(&ring, n);
    let (u, v, xi, eta) = (g("u")?, g("v")?, g("xi")?, g("eta")?);
    let even = u.add(&xi.mul(&eta)).mul(&v.invert_even_unit()?);
    let odd = xi.mul(&u).add(&eta);
    let odd2 = eta.mul(&v).sub(&xi);
    Ok(even.mul(&odd).equals(&odd.mul(&even))
        && odd.mul(&odd2).equals(&odd2.mul(&odd).neg())
        && odd.mul(&odd).is_zero()
        && Scalar::one(&ring).equals(&even.mul(&even.invert_even_unit()?)))
}

fn mutation() -> Check {
    let mut all = classical_plucker_relations(2, 4)?;
    all.extend(classical_plucker_relations(2, 5)?);
    all.extend(classical_plucker_relations(3, 6)?);
    all.extend(sl11_plucker_relations(2, 2)?);
    all.extend(sl11_plucker_relations(3, 3)?);
    all.extend(slrs_plucker_relations(Shape::new(2, 1, 3, 2), &GspOptions::default())?);
    all.extend(slrs_plucker_relations(Shape::new(1, 2, 2, 3), &GspOptions::default())?);
    let mut families: BTreeMap<&str, Vec<Relation>> = BTreeMap::new();
    for rel in all {
        families.entry(rel.family.name()).or_default().push(rel);
    }
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, rels) in families {
        let report = mutation_soundness(&rels, 3, 10, 42)?;
        passed &= report.rate() >= 0.95;
        parts.push(format!(
            "{name} {:.2} ({}/{} falsified, {} equivalent, raw {:.2})",
            report.rate(),
            report.falsified,
            report.mutants,
            report.equivalent,
            report.raw_rate()
        ));
    }
    Ok((passed, parts.join("; ")))
}
