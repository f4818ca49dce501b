use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use superinv::acceptance;
use superinv::budget::{configured_cap, with_budget};
use superinv::error::Error;
use superinv::minors::GenericMatrix;
use superinv::relations::{
    classical_plucker_relations, factored_generic_square, jacobi_check, relations_json, sl11_plucker_relations,
    slrs_plucker_relations, super_jacobi_check, verify_all, GspOptions, Mode, Relation, Shape,
};
use superinv::sft11::{
    independence_check_in, normal_form_membership, standard_products, InvariantPolynomial, MonomialOrder,
};
use superinv::superscalar::Scalar;
use superinv::system::parse_system;

#[derive(Parser)]
#[command(name = "superinv", version, about = "Exact super linear algebra and super Plucker relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Berezinian of a supermatrix read from a file.
    Ber {
        #[arg(long)]
        file: PathBuf,
        /// Compute Ber* instead.
        #[arg(long)]
        star: bool,
    },
    /// Solve a linear system read from a file by super Cramer's rule.
    Cramer {
        #[arg(long)]
        file: PathBuf,
    },
    /// Check the (super) Jacobi identity on a generic invertible matrix.
    Jacobi {
        #[arg(long, value_enum, default_value = "super")]
        mode: JacobiMode,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        q: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
    },
    /// Generate and verify Plucker relations.
    Plucker {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        q: usize,
        #[arg(long, value_enum, default_value = "symbolic")]
        mode: VerifyMode,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Use the exponent -r-s+1 on X* in gsp4 instead of r+s-1.
        #[arg(long)]
        printed_gsp4_exponent: bool,
    },
    /// Decompose the generic matrix as A = A~ B and check the entries of B.
    Fft {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Invariant theory of SL(1|1).
    Sft11 {
        #[command(subcommand)]
        action: Sft11Action,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Criteria to run; all by default.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Subcommand)]
enum Sft11Action {
    /// Rewrite a polynomial in standard products and decide ideal membership.
    NormalForm {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Check that standard products of bounded degree have distinct leading terms.
    Independence {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, value_enum, default_value = "inverse-first")]
        order: Order,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum JacobiMode {
    Classical,
    Super,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Classical,
    Sl11,
    Slrs,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Printed,
    InverseFirst,
}

enum Status {
    Verified,
    Falsified,
    Failed,
    Capped,
}

impl Status {
    fn code(self) -> ExitCode {
        ExitCode::from(match self {
            Status::Verified => 0,
            Status::Falsified => 1,
            Status::Failed => 2,
            Status::Capped => 3,
        })
    }
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Verified
    } else {
        Status::Falsified
    }
}

fn exit_code(e: &Error) -> ExitCode {
    match e {
        Error::ResourceCap(_) | Error::FuelExhausted(_) => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn capped<T>(f: impl FnOnce() -> Result<T, Error>) -> Result<T, Error> {
    with_budget(configured_cap(), f)?
}

fn run(command: Command) -> Result<Status, Error> {
    match command {
        Command::Ber { file, star } => {
            let sys = parse_system(&read(&file)?)?;
            let value = capped(|| if star { sys.matrix.berezinian_star() } else { sys.matrix.berezinian() })?;
            println!("{}", value.to_text());
            Ok(Status::Verified)
        }
        Command::Cramer { file } => {
            let sys = parse_system(&read(&file)?)?;
            let rhs = sys.rhs.clone().ok_or_else(|| Error::Invalid("the file has no `rhs` line".into()))?;
            let solution = capped(|| sys.matrix.super_cramer_solve(&rhs))?;
            let back = sys.matrix.apply(&solution)?;
            for (k, v) in solution.iter().enumerate() {
                println!("u{} = {}", k + 1, v.to_text());
            }
            let ok = back.iter().zip(&rhs).all(|(a, b)| a.equals(b));
            println!("substitution check: {}", if ok { "verified" } else { "falsified" });
            Ok(verdict(ok))
        }
        Command::Jacobi { mode, p, q, r, s } => {
            let outcome = capped(|| match mode {
                JacobiMode::Classical => {
                    let (ring, m) = factored_generic_square(p, 0)?;
                    let (a, _, _, _) = m.blocks();
                    jacobi_check::<Scalar>(&a, &ring, r)
                }
                JacobiMode::Super => {
                    let (_, m) = factored_generic_square(p, q)?;
                    super_jacobi_check(&m, r, s)
                }
            })?;
            println!("t = {}", outcome.t);
            println!("{}", if outcome.holds { "verified" } else { "falsified" });
            Ok(verdict(outcome.holds))
        }
        Command::Plucker { group, r, s, p, q, mode, trials, seed, emit, output, printed_gsp4_exponent } => {
            let mut rels = match group {
                Group::Classical => classical_plucker_relations(r, p)?,
                Group::Sl11 => sl11_plucker_relations(p, q)?,
                Group::Slrs => {
                    let options = GspOptions { printed_gsp4_exponent, ..GspOptions::default() };
                    slrs_plucker_relations(Shape::new(r, s, p, q), &options)?
                }
            };
            let mode = match mode {
                VerifyMode::Symbolic => Mode::Symbolic,
                VerifyMode::Numeric => Mode::Numeric,
            };
            verify_all(&mut rels, mode, trials, seed)?;
            let body = render(&rels, emit);
            match output {
                Some(path) => fs::write(&path, body).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?,
                None => print!("{body}"),
            }
            Ok(summarize(&rels))
        }
        Command::Fft { r, s, p, q } => {
            let generic = GenericMatrix::new(r, s, p, q)?;
            let (dec, report) = capped(|| {
                let dec = generic.fft_decompose()?;
                let report = generic.verify_fft_entries(&dec)?;
                Ok((dec, report))
            })?;
            let reassembled = dec.a_tilde.multiply(&dec.b)?.same_as(generic.matrix());
            let ber_one = dec.a_tilde.berezinian()?.is_one();
            for e in &report.entries {
                println!("B[{},{}] = {}: {}", e.row + 1, e.col + 1, e.formula, if e.matches { "ok" } else { "MISMATCH" });
            }
            println!("A = A~ B: {reassembled}");
            println!("Ber A~ = 1: {ber_one}");
            Ok(verdict(reassembled && ber_one && report.consistent()))
        }
        Command::Sft11 { action } => sft11(action),
        Command::Selftest { only } => {
            let ids = if only.is_empty() { acceptance::CRITERIA.to_vec() } else { only };
            let mut ok = true;
            for id in ids {
                let outcome = acceptance::run(id);
                println!("{}", outcome.line());
                std::io::stdout().flush().ok();
                ok &= outcome.passed;
            }
            Ok(verdict(ok))
        }
    }
}

fn sft11(action: Sft11Action) -> Result<Status, Error> {
    match action {
        Sft11Action::NormalForm { expr, p, q, emit } => {
            let f = InvariantPolynomial::parse(&expr)?;
            let m = normal_form_membership(&f, p, q)?;
            match emit {
                Emit::Text => {
                    println!("in ideal: {}", m.in_ideal);
                    println!("normal form: {}", m.normal_form.to_text());
                }
                Emit::Latex => {
                    println!("in ideal: {}", m.in_ideal);
                    println!("{}", m.normal_form.to_latex());
                }
                Emit::Json => {
                    let terms: Vec<_> = m
                        .standard_terms()
                        .into_iter()
                        .map(|(sp, c)| json!({ "product": sp.to_text(), "coefficient": c.to_string() }))
                        .collect();
                    let doc = json!({
                        "schema": 1,
                        "input": f.to_text(),
                        "p": p,
                        "q": q,
                        "in_ideal": m.in_ideal,
                        "image_zero": m.image_zero,
                        "normal_form": m.normal_form.to_text(),
                        "terms": terms,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
            }
            if m.consistent() {
                Ok(Status::Verified)
            } else {
                eprintln!("normal form and image disagree: image zero = {}", m.image_zero);
                Ok(Status::Falsified)
            }
        }
        Sft11Action::Independence { p, q, degree, order } => {
            let order = match order {
                Order::Printed => MonomialOrder::Printed,
                Order::InverseFirst => MonomialOrder::InverseFirst,
            };
            let products = standard_products(p, q, degree);
            let report = independence_check_in(order, &products, p, q)?;
            println!("{} standard products, {} leading-term collisions", report.count, report.collisions.len());
            for (a, b) in report.collisions.iter().take(10) {
                println!("collision: {a} and {b}");
            }
            Ok(verdict(report.verified()))
        }
    }
}

fn render(rels: &[Relation], emit: Emit) -> String {
    match emit {
        Emit::Json => {
            let mut s = serde_json::to_string_pretty(&relations_json(rels)).expect("serializable");
            s.push('\n');
            s
        }
        Emit::Latex => rels.iter().map(|r| format!("{}\n", r.to_latex())).collect(),
        Emit::Text => rels
            .iter()
            .map(|r| {
                let status = match (&r.certificate.verified, &r.certificate.error) {
                    (Some(true), _) => "verified".to_string(),
                    (Some(false), _) => {
                        format!("FALSIFIED {}", r.certificate.witness.clone().unwrap_or_default())
                    }
                    (None, Some(e)) => format!("unfinished: {e}"),
                    (None, None) => "unchecked".to_string(),
                };
                format!("[{}] {}  {status}\n", r.family.name(), r.to_text())
            })
            .collect(),
    }
}

fn summarize(rels: &[Relation]) -> Status {
    let verified = rels.iter().filter(|r| r.certificate.verified == Some(true)).count();
    let falsified = rels.iter().filter(|r| r.certificate.verified == Some(false)).count();
    let unfinished = rels.len() - verified - falsified;
    let capped = rels
        .iter()
        .filter(|r| r.certificate.error.as_deref().is_some_and(|e| e.starts_with("resource cap")))
        .count();
    eprintln!("{verified} verified, {falsified} falsified, {unfinished} unfinished of {}", rels.len());
    if falsified > 0 {
        Status::Falsified
    } else if capped > 0 {
        Status::Capped
    } else if unfinished > 0 {
        Status::Failed
    } else {
        Status::Verified
    }
}
