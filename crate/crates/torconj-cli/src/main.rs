//! Command-line front end: parses matrices, polynomials, and certificates
//! in the line-oriented wire format, runs the exact decision procedures, and
//! emits deterministic transcripts in a human-readable or machine-readable
//! layout.
//!
//! Exit codes: 0 for a verified definitive result, 1 when a certificate or
//! witness fails verification, 2 for unreadable or domain-invalid input, 3
//! when the only obtainable result leaves the question open (a two-block
//! certificate with plain conjugacy undetermined at the search bound).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Signed};

use torconj::block::{construct_two_block, decide, BlockCertificate, Verdict};
use torconj::field::FieldElem;
use torconj::fixtures::{
    classical_cubic_ctx, classical_quartic_ctx, cubic_triple, mirror_pair, pell_pair,
};
use torconj::ideal::{dtz_fixture, FracIdeal};
use torconj::lmt::{matrix_to_ideal, Automorphism};
use torconj::wire;

const EXIT_OK: u8 = 0;
const EXIT_VERIFICATION_FAILED: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "torconj",
    version,
    about = "Exact conjugacy and block-conjugacy decisions for integer toral automorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Bound on the search for a conjugacy witness (number of coefficient
    /// shells examined).
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
    bound: u32,
    /// Seed for the randomized partition-of-unity search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output layout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Trust the caller that characteristic polynomials are irreducible
    /// instead of verifying it.
    #[arg(long, global = true)]
    assume_irreducible: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable summary.
    Text,
    /// Strict line-oriented machine document.
    Structured,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the characteristic polynomial, the associated ideal, its
    /// coefficient ring, and invertibility for one matrix.
    Analyze {
        /// Matrix file in wire format: a "rows cols" header line, then one
        /// line of integers per row.
        matrix: PathBuf,
    },
    /// Decide conjugate / two-block conjugate / not block conjugate for two
    /// matrices with the same irreducible characteristic polynomial.
    Decide {
        /// First matrix file.
        a: PathBuf,
        /// Second matrix file.
        b: PathBuf,
    },
    /// Construct the pair of two-block certificates for a weakly equivalent
    /// pair and emit them.
    Certify {
        /// First matrix file.
        a: PathBuf,
        /// Second matrix file.
        b: PathBuf,
    },
    /// Re-check a certificate file by direct re-multiplication; shares no
    /// code with the construction commands.
    Verify {
        /// Certificate file in wire format.
        certificate: PathBuf,
    },
    /// Print the example corpus in wire format.
    Fixtures,
}

/// Finished command output: the transcript and the process exit status.
struct Report {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(report.code)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}

fn run(cli: &Cli) -> Result<Report, String> {
    match &cli.command {
        Cmd::Analyze { matrix } => cmd_analyze(cli, matrix),
        Cmd::Decide { a, b } => cmd_decide(cli, a, b),
        Cmd::Certify { a, b } => cmd_certify(cli, a, b),
        Cmd::Verify { certificate } => cmd_verify(cli, certificate),
        Cmd::Fixtures => cmd_fixtures(),
    }
}

fn read_input(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
}

/// Attaches the failing stage to a library error so transcripts say where a
/// bad input was rejected.
fn stage<T>(what: &str, result: torconj::error::Result<T>) -> Result<T, String> {
    result.map_err(|e| format!("{what}: {e}"))
}

fn load_automorphism(cli: &Cli, path: &Path) -> Result<Automorphism, String> {
    let text = read_input(path)?;
    stage(
        &format!("matrix input {}", path.display()),
        wire::parse_automorphism(&text, cli.assume_irreducible),
    )
}

/// Field-element coordinates in the power basis, space-separated, each
/// coordinate an integer or a fraction.
fn emit_elem(e: &FieldElem) -> String {
    let parts: Vec<String> = e.coords().iter().map(|c| c.to_string()).collect();
    parts.join(" ")
}

fn push_ideal(out: &mut String, label: &str, ideal: &FracIdeal) {
    let _ = writeln!(out, "{label}-den {}", ideal.den());
    let _ = writeln!(out, "{label}");
    out.push_str(&wire::emit_matrix(ideal.basis()));
}

fn cmd_analyze(cli: &Cli, path: &Path) -> Result<Report, String> {
    let auto = load_automorphism(cli, path)?;
    let eigen = matrix_to_ideal(&auto);
    let ideal = eigen.ideal();
    let ring = stage("coefficient ring computation", ideal.coefficient_ring())?;
    let invertible = ideal.is_invertible();
    let mut out = String::new();
    match cli.format {
        Format::Text => {
            let _ = writeln!(out, "matrix: {0}x{0}", auto.dim());
            let _ = write!(
                out,
                "characteristic polynomial: {}",
                wire::emit_poly(auto.ctx().poly())
            );
            let _ = writeln!(out, "ideal denominator: {}", ideal.den());
            let _ = writeln!(out, "ideal basis:");
            out.push_str(&wire::emit_matrix(ideal.basis()));
            let _ = writeln!(out, "coefficient ring denominator: {}", ring.as_ideal().den());
            let _ = writeln!(out, "coefficient ring basis:");
            out.push_str(&wire::emit_matrix(ring.as_ideal().basis()));
            let _ = writeln!(out, "invertible over the coefficient ring: {invertible}");
        }
        Format::Structured => {
            out.push_str("torconj-output v1\ncommand analyze\ncharpoly\n");
            out.push_str(&wire::emit_poly(auto.ctx().poly()));
            push_ideal(&mut out, "ideal", ideal);
            push_ideal(&mut out, "ring", ring.as_ideal());
            let _ = writeln!(out, "invertible {invertible}");
            out.push_str("end\n");
        }
    }
    Ok(Report { text: out, code: EXIT_OK })
}

/// Re-checks a conjugacy witness directly: unimodular and intertwining.
fn witness_holds(witness: &torconj::linalg::IntMat, a: &Automorphism, b: &Automorphism) -> bool {
    witness.det().abs() == BigInt::one()
        && witness.mul(a.mat()) == b.mat().mul(witness)
}

fn push_certificate(out: &mut String, cert: &BlockCertificate, verified: bool, format: Format) {
    out.push_str(&wire::emit_certificate(cert));
    match format {
        Format::Text => {
            let _ = writeln!(out, "certificate verified: {verified}");
        }
        Format::Structured => {
            let _ = writeln!(out, "verified {verified}");
        }
    }
}

fn cmd_decide(cli: &Cli, pa: &Path, pb: &Path) -> Result<Report, String> {
    let a = load_automorphism(cli, pa)?;
    let b = load_automorphism(cli, pb)?;
    let tri = stage("decision", decide(&a, &b, cli.bound, cli.seed))?;
    let mut out = String::new();
    let structured = cli.format == Format::Structured;
    if structured {
        let _ = writeln!(
            out,
            "torconj-output v1\ncommand decide\nbound {}\nseed {}",
            tri.bound_used, cli.seed
        );
    }
    let code = match tri.verdict {
        Verdict::Conjugate { witness, scalar } => {
            let ok = witness_holds(&witness, &a, &b);
            if structured {
                let _ = writeln!(out, "verdict conjugate\nwitness");
                out.push_str(&wire::emit_matrix(&witness));
                let _ = writeln!(out, "scalar {}", emit_elem(&scalar));
                let _ = writeln!(out, "verified {ok}");
            } else {
                let _ = writeln!(out, "CONJUGATE (witness verified at bound {})", tri.bound_used);
                let _ = writeln!(out, "witness:");
                out.push_str(&wire::emit_matrix(&witness));
                let _ = writeln!(out, "scalar: {}", emit_elem(&scalar));
                let _ = writeln!(out, "witness verified: {ok}");
            }
            if ok {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            }
        }
        Verdict::TwoBlockOnly { certs, .. } => {
            let ok1 = stage("certificate verification", certs.0.verify())?;
            let ok2 = stage("certificate verification", certs.1.verify())?;
            if structured {
                let _ = writeln!(out, "verdict two-block-only\nconjugacy-undetermined true");
            } else {
                let _ = writeln!(
                    out,
                    "TWO-BLOCK CONJUGATE (conjugacy undetermined at bound {})",
                    tri.bound_used
                );
            }
            push_certificate(&mut out, &certs.0, ok1, cli.format);
            push_certificate(&mut out, &certs.1, ok2, cli.format);
            if ok1 && ok2 {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_VERIFICATION_FAILED
            }
        }
        Verdict::NotBlockConjugate => {
            let ia = matrix_to_ideal(&a);
            let ib = matrix_to_ideal(&b);
            let inv_a = ia.ideal().is_invertible();
            let inv_b = ib.ideal().is_invertible();
            let weak = stage(
                "weak equivalence check",
                ia.ideal().is_weakly_equivalent(ib.ideal()),
            )?;
            if structured {
                let _ = writeln!(out, "verdict not-block-conjugate");
                let _ = writeln!(out, "first-ideal-invertible {inv_a}");
                let _ = writeln!(out, "second-ideal-invertible {inv_b}");
                let _ = writeln!(out, "weakly-equivalent {weak}");
            } else {
                let _ = writeln!(out, "NOT BLOCK CONJUGATE");
                let _ = writeln!(out, "first ideal invertible: {inv_a}");
                let _ = writeln!(out, "second ideal invertible: {inv_b}");
                let _ = writeln!(out, "weakly equivalent: {weak}");
            }
            EXIT_OK
        }
    };
    if structured {
        out.push_str("end\n");
    }
    Ok(Report { text: out, code })
}

fn cmd_certify(cli: &Cli, pa: &Path, pb: &Path) -> Result<Report, String> {
    let a = load_automorphism(cli, pa)?;
    let b = load_automorphism(cli, pb)?;
    let (c1, c2) = stage("certificate construction", construct_two_block(&a, &b, cli.seed))?;
    let ok1 = stage("certificate verification", c1.verify())?;
    let ok2 = stage("certificate verification", c2.verify())?;
    let mut out = String::new();
    let structured = cli.format == Format::Structured;
    if structured {
        let _ = writeln!(
            out,
            "torconj-output v1\ncommand certify\nbound {}\nseed {}",
            cli.bound, cli.seed
        );
        push_certificate(&mut out, &c1, ok1, cli.format);
        push_certificate(&mut out, &c2, ok2, cli.format);
        out.push_str("end\n");
    } else {
        // Text output is the pure wire form so it can be piped straight back
        // into `verify`; the exit code carries the verification result.
        out.push_str(&wire::emit_certificate(&c1));
        out.push_str(&wire::emit_certificate(&c2));
    }
    let code = if ok1 && ok2 { EXIT_OK } else { EXIT_VERIFICATION_FAILED };
    Ok(Report { text: out, code })
}

fn cmd_verify(cli: &Cli, path: &Path) -> Result<Report, String> {
    let text = read_input(path)?;
    let certs = stage(
        &format!("certificate input {}", path.display()),
        wire::parse_certificates(&text, cli.assume_irreducible),
    )?;
    let mut results = Vec::with_capacity(certs.len());
    for cert in &certs {
        let ok = stage("certificate verification", cert.verify())?;
        results.push((ok, cert.m().det()));
    }
    let all_ok = results.iter().all(|(ok, _)| *ok);
    let mut out = String::new();
    match cli.format {
        Format::Text => {
            for (index, (ok, det)) in results.iter().enumerate() {
                if results.len() > 1 {
                    let _ = write!(out, "certificate {}: ", index + 1);
                }
                if *ok {
                    let _ = writeln!(out, "VERIFIED (determinant {det})");
                } else {
                    let _ = writeln!(out, "VERIFICATION FAILED");
                }
            }
        }
        Format::Structured => {
            let _ = writeln!(out, "torconj-output v1\ncommand verify");
            let _ = writeln!(out, "certificate-count {}", results.len());
            for (ok, det) in &results {
                let _ = writeln!(out, "determinant {det}");
                let _ = writeln!(out, "verified {ok}");
            }
            out.push_str("end\n");
        }
    }
    let code = if all_ok { EXIT_OK } else { EXIT_VERIFICATION_FAILED };
    Ok(Report { text: out, code })
}

fn cmd_fixtures() -> Result<Report, String> {
    let pell = stage("fixture construction", pell_pair())?;
    let mirror = stage("fixture construction", mirror_pair())?;
    let cubic = stage("fixture construction", cubic_triple())?;
    let mut out = String::from("torconj-output v1\ncommand fixtures\n");

    out.push_str("fixture pell-pair\na\n");
    out.push_str(&wire::emit_matrix(pell.a.mat()));
    out.push_str("b\n");
    out.push_str(&wire::emit_matrix(pell.b.mat()));
    out.push_str("conjugator-to-a-blocks\n");
    out.push_str(&wire::emit_matrix(&pell.m));
    out.push_str("a-tail\n");
    out.push_str(&wire::emit_matrix(pell.a_tail.mat()));
    out.push_str("conjugator-to-b-blocks\n");
    out.push_str(&wire::emit_matrix(&pell.n));
    out.push_str("b-tail\n");
    out.push_str(&wire::emit_matrix(pell.b_tail.mat()));
    let _ = writeln!(out, "partition-a1 {}", emit_elem(&pell.gens.a1));
    let _ = writeln!(out, "partition-a2 {}", emit_elem(&pell.gens.a2));
    let _ = writeln!(out, "partition-b1 {}", emit_elem(&pell.gens.b1));
    let _ = writeln!(out, "partition-b2 {}", emit_elem(&pell.gens.b2));

    out.push_str("fixture mirror-pair\nb\n");
    out.push_str(&wire::emit_matrix(mirror.b.mat()));
    out.push_str("b-inverse\n");
    out.push_str(&wire::emit_matrix(mirror.b_inverse.mat()));
    out.push_str("xi\n");
    out.push_str(&wire::emit_matrix(&mirror.xi));

    out.push_str("fixture cubic-triple\na\n");
    out.push_str(&wire::emit_matrix(cubic.a.mat()));
    out.push_str("b\n");
    out.push_str(&wire::emit_matrix(cubic.b.mat()));
    out.push_str("embed\n");
    out.push_str(&wire::emit_matrix(&cubic.embed));
    push_ideal(&mut out, "ideal", &cubic.ideal);
    push_ideal(&mut out, "ring", &cubic.ring);

    for (name, ctx_result) in [
        ("classical-cubic", classical_cubic_ctx()),
        ("classical-quartic", classical_quartic_ctx()),
    ] {
        let ctx = stage("fixture construction", ctx_result)?;
        let fx = stage("fixture construction", dtz_fixture(&ctx))?;
        let _ = writeln!(out, "fixture {name}\npoly");
        out.push_str(&wire::emit_poly(ctx.poly()));
        push_ideal(&mut out, "ideal", &fx.ideal);
        push_ideal(&mut out, "ring", fx.coeff_order.as_ideal());
    }
    out.push_str("end\n");
    Ok(Report { text: out, code: EXIT_OK })
}
