//! Line-oriented wire format for matrices, polynomials, and certificates:
//! trivially parseable in any language, diff-friendly, and byte-identical on
//! round trips after canonicalization.
//!
//! A matrix is a header line `rows cols` followed by one line per row of
//! space-separated integers. A polynomial is a single line
//! `deg c₀ c₁ … c_deg` with the constant coefficient first; only monic
//! polynomials are accepted. A certificate is the keyword `certificate`,
//! the keyword `left` and a matrix, the keyword `right`, a count, and that
//! many matrices, then the keyword `conjugator` and a matrix. Parsing is
//! token-based, so any whitespace separates fields; emitting always uses the
//! canonical newline layout.

use num_bigint::BigInt;
use std::str::SplitWhitespace;

use crate::block::BlockCertificate;
use crate::error::{Error, Result};
use crate::field::MinPoly;
use crate::linalg::IntMat;
use crate::lmt::Automorphism;
use crate::poly::IntPoly;

fn next_token<'a>(tokens: &mut SplitWhitespace<'a>, what: &str) -> Result<&'a str> {
    tokens
        .next()
        .ok_or_else(|| Error::Parse(format!("unexpected end of input, expected {what}")))
}

fn parse_int(tok: &str) -> Result<BigInt> {
    tok.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("expected an integer, got {tok:?}")))
}

fn parse_count(tok: &str, what: &str) -> Result<usize> {
    let value: usize = tok
        .parse()
        .map_err(|_| Error::Parse(format!("expected a positive {what}, got {tok:?}")))?;
    if value == 0 {
        return Err(Error::Parse(format!("{what} must be positive, got 0")));
    }
    Ok(value)
}

fn expect_keyword(tokens: &mut SplitWhitespace<'_>, keyword: &str) -> Result<()> {
    let tok = next_token(tokens, &format!("keyword {keyword:?}"))?;
    if tok != keyword {
        return Err(Error::Parse(format!("expected keyword {keyword:?}, got {tok:?}")));
    }
    Ok(())
}

fn finish(mut tokens: SplitWhitespace<'_>) -> Result<()> {
    if let Some(extra) = tokens.next() {
        return Err(Error::Parse(format!("unexpected trailing token {extra:?}")));
    }
    Ok(())
}

fn matrix_from_tokens(tokens: &mut SplitWhitespace<'_>) -> Result<IntMat> {
    let rows = parse_count(next_token(tokens, "a row count")?, "row count")?;
    let cols = parse_count(next_token(tokens, "a column count")?, "column count")?;
    let mut data = Vec::with_capacity(rows);
    for _ in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for _ in 0..cols {
            row.push(parse_int(next_token(tokens, "a matrix entry")?)?);
        }
        data.push(row);
    }
    Ok(IntMat::from_rows(data, cols))
}

/// Parses a matrix in the wire format.
pub fn parse_matrix(text: &str) -> Result<IntMat> {
    let mut tokens = text.split_whitespace();
    let mat = matrix_from_tokens(&mut tokens)?;
    finish(tokens)?;
    Ok(mat)
}

/// Emits a matrix in the canonical wire layout (trailing newline included).
pub fn emit_matrix(mat: &IntMat) -> String {
    let mut out = format!("{} {}\n", mat.rows(), mat.cols());
    for r in 0..mat.rows() {
        let row: Vec<String> = (0..mat.cols()).map(|c| mat.get(r, c).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a monic polynomial in the wire format (constant coefficient
/// first).
pub fn parse_poly(text: &str) -> Result<IntPoly> {
    let mut tokens = text.split_whitespace();
    let deg_tok = next_token(&mut tokens, "a degree")?;
    let deg: usize = deg_tok
        .parse()
        .map_err(|_| Error::Parse(format!("expected a degree, got {deg_tok:?}")))?;
    let mut coeffs = Vec::with_capacity(deg + 1);
    for _ in 0..=deg {
        coeffs.push(parse_int(next_token(&mut tokens, "a coefficient")?)?);
    }
    finish(tokens)?;
    let poly = IntPoly::new(coeffs);
    if poly.degree() != deg {
        return Err(Error::Parse(format!(
            "leading coefficient of a degree-{deg} polynomial must not vanish"
        )));
    }
    if !poly.is_monic() {
        return Err(Error::Parse("polynomial must be monic".into()));
    }
    Ok(poly)
}

/// Emits a polynomial in the canonical wire layout (trailing newline
/// included).
pub fn emit_poly(poly: &IntPoly) -> String {
    let mut out = poly.degree().to_string();
    for c in poly.coeffs() {
        out.push(' ');
        out.push_str(&c.to_string());
    }
    out.push('\n');
    out
}

fn certificate_from_tokens(
    tokens: &mut SplitWhitespace<'_>,
    assume_irreducible: bool,
) -> Result<BlockCertificate> {
    expect_keyword(tokens, "certificate")?;
    expect_keyword(tokens, "left")?;
    let left_mat = matrix_from_tokens(tokens)?;
    let left = if assume_irreducible {
        Automorphism::new_assumed(left_mat)?
    } else {
        Automorphism::new(left_mat)?
    };
    expect_keyword(tokens, "right")?;
    let k = parse_count(next_token(tokens, "a block count")?, "block count")?;
    let mut right = Vec::with_capacity(k);
    for _ in 0..k {
        let mat = matrix_from_tokens(tokens)?;
        right.push(Automorphism::with_context(mat, left.ctx().clone())?);
    }
    expect_keyword(tokens, "conjugator")?;
    let m = matrix_from_tokens(tokens)?;
    Ok(BlockCertificate::from_parts_unchecked(m, left, right))
}

/// Parses a single block-conjugacy certificate. The returned certificate is
/// unvalidated — call [`BlockCertificate::verify`] on it; only shape-level
/// facts (squareness, unimodular determinant of the blocks, shared
/// characteristic polynomial, irreducibility unless `assume_irreducible`)
/// are established here, since the blocks must be automorphisms before a
/// certificate can even be stated.
pub fn parse_certificate(text: &str, assume_irreducible: bool) -> Result<BlockCertificate> {
    let mut tokens = text.split_whitespace();
    let cert = certificate_from_tokens(&mut tokens, assume_irreducible)?;
    finish(tokens)?;
    Ok(cert)
}

/// Parses a file of one or more concatenated certificates — the layout the
/// `certify` command emits. Each certificate is as unvalidated as with
/// [`parse_certificate`].
pub fn parse_certificates(text: &str, assume_irreducible: bool) -> Result<Vec<BlockCertificate>> {
    let mut tokens = text.split_whitespace();
    let mut certs = vec![certificate_from_tokens(&mut tokens, assume_irreducible)?];
    while tokens.clone().next().is_some() {
        certs.push(certificate_from_tokens(&mut tokens, assume_irreducible)?);
    }
    Ok(certs)
}

/// Emits a certificate in the canonical wire layout.
pub fn emit_certificate(cert: &BlockCertificate) -> String {
    let mut out = String::from("certificate\nleft\n");
    out.push_str(&emit_matrix(cert.left().mat()));
    out.push_str(&format!("right {}\n", cert.k()));
    for blk in cert.right_blocks() {
        out.push_str(&emit_matrix(blk.mat()));
    }
    out.push_str("conjugator\n");
    out.push_str(&emit_matrix(cert.m()));
    out
}

/// Parses a matrix and attaches a verified context in one step.
pub fn parse_automorphism(text: &str, assume_irreducible: bool) -> Result<Automorphism> {
    let mat = parse_matrix(text)?;
    if assume_irreducible {
        Automorphism::new_assumed(mat)
    } else {
        Automorphism::new(mat)
    }
}

/// Parses a matrix and attaches the given context, verifying the
/// characteristic polynomial against it.
pub fn parse_automorphism_in(text: &str, ctx: &MinPoly) -> Result<Automorphism> {
    let mat = parse_matrix(text)?;
    Automorphism::with_context(mat, ctx.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::pell_pair;

    #[test]
    fn known_matrices_parse_to_their_entries() {
        let a = parse_matrix("2 2\n8 5\n3 2").unwrap();
        assert_eq!(a, IntMat::from_i64(&[&[8, 5], &[3, 2]]));
        let single = parse_matrix("1 1\n1").unwrap();
        assert_eq!(single, IntMat::from_i64(&[&[1]]));
        let b = parse_matrix("2 2\n3 10\n5 17").unwrap();
        assert_eq!(b, IntMat::from_i64(&[&[3, 10], &[5, 17]]));
    }

    #[test]
    fn matrix_round_trip_is_byte_identical() {
        let texts = ["2 2\n8 5\n3 2", "  2   2\n 8 5 \n\n3 2 ", "1 1\n-7"];
        for t in texts {
            let canonical = emit_matrix(&parse_matrix(t).unwrap());
            assert_eq!(emit_matrix(&parse_matrix(&canonical).unwrap()), canonical);
        }
        assert_eq!(emit_matrix(&parse_matrix("2 2 8 5 3 2").unwrap()), "2 2\n8 5\n3 2\n");
    }

    #[test]
    fn malformed_matrices_are_rejected() {
        for bad in [
            "",
            "2",
            "2 2\n1 2\n3",
            "2 2\n1 2\n3 x",
            "0 2\n",
            "-1 1\n5",
            "2 2\n1 2 3 4 5",
            "2 2\n1 2\n3 4.5",
        ] {
            assert!(
                matches!(parse_matrix(bad), Err(Error::Parse(_))),
                "{bad:?} should fail"
            );
        }
    }

    #[test]
    fn polynomials_round_trip_and_enforce_monicity() {
        let f = parse_poly("2 1 -10 1").unwrap();
        assert_eq!(f, IntPoly::from_i64(&[1, -10, 1]));
        assert_eq!(emit_poly(&f), "2 1 -10 1\n");
        assert!(matches!(parse_poly("2 1 -10 2"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly("2 1 -10 0"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly("2 1 -10"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly("2 1 -10 1 4"), Err(Error::Parse(_))));
    }

    #[test]
    fn certificates_round_trip_and_verify_after_parsing() {
        let fx = pell_pair().unwrap();
        let cert = BlockCertificate::from_parts_unchecked(
            fx.m.clone(),
            fx.b.clone(),
            vec![fx.a.clone(), fx.a_tail.clone()],
        );
        let text = emit_certificate(&cert);
        let parsed = parse_certificate(&text, false).unwrap();
        assert!(parsed.verify().unwrap());
        assert_eq!(emit_certificate(&parsed), text);
        // A forged right block still parses (the charpoly matches) but no
        // longer verifies.
        let forged = text.replace("-1 -4", "-4 -1").replace("3 11", "11 3");
        match parse_certificate(&forged, false) {
            Ok(cert) => assert!(!cert.verify().unwrap()),
            Err(Error::CharpolyMismatch) => {}
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn concatenated_certificates_parse_as_a_batch() {
        let fx = pell_pair().unwrap();
        let toward_a = BlockCertificate::from_parts_unchecked(
            fx.m.clone(),
            fx.b.clone(),
            vec![fx.a.clone(), fx.a_tail.clone()],
        );
        let toward_b = BlockCertificate::from_parts_unchecked(
            fx.n.clone(),
            fx.a.clone(),
            vec![fx.b.clone(), fx.b_tail.clone()],
        );
        let text = format!("{}{}", emit_certificate(&toward_a), emit_certificate(&toward_b));
        let batch = parse_certificates(&text, false).unwrap();
        assert_eq!(batch.len(), 2);
        assert!(batch.iter().all(|c| c.verify().unwrap()));
        // A single certificate is also a valid batch of one.
        let single = parse_certificates(&emit_certificate(&toward_a), false).unwrap();
        assert_eq!(single.len(), 1);
        // Trailing garbage after the last certificate is rejected.
        assert!(matches!(parse_certificates(&format!("{text} junk"), false), Err(Error::Parse(_))));
        assert!(matches!(parse_certificates("", false), Err(Error::Parse(_))));
    }

    #[test]
    fn certificate_keywords_are_enforced() {
        assert!(matches!(parse_certificate("left 1 1 1", false), Err(Error::Parse(_))));
        let fx = pell_pair().unwrap();
        let cert = BlockCertificate::from_parts_unchecked(
            fx.m.clone(),
            fx.b.clone(),
            vec![fx.a.clone(), fx.a_tail.clone()],
        );
        let text = emit_certificate(&cert);
        let truncated = &text[..text.len() - 4];
        assert!(matches!(parse_certificate(truncated, false), Err(Error::Parse(_))));
        let padded = format!("{text} 7");
        assert!(matches!(parse_certificate(&padded, false), Err(Error::Parse(_))));
    }

    #[test]
    fn automorphism_parsers_check_their_contexts() {
        let auto = parse_automorphism("2 2\n8 5\n3 2", false).unwrap();
        assert_eq!(auto.ctx().poly(), &IntPoly::from_i64(&[1, -10, 1]));
        let ctx = auto.ctx().clone();
        assert!(parse_automorphism_in("2 2\n9 8\n1 1", &ctx).is_ok());
        assert!(matches!(
            parse_automorphism_in("2 2\n3 10\n5 17", &ctx),
            Err(Error::CharpolyMismatch)
        ));
        // A unipotent shear has the reducible characteristic polynomial
        // (t − 1)², so the full parser rejects it.
        assert!(parse_automorphism("2 2\n1 1\n0 1", false).is_err());
    }
}
