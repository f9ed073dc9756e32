//! Block-conjugacy certificates and the conjugacy trichotomy.
//!
//! A *block certificate* is a unimodular integer matrix `M` together with a
//! left automorphism `B` and right blocks `A₁, …, A_k` such that
//! `(B ⊕ ⋯ ⊕ B) · M = M · (A₁ ⊕ ⋯ ⊕ A_k)` holds exactly. Certificates are
//! constructed from a weak-equivalence witness between the ideals of the two
//! automorphisms, and conversely every certificate yields such a witness, so
//! two-block conjugacy and weak equivalence decide each other. The
//! [`decide`] entry point classifies a pair of automorphisms sharing one
//! irreducible characteristic polynomial as conjugate, two-block conjugate
//! only, or not block conjugate at all, returning independently checkable
//! evidence in every case.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{integer_coords_in_basis, FieldElem};
use crate::ideal::{two_term_partition_of_unity, ArithEquivalence, FracIdeal, WeakEquivWitness};
use crate::linalg::IntMat;
use crate::lmt::{ideal_to_matrix, matrix_to_ideal, phi_iso, Automorphism, EigenData};

/// The two-term partition of unity a certificate was built from:
/// `a₁b₁ + a₂b₂ = 1` with the `a`s in `(I : J)` and the `b`s in `(J : I)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionGenerators {
    pub a1: FieldElem,
    pub a2: FieldElem,
    pub b1: FieldElem,
    pub b2: FieldElem,
}

/// Evidence that `⊕ᵢ left` and `right₁ ⊕ ⋯ ⊕ right_k` are conjugate over the
/// integers: a matrix `m` with `|det m| = 1` and
/// `(⊕ᵢ left) · m = m · (⊕ᵢ rightᵢ)`.
///
/// Instances built through [`BlockCertificate::new`] (and everything this
/// module constructs) satisfy both identities; data of unknown provenance can
/// be wrapped with [`BlockCertificate::from_parts_unchecked`] and then
/// checked with [`BlockCertificate::verify`].
#[derive(Clone, Debug)]
pub struct BlockCertificate {
    m: IntMat,
    left: Automorphism,
    right_blocks: Vec<Automorphism>,
    generators: Option<PartitionGenerators>,
}

impl BlockCertificate {
    /// Assembles a certificate and proves it: shapes must be consistent,
    /// `m` unimodular, and the intertwining identity exact.
    pub fn new(
        m: IntMat,
        left: Automorphism,
        right_blocks: Vec<Automorphism>,
        generators: Option<PartitionGenerators>,
    ) -> Result<BlockCertificate> {
        let cert = BlockCertificate { m, left, right_blocks, generators };
        cert.check_shapes()?;
        if cert.m.det().abs() != BigInt::one() {
            return Err(Error::NotUnimodular);
        }
        if !cert.residual().is_zero() {
            return Err(Error::NotIntertwiner);
        }
        Ok(cert)
    }

    /// Wraps raw parts without validating them, for data that still needs to
    /// be [`verify`](Self::verify)-ed (e.g. parsed from text).
    pub fn from_parts_unchecked(
        m: IntMat,
        left: Automorphism,
        right_blocks: Vec<Automorphism>,
    ) -> BlockCertificate {
        BlockCertificate { m, left, right_blocks, generators: None }
    }

    pub fn m(&self) -> &IntMat {
        &self.m
    }

    pub fn left(&self) -> &Automorphism {
        &self.left
    }

    pub fn right_blocks(&self) -> &[Automorphism] {
        &self.right_blocks
    }

    pub fn generators(&self) -> Option<&PartitionGenerators> {
        self.generators.as_ref()
    }

    /// Number of diagonal blocks.
    pub fn k(&self) -> usize {
        self.right_blocks.len()
    }

    /// Side length of one block.
    pub fn block_dim(&self) -> usize {
        self.left.dim()
    }

    fn check_shapes(&self) -> Result<()> {
        let k = self.right_blocks.len();
        if k == 0 {
            return Err(Error::Dimension("certificate needs at least one right block".into()));
        }
        let n = self.left.dim();
        for blk in &self.right_blocks {
            if blk.ctx() != self.left.ctx() {
                return Err(Error::ContextMismatch);
            }
            if blk.dim() != n {
                return Err(Error::Dimension(format!(
                    "right block is {}x{}, expected {n}x{n}",
                    blk.dim(),
                    blk.dim()
                )));
            }
        }
        if self.m.rows() != k * n || self.m.cols() != k * n {
            return Err(Error::Dimension(format!(
                "certificate matrix is {}x{}, expected {}x{}",
                self.m.rows(),
                self.m.cols(),
                k * n,
                k * n
            )));
        }
        Ok(())
    }

    fn residual(&self) -> IntMat {
        let k = self.right_blocks.len();
        let left_sum = self.left.mat().diag_copies(k);
        let right_refs: Vec<&IntMat> = self.right_blocks.iter().map(|a| a.mat()).collect();
        let right_sum = IntMat::direct_sum(&right_refs);
        left_sum.mul(&self.m).sub(&self.m.mul(&right_sum))
    }

    /// Re-checks the defining identities from scratch: `Ok(true)` iff
    /// `|det m| = 1` and `(⊕ left)·m − m·(⊕ right) = 0` exactly. Inconsistent
    /// shapes are an error rather than a plain `false`.
    pub fn verify(&self) -> Result<bool> {
        self.check_shapes()?;
        Ok(self.m.det().abs() == BigInt::one() && self.residual().is_zero())
    }
}

/// Integer matrix `C` with `C · basis = targets` componentwise: row `p`
/// holds the coordinates of `targets[p]` in `basis`. Fails with
/// `NotInLattice` when a target has non-integral coordinates.
pub(crate) fn expressing_matrix(targets: &[FieldElem], basis: &[FieldElem]) -> Result<IntMat> {
    let mut out = IntMat::zero(targets.len(), basis.len());
    for (p, t) in targets.iter().enumerate() {
        let coords = integer_coords_in_basis(t, basis)?;
        for (q, c) in coords.into_iter().enumerate() {
            out.set(p, q, c);
        }
    }
    Ok(out)
}

pub(crate) fn scale_all(s: &FieldElem, elems: &[FieldElem]) -> Vec<FieldElem> {
    elems.iter().map(|e| s.mul(e)).collect()
}

/// One direction of a two-block conjugacy. With `J` the ideal of `left`,
/// `I` the ideal of `right`, `x = (J : I)`, and a partition
/// `gens.a1·gens.b1 + gens.a2·gens.b2 = 1` (`a`s in `(I : J)`, `b`s in `x`),
/// builds `M` block-wise so that `(left ⊕ left) · M = M · (right ⊕ right′)`
/// where `right′` is the multiplication-by-β matrix on the product ideal
/// `J·x`.
fn assemble_cert(
    left: &Automorphism,
    right: &Automorphism,
    left_eigen: &EigenData,
    right_eigen: &EigenData,
    x: &FracIdeal,
    gens: PartitionGenerators,
) -> Result<BlockCertificate> {
    let jx = left_eigen.ideal().mul(x)?;
    let (right_prime, w) = ideal_to_matrix(&jx)?;
    let u = right_eigen.components();
    let v = left_eigen.components();
    // Row p of each block expresses a multiple of v_p in the stated basis:
    // M₁₁u = a₁v, M₂₁u = a₂v, M₁₂w = −b₂v, M₂₂w = b₁v. Every block is then
    // an intertwiner, and the partition identity makes M unimodular.
    let m11 = expressing_matrix(&scale_all(&gens.a1, v), u)?;
    let m21 = expressing_matrix(&scale_all(&gens.a2, v), u)?;
    let m12 = expressing_matrix(&scale_all(&gens.b2.neg(), v), &w)?;
    let m22 = expressing_matrix(&scale_all(&gens.b1, v), &w)?;
    let m = IntMat::from_blocks(&[vec![&m11, &m12], vec![&m21, &m22]]);
    BlockCertificate::new(m, left.clone(), vec![right.clone(), right_prime], Some(gens))
        .map_err(|e| Error::Internal(format!("constructed certificate failed its own check: {e}")))
}

/// Builds both two-block conjugacies for a weakly equivalent pair: the first
/// certificate realizes `(b ⊕ b) M = M (a ⊕ a′)`, the second
/// `(a ⊕ a) N = N (b ⊕ b′)`. Fails with `NotWeaklyEquivalent` when the
/// ideals of `a` and `b` are not weakly equivalent; both certificates are
/// re-verified before they are returned.
pub fn construct_two_block(
    a: &Automorphism,
    b: &Automorphism,
    seed: u64,
) -> Result<(BlockCertificate, BlockCertificate)> {
    if a.ctx() != b.ctx() {
        return Err(Error::ContextMismatch);
    }
    let n = a.dim();
    if a.mat() == b.mat() {
        // Degenerate pair: the identity certificate works on both sides.
        let ctx = a.ctx();
        let gens = PartitionGenerators {
            a1: ctx.one(),
            a2: ctx.zero(),
            b1: ctx.one(),
            b2: ctx.zero(),
        };
        let cert1 = BlockCertificate::new(
            IntMat::identity(2 * n),
            b.clone(),
            vec![a.clone(), a.clone()],
            Some(gens.clone()),
        )?;
        let cert2 = BlockCertificate::new(
            IntMat::identity(2 * n),
            a.clone(),
            vec![b.clone(), b.clone()],
            Some(gens),
        )?;
        return Ok((cert1, cert2));
    }
    let ea = matrix_to_ideal(a);
    let eb = matrix_to_ideal(b);
    let i = ea.ideal();
    let j = eb.ideal();
    if !i.is_weakly_equivalent(j)? {
        return Err(Error::NotWeaklyEquivalent);
    }
    let ring = i.coefficient_ring()?;
    let x = j.quotient(i)?;
    let y = i.quotient(j)?;
    let (a1, a2, b1, b2) = two_term_partition_of_unity(&x, &y, &ring, seed)?;
    let forward = PartitionGenerators {
        a1: a1.clone(),
        a2: a2.clone(),
        b1: b1.clone(),
        b2: b2.clone(),
    };
    // Swapping the roles of the two automorphisms swaps (x, y) and turns the
    // same partition of unity around: the a-elements become b-elements.
    let backward = PartitionGenerators { a1: b1, a2: b2, b1: a1, b2: a2 };
    let cert1 = assemble_cert(b, a, &eb, &ea, &x, forward)?;
    let cert2 = assemble_cert(a, b, &ea, &eb, &y, backward)?;
    Ok((cert1, cert2))
}

/// Recovers a verified weak-equivalence witness from a block certificate.
///
/// The first block column of `m` and the first block row of `m⁻¹` are
/// intertwiners; their scalars `aᵢ` and `bⱼ` satisfy `Σ aᵢbᵢ = 1` with the
/// `a`s in `Y = (I : J)` and the `b`s in `X = (J : I)`, which is exactly a
/// weak-equivalence witness for the ideals `I` of `right_blocks[0]` and `J`
/// of `left`. Certificates with more than two blocks are collapsed to a
/// two-term partition (the `seed` steers that search). The certificate is
/// re-verified first and rejected with `InvalidWitness` if it does not hold.
pub fn extract_weak_equivalence(cert: &BlockCertificate, seed: u64) -> Result<WeakEquivWitness> {
    if !cert.verify()? {
        return Err(Error::InvalidWitness("certificate identities do not hold".into()));
    }
    let k = cert.k();
    let n = cert.block_dim();
    let ea = matrix_to_ideal(&cert.right_blocks()[0]);
    let eb = matrix_to_ideal(cert.left());
    let i = ea.ideal().clone();
    let j = eb.ideal().clone();
    let w_mat = cert.m().inverse_unimodular()?;
    let mut a_elems = Vec::with_capacity(k);
    let mut b_elems = Vec::with_capacity(k);
    for blk in 0..k {
        let m_col = cert.m().block(blk * n, 0, n, n);
        a_elems.push(phi_iso(&m_col, &eb, &ea)?);
        let w_row = w_mat.block(0, blk * n, n, n);
        b_elems.push(phi_iso(&w_row, &ea, &eb)?);
    }
    let mut sum = cert.left().ctx().zero();
    for (ai, bi) in a_elems.iter().zip(&b_elems) {
        sum = sum.add(&ai.mul(bi));
    }
    if !sum.is_one() {
        return Err(Error::Internal("certificate scalars do not sum to 1".into()));
    }
    let ring = i.coefficient_ring()?;
    if ring.as_ideal() != j.coefficient_ring()?.as_ideal() {
        return Err(Error::Internal("coefficient rings of the two ideals differ".into()));
    }
    let x = j.quotient(&i)?;
    let y = i.quotient(&j)?;
    for ai in &a_elems {
        if !y.contains(ai) {
            return Err(Error::Internal("extracted a-element falls outside (I : J)".into()));
        }
    }
    for bi in &b_elems {
        if !x.contains(bi) {
            return Err(Error::Internal("extracted b-element falls outside (J : I)".into()));
        }
    }
    let zero = cert.left().ctx().zero();
    let (a1, a2, b1, b2) = match k {
        1 => (a_elems[0].clone(), zero.clone(), b_elems[0].clone(), zero),
        2 => (
            a_elems[0].clone(),
            a_elems[1].clone(),
            b_elems[0].clone(),
            b_elems[1].clone(),
        ),
        _ => two_term_partition_of_unity(&x, &y, &ring, seed)?,
    };
    let witness = WeakEquivWitness { x, y, ring, a1, a2, b1, b2 };
    witness.verify(&i, &j)?;
    Ok(witness)
}

/// A block-triangular conjugate of `⊕ᵢ b`: `mhat = [[a, s], [0, aprime]]`
/// with `a` acting on the embedded subtorus and `aprime` on the quotient.
#[derive(Clone, Debug)]
pub struct TriangularForm {
    pub mhat: IntMat,
    pub a: Automorphism,
    pub s: IntMat,
    pub aprime: IntMat,
}

/// Completes a primitive embedding `embed : Zⁿ → Z^{kn}` intertwining some
/// `A` with `⊕ᵢ b` into a full unimodular matrix `m` whose first block
/// column is `embed`, and conjugates `⊕ᵢ b` by it into block-triangular
/// form. Returns the completion together with the triangular data.
///
/// Errors: a column of `embed` with non-unit content (`ColumnContentNotOne`),
/// an embedding whose rows do not span all of `Zⁿ` (`NotPrimitiveEmbedding`),
/// or the absence of any integer `A` with `(⊕ᵢ b)·embed = embed·A`
/// (`NotSemiconjugacy`).
pub fn complete_embedding(
    embed: &IntMat,
    b: &Automorphism,
    k: usize,
) -> Result<(IntMat, TriangularForm)> {
    let n = b.dim();
    if k == 0 {
        return Err(Error::Dimension("need at least one block".into()));
    }
    if embed.rows() != k * n || embed.cols() != n {
        return Err(Error::Dimension(format!(
            "embedding is {}x{}, expected {}x{n}",
            embed.rows(),
            embed.cols(),
            k * n
        )));
    }
    for col in 0..n {
        let mut g = BigInt::zero();
        for row in 0..k * n {
            g = g.gcd(embed.get(row, col));
        }
        if !g.is_one() {
            return Err(Error::ColumnContentNotOne);
        }
    }
    let hnf = embed.hnf();
    if !hnf.h.block(0, 0, n, n).is_identity() {
        return Err(Error::NotPrimitiveEmbedding);
    }
    debug_assert!(hnf.h.block(n, 0, (k - 1) * n, n).is_zero());
    // u·embed = [I; 0], so the first n columns of m := u⁻¹ are embed itself.
    let u_mat = hnf.u;
    let m = u_mat.inverse_unimodular()?;
    debug_assert_eq!(m.block(0, 0, k * n, n), *embed);
    let block_sum = b.mat().diag_copies(k);
    // In the new basis the image of embed under ⊕b is [A; rest]; the
    // embedding is a semiconjugacy exactly when rest vanishes.
    let image = u_mat.mul(&block_sum).mul(embed);
    if !image.block(n, 0, (k - 1) * n, n).is_zero() {
        return Err(Error::NotSemiconjugacy);
    }
    let a_mat = image.block(0, 0, n, n);
    let mhat = u_mat.mul(&block_sum).mul(&m);
    debug_assert!(mhat.block(n, 0, (k - 1) * n, n).is_zero());
    debug_assert_eq!(mhat.block(0, 0, n, n), a_mat);
    let s = mhat.block(0, n, n, (k - 1) * n);
    let aprime = mhat.block(n, n, (k - 1) * n, (k - 1) * n);
    let a = Automorphism::with_context(a_mat, b.ctx().clone())?;
    Ok((m, TriangularForm { mhat, a, s, aprime }))
}

/// Pads a k-block certificate to k+1 blocks by adjoining an untouched copy
/// of the left automorphism: `m̃ = [[m, 0], [0, Iₙ]]` with right blocks
/// `(…, left)`. The result is verified from scratch, so an invalid input is
/// rejected rather than propagated.
pub fn extend_certificate(cert: &BlockCertificate) -> Result<BlockCertificate> {
    let n = cert.block_dim();
    let k = cert.k();
    let zeros_right = IntMat::zero(k * n, n);
    let zeros_below = IntMat::zero(n, k * n);
    let ident = IntMat::identity(n);
    let mtilde =
        IntMat::from_blocks(&[vec![cert.m(), &zeros_right], vec![&zeros_below, &ident]]);
    let mut right = cert.right_blocks().to_vec();
    right.push(cert.left().clone());
    BlockCertificate::new(mtilde, cert.left().clone(), right, cert.generators.clone())
}

/// Outcome of [`decide`].
// One value of this type exists per decision, so the size spread between
// variants never matters; boxing the certificates would only obscure the API.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
pub enum Verdict {
    /// `witness · a = b · witness` with `witness` unimodular; `scalar` is the
    /// field element carrying the ideal of `a` onto the ideal of `b`.
    Conjugate { witness: IntMat, scalar: FieldElem },
    /// Certificates for `(b ⊕ b) ≈ (a ⊕ a′)` and `(a ⊕ a) ≈ (b ⊕ b′)`. The
    /// pair might still be conjugate via a witness larger than the search
    /// bound, hence `conjugacy_undetermined`.
    TwoBlockOnly {
        certs: (BlockCertificate, BlockCertificate),
        conjugacy_undetermined: bool,
    },
    /// The ideals are not weakly equivalent, so no block conjugacy of any
    /// size exists. This branch is exact, not bounded.
    NotBlockConjugate,
}

/// A verdict together with the search bound that produced it.
#[derive(Clone, Debug)]
pub struct Trichotomy {
    pub verdict: Verdict,
    pub bound_used: u32,
}

/// Classifies a pair of automorphisms with the same irreducible
/// characteristic polynomial.
///
/// Weak equivalence of the associated ideals is decided exactly; failure is
/// a definitive `NotBlockConjugate`. For weakly equivalent ideals, a bounded
/// search for an arithmetic-equivalence scalar either produces a conjugating
/// unimodular witness (`Conjugate`, verified before return) or falls back to
/// the pair of two-block certificates (`TwoBlockOnly`), in which case plain
/// conjugacy remains undetermined because the search is bounded.
pub fn decide(a: &Automorphism, b: &Automorphism, bound: u32, seed: u64) -> Result<Trichotomy> {
    if a.ctx() != b.ctx() {
        return Err(Error::ContextMismatch);
    }
    let ea = matrix_to_ideal(a);
    let eb = matrix_to_ideal(b);
    let i = ea.ideal();
    let j = eb.ideal();
    if !i.is_weakly_equivalent(j)? {
        return Ok(Trichotomy { verdict: Verdict::NotBlockConjugate, bound_used: bound });
    }
    match i.is_arith_equivalent_bounded(j, bound)? {
        ArithEquivalence::Equivalent(alpha) => {
            // alpha·u is a basis of alpha·I = J, so expressing it in the
            // basis v of J is a unimodular change of basis intertwining the
            // two automorphisms.
            let c = expressing_matrix(&scale_all(&alpha, ea.components()), eb.components())?;
            if c.det().abs() != BigInt::one() {
                return Err(Error::Internal("conjugating basis change is not unimodular".into()));
            }
            let p = c.inverse_unimodular()?;
            if p.mul(a.mat()) != b.mat().mul(&p) {
                return Err(Error::Internal("conjugacy witness fails to intertwine".into()));
            }
            Ok(Trichotomy {
                verdict: Verdict::Conjugate { witness: p, scalar: alpha },
                bound_used: bound,
            })
        }
        ArithEquivalence::NoWitnessWithinBound => {
            let certs = construct_two_block(a, b, seed)?;
            Ok(Trichotomy {
                verdict: Verdict::TwoBlockOnly { certs, conjugacy_undetermined: true },
                bound_used: bound,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::MinPoly;
    use crate::poly::IntPoly;
    use num_rational::BigRational;

    fn pell_ctx() -> MinPoly {
        MinPoly::new(IntPoly::from_i64(&[1, -10, 1])).unwrap()
    }

    fn pell_pair() -> (Automorphism, Automorphism) {
        let ctx = pell_ctx();
        let a = Automorphism::with_context(IntMat::from_i64(&[&[8, 5], &[3, 2]]), ctx.clone())
            .unwrap();
        let b = Automorphism::with_context(IntMat::from_i64(&[&[9, 8], &[1, 1]]), ctx).unwrap();
        (a, b)
    }

    fn worked_m() -> IntMat {
        IntMat::from_i64(&[
            &[7, 5, -3, -10],
            &[1, 0, 0, -1],
            &[3, 1, -2, -4],
            &[0, 1, 1, 0],
        ])
    }

    fn worked_n() -> IntMat {
        IntMat::from_i64(&[
            &[-3, -2, 2, -1],
            &[-1, -2, -3, 0],
            &[8, 7, 1, 2],
            &[3, 3, -2, 1],
        ])
    }

    fn worked_aprime() -> Automorphism {
        Automorphism::with_context(IntMat::from_i64(&[&[-1, -4], &[3, 11]]), pell_ctx()).unwrap()
    }

    fn worked_bprime() -> Automorphism {
        Automorphism::with_context(IntMat::from_i64(&[&[0, 1], &[-1, 10]]), pell_ctx()).unwrap()
    }

    fn cubic_ctx() -> MinPoly {
        MinPoly::new(IntPoly::from_i64(&[-1, 7, -23, 1])).unwrap()
    }

    fn cubic_pair() -> (Automorphism, Automorphism) {
        let ctx = cubic_ctx();
        let a = Automorphism::with_context(
            IntMat::from_i64(&[&[-1, 2, 0], &[-1, 1, 1], &[-8, -6, 23]]),
            ctx.clone(),
        )
        .unwrap();
        let b = Automorphism::with_context(
            IntMat::from_i64(&[&[0, 1, 0], &[-1, 0, 2], &[-11, -3, 23]]),
            ctx,
        )
        .unwrap();
        (a, b)
    }

    fn cubic_embedding() -> IntMat {
        IntMat::from_i64(&[
            &[1, 0, 0],
            &[-1, 2, 0],
            &[0, 0, 1],
            &[-1, 1, 0],
            &[0, -1, 1],
            &[-4, -3, 11],
        ])
    }

    #[test]
    fn worked_certificate_verifies_with_determinant_one() {
        let (a, b) = pell_pair();
        let cert =
            BlockCertificate::new(worked_m(), b, vec![a, worked_aprime()], None).unwrap();
        assert!(cert.verify().unwrap());
        assert_eq!(cert.m().det(), BigInt::from(1));
        assert_eq!(cert.k(), 2);
    }

    #[test]
    fn reverse_certificate_verifies_with_determinant_minus_one() {
        let (a, b) = pell_pair();
        let cert =
            BlockCertificate::new(worked_n(), a, vec![b, worked_bprime()], None).unwrap();
        assert!(cert.verify().unwrap());
        assert_eq!(cert.m().det(), BigInt::from(-1));
    }

    #[test]
    fn wrong_right_blocks_fail_verification() {
        let (a, b) = pell_pair();
        let cert = BlockCertificate::from_parts_unchecked(
            worked_m(),
            b.clone(),
            vec![a.clone(), a.clone()],
        );
        assert!(!cert.verify().unwrap());
        assert!(matches!(
            BlockCertificate::new(worked_m(), b, vec![a.clone(), a], None),
            Err(Error::NotIntertwiner)
        ));
    }

    #[test]
    fn shape_mismatch_is_an_error_not_a_false() {
        let (a, b) = pell_pair();
        let cert = BlockCertificate::from_parts_unchecked(IntMat::identity(3), b, vec![a]);
        assert!(matches!(cert.verify(), Err(Error::Dimension(_))));
    }

    #[test]
    fn equal_matrices_get_identity_certificates() {
        let (a, _) = pell_pair();
        let (c1, c2) = construct_two_block(&a, &a, 0).unwrap();
        assert!(c1.m().is_identity());
        assert!(c2.m().is_identity());
        assert_eq!(c1.right_blocks()[1].mat(), a.mat());
        let w = extract_weak_equivalence(&c1, 0).unwrap();
        assert!(w.a1.is_one());
        assert!(w.a2.is_zero());
        assert!(w.b1.is_one());
        assert!(w.b2.is_zero());
        assert_eq!(w.x, *w.ring.as_ideal());
        assert_eq!(w.y, *w.ring.as_ideal());
    }

    #[test]
    fn constructed_certificates_verify_and_name_the_right_ideal_class() {
        let (a, b) = pell_pair();
        let (c1, c2) = construct_two_block(&a, &b, 0).unwrap();
        assert!(c1.verify().unwrap());
        assert!(c2.verify().unwrap());
        assert_eq!(c1.left().mat(), b.mat());
        assert_eq!(c1.right_blocks()[0].mat(), a.mat());
        assert_eq!(c2.left().mat(), a.mat());
        assert_eq!(c2.right_blocks()[0].mat(), b.mat());
        let gens = c1.generators().unwrap();
        assert!(gens.a1.mul(&gens.b1).add(&gens.a2.mul(&gens.b2)).is_one());
        // The second block of the first certificate acts on J·(J : I), so its
        // ideal must land in that arithmetic class.
        let i = matrix_to_ideal(&a).ideal().clone();
        let j = matrix_to_ideal(&b).ideal().clone();
        let jx = j.mul(&j.quotient(&i).unwrap()).unwrap();
        let second = matrix_to_ideal(&c1.right_blocks()[1]).ideal().clone();
        assert!(matches!(
            second.is_arith_equivalent_bounded(&jx, 30).unwrap(),
            ArithEquivalence::Equivalent(_)
        ));
    }

    #[test]
    fn extraction_recovers_the_worked_generators() {
        let (a, b) = pell_pair();
        let ctx = pell_ctx();
        let cert =
            BlockCertificate::new(worked_m(), b.clone(), vec![a.clone(), worked_aprime()], None)
                .unwrap();
        let w = extract_weak_equivalence(&cert, 0).unwrap();
        assert_eq!(w.a1, ctx.from_int_coords(&[-2, 1]));
        assert_eq!(w.a2, ctx.from_integer(BigInt::from(3)));
        let third = BigRational::new(BigInt::from(-1), BigInt::from(3));
        assert_eq!(w.b1, ctx.from_coords(vec![third.clone(), third]));
        assert_eq!(w.b2, ctx.beta());
        let i = matrix_to_ideal(&a).ideal().clone();
        let j = matrix_to_ideal(&b).ideal().clone();
        w.verify(&i, &j).unwrap();
    }

    #[test]
    fn extraction_round_trips_through_construction() {
        let (a, b) = pell_pair();
        let (c1, c2) = construct_two_block(&a, &b, 0).unwrap();
        let i = matrix_to_ideal(&a).ideal().clone();
        let j = matrix_to_ideal(&b).ideal().clone();
        extract_weak_equivalence(&c1, 0).unwrap().verify(&i, &j).unwrap();
        // The reverse certificate witnesses the swapped pair.
        extract_weak_equivalence(&c2, 0).unwrap().verify(&j, &i).unwrap();
    }

    #[test]
    fn extension_pads_certificates_and_stays_extractable() {
        let (a, b) = pell_pair();
        let base = BlockCertificate::new(IntMat::identity(2), a.clone(), vec![a.clone()], None)
            .unwrap();
        let once = extend_certificate(&base).unwrap();
        assert!(once.m().is_identity());
        assert_eq!(once.k(), 2);
        let cert =
            BlockCertificate::new(worked_m(), b.clone(), vec![a.clone(), worked_aprime()], None)
                .unwrap();
        let three = extend_certificate(&cert).unwrap();
        assert_eq!(three.k(), 3);
        assert!(three.verify().unwrap());
        assert_eq!(three.right_blocks()[2].mat(), b.mat());
        let four = extend_certificate(&three).unwrap();
        assert_eq!(four.k(), 4);
        assert!(four.verify().unwrap());
        // Extraction collapses the padded partition back to two terms.
        let i = matrix_to_ideal(&a).ideal().clone();
        let j = matrix_to_ideal(&b).ideal().clone();
        extract_weak_equivalence(&four, 0).unwrap().verify(&i, &j).unwrap();
    }

    #[test]
    fn trivial_embedding_completes_to_the_identity() {
        let (_, b) = pell_pair();
        let embed = IntMat::from_blocks(&[vec![&IntMat::identity(2)], vec![&IntMat::zero(2, 2)]]);
        let (m, form) = complete_embedding(&embed, &b, 2).unwrap();
        assert!(m.is_identity());
        assert_eq!(form.a.mat(), b.mat());
        assert!(form.s.is_zero());
        assert_eq!(form.aprime, *b.mat());
        assert_eq!(form.mhat, b.mat().diag_copies(2));
    }

    #[test]
    fn worked_first_block_column_completes() {
        let (a, b) = pell_pair();
        let embed = worked_m().block(0, 0, 4, 2);
        let (m, form) = complete_embedding(&embed, &b, 2).unwrap();
        assert_eq!(form.a.mat(), a.mat());
        assert_eq!(m.block(0, 0, 4, 2), embed);
        // mhat really is m⁻¹ (b ⊕ b) m.
        let recomputed = m.inverse_unimodular().unwrap().mul(&b.mat().diag_copies(2)).mul(&m);
        assert_eq!(recomputed, form.mhat);
        // The quotient block has the same characteristic polynomial.
        Automorphism::with_context(form.aprime.clone(), b.ctx().clone()).unwrap();
    }

    #[test]
    fn cubic_embedding_completes_with_nonzero_coupling() {
        let (a, b) = cubic_pair();
        let embed = cubic_embedding();
        let (m, form) = complete_embedding(&embed, &b, 2).unwrap();
        assert_eq!(form.a.mat(), a.mat());
        assert_eq!(m.block(0, 0, 6, 3), embed);
        // A zero coupling block would make the pair two-block conjugate,
        // which this pair is not, so s must be nonzero.
        assert!(!form.s.is_zero());
    }

    #[test]
    fn embedding_with_scaled_column_is_rejected() {
        let (_, b) = pell_pair();
        let embed = IntMat::from_blocks(&[vec![&IntMat::identity(2)], vec![&IntMat::zero(2, 2)]])
            .scale(&BigInt::from(2));
        assert!(matches!(complete_embedding(&embed, &b, 2), Err(Error::ColumnContentNotOne)));
    }

    #[test]
    fn imprimitive_semiconjugacy_is_rejected() {
        // The worked embedding times (a + 2·id): still a semiconjugacy with
        // content-one columns, but its rows span an index-25 sublattice.
        let (_, b) = pell_pair();
        let embed =
            IntMat::from_i64(&[&[85, 55], &[10, 5], &[33, 19], &[3, 4]]);
        assert!(matches!(complete_embedding(&embed, &b, 2), Err(Error::NotPrimitiveEmbedding)));
    }

    #[test]
    fn non_semiconjugacy_is_rejected() {
        let (_, b) = pell_pair();
        let embed = IntMat::from_i64(&[&[1, 0], &[0, 1], &[0, 0], &[1, 1]]);
        assert!(matches!(complete_embedding(&embed, &b, 2), Err(Error::NotSemiconjugacy)));
    }

    #[test]
    fn decide_reports_conjugate_for_equal_input() {
        let (a, _) = pell_pair();
        let t = decide(&a, &a, 25, 0).unwrap();
        match t.verdict {
            Verdict::Conjugate { witness, scalar } => {
                assert!(witness.is_identity());
                assert!(scalar.is_one());
            }
            other => panic!("expected Conjugate, got {other:?}"),
        }
    }

    #[test]
    fn decide_finds_nontrivial_conjugacies_with_verified_witness() {
        let (a, _) = pell_pair();
        // b = p a p⁻¹ for the shear p = [[1,1],[0,1]].
        let p0 = IntMat::from_i64(&[&[1, 1], &[0, 1]]);
        let b_mat = p0.mul(a.mat()).mul(&p0.inverse_unimodular().unwrap());
        let b = Automorphism::with_context(b_mat.clone(), a.ctx().clone()).unwrap();
        let t = decide(&a, &b, 25, 0).unwrap();
        match t.verdict {
            Verdict::Conjugate { witness, .. } => {
                assert_eq!(witness.mul(a.mat()), b_mat.mul(&witness));
                assert_eq!(witness.det().abs(), BigInt::from(1));
            }
            other => panic!("expected Conjugate, got {other:?}"),
        }
    }

    #[test]
    fn decide_reports_two_block_only_for_the_worked_pair() {
        let (a, b) = pell_pair();
        let t = decide(&a, &b, 50, 7).unwrap();
        assert_eq!(t.bound_used, 50);
        match t.verdict {
            Verdict::TwoBlockOnly { certs, conjugacy_undetermined } => {
                assert!(conjugacy_undetermined);
                assert!(certs.0.verify().unwrap());
                assert!(certs.1.verify().unwrap());
            }
            other => panic!("expected TwoBlockOnly, got {other:?}"),
        }
        // Same classification from the other side.
        let back = decide(&b, &a, 50, 7).unwrap();
        assert!(matches!(back.verdict, Verdict::TwoBlockOnly { .. }));
    }

    #[test]
    fn decide_reports_not_block_conjugate_for_the_cubic_pair() {
        let (a, b) = cubic_pair();
        let t = decide(&a, &b, 25, 0).unwrap();
        assert!(matches!(t.verdict, Verdict::NotBlockConjugate));
        let back = decide(&b, &a, 25, 0).unwrap();
        assert!(matches!(back.verdict, Verdict::NotBlockConjugate));
    }

    #[test]
    fn decide_rejects_mismatched_polynomials() {
        let (a, _) = pell_pair();
        let (a3, _) = cubic_pair();
        assert!(matches!(decide(&a, &a3, 25, 0), Err(Error::ContextMismatch)));
    }

    #[test]
    fn construct_requires_weak_equivalence() {
        let (a, b) = cubic_pair();
        assert!(matches!(construct_two_block(&a, &b, 0), Err(Error::NotWeaklyEquivalent)));
    }
}
