//! Hand-checkable example data shared by the test suites and the
//! command-line `fixtures` command: a Pell-type pair that is two-block
//! conjugate with explicit doubled conjugators, a palindromic-polynomial
//! automorphism whose doubled sum is conjugated onto the doubled inverse by
//! an involution, a cubic pair separated by a non-invertible ideal with an
//! explicit semiconjugacy embedding, and the classical subring contexts in
//! which powers of a non-invertible ideal recover the power order.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::block::PartitionGenerators;
use crate::error::Result;
use crate::field::MinPoly;
use crate::ideal::FracIdeal;
use crate::linalg::IntMat;
use crate::lmt::Automorphism;
use crate::poly::IntPoly;

/// A pair of automorphisms with characteristic polynomial t² − 10t + 1 that
/// are two-block conjugate in both directions but whose plain conjugacy is
/// out of reach of small witnesses: their ideal classes differ by a
/// non-principal invertible ideal.
#[derive(Clone, Debug)]
pub struct PellPair {
    /// First automorphism, [[8, 5], [3, 2]].
    pub a: Automorphism,
    /// Second automorphism, [[9, 8], [1, 1]].
    pub b: Automorphism,
    /// Unimodular conjugator with (b ⊕ b)·m = m·(a ⊕ a_tail) and det m = 1.
    pub m: IntMat,
    /// Second diagonal block on the `a` side, [[−1, −4], [3, 11]].
    pub a_tail: Automorphism,
    /// Unimodular conjugator with (a ⊕ a)·n = n·(b ⊕ b_tail) and det n = −1.
    pub n: IntMat,
    /// Second diagonal block on the `b` side, the companion matrix
    /// [[0, 1], [−1, 10]].
    pub b_tail: Automorphism,
    /// Partition of unity a₁b₁ + a₂b₂ = 1 with a₁ = β − 2, a₂ = 3,
    /// b₁ = −(1 + β)/3, b₂ = β; the a's multiply the second ideal into the
    /// first and the b's the first into the second.
    pub gens: PartitionGenerators,
}

pub fn pell_pair() -> Result<PellPair> {
    let ctx = MinPoly::new(IntPoly::from_i64(&[1, -10, 1]))?;
    let a = Automorphism::with_context(IntMat::from_i64(&[&[8, 5], &[3, 2]]), ctx.clone())?;
    let b = Automorphism::with_context(IntMat::from_i64(&[&[9, 8], &[1, 1]]), ctx.clone())?;
    let m = IntMat::from_i64(&[
        &[7, 5, -3, -10],
        &[1, 0, 0, -1],
        &[3, 1, -2, -4],
        &[0, 1, 1, 0],
    ]);
    let a_tail =
        Automorphism::with_context(IntMat::from_i64(&[&[-1, -4], &[3, 11]]), ctx.clone())?;
    let n = IntMat::from_i64(&[
        &[-3, -2, 2, -1],
        &[-1, -2, -3, 0],
        &[8, 7, 1, 2],
        &[3, 3, -2, 1],
    ]);
    let b_tail =
        Automorphism::with_context(IntMat::from_i64(&[&[0, 1], &[-1, 10]]), ctx.clone())?;
    let third = BigRational::new(BigInt::from(-1), BigInt::from(3));
    let gens = PartitionGenerators {
        a1: ctx.from_int_coords(&[-2, 1]),
        a2: ctx.from_integer(BigInt::from(3)),
        b1: ctx.from_coords(vec![third.clone(), third]),
        b2: ctx.beta(),
    };
    Ok(PellPair { a, b, m, a_tail, n, b_tail, gens })
}

/// An automorphism with the palindromic characteristic polynomial
/// t² − 20t + 1 — so b and b⁻¹ share it — together with an involution ξ
/// conjugating b ⊕ b onto b⁻¹ ⊕ b⁻¹ without being block diagonalizable
/// itself: it generates the nontrivial Galois symmetry of the setup.
#[derive(Clone, Debug)]
pub struct MirrorPair {
    /// The automorphism [[3, 10], [5, 17]].
    pub b: Automorphism,
    /// Its inverse [[17, −10], [−5, 3]], sharing the context.
    pub b_inverse: Automorphism,
    /// Involution with (b ⊕ b)·ξ = ξ·(b⁻¹ ⊕ b⁻¹) and ξ² = I₄.
    pub xi: IntMat,
}

pub fn mirror_pair() -> Result<MirrorPair> {
    let ctx = MinPoly::new(IntPoly::from_i64(&[1, -20, 1]))?;
    let b = Automorphism::with_context(IntMat::from_i64(&[&[3, 10], &[5, 17]]), ctx.clone())?;
    let b_inverse =
        Automorphism::with_context(IntMat::from_i64(&[&[17, -10], &[-5, 3]]), ctx)?;
    let xi = IntMat::from_i64(&[
        &[5, 0, 0, 2],
        &[7, -5, -1, 0],
        &[0, 24, 5, 14],
        &[-12, 0, 0, -5],
    ]);
    Ok(MirrorPair { b, b_inverse, xi })
}

/// A cubic pair (characteristic polynomial t³ − 23t² + 7t − 1) that is not
/// block conjugate of any size: the ideal of `a` is not invertible over its
/// coefficient ring while the ideal of `b` is the ring itself. The explicit
/// 6×3 embedding realizes `a` as a quotient of b ⊕ b; its completions are
/// never block diagonal.
#[derive(Clone, Debug)]
pub struct CubicTriple {
    /// Automorphism of the non-invertible ideal, [[−1,2,0],[−1,1,1],[−8,−6,23]].
    pub a: Automorphism,
    /// Automorphism of the coefficient ring, [[0,1,0],[−1,0,2],[−11,−3,23]].
    pub b: Automorphism,
    /// 6×3 embedding with (b ⊕ b)·embed = embed·a.
    pub embed: IntMat,
    /// The non-invertible ideal 2Z + (β+1)Z + (β²+1)Z.
    pub ideal: FracIdeal,
    /// Its coefficient ring Z + βZ + ((β²+1)/2)Z as a lattice.
    pub ring: FracIdeal,
}

pub fn cubic_triple() -> Result<CubicTriple> {
    let ctx = MinPoly::new(IntPoly::from_i64(&[-1, 7, -23, 1]))?;
    let a = Automorphism::with_context(
        IntMat::from_i64(&[&[-1, 2, 0], &[-1, 1, 1], &[-8, -6, 23]]),
        ctx.clone(),
    )?;
    let b = Automorphism::with_context(
        IntMat::from_i64(&[&[0, 1, 0], &[-1, 0, 2], &[-11, -3, 23]]),
        ctx.clone(),
    )?;
    let embed = IntMat::from_i64(&[
        &[1, 0, 0],
        &[-1, 2, 0],
        &[0, 0, 1],
        &[-1, 1, 0],
        &[0, -1, 1],
        &[-4, -3, 11],
    ]);
    let ideal = FracIdeal::from_integer_rows(
        ctx.clone(),
        IntMat::from_i64(&[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]),
        BigInt::from(1),
    )?;
    let ring = FracIdeal::from_integer_rows(
        ctx,
        IntMat::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[1, 0, 1]]),
        BigInt::from(2),
    )?;
    Ok(CubicTriple { a, b, embed, ideal, ring })
}

/// Context θ³ − θ − 1 for the classical non-invertible ideal of
/// [`crate::ideal::dtz_fixture`]; the square of that ideal is the power
/// order.
pub fn classical_cubic_ctx() -> Result<MinPoly> {
    MinPoly::new(IntPoly::from_i64(&[-1, -1, 0, 1]))
}

/// Context θ⁴ − θ − 1: the classical ideal and its square are both
/// non-invertible, and its cube is the power order.
pub fn classical_quartic_ctx() -> Result<MinPoly> {
    MinPoly::new(IntPoly::from_i64(&[-1, -1, 0, 0, 1]))
}

/// Base automorphisms for the randomized property suites: every fixture
/// automorphism above plus companion matrices of two further unit-constant
/// irreducible polynomials.
pub fn sample_pool() -> Result<Vec<Automorphism>> {
    let pell = pell_pair()?;
    let mirror = mirror_pair()?;
    let cubic = cubic_triple()?;
    let golden = Automorphism::new(IntMat::from_i64(&[&[0, 1], &[1, 1]]))?;
    let classical = Automorphism::new(IntMat::from_i64(&[
        &[0, 1, 0],
        &[0, 0, 1],
        &[1, 1, 0],
    ]))?;
    Ok(vec![
        pell.a,
        pell.b,
        pell.b_tail,
        mirror.b,
        cubic.a,
        cubic.b,
        golden,
        classical,
    ])
}
