//! The centralizer of a doubled automorphism, block-diagonalizable
//! conjugates, and the antihomomorphism into the Galois group.
//!
//! For an automorphism `B`, the doubled map `B ⊕ B` acts on invariantly
//! complemented embedded subtori; those correspond to unimodular `M` with
//! `M⁻¹(B⊕B)M` block diagonal. The unimodular `ξ` that preserve this family
//! both ways satisfy `(B⊕B)ξ = ξ(A_ξ ⊕ A_ξ)` with `A_ξ` a rational
//! polynomial in `B`; evaluating that polynomial at a root of the
//! characteristic polynomial gives a conjugate root, i.e. an element of the
//! Galois group of the splitting field. The map `ξ ↦ p_ξ` is an
//! antihomomorphism whose kernel is the centralizer of `B ⊕ B`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::ideal::shell_vectors;
use crate::linalg::{IntMat, RatMat};
use crate::lmt::{commutation_kernel, intertwiner_lattice, Automorphism};

/// Cap on candidate combinations tried by [`find_inverse_conjugator`].
const INVERSE_SEARCH_BUDGET: usize = 20_000;

/// An element of the Galois group of the splitting field, represented by a
/// rational polynomial `p` of degree < n with `p(β)` a conjugate root of the
/// defining polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GaloisElement {
    p: FieldElem,
}

impl GaloisElement {
    /// Wraps a root polynomial, rejecting elements that do not send β to a
    /// conjugate root.
    pub fn try_new(p: FieldElem) -> Result<GaloisElement> {
        if !p.is_conjugate_root() {
            return Err(Error::NotGaloisElement);
        }
        Ok(GaloisElement { p })
    }

    /// The defining polynomial, as an element of Q[t]/(f).
    pub fn p(&self) -> &FieldElem {
        &self.p
    }

    /// True for the identity automorphism p(t) = t.
    pub fn is_identity(&self) -> bool {
        self.p == self.p.ctx().beta()
    }

    /// Composition `self ∘ other`, i.e. `t ↦ self.p(other.p(t))` modulo f.
    /// Galois elements are closed under composition.
    pub fn compose(&self, other: &GaloisElement) -> GaloisElement {
        let p = self.p.eval_as_polynomial(&other.p);
        debug_assert!(p.is_conjugate_root());
        GaloisElement { p }
    }
}

/// Splits a unimodular `m` against `b ⊕ b`: returns the diagonal blocks
/// `(a, d)` of `m⁻¹(b⊕b)m` when that conjugate is exactly block diagonal,
/// and `None` otherwise. Non-unimodular input is an error.
pub fn is_in_script_i(
    m: &IntMat,
    b: &Automorphism,
) -> Result<Option<(Automorphism, Automorphism)>> {
    let n = b.dim();
    if m.rows() != 2 * n || m.cols() != 2 * n {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            2 * n,
            2 * n
        )));
    }
    if m.det().abs() != BigInt::one() {
        return Err(Error::NotUnimodular);
    }
    let conj = m.inverse_unimodular()?.mul(&b.mat().diag_copies(2)).mul(m);
    if !conj.block(0, n, n, n).is_zero() || !conj.block(n, 0, n, n).is_zero() {
        return Ok(None);
    }
    let a = Automorphism::with_context(conj.block(0, 0, n, n), b.ctx().clone())?;
    let d = Automorphism::with_context(conj.block(n, n, n, n), b.ctx().clone())?;
    Ok(Some((a, d)))
}

/// Z-basis (rank 4n) of the lattice `{U : (b⊕b)U = U(b⊕b)}`: each of the
/// four block positions carries an independent copy of the lattice
/// `{X : bX = Xb}` of rank n. Unimodularity of individual combinations is
/// not part of the lattice and must be checked per element.
pub fn centralizer_basis(b: &Automorphism) -> Result<Vec<IntMat>> {
    let n = b.dim();
    let lam = intertwiner_lattice(b, b)?;
    let mut out = Vec::with_capacity(4 * n);
    for (r0, c0) in [(0, 0), (0, n), (n, 0), (n, n)] {
        for x in lam.basis() {
            let mut u = IntMat::zero(2 * n, 2 * n);
            for i in 0..n {
                for j in 0..n {
                    u.set(r0 + i, c0 + j, x.get(i, j).clone());
                }
            }
            out.push(u);
        }
    }
    Ok(out)
}

/// The unique rational polynomial of degree < n with `p(b) = axi`, as an
/// element of Q[t]/(f). Requires `axi` to commute with `b`; the result is a
/// Galois element only when `axi` is similar to `b`, which
/// [`GaloisElement::try_new`] checks separately.
pub fn recover_polynomial(axi: &IntMat, b: &Automorphism) -> Result<FieldElem> {
    let n = b.dim();
    if axi.rows() != n || axi.cols() != n {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, expected {n}x{n}",
            axi.rows(),
            axi.cols()
        )));
    }
    if axi.mul(b.mat()) != b.mat().mul(axi) {
        return Err(Error::NonCommuting);
    }
    // Solve Σ_k p_k bᵏ = axi entrywise: n² equations in the n unknowns p_k.
    let mut system = RatMat::zero(n * n, n);
    let mut power = IntMat::identity(n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                system.set(i * n + j, k, power.get(i, j).clone().into());
            }
        }
        power = power.mul(b.mat());
    }
    let mut rhs = RatMat::zero(n * n, 1);
    for i in 0..n {
        for j in 0..n {
            rhs.set(i * n + j, 0, axi.get(i, j).clone().into());
        }
    }
    let sol = system.solve_right(&rhs).ok_or_else(|| {
        Error::Internal("commuting matrix is not a polynomial in the input".into())
    })?;
    let coords = (0..n).map(|k| sol.get(k, 0).clone()).collect();
    Ok(b.ctx().from_coords(coords))
}

/// True iff `(b⊕b)·xi = xi·(b⁻¹⊕b⁻¹)` exactly. Any such `xi` preserves the
/// family of invariantly complemented subtori without centralizing `b ⊕ b`,
/// so it witnesses a nontrivial Galois image. Non-unimodular input is an
/// error.
pub fn check_e_membership_inverse_criterion(xi: &IntMat, b: &Automorphism) -> Result<bool> {
    let n = b.dim();
    if xi.rows() != 2 * n || xi.cols() != 2 * n {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, expected {}x{}",
            xi.rows(),
            xi.cols(),
            2 * n,
            2 * n
        )));
    }
    if xi.det().abs() != BigInt::one() {
        return Err(Error::NotUnimodular);
    }
    let binv = b.mat().inverse_unimodular()?;
    Ok(b.mat().diag_copies(2).mul(xi) == xi.mul(&binv.diag_copies(2)))
}

/// Evaluates the Galois antihomomorphism on `xi`: requires
/// `xi⁻¹(b⊕b)xi = a ⊕ a` with equal diagonal blocks, recovers the
/// polynomial with `p(b) = a`, and validates that `p(β)` is a conjugate
/// root. The identity element is returned exactly when `xi` centralizes
/// `b ⊕ b`.
pub fn galois_of_xi(xi: &IntMat, b: &Automorphism) -> Result<GaloisElement> {
    match is_in_script_i(xi, b)? {
        None => Err(Error::NotBlockDiagonal),
        Some((a, d)) => {
            if a.mat() != d.mat() {
                return Err(Error::UnequalDiagonalBlocks);
            }
            let p = recover_polynomial(a.mat(), b)?;
            GaloisElement::try_new(p)
        }
    }
}

/// Bounded search for a unimodular `xi` with `(b⊕b)xi = xi(b⁻¹⊕b⁻¹)`: the
/// solution lattice is computed exactly, then combinations with coordinates
/// of max-norm up to `max_shell` are tested for determinant ±1 under a fixed
/// candidate budget. `None` means no witness was found within the bound, not
/// that none exists.
pub fn find_inverse_conjugator(b: &Automorphism, max_shell: u32) -> Result<Option<IntMat>> {
    let binv = b.mat().inverse_unimodular()?;
    let bb = b.mat().diag_copies(2);
    let bbinv = binv.diag_copies(2);
    let basis = commutation_kernel(&bb, &bbinv);
    if basis.is_empty() {
        return Ok(None);
    }
    let dim = basis.len();
    let side = 2 * b.dim();
    let mut attempts = 0usize;
    for s in 1..=i64::from(max_shell) {
        for v in shell_vectors(dim, s) {
            attempts += 1;
            if attempts > INVERSE_SEARCH_BUDGET {
                return Ok(None);
            }
            let mut cand = IntMat::zero(side, side);
            for (c, base) in v.iter().zip(&basis) {
                if *c != 0 {
                    cand = cand.add(&base.scale(&BigInt::from(*c)));
                }
            }
            if cand.is_zero() {
                continue;
            }
            if cand.det().abs() == BigInt::one() {
                debug_assert_eq!(bb.mul(&cand), cand.mul(&bbinv));
                return Ok(Some(cand));
            }
        }
    }
    Ok(None)
}

/// A `(b⊕b)`-invariant embedded subtorus: the embedding, the automorphism it
/// induces, and optionally a full unimodular completion demonstrating an
/// invariant complement.
#[derive(Clone, Debug)]
pub struct InvariantTorusWitness {
    embed: IntMat,
    induced: Automorphism,
    complemented: Option<IntMat>,
}

impl InvariantTorusWitness {
    /// Solves `(b⊕b)·embed = embed·induced` for the induced automorphism and
    /// validates the optional complement: it must be unimodular, conjugate
    /// `b⊕b` to exact block-diagonal form, and extend `embed` as its first
    /// block column.
    pub fn new(
        b: &Automorphism,
        embed: IntMat,
        complemented: Option<IntMat>,
    ) -> Result<InvariantTorusWitness> {
        let n = b.dim();
        if embed.rows() != 2 * n || embed.cols() != n {
            return Err(Error::Dimension(format!(
                "embedding is {}x{}, expected {}x{n}",
                embed.rows(),
                embed.cols(),
                2 * n
            )));
        }
        let image = b.mat().diag_copies(2).mul(&embed).to_rational();
        let induced_rat =
            embed.to_rational().solve_right(&image).ok_or(Error::NotSemiconjugacy)?;
        let induced_mat = induced_rat.to_integer().ok_or(Error::NotSemiconjugacy)?;
        let induced = Automorphism::with_context(induced_mat, b.ctx().clone())?;
        if let Some(m) = &complemented {
            let (a, _) = is_in_script_i(m, b)?.ok_or(Error::NotBlockDiagonal)?;
            if m.block(0, 0, 2 * n, n) != embed {
                return Err(Error::InvalidWitness(
                    "complement does not extend the embedding".into(),
                ));
            }
            debug_assert_eq!(a.mat(), induced.mat());
        }
        Ok(InvariantTorusWitness { embed, induced, complemented })
    }

    pub fn embed(&self) -> &IntMat {
        &self.embed
    }

    pub fn induced(&self) -> &Automorphism {
        &self.induced
    }

    pub fn complemented(&self) -> Option<&IntMat> {
        self.complemented.as_ref()
    }
}
