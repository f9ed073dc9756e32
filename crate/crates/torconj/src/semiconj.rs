//! Semiconjugacies from an ideal's automorphism to a direct sum of copies
//! of an order's automorphism, the kernel of the generator epimorphism, and
//! the θ cocycle.
//!
//! Setting: an order R containing β with Z-basis w (so C_R·w = β·w) and an
//! ideal I with (I:I) ⊇ R and Z-basis u (A·u = β·u). Generators a₁,…,a_k of
//! I as an R-module give intertwiners X_i ∈ Λ(C_R, A) with X_i·u = a_i·w;
//! stacking them yields a primitive embedding, and a unimodular completion M
//! puts M⁻¹(⊕C_R)M in the triangular form [[A, S], [0, D]]. The first block
//! row of W = M⁻¹ supplies Y_i with Σ Y_iX_i = Iₙ. The epimorphism
//! ψ(x₁,…,x_k) = Σ a_ix_i from ⊕ᵏR onto I has kernel generated over Z by
//! the last (k−1)n rows of W, the sequence splits at the abelian-group
//! level as ⊕ᵏR ≅ I ⊕ ker(ψ), D is multiplication by β on ker(ψ), and the
//! failure of the splitting to respect multiplication is the cocycle θ.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::block::{complete_embedding, expressing_matrix, scale_all, TriangularForm};
use crate::error::{Error, Result};
use crate::field::{integer_coords_in_basis, FieldElem};
use crate::ideal::{ideal_from_elements, FracIdeal, OrderRing, Scalars};
use crate::linalg::IntMat;
use crate::lmt::{ideal_to_matrix, Automorphism};

/// Cap on span computations inside [`semiconjugacy_from_generators`]'s
/// internal generator search.
const GENERATOR_SPAN_BUDGET: usize = 10_000;

/// Generators of an ideal over an order together with the matrices they
/// induce: X_i·u = a_i·w with X_i ∈ Λ(C_R, A), and a left-inverse row
/// satisfying Σ Y_iX_i = Iₙ exactly.
#[derive(Clone, Debug)]
pub struct GeneratorData {
    gens: Vec<FieldElem>,
    xs: Vec<IntMat>,
    ys: Vec<IntMat>,
}

impl GeneratorData {
    pub fn k(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[FieldElem] {
        &self.gens
    }

    pub fn xs(&self) -> &[IntMat] {
        &self.xs
    }

    pub fn ys(&self) -> &[IntMat] {
        &self.ys
    }
}

/// The ideal must be a module over the ring: (I:I) ⊇ R.
fn require_module(ideal: &FracIdeal, ring: &OrderRing) -> Result<()> {
    let cr = ideal.coefficient_ring()?;
    if !ring.as_ideal().is_sublattice_of(cr.as_ideal()) {
        return Err(Error::NotAnOrder(
            "the ideal is not a module over the given order".into(),
        ));
    }
    Ok(())
}

/// A generating set for `ideal` as a module over `ring`, of size at most n.
///
/// Single elements are tried first (each member of the Z-basis), then the
/// Z-basis seed — which always generates, since Z ⊆ R — is greedily thinned
/// by removing members whose absence keeps the module span intact. The
/// result is not guaranteed minimal. `budget` caps the number of span
/// computations.
pub fn generators_over_order(
    ideal: &FracIdeal,
    ring: &OrderRing,
    budget: usize,
) -> Result<Vec<FieldElem>> {
    require_module(ideal, ring)?;
    if *ideal == *ring.as_ideal() {
        return Ok(vec![ideal.ctx().one()]);
    }
    let scalars = Scalars::Order(ring.clone());
    let mut remaining = budget;
    let spans_to = |gens: &[FieldElem], remaining: &mut usize| -> Result<bool> {
        if *remaining == 0 {
            return Err(Error::SearchExhausted(
                "generator search exceeded its span budget".into(),
            ));
        }
        *remaining -= 1;
        Ok(ideal_from_elements(gens, &scalars)? == *ideal)
    };
    let basis = ideal.basis_elems();
    for g in &basis {
        if spans_to(std::slice::from_ref(g), &mut remaining)? {
            return Ok(vec![g.clone()]);
        }
    }
    let mut gens = basis;
    let mut i = 0;
    while i < gens.len() && gens.len() > 1 {
        let mut candidate = gens.clone();
        candidate.remove(i);
        if spans_to(&candidate, &mut remaining)? {
            gens = candidate;
        } else {
            i += 1;
        }
    }
    Ok(gens)
}

/// A verified semiconjugacy from the ideal's automorphism A to ⊕ᵏC_R: the
/// stacked intertwiners, a unimodular completion M with M⁻¹(⊕C_R)M in the
/// form [[A, S], [0, D]], the generator data, and both eigenbases.
#[derive(Clone, Debug)]
pub struct Semiconjugacy {
    data: GeneratorData,
    embed: IntMat,
    m: IntMat,
    form: TriangularForm,
    u: Vec<FieldElem>,
    w: Vec<FieldElem>,
    c_r: Automorphism,
}

impl Semiconjugacy {
    pub fn data(&self) -> &GeneratorData {
        &self.data
    }

    pub fn embed(&self) -> &IntMat {
        &self.embed
    }

    pub fn m(&self) -> &IntMat {
        &self.m
    }

    pub fn form(&self) -> &TriangularForm {
        &self.form
    }

    pub fn u(&self) -> &[FieldElem] {
        &self.u
    }

    pub fn w(&self) -> &[FieldElem] {
        &self.w
    }

    pub fn c_r(&self) -> &Automorphism {
        &self.c_r
    }

    pub fn a(&self) -> &Automorphism {
        &self.form.a
    }

    pub fn k(&self) -> usize {
        self.data.k()
    }

    fn n(&self) -> usize {
        self.c_r.dim()
    }
}

/// Builds the semiconjugacy from A to ⊕ᵏC_R induced by a generating set of
/// the ideal over the order.
///
/// Requires the order to contain β (so that C_R is an integer matrix) and
/// the defining polynomial to have unit constant term; both are enforced by
/// the conversion of lattices to automorphisms.
pub fn semiconjugacy_from_generators(
    ideal: &FracIdeal,
    ring: &OrderRing,
) -> Result<Semiconjugacy> {
    require_module(ideal, ring)?;
    let (c_r, w) = ideal_to_matrix(ring.as_ideal())?;
    let (a, u) = ideal_to_matrix(ideal)?;
    let gens = generators_over_order(ideal, ring, GENERATOR_SPAN_BUDGET)?;
    let k = gens.len();
    let n = c_r.dim();
    let mut xs = Vec::with_capacity(k);
    for g in &gens {
        let x = expressing_matrix(&scale_all(g, &w), &u)?;
        if c_r.mat().mul(&x) != x.mul(a.mat()) {
            return Err(Error::Internal(
                "generator matrix does not intertwine the two actions".into(),
            ));
        }
        xs.push(x);
    }
    let grid: Vec<Vec<&IntMat>> = xs.iter().map(|x| vec![x]).collect();
    let embed = IntMat::from_blocks(&grid);
    let (m, form) = complete_embedding(&embed, &c_r, k)?;
    if form.a.mat() != a.mat() {
        return Err(Error::Internal(
            "completion induced a different automorphism than the ideal's".into(),
        ));
    }
    let wmat = m.inverse_unimodular()?;
    let ys: Vec<IntMat> = (0..k).map(|j| wmat.block(0, j * n, n, n)).collect();
    let mut sum = IntMat::zero(n, n);
    for (y, x) in ys.iter().zip(&xs) {
        sum = sum.add(&y.mul(x));
    }
    if !sum.is_identity() {
        return Err(Error::Internal(
            "left-inverse row failed to resolve the identity".into(),
        ));
    }
    Ok(Semiconjugacy {
        data: GeneratorData { gens, xs, ys },
        embed,
        m,
        form,
        u,
        w,
        c_r,
    })
}

/// The product of an integer matrix with a vector of field elements.
fn matvec(mat: &IntMat, elems: &[FieldElem]) -> Vec<FieldElem> {
    debug_assert_eq!(mat.cols(), elems.len());
    let ctx = elems[0].ctx();
    (0..mat.rows())
        .map(|p| {
            let mut acc = ctx.zero();
            for (q, e) in elems.iter().enumerate() {
                acc = acc.add(&e.mul(&ctx.from_integer(mat.get(p, q).clone())));
            }
            acc
        })
        .collect()
}

/// A Z-generating family for ker(ψ) ⊂ ⊕ᵏR, where ψ(x₁,…,x_k) = Σ a_ix_i:
/// for i = 2..k the stack v_i = (W_{2i}w; …; W_{ki}w) collects the columns
/// of the last (k−1)n rows of W = M⁻¹. Each v_i is a β-eigenvector of the
/// lower diagonal block D, and together with v₁ the family satisfies the
/// single dependence Σ a_iv_i = 0.
#[derive(Clone, Debug)]
pub struct KernelPsiBasis {
    vectors: Vec<Vec<FieldElem>>,
}

impl KernelPsiBasis {
    /// v₂..v_k, each a stack of (k−1) n-vectors of field elements.
    pub fn vectors(&self) -> &[Vec<FieldElem>] {
        &self.vectors
    }
}

/// Computes the kernel basis from a completion `m`, which must be a
/// verified completion for `semi`: unimodular, extending the stacked
/// intertwiners as its first block column, and conjugating ⊕ᵏC_R to
/// triangular form over A.
pub fn kernel_psi_basis(m: &IntMat, semi: &Semiconjugacy) -> Result<KernelPsiBasis> {
    let n = semi.n();
    let k = semi.k();
    if m.rows() != k * n || m.cols() != k * n {
        return Err(Error::Dimension(format!(
            "completion is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            k * n,
            k * n
        )));
    }
    if m.det().abs() != BigInt::one() {
        return Err(Error::NotUnimodular);
    }
    if m.block(0, 0, k * n, n) != semi.embed {
        return Err(Error::InvalidWitness(
            "completion does not extend the stacked intertwiners".into(),
        ));
    }
    let wmat = m.inverse_unimodular()?;
    let conj = wmat.mul(&semi.c_r.mat().diag_copies(k)).mul(m);
    if k > 1 && !conj.block(n, 0, (k - 1) * n, n).is_zero() {
        return Err(Error::InvalidWitness(
            "conjugate of the block sum is not triangular".into(),
        ));
    }
    if conj.block(0, 0, n, n) != *semi.form.a.mat() {
        return Err(Error::InvalidWitness(
            "completion induces a different automorphism".into(),
        ));
    }
    let d = conj.block(n, n, (k - 1) * n, (k - 1) * n);
    let beta = semi.c_r.ctx().beta();
    let stack = |i: usize| -> Vec<FieldElem> {
        let mut v = Vec::with_capacity((k - 1) * n);
        for j in 2..=k {
            v.extend(matvec(&wmat.block((j - 1) * n, (i - 1) * n, n, n), &semi.w));
        }
        v
    };
    let vectors: Vec<Vec<FieldElem>> = (2..=k).map(stack).collect();
    for v in &vectors {
        let dv = matvec(&d, v);
        for (p, e) in dv.iter().enumerate() {
            if *e != beta.mul(&v[p]) {
                return Err(Error::Internal(
                    "kernel vector is not a β-eigenvector of the lower block".into(),
                ));
            }
        }
    }
    let v1 = stack(1);
    for p in 0..(k - 1) * n {
        let mut acc = semi.data.gens[0].mul(&v1[p]);
        for (i, v) in vectors.iter().enumerate() {
            acc = acc.add(&semi.data.gens[i + 1].mul(&v[p]));
        }
        if !acc.is_zero() {
            return Err(Error::Internal(
                "the generator dependence relation failed".into(),
            ));
        }
    }
    Ok(KernelPsiBasis { vectors })
}

/// θ_β(t) for t ∈ I: the element of ker(ψ) — one component per i = 2..k,
/// namely −s₁(A − βIₙ)Y_i·w with s₁ the coordinate row of t in the u-basis
/// — by which multiplication by β on I ⊕ ker(ψ) fails to act diagonally.
/// The completion's action sends (t, x₂, …, x_k) to
/// (βt, βx₂ + θ_β(t)⁽²⁾, …, βx_k + θ_β(t)⁽ᵏ⁾).
pub fn theta_beta(t: &FieldElem, semi: &Semiconjugacy) -> Result<Vec<FieldElem>> {
    let s1 = integer_coords_in_basis(t, &semi.u)?;
    let ctx = semi.c_r.ctx();
    let beta = ctx.beta();
    let k = semi.k();
    let mut out = Vec::with_capacity(k.saturating_sub(1));
    for i in 1..k {
        let r = matvec(&semi.data.ys[i], &semi.w);
        let ar = matvec(semi.form.a.mat(), &r);
        let mut acc = ctx.zero();
        for p in 0..r.len() {
            let diff = ar[p].sub(&beta.mul(&r[p]));
            acc = acc.add(&diff.mul(&ctx.from_integer(s1[p].clone())));
        }
        out.push(acc.neg());
    }
    Ok(out)
}

/// θ_y(t) for y ∈ R and t ∈ I: the kernel components of the action of p(Â)
/// on (t, 0, …, 0), where p is the polynomial with p(β) = y — membership of
/// y in R makes p(C_R) an integer matrix. Satisfies the cocycle law
/// θ_{yz}(t) = θ_y(zt) + y·θ_z(t) and restricts to [`theta_beta`] at y = β.
pub fn theta_y(y: &FieldElem, t: &FieldElem, semi: &Semiconjugacy) -> Result<Vec<FieldElem>> {
    let n = semi.n();
    let k = semi.k();
    let p_cr = expressing_matrix(&scale_all(y, &semi.w), &semi.w)?;
    let s1 = integer_coords_in_basis(t, &semi.u)?;
    let wmat = semi.m.inverse_unimodular()?;
    let phat = wmat.mul(&p_cr.diag_copies(k)).mul(&semi.m);
    let mut row = vec![BigInt::zero(); k * n];
    for (p, s) in s1.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        for (c, entry) in row.iter_mut().enumerate() {
            *entry += s * phat.get(p, c);
        }
    }
    debug_assert_eq!(
        integer_coords_in_basis(&y.mul(t), &semi.u).ok().as_deref(),
        Some(&row[..n]),
        "the first block of the pushed action must return the coordinates of y·t"
    );
    let ctx = semi.c_r.ctx();
    let mut out = Vec::with_capacity(k.saturating_sub(1));
    for i in 2..=k {
        let mut acc = ctx.zero();
        for j in 2..=k {
            let wji = matvec(&wmat.block((j - 1) * n, (i - 1) * n, n, n), &semi.w);
            for (q, e) in wji.iter().enumerate() {
                acc = acc.add(&e.mul(&ctx.from_integer(row[(j - 1) * n + q].clone())));
            }
        }
        out.push(acc);
    }
    Ok(out)
}
