//! The bridge between integer matrices and fractional ideals: an
//! automorphism with irreducible characteristic polynomial f determines an
//! ideal class through an eigenvector for the root β, conjugacy classes of
//! matrices correspond to arithmetic classes of ideals, and intertwiners
//! between two automorphisms form a lattice isomorphic to an ideal quotient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{mult_matrix, FieldElem, MinPoly};
use crate::ideal::FracIdeal;
use crate::linalg::IntMat;
use crate::poly::IntPoly;

/// An element of GL_n(Z) with irreducible characteristic polynomial,
/// carrying its number-field context.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Automorphism {
    mat: IntMat,
    ctx: MinPoly,
}

impl Automorphism {
    /// Verifies unimodularity and (exhaustively) the irreducibility of the
    /// characteristic polynomial.
    pub fn new(mat: IntMat) -> Result<Self> {
        let f = Self::unimodular_charpoly(&mat)?;
        let ctx = MinPoly::new(f)?;
        Ok(Automorphism { mat, ctx })
    }

    /// Like [`Automorphism::new`] but trusts the caller on irreducibility.
    pub fn new_assumed(mat: IntMat) -> Result<Self> {
        let f = Self::unimodular_charpoly(&mat)?;
        let ctx = MinPoly::new_assumed(f)?;
        Ok(Automorphism { mat, ctx })
    }

    /// Attaches an existing context, verifying that the characteristic
    /// polynomial matches it.
    pub fn with_context(mat: IntMat, ctx: MinPoly) -> Result<Self> {
        let f = Self::unimodular_charpoly(&mat)?;
        if f != *ctx.poly() {
            return Err(Error::CharpolyMismatch);
        }
        Ok(Automorphism { mat, ctx })
    }

    fn unimodular_charpoly(mat: &IntMat) -> Result<IntPoly> {
        if !mat.is_square() {
            return Err(Error::Dimension(format!(
                "automorphisms are square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let f = mat.charpoly();
        // det(A) = (−1)ⁿ f(0), so unimodularity is a unit constant term
        if !f.coeff(0).abs().is_one() {
            return Err(Error::NotUnimodular);
        }
        Ok(f)
    }

    pub fn mat(&self) -> &IntMat {
        &self.mat
    }

    pub fn ctx(&self) -> &MinPoly {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }
}

/// An eigenvector for β together with the fractional ideal its components
/// span: A·u = β·u componentwise, and the components of u form a Z-basis of
/// the ideal.
#[derive(Clone, Debug)]
pub struct EigenData {
    u: Vec<FieldElem>,
    ideal: FracIdeal,
}

impl EigenData {
    pub fn components(&self) -> &[FieldElem] {
        &self.u
    }

    pub fn ideal(&self) -> &FracIdeal {
        &self.ideal
    }

    /// Eigen data whose vector is the HNF basis of the ideal itself (the
    /// ideal must be β-closed for the eigen relation to have an integer
    /// matrix; this constructor does not insist on that).
    pub fn from_ideal_basis(ideal: FracIdeal) -> EigenData {
        EigenData { u: ideal.basis_elems(), ideal }
    }
}

/// Builds the eigenvector of `a` for β as the first nonzero column of
/// adj(A − βI), divided by its global integer content, and the ideal spanned
/// by its components. The eigen relation A·u = β·u is checked exactly.
pub fn matrix_to_ideal(a: &Automorphism) -> EigenData {
    let n = a.dim();
    let ctx = a.ctx();
    let (_, ms) = a.mat().faddeev();
    // adj(A − βI) = (−1)^{n−1} · adj(βI − A) and adj(tI − A) = Σ t^k M_{n−k},
    // so entry (i,j) has k-th coordinate (−1)^{n−1} (M_{n−k})_{ij}.
    let flip = (n - 1) % 2 == 1;
    let column_coords = |j: usize| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        let v = ms[n - 1 - k].get(i, j).clone();
                        if flip {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let col = (0..n)
        .map(column_coords)
        .find(|col| col.iter().any(|coords| coords.iter().any(|c| !c.is_zero())))
        .expect("an irreducible characteristic polynomial forces a nonzero adjugate column");
    let mut content = BigInt::zero();
    for coords in &col {
        for c in coords {
            content = content.gcd(c);
        }
    }
    let u: Vec<FieldElem> = col
        .iter()
        .map(|coords| {
            ctx.from_coords(
                coords.iter().map(|c| BigRational::from_integer(c / &content)).collect(),
            )
        })
        .collect();
    // eigen relation, exactly
    let beta = ctx.beta();
    for i in 0..n {
        let mut lhs = ctx.zero();
        for (j, component) in u.iter().enumerate() {
            lhs = lhs.add(&component.scale(&BigRational::from_integer(a.mat().get(i, j).clone())));
        }
        assert_eq!(lhs, u[i].mul(&beta), "eigen relation must hold for the adjugate column");
    }
    let ideal = FracIdeal::from_rational_rows(
        ctx.clone(),
        u.iter().map(|e| e.coords().to_vec()).collect(),
    )
    .expect("eigenvector components of an irreducible automorphism span full rank");
    EigenData { u, ideal }
}

/// Rebuilds an automorphism from a β-closed ideal: the matrix of
/// multiplication by β on the HNF basis. Requires |f(0)| = 1 so the result
/// is unimodular.
pub fn ideal_to_matrix(ideal: &FracIdeal) -> Result<(Automorphism, Vec<FieldElem>)> {
    let ctx = ideal.ctx();
    if !ctx.has_unit_constant() {
        return Err(Error::NonUnitModulus);
    }
    if !ideal.is_beta_closed() {
        return Err(Error::NotInLattice);
    }
    let basis = ideal.basis_elems();
    let m = mult_matrix(&ctx.beta(), &basis)?;
    let mat = m.to_integer().expect("β-closure makes the multiplication matrix integral");
    let auto = Automorphism::with_context(mat, ctx.clone())?;
    Ok((auto, basis))
}

/// The lattice Λ(target, source) = { X ∈ M_n(Z) : target·X = X·source }.
#[derive(Clone, Debug)]
pub struct IntertwinerLattice {
    basis: Vec<IntMat>,
    source: Automorphism,
    target: Automorphism,
}

impl IntertwinerLattice {
    pub fn basis(&self) -> &[IntMat] {
        &self.basis
    }

    pub fn source(&self) -> &Automorphism {
        &self.source
    }

    pub fn target(&self) -> &Automorphism {
        &self.target
    }

    /// Whether the matrix satisfies target·X = X·source.
    pub fn is_member(&self, x: &IntMat) -> bool {
        self.target.mat().mul(x) == x.mul(self.source.mat())
    }

    /// Integer coordinates of `x` in the stored Z-basis.
    pub fn coords_of(&self, x: &IntMat) -> Option<Vec<BigInt>> {
        let n2 = x.rows() * x.cols();
        let rows: Vec<Vec<BigInt>> = self.basis.iter().map(|b| b.vec_entries()).collect();
        let stacked = IntMat::from_rows(rows, n2);
        stacked.solve_left(&x.vec_entries())
    }
}

/// Z-basis of the solution lattice of `target·X = X·source` for arbitrary
/// square integer matrices of equal size; possibly empty.
pub(crate) fn commutation_kernel(target: &IntMat, source: &IntMat) -> Vec<IntMat> {
    let n = target.rows();
    assert_eq!(target.cols(), n);
    assert_eq!(source.rows(), n);
    assert_eq!(source.cols(), n);
    // unknowns X_{(p,q)} row-major; constraint (i,j): Σ_p T_ip X_pj − Σ_q X_iq S_qj = 0
    let mut m = IntMat::zero(n * n, n * n);
    for p in 0..n {
        for q in 0..n {
            let row = p * n + q;
            for i in 0..n {
                for j in 0..n {
                    let col = i * n + j;
                    let mut v = BigInt::zero();
                    if q == j {
                        v += target.get(i, p);
                    }
                    if p == i {
                        v -= source.get(q, j);
                    }
                    if !v.is_zero() {
                        m.set(row, col, v);
                    }
                }
            }
        }
    }
    let kernel = m.kernel_lattice();
    (0..kernel.rows())
        .map(|r| {
            IntMat::from_rows((0..n).map(|i| kernel.row(r)[i * n..(i + 1) * n].to_vec()).collect(), n)
        })
        .collect()
}

/// Z-basis of { X : B·X = X·A }, where `b` plays the target role and `a` the
/// source role. The lattice has rank n for a common irreducible
/// characteristic polynomial.
pub fn intertwiner_lattice(b: &Automorphism, a: &Automorphism) -> Result<IntertwinerLattice> {
    if a.ctx() != b.ctx() {
        return Err(Error::CharpolyMismatch);
    }
    let n = a.dim();
    let basis = commutation_kernel(b.mat(), a.mat());
    assert_eq!(basis.len(), n, "intertwiner lattice of an irreducible pair has rank n");
    let lattice =
        IntertwinerLattice { basis, source: a.clone(), target: b.clone() };
    debug_assert!(lattice.basis.iter().all(|x| lattice.is_member(x)));
    Ok(lattice)
}

/// The scalar θ with X·v = θ·u, for X an intertwiner carrying v's
/// automorphism to u's. Fails with `NotIntertwiner` when no such scalar
/// exists, which characterizes non-members exactly.
pub fn phi_iso(x: &IntMat, u: &EigenData, v: &EigenData) -> Result<FieldElem> {
    let n = u.components().len();
    if x.rows() != n || x.cols() != n {
        return Err(Error::Dimension(format!(
            "intertwiner must be {n}x{n}, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    let ctx = u.components()[0].ctx().clone();
    let image = |i: usize| -> FieldElem {
        let mut acc = ctx.zero();
        for j in 0..n {
            acc = acc
                .add(&v.components()[j].scale(&BigRational::from_integer(x.get(i, j).clone())));
        }
        acc
    };
    let u0 = &u.components()[0];
    let theta = image(0).div(u0).expect("eigenvector components are nonzero");
    for i in 1..n {
        if image(i) != theta.mul(&u.components()[i]) {
            return Err(Error::NotIntertwiner);
        }
    }
    Ok(theta)
}
