//! Arithmetic in K = Q[t]/(f) for a monic irreducible integer polynomial f.
//! Elements carry a shared context so mixed-context arithmetic is caught.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::RatMat;
use crate::poly::IntPoly;

/// How irreducibility of the modulus was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Verified,
    Assumed,
}

#[derive(Debug)]
struct MinPolyInner {
    poly: IntPoly,
    irreducibility: Irreducibility,
    /// Coordinate rows of beta^n .. beta^(2n-2) in the power basis, used to
    /// reduce products.
    reduction: Vec<Vec<BigInt>>,
}

/// Shared context: a monic irreducible integer polynomial of degree >= 2.
#[derive(Clone, Debug)]
pub struct MinPoly {
    inner: Arc<MinPolyInner>,
}

impl PartialEq for MinPoly {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.poly == other.inner.poly
    }
}

impl Eq for MinPoly {}

impl MinPoly {
    /// Builds a context after verifying monicity, degree, and irreducibility.
    pub fn new(poly: IntPoly) -> Result<Self> {
        if !poly.is_monic() {
            return Err(Error::NotMonic);
        }
        match poly.monic_irreducible_check() {
            Ok(()) => {}
            Err(factor) => return Err(Error::Reducible(format!("factor {factor}"))),
        }
        Self::build(poly, Irreducibility::Verified)
    }

    /// Builds a context without the irreducibility search; the caller asserts
    /// irreducibility. Monicity and degree are still enforced.
    pub fn new_assumed(poly: IntPoly) -> Result<Self> {
        Self::build(poly, Irreducibility::Assumed)
    }

    fn build(poly: IntPoly, irreducibility: Irreducibility) -> Result<Self> {
        if !poly.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = poly.degree();
        if n < 2 {
            return Err(Error::BadDegree(format!("degree {n}, need at least 2")));
        }
        if poly.coeff(0).is_zero() {
            return Err(Error::Reducible("t divides the polynomial".into()));
        }
        let mut reduction: Vec<Vec<BigInt>> = Vec::with_capacity(n.max(1) - 1);
        // beta^n = -(c_0 + c_1 beta + ... + c_{n-1} beta^{n-1})
        let base: Vec<BigInt> = (0..n).map(|k| -poly.coeff(k)).collect();
        reduction.push(base);
        for _ in 1..n - 1 {
            let prev = reduction.last().unwrap().clone();
            // multiply by beta: shift, then fold the overflowing beta^n term
            let carry = prev[n - 1].clone();
            let mut next = vec![BigInt::zero(); n];
            next[1..n].clone_from_slice(&prev[..n - 1]);
            for (k, entry) in next.iter_mut().enumerate() {
                *entry += &carry * &reduction[0][k];
            }
            reduction.push(next);
        }
        Ok(MinPoly { inner: Arc::new(MinPolyInner { poly, irreducibility, reduction }) })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.inner.poly
    }

    pub fn degree(&self) -> usize {
        self.inner.poly.degree()
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.inner.irreducibility
    }

    /// True when the constant term is +1 or -1, i.e. the root is a unit in
    /// the ring of integers.
    pub fn has_unit_constant(&self) -> bool {
        self.inner.poly.coeff(0).abs().is_one()
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { coords: vec![BigRational::zero(); self.degree()], ctx: self.clone() }
    }

    pub fn one(&self) -> FieldElem {
        self.from_integer(BigInt::one())
    }

    pub fn beta(&self) -> FieldElem {
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[1] = BigRational::one();
        FieldElem { coords, ctx: self.clone() }
    }

    pub fn from_integer(&self, v: BigInt) -> FieldElem {
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[0] = BigRational::from_integer(v);
        FieldElem { coords, ctx: self.clone() }
    }

    pub fn from_coords(&self, coords: Vec<BigRational>) -> FieldElem {
        assert_eq!(coords.len(), self.degree(), "coordinate length must equal the degree");
        FieldElem { coords, ctx: self.clone() }
    }

    pub fn from_int_coords(&self, coords: &[i64]) -> FieldElem {
        self.from_coords(
            coords.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        )
    }
}

/// Element of K in power-basis coordinates (rationals of length n).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    coords: Vec<BigRational>,
    ctx: MinPoly,
}

impl FieldElem {
    pub fn ctx(&self) -> &MinPoly {
        &self.ctx
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &BigRational {
        &self.coords[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    fn assert_ctx(&self, other: &FieldElem) {
        assert_eq!(self.ctx, other.ctx, "field elements from different contexts");
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        self.assert_ctx(other);
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        FieldElem { coords, ctx: self.ctx.clone() }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.assert_ctx(other);
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        FieldElem { coords, ctx: self.ctx.clone() }
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem { coords: self.coords.iter().map(|a| -a).collect(), ctx: self.ctx.clone() }
    }

    pub fn scale(&self, k: &BigRational) -> FieldElem {
        FieldElem { coords: self.coords.iter().map(|a| a * k).collect(), ctx: self.ctx.clone() }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        self.assert_ctx(other);
        let n = self.ctx.degree();
        let mut conv = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] = &conv[i + j] + a * b;
            }
        }
        let mut coords: Vec<BigRational> = conv[..n].to_vec();
        for (extra, row) in self.ctx.inner.reduction.iter().enumerate() {
            let c = &conv[n + extra];
            if c.is_zero() {
                continue;
            }
            for k in 0..n {
                coords[k] = &coords[k] + c * BigRational::from_integer(row[k].clone());
            }
        }
        FieldElem { coords, ctx: self.ctx.clone() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[t].
    pub fn invert(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = self.ctx.degree();
        // r0 = f, r1 = self; track s only for r1's side: s_k with
        // s_k * self == r_k (mod f).
        let mut r0: Vec<BigRational> = self
            .ctx
            .poly()
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut r1 = self.coords.clone();
        trim(&mut r1);
        let mut s0 = vec![BigRational::zero()];
        let mut s1 = vec![BigRational::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, rem) = poly_divmod(&r0, &r1);
            let s_next = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_next;
        }
        // r0 is a nonzero constant multiple of gcd(f, self) = 1.
        if r0.len() != 1 || r0[0].is_zero() {
            return Err(Error::Internal("gcd with an irreducible modulus must be constant".into()));
        }
        let inv_lead = BigRational::one() / &r0[0];
        let mut coords = vec![BigRational::zero(); n];
        for (k, c) in s0.iter().enumerate() {
            if k < n {
                coords[k] = c * &inv_lead;
            }
        }
        let candidate = FieldElem { coords, ctx: self.ctx.clone() };
        debug_assert!(candidate.mul(self).is_one(), "inverse must verify");
        Ok(candidate)
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&other.invert()?))
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by `self` on the power basis, acting on
    /// coordinate columns.
    pub fn mult_matrix_power_basis(&self) -> RatMat {
        let n = self.ctx.degree();
        let mut m = RatMat::zero(n, n);
        let mut col = self.clone();
        for j in 0..n {
            for i in 0..n {
                m.set(i, j, col.coord(i).clone());
            }
            if j + 1 < n {
                col = col.mul(&self.ctx.beta());
            }
        }
        m
    }

    /// Field norm: determinant of multiplication by `self`.
    pub fn norm(&self) -> BigRational {
        self.mult_matrix_power_basis().det()
    }

    /// True when `f(self) == 0`, i.e. the element is a conjugate root of the
    /// modulus. Viewing the coordinates as a polynomial p of degree < n,
    /// this is the test that p maps the root to one of its conjugates.
    pub fn is_conjugate_root(&self) -> bool {
        let mut acc = self.ctx.zero();
        for c in self.ctx.poly().coeffs().iter().rev() {
            acc = acc.mul(self);
            acc = acc.add(&self.ctx.from_integer(c.clone()));
        }
        acc.is_zero()
    }

    /// Evaluates the coordinates of `self`, read as a polynomial, at `x`.
    pub fn eval_as_polynomial(&self, x: &FieldElem) -> FieldElem {
        assert_eq!(self.ctx, *x.ctx(), "field elements from different contexts");
        let mut acc = x.ctx().zero();
        for c in self.coords.iter().rev() {
            acc = acc.mul(x);
            acc = acc.add(&x.ctx().from_coords({
                let mut v = vec![BigRational::zero(); x.ctx().degree()];
                v[0] = c.clone();
                v
            }));
        }
        acc
    }

    /// Common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        let mut d = BigInt::one();
        for c in &self.coords {
            d = d.lcm(c.denom());
        }
        d
    }

    /// Coordinates scaled by `scale`, when that clears all denominators.
    pub fn scaled_integer_coords(&self, scale: &BigInt) -> Option<Vec<BigInt>> {
        let s = BigRational::from_integer(scale.clone());
        let mut out = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            let v = c * &s;
            if !v.is_integer() {
                return None;
            }
            out.push(v.to_integer());
        }
        Some(out)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}·")?;
                    }
                    if k == 1 {
                        write!(f, "b")?;
                    } else {
                        write!(f, "b^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Matrix `C` with `C * basis == x * basis` entrywise: row `i` of `C` holds
/// the coordinates of `x * basis[i]` in `basis`. Errors when the basis is
/// linearly dependent.
pub fn mult_matrix(x: &FieldElem, basis: &[FieldElem]) -> Result<RatMat> {
    let n = x.ctx().degree();
    if basis.len() != n {
        return Err(Error::Dimension(format!("basis needs {n} elements, got {}", basis.len())));
    }
    for b in basis {
        if *b.ctx() != *x.ctx() {
            return Err(Error::ContextMismatch);
        }
    }
    // U has column i = coords(basis[i]); solve U * Y = T_x * U, C = Y^T.
    let mut u = RatMat::zero(n, n);
    for (i, b) in basis.iter().enumerate() {
        for r in 0..n {
            u.set(r, i, b.coord(r).clone());
        }
    }
    let tx = x.mult_matrix_power_basis();
    let rhs = tx.mul(&u);
    let y = u.solve_right(&rhs).ok_or(Error::DependentBasis)?;
    Ok(y.transpose())
}

/// Integer coordinates of `x` in the given Q-basis of K. Errors when the
/// basis is dependent or the coordinates are not integral.
pub fn integer_coords_in_basis(x: &FieldElem, basis: &[FieldElem]) -> Result<Vec<BigInt>> {
    let n = x.ctx().degree();
    if basis.len() != n {
        return Err(Error::Dimension(format!("basis needs {n} elements, got {}", basis.len())));
    }
    let mut u = RatMat::zero(n, n);
    let mut rhs = RatMat::zero(n, 1);
    for (j, b) in basis.iter().enumerate() {
        if *b.ctx() != *x.ctx() {
            return Err(Error::ContextMismatch);
        }
        for i in 0..n {
            u.set(i, j, b.coord(i).clone());
        }
    }
    for i in 0..n {
        rhs.set(i, 0, x.coord(i).clone());
    }
    let sol = u.solve_right(&rhs).ok_or(Error::DependentBasis)?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let v = sol.get(i, 0);
        if !v.is_integer() {
            return Err(Error::NotInLattice);
        }
        out.push(v.to_integer());
    }
    Ok(out)
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (k, x) in a.iter().enumerate() {
        out[k] = x.clone();
    }
    for (k, y) in b.iter().enumerate() {
        out[k] = &out[k] - y;
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    assert!(!(b.len() == 1 && b[0].is_zero()), "division by the zero polynomial");
    if rem.len() - 1 < db || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    let lead = b[db].clone();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (j, bc) in b.iter().enumerate() {
            rem[k + j] = &rem[k + j] - &c * bc;
        }
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}
