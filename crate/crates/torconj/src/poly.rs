//! Integer polynomials, constant coefficient first, with an exact
//! irreducibility test for the monic desk-scale inputs this library handles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer polynomial; `coeffs[k]` multiplies `t^k` and the leading
/// coefficient is nonzero (the zero polynomial stores a single zero).
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![BigInt::zero()] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact division by a monic divisor; `None` when the remainder is
    /// nonzero.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(divisor.is_monic(), "divisor must be monic");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let d = divisor.degree();
        let qlen = self.degree() - d + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + d].clone();
            if c.is_zero() {
                continue;
            }
            quot[k] = c.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &c * dc;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// Exhaustive irreducibility test over the integers for monic
    /// polynomials: rational-root check for linear factors, then monic
    /// degree-`d` factors for `2 <= d <= degree/2`, recovered by divisor
    /// choices at `d + 1` sample points and Lagrange interpolation. Every
    /// monic integer factor takes divisor values at integer points, so the
    /// enumeration is complete.
    ///
    /// Returns a nontrivial monic factor when one exists.
    pub fn monic_irreducible_check(&self) -> Result<(), IntPoly> {
        assert!(self.is_monic(), "irreducibility test expects a monic polynomial");
        let n = self.degree();
        if n <= 1 {
            return Ok(());
        }
        if self.coeff(0).is_zero() {
            return Err(IntPoly::from_i64(&[0, 1]));
        }
        for r in signed_divisors(self.coeff(0)) {
            if self.eval(&r).is_zero() {
                return Err(IntPoly::new(vec![-r, BigInt::one()]));
            }
        }
        for d in 2..=n / 2 {
            if let Some(g) = self.find_monic_factor_of_degree(d) {
                return Err(g);
            }
        }
        Ok(())
    }

    fn find_monic_factor_of_degree(&self, d: usize) -> Option<IntPoly> {
        let points: Vec<BigInt> = sample_points(d + 1);
        let values: Vec<BigInt> = points.iter().map(|p| self.eval(p)).collect();
        debug_assert!(values.iter().all(|v| !v.is_zero()), "roots were excluded earlier");
        let divisor_lists: Vec<Vec<BigInt>> =
            values.iter().map(signed_divisors).collect();
        let mut choice = vec![0usize; points.len()];
        loop {
            let samples: Vec<BigRational> = choice
                .iter()
                .enumerate()
                .map(|(i, &c)| BigRational::from_integer(divisor_lists[i][c].clone()))
                .collect();
            if let Some(g) = interpolate_monic_integer(&points, &samples, d) {
                if self.div_exact_monic(&g).is_some() {
                    return Some(g);
                }
            }
            let mut k = 0;
            loop {
                choice[k] += 1;
                if choice[k] < divisor_lists[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
                if k == choice.len() {
                    return None;
                }
            }
        }
    }
}

impl std::fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
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

/// 0, 1, -1, 2, -2, ... (`count` of them).
fn sample_points(count: usize) -> Vec<BigInt> {
    let mut pts = Vec::with_capacity(count);
    let mut k = 0i64;
    while pts.len() < count {
        if k == 0 {
            pts.push(BigInt::zero());
        } else {
            pts.push(BigInt::from(k));
            if pts.len() < count {
                pts.push(BigInt::from(-k));
            }
        }
        k += 1;
    }
    pts
}

/// All divisors of `v` with both signs, `v != 0`.
fn signed_divisors(v: &BigInt) -> Vec<BigInt> {
    let n = v.abs();
    assert!(!n.is_zero());
    let mut positive = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            positive.push(d.clone());
            let q = &n / &d;
            if q != d {
                positive.push(q);
            }
        }
        d += 1;
    }
    positive.sort();
    let mut out = Vec::with_capacity(positive.len() * 2);
    for p in positive {
        out.push(p.clone());
        out.push(-p);
    }
    out
}

/// Lagrange interpolation through `(points[i], values[i])`; keeps the result
/// only when it is an integer monic polynomial of exact degree `d`.
fn interpolate_monic_integer(
    points: &[BigInt],
    values: &[BigRational],
    d: usize,
) -> Option<IntPoly> {
    let m = points.len();
    let mut acc = vec![BigRational::zero(); m];
    for i in 0..m {
        let mut basis = vec![BigRational::zero(); m];
        basis[0] = BigRational::one();
        let mut len = 1;
        let mut denom = BigRational::one();
        for j in 0..m {
            if j == i {
                continue;
            }
            let xj = BigRational::from_integer(points[j].clone());
            for k in (0..len).rev() {
                let shifted = basis[k].clone();
                basis[k + 1] = &basis[k + 1] + &shifted;
                basis[k] = -&xj * &shifted;
            }
            len += 1;
            denom *= BigRational::from_integer(&points[i] - &points[j]);
        }
        let scale = &values[i] / denom;
        for k in 0..m {
            acc[k] = &acc[k] + &basis[k] * &scale;
        }
    }
    if acc.iter().skip(d + 1).any(|c| !c.is_zero()) {
        return None;
    }
    if acc.len() <= d || !acc[d].is_one() {
        return None;
    }
    if acc.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(IntPoly::new(acc.into_iter().take(d + 1).map(|c| c.to_integer()).collect()))
}
