//! Exact integer and rational matrices: Hermite normal form with unimodular
//! transform, fraction-free determinants, characteristic polynomials,
//! adjugates, kernel lattices, and integer linear solving.
//!
//! Lattices are spanned by matrix rows throughout. The Hermite normal form is
//! row-style: zero rows at the bottom, pivot columns strictly increasing,
//! pivots positive, and every entry above a pivot reduced into [0, pivot).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Dense integer matrix with row-major `BigInt` storage.
///
/// Zero-row matrices are permitted so kernel bases and empty block edges can
/// be represented; textual input enforces at least one row and column.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(rows * cols, data.len(), "entry count must match dimensions");
        IntMat { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigInt> {
        self.row(i).to_vec()
    }

    /// Rows as a flat row-major vector, for vectorized linear systems.
    pub fn vec_entries(&self) -> Vec<BigInt> {
        self.data.clone()
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        IntMat { rows: r, cols, data }
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if i == j && !e.is_one() {
                    return false;
                }
                if i != j && !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Gcd of all entries; zero for the zero matrix.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.data {
            g = g.gcd(x);
        }
        g
    }

    pub fn block(&self, r0: usize, c0: usize, rr: usize, cc: usize) -> IntMat {
        assert!(r0 + rr <= self.rows && c0 + cc <= self.cols, "block out of range");
        let mut b = IntMat::zero(rr, cc);
        for i in 0..rr {
            for j in 0..cc {
                b.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        b
    }

    /// Assembles a matrix from a grid of blocks; row `i` of `grid` supplies
    /// the blocks of block-row `i`, which must share heights and widths.
    pub fn from_blocks(grid: &[Vec<&IntMat>]) -> IntMat {
        let total_rows: usize = grid.iter().map(|r| r[0].rows).sum();
        let total_cols: usize = grid[0].iter().map(|b| b.cols).sum();
        let mut out = IntMat::zero(total_rows, total_cols);
        let mut r0 = 0;
        for row in grid {
            let h = row[0].rows;
            let mut c0 = 0;
            for b in row {
                assert_eq!(b.rows, h, "block heights must agree within a row");
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
                c0 += b.cols;
            }
            assert_eq!(c0, total_cols, "block widths must agree across rows");
            r0 += h;
        }
        out
    }

    /// Block-diagonal sum of the given square blocks.
    pub fn direct_sum(blocks: &[&IntMat]) -> IntMat {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = IntMat::zero(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// `k` copies of `self` along the diagonal.
    pub fn diag_copies(&self, k: usize) -> IntMat {
        let blocks: Vec<&IntMat> = std::iter::repeat_n(self, k).collect();
        IntMat::direct_sum(&blocks)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }

    /// row[r] -= q * row[p]
    fn sub_scaled_row(&mut self, r: usize, p: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(r, j) - q * self.get(p, j);
            self.set(r, j, v);
        }
    }

    /// Row Hermite normal form `h` together with a unimodular `u` such that
    /// `u * self == h`.
    pub fn hnf(&self) -> HnfDecomp {
        let mut h = self.clone();
        let mut u = IntMat::identity(self.rows);
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            if (pivot_row..self.rows).all(|r| h.get(r, col).is_zero()) {
                continue;
            }
            loop {
                let best = (pivot_row..self.rows)
                    .filter(|&r| !h.get(r, col).is_zero())
                    .min_by_key(|&r| h.get(r, col).abs())
                    .expect("nonzero entry exists");
                h.swap_rows(pivot_row, best);
                u.swap_rows(pivot_row, best);
                if h.get(pivot_row, col).is_negative() {
                    h.negate_row(pivot_row);
                    u.negate_row(pivot_row);
                }
                let pivot = h.get(pivot_row, col).clone();
                let mut remaining = false;
                for r in pivot_row + 1..self.rows {
                    if h.get(r, col).is_zero() {
                        continue;
                    }
                    let q = h.get(r, col).div_floor(&pivot);
                    h.sub_scaled_row(r, pivot_row, &q);
                    u.sub_scaled_row(r, pivot_row, &q);
                    if !h.get(r, col).is_zero() {
                        remaining = true;
                    }
                }
                if !remaining {
                    break;
                }
            }
            let pivot = h.get(pivot_row, col).clone();
            for r in 0..pivot_row {
                let q = h.get(r, col).div_floor(&pivot);
                h.sub_scaled_row(r, pivot_row, &q);
                u.sub_scaled_row(r, pivot_row, &q);
            }
            pivot_row += 1;
        }
        HnfDecomp { h, u }
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let swap = (k + 1..n).find(|&r| !m.get(r, k).is_zero());
                match swap {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }

    /// Characteristic polynomial `det(tI - self)`, monic, constant term first.
    pub fn charpoly(&self) -> IntPoly {
        self.faddeev().0
    }

    /// Adjugate matrix: `self * adjugate(self) == det(self) * I`.
    pub fn adjugate(&self) -> IntMat {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return IntMat::zero(0, 0);
        }
        let (_, ms) = self.faddeev();
        let last = &ms[n - 1];
        if n % 2 == 1 { last.clone() } else { last.neg() }
    }

    /// Faddeev recursion: returns the characteristic polynomial and the
    /// auxiliary matrices `M_1..M_n` with
    /// `adj(tI - self) = sum_{k=0}^{n-1} t^k * M_{n-k}`.
    pub fn faddeev(&self) -> (IntPoly, Vec<IntMat>) {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut ms: Vec<IntMat> = Vec::with_capacity(n);
        let mut prev = IntMat::zero(n, n);
        for k in 1..=n {
            let mut mk = self.mul(&prev);
            let c = coeffs[n - k + 1].clone();
            for i in 0..n {
                let v = mk.get(i, i) + &c;
                mk.set(i, i, v);
            }
            let amk = self.mul(&mk);
            let mut tr = BigInt::zero();
            for i in 0..n {
                tr += amk.get(i, i);
            }
            let kk = BigInt::from(k);
            let (q, r) = (-tr).div_rem(&kk);
            debug_assert!(r.is_zero(), "Faddeev trace division must be exact");
            coeffs[n - k] = q;
            ms.push(mk);
            prev = ms.last().unwrap().clone();
        }
        (IntPoly::new(coeffs), ms)
    }

    /// Basis of the left kernel `{ x : x * self == 0 }` in Hermite normal
    /// form, one row per basis vector (possibly zero rows).
    pub fn kernel_lattice(&self) -> IntMat {
        let HnfDecomp { h, u } = self.hnf();
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for r in 0..self.rows {
            if h.row(r).iter().all(|x| x.is_zero()) {
                gens.push(u.row_vec(r));
            }
        }
        let stacked = IntMat::from_rows(gens, self.rows);
        let reduced = stacked.hnf().h;
        let nonzero = (0..reduced.rows()).filter(|&r| !reduced.row(r).iter().all(|x| x.is_zero()));
        let rows: Vec<Vec<BigInt>> = nonzero.map(|r| reduced.row_vec(r)).collect();
        IntMat::from_rows(rows, self.rows)
    }

    /// One integer solution of `x * self == b`, if any.
    pub fn solve_left(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.cols, "right-hand side length must match columns");
        let HnfDecomp { h, u } = self.hnf();
        let mut residual = b.to_vec();
        let mut y = vec![BigInt::zero(); self.rows];
        for (r, coeff) in y.iter_mut().enumerate() {
            let pivot_col = (0..self.cols).find(|&c| !h.get(r, c).is_zero());
            let Some(c) = pivot_col else { break };
            let pivot = h.get(r, c);
            let (q, rem) = residual[c].div_rem(pivot);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, entry) in residual.iter_mut().enumerate() {
                    *entry -= &q * h.get(r, j);
                }
            }
            *coeff = q;
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![BigInt::zero(); self.rows];
        for (r, coeff) in y.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (j, entry) in x.iter_mut().enumerate() {
                *entry += coeff * u.get(r, j);
            }
        }
        Some(x)
    }

    /// Deterministic pseudo-random unimodular matrix: a product of `steps`
    /// elementary shears with small offsets, plus sign flips.
    pub fn random_unimodular(rng: &mut impl rand::Rng, n: usize, steps: usize) -> IntMat {
        let mut m = IntMat::identity(n);
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            if i == j {
                j = (j + 1) % n;
            }
            let c = BigInt::from(rng.gen_range(-2i64..=2));
            // add c · (row j) to row i
            let mut shear = IntMat::identity(n);
            shear.set(i, j, c);
            m = shear.mul(&m);
            if rng.gen_bool(0.25) {
                let k = rng.gen_range(0..n);
                let mut flip = IntMat::identity(n);
                flip.set(k, k, -BigInt::one());
                m = flip.mul(&m);
            }
        }
        debug_assert!(m.det().abs().is_one());
        m
    }

    /// Exact inverse of a unimodular matrix (integer adjugate over `det = ±1`).
    pub fn inverse_unimodular(&self) -> Result<IntMat> {
        let d = self.det();
        if d.abs() != BigInt::one() {
            return Err(Error::NotUnimodular);
        }
        let adj = self.adjugate();
        Ok(if d.is_one() { adj } else { adj.neg() })
    }

    pub fn to_rational(&self) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of `IntMat::hnf`: `u * original == h` with `u` unimodular.
#[derive(Clone, Debug)]
pub struct HnfDecomp {
    pub h: IntMat,
    pub u: IntMat,
}

/// Particular solution and kernel basis for `x * m == b`.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: Vec<BigInt>,
    pub kernel: IntMat,
}

/// All integer solutions of `x * m == b`, described by one particular
/// solution plus the left-kernel lattice of `m`.
pub fn solve_integer(m: &IntMat, b: &[BigInt]) -> Option<LinearSolution> {
    let particular = m.solve_left(b)?;
    Some(LinearSolution { particular, kernel: m.kernel_lattice() })
}

/// Dense rational matrix; entries are always reduced with positive
/// denominator (`BigRational` maintains that form).
#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(rows * cols, data.len());
        RatMat { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        RatMat { rows: r, cols, data }
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Least common multiple of entry denominators, and the integer matrix of
    /// scaled entries: `self == ints / denom`.
    pub fn clear_denominators(&self) -> (IntMat, BigInt) {
        let mut denom = BigInt::one();
        for x in &self.data {
            denom = denom.lcm(x.denom());
        }
        let data = self.data.iter().map(|x| (x * &denom).to_integer()).collect();
        (IntMat { rows: self.rows, cols: self.cols, data }, denom)
    }

    pub fn det(&self) -> BigRational {
        assert!(self.is_square());
        let n = self.rows;
        let (ints, d) = self.clear_denominators();
        let num = ints.det();
        let mut den = BigInt::one();
        for _ in 0..n {
            den *= &d;
        }
        BigRational::new(num, den)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Solves `self * x == rhs` by Gauss-Jordan elimination; `None` when the
    /// system is singular or inconsistent. Handles tall systems of full
    /// column rank by checking the extra equations afterwards.
    pub fn solve_right(&self, rhs: &RatMat) -> Option<RatMat> {
        assert_eq!(self.rows, rhs.rows, "row counts must agree");
        let n = self.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        let mut pivot_of_col: Vec<usize> = Vec::with_capacity(n);
        let mut r = 0;
        for c in 0..n {
            let p = (r..self.rows).find(|&i| !a.get(i, c).is_zero())?;
            a.swap_rows(r, p);
            b.swap_rows(r, p);
            let inv = a.get(r, c).clone();
            for j in 0..n {
                let v = a.get(r, j) / &inv;
                a.set(r, j, v);
            }
            for j in 0..b.cols {
                let v = b.get(r, j) / &inv;
                b.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..n {
                    let v = a.get(i, j) - &f * a.get(r, j);
                    a.set(i, j, v);
                }
                for j in 0..b.cols {
                    let v = b.get(i, j) - &f * b.get(r, j);
                    b.set(i, j, v);
                }
            }
            pivot_of_col.push(r);
            r += 1;
            if r == self.rows {
                if c + 1 < n {
                    return None;
                }
                break;
            }
        }
        if pivot_of_col.len() < n {
            return None;
        }
        for i in r..self.rows {
            for j in 0..b.cols {
                if !b.get(i, j).is_zero() {
                    return None;
                }
            }
        }
        let mut x = RatMat::zero(n, rhs.cols);
        for (c, &pivot_row) in pivot_of_col.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(c, j, b.get(pivot_row, j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMat> {
        assert!(self.is_square());
        self.solve_right(&RatMat::identity(self.rows))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<IntMat> {
        if !self.is_integral() {
            return None;
        }
        let data = self.data.iter().map(|x| x.to_integer()).collect();
        Some(IntMat { rows: self.rows, cols: self.cols, data })
    }
}

impl std::fmt::Debug for RatMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RatMat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
