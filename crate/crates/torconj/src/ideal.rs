//! Fractional ideals of orders in K, represented as full-rank lattices in
//! power-basis coordinates, with exact product, quotient, coefficient ring,
//! invertibility, and the equivalence tests behind the conjugacy decision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElem, MinPoly};
use crate::linalg::{IntMat, RatMat};

const PARTITION_RANDOM_TRIES: usize = 160;
const PARTITION_ENUM_BUDGET: usize = 20_000;
const PARTITION_SHELL_MAX: i64 = 6;

/// Full-rank lattice `rowspan(basis) / den` in the power basis of β.
///
/// Canonical form: `basis` is a square integer matrix in row Hermite normal
/// form and `den` is the minimal positive denominator, so two ideals are
/// equal exactly when their fields are equal. Closure under multiplication
/// by β is a checkable property ([`FracIdeal::is_beta_closed`]), not a
/// constructor invariant: coefficient rings of non-invertible ideals are
/// naturally lattices that β may escape.
#[derive(Clone, PartialEq, Eq)]
pub struct FracIdeal {
    den: BigInt,
    basis: IntMat,
    ctx: MinPoly,
}

impl FracIdeal {
    /// The lattice generated by the given rational coordinate rows.
    pub fn from_rational_rows(ctx: MinPoly, rows: Vec<Vec<BigRational>>) -> Result<FracIdeal> {
        let n = ctx.degree();
        for row in &rows {
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "lattice rows need {n} coordinates, got {}",
                    row.len()
                )));
            }
        }
        let m = RatMat::from_rows(rows, n);
        let (cleared, den) = m.clear_denominators();
        FracIdeal::from_integer_rows(ctx, cleared, den)
    }

    /// The lattice `rowspan(mat) / den`, canonicalized.
    pub fn from_integer_rows(ctx: MinPoly, mat: IntMat, den: BigInt) -> Result<FracIdeal> {
        let n = ctx.degree();
        if mat.cols() != n {
            return Err(Error::Dimension(format!(
                "lattice rows need {n} coordinates, got {}",
                mat.cols()
            )));
        }
        assert!(den.is_positive(), "lattice denominator must be positive");
        let h = mat.hnf().h;
        let rows: Vec<Vec<BigInt>> = (0..h.rows())
            .filter(|&r| !h.row(r).iter().all(|v| v.is_zero()))
            .map(|r| h.row_vec(r))
            .collect();
        if rows.len() < n {
            return Err(Error::RankDeficient);
        }
        let basis = IntMat::from_rows(rows, n);
        let g = basis.content().gcd(&den);
        if g.is_one() {
            return Ok(FracIdeal { den, basis, ctx });
        }
        let reduced = IntMat::from_rows(
            (0..n).map(|r| basis.row(r).iter().map(|v| v / &g).collect()).collect(),
            n,
        );
        Ok(FracIdeal { den: den / g, basis: reduced, ctx })
    }

    pub fn ctx(&self) -> &MinPoly {
        &self.ctx
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    /// The Z-basis as field elements (HNF row order).
    pub fn basis_elems(&self) -> Vec<FieldElem> {
        let d = BigRational::from_integer(self.den.clone());
        (0..self.basis.rows())
            .map(|r| {
                self.ctx.from_coords(
                    self.basis
                        .row(r)
                        .iter()
                        .map(|v| BigRational::from_integer(v.clone()) / &d)
                        .collect(),
                )
            })
            .collect()
    }

    /// Integer coordinates of `x` with respect to the basis, when `x` lies
    /// in the lattice.
    pub fn coords_in_basis(&self, x: &FieldElem) -> Option<Vec<BigInt>> {
        if *x.ctx() != self.ctx {
            return None;
        }
        let scaled = x.scaled_integer_coords(&self.den)?;
        self.basis.solve_left(&scaled)
    }

    pub fn contains(&self, x: &FieldElem) -> bool {
        self.coords_in_basis(x).is_some()
    }

    pub fn is_sublattice_of(&self, other: &FracIdeal) -> bool {
        self.basis_elems().iter().all(|e| other.contains(e))
    }

    /// Whether β maps the lattice into itself.
    pub fn is_beta_closed(&self) -> bool {
        let beta = self.ctx.beta();
        self.basis_elems().iter().all(|e| self.contains(&e.mul(&beta)))
    }

    /// |det(basis)| / den^n — the covolume relative to the power lattice.
    pub fn covolume(&self) -> BigRational {
        let n = self.ctx.degree();
        let mut dn = BigInt::one();
        for _ in 0..n {
            dn *= &self.den;
        }
        BigRational::new(self.basis.det().abs(), dn)
    }

    /// Product lattice, generated by all pairwise basis products.
    pub fn mul(&self, other: &FracIdeal) -> Result<FracIdeal> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut rows = Vec::new();
        for a in self.basis_elems() {
            for b in other.basis_elems() {
                rows.push(a.mul(&b).coords().to_vec());
            }
        }
        FracIdeal::from_rational_rows(self.ctx.clone(), rows)
    }

    /// The scaled lattice x·self; `x` must be nonzero.
    pub fn scale_by_elem(&self, x: &FieldElem) -> Result<FracIdeal> {
        if *x.ctx() != self.ctx {
            return Err(Error::ContextMismatch);
        }
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let rows = self.basis_elems().iter().map(|e| e.mul(x).coords().to_vec()).collect();
        FracIdeal::from_rational_rows(self.ctx.clone(), rows)
    }

    /// Intersection of two full-rank lattices.
    pub fn intersect(&self, other: &FracIdeal) -> Result<FracIdeal> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let n = self.ctx.degree();
        let d = self.den.lcm(&other.den);
        let m1 = self.basis.scale(&(&d / &self.den));
        let m2 = other.basis.scale(&(&d / &other.den)).neg();
        let stacked = IntMat::from_blocks(&[vec![&m1], vec![&m2]]);
        let kernel = stacked.kernel_lattice();
        let y = kernel.block(0, 0, kernel.rows(), n);
        FracIdeal::from_integer_rows(self.ctx.clone(), y.mul(&m1), d)
    }

    /// The quotient lattice (self : other) = { x ∈ K : x·other ⊆ self },
    /// computed as the intersection over the basis elements u of `other` of
    /// the preimage lattices self·u⁻¹.
    pub fn quotient(&self, other: &FracIdeal) -> Result<FracIdeal> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let den = BigRational::from_integer(self.den.clone());
        let mut acc: Option<FracIdeal> = None;
        for u in other.basis_elems() {
            let uinv = u.invert().expect("basis elements of a full-rank lattice are nonzero");
            // row i of self.basis, as an element, maps to (row/den)·Tᵀ
            let t = uinv.mult_matrix_power_basis().transpose();
            let image = self.basis.to_rational().mul(&t);
            let rows: Vec<Vec<BigRational>> = (0..image.rows())
                .map(|i| image.row(i).iter().map(|v| v / &den).collect())
                .collect();
            let li = FracIdeal::from_rational_rows(self.ctx.clone(), rows)?;
            acc = Some(match acc {
                None => li,
                Some(prev) => prev.intersect(&li)?,
            });
        }
        Ok(acc.expect("lattices have at least one basis element"))
    }

    /// The coefficient ring (self : self), verified to be an order.
    pub fn coefficient_ring(&self) -> Result<OrderRing> {
        let q = self.quotient(self)?;
        let ring = OrderRing::try_new(q)
            .map_err(|e| Error::Internal(format!("coefficient ring fails ring axioms: {e}")))?;
        if self.is_beta_closed() && !ring.contains_zbeta() {
            return Err(Error::Internal(
                "coefficient ring of a β-closed lattice must contain β".into(),
            ));
        }
        Ok(ring)
    }

    /// Whether self·(R : self) = R for R the coefficient ring.
    pub fn is_invertible(&self) -> bool {
        let ring = self.coefficient_ring().expect("coefficient ring of a full-rank lattice");
        let inv = ring.as_ideal().quotient(self).expect("same context");
        let product = self.mul(&inv).expect("same context");
        product == *ring.as_ideal()
    }

    /// Weak equivalence: equal coefficient rings R and
    /// (self : other)·(other : self) = R.
    pub fn is_weakly_equivalent(&self, other: &FracIdeal) -> Result<bool> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let ri = self.coefficient_ring()?;
        let rj = other.coefficient_ring()?;
        if ri != rj {
            return Ok(false);
        }
        let x = self.quotient(other)?;
        let y = other.quotient(self)?;
        Ok(x.mul(&y)? == *ri.as_ideal())
    }

    /// Bounded search for α with α·self = other. Candidates are taken from
    /// (other : self) with coordinates of max-norm at most `bound` relative
    /// to its HNF basis, cheapest-first, filtered by the norm condition
    /// |N(α)| = covolume(other)/covolume(self) before the exact lattice
    /// comparison. A negative answer is only a statement about the bound.
    pub fn is_arith_equivalent_bounded(
        &self,
        other: &FracIdeal,
        bound: u32,
    ) -> Result<ArithEquivalence> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self == other {
            return Ok(ArithEquivalence::Equivalent(self.ctx.one()));
        }
        let n = self.ctx.degree();
        let x = other.quotient(self)?;
        let ratio = other.covolume() / self.covolume();
        let mut denpow = BigRational::one();
        for _ in 0..n {
            denpow *= BigRational::from_integer(x.den.clone());
        }
        let target = ratio * denpow;
        if !target.is_integer() {
            return Ok(ArithEquivalence::NoWitnessWithinBound);
        }
        let target = target.to_integer().abs();
        // Integer multiplication matrices of the numerator basis rows: for
        // coordinates c, N(Σ c_k·row_k/den) = det(Σ c_k T_k)/denⁿ.
        let mult_mats: Vec<IntMat> = (0..n)
            .map(|r| {
                let elem = self.ctx.from_coords(
                    x.basis.row(r).iter().map(|v| BigRational::from_integer(v.clone())).collect(),
                );
                elem.mult_matrix_power_basis()
                    .to_integer()
                    .expect("integer coordinates give an integer multiplication matrix")
            })
            .collect();
        let elems = x.basis_elems();
        for s in 1..=bound as i64 {
            for c in shell_vectors(n, s) {
                let mut m = IntMat::zero(n, n);
                for (k, &ck) in c.iter().enumerate() {
                    if ck != 0 {
                        m = m.add(&mult_mats[k].scale(&BigInt::from(ck)));
                    }
                }
                if m.det().abs() != target {
                    continue;
                }
                let alpha = linear_combination(&elems, &c);
                if self.scale_by_elem(&alpha)? == *other {
                    return Ok(ArithEquivalence::Equivalent(alpha));
                }
            }
        }
        Ok(ArithEquivalence::NoWitnessWithinBound)
    }
}

impl std::fmt::Debug for FracIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FracIdeal(den {}, basis {:?})", self.den, self.basis)
    }
}

/// Outcome of the bounded search for a scalar relating two ideals.
#[derive(Clone, Debug)]
pub enum ArithEquivalence {
    Equivalent(FieldElem),
    NoWitnessWithinBound,
}

/// A full-rank lattice that contains 1 and is closed under multiplication —
/// an order of K. Containment of Z[β] holds exactly when β is in the
/// lattice and is exposed as a query rather than required, because
/// coefficient rings of lattices that are not β-closed may omit β.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderRing {
    lattice: FracIdeal,
}

impl OrderRing {
    pub fn try_new(lattice: FracIdeal) -> Result<OrderRing> {
        if !lattice.contains(&lattice.ctx().one()) {
            return Err(Error::NotAnOrder("1 is not in the lattice".into()));
        }
        let elems = lattice.basis_elems();
        for a in &elems {
            for b in &elems {
                if !lattice.contains(&a.mul(b)) {
                    return Err(Error::NotAnOrder(format!(
                        "the product ({a})·({b}) escapes the lattice"
                    )));
                }
            }
        }
        Ok(OrderRing { lattice })
    }

    pub fn as_ideal(&self) -> &FracIdeal {
        &self.lattice
    }

    pub fn ctx(&self) -> &MinPoly {
        self.lattice.ctx()
    }

    /// Whether the order contains β (hence all of Z[β], being a ring).
    pub fn contains_zbeta(&self) -> bool {
        self.lattice.contains(&self.lattice.ctx().beta())
    }
}

/// The order Z[β] itself.
pub fn zbeta(ctx: &MinPoly) -> FracIdeal {
    FracIdeal {
        den: BigInt::one(),
        basis: IntMat::identity(ctx.degree()),
        ctx: ctx.clone(),
    }
}

/// Scalar domain for [`ideal_from_elements`].
#[derive(Clone)]
pub enum Scalars {
    /// Z-span of the generators, then saturated under multiplication by β.
    Integers,
    /// Module span over the given order.
    Order(OrderRing),
}

/// Smallest lattice containing the generators and closed under the scalar
/// action: for `Integers` the Z[β]-span (β-saturation of the Z-span), for
/// `Order(R)` the R-span.
pub fn ideal_from_elements(gens: &[FieldElem], scalars: &Scalars) -> Result<FracIdeal> {
    let Some(first) = gens.first() else {
        return Err(Error::Dimension("need at least one generator".into()));
    };
    let ctx = first.ctx().clone();
    for g in gens {
        if *g.ctx() != ctx {
            return Err(Error::ContextMismatch);
        }
    }
    let n = ctx.degree();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    match scalars {
        Scalars::Integers => {
            // g, βg, …, β^{n−1}g close the span: β^n is a Z-combination of
            // lower powers, so one more shift stays inside.
            let beta = ctx.beta();
            for g in gens {
                let mut cur = g.clone();
                for _ in 0..n {
                    rows.push(cur.coords().to_vec());
                    cur = cur.mul(&beta);
                }
            }
        }
        Scalars::Order(ring) => {
            if *ring.ctx() != ctx {
                return Err(Error::ContextMismatch);
            }
            for g in gens {
                for b in ring.as_ideal().basis_elems() {
                    rows.push(g.mul(&b).coords().to_vec());
                }
            }
        }
    }
    let ideal = FracIdeal::from_rational_rows(ctx, rows)?;
    debug_assert!(matches!(scalars, Scalars::Order(_)) || ideal.is_beta_closed());
    Ok(ideal)
}

/// Witness that I and J are weakly equivalent: lattices X, Y over the common
/// coefficient ring R with I·X = J, J·Y = I, X·Y = R, plus a two-term
/// partition of unity a₁b₁ + a₂b₂ = 1 with a_i ∈ Y and b_j ∈ X.
#[derive(Clone, Debug)]
pub struct WeakEquivWitness {
    pub x: FracIdeal,
    pub y: FracIdeal,
    pub ring: OrderRing,
    pub a1: FieldElem,
    pub a2: FieldElem,
    pub b1: FieldElem,
    pub b2: FieldElem,
}

impl WeakEquivWitness {
    /// Checks every defining identity against the pair (i, j).
    pub fn verify(&self, i: &FracIdeal, j: &FracIdeal) -> Result<()> {
        if i.mul(&self.x)? != *j {
            return Err(Error::InvalidWitness("I·X does not equal J".into()));
        }
        if j.mul(&self.y)? != *i {
            return Err(Error::InvalidWitness("J·Y does not equal I".into()));
        }
        if self.x.mul(&self.y)? != *self.ring.as_ideal() {
            return Err(Error::InvalidWitness("X·Y does not equal the coefficient ring".into()));
        }
        if !self.y.contains(&self.a1) || !self.y.contains(&self.a2) {
            return Err(Error::InvalidWitness("a-elements must lie in Y".into()));
        }
        if !self.x.contains(&self.b1) || !self.x.contains(&self.b2) {
            return Err(Error::InvalidWitness("b-elements must lie in X".into()));
        }
        if !self.a1.mul(&self.b1).add(&self.a2.mul(&self.b2)).is_one() {
            return Err(Error::InvalidWitness("a₁b₁ + a₂b₂ is not 1".into()));
        }
        Ok(())
    }
}

/// Elements (a₁, a₂) of Y and (b₁, b₂) of X with a₁b₁ + a₂b₂ = 1, given
/// X·Y = R. Search order: the trivial pair when 1 lies in both lattices;
/// all ordered pairs of Y's basis elements for (a₁, a₂), solving an integer
/// linear system for (b₁, b₂); seeded random small-coordinate pairs; and
/// finally surface-by-surface enumeration of coordinate vectors.
pub fn two_term_partition_of_unity(
    x: &FracIdeal,
    y: &FracIdeal,
    ring: &OrderRing,
    seed: u64,
) -> Result<(FieldElem, FieldElem, FieldElem, FieldElem)> {
    let ctx = x.ctx().clone();
    if *y.ctx() != ctx || *ring.ctx() != ctx {
        return Err(Error::ContextMismatch);
    }
    if x.mul(y)? != *ring.as_ideal() {
        return Err(Error::NotWeaklyEquivalent);
    }
    let one = ctx.one();
    let zero = ctx.zero();
    if y.contains(&one) && x.contains(&one) {
        return Ok((one.clone(), zero.clone(), one, zero));
    }
    let n = ctx.degree();
    let xe = x.basis_elems();
    let ye = y.basis_elems();
    for i in 0..n {
        for j in 0..n {
            if let Some((b1, b2)) = solve_partition(&xe, &ye[i], &ye[j]) {
                return Ok((ye[i].clone(), ye[j].clone(), b1, b2));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PARTITION_RANDOM_TRIES {
        let c1: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let c2: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let a1 = linear_combination(&ye, &c1);
        let a2 = linear_combination(&ye, &c2);
        if a1.is_zero() || a2.is_zero() {
            continue;
        }
        if let Some((b1, b2)) = solve_partition(&xe, &a1, &a2) {
            return Ok((a1, a2, b1, b2));
        }
    }
    let mut attempts = 0usize;
    for s in 1..=PARTITION_SHELL_MAX {
        for v in shell_vectors(2 * n, s) {
            attempts += 1;
            if attempts > PARTITION_ENUM_BUDGET {
                return Err(Error::SearchExhausted(
                    "two-term partition of unity: enumeration budget".into(),
                ));
            }
            let a1 = linear_combination(&ye, &v[..n]);
            let a2 = linear_combination(&ye, &v[n..]);
            if a1.is_zero() || a2.is_zero() {
                continue;
            }
            if let Some((b1, b2)) = solve_partition(&xe, &a1, &a2) {
                return Ok((a1, a2, b1, b2));
            }
        }
    }
    Err(Error::SearchExhausted("two-term partition of unity".into()))
}

/// Solves a₁·b₁ + a₂·b₂ = 1 for b₁, b₂ in the Z-span of `xe`.
fn solve_partition(
    xe: &[FieldElem],
    a1: &FieldElem,
    a2: &FieldElem,
) -> Option<(FieldElem, FieldElem)> {
    let n = xe.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(2 * n);
    for e in xe {
        rows.push(a1.mul(e).coords().to_vec());
    }
    for e in xe {
        rows.push(a2.mul(e).coords().to_vec());
    }
    let m = RatMat::from_rows(rows, n);
    let (cleared, den) = m.clear_denominators();
    let mut rhs = vec![BigInt::zero(); n];
    rhs[0] = den;
    let sol = cleared.solve_left(&rhs)?;
    let b1 = big_combination(xe, &sol[..n]);
    let b2 = big_combination(xe, &sol[n..]);
    debug_assert!(a1.mul(&b1).add(&a2.mul(&b2)).is_one());
    Some((b1, b2))
}

fn linear_combination(elems: &[FieldElem], coeffs: &[i64]) -> FieldElem {
    let mut acc = elems[0].ctx().zero();
    for (e, &c) in elems.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&e.scale(&BigRational::from_integer(BigInt::from(c))));
        }
    }
    acc
}

fn big_combination(elems: &[FieldElem], coeffs: &[BigInt]) -> FieldElem {
    let mut acc = elems[0].ctx().zero();
    for (e, c) in elems.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&e.scale(&BigRational::from_integer(c.clone())));
        }
    }
    acc
}

/// All integer vectors of the given dimension with max-norm exactly `s` and
/// positive leading nonzero coordinate, cheapest first (by L1 norm, then
/// lexicographically descending, so unit vectors precede denser ones).
pub(crate) fn shell_vectors(dim: usize, s: i64) -> Vec<Vec<i64>> {
    fn rec(k: usize, dim: usize, s: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == dim {
            if cur.iter().any(|&c| c.abs() == s) {
                if let Some(&first) = cur.iter().find(|&&c| c != 0) {
                    if first > 0 {
                        out.push(cur.clone());
                    }
                }
            }
            return;
        }
        for c in (-s..=s).rev() {
            cur[k] = c;
            rec(k + 1, dim, s, cur, out);
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; dim];
    rec(0, dim, s, &mut cur, &mut out);
    out.sort_by(|a, b| {
        let la: i64 = a.iter().map(|c| c.abs()).sum();
        let lb: i64 = b.iter().map(|c| c.abs()).sum();
        la.cmp(&lb).then_with(|| b.cmp(a))
    });
    out
}

/// The classical non-invertible ideal after Dade, Taussky, and Zassenhaus:
/// for θ of degree n ≥ 3, the lattice I = Z + Zθ + 2Zθ² + ⋯ + 2Zθ^{n−1} has
/// coefficient ring R = Z + 2Zθ + ⋯ + 2Zθ^{n−1} (which does not contain θ)
/// and is not invertible over it.
#[derive(Clone, Debug)]
pub struct DtzFixture {
    /// Z[θ], the full power order.
    pub power_order: OrderRing,
    /// The coefficient ring R = (I : I).
    pub coeff_order: OrderRing,
    /// The non-invertible ideal I.
    pub ideal: FracIdeal,
}

pub fn dtz_fixture(ctx: &MinPoly) -> Result<DtzFixture> {
    let n = ctx.degree();
    if n < 3 {
        return Err(Error::BadDegree(format!("need degree at least 3, got {n}")));
    }
    let mut bi = IntMat::identity(n);
    for k in 2..n {
        bi.set(k, k, BigInt::from(2));
    }
    let ideal = FracIdeal::from_integer_rows(ctx.clone(), bi, BigInt::one())?;
    let mut br = IntMat::identity(n);
    for k in 1..n {
        br.set(k, k, BigInt::from(2));
    }
    let expected_ring = FracIdeal::from_integer_rows(ctx.clone(), br, BigInt::one())?;
    let coeff_order = ideal.coefficient_ring()?;
    if *coeff_order.as_ideal() != expected_ring {
        return Err(Error::Internal(
            "coefficient ring of the fixture ideal is not the expected order".into(),
        ));
    }
    if ideal.is_invertible() {
        return Err(Error::Internal("the fixture ideal must not be invertible".into()));
    }
    let power_order = OrderRing::try_new(zbeta(ctx))?;
    Ok(DtzFixture { power_order, coeff_order, ideal })
}
