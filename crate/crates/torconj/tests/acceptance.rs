//! Acceptance gate: one test per top-level requirement, each printing a
//! single PASS line (visible with `--nocapture`) and failing loudly
//! otherwise. All arithmetic is exact; every comparison below is equality.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torconj::block::{
    complete_embedding, construct_two_block, decide, BlockCertificate, Verdict,
};
use torconj::field::{FieldElem, MinPoly};
use torconj::fixtures::{
    classical_cubic_ctx, classical_quartic_ctx, cubic_triple, mirror_pair, pell_pair,
    sample_pool,
};
use torconj::galois::{centralizer_basis, galois_of_xi};
use torconj::ideal::dtz_fixture;
use torconj::lmt::{ideal_to_matrix, intertwiner_lattice, matrix_to_ideal, Automorphism};
use torconj::linalg::IntMat;
use torconj::poly::IntPoly;
use torconj::semiconj::{semiconjugacy_from_generators, theta_beta, theta_y};
use torconj::wire;

fn combo(elems: &[FieldElem], coeffs: &[i64]) -> FieldElem {
    let ctx = elems[0].ctx();
    let mut acc = ctx.zero();
    for (e, c) in elems.iter().zip(coeffs) {
        acc = acc.add(&e.mul(&ctx.from_integer(BigInt::from(*c))));
    }
    acc
}

/// Product of random elementary shears: always determinant 1.
fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> IntMat {
    let mut p = IntMat::identity(n);
    for _ in 0..6 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if j == i {
            j = (j + 1) % n;
        }
        let c = rng.gen_range(-3i64..=3);
        let mut shear = IntMat::identity(n);
        shear.set(i, j, BigInt::from(c));
        p = p.mul(&shear);
    }
    p
}

/// The defining eigen relation: mat · elems = β · elems componentwise.
fn beta_relation_holds(mat: &IntMat, elems: &[FieldElem], ctx: &MinPoly) -> bool {
    let beta = ctx.beta();
    (0..mat.rows()).all(|p| {
        let mut acc = ctx.zero();
        for (q, e) in elems.iter().enumerate() {
            acc = acc.add(&e.mul(&ctx.from_integer(mat.get(p, q).clone())));
        }
        acc == beta.mul(&elems[p])
    })
}

#[test]
fn golden_conjugator_suite_verifies_in_under_a_second() {
    let start = Instant::now();
    let fx = pell_pair().unwrap();
    let f = IntPoly::from_i64(&[1, -10, 1]);
    assert_eq!(fx.a.ctx().poly(), &f);
    assert_eq!(fx.b.ctx().poly(), &f);
    assert_eq!(fx.a.mat().charpoly(), f);
    assert_eq!(fx.b.mat().charpoly(), f);

    let forward = BlockCertificate::new(
        fx.m.clone(),
        fx.b.clone(),
        vec![fx.a.clone(), fx.a_tail.clone()],
        None,
    )
    .unwrap();
    assert!(forward.verify().unwrap());
    assert_eq!(fx.m.det(), BigInt::one());
    assert_eq!(fx.a_tail.mat(), &IntMat::from_i64(&[&[-1, -4], &[3, 11]]));

    let back = BlockCertificate::new(
        fx.n.clone(),
        fx.a.clone(),
        vec![fx.b.clone(), fx.b_tail.clone()],
        None,
    )
    .unwrap();
    assert!(back.verify().unwrap());
    assert_eq!(fx.n.det(), BigInt::from(-1));
    assert_eq!(fx.b_tail.mat(), &IntMat::from_i64(&[&[0, 1], &[-1, 10]]));

    let one = fx.gens.a1.mul(&fx.gens.b1).add(&fx.gens.a2.mul(&fx.gens.b2));
    assert!(one.is_one());

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("PASS: golden conjugator suite verified exactly in {elapsed:?}");
}

#[test]
fn trichotomy_decides_the_pell_and_cubic_pairs() {
    let fx = pell_pair().unwrap();
    let tri = decide(&fx.a, &fx.b, 50, 0).unwrap();
    match tri.verdict {
        Verdict::TwoBlockOnly { certs, conjugacy_undetermined } => {
            assert!(conjugacy_undetermined);
            assert!(certs.0.verify().unwrap());
            assert!(certs.1.verify().unwrap());
        }
        other => panic!("expected a two-block verdict, got {other:?}"),
    }

    let cubic = cubic_triple().unwrap();
    let tri = decide(&cubic.a, &cubic.b, 50, 0).unwrap();
    assert!(matches!(tri.verdict, Verdict::NotBlockConjugate));
    let ia = matrix_to_ideal(&cubic.a);
    let ib = matrix_to_ideal(&cubic.b);
    assert!(!ia.ideal().is_invertible());
    assert!(ib.ideal().is_invertible());
    assert!(!ia.ideal().is_weakly_equivalent(ib.ideal()).unwrap());
    println!("PASS: trichotomy gives two-block-only and not-block-conjugate as required");
}

#[test]
fn explicit_embedding_completes_with_coupling() {
    let fx = cubic_triple().unwrap();
    let doubled = fx.b.mat().diag_copies(2);
    assert_eq!(doubled.mul(&fx.embed), fx.embed.mul(fx.a.mat()));
    let (m, form) = complete_embedding(&fx.embed, &fx.b, 2).unwrap();
    assert_eq!(m.det().abs(), BigInt::one());
    assert_eq!(m.block(0, 0, 6, 3), fx.embed);
    assert_eq!(form.a.mat(), fx.a.mat());
    assert!(!form.s.is_zero());
    println!("PASS: explicit embedding completes unimodularly with nonzero coupling");
}

#[test]
fn mirror_involution_realizes_the_galois_symmetry() {
    let fx = mirror_pair().unwrap();
    let doubled = fx.b.mat().diag_copies(2);
    let doubled_inv = fx.b_inverse.mat().diag_copies(2);
    assert_eq!(doubled.mul(&fx.xi), fx.xi.mul(&doubled_inv));
    assert!(fx.xi.mul(&fx.xi).is_identity());

    let ctx = fx.b.ctx();
    let sigma = galois_of_xi(&fx.xi, &fx.b).unwrap();
    assert_eq!(sigma.p(), &ctx.from_int_coords(&[20, -1]));
    assert!(sigma.p().is_conjugate_root());
    assert!(!sigma.is_identity());
    let xi_sq = fx.xi.mul(&fx.xi);
    assert!(galois_of_xi(&xi_sq, &fx.b).unwrap().is_identity());

    // The map reverses products on every pair drawn from {ξ, ξ²}.
    for eta in [&fx.xi, &xi_sq] {
        for rho in [&fx.xi, &xi_sq] {
            let lhs = galois_of_xi(&eta.mul(rho), &fx.b).unwrap();
            let rhs = galois_of_xi(rho, &fx.b)
                .unwrap()
                .compose(&galois_of_xi(eta, &fx.b).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
    println!("PASS: mirror involution maps to the nontrivial field symmetry");
}

#[test]
fn classical_noninvertible_ideals_power_up_to_the_ring() {
    let cubic = dtz_fixture(&classical_cubic_ctx().unwrap()).unwrap();
    assert_eq!(cubic.ideal.coefficient_ring().unwrap(), cubic.coeff_order);
    assert_ne!(cubic.coeff_order, cubic.power_order);
    assert!(!cubic.ideal.is_invertible());
    let squared = cubic.ideal.mul(&cubic.ideal).unwrap();
    assert_eq!(squared, *cubic.power_order.as_ideal());

    let quartic = dtz_fixture(&classical_quartic_ctx().unwrap()).unwrap();
    assert!(!quartic.ideal.is_invertible());
    let squared = quartic.ideal.mul(&quartic.ideal).unwrap();
    assert!(!squared.is_invertible());
    assert_ne!(squared, *quartic.power_order.as_ideal());
    let cubed = squared.mul(&quartic.ideal).unwrap();
    assert_eq!(cubed, *quartic.power_order.as_ideal());
    println!("PASS: classical ideals are non-invertible with the stated power relations");
}

#[test]
fn seeded_property_suite_holds_across_two_hundred_cases() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    let pool = sample_pool().unwrap();
    let mut cases = 0usize;

    // (a) Conjugation by a random unimodular matrix is always detected with
    // a verified witness.
    for round in 0..36 {
        let base = &pool[round % pool.len()];
        let p = random_unimodular(base.dim(), &mut rng);
        let conj_mat = p.inverse_unimodular().unwrap().mul(base.mat()).mul(&p);
        let conj = Automorphism::with_context(conj_mat, base.ctx().clone()).unwrap();
        let tri = decide(base, &conj, 50, round as u64).unwrap();
        match tri.verdict {
            Verdict::Conjugate { witness, .. } => {
                assert_eq!(witness.det().abs(), BigInt::one());
                assert_eq!(witness.mul(base.mat()), conj.mat().mul(&witness));
            }
            other => panic!("expected conjugate, got {other:?}"),
        }
        cases += 1;
    }

    // (b) The matrix → ideal → matrix round trip reproduces the
    // multiplication-by-β relation exactly, in both directions.
    for base in &pool {
        let eigen = matrix_to_ideal(base);
        assert!(beta_relation_holds(base.mat(), eigen.components(), base.ctx()));
        cases += 1;
        let (canonical, basis) = ideal_to_matrix(eigen.ideal()).unwrap();
        assert!(beta_relation_holds(canonical.mat(), &basis, base.ctx()));
        cases += 1;
    }

    // (c) Intertwiner lattices have full rank and no singular nonzero
    // member.
    let pell = pell_pair().unwrap();
    let cubic = cubic_triple().unwrap();
    let pairs = [
        (pell.b.clone(), pell.a.clone()),
        (pell.a.clone(), pell.b.clone()),
        (pell.b_tail.clone(), pell.a.clone()),
        (pell.a.clone(), pell.a.clone()),
        (cubic.b.clone(), cubic.a.clone()),
        (cubic.a.clone(), cubic.b.clone()),
        (pool[3].clone(), pool[3].clone()),
        (pool[6].clone(), pool[6].clone()),
    ];
    for (left, right) in &pairs {
        let lattice = intertwiner_lattice(left, right).unwrap();
        let n = left.dim();
        assert_eq!(lattice.basis().len(), n);
        cases += 1;
        for _ in 0..4 {
            let mut x = IntMat::zero(n, n);
            let mut nonzero = false;
            for basis_mat in lattice.basis() {
                let c = rng.gen_range(-3i64..=3);
                nonzero |= c != 0;
                x = x.add(&basis_mat.scale(&BigInt::from(c)));
            }
            if !nonzero {
                x = lattice.basis()[0].clone();
            }
            assert_eq!(left.mat().mul(&x), x.mul(right.mat()));
            assert_ne!(x.det(), BigInt::zero());
            cases += 1;
        }
    }

    // (d) Two-block construction self-verifies on weakly equivalent pairs.
    for round in 0..6 {
        let (c1, c2) = construct_two_block(&pell.a, &pell.b, round as u64).unwrap();
        assert!(c1.verify().unwrap());
        assert!(c2.verify().unwrap());
        cases += 1;
        let p = random_unimodular(2, &mut rng);
        let conj_mat = p.inverse_unimodular().unwrap().mul(pell.b.mat()).mul(&p);
        let conj = Automorphism::with_context(conj_mat, pell.b.ctx().clone()).unwrap();
        let (c1, c2) = construct_two_block(&pell.a, &conj, round as u64).unwrap();
        assert!(c1.verify().unwrap());
        assert!(c2.verify().unwrap());
        cases += 1;
    }

    // (e) Weak equivalence is reflexive, symmetric, and transitive across
    // the fixture ideals and random conjugates.
    let mut pell_ideals = vec![
        matrix_to_ideal(&pell.a).ideal().clone(),
        matrix_to_ideal(&pell.b).ideal().clone(),
        matrix_to_ideal(&pell.b_tail).ideal().clone(),
    ];
    for _ in 0..2 {
        let p = random_unimodular(2, &mut rng);
        let conj_mat = p.inverse_unimodular().unwrap().mul(pell.a.mat()).mul(&p);
        let conj = Automorphism::with_context(conj_mat, pell.a.ctx().clone()).unwrap();
        pell_ideals.push(matrix_to_ideal(&conj).ideal().clone());
    }
    let cubic_ideals =
        vec![matrix_to_ideal(&cubic.a).ideal().clone(), matrix_to_ideal(&cubic.b).ideal().clone()];
    for family in [&pell_ideals, &cubic_ideals] {
        for i in family.iter() {
            assert!(i.is_weakly_equivalent(i).unwrap());
            cases += 1;
        }
        for x in family.iter() {
            for y in family.iter() {
                let xy = x.is_weakly_equivalent(y).unwrap();
                let yx = y.is_weakly_equivalent(x).unwrap();
                assert_eq!(xy, yx);
                cases += 1;
                for z in family.iter() {
                    if xy && y.is_weakly_equivalent(z).unwrap() {
                        assert!(x.is_weakly_equivalent(z).unwrap());
                    }
                }
            }
        }
    }

    // (f) Centralizers of the doubled automorphism: full rank 4n, and the
    // block determinant identity holds on random members.
    for b in [&pell.b, &mirror_pair().unwrap().b, &cubic.b] {
        let basis = centralizer_basis(b).unwrap();
        let n = b.dim();
        assert_eq!(basis.len(), 4 * n);
        let rows: Vec<Vec<BigInt>> = basis.iter().map(|m| m.vec_entries()).collect();
        let stacked = IntMat::from_rows(rows, 4 * n * n);
        assert_eq!(stacked.kernel_lattice().rows(), 0);
        cases += 1;
        for _ in 0..8 {
            let mut u = IntMat::zero(2 * n, 2 * n);
            for basis_mat in &basis {
                let c = rng.gen_range(-2i64..=2);
                u = u.add(&basis_mat.scale(&BigInt::from(c)));
            }
            let u1 = u.block(0, 0, n, n);
            let u2 = u.block(0, n, n, n);
            let u3 = u.block(n, 0, n, n);
            let u4 = u.block(n, n, n, n);
            assert_eq!(u.det(), u1.mul(&u4).sub(&u2.mul(&u3)).det());
            cases += 1;
        }
    }

    // (g) The θ cocycle identity on random module elements.
    for base in [&pell.a, &cubic.a] {
        let ideal = matrix_to_ideal(base).ideal().clone();
        let ring = ideal.coefficient_ring().unwrap();
        let semi = semiconjugacy_from_generators(&ideal, &ring).unwrap();
        let w = semi.w().to_vec();
        let u = semi.u().to_vec();
        for _ in 0..20 {
            let yc: Vec<i64> = (0..w.len()).map(|_| rng.gen_range(-3..=3)).collect();
            let zc: Vec<i64> = (0..w.len()).map(|_| rng.gen_range(-3..=3)).collect();
            let tc: Vec<i64> = (0..u.len()).map(|_| rng.gen_range(-3..=3)).collect();
            let y = combo(&w, &yc);
            let z = combo(&w, &zc);
            let t = combo(&u, &tc);
            let lhs = theta_y(&y.mul(&z), &t, &semi).unwrap();
            let first = theta_y(&y, &z.mul(&t), &semi).unwrap();
            let second = theta_y(&z, &t, &semi).unwrap();
            for (c, l) in lhs.iter().enumerate() {
                assert_eq!(*l, first[c].add(&y.mul(&second[c])));
            }
            assert_eq!(theta_y(&ideal.ctx().beta(), &t, &semi).unwrap(), theta_beta(&t, &semi).unwrap());
            cases += 1;
        }
    }

    let elapsed = start.elapsed();
    assert!(cases >= 200, "only {cases} cases ran");
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("PASS: property suite held on {cases} seeded cases in {elapsed:?}");
}

#[test]
fn negative_controls_are_rejected() {
    // A forged certificate — the displayed conjugator paired with the wrong
    // right-hand blocks — fails verification instead of passing vacuously.
    let fx = pell_pair().unwrap();
    let forged = BlockCertificate::from_parts_unchecked(
        fx.m.clone(),
        fx.b.clone(),
        vec![fx.a.clone(), fx.a.clone()],
    );
    assert!(!forged.verify().unwrap());

    // Malformed wire input is rejected with a parse error.
    assert!(wire::parse_matrix("2 2\n1 2\n3").is_err());
    assert!(wire::parse_matrix("2 2\n1 2\n3 x").is_err());
    assert!(wire::parse_poly("2 1 -10 2").is_err());

    // Mismatched characteristic polynomials are rejected before any search.
    let cubic = cubic_triple().unwrap();
    assert!(decide(&fx.a, &cubic.a, 50, 0).is_err());
    println!("PASS: forged certificates, malformed input, and mismatched pairs are rejected");
}
