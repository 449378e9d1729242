//! Randomized property suites over the library's algebraic layers.

use proptest::prelude::*;

use prmforge::bounds::{serre_bound, tbc_bound, tbc_simplified};
use prmforge::gf::{make_field, FieldSpec};
use prmforge::hweights::{gaussian_binomial, subspace_zero_count, wei_duality_check};
use prmforge::linalg::Matrix;
use prmforge::poly::{
    binomial, count_projective_zeros, enumerate_monomials, unrank_composition, MonomialMode, Poly,
};
use prmforge::pspace::{p_k, zanella_set_check, enumerate_projective_points};

fn fields() -> Vec<FieldSpec> {
    vec![
        make_field(2, 1, None).unwrap(),
        make_field(3, 1, None).unwrap(),
        make_field(2, 2, None).unwrap(),
        make_field(5, 1, None).unwrap(),
        make_field(2, 3, None).unwrap(),
        make_field(3, 2, None).unwrap(),
    ]
}

proptest! {
    #[test]
    fn field_axioms_hold(idx in 0usize..6, a in 0u32..512, b in 0u32..512, c in 0u32..512) {
        let f = &fields()[idx];
        let (a, b, c) = (a % f.q, b % f.q, c % f.q);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn rref_is_idempotent_and_rank_bounded(
        idx in 0usize..6,
        rows in 1usize..5,
        cols in 1usize..6,
        data in proptest::collection::vec(0u32..512, 30),
    ) {
        let f = &fields()[idx];
        let m = Matrix {
            rows,
            cols,
            data: data.iter().take(rows * cols).map(|x| x % f.q).collect(),
        };
        let (r1, pivots) = m.rref(f);
        prop_assert!(pivots.len() <= rows.min(cols));
        let (r2, pivots2) = r1.rref(f);
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn tbc_routes_agree(qi in 0usize..4, d in 1u32..=6, m in 1usize..=6, r in 1u64..=7) {
        let q = [4u64, 5, 7, 8][qi];
        let r = r as u128;
        if r <= m as u128 + 1 {
            prop_assert_eq!(tbc_bound(q, d, m, r).unwrap(), tbc_simplified(q, d, m, r).unwrap());
        }
    }

    #[test]
    fn serre_holds_on_random_homogeneous_polys(
        qi in 0usize..2,
        d in 1u32..=2,
        coeffs in proptest::collection::vec(0u32..5, 16),
    ) {
        let f = if qi == 0 { make_field(2, 2, None).unwrap() } else { make_field(5, 1, None).unwrap() };
        let m = 2usize;
        let basis = enumerate_monomials(m, d, MonomialMode::Homogeneous);
        let poly = Poly::from_terms(
            m + 1,
            basis.iter().zip(&coeffs).map(|(mon, &c)| (mon.0.clone(), c % f.q)),
        );
        if !poly.is_zero() {
            let (count, _) = count_projective_zeros(&[poly], &f, m).unwrap();
            prop_assert!(count as u128 <= serre_bound(f.q as u64, d, m).unwrap());
        }
    }

    #[test]
    fn incidence_bound_holds_on_random_point_sets(mask in 0u32..(1 << 21)) {
        let f = make_field(2, 2, None).unwrap();
        let all = enumerate_projective_points(&f, 2).unwrap();
        let sample: Vec<_> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| p.clone())
            .collect();
        prop_assert!(zanella_set_check(&f, &sample, 2).unwrap().holds);
    }

    #[test]
    fn unrank_composition_is_monotone_decreasing(d in 1u32..=6, parts in 2usize..=5, r in 2u64..=30) {
        let total = binomial(d as i64 + parts as i64 - 1, d as i64);
        let r = r as u128;
        if r <= total {
            let prev = unrank_composition(r - 1, d, parts).unwrap();
            let cur = unrank_composition(r, d, parts).unwrap();
            prop_assert!(prev.0 > cur.0, "descending lex order");
            prop_assert_eq!(cur.0.iter().sum::<u32>(), d);
        }
    }

    #[test]
    fn duality_check_accepts_exact_complements(n in 1u64..=24, mask in 0u32..(1 << 16)) {
        // pick an arbitrary subset of {1..n} as the primary hierarchy and
        // derive the unique dual hierarchy satisfying Wei duality
        let weights: Vec<u64> = (1..=n).filter(|i| mask & (1 << (i % 16)) != 0).collect();
        let mut dual: Vec<u64> = (1..=n)
            .filter(|x| !weights.contains(x))
            .map(|x| n + 1 - x)
            .collect();
        dual.sort();
        prop_assert!(wei_duality_check(&weights, &dual, n));
    }
}

#[test]
fn gaussian_binomial_recurrence() {
    // [k r]_q = q^r [k-1 r]_q + [k-1 r-1]_q
    for q in [2u64, 3, 4, 5] {
        for k in 1..=8u64 {
            for r in 1..=k {
                assert_eq!(
                    gaussian_binomial(k, r, q),
                    (q as u128).pow(r as u32) * gaussian_binomial(k - 1, r, q)
                        + gaussian_binomial(k - 1, r - 1, q),
                    "q={q} k={k} r={r}"
                );
            }
        }
    }
}

#[test]
fn full_space_has_zero_common_zeros() {
    // the r = k subspace is the whole code; PRM codes are nondegenerate
    let f4 = make_field(2, 2, None).unwrap();
    let code = prmforge::codes::prm_code(&f4, 2, 2).unwrap();
    let mut basis = Matrix::zeros(code.k, code.k);
    for i in 0..code.k {
        basis.set(i, i, 1);
    }
    assert_eq!(subspace_zero_count(&f4, &basis, &code.generator), 0);
    assert_eq!(p_k(4, 2), 21);
}
