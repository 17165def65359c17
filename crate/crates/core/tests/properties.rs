use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use pseudomoment_spectra::apolar::{adjointness_check, apolar_ip, SpanPoly};
use pseudomoment_spectra::characters::{restricted_char_sum_closed, restricted_char_sum_table};
use pseudomoment_spectra::combinatorics::{
    binomial, binomial_prefix_sum, enumerate_subsets, formal_half_binomial, int, ratio, Multiset, Scalar,
    SubsetIndex,
};
use pseudomoment_spectra::export::{matches_matrix, read_csv, read_json, write_csv, write_json};
use pseudomoment_spectra::pseudomoments::{build_y, d_max, MultilinearPoly};
use pseudomoment_spectra::rng::SeededRng;
use pseudomoment_spectra::schur::{
    gram_schur_property_check, solution_independence_check, volume_identity_check, GramDims,
};
use pseudomoment_spectra::spectrum::{e_xs_ht_closed, e_xs_ht_direct, lambda_closed, lambdas, multiplicity, zero_multiplicity};

fn subset(n: usize, mask: u64) -> SubsetIndex {
    SubsetIndex::new(n, mask & ((1u64 << n) - 1)).unwrap()
}

fn multilinear(n: usize, terms: &[(u64, i64)]) -> MultilinearPoly {
    let mut p = MultilinearPoly::zero(n);
    for &(m, c) in terms {
        p.add_term(subset(n, m), int(c));
    }
    p
}

fn span_poly(n: usize, degree: usize, terms: &[(Vec<usize>, i64)]) -> SpanPoly {
    let mut p = SpanPoly::zero(n, degree);
    for (idx, c) in terms {
        p.add_term(Multiset::from_zero_based(idx.iter().take(degree).map(|i| i % n)), int(*c));
    }
    p
}

fn span_terms() -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
    prop::collection::vec((prop::collection::vec(0usize..8, 4), -3i64..=3), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn binomial_rows_sum_to_powers_of_two(n in 0i64..60) {
        let row: BigInt = (0..=n).map(|k| binomial(n, k)).sum();
        prop_assert_eq!(&row, &(BigInt::one() << n as usize));
        prop_assert_eq!(binomial_prefix_sum(n, n), row);
        for k in 1..=n {
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }

    #[test]
    fn subsets_are_ordered_by_size_then_lexicographically(n in 1usize..=10) {
        let all = enumerate_subsets(n, n).unwrap();
        prop_assert_eq!(all.len(), 1usize << n);
        for w in all.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            prop_assert!(a < b);
            prop_assert!(a.len() <= b.len());
            if a.len() == b.len() {
                let ea: Vec<usize> = a.elements().collect();
                let eb: Vec<usize> = b.elements().collect();
                prop_assert!(ea < eb);
            }
        }
    }

    #[test]
    fn half_binomial_extends_binomial(h in 0i64..30, m in 0i64..30) {
        prop_assume!(m <= h);
        prop_assert_eq!(formal_half_binomial(2 * h, m).unwrap(), Scalar::from(binomial(h, m)));
    }

    #[test]
    fn y_is_permutation_invariant(n in 2usize..=6, seed in any::<u64>()) {
        let y = build_y(n).unwrap();
        let pi = SeededRng::new(seed).permutation(n);
        for s in y.index() {
            for t in y.index() {
                prop_assert_eq!(y.entry_sets(&pi.image_of_set(s), &pi.image_of_set(t)), y.entry_sets(s, t));
            }
        }
    }

    #[test]
    fn y_has_unit_diagonal_and_depends_on_symmetric_difference(n in 2usize..=8, m1 in any::<u64>(), m2 in any::<u64>()) {
        let y = build_y(n).unwrap();
        let dm = d_max(n);
        let (s, t) = (subset(n, m1), subset(n, m2));
        prop_assume!(s.len() <= dm && t.len() <= dm);
        prop_assert_eq!(y.entry_sets(&s, &s), &Scalar::one());
        let k = s.symmetric_difference(&t).len();
        prop_assert_eq!(y.entry_sets(&s, &t), &y.a()[k]);
        if k % 2 == 1 {
            prop_assert!(y.entry_sets(&s, &t).is_zero());
        }
    }

    #[test]
    fn multilinear_product_reduces_squares(n in 1usize..=6, i in 1usize..=6) {
        prop_assume!(i <= n);
        let x = MultilinearPoly::variable(n, i).unwrap();
        prop_assert_eq!(x.mul(&x), MultilinearPoly::constant(n, Scalar::one()));
    }

    #[test]
    fn multilinear_ring_laws(
        n in 1usize..=6,
        p in prop::collection::vec((any::<u64>(), -4i64..=4), 0..5),
        q in prop::collection::vec((any::<u64>(), -4i64..=4), 0..5),
        r in prop::collection::vec((any::<u64>(), -4i64..=4), 0..5),
        point in any::<u64>(),
    ) {
        let (p, q, r) = (multilinear(n, &p), multilinear(n, &q), multilinear(n, &r));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        let z = point & ((1 << n) - 1);
        prop_assert_eq!(p.mul(&q).evaluate(z), p.evaluate(z) * q.evaluate(z));
    }

    #[test]
    fn apolar_form_is_symmetric_bilinear_and_positive(
        n in 2usize..=5,
        degree in 0usize..=3,
        p in span_terms(),
        q in span_terms(),
        r in span_terms(),
        c in -5i64..=5,
    ) {
        let (p, q, r) = (span_poly(n, degree, &p), span_poly(n, degree, &q), span_poly(n, degree, &r));
        let pq = apolar_ip(&p, &q).unwrap();
        prop_assert_eq!(&pq, &apolar_ip(&q, &p).unwrap());
        let lhs = apolar_ip(&p.scale(&int(c)).add(&r).unwrap(), &q).unwrap();
        prop_assert_eq!(lhs, int(c) * &pq + apolar_ip(&r, &q).unwrap());
        let pp = apolar_ip(&p, &p).unwrap();
        if p.num_terms() == 0 {
            prop_assert!(pp.is_zero());
        } else {
            // frame vectors are dependent, so nonzero coefficients may still give zero
            prop_assert!(pp >= Scalar::zero());
        }
    }

    #[test]
    fn multiplication_is_adjoint_to_differentiation(
        n in 2usize..=5,
        da in 0usize..=2,
        db in 0usize..=2,
        p in span_terms(),
        q in span_terms(),
        r in span_terms(),
    ) {
        let (p, q, r) = (span_poly(n, da, &p), span_poly(n, db, &q), span_poly(n, da + db, &r));
        prop_assert!(adjointness_check(&p, &q, &r).unwrap());
    }

    #[test]
    fn xs_ht_closed_form_matches_contraction(n in 2usize..=10, dp in 0usize..=5, d in 0usize..=5, l in 0usize..=5) {
        prop_assume!(d <= dp && 2 * dp <= n && l <= d && dp + d - l <= n && dp <= n);
        prop_assert_eq!(e_xs_ht_closed(n, dp, d, l).unwrap(), e_xs_ht_direct(n, dp, d, l).unwrap());
    }

    #[test]
    fn restricted_sum_table_matches_closed_form(n in 1usize..=6, ma in any::<u64>(), mb in any::<u64>()) {
        let (a, b) = (subset(n, ma), subset(n, mb));
        let table = restricted_char_sum_table(n, &a, &b).unwrap();
        let o = a.intersection(&b).len();
        for (d, row) in table.iter().enumerate() {
            if a.len().min(b.len()) > d {
                continue;
            }
            for (k, v) in row.iter().enumerate() {
                prop_assert_eq!(v, &restricted_char_sum_closed(n, d, a.len(), b.len(), o, k).unwrap());
            }
        }
    }

    #[test]
    fn export_round_trips(n in 2usize..=6, json in any::<bool>()) {
        let y = build_y(n).unwrap();
        let mut buf = Vec::new();
        if json {
            write_json(&y, &mut buf).unwrap();
            let (m, entries) = read_json(buf.as_slice()).unwrap();
            prop_assert_eq!(m, n);
            prop_assert!(matches_matrix(&y, &entries));
        } else {
            write_csv(&y, &mut buf).unwrap();
            prop_assert!(matches_matrix(&y, &read_csv(n, buf.as_slice()).unwrap()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn schur_checks_hold_for_any_seed(seed in any::<u64>(), a in 1usize..=3, b in 1usize..=3, r in 2usize..=5) {
        let dims = GramDims { a, b, r };
        prop_assert!(gram_schur_property_check(seed, 8, dims).unwrap().passed());
        prop_assert!(volume_identity_check(seed, 5).unwrap().passed());
        prop_assert!(solution_independence_check(seed, 4).unwrap().passed());
    }
}

#[test]
fn lambda_recursion_closed_form() {
    for n in 3..=40 {
        for d in 1..=d_max(n) {
            let lhs = lambda_closed(n, d).unwrap();
            let rhs = ratio(n as i64, n as i64 - 1) * lambda_closed(n - 2, d - 1).unwrap();
            assert_eq!(lhs, rhs, "n={n}, d={d}");
        }
    }
}

#[test]
fn multiplicities_fill_the_index() {
    for n in 2..=40 {
        let dm = d_max(n);
        let mut total = zero_multiplicity(n);
        for d in 0..=dm {
            let m = multiplicity(n, d).unwrap();
            assert!(m > BigInt::zero());
            total += m;
        }
        assert_eq!(total, binomial_prefix_sum(n as i64, dm as i64), "n={n}");
        assert_eq!(zero_multiplicity(n), binomial_prefix_sum(n as i64, dm as i64 - 1));
    }
}

/// Odd `n`: all nonzero values distinct. Even `n`: the values with `d ≢ n/2 (mod 2)`
/// coincide (for `n ≥ 6` there are at least two of them), and nothing else does.
#[test]
fn eigenvalue_coincidence_pattern() {
    for n in 2..=40 {
        let v = lambdas(n).unwrap();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let expect_equal = n % 2 == 0 && i % 2 != (n / 2) % 2 && j % 2 != (n / 2) % 2;
                assert_eq!(v[i] == v[j], expect_equal, "n={n}, d={i}, d'={j}");
            }
        }
        assert!(v.iter().all(|x| *x > Scalar::zero()));
    }
}
