use monogenic::multivector::{clifford_mul_vec, clifford_word, contract, grade_of, wedge, Metric, Multivector, Vector};
use monogenic::represent::{so_bracket, spin_action, std_action_w, Bivector};
use monogenic::scalar::{format_rational, parse_rational};
use monogenic::{Rational, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Rational::ratio(p, q))
}

fn vector(n: usize) -> impl Strategy<Value = Vector<Rational>> {
    prop::collection::vec(rational(), n).prop_map(Vector::new)
}

fn multivector(n: usize) -> impl Strategy<Value = Multivector<Rational>> {
    prop::collection::vec(rational(), 1 << n).prop_map(move |c| Multivector::from_coeffs(n, c).unwrap())
}

fn bivector(n: usize) -> impl Strategy<Value = Bivector<Rational>> {
    prop::collection::vec(rational(), n * (n - 1) / 2).prop_map(move |c| Bivector::from_coeffs(n, c).unwrap())
}

fn dim_and<T: std::fmt::Debug, S: Strategy<Value = T>>(
    lo: usize,
    hi: usize,
    f: impl Fn(usize) -> S + Clone + 'static,
) -> impl Strategy<Value = (usize, T)> {
    (lo..=hi).prop_flat_map(move |n| (Just(n), f(n)))
}

fn q(k: i64) -> Rational {
    Rational::from_i64(k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clifford_relation((n, (u, v, e)) in dim_and(1, 5, |n| (vector(n), vector(n), multivector(n)))) {
        let g = Metric::euclidean(n);
        let lhs = &clifford_word(&[u.clone(), v.clone()], &e, &g).unwrap()
            + &clifford_word(&[v.clone(), u.clone()], &e, &g).unwrap();
        let rhs = e.scale(q(-2) * g.inner(&u, &v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_contract_anticommutator((n, (u, v, e)) in dim_and(1, 5, |n| (vector(n), vector(n), multivector(n)))) {
        let g = Metric::euclidean(n);
        let um = u.to_multivector();
        let lhs = &wedge(&um, &contract(&v, &e, &g).unwrap()).unwrap() + &contract(&v, &wedge(&um, &e).unwrap(), &g).unwrap();
        prop_assert_eq!(lhs, e.scale(g.inner(&u, &v)));
    }

    #[test]
    fn four_term_identity((n, (u, v, w, e)) in dim_and(1, 4, |n| (vector(n), vector(n), vector(n), multivector(n)))) {
        let g = Metric::euclidean(n);
        let word = |a: &Vector<Rational>, b: &Vector<Rational>, c: &Vector<Rational>| {
            clifford_word(&[a.clone(), b.clone(), c.clone()], &e, &g).unwrap()
        };
        let lhs = &(&(&word(&u, &v, &w) - &word(&v, &w, &u)) - &word(&u, &w, &v)) + &word(&w, &v, &u);
        let rhs = &clifford_mul_vec(&w, &e, &g).unwrap().scale(q(-4) * g.inner(&u, &v))
            + &clifford_mul_vec(&v, &e, &g).unwrap().scale(q(4) * g.inner(&u, &w));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn contraction_is_an_antiderivation(
        (n, (v, a, b, k)) in dim_and(1, 5, |n| (vector(n), multivector(n), multivector(n), 0..=n))
    ) {
        let g = Metric::euclidean(n);
        let a = a.grade_project(k).unwrap();
        let lhs = contract(&v, &wedge(&a, &b).unwrap(), &g).unwrap();
        let sign = if k % 2 == 0 { q(1) } else { q(-1) };
        let rhs = &wedge(&contract(&v, &a, &g).unwrap(), &b).unwrap()
            + &wedge(&a, &contract(&v, &b, &g).unwrap()).unwrap().scale(sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_associative((_n, (a, b, c)) in dim_and(1, 4, |n| (multivector(n), multivector(n), multivector(n)))) {
        let left = wedge(&wedge(&a, &b).unwrap(), &c).unwrap();
        let right = wedge(&a, &wedge(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn bracket_jacobi((_n, (x, y, z)) in dim_and(2, 5, |n| (bivector(n), bivector(n), bivector(n)))) {
        let br = |a: &Bivector<Rational>, b: &Bivector<Rational>| so_bracket(a, b).unwrap();
        let sum = br(&x, &br(&y, &z)).add(&br(&y, &br(&z, &x))).add(&br(&z, &br(&x, &y)));
        prop_assert!(sum.is_zero());
        prop_assert_eq!(br(&x, &y), br(&y, &x).scale(q(-1)));
    }

    #[test]
    fn spin_action_is_a_representation(
        (_n, (x, y, e)) in dim_and(2, 4, |n| (bivector(n), bivector(n), multivector(n)))
    ) {
        let act = |b: &Bivector<Rational>, m: &Multivector<Rational>| spin_action(b, m).unwrap();
        let lhs = act(&so_bracket(&x, &y).unwrap(), &e);
        let rhs = &act(&x, &act(&y, &e)) - &act(&y, &act(&x, &e));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn clifford_multiplication_is_equivariant(
        (n, (x, v, e)) in dim_and(2, 5, |n| (bivector(n), vector(n), multivector(n)))
    ) {
        let g = Metric::euclidean(n);
        let lhs = spin_action(&x, &clifford_mul_vec(&v, &e, &g).unwrap()).unwrap();
        let xv = std_action_w(&x, &v).unwrap();
        let rhs = &clifford_mul_vec(&xv, &e, &g).unwrap() + &clifford_mul_vec(&v, &spin_action(&x, &e).unwrap(), &g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn spin_action_preserves_parity((n, (x, k)) in dim_and(2, 5, |n| (bivector(n), 0..1usize << n))) {
        let e = Multivector::<Rational>::basis(n, k);
        let image = spin_action(&x, &e).unwrap();
        for (mask, _) in image.terms() {
            prop_assert_eq!(grade_of(mask) % 2, grade_of(k) % 2);
        }
    }

    #[test]
    fn multivector_json_round_trip((_n, e) in dim_and(1, 5, multivector)) {
        let back = Multivector::<Rational>::from_json(&e.to_json()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn rational_text_round_trip(x in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }
}
