use monogenic::flatfield::{hodge_min_residual, mixed_sample, ConformalFactor, GridField, GridSpec};
use monogenic::multivector::Multivector;
use monogenic::rarita::{build_f, fj_weight, theta_symbol};
use monogenic::spinor::{build_phi, gamma_matrix, make_null_splitting, phi_one};
use monogenic::suite::hodge_weight;
use monogenic::{ExtIS2, Matrix, Rational, Scalar, Vector};

fn x(re: i64, im: i64) -> ExtIS2 {
    ExtIS2::new(Rational::from_i64(re), Rational::from_i64(0), Rational::from_i64(im), Rational::from_i64(0))
}

#[test]
fn theta_vanishes_for_n2() {
    let space = build_f::<Rational>(2).unwrap();
    let theta = theta_symbol(&space).unwrap();
    assert_eq!(theta.matrix.rows(), 4);
    assert_eq!(theta.matrix.cols(), 8);
    assert!(theta.matrix.is_zero());
}

#[test]
fn second_symmetric_power_weights() {
    let r = fj_weight::<Rational>(3, 2).unwrap();
    assert_eq!(r.dim_f, 24);
    assert!(r.passed());
    assert_eq!(r.weight.unwrap().weight, Some(Rational::from_i64(-1)));

    let r = fj_weight::<Rational>(4, 2).unwrap();
    assert_eq!(r.dim_f, 96);
    assert_eq!(r.weight.unwrap().weight, Some(Rational::ratio(-3, 2)));
}

#[test]
fn hodge_exact_residuals() {
    for (n, expected) in [(3, 12), (4, 48), (5, 160), (6, 480)] {
        let r = hodge_weight::<Rational>(n).unwrap();
        assert_eq!(r.weight, None);
        assert_eq!(r.residual, Rational::from_i64(expected), "n = {n}");
    }
}

#[test]
fn hodge_grid_residuals() {
    let grid = GridSpec::cube(3, -1.0, 1.0, 0.25).unwrap();
    let phi = GridField::sample_everywhere(&grid, Rational::from_i64(-1), mixed_sample).unwrap();
    for (omega, expected) in [(ConformalFactor::Exp { a: 0.3 }, 0.8205545994033291), (ConformalFactor::Sphere, 0.8869563505128498)] {
        let h = hodge_min_residual(&phi, &omega).unwrap();
        assert!((h.normalized - expected).abs() < 1e-9, "{}: {}", omega.name(), h.normalized);
    }
}

#[test]
fn gamma_matrices_n2_by_hand() {
    // u = (e1 − i e2)/√2: γ(e1) = C − A and γ(e2) = i(C + A) on the basis {1, u}
    let split = make_null_splitting::<ExtIS2>(2).unwrap();
    let g1 = gamma_matrix(&Vector::basis(2, 1).unwrap(), &split).unwrap();
    let g2 = gamma_matrix(&Vector::basis(2, 2).unwrap(), &split).unwrap();
    assert_eq!(g1, Matrix::from_rows(&[vec![x(0, 0), x(-1, 0)], vec![x(1, 0), x(0, 0)]]));
    assert_eq!(g2, Matrix::from_rows(&[vec![x(0, 0), x(0, 1)], vec![x(0, 1), x(0, 0)]]));
}

#[test]
fn phi_of_unit_and_vectors() {
    let phi = build_phi::<ExtIS2>(2).unwrap();
    assert_eq!(phi.apply(&Multivector::<ExtIS2>::one(2).into_coeffs()), vec![x(1, 0), x(0, 0), x(0, 0), x(1, 0)]);
    assert_eq!(phi_one::<ExtIS2>(1), vec![x(1, 0), x(0, 0), x(0, 0), x(1, 0)]);
    // Φ(v) = v:Φ(1) is γ(v) read as an element of Λ•U ⊗ Λ•U*
    for n in [2, 4] {
        let phi = build_phi::<ExtIS2>(n).unwrap();
        for i in 1..=n {
            let v = Vector::basis(n, i).unwrap();
            let g = gamma_matrix(&v, &phi.split).unwrap();
            assert_eq!(phi.apply_vector(&v), g.entries().to_vec(), "n = {n}, e_{i}");
        }
    }
}
