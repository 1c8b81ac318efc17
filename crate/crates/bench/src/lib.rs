//! Shared inputs for the benchmarks.

use monogenic::flatfield::{mixed_sample, GridField, GridSpec};
use monogenic::{sampling, Multivector, Rational, Scalar, Vector};

/// Reproducible random vectors and a multivector in dimension `n`.
pub fn clifford_inputs(n: usize, count: usize) -> (Vec<Vector<Rational>>, Multivector<Rational>) {
    let mut rng = sampling::rng(n as u64);
    let vs = (0..count).map(|_| sampling::vector(&mut rng, n)).collect();
    (vs, sampling::multivector(&mut rng, n))
}

/// The mixed-grade sample on `[−1, 1]ⁿ` at spacing `h`.
pub fn sample_field(n: usize, h: f64) -> GridField {
    let grid = GridSpec::cube(n, -1.0, 1.0, h).expect("valid grid");
    GridField::sample_everywhere(&grid, Rational::from_i64(0), mixed_sample).expect("finite sample")
}
