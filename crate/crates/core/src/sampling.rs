//! Seeded random inputs for identity checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multivector::{Multivector, Vector};
use crate::scalar::{Rational, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational with numerator in `-9..=9` and denominator in `1..=4`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn scalar<S: Scalar, R: Rng>(rng: &mut R) -> S {
    S::from_rational(rational(rng))
}

pub fn vector<S: Scalar, R: Rng>(rng: &mut R, n: usize) -> Vector<S> {
    Vector::new((0..n).map(|_| scalar(rng)).collect())
}

/// Random multivector with roughly half of its blades populated.
pub fn multivector<S: Scalar, R: Rng>(rng: &mut R, n: usize) -> Multivector<S> {
    let coeffs = (0..1usize << n)
        .map(|_| if rng.gen_bool(0.5) { scalar(rng) } else { S::zero() })
        .collect();
    Multivector::from_coeffs(n, coeffs).expect("length 2^n")
}
