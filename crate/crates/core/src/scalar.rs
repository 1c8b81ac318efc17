//! Scalar fields used by every algebraic routine.
//!
//! Four modes are provided: exact rationals, the exact extension
//! `Q(√2, i)` (elements `a + b√2 + (c + d√2)i`), and IEEE doubles in real
//! and complex flavours. Exact rationals sit on `i128` numerators and
//! denominators; overflow aborts (overflow checks are enabled in every
//! profile of this workspace).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = Ratio<i128>;

/// Default tolerance applied to identity checks in floating-point modes.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

static FLOAT_TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695);

/// Current floating-point tolerance, [`FLOAT_TOLERANCE`] unless overridden.
pub fn float_tolerance() -> f64 {
    f64::from_bits(FLOAT_TOLERANCE_BITS.load(Ordering::Relaxed))
}

/// Process-wide override of the floating-point tolerance.
pub fn set_float_tolerance(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::ParseScalar(format!("tolerance {tol} must be positive and finite")));
    }
    FLOAT_TOLERANCE_BITS.store(tol.to_bits(), Ordering::Relaxed);
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarMode {
    RationalExact,
    ExtIS2Exact,
    Real64,
    Complex64,
}

impl ScalarMode {
    pub fn is_exact(self) -> bool {
        matches!(self, ScalarMode::RationalExact | ScalarMode::ExtIS2Exact)
    }
}

/// Textual rendering of a scalar as `re + s2re·√2 + (im + s2im·√2)·i`.
///
/// Exact components are written as `"p/q"`; floating components use the
/// shortest round-trip decimal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarParts {
    pub re: String,
    pub im: String,
    pub s2re: String,
    pub s2im: String,
}

pub trait Scalar:
    Copy
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    const MODE: ScalarMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: Rational) -> Self;
    fn try_inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    /// Absolute value as a double, used for reporting and pivoting.
    fn modulus(&self) -> f64;
    fn parts(&self) -> ScalarParts;
    fn from_parts(parts: &ScalarParts) -> Result<Self>;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v as i128))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(num as i128, den as i128))
    }

    fn try_div(self, rhs: Self) -> Option<Self> {
        rhs.try_inv().map(|r| self * r)
    }

    fn is_exact() -> bool {
        Self::MODE.is_exact()
    }

    /// Zero for exact modes, [`float_tolerance`] otherwise.
    fn tolerance() -> f64 {
        if Self::is_exact() {
            0.0
        } else {
            float_tolerance()
        }
    }
}

/// Scalars that contain both `i` and `√2`.
pub trait ComplexScalar: Scalar {
    fn i() -> Self;
    fn sqrt2() -> Self;
}

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseScalar(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => t.parse::<i128>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    // accept exact renderings in float documents
    let q = parse_rational(t)?;
    Ok(*q.numer() as f64 / *q.denom() as f64)
}

fn rational_to_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

fn zero_string_exact() -> String {
    "0/1".to_string()
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::RationalExact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn conj(&self) -> Self {
        *self
    }
    fn modulus(&self) -> f64 {
        rational_to_f64(&self.abs())
    }
    fn parts(&self) -> ScalarParts {
        ScalarParts {
            re: format_rational(self),
            im: zero_string_exact(),
            s2re: zero_string_exact(),
            s2im: zero_string_exact(),
        }
    }
    fn from_parts(parts: &ScalarParts) -> Result<Self> {
        for extra in [&parts.im, &parts.s2re, &parts.s2im] {
            if !Zero::is_zero(&parse_rational(extra)?) {
                return Err(Error::ParseScalar(format!(
                    "non-rational component {extra:?} in rational mode"
                )));
            }
        }
        parse_rational(&parts.re)
    }
}

/// Element `a + b√2` of the real quadratic field `Q(√2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt2 {
    pub const fn new(a: Rational, b: Rational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        QSqrt2 { a, b: Zero::zero() }
    }

    pub fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }

    /// Galois conjugate `a - b√2`.
    pub fn galois(&self) -> Self {
        QSqrt2 { a: self.a, b: -self.b }
    }

    /// Field norm `a² - 2b²`; nonzero for every nonzero element.
    pub fn norm(&self) -> Rational {
        self.a * self.a - Rational::from_integer(2) * self.b * self.b
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let g = self.galois();
        Some(QSqrt2 { a: g.a / n, b: g.b / n })
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * std::f64::consts::SQRT_2
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}√2)", self.a, self.b)
    }
}

impl Add for QSqrt2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        QSqrt2 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for QSqrt2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        QSqrt2 { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Mul for QSqrt2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = Rational::from_integer(2);
        QSqrt2 {
            a: self.a * o.a + two * self.b * o.b,
            b: self.a * o.b + self.b * o.a,
        }
    }
}

impl Neg for QSqrt2 {
    type Output = Self;
    fn neg(self) -> Self {
        QSqrt2 { a: -self.a, b: -self.b }
    }
}

/// Exact element of `Q(√2, i)`, stored as `re + im·i` with `re, im ∈ Q(√2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ExtIS2 {
    pub re: QSqrt2,
    pub im: QSqrt2,
}

impl ExtIS2 {
    pub fn new(re: Rational, s2re: Rational, im: Rational, s2im: Rational) -> Self {
        ExtIS2 {
            re: QSqrt2::new(re, s2re),
            im: QSqrt2::new(im, s2im),
        }
    }

    pub fn from_components(re: QSqrt2, im: QSqrt2) -> Self {
        ExtIS2 { re, im }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for ExtIS2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}i", self.re, self.im)
    }
}

impl Add for ExtIS2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ExtIS2 { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for ExtIS2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ExtIS2 { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for ExtIS2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        ExtIS2 {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Neg for ExtIS2 {
    type Output = Self;
    fn neg(self) -> Self {
        ExtIS2 { re: -self.re, im: -self.im }
    }
}

macro_rules! assign_ops {
    ($t:ty) => {
        impl AddAssign for $t {
            fn add_assign(&mut self, o: Self) {
                *self = *self + o;
            }
        }
        impl SubAssign for $t {
            fn sub_assign(&mut self, o: Self) {
                *self = *self - o;
            }
        }
        impl MulAssign for $t {
            fn mul_assign(&mut self, o: Self) {
                *self = *self * o;
            }
        }
    };
}

assign_ops!(QSqrt2);
assign_ops!(ExtIS2);

impl Scalar for ExtIS2 {
    const MODE: ScalarMode = ScalarMode::ExtIS2Exact;

    fn zero() -> Self {
        ExtIS2::default()
    }
    fn one() -> Self {
        ExtIS2::from_rational(One::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_rational(q: Rational) -> Self {
        ExtIS2 {
            re: QSqrt2::rational(q),
            im: QSqrt2::default(),
        }
    }
    fn try_inv(&self) -> Option<Self> {
        // 1/(x + yi) = (x - yi)/(x² + y²), and x² + y² ≠ 0 in the real field Q(√2)
        let d = (self.re * self.re + self.im * self.im).inv()?;
        Some(ExtIS2 {
            re: self.re * d,
            im: -(self.im * d),
        })
    }
    fn conj(&self) -> Self {
        ExtIS2 { re: self.re, im: -self.im }
    }
    fn modulus(&self) -> f64 {
        self.to_complex64().norm()
    }
    fn parts(&self) -> ScalarParts {
        ScalarParts {
            re: format_rational(&self.re.a),
            im: format_rational(&self.im.a),
            s2re: format_rational(&self.re.b),
            s2im: format_rational(&self.im.b),
        }
    }
    fn from_parts(parts: &ScalarParts) -> Result<Self> {
        Ok(ExtIS2::new(
            parse_rational(&parts.re)?,
            parse_rational(&parts.s2re)?,
            parse_rational(&parts.im)?,
            parse_rational(&parts.s2im)?,
        ))
    }
}

impl ComplexScalar for ExtIS2 {
    fn i() -> Self {
        ExtIS2::new(Zero::zero(), Zero::zero(), One::one(), Zero::zero())
    }
    fn sqrt2() -> Self {
        ExtIS2::new(Zero::zero(), One::one(), Zero::zero(), Zero::zero())
    }
}

fn float_string(v: f64) -> String {
    format!("{v:?}")
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Real64;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rational(q: Rational) -> Self {
        rational_to_f64(&q)
    }
    fn try_inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn conj(&self) -> Self {
        *self
    }
    fn modulus(&self) -> f64 {
        self.abs()
    }
    fn parts(&self) -> ScalarParts {
        ScalarParts {
            re: float_string(*self),
            im: float_string(0.0),
            s2re: float_string(0.0),
            s2im: float_string(0.0),
        }
    }
    fn from_parts(parts: &ScalarParts) -> Result<Self> {
        Ok(parse_f64(&parts.re)?
            + parse_f64(&parts.s2re)? * std::f64::consts::SQRT_2)
    }
}

impl Scalar for Complex64 {
    const MODE: ScalarMode = ScalarMode::Complex64;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_rational(q: Rational) -> Self {
        Complex64::new(rational_to_f64(&q), 0.0)
    }
    fn try_inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn parts(&self) -> ScalarParts {
        ScalarParts {
            re: float_string(self.re),
            im: float_string(self.im),
            s2re: float_string(0.0),
            s2im: float_string(0.0),
        }
    }
    fn from_parts(parts: &ScalarParts) -> Result<Self> {
        let s2 = std::f64::consts::SQRT_2;
        Ok(Complex64::new(
            parse_f64(&parts.re)? + parse_f64(&parts.s2re)? * s2,
            parse_f64(&parts.im)? + parse_f64(&parts.s2im)? * s2,
        ))
    }
}

impl ComplexScalar for Complex64 {
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn sqrt2() -> Self {
        Complex64::new(std::f64::consts::SQRT_2, 0.0)
    }
}

/// `a` equals `b` exactly, or within tolerance in floating modes.
pub fn close<S: Scalar>(a: S, b: S) -> bool {
    if S::is_exact() {
        a == b
    } else {
        (a - b).modulus() <= S::tolerance()
    }
}

/// Compact human-readable rendering used in reports.
pub fn display_scalar<S: Scalar>(s: &S) -> String {
    let p = s.parts();
    if S::is_exact() {
        let simple = |t: &str| t.strip_suffix("/1").map(str::to_string).unwrap_or_else(|| t.to_string());
        let mut terms = Vec::new();
        for (val, suffix) in [(&p.re, ""), (&p.s2re, "√2"), (&p.im, "i"), (&p.s2im, "√2·i")] {
            if val != "0/1" {
                terms.push(format!("{}{}", simple(val), suffix));
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    } else if p.im == "0.0" {
        p.re
    } else {
        format!("{}+{}i", p.re, p.im)
    }
}
