//! Exact rational scalars and the handful of helpers the geometry needs on
//! top of `BigRational`: signs, square-root bounds and decimal rendering.

use core::cmp::Ordering;

use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number. Always stored in lowest terms.
pub type Scalar = BigRational;

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &Scalar) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn from_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    #[must_use]
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.to_i8()
    }
}

/// `n / d` as a scalar. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn half(x: &Scalar) -> Scalar {
    x / int(2)
}

pub fn midpoint(a: &Scalar, b: &Scalar) -> Scalar {
    (a + b) / int(2)
}

/// Relative precision of the square-root bounds below: 2^-24.
const SQRT_PRECISION_BITS: u64 = 24;

fn scaled_sqrt_parts(r: &Scalar) -> (BigInt, BigInt, BigInt) {
    // sqrt(p/q) = sqrt(p*q)/q; scale by 2^m so the integer root has enough bits.
    let prod = r.numer() * r.denom();
    let root = prod.sqrt();
    let bits = root.bits();
    let m = SQRT_PRECISION_BITS.saturating_sub(bits) + 1;
    let scaled = prod << (2 * m as usize);
    let lo = scaled.sqrt();
    let den = r.denom() << (m as usize);
    (scaled, lo, den)
}

/// Rational lower bound on `sqrt(r)` within relative error 2^-24 (far inside 1%).
/// Panics on negative input.
pub fn sqrt_lower(r: &Scalar) -> Scalar {
    assert!(!r.is_negative(), "sqrt of negative scalar");
    if r.is_zero() {
        return Scalar::zero();
    }
    let (_, lo, den) = scaled_sqrt_parts(r);
    Scalar::new(lo, den)
}

/// Rational upper bound on `sqrt(r)` within relative error 2^-24.
pub fn sqrt_upper(r: &Scalar) -> Scalar {
    assert!(!r.is_negative(), "sqrt of negative scalar");
    if r.is_zero() {
        return Scalar::zero();
    }
    let (scaled, lo, den) = scaled_sqrt_parts(r);
    let hi = if &lo * &lo == scaled { lo } else { lo + BigInt::one() };
    Scalar::new(hi, den)
}

/// Exact square root when `r` is the square of a rational.
pub fn exact_sqrt(r: &Scalar) -> Option<Scalar> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &n * &n == *r.numer() && &d * &d == *r.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

/// Smallest integer `m >= 0` with `m * m >= r`, i.e. `ceil(sqrt(r))` computed exactly.
pub fn ceil_sqrt(r: &Scalar) -> BigInt {
    if !r.is_positive() {
        return BigInt::zero();
    }
    let fl = r.floor().to_integer();
    let mut m = fl.sqrt();
    while Scalar::from_integer(&m * &m) < *r {
        m += 1;
    }
    m
}

/// Largest power of two not above `r`, for `r > 0`. Keeps derived
/// coordinates short.
pub fn pow2_floor(r: &Scalar) -> Scalar {
    assert!(r.is_positive(), "pow2_floor of non-positive scalar");
    let two = Scalar::from_integer(BigInt::from(2));
    let mut p = Scalar::one();
    while &p > r {
        p = &p / &two;
    }
    while &(&p * &two) <= r {
        p = &p * &two;
    }
    p
}

/// Smallest power of two whose square is at least `r2`, for `r2 > 0`: an
/// upper bound on `sqrt(r2)`.
pub fn pow2_sqrt_ceil(r2: &Scalar) -> Scalar {
    assert!(r2.is_positive(), "pow2_sqrt_ceil of non-positive scalar");
    let two = Scalar::from_integer(BigInt::from(2));
    let mut p = Scalar::one();
    while &(&p * &p) < r2 {
        p = &p * &two;
    }
    while &(&p * &p / Scalar::from_integer(BigInt::from(4))) >= r2 {
        p = &p / &two;
    }
    p
}

pub fn ceil_int(r: &Scalar) -> BigInt {
    r.ceil().to_integer()
}

/// Nearest `f64`, for display only.
pub fn to_f64(r: &Scalar) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Falls back for huge numerators/denominators.
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
        let n = (r.numer() >> shift as usize).to_f64().unwrap_or(0.0);
        let d = (r.denom() >> shift as usize).to_f64().unwrap_or(1.0);
        if d == 0.0 {
            0.0
        } else {
            n / d
        }
    })
}

/// Decimal approximation of `sqrt(r)` for display.
pub fn sqrt_f64(r: &Scalar) -> f64 {
    to_f64(&sqrt_lower(r))
}

pub fn is_integer(r: &Scalar) -> bool {
    r.denom().is_one()
}

pub fn bigint_sign(b: &BigInt) -> Sign {
    match b.sign() {
        BigSign::Minus => Sign::Negative,
        BigSign::NoSign => Sign::Zero,
        BigSign::Plus => Sign::Positive,
    }
}
