//! Ordered fields with exact sign computation.
//!
//! The geometric kernel is generic over [`ExactField`] so that the verifier
//! can evaluate a polygon at an irrational event time (a root of a quadratic
//! with rational coefficients) without leaving exact arithmetic: such times
//! live in `Q(sqrt(d))`, represented by [`Surd`].

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Scalar, Sign};

pub trait ExactField:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn from_scalar(s: &Scalar) -> Self;
    fn sign(&self) -> Sign;

    /// A float within relative error 2^-50 of the value, when one is cheap.
    fn approx_f64(&self) -> Option<f64> {
        None
    }

    fn is_zero_elem(&self) -> bool {
        self.sign() == Sign::Zero
    }

    fn half(&self) -> Self {
        self.clone() / (Self::one_elem() + Self::one_elem())
    }

    /// Exact comparison through the sign of the difference.
    fn cmp_exact(&self, other: &Self) -> core::cmp::Ordering {
        match (self.clone() - other.clone()).sign() {
            Sign::Negative => core::cmp::Ordering::Less,
            Sign::Zero => core::cmp::Ordering::Equal,
            Sign::Positive => core::cmp::Ordering::Greater,
        }
    }
}

impl ExactField for Scalar {
    fn zero_elem() -> Self {
        <Scalar as Zero>::zero()
    }
    fn one_elem() -> Self {
        <Scalar as One>::one()
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn sign(&self) -> Sign {
        Sign::of(self)
    }
    fn approx_f64(&self) -> Option<f64> {
        // Small numerators and denominators convert without the slow path.
        if self.numer().bits() > 1000 || self.denom().bits() > 1000 {
            return None;
        }
        let x = crate::scalar::to_f64(self);
        x.is_finite().then_some(x)
    }
}

/// `a + b * sqrt(d)` with rational `a`, `b` and a rational radicand `d > 0`
/// that is not a perfect square. Values with `b == 0` are plain rationals and
/// combine with any radicand; two irrational operands must share `d`.
#[derive(Clone, Debug)]
pub struct Surd {
    pub a: Scalar,
    pub b: Scalar,
    pub d: Scalar,
}

impl Surd {
    pub fn new(a: Scalar, b: Scalar, d: Scalar) -> Surd {
        Surd { a, b, d }
    }

    pub fn rational(a: Scalar) -> Surd {
        Surd { a, b: Scalar::zero(), d: Scalar::zero() }
    }

    fn radicand(&self, other: &Surd) -> Scalar {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => Scalar::zero(),
            (false, true) => self.d.clone(),
            (true, false) => other.d.clone(),
            (false, false) => {
                assert_eq!(self.d, other.d, "mixing surds over different radicands");
                self.d.clone()
            }
        }
    }

    /// Lower and upper rational bounds, for reporting.
    pub fn bounds(&self) -> (Scalar, Scalar) {
        if self.b.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let lo = crate::scalar::sqrt_lower(&self.d);
        let hi = crate::scalar::sqrt_upper(&self.d);
        let x = &self.a + &self.b * &lo;
        let y = &self.a + &self.b * &hi;
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Surd) -> bool {
        (self.clone() - other.clone()).sign() == Sign::Zero
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        let d = self.radicand(&o);
        Surd { a: self.a + o.a, b: self.b + o.b, d }
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        let d = self.radicand(&o);
        Surd { a: self.a - o.a, b: self.b - o.b, d }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let d = self.radicand(&o);
        let a = &self.a * &o.a + &self.b * &o.b * &d;
        let b = &self.a * &o.b + &self.b * &o.a;
        Surd { a, b, d }
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, o: Surd) -> Surd {
        let d = self.radicand(&o);
        // (a + b r) / (c + e r) = (a + b r)(c - e r) / (c^2 - e^2 d)
        let norm = &o.a * &o.a - &o.b * &o.b * &d;
        assert!(!norm.is_zero(), "division by zero surd");
        let conj = Surd { a: o.a.clone(), b: -o.b.clone(), d: d.clone() };
        let num = self * conj;
        Surd { a: num.a / &norm, b: num.b / &norm, d }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { a: -self.a, b: -self.b, d: self.d }
    }
}

impl ExactField for Surd {
    fn zero_elem() -> Self {
        Surd::rational(Scalar::zero())
    }
    fn one_elem() -> Self {
        Surd::rational(Scalar::one())
    }
    fn from_scalar(s: &Scalar) -> Self {
        Surd::rational(s.clone())
    }
    fn sign(&self) -> Sign {
        let sa = Sign::of(&self.a);
        let sb = Sign::of(&self.b);
        if sb == Sign::Zero {
            return sa;
        }
        if sa == Sign::Zero || sa == sb {
            return sb;
        }
        // Opposite signs: compare a^2 with b^2 d. Equality would make sqrt(d)
        // rational, which the constructor of irrational times excludes.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * &self.d;
        if lhs > rhs {
            sa
        } else if lhs < rhs {
            sb
        } else {
            Sign::Zero
        }
    }
}
