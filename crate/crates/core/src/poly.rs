//! Polynomials of degree at most two in time, and exact isolation of their
//! real roots. Irrational roots are kept as elements of `Q(sqrt(d))`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::field::{ExactField, Surd};
use crate::scalar::{self, Scalar, Sign};

/// `c0 + c1 t + c2 t^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quadratic {
    pub c0: Scalar,
    pub c1: Scalar,
    pub c2: Scalar,
}

impl Quadratic {
    pub fn new(c0: Scalar, c1: Scalar, c2: Scalar) -> Quadratic {
        Quadratic { c0, c1, c2 }
    }

    pub fn constant(c0: Scalar) -> Quadratic {
        Quadratic { c0, c1: Scalar::zero(), c2: Scalar::zero() }
    }

    pub fn linear(c0: Scalar, c1: Scalar) -> Quadratic {
        Quadratic { c0, c1, c2: Scalar::zero() }
    }

    pub fn degree(&self) -> Option<usize> {
        if !self.c2.is_zero() {
            Some(2)
        } else if !self.c1.is_zero() {
            Some(1)
        } else if !self.c0.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        &self.c0 + t * (&self.c1 + t * &self.c2)
    }

    pub fn eval_field<F: ExactField>(&self, t: &F) -> F {
        let c0 = F::from_scalar(&self.c0);
        let c1 = F::from_scalar(&self.c1);
        let c2 = F::from_scalar(&self.c2);
        c0 + t.clone() * (c1 + t.clone() * c2)
    }

    pub fn add(&self, o: &Quadratic) -> Quadratic {
        Quadratic { c0: &self.c0 + &o.c0, c1: &self.c1 + &o.c1, c2: &self.c2 + &o.c2 }
    }

    pub fn sub(&self, o: &Quadratic) -> Quadratic {
        Quadratic { c0: &self.c0 - &o.c0, c1: &self.c1 - &o.c1, c2: &self.c2 - &o.c2 }
    }

    /// Product of two polynomials of degree at most one.
    pub fn mul_linear(&self, o: &Quadratic) -> Quadratic {
        debug_assert!(self.c2.is_zero() && o.c2.is_zero());
        Quadratic {
            c0: &self.c0 * &o.c0,
            c1: &self.c0 * &o.c1 + &self.c1 * &o.c0,
            c2: &self.c1 * &o.c1,
        }
    }

    /// Real roots in the closed interval `[lo, hi]`, in increasing order.
    /// The zero polynomial has no isolated roots; callers test `is_zero`.
    pub fn roots_in(&self, lo: &Scalar, hi: &Scalar) -> Vec<EventTime> {
        let in_range = |r: &Scalar| r >= lo && r <= hi;
        match self.degree() {
            None | Some(0) => Vec::new(),
            Some(1) => {
                let r = -&self.c0 / &self.c1;
                if in_range(&r) {
                    vec![EventTime::Rational(r)]
                } else {
                    Vec::new()
                }
            }
            Some(_) => {
                let p = &self.c1 / &self.c2;
                let q = &self.c0 / &self.c2;
                let centre = -&p / scalar::int(2);
                let disc = &centre * &centre - &q;
                if disc.is_negative() {
                    return Vec::new();
                }
                if disc.is_zero() {
                    return if in_range(&centre) { vec![EventTime::Rational(centre)] } else { Vec::new() };
                }
                if let Some(s) = scalar::exact_sqrt(&disc) {
                    return [&centre - &s, &centre + &s]
                        .into_iter()
                        .filter(|r| in_range(r))
                        .map(EventTime::Rational)
                        .collect();
                }
                [-Scalar::from_integer(1.into()), Scalar::from_integer(1.into())]
                    .into_iter()
                    .map(|b| EventTime::Irrational(Surd::new(centre.clone(), b, disc.clone())))
                    .filter(|e| e.cmp_rational(lo) == Ordering::Greater && e.cmp_rational(hi) == Ordering::Less)
                    .collect()
            }
        }
    }
}

/// An event time: a rational, or a root `centre +- sqrt(d)` of an irreducible
/// monic quadratic. Irrational roots are stored canonically, so two of them
/// are equal exactly when their fields are equal.
#[derive(Debug, Clone)]
pub enum EventTime {
    Rational(Scalar),
    Irrational(Surd),
}

impl EventTime {
    pub fn as_rational(&self) -> Option<&Scalar> {
        match self {
            EventTime::Rational(r) => Some(r),
            EventTime::Irrational(_) => None,
        }
    }

    pub fn to_surd(&self) -> Surd {
        match self {
            EventTime::Rational(r) => Surd::rational(r.clone()),
            EventTime::Irrational(s) => s.clone(),
        }
    }

    pub fn cmp_rational(&self, r: &Scalar) -> Ordering {
        match self {
            EventTime::Rational(x) => x.cmp(r),
            EventTime::Irrational(s) => match (s.clone() - Surd::rational(r.clone())).sign() {
                Sign::Negative => Ordering::Less,
                Sign::Zero => Ordering::Equal,
                Sign::Positive => Ordering::Greater,
            },
        }
    }

    /// Rational bracket `[lo, hi]` containing the time with `hi - lo <= width`.
    /// Rational times give the degenerate bracket. For irrational times both
    /// endpoints differ from the time.
    pub fn bracket(&self, width: &Scalar) -> (Scalar, Scalar) {
        match self {
            EventTime::Rational(r) => (r.clone(), r.clone()),
            EventTime::Irrational(s) => {
                let (mut lo, mut hi) = s.bounds();
                // bounds() may land on the value only if it were rational.
                while self.cmp_rational(&lo) != Ordering::Greater {
                    lo = &lo - (&hi - &lo + scalar::rat(1, 1 << 20));
                }
                while self.cmp_rational(&hi) != Ordering::Less {
                    hi = &hi + (&hi - &lo + scalar::rat(1, 1 << 20));
                }
                refine(self, lo, hi, width)
            }
        }
    }

    /// Approximate value, for display.
    pub fn approx(&self) -> f64 {
        match self {
            EventTime::Rational(r) => scalar::to_f64(r),
            EventTime::Irrational(s) => {
                let (lo, hi) = s.bounds();
                scalar::to_f64(&scalar::midpoint(&lo, &hi))
            }
        }
    }
}

fn refine(t: &EventTime, mut lo: Scalar, mut hi: Scalar, width: &Scalar) -> (Scalar, Scalar) {
    while &(&hi - &lo) > width {
        let m = scalar::midpoint(&lo, &hi);
        match t.cmp_rational(&m) {
            Ordering::Greater => lo = m,
            Ordering::Less => hi = m,
            Ordering::Equal => return (m.clone(), m),
        }
    }
    (lo, hi)
}

impl PartialEq for EventTime {
    fn eq(&self, other: &EventTime) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for EventTime {}

impl PartialOrd for EventTime {
    fn partial_cmp(&self, other: &EventTime) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EventTime {
    fn cmp(&self, other: &EventTime) -> Ordering {
        match (self, other) {
            (EventTime::Rational(a), EventTime::Rational(b)) => a.cmp(b),
            (EventTime::Irrational(_), EventTime::Rational(b)) => self.cmp_rational(b),
            (EventTime::Rational(a), EventTime::Irrational(_)) => other.cmp_rational(a).reverse(),
            (EventTime::Irrational(x), EventTime::Irrational(y)) => {
                if x.d == y.d {
                    return match (x.clone() - y.clone()).sign() {
                        Sign::Negative => Ordering::Less,
                        Sign::Zero => Ordering::Equal,
                        Sign::Positive => Ordering::Greater,
                    };
                }
                // Different canonical radicands mean different minimal
                // polynomials, hence different numbers: refine until the
                // brackets separate.
                let mut w = scalar::rat(1, 1 << 10);
                loop {
                    let (alo, ahi) = self.bracket(&w);
                    let (blo, bhi) = other.bracket(&w);
                    if ahi < blo {
                        return Ordering::Less;
                    }
                    if bhi < alo {
                        return Ordering::Greater;
                    }
                    w = &w / scalar::int(1 << 16);
                }
            }
        }
    }
}
