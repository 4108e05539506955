//! Sign of a real element of a cyclotomic field.
//!
//! A real element `Σ c_j ζ^j` equals `Σ c_j cos(2πj/k)`. The sign is decided
//! by a floating-point estimate when its error bound is conclusive, and
//! otherwise by rational interval enclosures of `π` and the cosines at
//! doubling precision until the enclosure excludes zero.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Cyclotomic, Rational};

#[derive(Clone, Debug)]
struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    fn around(x: Rational, err: &Rational) -> Self {
        Interval {
            lo: &x - err,
            hi: &x + err,
        }
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_negative() {
            Interval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            Interval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    fn add(&self, o: &Interval) -> Self {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn round_out(&self, bits: u32) -> Self {
        Interval {
            lo: round_to_grid(&self.lo, bits, false),
            hi: round_to_grid(&self.hi, bits, true),
        }
    }
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn round_to_grid(x: &Rational, bits: u32, up: bool) -> Rational {
    let scale = pow2(bits);
    let scaled = x * Rational::from_integer(scale.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() };
    Rational::new(n.to_integer(), scale)
}

fn grid_eps(bits: u32) -> Rational {
    Rational::new(BigInt::one(), pow2(bits))
}

/// Enclosure of `atan(1/x)` for an integer `x >= 2`.
fn atan_inv(x: u32, bits: u32) -> Interval {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let eps = grid_eps(bits + 4);
    let mut sum = Rational::zero();
    let mut pow = x.clone(); // x^{2m+1}
    let mut m: u64 = 0;
    loop {
        let term = Rational::new(BigInt::one(), BigInt::from(2 * m + 1) * &pow);
        if m.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        pow = &pow * &x2;
        m += 1;
        let next = Rational::new(BigInt::one(), BigInt::from(2 * m + 1) * &pow);
        if next < eps {
            return Interval::around(sum, &next).round_out(bits + 2);
        }
    }
}

fn pi_interval(bits: u32) -> Interval {
    let a = atan_inv(5, bits + 8).scale(&Rational::from_integer(16.into()));
    let b = atan_inv(239, bits + 8).scale(&Rational::from_integer((-4).into()));
    a.add(&b).round_out(bits + 4)
}

/// Enclosure of `cos(x)` at a rational point via Taylor with Lagrange remainder.
fn cos_point(x: &Rational, bits: u32) -> Interval {
    let x2 = x * x;
    let eps = grid_eps(bits + 4);
    let mut sum = Rational::zero();
    let mut term = Rational::one(); // x^{2m}/(2m)!
    let mut m: u64 = 0;
    loop {
        if m.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        m += 1;
        term = &term * &x2 / Rational::from_integer(BigInt::from((2 * m - 1) * (2 * m)));
        if term.abs() < eps {
            return Interval::around(sum, &term.abs()).round_out(bits + 2);
        }
    }
}

/// Enclosure of `cos(2πj/k)`.
fn cos_root(j: u32, k: u32, pi: &Interval, bits: u32) -> Interval {
    let j = j % k;
    let j = if 2 * j > k { k - j } else { j };
    if j == 0 {
        return Interval::point(Rational::one());
    }
    if 2 * j == k {
        return Interval::point(-Rational::one());
    }
    let f = Rational::new(BigInt::from(2 * j), BigInt::from(k));
    let theta = pi.scale(&f).round_out(bits + 4);
    // cos is decreasing on [0, π]
    let upper = cos_point(&theta.lo, bits).hi;
    let lower = if theta.hi >= pi.lo {
        -Rational::one()
    } else {
        cos_point(&theta.hi, bits).lo
    };
    Interval {
        lo: lower,
        hi: upper,
    }
}

fn f64_estimate(a: &Cyclotomic) -> Option<Ordering> {
    let k = a.order() as f64;
    let mut v = 0.0f64;
    let mut mag = 0.0f64;
    for (j, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cf = c.to_f64()?;
        if !cf.is_finite() {
            return None;
        }
        v += cf * (2.0 * std::f64::consts::PI * j as f64 / k).cos();
        mag += cf.abs();
    }
    let bound = mag * 1e-12 + 1e-300;
    if v > bound {
        Some(Ordering::Greater)
    } else if v < -bound {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Sign of a real cyclotomic number, decided exactly.
///
/// Panics if `a` is not real.
pub fn real_sign(a: &Cyclotomic) -> Ordering {
    assert!(a.is_real(), "real_sign called on a non-real element {}", a);
    if a.is_zero() {
        return Ordering::Equal;
    }
    if let Some(r) = a.as_rational() {
        return r.cmp(&Rational::zero());
    }
    if let Some(s) = f64_estimate(a) {
        return s;
    }
    let k = a.order();
    let mut bits = 96u32;
    loop {
        let pi = pi_interval(bits + 16);
        let mut acc = Interval::point(Rational::zero());
        for (j, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&cos_root(j as u32, k, &pi, bits).scale(c));
        }
        if acc.lo.is_positive() {
            return Ordering::Greater;
        }
        if acc.hi.is_negative() {
            return Ordering::Less;
        }
        bits *= 2;
        assert!(bits < 1 << 16, "sign refinement did not converge");
    }
}
