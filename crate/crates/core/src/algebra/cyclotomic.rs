//! Exact arithmetic in cyclotomic fields `Q(ζ_k)`.
//!
//! Elements are stored on the power basis `1, ζ, …, ζ^{φ(k)-1}` after
//! reduction modulo the k-th cyclotomic polynomial, so two elements of the
//! same order are equal iff their coefficient vectors are equal. Elements of
//! different orders are compared (and combined) in `Q(ζ_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Precomputed reduction data for one order.
#[derive(Debug)]
struct Table {
    phi: usize,
    /// `powers[m]` is `ζ^m` on the power basis, for `0 <= m < order`.
    powers: Vec<Vec<i64>>,
    /// Exponents `t` in `1..order` coprime to the order (Galois group).
    units: Vec<u32>,
}

fn poly_cache() -> &'static RwLock<HashMap<u32, Vec<i64>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn table_cache() -> &'static RwLock<HashMap<u32, Arc<Table>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Table>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (constant term first) of the k-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(k: u32) -> Vec<i64> {
    assert!(k >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().read().unwrap().get(&k) {
        return p.clone();
    }
    // x^k - 1 divided by every Φ_d with d | k, d < k.
    let mut num = vec![0i64; k as usize + 1];
    num[0] = -1;
    num[k as usize] = 1;
    for d in 1..k {
        if k.is_multiple_of(d) {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    poly_cache().write().unwrap().insert(k, num.clone());
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = rem.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[i + j] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

fn table(order: u32) -> Arc<Table> {
    if let Some(t) = table_cache().read().unwrap().get(&order) {
        return Arc::clone(t);
    }
    let poly = cyclotomic_polynomial(order);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x and reduce x^phi = -(poly - x^phi)
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..phi - 1]);
        if top != 0 {
            for j in 0..phi {
                next[j] -= top * poly[j];
            }
        }
        cur = next;
    }
    let units = (1..order.max(2))
        .filter(|t| t.gcd(&order) == 1)
        .collect::<Vec<_>>();
    let t = Arc::new(Table { phi, powers, units });
    table_cache().write().unwrap().insert(order, Arc::clone(&t));
    t
}

/// Euler's totient of `k`, i.e. the degree of `Q(ζ_k)` over `Q`.
pub fn totient(k: u32) -> usize {
    table(k).phi
}

/// An exact element of `Q(ζ_order)` in canonical reduced form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Builds `Σ c_j ζ^j` from an arbitrary-length power-basis vector.
    /// Exponents are taken modulo `order`.
    pub fn from_power_coeffs(order: u32, coeffs: &[Rational]) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let t = table(order);
        let mut out = vec![Rational::zero(); t.phi];
        for (m, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pw = &t.powers[m % order as usize];
            for (o, &p) in out.iter_mut().zip(pw) {
                if p != 0 {
                    *o += c * Rational::from_integer(BigInt::from(p));
                }
            }
        }
        Cyclotomic { order, coeffs: out }
    }

    /// Wraps coefficients that are already reduced (length φ(order)).
    pub fn from_reduced(order: u32, coeffs: Vec<Rational>) -> Self {
        assert_eq!(
            coeffs.len(),
            totient(order),
            "coefficient vector has wrong length"
        );
        Cyclotomic { order, coeffs }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The primitive root `ζ_k = e^{2πi/k}`.
    pub fn zeta(k: u32) -> Self {
        Self::root_of_unity(k, 1)
    }

    /// `ζ_k^j` for any integer `j`.
    pub fn root_of_unity(k: u32, j: i64) -> Self {
        let e = j.rem_euclid(k as i64) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        Self::from_power_coeffs(k, &c)
    }

    /// The imaginary unit `i = ζ_4`.
    pub fn i() -> Self {
        Self::zeta(4)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(ζ_target)`; `order` must divide `target`.
    pub fn embed(&self, target: u32) -> Self {
        assert!(
            target.is_multiple_of(self.order),
            "cannot embed order {} into order {}",
            self.order,
            target
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut c = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, v) in self.coeffs.iter().enumerate() {
            c[j * step] = v.clone();
        }
        Self::from_power_coeffs(target, &c)
    }

    /// Applies the Galois automorphism `ζ ↦ ζ^t` (`t` coprime to the order).
    pub fn galois(&self, t: u32) -> Self {
        let k = self.order as usize;
        let mut c = vec![Rational::zero(); k];
        for (j, v) in self.coeffs.iter().enumerate() {
            if !v.is_zero() {
                c[(j * t as usize) % k] += v;
            }
        }
        Self::from_power_coeffs(self.order, &c)
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    /// True when the element equals its complex conjugate.
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Field norm `N_{Q(ζ_k)/Q}`.
    pub fn norm(&self) -> Rational {
        let t = table(self.order);
        let mut acc = self.clone();
        for &u in t.units.iter().filter(|&&u| u != 1) {
            acc = &acc * &self.galois(u);
        }
        acc.as_rational()
            .expect("norm of a cyclotomic element is rational")
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Cyclotomic {
                order: self.order,
                coeffs: {
                    let mut c = vec![Rational::zero(); self.coeffs.len()];
                    c[0] = r.recip();
                    c
                },
            });
        }
        // a^{-1} = (Π_{σ ≠ 1} σ(a)) / N(a)
        let t = table(self.order);
        let mut cof = Self::one().embed(self.order);
        for &u in t.units.iter().filter(|&&u| u != 1) {
            cof = &cof * &self.galois(u);
        }
        let n = (&cof * self)
            .as_rational()
            .expect("norm of a cyclotomic element is rational");
        Some(cof.scale(&n.recip()))
    }

    pub fn pow(&self, e: i64) -> Self {
        let (mut base, mut e) = if e < 0 {
            (self.inv().expect("negative power of zero"), -e)
        } else {
            (self.clone(), e)
        };
        let mut acc = Self::one().embed(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order if the element is a root of unity.
    pub fn root_order(&self) -> Option<u32> {
        // roots of unity in Q(ζ_k) have order dividing lcm(2, k)
        let bound = self.order.lcm(&2);
        let mut acc = self.clone();
        for m in 1..=bound {
            if acc.is_one() {
                return Some(m);
            }
            acc = &acc * self;
        }
        None
    }

    /// Coefficients of the element viewed in `Q(ζ_target)`, used as an exact hash key.
    pub fn key_at(&self, target: u32) -> Vec<Rational> {
        self.embed(target).coeffs
    }
}

fn align(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
    let l = a.order.lcm(&b.order);
    (a.embed(l), b.embed(l))
}

/// Order of the smallest field containing every element.
pub fn common_order<'a, I: IntoIterator<Item = &'a Cyclotomic>>(items: I) -> u32 {
    items.into_iter().fold(1u32, |acc, c| acc.lcm(&c.order))
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = align(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.order != rhs.order {
            let (a, b) = align(self, rhs);
            return &a + &b;
        }
        Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.order != rhs.order {
            let (a, b) = align(self, rhs);
            return &a - &b;
        }
        Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.order != rhs.order {
            // scalar fast paths keep the larger field
            if self.order == 1 {
                return rhs.scale(&self.coeffs[0]);
            }
            if rhs.order == 1 {
                return self.scale(&rhs.coeffs[0]);
            }
            let (a, b) = align(self, rhs);
            return &a * &b;
        }
        let phi = self.coeffs.len();
        if phi == 1 {
            return Cyclotomic {
                order: self.order,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyclotomic::from_power_coeffs(self.order, &prod)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match j {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if j == 1 {
                        write!(f, "ζ{}", self.order)?;
                    } else {
                        write!(f, "ζ{}^{}", self.order, j)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
