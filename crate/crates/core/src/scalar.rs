//! Exact field elements: rationals and elements of cyclotomic fields Q(zeta_n).
//!
//! A [`Cyclotomic`] stores the residue of a polynomial in `zeta_n` modulo the
//! n-th cyclotomic polynomial, so its coefficient vector always has length
//! `phi(n)`. Values whose residue is a rational number are demoted to
//! [`Scalar::Rational`], which keeps equality structural: `zeta(4)^2` and `-1`
//! compare equal.
//!
//! Mixing two different conductors is rejected. Operator impls (`+`, `*`, ...)
//! panic on such a mix; use [`scalar_arith`] or the `checked_*` methods when
//! the operands are not known to share a field.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
}

/// Element of Q(zeta_n) that is not rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic; promotes rationals into the cyclotomic field of
/// the other operand.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

/// Least `m >= 1` with `q^m = 1`, or `None` when `q` is not a root of unity.
///
/// Torsion units of Q(zeta_n) are `+-zeta_n^k`, so their orders divide
/// `lcm(2, n)`; it is enough to test `q^lcm(2, n)` and then scan divisors.
pub fn root_of_unity_order(q: &Scalar) -> Result<Option<u32>> {
    if q.is_zero() {
        return Err(Error::ZeroOrder);
    }
    match q {
        Scalar::Rational(r) => {
            if r.is_one() {
                Ok(Some(1))
            } else if (-r).is_one() {
                Ok(Some(2))
            } else {
                Ok(None)
            }
        }
        Scalar::Cyclotomic(c) => {
            let l = 2u32.lcm(&c.conductor);
            if !q.pow(u64::from(l)).is_one() {
                return Ok(None);
            }
            Ok((1..=l)
                .filter(|m| l % m == 0)
                .find(|&m| q.pow(u64::from(m)).is_one()))
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The primitive root of unity `zeta_n = exp(2 pi i / n)`.
    pub fn zeta(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConductor);
        }
        let mut v = vec![BigRational::zero(), BigRational::one()];
        reduce_mod(&mut v, &cyclotomic_poly(n));
        Ok(Cyclotomic::from_residue(n, v))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Cyclotomic(_) => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Cyclotomic(_) => None,
        }
    }

    /// Conductor of the cyclotomic field this value needs, `None` for rationals.
    pub fn conductor(&self) -> Option<u32> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Cyclotomic(c) => Some(c.conductor),
        }
    }

    /// Common field of two values, or an error when conductors differ.
    pub fn common_conductor(a: Option<u32>, b: Option<u32>) -> Result<Option<u32>> {
        match (a, b) {
            (Some(m), Some(n)) if m != n => Err(Error::ConductorMismatch(m, n)),
            (Some(m), _) | (_, Some(m)) => Ok(Some(m)),
            (None, None) => Ok(None),
        }
    }

    fn lift(&self, n: u32) -> Vec<BigRational> {
        let len = totient(n) as usize;
        match self {
            Scalar::Rational(r) => {
                let mut v = vec![BigRational::zero(); len];
                v[0] = r.clone();
                v
            }
            Scalar::Cyclotomic(c) => c.coeffs.clone(),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, other) {
            return Ok(Scalar::Rational(a + b));
        }
        let n = Self::common_conductor(self.conductor(), other.conductor())?.unwrap();
        let v = self
            .lift(n)
            .into_iter()
            .zip(other.lift(n))
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic::from_residue(n, v))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Rational(r), Scalar::Cyclotomic(c))
            | (Scalar::Cyclotomic(c), Scalar::Rational(r)) => Ok(Cyclotomic::from_residue(
                c.conductor,
                c.coeffs.iter().map(|x| x * r).collect(),
            )),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                let n = Self::common_conductor(Some(a.conductor), Some(b.conductor))?.unwrap();
                let mut prod = dense_mul(&a.coeffs, &b.coeffs);
                reduce_mod(&mut prod, &cyclotomic_poly(n));
                Ok(Cyclotomic::from_residue(n, prod))
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rational(r) => Ok(Scalar::Rational(r.recip())),
            Scalar::Cyclotomic(c) => {
                let phi = cyclotomic_poly(c.conductor);
                let mut v = dense_inverse_mod(&c.coeffs, &phi);
                reduce_mod(&mut v, &phi);
                Ok(Cyclotomic::from_residue(c.conductor, v))
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e.unsigned_abs()))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// True when printing inside a product needs parentheses.
    pub fn is_compound(&self) -> bool {
        match self {
            Scalar::Rational(_) => false,
            Scalar::Cyclotomic(c) => c.coeffs.iter().filter(|x| !x.is_zero()).count() > 1,
        }
    }

    /// Sign used when this value is printed as a polynomial coefficient.
    pub(crate) fn is_negative_for_display(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Cyclotomic(c) => {
                !self.is_compound()
                    && c.coeffs
                        .iter()
                        .find(|x| !x.is_zero())
                        .is_some_and(|x| x.is_negative())
            }
        }
    }
}

impl Cyclotomic {
    /// Builds the scalar from a residue already reduced mod Phi_n.
    fn from_residue(n: u32, mut coeffs: Vec<BigRational>) -> Scalar {
        let len = totient(n) as usize;
        debug_assert!(coeffs.len() <= len || coeffs[len..].iter().all(Zero::is_zero));
        coeffs.resize(len, BigRational::zero());
        if coeffs[1..].iter().all(Zero::is_zero) {
            Scalar::Rational(coeffs.swap_remove(0))
        } else {
            Scalar::Cyclotomic(Cyclotomic {
                conductor: n,
                coeffs,
            })
        }
    }

    /// Reduces an arbitrary polynomial in zeta_n (low degree first).
    pub fn from_poly(n: u32, mut coeffs: Vec<BigRational>) -> Result<Scalar> {
        if n == 0 {
            return Err(Error::InvalidConductor);
        }
        reduce_mod(&mut coeffs, &cyclotomic_poly(n));
        Ok(Self::from_residue(n, coeffs))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients (low degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigRational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // z^n - 1 = prod_{d | n} Phi_d(z)
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = dense_divrem(&num, &cyclotomic_poly(d));
        debug_assert!(r.is_empty());
        num = q;
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, Arc::clone(&p));
    p
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn dense_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn dense_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut b = b.to_vec();
    trim(&mut b);
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Reduces `v` in place modulo the monic polynomial `m`.
fn reduce_mod(v: &mut Vec<BigRational>, m: &[BigRational]) {
    let deg = m.len() - 1;
    while v.len() > deg {
        let c = v.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let shift = v.len() - deg;
        for (i, y) in m[..deg].iter().enumerate() {
            v[shift + i] -= &c * y;
        }
    }
}

/// Inverse of `a` modulo the irreducible `m`, by the extended Euclidean algorithm.
fn dense_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
        (Vec::new(), vec![BigRational::one()]);
    while r1.len() > 1 {
        let (q, r) = dense_divrem(&r0, &r1);
        let qs = dense_mul(&q, &s1);
        let mut s2 = s0.clone();
        s2.resize(s2.len().max(qs.len()), BigRational::zero());
        for (i, x) in qs.into_iter().enumerate() {
            s2[i] -= x;
        }
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r1 is a nonzero constant because m is irreducible and a != 0 mod m
    let c = r1[0].recip();
    s1.iter().map(|x| x * &c).collect()
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => fmt_rational(r, f),
            Scalar::Cyclotomic(c) => {
                let n = c.conductor;
                let mut first = true;
                for (k, coeff) in c.coeffs.iter().enumerate().rev() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mag = coeff.abs();
                    if first {
                        if coeff.is_negative() {
                            f.write_str("-")?;
                        }
                    } else if coeff.is_negative() {
                        f.write_str(" - ")?;
                    } else {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    if k == 0 {
                        fmt_rational(&mag, f)?;
                        continue;
                    }
                    if !mag.is_one() {
                        fmt_rational(&mag, f)?;
                        f.write_str("*")?;
                    }
                    write!(f, "zeta({n})")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic {
                conductor: c.conductor,
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar {}: {}", stringify!($method), e),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}
