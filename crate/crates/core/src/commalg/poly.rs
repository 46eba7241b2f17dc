use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse univariate polynomial over [`Scalar`]. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<u32, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn x() -> Self {
        Poly::monomial(Scalar::one(), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::monomial(c, 0)
    }

    pub fn monomial(c: Scalar, exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { terms }
    }

    /// Builds from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Scalar::from_int(c)))
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = Scalar>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c))
            .collect();
        Poly { terms }
    }

    /// `x - alpha`
    pub fn linear_root(alpha: &Scalar) -> Self {
        Poly::x() - Poly::constant(alpha.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Scalar::is_one)
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    /// `None` stands for the degree of the zero polynomial, -infinity.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> Scalar {
        self.terms.get(&exp).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Scalar)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Conductor shared by all coefficients.
    pub fn conductor(&self) -> Result<Option<u32>> {
        self.terms
            .values()
            .try_fold(None, |acc, c| Scalar::common_conductor(acc, c.conductor()))
    }

    fn add_term(&mut self, exp: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(&e, a)| (e, a * c)).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: u32) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(&e, a)| (e + k, a.clone())).collect(),
        }
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        // Horner over the sparse exponents, highest first
        let mut acc = Scalar::zero();
        let mut prev: Option<u32> = None;
        for (&e, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc = acc * at.pow(u64::from(p - e));
            }
            acc = acc + c;
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc = acc * at.pow(u64::from(p));
        }
        acc
    }

    /// Substitutes `inner` for x.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        let mut prev: Option<u32> = None;
        for (&e, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc = &acc * &inner.pow(p - e);
            }
            acc = acc + Poly::constant(c.clone());
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc = &acc * &inner.pow(p);
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
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

    /// The formal derivative d/dx.
    pub fn derivative(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(&e, _)| e > 0)
                .map(|(&e, c)| (e - 1, c * Scalar::from_int(i64::from(e))))
                .collect(),
        }
    }

    /// Euclidean division over the field of coefficients.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading_coeff().unwrap().inv()?;
        let mut quot = Poly::zero();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let c = rem.leading_coeff().unwrap() * &lead_inv;
            let t = Poly::monomial(c, dr - dd);
            rem = &rem - &(&t * divisor);
            quot = quot + t;
        }
        Ok((quot, rem))
    }

    /// `Some(q)` with `self = q * divisor`, `None` if the division is inexact.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_ok_and(|q| q.is_some())
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => Poly::zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Order of vanishing at `alpha`.
    pub fn valuation_at(&self, alpha: &Scalar) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let lin = Poly::linear_root(alpha);
        let mut p = self.clone();
        let mut k = 0;
        while let Ok(Some(q)) = p.div_exact(&lin) {
            p = q;
            k += 1;
        }
        Some(k)
    }

    /// Writes the polynomial in the variable `var`.
    pub fn display_in(&self, var: &str) -> String {
        let mut out = String::new();
        if self.is_zero() {
            return "0".into();
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative_for_display();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            let coeff = if mag.is_compound() {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Self {
        Poly::constant(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
