//! Elements of S = K[x][t; sigma, d] stored in left normal form `sum a_i(x) t^i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::commalg::{DerivationSpec, Poly};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct SkewPoly {
    coeffs: Vec<Poly>,
    spec: Arc<DerivationSpec>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_ring(&self.spec, &other.spec)
    }
}

impl Eq for SkewPoly {}

fn same_ring(a: &Arc<DerivationSpec>, b: &Arc<DerivationSpec>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl SkewPoly {
    /// Builds `sum coeffs[i] t^i`; trailing zeros are trimmed.
    pub fn new(spec: Arc<DerivationSpec>, mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        SkewPoly { coeffs, spec }
    }

    pub fn zero(spec: &Arc<DerivationSpec>) -> Self {
        Self::new(Arc::clone(spec), Vec::new())
    }

    pub fn one(spec: &Arc<DerivationSpec>) -> Self {
        Self::from_poly(spec, Poly::one())
    }

    pub fn from_poly(spec: &Arc<DerivationSpec>, a: Poly) -> Self {
        Self::new(Arc::clone(spec), vec![a])
    }

    pub fn from_scalar(spec: &Arc<DerivationSpec>, c: Scalar) -> Self {
        Self::from_poly(spec, Poly::constant(c))
    }

    /// `a * t^n`
    pub fn term(spec: &Arc<DerivationSpec>, a: Poly, n: usize) -> Self {
        let mut coeffs = vec![Poly::zero(); n];
        coeffs.push(a);
        Self::new(Arc::clone(spec), coeffs)
    }

    pub fn theta(spec: &Arc<DerivationSpec>) -> Self {
        Self::theta_pow(spec, 1)
    }

    pub fn theta_pow(spec: &Arc<DerivationSpec>, n: usize) -> Self {
        Self::term(spec, Poly::one(), n)
    }

    pub fn spec(&self) -> &Arc<DerivationSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn constant_coeff(&self) -> Poly {
        self.coeff(0)
    }

    pub fn leading_coeff(&self) -> Option<&Poly> {
        self.coeffs.last()
    }

    /// The t-degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_same_ring(&self, other: &SkewPoly) -> Result<()> {
        if same_ring(&self.spec, &other.spec) {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn try_add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_same_ring(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Ok(Self::new(Arc::clone(&self.spec), coeffs))
    }

    pub fn try_sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        skew_mul(self, other)
    }

    /// `a * self` for `a` in K[x].
    pub fn left_scale(&self, a: &Poly) -> SkewPoly {
        let coeffs = self.coeffs.iter().map(|c| a * c).collect();
        Self::new(Arc::clone(&self.spec), coeffs)
    }

    /// `self * t`
    pub fn times_theta(&self) -> SkewPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Poly::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(Arc::clone(&self.spec), coeffs)
    }

    /// `t * self`, one commutation step: `t a = sigma(a) t + d(a)`.
    pub fn theta_times(&self) -> SkewPoly {
        let mut coeffs = vec![Poly::zero(); self.coeffs.len() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] = &coeffs[i + 1] + &self.spec.sigma(a);
            coeffs[i] = &coeffs[i] + &self.spec.apply(a);
        }
        Self::new(Arc::clone(&self.spec), coeffs)
    }

    /// Coordinates `c_i` with `self = sum t^i c_i`.
    pub fn right_normal_form(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for (n, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut right = vec![a.clone()];
            for _ in 0..n {
                right = right_times_theta(&self.spec, &right);
            }
            if out.len() < right.len() {
                out.resize(right.len(), Poly::zero());
            }
            for (o, c) in out.iter_mut().zip(right) {
                *o = &*o + &c;
            }
        }
        while out.last().is_some_and(Poly::is_zero) {
            out.pop();
        }
        out
    }

    /// Inverse of [`SkewPoly::right_normal_form`].
    pub fn from_right_form(spec: &Arc<DerivationSpec>, right: &[Poly]) -> SkewPoly {
        let mut acc = SkewPoly::zero(spec);
        for (i, c) in right.iter().enumerate() {
            let mut t = SkewPoly::from_poly(spec, c.clone());
            for _ in 0..i {
                t = t.theta_times();
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn right_divide(&self, divisor: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        right_divide(self, divisor)
    }

    pub fn act_on(&self, p: &Poly) -> Result<Poly> {
        module_action(self, p)
    }

    pub fn conductor(&self) -> Result<Option<u32>> {
        self.coeffs
            .iter()
            .try_fold(self.spec.conductor(), |acc, c| Scalar::common_conductor(acc, c.conductor()?))
    }
}

/// `(sum t^i c_i) t = sum t^{i+1} sigma^{-1}(c_i) - t^i d(sigma^{-1}(c_i))`,
/// from `a t = t sigma^{-1}(a) - d(sigma^{-1}(a))`.
fn right_times_theta(spec: &DerivationSpec, right: &[Poly]) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); right.len() + 1];
    for (i, c) in right.iter().enumerate() {
        let s = spec.sigma_inv(c);
        out[i] = &out[i] - &spec.apply(&s);
        out[i + 1] = &out[i + 1] + &s;
    }
    out
}

/// Product in S, by iterated single-step commutation.
pub fn skew_mul(f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
    f.check_same_ring(g)?;
    let mut acc = SkewPoly::zero(&f.spec);
    let mut theta_i_g = g.clone();
    for (i, a) in f.coeffs.iter().enumerate() {
        if i > 0 {
            theta_i_g = theta_i_g.theta_times();
        }
        if !a.is_zero() {
            acc = acc.try_add(&theta_i_g.left_scale(a))?;
        }
    }
    Ok(acc)
}

pub fn right_normal_form(f: &SkewPoly) -> Vec<Poly> {
    f.right_normal_form()
}

/// `f = quotient * g + remainder` with `deg_t remainder < deg_t g`.
///
/// The leading t-coefficient of `g` must be a nonzero constant.
pub fn right_divide(f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
    f.check_same_ring(g)?;
    let k = g.degree().ok_or(Error::DivisionByZero)?;
    let lead = g.leading_coeff().unwrap();
    if !lead.is_constant() {
        return Err(Error::NonUnitLeading(lead.to_string()));
    }
    let lead_inv = lead.constant_term().inv()?;
    let mut quotient = SkewPoly::zero(&f.spec);
    let mut rem = f.clone();
    while let Some(m) = rem.degree() {
        if m < k {
            break;
        }
        // t^{m-k} c = c t^{m-k} + lower, since sigma and d fix constants
        let a = rem.leading_coeff().unwrap().scale(&lead_inv);
        let t = SkewPoly::term(&f.spec, a, m - k);
        rem = rem.try_sub(&skew_mul(&t, g)?)?;
        quotient = quotient.try_add(&t)?;
        debug_assert!(rem.degree().is_none_or(|d| d < m));
    }
    Ok((quotient, rem))
}

/// `sum a_i t^i . p = sum a_i d^i(p)`, the action of S on R.
pub fn module_action(f: &SkewPoly, p: &Poly) -> Result<Poly> {
    f.spec.require_identity_sigma("the module action on K[x]")?;
    let mut acc = Poly::zero();
    let mut di = p.clone();
    for (i, a) in f.coeffs.iter().enumerate() {
        if i > 0 {
            di = f.spec.apply(&di);
        }
        acc = acc + a * &di;
    }
    Ok(acc)
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let theta = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let single = a.num_terms() == 1;
            let negative = single && a.leading_coeff().unwrap().is_negative_for_display();
            let body_poly = if negative { -a } else { a.clone() };
            let body = if theta.is_empty() {
                body_poly.to_string()
            } else if body_poly.is_one() {
                theta
            } else if single {
                format!("{body_poly}*{theta}")
            } else {
                format!("({body_poly})*{theta}")
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for SkewPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Neg for &SkewPoly {
    type Output = SkewPoly;
    fn neg(self) -> SkewPoly {
        SkewPoly::new(Arc::clone(&self.spec), self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for SkewPoly {
    type Output = SkewPoly;
    fn neg(self) -> SkewPoly {
        -&self
    }
}

// Operator forms panic when the operands come from different Ore extensions.
macro_rules! skew_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&SkewPoly> for &SkewPoly {
            type Output = SkewPoly;
            fn $method(self, rhs: &SkewPoly) -> SkewPoly {
                self.$checked(rhs).expect("operands share an Ore extension")
            }
        }
        impl $trait<SkewPoly> for SkewPoly {
            type Output = SkewPoly;
            fn $method(self, rhs: SkewPoly) -> SkewPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&SkewPoly> for SkewPoly {
            type Output = SkewPoly;
            fn $method(self, rhs: &SkewPoly) -> SkewPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<SkewPoly> for &SkewPoly {
            type Output = SkewPoly;
            fn $method(self, rhs: SkewPoly) -> SkewPoly {
                self.$method(&rhs)
            }
        }
    };
}

skew_binop!(Add, add, try_add);
skew_binop!(Sub, sub, try_sub);
skew_binop!(Mul, mul, try_mul);
