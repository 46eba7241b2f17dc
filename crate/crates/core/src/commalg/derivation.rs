//! sigma-derivations of K[x] and the univariate d-ideal toolkit.
//!
//! A [`DerivationSpec`] fixes `sigma(x) = q*x + b` and the image `d(x)`;
//! `d` extends to all of K[x] through `d(uv) = sigma(u) d(v) + d(u) v`.

use std::fmt;

use serde::Serialize;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DerivationSpec {
    q: Scalar,
    b: Scalar,
    dx: Poly,
}

impl DerivationSpec {
    pub fn new(q: Scalar, b: Scalar, dx: Poly) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::DegenerateSigma);
        }
        let n = Scalar::common_conductor(q.conductor(), b.conductor())?;
        Scalar::common_conductor(n, dx.conductor()?)?;
        Ok(DerivationSpec { q, b, dx })
    }

    /// `sigma = id` and `d = dx * d/dx`.
    ///
    /// Panics if the coefficients of `dx` mix cyclotomic fields.
    pub fn differential(dx: Poly) -> Self {
        Self::new(Scalar::one(), Scalar::zero(), dx).expect("coefficients of d(x) share one field")
    }

    /// The Weyl algebra derivation d/dx.
    pub fn weyl() -> Self {
        Self::differential(Poly::one())
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn dx(&self) -> &Poly {
        &self.dx
    }

    pub fn is_sigma_identity(&self) -> bool {
        self.q.is_one() && self.b.is_zero()
    }

    pub(crate) fn require_identity_sigma(&self, what: &'static str) -> Result<()> {
        if self.is_sigma_identity() {
            Ok(())
        } else {
            Err(Error::SigmaNotIdentity(what))
        }
    }

    /// Field conductor shared by every scalar in the spec.
    pub fn conductor(&self) -> Option<u32> {
        let n = Scalar::common_conductor(self.q.conductor(), self.b.conductor()).ok()?;
        Scalar::common_conductor(n, self.dx.conductor().ok()?).ok()?
    }

    /// `sigma(x) = q*x + b` as a polynomial.
    pub fn sigma_x(&self) -> Poly {
        Poly::from_coeffs([self.b.clone(), self.q.clone()])
    }

    pub fn sigma(&self, p: &Poly) -> Poly {
        if self.is_sigma_identity() {
            return p.clone();
        }
        p.compose(&self.sigma_x())
    }

    /// Applies `sigma^{-1}`, i.e. substitutes `(x - b)/q`.
    pub fn sigma_inv(&self, p: &Poly) -> Poly {
        if self.is_sigma_identity() {
            return p.clone();
        }
        let qi = self.q.inv().expect("q != 0");
        let inner = Poly::from_coeffs([-(&self.b * &qi), qi]);
        p.compose(&inner)
    }

    /// `d(p)` via `d(x^n) = sigma(x) d(x^{n-1}) + d(x) x^{n-1}`.
    pub fn apply(&self, p: &Poly) -> Poly {
        let Some(deg) = p.degree() else {
            return Poly::zero();
        };
        let sx = self.sigma_x();
        let mut images = Vec::with_capacity(deg as usize + 1);
        images.push(Poly::zero());
        for n in 1..=deg {
            let prev = &images[n as usize - 1];
            images.push(&(&sx * prev) + &self.dx.shift(n - 1));
        }
        p.terms()
            .fold(Poly::zero(), |acc, (e, c)| acc + images[e as usize].scale(c))
    }

    /// `d^n(p)`.
    pub fn apply_n(&self, p: &Poly, n: u32) -> Poly {
        (0..n).fold(p.clone(), |acc, _| self.apply(&acc))
    }
}

impl fmt::Display for DerivationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma: q={}, b={}; d(x)={}", self.q, self.b, self.dx)
    }
}

pub fn d_apply(d: &DerivationSpec, p: &Poly) -> Poly {
    d.apply(p)
}

/// On K[x] in characteristic 0 a derivation is locally nilpotent iff `d(x)` is constant.
pub fn is_locally_nilpotent_uni(d: &DerivationSpec) -> Result<bool> {
    d.require_identity_sigma("univariate local nilpotency")?;
    Ok(d.dx().is_constant())
}

/// Monic generator of the smallest d-stable ideal containing `g`.
///
/// Iterates `h <- gcd(h, d(h))`; the degree drops until `h | d(h)`.
pub fn d_ideal_closure(g: &Poly, d: &DerivationSpec) -> Result<Poly> {
    d.require_identity_sigma("d-ideal closure")?;
    let mut h = g.monic();
    while !h.is_zero() {
        let next = h.gcd(&d.apply(&h));
        if next == h {
            break;
        }
        h = next;
    }
    Ok(h)
}

/// K[x] is d-simple iff `d(x)` is a nonzero constant.
pub fn is_d_simple(d: &DerivationSpec) -> Result<bool> {
    d.require_identity_sigma("d-simplicity")?;
    Ok(d.dx().is_constant() && !d.dx().is_zero())
}

/// Least `alpha` in 0, 1, 2, ... with `d(x)(alpha) != 0`; `(x - alpha)` then
/// contains no nonzero d-ideal. `None` when `d = 0`.
pub fn d_primitive_witness(d: &DerivationSpec) -> Result<Option<Scalar>> {
    d.require_identity_sigma("d-primitivity")?;
    let f = d.dx();
    if f.is_zero() {
        return Ok(None);
    }
    // f has at most deg f roots, so this scan stops within deg f + 1 steps
    Ok((0i64..)
        .map(Scalar::from_int)
        .find(|a| !f.eval(a).is_zero()))
}
