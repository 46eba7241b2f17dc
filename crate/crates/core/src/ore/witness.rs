//! Witnesses for differential operator rings S = K[x][t; d] at a maximal ideal
//! m = (x - alpha) of K[x]:
//!
//! * coordinates of S/Sm, which is free over K on the classes of `t^i`;
//! * membership in I = S(x - alpha)t;
//! * multipliers pushing any element outside I into St \ I (St/I is essential in S/I);
//! * strict chains `S<f^j> + St` showing S/I is not Artinian;
//! * cofactors `u` with `u g = 1 mod Sm` showing Sm is a maximal left ideal.
//!
//! Every certificate carries a `verify` method that re-checks its claims from
//! the stored data alone.

use std::sync::Arc;

use serde::Serialize;

use super::skew::{skew_mul, SkewPoly};
use crate::commalg::{d_ideal_closure, DerivationSpec, Poly};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// Coordinates of `f + Sm` in S/Sm: write `f = sum t^i c_i` and evaluate each
/// `c_i` at alpha. `f` lies in Sm iff every coordinate is zero.
pub fn reduce_mod_sm(f: &SkewPoly, alpha: &Scalar) -> Result<Vec<Scalar>> {
    f.spec().require_identity_sigma("reduction modulo S(x - alpha)")?;
    Ok(f.right_normal_form().iter().map(|c| c.eval(alpha)).collect())
}

fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn in_sm(f: &SkewPoly, alpha: &Scalar) -> Result<bool> {
    Ok(is_zero_vector(&reduce_mod_sm(f, alpha)?))
}

/// Membership in I = S(x - alpha)t: `f = q t` with `q` in Sm.
pub fn membership_i(f: &SkewPoly, alpha: &Scalar) -> Result<bool> {
    f.spec().require_identity_sigma("membership in S(x - alpha)t")?;
    if !f.constant_coeff().is_zero() {
        return Ok(false);
    }
    let q = SkewPoly::new(Arc::clone(f.spec()), f.coeffs().iter().skip(1).cloned().collect());
    in_sm(&q, alpha)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialWitness {
    pub alpha: Scalar,
    pub input: SkewPoly,
    pub multiplier: SkewPoly,
    pub product: SkewPoly,
    /// Power of `t` applied before the final `(b t - d(b))` factor.
    pub shift_steps: u32,
}

impl EssentialWitness {
    pub fn verify(&self) -> bool {
        let Ok(product) = skew_mul(&self.multiplier, &self.input) else {
            return false;
        };
        product == self.product
            && !product.is_zero()
            && product.constant_coeff().is_zero()
            && membership_i(&product, &self.alpha) == Ok(false)
    }
}

/// Finds `s` with `s u` in St \ I.
///
/// If `u` already lies in St, `s = 1`. Otherwise with `a0` the constant
/// coefficient of `u`, `m` the least integer with `d^m(a0)(alpha) != 0` and
/// `b = d^m(a0)` (the constant coefficient of `t^m u`), the multiplier is
/// `s = (b t - d(b)) t^m`; `(b t - d(b)) b = b^2 t`.
pub fn essentialize(u: &SkewPoly, alpha: &Scalar) -> Result<EssentialWitness> {
    let spec = u.spec();
    spec.require_identity_sigma("essentialize")?;
    if spec.dx().eval(alpha).is_zero() {
        return Err(Error::AlphaIsRoot(alpha.to_string()));
    }
    if u.is_zero() || membership_i(u, alpha)? {
        return Err(Error::InIdealI);
    }

    let a0 = u.constant_coeff();
    let (multiplier, shift_steps) = if a0.is_zero() {
        (SkewPoly::one(spec), 0)
    } else {
        // ord_alpha(d(a)) = ord_alpha(a) - 1 while f(alpha) != 0, so m <= deg a0
        let limit = a0.degree().unwrap_or(0) + 1;
        let mut m = 0;
        let mut dm = a0.clone();
        while dm.eval(alpha).is_zero() {
            if m >= limit {
                return Err(Error::Internal(format!(
                    "d^i({a0}) vanishes at {alpha} for all i <= {limit}"
                )));
            }
            dm = spec.apply(&dm);
            m += 1;
        }
        let shifted = skew_mul(&SkewPoly::theta_pow(spec, m as usize), u)?;
        let b = shifted.constant_coeff();
        let corrector = SkewPoly::new(Arc::clone(spec), vec![-spec.apply(&b), b]);
        (skew_mul(&corrector, &SkewPoly::theta_pow(spec, m as usize))?, m)
    };

    let product = skew_mul(&multiplier, u)?;
    let witness = EssentialWitness {
        alpha: alpha.clone(),
        input: u.clone(),
        multiplier,
        product,
        shift_steps,
    };
    if !witness.verify() {
        return Err(Error::Internal(format!(
            "multiplier {} does not move {} into St \\ I",
            witness.multiplier, u
        )));
    }
    Ok(witness)
}

/// Evidence for one step `L_j = S<f^j> + St` of the chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub j: u32,
    /// `f^j`; since `<f^j>` is d-stable, `L_j ∩ K[x] = <f^j>`.
    pub generator: Poly,
    /// `d(f^j) = stability_cofactor * f^j`.
    pub stability_cofactor: Poly,
    /// Monic generator returned by the d-ideal closure of `f^j`.
    pub closure: Poly,
    /// Whether `f^{j+1}` divides `f^j`, i.e. `f^j ∈ L_{j+1}`; `None` for the last link.
    pub next_divides: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCertificate {
    pub f: Poly,
    pub alpha: Scalar,
    pub length: u32,
    /// `f(alpha)`, nonzero: `(x - alpha)` contains no nonzero d-ideal.
    pub f_at_alpha: Scalar,
    /// `(x - alpha) t`, the generator of I; it lies in St, hence in every `L_j`.
    pub ideal_generator: SkewPoly,
    pub links: Vec<ChainLink>,
}

impl ChainCertificate {
    pub fn verify(&self) -> bool {
        let spec = DerivationSpec::differential(self.f.clone());
        if self.f.is_constant()
            || self.f_at_alpha != self.f.eval(&self.alpha)
            || self.f_at_alpha.is_zero()
            || self.links.len() != self.length as usize
        {
            return false;
        }
        let gen = &self.ideal_generator;
        if gen.degree() != Some(1)
            || !gen.constant_coeff().is_zero()
            || gen.coeff(1) != Poly::linear_root(&self.alpha)
        {
            return false;
        }
        for (idx, link) in self.links.iter().enumerate() {
            let j = idx as u32 + 1;
            let fj = self.f.pow(j);
            if link.j != j || link.generator != fj {
                return false;
            }
            if &link.stability_cofactor * &fj != spec.apply(&fj) {
                return false;
            }
            if d_ideal_closure(&fj, &spec).ok().as_ref() != Some(&fj.monic()) || link.closure != fj.monic() {
                return false;
            }
            let expected_next = (j < self.length).then(|| self.f.pow(j + 1).divides(&fj));
            if link.next_divides != expected_next || link.next_divides == Some(true) {
                return false;
            }
        }
        true
    }

    /// True when every `L_j` is strictly contained in its predecessor.
    pub fn is_strict(&self) -> bool {
        self.links.iter().all(|l| l.next_divides != Some(true))
    }
}

/// Builds the strict chain `L_1 > L_2 > ... > L_k` of left ideals containing
/// I = S(x - alpha)t for the derivation `d = dx * d/dx`.
pub fn chain_certificate(dx: &Poly, alpha: &Scalar, k: u32) -> Result<ChainCertificate> {
    if k == 0 {
        return Err(Error::NonPositiveBound("chain length"));
    }
    if dx.is_constant() {
        return Err(Error::DSimple);
    }
    let f_at_alpha = dx.eval(alpha);
    if f_at_alpha.is_zero() {
        return Err(Error::AlphaIsRoot(alpha.to_string()));
    }
    let spec = Arc::new(DerivationSpec::differential(dx.clone()));
    let mut links = Vec::with_capacity(k as usize);
    for j in 1..=k {
        let fj = dx.pow(j);
        let stability_cofactor = spec
            .apply(&fj)
            .div_exact(&fj)?
            .ok_or_else(|| Error::Internal(format!("<{fj}> is not d-stable")))?;
        let closure = d_ideal_closure(&fj, &spec)?;
        let next_divides = (j < k).then(|| dx.pow(j + 1).divides(&fj));
        links.push(ChainLink {
            j,
            generator: fj,
            stability_cofactor,
            closure,
            next_divides,
        });
    }
    let cert = ChainCertificate {
        f: dx.clone(),
        alpha: alpha.clone(),
        length: k,
        f_at_alpha,
        ideal_generator: SkewPoly::term(&spec, Poly::linear_root(alpha), 1),
        links,
    };
    if !cert.verify() {
        return Err(Error::Internal("chain certificate failed re-verification".into()));
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityCertificate {
    pub alpha: Scalar,
    pub g: SkewPoly,
    pub cofactor: SkewPoly,
    /// Total degree bound (x-degree + t-degree) at which the cofactor was found.
    pub search_degree: u32,
    /// Coordinates of `cofactor * g` in S/Sm; must be `(1, 0, 0, ...)`.
    pub residue: Vec<Scalar>,
}

impl MaximalityCertificate {
    pub fn verify(&self) -> bool {
        let Ok(prod) = skew_mul(&self.cofactor, &self.g) else {
            return false;
        };
        let Ok(coords) = reduce_mod_sm(&prod, &self.alpha) else {
            return false;
        };
        coords == self.residue && is_unit_residue(&coords)
    }
}

fn is_unit_residue(coords: &[Scalar]) -> bool {
    coords.first().is_some_and(Scalar::is_one) && is_zero_vector(&coords[1..])
}

/// Searches `u = sum_{i+j <= D'} c_ij x^i t^j`, for `D' = 0, 1, ..., max_degree`,
/// with `u g = 1 mod Sm`. Returns `None` if no cofactor exists within the bound.
pub fn maximality_certificate(
    alpha: &Scalar,
    g: &SkewPoly,
    max_degree: u32,
) -> Result<Option<MaximalityCertificate>> {
    let spec = g.spec();
    spec.require_identity_sigma("maximality certificates")?;
    if in_sm(g, alpha)? {
        return Err(Error::InSm);
    }
    let mut basis: Vec<SkewPoly> = Vec::new();
    let mut images: Vec<Vec<Scalar>> = Vec::new();
    for degree in 0..=max_degree {
        for j in 0..=degree {
            let i = degree - j;
            let mono = SkewPoly::term(spec, Poly::monomial(Scalar::one(), i), j as usize);
            images.push(reduce_mod_sm(&skew_mul(&mono, g)?, alpha)?);
            basis.push(mono);
        }
        let width = images.iter().map(Vec::len).max().unwrap_or(0).max(1);
        let columns: Vec<Vec<Scalar>> = images
            .iter()
            .map(|v| {
                let mut v = v.clone();
                v.resize(width, Scalar::zero());
                v
            })
            .collect();
        let mut rhs = vec![Scalar::zero(); width];
        rhs[0] = Scalar::one();
        if let Some(sol) = linalg::solve(&columns, &rhs) {
            let cofactor = basis
                .iter()
                .zip(&sol)
                .filter(|(_, c)| !c.is_zero())
                .fold(SkewPoly::zero(spec), |acc, (m, c)| {
                    &acc + &m.left_scale(&Poly::constant(c.clone()))
                });
            let residue = reduce_mod_sm(&skew_mul(&cofactor, g)?, alpha)?;
            let cert = MaximalityCertificate {
                alpha: alpha.clone(),
                g: g.clone(),
                cofactor,
                search_degree: degree,
                residue,
            };
            if !cert.verify() {
                return Err(Error::Internal("cofactor failed re-verification".into()));
            }
            return Ok(Some(cert));
        }
    }
    Ok(None)
}
