//! Checks the correspondence between d-stable ideals of R = K[y][x] and ideals
//! of the constants R^d = K[y] for d = d/dx, on principal ideals J = g K[y].
//!
//! Variable 0 is `x`, variable 1 is `y`.

use super::mpoly::MPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const SAMPLE_DEGREE: u32 = 6;

fn d_dx(p: &MPoly) -> MPoly {
    p.partial(0)
}

/// Recovers the x-coefficients `a_n, ..., a_0` of `gamma` the way the lattice
/// argument does: `a_n = (n!)^{-1} t^n . gamma`, then recurse on
/// `gamma - x^n a_n`. Returned lowest degree first.
fn constants_decomposition(gamma: &MPoly) -> Vec<MPoly> {
    let mut rest = gamma.clone();
    let mut coeffs: Vec<MPoly> = Vec::new();
    while let Some(n) = rest.degree_in(0).filter(|_| !rest.is_zero()) {
        let mut a = rest.clone();
        for _ in 0..n {
            a = d_dx(&a);
        }
        let fact: i64 = (1..=i64::from(n)).product();
        let a = a.scale(&Scalar::ratio(1, fact));
        let mut xn = vec![0; 2];
        xn[0] = n;
        let lead = &MPoly::monomial(2, Scalar::one(), xn) * &a;
        rest = &rest - &lead;
        if coeffs.len() <= n as usize {
            coeffs.resize(n as usize + 1, MPoly::zero(2));
        }
        coeffs[n as usize] = a;
    }
    coeffs
}

/// Verifies both lattice maps on J = g K[y]:
/// (a) `R^d ∩ RJ = J`: for sampled h in K[y], membership in RJ (division in R)
///     agrees with membership in J (division in K[y]);
/// (b) `R(RJ ∩ R^d) = RJ`: every sampled element of RJ decomposes into
///     x-coefficients that are constants lying in RJ, and g itself is a constant.
pub fn verify_lattice_iso_principal(g: &MPoly) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    if g.nvars() != 2 {
        return Err(Error::ArityMismatch(2, g.nvars()));
    }
    let Some(g_uni) = g.to_poly(1) else {
        return Ok(false);
    };
    let y = MPoly::var(2, 1);
    let x = MPoly::var(2, 0);

    // (a)
    let mut samples: Vec<MPoly> = Vec::new();
    let mut yk = MPoly::one(2);
    for _ in 0..=SAMPLE_DEGREE {
        samples.push(yk.clone());
        samples.push(g * &yk);
        samples.push(&(g * &yk) + &MPoly::one(2));
        samples.push(&(g * &yk) + &y);
        yk = &yk * &y;
    }
    for h in &samples {
        if !d_dx(h).is_zero() {
            return Ok(false);
        }
        let in_rj = h.is_multiple_of(g)?;
        let h_uni = h.to_poly(1).expect("sample lies in K[y]");
        let in_j = g_uni.divides(&h_uni);
        if in_rj != in_j {
            return Ok(false);
        }
    }

    // (b)
    if !d_dx(g).is_zero() {
        return Ok(false);
    }
    let mut generators = Vec::new();
    for i in 0..=SAMPLE_DEGREE {
        for j in 0..=(SAMPLE_DEGREE - i) {
            let m = MPoly::monomial(2, Scalar::one(), vec![i, j]);
            generators.push(g * &m);
        }
    }
    // a few mixed elements of RJ as well
    let mixed = [
        &(&x * &x) + &y,
        &(&x * &y) - &MPoly::constant(2, Scalar::from_int(3)),
        &(&(&x * &x) * &x) + &(&y * &y),
    ];
    generators.extend(mixed.iter().map(|m| g * m));

    for gamma in &generators {
        let parts = constants_decomposition(gamma);
        let mut rebuilt = MPoly::zero(2);
        let mut xi = MPoly::one(2);
        for a in &parts {
            if !d_dx(a).is_zero() || !a.is_multiple_of(g)? {
                return Ok(false);
            }
            rebuilt = &rebuilt + &(&xi * a);
            xi = &xi * &x;
        }
        if &rebuilt != gamma {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commalg::poly::Poly;

    fn in_y(p: &Poly) -> MPoly {
        MPoly::from_poly(2, 1, p)
    }

    #[test]
    fn monomial_generator() {
        assert_eq!(verify_lattice_iso_principal(&MPoly::var(2, 1)), Ok(true));
    }

    #[test]
    fn irreducible_quadratic() {
        assert_eq!(verify_lattice_iso_principal(&in_y(&Poly::from_ints(&[1, 0, 1]))), Ok(true));
    }

    #[test]
    fn unit_ideal() {
        assert_eq!(verify_lattice_iso_principal(&MPoly::one(2)), Ok(true));
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(verify_lattice_iso_principal(&MPoly::zero(2)), Err(Error::ZeroGenerator));
    }

    #[test]
    fn generator_involving_x_is_not_a_constant() {
        assert_eq!(verify_lattice_iso_principal(&MPoly::var(2, 0)), Ok(false));
    }

    #[test]
    fn decomposition_rebuilds() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let gamma = &(&(&x * &x) * &y) + &(&x + &y);
        let parts = constants_decomposition(&gamma);
        assert_eq!(parts, vec![y.clone(), MPoly::one(2), y]);
    }
}
