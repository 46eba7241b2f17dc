//! Seeded generators of small random scalars, polynomials and skew polynomials.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commalg::{DerivationSpec, Poly};
use crate::ore::SkewPoly;
use crate::scalar::Scalar;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A rational with numerator in [-5, 5] and denominator in [1, 3].
    pub fn scalar(&mut self) -> Scalar {
        let num = self.int(-5, 5);
        let den = self.int(1, 3);
        Scalar::ratio(num, den)
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Degree at most `max_deg`, sparse-ish: each coefficient is zero with probability 1/3.
    pub fn poly(&mut self, max_deg: u32) -> Poly {
        let deg = self.int(0, max_deg as i64) as u32;
        Poly::from_coeffs((0..=deg).map(|_| {
            if self.rng.gen_ratio(1, 3) {
                Scalar::zero()
            } else {
                self.scalar()
            }
        }))
    }

    pub fn nonzero_poly(&mut self, max_deg: u32) -> Poly {
        loop {
            let p = self.poly(max_deg);
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn nonconstant_poly(&mut self, max_deg: u32) -> Poly {
        assert!(max_deg >= 1);
        loop {
            let p = self.poly(max_deg);
            if !p.is_constant() {
                return p;
            }
        }
    }

    pub fn skew(&mut self, spec: &Arc<DerivationSpec>, max_theta: usize, max_deg: u32) -> SkewPoly {
        let n = self.index(max_theta + 1);
        let coeffs = (0..=n).map(|_| self.poly(max_deg)).collect();
        SkewPoly::new(Arc::clone(spec), coeffs)
    }

    pub fn nonzero_skew(&mut self, spec: &Arc<DerivationSpec>, max_theta: usize, max_deg: u32) -> SkewPoly {
        loop {
            let f = self.skew(spec, max_theta, max_deg);
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// Exact t-degree `n` with leading coefficient 1.
    pub fn theta_monic(&mut self, spec: &Arc<DerivationSpec>, n: usize, max_deg: u32) -> SkewPoly {
        let mut coeffs: Vec<Poly> = (0..n).map(|_| self.poly(max_deg)).collect();
        coeffs.push(Poly::one());
        SkewPoly::new(Arc::clone(spec), coeffs)
    }

    /// q from a small pool of rationals and roots of unity, never 0.
    pub fn q(&mut self) -> Scalar {
        match self.index(4) {
            0 => Scalar::zeta(self.int(2, 8) as u32).expect("positive conductor"),
            1 => Scalar::one(),
            _ => self.nonzero_scalar(),
        }
    }

    pub fn ore_spec(&mut self, max_deg: u32) -> DerivationSpec {
        let q = self.q();
        let b = if self.rng.gen_ratio(1, 2) { Scalar::zero() } else { self.scalar() };
        DerivationSpec::new(q, b, self.poly(max_deg)).expect("q is nonzero and all scalars share a field")
    }
}
