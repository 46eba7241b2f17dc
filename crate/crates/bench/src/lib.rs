//! Fixed inputs shared by the benchmarks.

use std::sync::Arc;

use ore_core::{DerivationSpec, Poly, Scalar, SkewPoly};

/// `d = x^2 d/dx`, the running example for witnesses at alpha = 1.
pub fn x_squared() -> Arc<DerivationSpec> {
    Arc::new(DerivationSpec::differential(Poly::from_ints(&[0, 0, 1])))
}

/// A dense element of t-degree `n` whose coefficients have degree `n`.
pub fn dense(spec: &Arc<DerivationSpec>, n: usize) -> SkewPoly {
    let coeffs = (0..=n)
        .map(|i| Poly::from_coeffs((0..=n).map(|j| Scalar::ratio((i * 7 + j * 3) as i64 % 11 - 5, 1 + (i + j) as i64 % 3))))
        .collect();
    SkewPoly::new(Arc::clone(spec), coeffs)
}

/// `t^n + x t^(n-1) + ... + x^n`, monic in t.
pub fn monic(spec: &Arc<DerivationSpec>, n: usize) -> SkewPoly {
    let coeffs = (0..=n)
        .map(|i| if i == n { Poly::one() } else { Poly::monomial(Scalar::one(), (n - i) as u32) })
        .collect();
    SkewPoly::new(Arc::clone(spec), coeffs)
}
