//! Derivations of K[x1..xn] (sigma = id): local-nilpotency semidecision and
//! the nilpotent Lie algebra g = span{d^i(x_j)} + K t they generate.

use std::collections::BTreeMap;

use serde::Serialize;

use super::mpoly::MPoly;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// A derivation of K[x1..xn] given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiDerivation {
    images: Vec<MPoly>,
}

impl MultiDerivation {
    pub fn new(images: Vec<MPoly>) -> Result<Self> {
        let n = images.len();
        let mut field = None;
        for im in &images {
            if im.nvars() != n {
                return Err(Error::ArityMismatch(n, im.nvars()));
            }
            field = Scalar::common_conductor(field, im.conductor()?)?;
        }
        Ok(MultiDerivation { images })
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[MPoly] {
        &self.images
    }

    /// `d(p) = sum_j dp/dx_j * d(x_j)`.
    pub fn apply(&self, p: &MPoly) -> MPoly {
        self.images
            .iter()
            .enumerate()
            .fold(MPoly::zero(self.nvars()), |acc, (j, im)| {
                &acc + &(&p.partial(j) * im)
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LndVerdict {
    /// Variables in `order` satisfy d(x_{o1}) in K and d(x_{oi}) in K[x_{o1}, ..., x_{o(i-1)}].
    Triangular { order: Vec<usize> },
    /// Every generator is killed by `d^max_iterations`.
    Nilpotent { max_iterations: u32 },
    /// No proof found; this is not a proof of non-nilpotency.
    NotNilpotentWithinBound { bound: u32 },
}

impl LndVerdict {
    pub fn is_certified(&self) -> bool {
        !matches!(self, LndVerdict::NotNilpotentWithinBound { .. })
    }
}

pub fn lnd_check_multi(d: &MultiDerivation, bound: u32) -> LndVerdict {
    if let Some(order) = triangular_order(d) {
        return LndVerdict::Triangular { order };
    }
    let mut worst = 0;
    for j in 0..d.nvars() {
        let mut v = MPoly::var(d.nvars(), j);
        let mut steps = 0;
        while !v.is_zero() {
            if steps == bound {
                return LndVerdict::NotNilpotentWithinBound { bound };
            }
            v = d.apply(&v);
            steps += 1;
        }
        worst = worst.max(steps);
    }
    LndVerdict::Nilpotent {
        max_iterations: worst,
    }
}

/// Greedy search: a variable can be placed once its image only involves
/// placed variables. Placing never hurts, so greedy finds an order iff one exists.
fn triangular_order(d: &MultiDerivation) -> Option<Vec<usize>> {
    let n = d.nvars();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n).find(|&j| {
            !placed[j] && (0..n).all(|v| placed[v] || !d.images[j].uses_var(v))
        })?;
        placed[next] = true;
        order.push(next);
    }
    Some(order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieDatum {
    /// All distinct nonzero `d^i(x_j)`, `i >= 0`.
    pub v_set: Vec<MPoly>,
    /// A basis of h = span(V), chosen greedily from `v_set`.
    pub basis_h: Vec<MPoly>,
    /// Matrix of `d` restricted to h: column k holds the coordinates of `d(basis_h[k])`.
    pub d_matrix: Vec<Vec<Scalar>>,
    /// Dimensions of the lower central series g = g^1 > g^2 > ... > 0.
    pub lower_central_dims: Vec<usize>,
    pub nilpotency_class: u32,
}

impl LieDatum {
    pub fn dim_h(&self) -> usize {
        self.basis_h.len()
    }

    pub fn dim_g(&self) -> usize {
        self.basis_h.len() + 1
    }
}

pub fn lie_datum(d: &MultiDerivation, bound: u32) -> Result<LieDatum> {
    let verdict = lnd_check_multi(d, bound);
    if !verdict.is_certified() {
        return Err(Error::NotLocallyNilpotent(bound));
    }
    let n = d.nvars();

    let mut v_set: Vec<MPoly> = Vec::new();
    for j in 0..n {
        let mut v = MPoly::var(n, j);
        while !v.is_zero() {
            if !v_set.contains(&v) {
                v_set.push(v.clone());
            }
            v = d.apply(&v);
        }
    }

    let monomials: BTreeMap<Vec<u32>, usize> = {
        let mut all: Vec<Vec<u32>> = v_set
            .iter()
            .flat_map(|p| p.terms().map(|(e, _)| e.to_vec()))
            .collect();
        all.sort();
        all.dedup();
        all.into_iter().enumerate().map(|(i, e)| (e, i)).collect()
    };
    let coords = |p: &MPoly| -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); monomials.len()];
        for (e, c) in p.terms() {
            let idx = monomials
                .get(e)
                .ok_or_else(|| Error::Internal(format!("{p} leaves span(V)")))?;
            v[*idx] = c.clone();
        }
        Ok(v)
    };

    let v_coords: Vec<Vec<Scalar>> = v_set.iter().map(&coords).collect::<Result<_>>()?;
    let basis_idx = linalg::independent_subset(&v_coords);
    let basis_h: Vec<MPoly> = basis_idx.iter().map(|&i| v_set[i].clone()).collect();
    let basis_cols: Vec<Vec<Scalar>> = basis_idx.iter().map(|&i| v_coords[i].clone()).collect();

    let mut d_matrix = Vec::with_capacity(basis_h.len());
    for b in &basis_h {
        let img = coords(&d.apply(b))?;
        let c = linalg::solve(&basis_cols, &img)
            .ok_or_else(|| Error::Internal(format!("d({b}) is not in span(V)")))?;
        d_matrix.push(c);
    }

    let lower_central_dims = lower_central_series(&d_matrix, basis_h.len())?;
    let nilpotency_class = lower_central_dims.len() as u32;
    Ok(LieDatum {
        v_set,
        basis_h,
        d_matrix,
        lower_central_dims,
        nilpotency_class,
    })
}

/// Elements of g are vectors (h-coordinates..., t-coefficient) with bracket
/// `[(h1, a1), (h2, a2)] = a1 d(h2) - a2 d(h1)`.
fn lower_central_series(d_matrix: &[Vec<Scalar>], dim_h: usize) -> Result<Vec<usize>> {
    let dim_g = dim_h + 1;
    let apply_d = |h: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); dim_h];
        for (k, hk) in h.iter().enumerate().take(dim_h) {
            if hk.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o = &*o + &(hk * &d_matrix[k][i]);
            }
        }
        out
    };
    let bracket = |u: &[Scalar], w: &[Scalar]| -> Vec<Scalar> {
        let du = apply_d(&u[..dim_h]);
        let dw = apply_d(&w[..dim_h]);
        let mut out: Vec<Scalar> = (0..dim_h)
            .map(|i| &(&u[dim_h] * &dw[i]) - &(&w[dim_h] * &du[i]))
            .collect();
        out.push(Scalar::zero());
        out
    };

    let g_basis: Vec<Vec<Scalar>> = (0..dim_g)
        .map(|i| {
            let mut e = vec![Scalar::zero(); dim_g];
            e[i] = Scalar::one();
            e
        })
        .collect();

    let mut dims = vec![dim_g];
    let mut current = g_basis.clone();
    loop {
        let products: Vec<Vec<Scalar>> = g_basis
            .iter()
            .flat_map(|a| current.iter().map(|c| bracket(a, c)))
            .collect();
        let keep = linalg::independent_subset(&products);
        let next: Vec<Vec<Scalar>> = keep.into_iter().map(|i| products[i].clone()).collect();
        if next.is_empty() {
            return Ok(dims);
        }
        if next.len() == current.len() {
            return Err(Error::Internal("lower central series does not terminate".into()));
        }
        dims.push(next.len());
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn triangular_two_vars() {
        // d(x) = y, d(y) = 1: order y < x
        let d = MultiDerivation::new(vec![var(2, 1), MPoly::one(2)]).unwrap();
        assert_eq!(lnd_check_multi(&d, 10), LndVerdict::Triangular { order: vec![1, 0] });
    }

    #[test]
    fn euler_derivation_not_certified() {
        let d = MultiDerivation::new(vec![var(1, 0)]).unwrap();
        assert_eq!(lnd_check_multi(&d, 10), LndVerdict::NotNilpotentWithinBound { bound: 10 });
        assert_eq!(lie_datum(&d, 10), Err(Error::NotLocallyNilpotent(10)));
    }

    #[test]
    fn y_squared_image() {
        let y = var(2, 1);
        let d = MultiDerivation::new(vec![&y * &y, MPoly::zero(2)]).unwrap();
        assert!(lnd_check_multi(&d, 5).is_certified());
    }

    #[test]
    fn iteration_fallback() {
        // no variable has a constant image, but the linear map squares to zero
        let (a, b) = (var(2, 0), var(2, 1));
        let d = MultiDerivation::new(vec![&a + &b, -&(&a + &b)]).unwrap();
        assert_eq!(lnd_check_multi(&d, 10), LndVerdict::Nilpotent { max_iterations: 2 });
    }

    #[test]
    fn heisenberg_datum() {
        let d = MultiDerivation::new(vec![MPoly::constant(1, Scalar::from_int(3))]).unwrap();
        let datum = lie_datum(&d, 8).unwrap();
        assert_eq!(datum.dim_h(), 2);
        assert_eq!(datum.dim_g(), 3);
        assert_eq!(datum.nilpotency_class, 2);
        assert_eq!(datum.lower_central_dims, vec![3, 1]);
    }

    #[test]
    fn two_variable_chain_datum() {
        let d = MultiDerivation::new(vec![var(2, 1), MPoly::one(2)]).unwrap();
        let datum = lie_datum(&d, 8).unwrap();
        assert_eq!(datum.v_set, vec![var(2, 0), var(2, 1), MPoly::one(2)]);
        assert_eq!(datum.dim_h(), 3);
        assert_eq!(datum.nilpotency_class, 3);
        assert_eq!(datum.lower_central_dims, vec![4, 2, 1]);
    }

    #[test]
    fn zero_derivation_is_abelian() {
        let d = MultiDerivation::new(vec![MPoly::zero(2), MPoly::zero(2)]).unwrap();
        let datum = lie_datum(&d, 4).unwrap();
        assert_eq!(datum.nilpotency_class, 1);
    }
}
