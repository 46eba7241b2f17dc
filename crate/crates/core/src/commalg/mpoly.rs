use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse polynomial in `nvars` commuting variables.
///
/// Exponent vectors are ordered lexicographically with variable 0 most
/// significant; that order drives [`MPoly::div_rem`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(nvars, c, vec![0; nvars])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, Scalar::one(), e)
    }

    pub fn monomial(nvars: usize, c: Scalar, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    /// Embeds a univariate polynomial as a polynomial in variable `var`.
    pub fn from_poly(nvars: usize, var: usize, p: &Poly) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in p.terms() {
            let mut exps = vec![0; nvars];
            exps[var] = e;
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Reads off a univariate polynomial if only variable `var` occurs.
    pub fn to_poly(&self, var: usize) -> Option<Poly> {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return None;
            }
            out = out + Poly::monomial(c.clone(), e[var]);
        }
        Some(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    /// True if variable `i` has a positive exponent in some term.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn conductor(&self) -> Result<Option<u32>> {
        self.terms
            .values()
            .try_fold(None, |acc, c| Scalar::common_conductor(acc, c.conductor()))
    }

    fn leading(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(exps, s);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn partial(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * Scalar::from_int(i64::from(e[i])));
        }
        out
    }

    /// Division by a single polynomial in lex order: `self = q*g + r` with no
    /// term of `r` divisible by the leading monomial of `g`.
    pub fn div_rem(&self, g: &MPoly) -> Result<(MPoly, MPoly)> {
        if self.nvars != g.nvars {
            return Err(Error::ArityMismatch(self.nvars, g.nvars));
        }
        let (lm, lc) = g.leading().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        let mut rem = MPoly::zero(self.nvars);
        while let Some((e, c)) = r.leading() {
            let (e, c) = (e.clone(), c.clone());
            if e.iter().zip(lm).all(|(a, b)| a >= b) {
                let shift: Vec<u32> = e.iter().zip(lm).map(|(a, b)| a - b).collect();
                let t = MPoly::monomial(self.nvars, &c * &lc_inv, shift);
                r = &r - &(&t * g);
                q = q + t;
            } else {
                r.terms.remove(&e);
                rem.add_term(e, c);
            }
        }
        Ok((q, rem))
    }

    /// Membership in the principal ideal generated by `g`.
    pub fn is_multiple_of(&self, g: &MPoly) -> Result<bool> {
        Ok(self.div_rem(g)?.1.is_zero())
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative_for_display();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    let name = names.get(v).map_or_else(|| format!("x{}", v + 1), |s| s.to_string());
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let coeff = if mag.is_compound() {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if mono.is_empty() {
                out.push_str(&coeff);
            } else {
                if !mag.is_one() {
                    out.push_str(&coeff);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Add<MPoly> for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub<MPoly> for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul<MPoly> for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}
