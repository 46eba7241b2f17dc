//! Normal forms of Ore extensions K[x][t; sigma, d] with sigma(x) = q x + b, and
//! the decision whether injective hulls of simple modules are locally Artinian.
//!
//! Up to a change of variables every such extension is one of
//!
//! * K[x, y] (q = 1, b = 0, d = 0);
//! * a quantum plane `y x = q x y` (q != 1, r = 0);
//! * a quantum Weyl algebra `y x = q x y + 1` (q != 1, r != 0);
//! * a differential operator ring K[x][y; d] (q = 1, b = 0, d != 0);
//! * the shift type `y x = (x + 1) y`, i.e. K[y][x; -y d/dy] (q = 1, b != 0).

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::commalg::{DerivationSpec, Poly};
use crate::error::{Error, Result};
use crate::ore::{skew_mul, SkewPoly};
use crate::scalar::{root_of_unity_order, Scalar};

pub type OreSpec = DerivationSpec;

/// Order of `x -> q x + b` as an automorphism of K[x]; `None` when infinite.
///
/// `sigma^n(x) = q^n x + (q^n - 1)/(q - 1) b`, so for q != 1 the order is the
/// multiplicative order of q, and for q = 1 it is 1 or infinite.
pub fn sigma_order(q: &Scalar, b: &Scalar) -> Result<Option<u32>> {
    if q.is_one() {
        return Ok(b.is_zero().then_some(1));
    }
    root_of_unity_order(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormalForm {
    Polynomial,
    QuantumPlane { q: Scalar },
    QuantumWeyl { q: Scalar },
    DiffOpRing { dx: Poly },
    ShiftType,
}

impl NormalForm {
    pub fn tag(&self) -> &'static str {
        match self {
            NormalForm::Polynomial => "polynomial",
            NormalForm::QuantumPlane { .. } => "quantum_plane",
            NormalForm::QuantumWeyl { .. } => "quantum_weyl",
            NormalForm::DiffOpRing { .. } => "diff_op_ring",
            NormalForm::ShiftType => "shift_type",
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::Polynomial => write!(f, "K[x', y''] (commutative)"),
            NormalForm::QuantumPlane { q } => write!(f, "quantum plane y''x' = ({q})x'y''"),
            NormalForm::QuantumWeyl { q } => write!(f, "quantum Weyl algebra y''x' = ({q})x'y'' + 1"),
            NormalForm::DiffOpRing { dx } => write!(f, "differential operator ring K[x][y; ({dx}) d/dx]"),
            NormalForm::ShiftType => write!(f, "shift type y''x' = (x' + 1)y''"),
        }
    }
}

/// The substitution `x' = x_scale * x + x_shift`, `y'' = r^{-1} (t - p(x'))`,
/// with both new generators also written out as elements of S.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoData {
    pub x_scale: Scalar,
    pub x_shift: Scalar,
    /// Polynomial in `x'`.
    pub p: Poly,
    pub r: Scalar,
    pub x_new: SkewPoly,
    pub y_new: SkewPoly,
}

impl IsoData {
    fn build(
        spec: &Arc<OreSpec>,
        x_scale: Scalar,
        x_shift: Scalar,
        p: Poly,
        r: Scalar,
    ) -> Result<IsoData> {
        let x_in_x = Poly::from_coeffs([x_shift.clone(), x_scale.clone()]);
        let r_inv = r.inv()?;
        let p_in_x = p.compose(&x_in_x);
        let y_new = SkewPoly::new(
            Arc::clone(spec),
            vec![(-p_in_x).scale(&r_inv), Poly::constant(r_inv)],
        );
        Ok(IsoData {
            x_new: SkewPoly::from_poly(spec, x_in_x),
            y_new,
            x_scale,
            x_shift,
            p,
            r,
        })
    }

    /// `y'' x'` and the right-hand side of the target relation, both computed in S.
    pub fn replay(&self, target: &NormalForm) -> Result<(SkewPoly, SkewPoly)> {
        let spec = self.x_new.spec();
        let lhs = skew_mul(&self.y_new, &self.x_new)?;
        let xy = skew_mul(&self.x_new, &self.y_new)?;
        let rhs = match target {
            NormalForm::Polynomial => xy,
            NormalForm::QuantumPlane { q } => xy.left_scale(&Poly::constant(q.clone())),
            NormalForm::QuantumWeyl { q } => {
                &xy.left_scale(&Poly::constant(q.clone())) + &SkewPoly::one(spec)
            }
            NormalForm::DiffOpRing { dx } => {
                let x_new = self.x_new.constant_coeff();
                &xy + &SkewPoly::from_poly(spec, dx.compose(&x_new))
            }
            NormalForm::ShiftType => &xy + &self.y_new,
        };
        Ok((lhs, rhs))
    }

    /// The substitution is invertible and reproduces the target relation exactly.
    pub fn verify(&self, target: &NormalForm) -> bool {
        let invertible = !self.x_scale.is_zero()
            && !self.r.is_zero()
            && self.x_new.degree() == Some(0)
            && self.y_new.degree() == Some(1)
            && self.y_new.coeff(1).is_constant();
        invertible && matches!(self.replay(target), Ok((lhs, rhs)) if lhs == rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub normal_form: NormalForm,
    pub iso: IsoData,
}

pub fn normalize(spec: &OreSpec) -> Result<Normalization> {
    let shared = Arc::new(spec.clone());
    let (q, b, dx) = (spec.q(), spec.b(), spec.dx());
    let (normal_form, iso) = if !q.is_one() {
        let one_minus_q = &Scalar::one() - q;
        let c = b.checked_div(&(q - &Scalar::one()))?;
        // d(x') written as a polynomial in x' = x + c
        let dx_new = dx.compose(&Poly::from_coeffs([-c.clone(), Scalar::one()]));
        let r = dx_new.constant_term();
        let rest = &dx_new - &Poly::constant(r.clone());
        let p = rest
            .div_exact(&Poly::monomial(one_minus_q, 1))?
            .ok_or_else(|| Error::Internal(format!("(1 - q)x' does not divide {rest}")))?;
        if r.is_zero() {
            let iso = IsoData::build(&shared, Scalar::one(), c, p, Scalar::one())?;
            (NormalForm::QuantumPlane { q: q.clone() }, iso)
        } else {
            let iso = IsoData::build(&shared, Scalar::one(), c, p, r)?;
            (NormalForm::QuantumWeyl { q: q.clone() }, iso)
        }
    } else if b.is_zero() {
        let iso = IsoData::build(&shared, Scalar::one(), Scalar::zero(), Poly::zero(), Scalar::one())?;
        if dx.is_zero() {
            (NormalForm::Polynomial, iso)
        } else {
            (NormalForm::DiffOpRing { dx: dx.clone() }, iso)
        }
    } else {
        // y' = t + b^{-1} d(x), so p(x') = -b^{-1} d(b x')
        let b_inv = b.inv()?;
        let p = dx.compose(&Poly::monomial(b.clone(), 1)).scale(&-b_inv.clone());
        let iso = IsoData::build(&shared, b_inv, Scalar::zero(), p, Scalar::one())?;
        (NormalForm::ShiftType, iso)
    };
    if !iso.verify(&normal_form) {
        return Err(Error::Internal(format!(
            "change of variables for {spec} does not reproduce the {} relation",
            normal_form.tag()
        )));
    }
    Ok(Normalization { normal_form, iso })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum ReasonCode {
    RootOfUnity { order: u32 },
    QNotRootOfUnity,
    LocallyNilpotent,
    NotLocallyNilpotent,
    InfiniteOrderShift,
}

impl ReasonCode {
    pub fn name(&self) -> &'static str {
        match self {
            ReasonCode::RootOfUnity { .. } => "RootOfUnity",
            ReasonCode::QNotRootOfUnity => "QNotRootOfUnity",
            ReasonCode::LocallyNilpotent => "LocallyNilpotent",
            ReasonCode::NotLocallyNilpotent => "NotLocallyNilpotent",
            ReasonCode::InfiniteOrderShift => "InfiniteOrderShift",
        }
    }

    pub fn explanation(&self) -> String {
        match self {
            ReasonCode::RootOfUnity { order } => {
                format!("sigma != id has finite order {order} (q is a primitive root of unity)")
            }
            ReasonCode::QNotRootOfUnity => "q != 1 is not a root of unity, so sigma has infinite order".into(),
            ReasonCode::LocallyNilpotent => "sigma = id and d(x) is constant, so d is locally nilpotent".into(),
            ReasonCode::NotLocallyNilpotent => {
                "sigma = id and d(x) is not constant, so d is not locally nilpotent".into()
            }
            ReasonCode::InfiniteOrderShift => "sigma(x) = x + b with b != 0 has infinite order; the ring is \
                 K[y'][x'; -y' d/dy'] whose derivation is not locally nilpotent, so the verdict is negative \
                 even when d(x) is constant"
                .into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiamondVerdict {
    pub satisfied: bool,
    pub reason: ReasonCode,
    pub normal_form: NormalForm,
}

fn verdict(reason: ReasonCode, normal_form: NormalForm) -> DiamondVerdict {
    let satisfied = matches!(
        reason,
        ReasonCode::RootOfUnity { .. } | ReasonCode::LocallyNilpotent
    );
    DiamondVerdict {
        satisfied,
        reason,
        normal_form,
    }
}

/// Decides the property from (q, b, d(x)) directly: it holds iff sigma != id has
/// finite order, or sigma = id and d(x) is constant.
pub fn decide_diamond(spec: &OreSpec) -> Result<DiamondVerdict> {
    let normal_form = normalize(spec)?.normal_form;
    let reason = if spec.is_sigma_identity() {
        if spec.dx().is_constant() {
            ReasonCode::LocallyNilpotent
        } else {
            ReasonCode::NotLocallyNilpotent
        }
    } else if spec.q().is_one() {
        ReasonCode::InfiniteOrderShift
    } else {
        match sigma_order(spec.q(), spec.b())? {
            Some(order) => ReasonCode::RootOfUnity { order },
            None => ReasonCode::QNotRootOfUnity,
        }
    };
    Ok(verdict(reason, normal_form))
}

/// The same decision read off the normal form alone.
pub fn verdict_from_normal_form(normal_form: &NormalForm) -> Result<DiamondVerdict> {
    let reason = match normal_form {
        NormalForm::Polynomial => ReasonCode::LocallyNilpotent,
        NormalForm::DiffOpRing { dx } if dx.is_constant() => ReasonCode::LocallyNilpotent,
        NormalForm::DiffOpRing { .. } => ReasonCode::NotLocallyNilpotent,
        NormalForm::QuantumPlane { q } | NormalForm::QuantumWeyl { q } => match root_of_unity_order(q)? {
            Some(order) => ReasonCode::RootOfUnity { order },
            None => ReasonCode::QNotRootOfUnity,
        },
        NormalForm::ShiftType => ReasonCode::InfiniteOrderShift,
    };
    Ok(verdict(reason, normal_form.clone()))
}
