//! Exact arithmetic in Ore extensions K[x][t; sigma, d] over Q and cyclotomic
//! fields, with certificate generators for the structure of injective hulls of
//! simple modules and a normal-form classifier.

pub mod classify;
pub mod commalg;
pub mod error;
pub mod linalg;
pub mod ore;
pub mod sample;
pub mod scalar;
pub mod selfcheck;

pub use classify::{
    decide_diamond, normalize, sigma_order, verdict_from_normal_form, DiamondVerdict, IsoData,
    NormalForm, Normalization, OreSpec, ReasonCode,
};
pub use commalg::{
    d_apply, d_ideal_closure, d_primitive_witness, is_d_simple, is_locally_nilpotent_uni,
    lie_datum, lnd_check_multi, verify_lattice_iso_principal, DerivationSpec, LieDatum,
    LndVerdict, MPoly, MultiDerivation, Poly,
};
pub use error::{Error, Result};
pub use ore::{
    chain_certificate, essentialize, in_sm, maximality_certificate, membership_i, module_action,
    reduce_mod_sm, right_divide, right_normal_form, skew_mul, ChainCertificate, ChainLink,
    EssentialWitness, MaximalityCertificate, SkewPoly,
};
pub use scalar::{root_of_unity_order, scalar_arith, ArithOp, Cyclotomic, Scalar};
