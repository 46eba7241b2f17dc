//! The skew polynomial ring S = K[x][t; sigma, d] and its witness generators.

pub mod skew;
pub mod witness;

pub use skew::{module_action, right_divide, right_normal_form, skew_mul, SkewPoly};
pub use witness::{
    chain_certificate, essentialize, in_sm, maximality_certificate, membership_i, reduce_mod_sm,
    ChainCertificate, ChainLink, EssentialWitness, MaximalityCertificate,
};
