//! Commutative side: K[x], K[x1..xn], sigma-derivations and d-ideals.

pub mod derivation;
pub mod lattice;
pub mod mpoly;
pub mod multi;
pub mod poly;

pub use derivation::{
    d_apply, d_ideal_closure, d_primitive_witness, is_d_simple, is_locally_nilpotent_uni,
    DerivationSpec,
};
pub use lattice::verify_lattice_iso_principal;
pub use mpoly::MPoly;
pub use multi::{lie_datum, lnd_check_multi, LieDatum, LndVerdict, MultiDerivation};
pub use poly::Poly;
