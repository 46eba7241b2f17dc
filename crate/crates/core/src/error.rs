use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot mix elements of Q(zeta_{0}) and Q(zeta_{1})")]
    ConductorMismatch(u32, u32),

    #[error("cyclotomic conductor must be positive")]
    InvalidConductor,

    #[error("zero has no multiplicative order")]
    ZeroOrder,

    #[error("sigma(x) = q*x + b needs q != 0 to be an automorphism")]
    DegenerateSigma,

    #[error("{0} is only defined for sigma = id")]
    SigmaNotIdentity(&'static str),

    #[error("operands live in different Ore extensions")]
    SpecMismatch,

    #[error("operands have different variable counts ({0} vs {1})")]
    ArityMismatch(usize, usize),

    #[error("leading t-coefficient {0} of the divisor is not a unit of K[x]")]
    NonUnitLeading(String),

    #[error("derivation is not certified locally nilpotent within {0} iterations")]
    NotLocallyNilpotent(u32),

    #[error("generator must be nonzero")]
    ZeroGenerator,

    #[error("d(x) vanishes at alpha = {0}, so (x - alpha) contains a nonzero d-ideal")]
    AlphaIsRoot(String),

    #[error("element already lies in I = S(x - alpha)t")]
    InIdealI,

    #[error("element lies in S(x - alpha)")]
    InSm,

    #[error("d(x) is constant, so K[x] is d-simple and has no proper d-ideal chain")]
    DSimple,

    #[error("{0} must be positive")]
    NonPositiveBound(&'static str),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
