use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("odd multiplicity {mult} on symplectic-type constituent {id}")]
    OddSymplecticMultiplicity { id: String, mult: u32 },
    #[error("Weyl group of order {order} exceeds enumeration bound {bound}")]
    EnumerationBound { order: u128, bound: u128 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("group has infinite center: {0}")]
    InfiniteCenter(String),
    #[error("invalid local invariant at place {place}: {reason}")]
    InvalidLocal { place: String, reason: String },
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("point lies on the degenerate locus: {0}")]
    Degenerate(String),
    #[error("pole of the Gamma function at {0}")]
    GammaPole(f64),
    #[error("diagram check failed at {0}")]
    Diagram(String),
}

pub type Result<T> = std::result::Result<T, Error>;
