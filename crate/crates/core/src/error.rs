use thiserror::Error;

use crate::cyclicq::CyclicQuotient;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {r}")]
    NotInvertible { a: i64, r: i64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("monomials do not determine a unique positive weight ray: {0}")]
    DegenerateSystem(String),

    #[error("germ is not an isolated singularity: {0}")]
    NonIsolated(String),

    #[error("no monomial of weighted degree {degree} for weights {weights:?}")]
    EmptySupport { weights: Vec<i64>, degree: i64 },

    #[error("quotient {0} is not isolated")]
    NotIsolated(CyclicQuotient),

    #[error("exponent R = {exponent} is not invertible modulo stabilizer order {alpha}")]
    ExponentNotInvertible { exponent: i64, alpha: i64 },

    #[error("no nonnegative integer genus is consistent with the orbit data ({0})")]
    NoConsistentGenus(String),

    #[error("orbit invariants are inconsistent: {0}")]
    InconsistentInvariants(String),

    #[error("characteristic polynomial has negative cyclotomic exponent c_{index} = {exponent}")]
    NotAPolynomial { index: i64, exponent: i64 },

    #[error("hypersurface is not quasismooth at vertex P{vertex} (ambient type {ambient})")]
    NotQuasismoothAtVertex { vertex: usize, ambient: CyclicQuotient },

    #[error("vertex P{vertex} admits non-isomorphic transverse types {first} and {second}")]
    VertexTypeConflict {
        vertex: usize,
        first: CyclicQuotient,
        second: CyclicQuotient,
    },

    #[error("could not pair singular points with strata: {0}")]
    UnmatchedStratum(String),

    #[error("order relation undefined: s(g) - s(1) + 1 = 0 for s = {0:?}")]
    ZeroDenominator(Vec<i64>),

    #[error("chain corrections disagree between the two chain ends ({first} vs {last})")]
    ChainOrientationAmbiguous { first: String, last: String },

    #[error("catalog schema error at line {line}, column {column} ({path}): {message}")]
    Schema {
        line: usize,
        column: usize,
        path: String,
        message: String,
    },

    #[error("catalog entry {entry}: {check}")]
    Consistency { entry: String, check: String },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
