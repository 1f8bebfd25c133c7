use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table for {operation} is not a group: {witness}")]
    NotAGroup { operation: String, witness: String },
    #[error(
        "the identities of addition ({additive}) and multiplication ({multiplicative}) differ"
    )]
    IdentityMismatch {
        additive: usize,
        multiplicative: usize,
    },
    #[error("skew distributivity fails at a={a}, b={b}, c={c}")]
    DistributivityFailure { a: usize, b: usize, c: usize },
    #[error("element {index} is out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("1-cocycle identity fails at c={c}, d={d}")]
    CocycleIdentityFailure { c: usize, d: usize },
    #[error("delta is not a bijection: {0}")]
    DeltaNotBijective(String),
    #[error("action is not a homomorphism into Aut(B,+): {0}")]
    ActionNotHomomorphism(String),
    #[error("subgroup of the holomorph is not regular: {0}")]
    NotRegular(String),
    #[error("subset of the holomorph is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("order {order} exceeds the bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("the given set is not an ideal")]
    NotAnIdeal,
    #[error("the given set is not a subbrace")]
    NotASubbrace,
    #[error("the given ideals are not nested")]
    NotNested,
    #[error("internal consistency check `{check}` failed: {detail}")]
    Inconsistent { check: String, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub(crate) fn inconsistent(check: &str, detail: impl Into<String>) -> Error {
    Error::Inconsistent {
        check: check.to_string(),
        detail: detail.into(),
    }
}
