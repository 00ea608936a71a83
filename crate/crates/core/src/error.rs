use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree {0} exceeds the supported maximum of 65535 points")]
    DegreeTooLarge(usize),

    #[error("element budget exceeded: group order {order} > budget {budget}")]
    BudgetExceeded { order: String, budget: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("field of order {p}^{k} exceeds the 2^20 size cap")]
    FieldTooLarge { p: u64, k: u32 },

    #[error("matrix is singular")]
    Singular,

    #[error("degenerate action: {0}")]
    DegenerateAction(String),

    #[error("certification failed for {name}: computed order {computed}, claimed {claimed}")]
    Certification {
        name: String,
        computed: String,
        claimed: String,
    },

    #[error("catalog rejected:\n{}", .0.join("\n"))]
    CatalogRejected(Vec<String>),

    #[error("character table rejected:\n{}", .0.join("\n"))]
    TableRejected(Vec<String>),

    #[error("structure constant {value} is not within {tolerance:e} of an integer")]
    NonIntegral { value: f64, tolerance: f64 },

    #[error("unknown group {0:?}")]
    UnknownGroup(String),

    #[error("factorization budget exceeded: {0}")]
    FactorizationBudget(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
