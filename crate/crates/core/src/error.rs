use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("order is not strict: `{0}` ends up above itself")]
    CyclicOrder(String),
    #[error("order declaration names unknown rule `{0}`")]
    UnknownRuleName(String),
    #[error("duplicate rule name `{0}`")]
    DuplicateRuleName(String),
    #[error("{heads} distinct candidate literals exceed the cap of {cap}")]
    CapExceeded { heads: usize, cap: usize },
    #[error("candidate is not an answer set of the program")]
    NotAnswerSet,
    #[error("program is not normal (contains classical negation)")]
    NotNormal,
    #[error("program is not prerequisite-free")]
    NotPrerequisiteFree,
    #[error("rule order is not total")]
    NotTotal,
    #[error("preference atoms in the candidate do not form a strict order")]
    NonStrictDynamicOrder,
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
