use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("group order exceeds cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("subgroup is not a p-group for p = {p}")]
    NotAPGroup { p: u32 },
    #[error("subgroup enumeration exceeds cap of {cap}")]
    SubgroupCapExceeded { cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup of the given group")]
    NotASubgroup,
    #[error("index {index} exceeds cap of {cap}")]
    IndexCapExceeded { index: usize, cap: usize },
    #[error("fusion system is not constrained")]
    NotConstrained,
    #[error("fusion closure exceeds cap of {cap} morphisms")]
    ClosureCapExceeded { cap: usize },
    #[error("cell budget exceeded: need {needed} cells, cap {cap}")]
    CellCapExceeded { needed: u64, cap: u64, census: Vec<u64> },
    #[error("module action is incompatible: element {witness} of O^p(C_G(P)) acts nontrivially for P of order {subgroup_order}")]
    IncompatibleAction { subgroup_order: usize, witness: String },
    #[error("invalid collection: {0}")]
    InvalidCollection(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
