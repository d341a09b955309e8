use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent group configuration. `field` names the offending key.
    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("unsupported type: {0}")]
    UnsupportedType(String),

    #[error("prime {p} is bad for type {type_label}")]
    BadPrime { p: u64, type_label: String },

    #[error("matrix is not an automorphism of the datum: {0}")]
    NotAutomorphism(String),

    #[error("group order exceeds configured bound {bound}")]
    OrderBound { bound: usize },

    #[error("torsion point is not reduced: {0}")]
    UnreducedPoint(String),

    #[error("unknown two-sided cell {cell} for type {type_label}")]
    UnknownCell { type_label: String, cell: usize },

    #[error("automorphism moves the cell {0}")]
    CellMoved(usize),

    #[error("disconnected group: use the stratified pipeline")]
    DisconnectedSpectral,

    #[error("group `{0}` is not in the oracle menu")]
    NotInOracleMenu(String),

    /// An internal consistency check failed; always a bug or a corrupted table.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        Error::Config { field: field.to_string(), message: message.into() }
    }

    pub(crate) fn invariant(message: impl Into<String>) -> Self {
        Error::Invariant(message.into())
    }
}
