use thiserror::Error;

/// Errors raised by machine construction, transformation, and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("letter index {index} out of range for alphabet of size {size}")]
    LetterOutOfRange { index: usize, size: usize },

    #[error("state index {index} out of range for machine with {size} states")]
    StateOutOfRange { index: usize, size: usize },

    #[error("alphabet mismatch: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("state name collision in disjoint union: `{0}`")]
    StateNameCollision(String),

    #[error("invalid machine: {0}")]
    InvalidMachine(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error(
        "machine `{machine}` is not invertible: output map of state `{state}` is not a bijection"
    )]
    NotInvertible { machine: String, state: String },

    #[error("machine `{machine}` is not reversible: transition map of letter `{letter}` is not a bijection")]
    NotReversible { machine: String, letter: String },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("resource cap exceeded: {what} reached {reached} (cap {cap})")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        reached: usize,
    },
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
