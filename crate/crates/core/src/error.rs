use thiserror::Error;

use crate::perm_stats::{Flavor, Kind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("window {0:?} is not a valid element of the group")]
    InvalidWindow(Vec<i32>),

    #[error("cannot parse window {0:?}")]
    ParseWindow(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("kind mismatch: expected {expected:?}, found {found:?}")]
    KindMismatch { expected: Kind, found: Kind },

    #[error("flavor {flavor:?} is not admissible for {operation}")]
    FlavorMismatch { flavor: Flavor, operation: &'static str },

    #[error("subset {members:?} is out of range for n = {n} ({flavor:?})")]
    SubsetOutOfRange {
        members: Vec<i32>,
        n: usize,
        flavor: Flavor,
    },

    #[error("{members:?} is not a valid peak set for n = {n} ({flavor:?})")]
    InvalidPeakSet {
        members: Vec<i32>,
        n: usize,
        flavor: Flavor,
    },

    #[error("invalid composition {parts:?} (type B: {type_b})")]
    InvalidComposition { parts: Vec<u32>, type_b: bool },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("basis or type mismatch: {0}")]
    BasisMismatch(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("structure cache: {0}")]
    Cache(String),

    #[error("no permutation of size {n} has {peaks} interior peaks")]
    UnrealizablePeakCount { n: usize, peaks: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
