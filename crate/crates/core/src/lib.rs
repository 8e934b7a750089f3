pub mod enriched;
pub mod error;
pub mod eulerian;
pub mod group_algebra;
pub mod linalg;
pub mod perm_stats;
pub mod posets;
pub mod qsym;

pub use error::{Error, Result};
