//! Lattice tilings of `Z^n` by asymmetric limited-magnitude error balls.

pub mod abelian;
pub mod ball;
pub mod codes;
pub mod criteria;
pub mod error;
pub mod lattice;
mod modp;
pub mod search;
pub mod splitting;

pub use abelian::{groups_of_order, AbelianGroup, GroupElement};
pub use ball::{BallParams, ErrorVector};
pub use codes::{CodeCertificate, LinearCode};
pub use criteria::{report_all, Status, Verdict, Witness};
pub use error::{Error, Result};
pub use lattice::{IntMatrix, Lattice, QuotientMap, SnfDecomposition};
pub use search::{
    search_splitting, SearchOptions, SearchOutcome, SearchProblem, SearchStatus, Tier,
};
pub use splitting::{verify_splitting, CoefficientSet, SplitMode, SplitReport, SplitterSet};
