//! Finite truncated semi-simplicial sets and the machinery around them:
//! joins, products, exponentials, slices, nerves of finite categories,
//! lifting problems against generator families, and unitality checks for
//! marked complexes.
//!
//! Everything is bounded: a complex carries levels `0..=dim_bound` and all
//! verdicts are relative to an explicit dimension.  Simplices have stable
//! string ids so results can be reported and re-verified against the input
//! documents they came from.

pub mod augmented;
pub mod category;
pub mod colimits;
pub mod complex;
pub mod error;
pub mod exponential;
pub mod interchange;
pub mod join;
pub mod lifting;
pub mod maps;
pub mod marking;
pub mod product;
pub mod search;
pub mod simplicial;
pub mod slice;
pub mod unitality;

pub use complex::{boundary, horn, standard_simplex, terminal_truncated, SemiSimplicialSet};
pub use error::{Error, Result};
pub use maps::SSetMap;
pub use marking::{MarkedMap, MarkedSSet};
pub use search::SearchMode;
