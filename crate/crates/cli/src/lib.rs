//! Command-line front end over the core library: document validation,
//! property checks at a dimension bound, constructions with provenance,
//! bounded factorizations, and an invariant suite over a generated corpus.

pub mod corpus;
pub mod run;
pub mod verdict;
