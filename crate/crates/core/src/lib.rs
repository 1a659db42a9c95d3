//! Online string statistics driven by a suffix tree of the reversed text.
//!
//! One letter at a time, [`tree::SuffixTree`] reports the longest repeating
//! suffix of the prefix read so far. The other modules turn that report
//! stream into LRS/LPF arrays, LZ77 and reversed-LZ factorizations and the
//! set of minimal unique substrings.

pub mod arrays;
pub mod conformance;
mod error;
pub mod factorize;
pub mod mus;
pub mod oracle;
pub mod tree;

pub use error::Error;
pub use tree::{Letter, Locus, Mode, NodeId, StrategyKind, SuffixTree, UpdateReport};
