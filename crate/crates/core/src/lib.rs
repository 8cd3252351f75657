//! Block trees over byte texts.
//!
//! A block tree splits the text into `s` top-level blocks and recursively
//! splits every block that holds the leftmost occurrence of a pair of
//! consecutive blocks into `τ` children. Every other block is replaced by a
//! back-reference into the same level, and the last level stores its text
//! explicitly. The result answers `access`, `rank` and `select` in time
//! proportional to the height of the tree while using space proportional to
//! the repetitiveness of the text.
//!
//! Two builders produce byte-identical trees:
//!
//! * [`build_sequential`] runs the classic two phases (pair marking, then
//!   back-reference linking) level by level, plus optional pruning.
//! * [`build_parallel`] partitions every level across `K` workers, filters
//!   candidates locally and merges them at fingerprint owners over bounded
//!   channels.
//!
//! Positions in the public query API are 1-based; everything internal is
//! 0-based.

pub mod alloc_track;
pub mod build;
pub mod corpus;
pub mod error;
pub mod fingerprint;
pub mod tree;

pub use build::par::{build_parallel, BuildConfig, BuildReport};
pub use build::seq::build_sequential;
pub use corpus::lz77::{lz77_factorize, Factor, Lz77Factorization};
pub use corpus::naive::{naive_access, naive_rank, naive_select};
pub use corpus::Text;
pub use error::{Error, FormatError, Result};
pub use fingerprint::{Fingerprint, FingerprintParams};
pub use tree::{BackRef, BlockTree, Level, Tracking, TreeParams};
