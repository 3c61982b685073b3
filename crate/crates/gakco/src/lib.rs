//! Gapped k-mer string kernel matrices over sequence corpora.
//!
//! The engine computes mismatch profiles by cumulative counting: project
//! g-mers onto position subsets, sort, group, and correct the over-counts.
//! Brute-force pair enumeration, an explicit feature map, and a
//! trie/nodelist baseline certify the results and anchor the benchmark
//! harness.

pub mod alphabet;
pub mod bench;
pub mod combinatorics;
pub mod corpus;
pub mod estimate;
pub mod gmer;
pub mod io;
pub mod kernel;
pub mod matrix;
pub mod oracle;
pub mod output;
pub mod synth;
pub mod trie;

mod error;

pub use alphabet::Alphabet;
pub use corpus::{RawRecord, SequenceCorpus, SequenceRecord};
pub use error::{Error, Result};
pub use kernel::{compute_kernel, KernelMatrix, KernelOutput, KernelParams};
pub use matrix::SymMatrix;
