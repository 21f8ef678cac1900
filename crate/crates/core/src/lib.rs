//! Translatable point-set pattern discovery and compressive encoding.
//!
//! A dataset is a set of k-dimensional integer points. [`discovery`] finds
//! its maximal translatable patterns (MTPs) and their translational
//! equivalence classes (TECs); [`cover`] greedily picks TECs that jointly
//! cover the dataset; [`recursia`] re-encodes the pattern of every chosen TEC
//! recursively; [`rrt`] removes translators that add nothing to a TEC's
//! covered set. [`codec`] reads datasets and reads and writes encodings, and
//! [`harness`] compares all of this across a corpus.
//!
//! ```
//! use siatec::{CoverAlgorithm, PointSet, RecursiaOptions};
//!
//! let motif = PointSet::from_coords([[0, 60], [1, 64], [2, 67]]).unwrap();
//! let mut piece = motif.clone();
//! for shift in [[4, 2], [8, -3], [12, 5]] {
//!     piece = piece.union(&motif.translate(&shift.into()).unwrap()).unwrap();
//! }
//! let options = RecursiaOptions { rrt: true, ..Default::default() };
//! let encoding = siatec::recursia(CoverAlgorithm::Cosiatec, &piece, options);
//! assert_eq!(encoding.decode(), piece);
//! assert!(encoding.size() < piece.len());
//! ```

pub mod cli;
pub mod codec;
pub mod cover;
pub mod discovery;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod recursia;
pub mod rrt;

pub use codec::{Dataset, EncodingDocument};
pub use cover::{CoverAlgorithm, Encoding};
pub use discovery::{compute_mtps, compute_tecs, MtpEntry, Tec};
pub use error::{Error, Result};
pub use geometry::{Point, PointSet, Vector};
pub use recursia::{is_trivial_encoding, recursia, PatternNode, RecursiaOptions};
pub use rrt::rrt;
