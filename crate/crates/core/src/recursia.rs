//! Recursive covers: the pattern of every TEC in a cover is itself covered,
//! and replaced by that nested encoding when it is non-trivial.

use std::borrow::Cow;

use rayon::prelude::*;

use crate::cover::{CoverAlgorithm, Encoding};
use crate::geometry::PointSet;
use crate::rrt::rrt;

/// The pattern of a TEC: either a flat point set or an encoding of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternNode {
    Atomic(PointSet),
    Nested(Box<Encoding>),
}

impl PatternNode {
    pub fn dim(&self) -> usize {
        match self {
            PatternNode::Atomic(p) => p.dim(),
            PatternNode::Nested(e) => e.dim(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            PatternNode::Atomic(p) => p.is_empty(),
            PatternNode::Nested(e) => e.is_empty(),
        }
    }

    pub fn is_nested(&self) -> bool {
        matches!(self, PatternNode::Nested(_))
    }

    /// The decoded point set.
    pub fn points(&self) -> Cow<'_, PointSet> {
        match self {
            PatternNode::Atomic(p) => Cow::Borrowed(p),
            PatternNode::Nested(e) => Cow::Owned(e.decode()),
        }
    }

    /// Stored size: `|P|` when atomic, the nested encoding's size otherwise.
    pub fn size(&self) -> usize {
        match self {
            PatternNode::Atomic(p) => p.len(),
            PatternNode::Nested(e) => e.size(),
        }
    }

    /// Nesting depth; an atomic pattern has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            PatternNode::Atomic(_) => 0,
            PatternNode::Nested(e) => {
                1 + e
                    .tecs()
                    .iter()
                    .map(|t| t.pattern().depth())
                    .max()
                    .unwrap_or(0)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecursiaOptions {
    /// Run redundant-translator removal on every TEC of each level's cover,
    /// before recursing into its pattern.
    pub rrt: bool,
    /// Only replace a pattern when the nested encoding is strictly smaller.
    pub only_if_smaller: bool,
}

/// One TEC whose single occurrence is its own pattern: the cover found nothing.
pub fn is_trivial_encoding(encoding: &Encoding) -> bool {
    encoding.len() == 1 && encoding.tecs()[0].translators().len() == 1
}

/// Covers `dataset` with `algorithm`, then recursively re-encodes every TEC's
/// pattern, replacing it whenever the nested encoding is non-trivial.
pub fn recursia(
    algorithm: CoverAlgorithm,
    dataset: &PointSet,
    options: RecursiaOptions,
) -> Encoding {
    let mut encoding = algorithm.cover(dataset);
    if options.rrt {
        encoding = encoding.map_tecs(rrt);
    }
    if is_trivial_encoding(&encoding) {
        return encoding;
    }
    encoding.tecs_mut().par_iter_mut().for_each(|tec| {
        let PatternNode::Atomic(pattern) = tec.pattern() else {
            return;
        };
        // every level works on a strictly smaller set
        if pattern.len() >= dataset.len() {
            return;
        }
        let nested = recursia(algorithm, pattern, options);
        if is_trivial_encoding(&nested) {
            return;
        }
        if options.only_if_smaller && nested.size() >= pattern.len() {
            return;
        }
        tec.set_pattern(PatternNode::Nested(Box::new(nested)));
    });
    encoding
}
