//! Greedy TEC cover algorithms and compression-factor accounting.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::discovery::{compute_tecs, Tec};
use crate::error::{Error, Result};
use crate::geometry::PointSet;

/// An ordered, non-empty list of TECs of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    dim: usize,
    tecs: Vec<Tec>,
}

impl Encoding {
    pub fn new(tecs: Vec<Tec>) -> Result<Self> {
        let dim = tecs
            .first()
            .map(Tec::dim)
            .ok_or_else(|| Error::InvalidEncoding("encoding has no TECs".into()))?;
        if let Some(t) = tecs.iter().find(|t| t.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: t.dim(),
            });
        }
        Ok(Encoding { dim, tecs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tecs(&self) -> &[Tec] {
        &self.tecs
    }

    pub(crate) fn tecs_mut(&mut self) -> &mut [Tec] {
        &mut self.tecs
    }

    pub fn into_tecs(self) -> Vec<Tec> {
        self.tecs
    }

    pub fn len(&self) -> usize {
        self.tecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tecs.is_empty()
    }

    /// Number of stored points and nonzero translators, recursing into nested patterns.
    pub fn size(&self) -> usize {
        self.tecs.iter().map(Tec::size).sum()
    }

    /// `|D| / size(E)`.
    pub fn compression_factor(&self, dataset: &PointSet) -> Ratio<usize> {
        Ratio::new(dataset.len(), self.size())
    }

    /// Union of the covered sets of all TECs.
    pub fn decode(&self) -> PointSet {
        crate::codec::decode_encoding(self)
    }

    /// Applies `f` to every top-level TEC.
    pub fn map_tecs(self, f: impl FnMut(Tec) -> Tec) -> Encoding {
        Encoding {
            dim: self.dim,
            tecs: self.tecs.into_iter().map(f).collect(),
        }
    }
}

/// Which greedy cover strategy to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverAlgorithm {
    Cosiatec,
    SiatecCompress,
}

impl CoverAlgorithm {
    pub const ALL: [CoverAlgorithm; 2] = [CoverAlgorithm::Cosiatec, CoverAlgorithm::SiatecCompress];

    pub fn name(self) -> &'static str {
        match self {
            CoverAlgorithm::Cosiatec => "cosiatec",
            CoverAlgorithm::SiatecCompress => "siateccompress",
        }
    }

    pub fn cover(self, dataset: &PointSet) -> Encoding {
        match self {
            CoverAlgorithm::Cosiatec => cover_cosiatec(dataset),
            CoverAlgorithm::SiatecCompress => cover_siatec_compress(dataset),
        }
    }
}

impl fmt::Display for CoverAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoverAlgorithm {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cosiatec" => Ok(CoverAlgorithm::Cosiatec),
            "siateccompress" => Ok(CoverAlgorithm::SiatecCompress),
            other => Err(format!(
                "unknown cover algorithm `{other}` (expected cosiatec or siateccompress)"
            )),
        }
    }
}

/// A TEC with the quantities the quality order looks at, computed once.
#[derive(Clone, Debug)]
pub struct ScoredTec {
    pub tec: Tec,
    pub covered: PointSet,
    pub cf: Ratio<usize>,
}

impl ScoredTec {
    pub fn new(tec: Tec) -> Self {
        let covered = tec.covered_set();
        let denom = tec.pattern_points().len() + tec.translators().len() - 1;
        let cf = Ratio::new(covered.len(), denom);
        ScoredTec { tec, covered, cf }
    }

    fn order(&self, other: &ScoredTec) -> Ordering {
        other
            .cf
            .cmp(&self.cf)
            .then_with(|| other.covered.len().cmp(&self.covered.len()))
            .then_with(|| {
                let (a, b) = (self.tec.pattern_points(), other.tec.pattern_points());
                b.len().cmp(&a.len()).then_with(|| a.cmp(&b))
            })
            .then_with(|| self.tec.translators().cmp(other.tec.translators()))
    }
}

/// `Less` when `a` is the better TEC: higher compression factor, then larger
/// covered set, then larger pattern, then lexicographically smaller pattern.
/// TECs that tie on all four are ordered by their translator lists.
pub fn tec_quality_order(a: &Tec, b: &Tec) -> Ordering {
    ScoredTec::new(a.clone()).order(&ScoredTec::new(b.clone()))
}

/// The TECs of `dataset`, best first.
pub fn ranked_tecs(dataset: &PointSet) -> Vec<ScoredTec> {
    let mut scored: Vec<ScoredTec> = compute_tecs(dataset)
        .into_iter()
        .map(ScoredTec::new)
        .collect();
    scored.sort_by(ScoredTec::order);
    scored
}

fn residual_tec(residual: PointSet) -> Tec {
    Tec::atomic(residual, Vec::new()).expect("non-empty residual")
}

/// COSIATEC-style cover: repeatedly take the best TEC of what is still
/// uncovered. Selected covered sets partition the dataset.
pub fn cover_cosiatec(dataset: &PointSet) -> Encoding {
    assert!(!dataset.is_empty(), "cannot cover an empty dataset");
    let one = Ratio::from_integer(1);
    let mut residual = dataset.clone();
    let mut tecs = Vec::new();
    while !residual.is_empty() {
        let best = compute_tecs(&residual)
            .into_iter()
            .filter(|t| t.translators().len() >= 2)
            .map(ScoredTec::new)
            .filter(|s| s.cf > one)
            .min_by(ScoredTec::order);
        let Some(best) = best else {
            tecs.push(residual_tec(residual));
            break;
        };
        residual = residual.difference(&best.covered).expect("same dimension");
        tecs.push(best.tec);
    }
    Encoding::new(tecs).expect("at least one TEC")
}

/// SIATECCompress-style cover: one TEC computation, then a single pass over
/// the ranked TECs keeping each one that pays for itself in new points.
pub fn cover_siatec_compress(dataset: &PointSet) -> Encoding {
    assert!(!dataset.is_empty(), "cannot cover an empty dataset");
    let mut covered = vec![false; dataset.len()];
    let mut remaining = dataset.len();
    let mut tecs = Vec::new();
    for scored in ranked_tecs(dataset) {
        if remaining == 0 {
            break;
        }
        let fresh: Vec<usize> = scored
            .covered
            .iter()
            .map(|p| {
                dataset
                    .points()
                    .binary_search(p)
                    .expect("covered set lies in the dataset")
            })
            .filter(|&i| !covered[i])
            .collect();
        if fresh.len() >= 2 && scored.tec.size() < fresh.len() {
            for i in fresh {
                covered[i] = true;
                remaining -= 1;
            }
            tecs.push(scored.tec);
        }
    }
    if remaining > 0 {
        let residual = dataset
            .iter()
            .zip(&covered)
            .filter(|(_, &c)| !c)
            .map(|(p, _)| p.clone())
            .collect();
        tecs.push(residual_tec(PointSet::from_sorted_unchecked(
            dataset.dim(),
            residual,
        )));
    }
    Encoding::new(tecs).expect("at least one TEC")
}
