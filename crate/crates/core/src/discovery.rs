//! Maximal translatable patterns and their translational equivalence classes.
//!
//! [`compute_mtps`] sorts the `|D|(|D|-1)/2` forward difference vectors of the
//! dataset and reads each MTP off a run of equal vectors. [`compute_tecs`]
//! then finds, for every distinct MTP, all vectors that translate it into the
//! dataset by intersecting the sorted columns `D - p` for each pattern point.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::HashMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::geometry::{cmp_offsets, Point, PointSet, Vector};
use crate::recursia::PatternNode;

/// The maximal translatable pattern for one nonzero vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MtpEntry {
    pub vector: Vector,
    /// `{ p in D | p + vector in D }`
    pub pattern: PointSet,
}

/// A pattern together with the translators mapping it onto its occurrences.
///
/// The translator list is sorted, duplicate-free and always contains the
/// zero vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tec {
    pattern: PatternNode,
    translators: Vec<Vector>,
}

impl Tec {
    pub fn new(pattern: PatternNode, mut translators: Vec<Vector>) -> Result<Self> {
        let dim = pattern.dim();
        if pattern.is_empty() {
            return Err(Error::InvalidEncoding("TEC pattern is empty".into()));
        }
        if let Some(v) = translators.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        translators.push(Vector::zero(dim));
        translators.sort_unstable();
        translators.dedup();
        Ok(Tec {
            pattern,
            translators,
        })
    }

    pub fn atomic(pattern: PointSet, translators: Vec<Vector>) -> Result<Self> {
        Tec::new(PatternNode::Atomic(pattern), translators)
    }

    /// `translators` must be sorted, duplicate-free and contain zero.
    pub(crate) fn from_parts_unchecked(pattern: PatternNode, translators: Vec<Vector>) -> Self {
        debug_assert!(translators.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(translators.iter().any(Vector::is_zero));
        Tec {
            pattern,
            translators,
        }
    }

    pub fn dim(&self) -> usize {
        self.pattern.dim()
    }

    pub fn pattern(&self) -> &PatternNode {
        &self.pattern
    }

    pub fn set_pattern(&mut self, pattern: PatternNode) {
        self.pattern = pattern;
    }

    pub fn into_parts(self) -> (PatternNode, Vec<Vector>) {
        (self.pattern, self.translators)
    }

    /// All translators, zero included.
    pub fn translators(&self) -> &[Vector] {
        &self.translators
    }

    pub fn nonzero_translators(&self) -> impl Iterator<Item = &Vector> {
        self.translators.iter().filter(|v| !v.is_zero())
    }

    /// The pattern as a flat point set, decoding a nested encoding if needed.
    pub fn pattern_points(&self) -> Cow<'_, PointSet> {
        self.pattern.points()
    }

    /// `C(T)`: the union of the pattern translated by every translator.
    pub fn covered_set(&self) -> PointSet {
        let pattern = self.pattern_points();
        let mut points = Vec::with_capacity(pattern.len() * self.translators.len());
        for v in &self.translators {
            points.extend(pattern.iter().map(|p| p + v));
        }
        PointSet::from_unsorted_unchecked(self.dim(), points)
    }

    /// Stored size: pattern size (recursive for nested patterns) plus the
    /// nonzero translators.
    pub fn size(&self) -> usize {
        self.pattern.size() + self.translators.len() - 1
    }

    /// `|C(T)| / (|P(T)| + |V(T) \ {0}|)`.
    pub fn compression_factor(&self) -> Ratio<usize> {
        let denom = self.pattern_points().len() + self.translators.len() - 1;
        Ratio::new(self.covered_set().len(), denom)
    }
}

/// All MTPs of `dataset`, one entry per distinct nonzero forward vector, sorted by vector.
pub fn compute_mtps(dataset: &PointSet) -> Vec<MtpEntry> {
    let pts = dataset.points();
    let n = pts.len();
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(n.saturating_sub(1) * n / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i as u32, j as u32));
        }
    }
    let diff_cmp = |&(i, j): &(u32, u32), &(k, l): &(u32, u32)| {
        cmp_offsets(
            &pts[j as usize],
            &pts[i as usize],
            &pts[l as usize],
            &pts[k as usize],
        )
    };
    pairs.sort_unstable_by(|a, b| diff_cmp(a, b).then(a.0.cmp(&b.0)));

    let mut out = Vec::new();
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && diff_cmp(&pairs[start], &pairs[end]) == Ordering::Equal {
            end += 1;
        }
        let (i, j) = pairs[start];
        let vector = &pts[j as usize] - &pts[i as usize];
        let pattern = pairs[start..end]
            .iter()
            .map(|&(i, _)| pts[i as usize].clone())
            .collect();
        out.push(MtpEntry {
            vector,
            pattern: PointSet::from_sorted_unchecked(dataset.dim(), pattern),
        });
        start = end;
    }
    out
}

/// Every `v` with `pattern + v ⊆ dataset`, sorted.
///
/// Walks one cursor per pattern point down the sorted column `dataset - p_i`;
/// all columns are sorted, so the cursors only move forward.
pub(crate) fn translators_into(pattern: &PointSet, dataset: &PointSet) -> Vec<Vector> {
    let pat = pattern.points();
    let data = dataset.points();
    let Some(first) = pat.first() else {
        return Vec::new();
    };
    let mut cursors = vec![0usize; pat.len()];
    let mut out = Vec::new();
    'candidates: for candidate in data {
        for (i, p) in pat.iter().enumerate().skip(1) {
            let c = &mut cursors[i];
            while *c < data.len() && cmp_offsets(&data[*c], p, candidate, first) == Ordering::Less {
                *c += 1;
            }
            if *c == data.len() {
                break 'candidates;
            }
            if cmp_offsets(&data[*c], p, candidate, first) != Ordering::Equal {
                continue 'candidates;
            }
        }
        out.push(candidate - first);
    }
    out
}

/// Shape of a pattern up to translation: offsets of every point from the first.
fn shape_key(pattern: &PointSet) -> Vec<i64> {
    let first = &pattern.points()[0];
    pattern
        .iter()
        .flat_map(|p| (p - first).into_coords())
        .collect()
}

/// The TEC of every distinct MTP of `dataset`, sorted by pattern.
///
/// Patterns that are translations of one another share a translator set up
/// to a constant offset, so translators are computed once per shape.
pub fn compute_tecs(dataset: &PointSet) -> Vec<Tec> {
    let mut patterns: Vec<PointSet> = compute_mtps(dataset)
        .into_iter()
        .map(|e| e.pattern)
        .collect();
    patterns.sort_unstable();
    patterns.dedup();

    let mut by_shape: HashMap<Vec<i64>, (Point, Vec<Vector>)> = HashMap::new();
    patterns
        .into_iter()
        .map(|pattern| {
            let first = pattern.points()[0].clone();
            let (anchor, base) = by_shape
                .entry(shape_key(&pattern))
                .or_insert_with(|| (first.clone(), translators_into(&pattern, dataset)));
            let shift = &*anchor - &first;
            let translators = if shift.is_zero() {
                base.clone()
            } else {
                base.iter().map(|v| v + &shift).collect()
            };
            Tec::from_parts_unchecked(PatternNode::Atomic(pattern), translators)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[&[i64]]) -> PointSet {
        PointSet::from_coords(rows.iter().map(|r| r.to_vec())).unwrap()
    }

    fn diagonal(n: i64) -> PointSet {
        PointSet::from_coords((1..=n).map(|i| vec![i, i])).unwrap()
    }

    #[test]
    fn mtps_of_three_collinear_points() {
        let mtps = compute_mtps(&set(&[&[0], &[1], &[2]]));
        assert_eq!(
            mtps,
            vec![
                MtpEntry {
                    vector: Vector::from([1]),
                    pattern: set(&[&[0], &[1]])
                },
                MtpEntry {
                    vector: Vector::from([2]),
                    pattern: set(&[&[0]])
                },
            ]
        );
    }

    #[test]
    fn singleton_has_no_mtps_or_tecs() {
        let d = set(&[&[0]]);
        assert!(compute_mtps(&d).is_empty());
        assert!(compute_tecs(&d).is_empty());
    }

    #[test]
    fn diagonal_unit_mtp() {
        let mtps = compute_mtps(&diagonal(7));
        let unit = mtps
            .iter()
            .find(|e| e.vector == Vector::from([1, 1]))
            .unwrap();
        assert_eq!(
            unit.pattern,
            PointSet::from_coords((1..=6).map(|i| vec![i, i])).unwrap()
        );
        assert_eq!(mtps.len(), 6);
    }

    #[test]
    fn tec_of_three_collinear_points() {
        let d = set(&[&[0], &[1], &[2]]);
        let tecs = compute_tecs(&d);
        let expected = Tec::atomic(set(&[&[0], &[1]]), vec![Vector::from([1])]).unwrap();
        assert!(tecs.contains(&expected));
        for t in &tecs {
            assert!(t.covered_set().is_subset(&d).unwrap());
        }
    }

    #[test]
    fn shape_cache_shifts_translators() {
        // Two copies of a two-point shape; the MTPs for the inner vectors are translations
        // of each other and must get correctly shifted translator sets.
        let d = set(&[&[0, 0], &[1, 2], &[10, 0], &[11, 2], &[20, 5]]);
        for t in compute_tecs(&d) {
            let pattern = t.pattern_points();
            let expected = translators_into(&pattern, &d);
            assert_eq!(t.translators(), expected.as_slice());
        }
    }

    #[test]
    fn translators_include_zero() {
        let d = diagonal(5);
        for t in compute_tecs(&d) {
            assert!(t.translators().iter().any(Vector::is_zero));
        }
    }

    #[test]
    fn tec_constructor_normalises_translators() {
        let t = Tec::atomic(
            set(&[&[0]]),
            vec![Vector::from([2]), Vector::from([1]), Vector::from([2])],
        )
        .unwrap();
        assert_eq!(
            t.translators(),
            &[Vector::from([0]), Vector::from([1]), Vector::from([2])]
        );
        assert!(Tec::atomic(set(&[&[0]]), vec![Vector::from([1, 1])]).is_err());
        assert!(Tec::atomic(PointSet::empty(1), vec![]).is_err());
    }

    #[test]
    fn covered_set_and_cf() {
        let eq2 = Tec::atomic(
            set(&[&[1, 1], &[2, 2], &[3, 3]]),
            (0..=4).map(|i| Vector::from([i, i])).collect(),
        )
        .unwrap();
        assert_eq!(eq2.covered_set(), diagonal(7));
        assert_eq!(eq2.compression_factor(), Ratio::new(7, 7));

        let p = set(&[&[0], &[4], &[9]]);
        let trivial = Tec::atomic(p.clone(), vec![]).unwrap();
        assert_eq!(trivial.covered_set(), p);
        assert_eq!(trivial.compression_factor(), Ratio::from_integer(1));

        let line = Tec::atomic(set(&[&[0]]), vec![Vector::from([1]), Vector::from([2])]).unwrap();
        assert_eq!(line.covered_set(), set(&[&[0], &[1], &[2]]));
    }
}
