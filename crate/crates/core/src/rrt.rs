//! Redundant-translator removal.
//!
//! Shrinks a TEC's translator set without changing its covered set:
//!
//! 1. count how many translated pattern points land on each covered point
//!    ([`compute_point_freq_set`]); with no point hit twice nothing can go;
//! 2. match the pattern against the multipoints with a SIAM vector table
//!    ([`compute_siam_vector_table`]); translators whose maximal match is the
//!    whole pattern are *removable* ([`compute_removable_vectors`]);
//! 3. *maxpoints* are covered points reached only by removable vectors
//!    ([`compute_max_points`]); if there are none, every removable vector is
//!    dropped, otherwise a greedy cover of the maxpoints picks the removable
//!    vectors to keep ([`compute_retained_vectors`]).
//!
//! The zero vector is never removable, and a translator is only removable if
//! it belongs to the TEC (the vector table also contains non-translators).

use std::collections::BTreeMap;

use crate::discovery::Tec;
use crate::geometry::{Point, PointSet, Vector};

/// `(frequency, point)` for every covered point, sorted by frequency then point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreqTable {
    entries: Vec<(usize, Point)>,
}

impl FreqTable {
    pub fn entries(&self) -> &[(usize, Point)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Covered points hit more than once, in table order.
    pub fn multipoints(&self) -> impl Iterator<Item = &Point> {
        self.entries.iter().filter(|(f, _)| *f > 1).map(|(_, p)| p)
    }
}

/// Sorted `(q - p, p)` pairs for pattern points `p` and multipoints `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiamTable {
    entries: Vec<(Vector, Point)>,
}

impl SiamTable {
    pub fn entries(&self) -> &[(Vector, Point)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Runs of entries sharing a vector; each run is the maximal match of
    /// the pattern onto the multipoints for that vector.
    pub fn maximal_matches(&self) -> impl Iterator<Item = &[(Vector, Point)]> {
        self.entries.chunk_by(|a, b| a.0 == b.0)
    }
}

/// Maxpoints with the removable vectors that reach them, sorted by point.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MaxpointTable {
    entries: Vec<(Point, Vec<Vector>)>,
}

impl MaxpointTable {
    pub fn entries(&self) -> &[(Point, Vec<Vector>)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Removable vectors with the maxpoints they reach, largest sets first and
/// ties in ascending vector order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorMaxpointsList {
    entries: Vec<(Vector, PointSet)>,
}

impl VectorMaxpointsList {
    pub fn new(mut entries: Vec<(Vector, PointSet)>) -> Self {
        entries.retain(|(_, p)| !p.is_empty());
        entries.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.0.cmp(&b.0)));
        VectorMaxpointsList { entries }
    }

    pub fn entries(&self) -> &[(Vector, PointSet)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Frequency of every covered point: the number of translators mapping some
/// pattern point onto it.
pub fn compute_point_freq_set(tec: &Tec) -> FreqTable {
    let pattern = tec.pattern_points();
    let mut hits: Vec<Point> = tec
        .translators()
        .iter()
        .flat_map(|v| pattern.iter().map(move |q| q + v))
        .collect();
    hits.sort_unstable();
    let mut entries: Vec<(usize, Point)> = hits
        .chunk_by(|a, b| a == b)
        .map(|run| (run.len(), run[0].clone()))
        .collect();
    entries.sort_unstable();
    FreqTable { entries }
}

/// True when no covered point is hit twice, in which case no translator can go.
pub fn max_frequency_is_one(freqs: &FreqTable) -> bool {
    freqs.entries.last().is_none_or(|(f, _)| *f == 1)
}

pub fn compute_siam_vector_table(tec: &Tec, freqs: &FreqTable) -> SiamTable {
    let pattern = tec.pattern_points();
    let mut entries: Vec<(Vector, Point)> = freqs
        .multipoints()
        .flat_map(|q| pattern.iter().map(move |p| (q - p, p.clone())))
        .collect();
    entries.sort_unstable();
    SiamTable { entries }
}

/// Nonzero translators of `tec` whose maximal match covers the whole pattern, sorted.
pub fn compute_removable_vectors(tec: &Tec, table: &SiamTable) -> Vec<Vector> {
    let pattern_len = tec.pattern_points().len();
    table
        .maximal_matches()
        .filter(|run| run.len() == pattern_len)
        .map(|run| &run[0].0)
        .filter(|v| !v.is_zero() && tec.translators().binary_search(v).is_ok())
        .cloned()
        .collect()
}

/// Covered points all of whose incoming translators are removable.
pub fn compute_max_points(tec: &Tec, removable: &[Vector], freqs: &FreqTable) -> MaxpointTable {
    if removable.is_empty() {
        return MaxpointTable::default();
    }
    let pattern = tec.pattern_points();
    let translators = tec.translators();
    let mut entries: Vec<(Point, Vec<Vector>)> = freqs
        .multipoints()
        .filter_map(|p| {
            let mut incoming: Vec<Vector> = pattern
                .iter()
                .map(|q| p - q)
                .filter(|v| translators.binary_search(v).is_ok())
                .collect();
            incoming.sort_unstable();
            incoming
                .iter()
                .all(|v| removable.binary_search(v).is_ok())
                .then(|| (p.clone(), incoming))
        })
        .collect();
    entries.sort_unstable();
    MaxpointTable { entries }
}

/// Drops every removable vector; only valid when there are no maxpoints.
pub fn remove_all_removable(tec: Tec, removable: &[Vector]) -> Tec {
    remove_redundant_vectors(tec, &[], removable)
}

/// For each removable vector, the maxpoints it reaches from the pattern.
pub fn compute_vector_maxpoint_set_pairs(maxpoints: &MaxpointTable) -> VectorMaxpointsList {
    let mut by_vector: BTreeMap<&Vector, Vec<Point>> = BTreeMap::new();
    for (p, vectors) in &maxpoints.entries {
        for v in vectors {
            by_vector.entry(v).or_default().push(p.clone());
        }
    }
    let dim = maxpoints.entries.first().map_or(1, |(p, _)| p.dim());
    VectorMaxpointsList::new(
        by_vector
            .into_iter()
            .map(|(v, pts)| (v.clone(), PointSet::from_sorted_unchecked(dim, pts)))
            .collect(),
    )
}

/// Greedy cover of the maxpoints: take the head of the list, strip its
/// maxpoints from every later entry, drop entries left empty, repeat.
/// The list is not re-sorted between rounds. Returns the kept vectors, sorted.
pub fn compute_retained_vectors(list: &VectorMaxpointsList) -> Vec<Vector> {
    let mut pending: Vec<(Vector, PointSet)> = list.entries.clone();
    let mut retained = Vec::new();
    while !pending.is_empty() {
        let (head, reached) = pending.remove(0);
        pending = pending
            .into_iter()
            .filter_map(|(v, pts)| {
                let left = pts.difference(&reached).expect("same dimension");
                (!left.is_empty()).then_some((v, left))
            })
            .collect();
        retained.push(head);
    }
    retained.sort_unstable();
    retained
}

/// Translators become `(V \ removable) ∪ retained`.
pub fn remove_redundant_vectors(tec: Tec, retained: &[Vector], removable: &[Vector]) -> Tec {
    let (pattern, translators) = tec.into_parts();
    let kept = translators
        .into_iter()
        .filter(|v| removable.binary_search(v).is_err() || retained.binary_search(v).is_ok())
        .collect();
    Tec::from_parts_unchecked(pattern, kept)
}

/// Removes redundant translators from `tec`. The covered set is unchanged
/// and a nested pattern is carried over as is.
pub fn rrt(tec: Tec) -> Tec {
    let freqs = compute_point_freq_set(&tec);
    if max_frequency_is_one(&freqs) {
        return tec;
    }
    let table = compute_siam_vector_table(&tec, &freqs);
    let removable = compute_removable_vectors(&tec, &table);
    let maxpoints = compute_max_points(&tec, &removable, &freqs);
    #[cfg(debug_assertions)]
    let before = tec.covered_set();
    let out = if maxpoints.is_empty() {
        remove_all_removable(tec, &removable)
    } else {
        let pairs = compute_vector_maxpoint_set_pairs(&maxpoints);
        let retained = compute_retained_vectors(&pairs);
        remove_redundant_vectors(tec, &retained, &removable)
    };
    #[cfg(debug_assertions)]
    debug_assert_eq!(out.covered_set(), before, "rrt changed the covered set");
    out
}
