//! Deterministic random inputs for property and acceptance tests.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use siatec::{Point, PointSet, Tec, Vector};

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_coords(rng: &mut TestRng, dim: usize, span: i64) -> Vec<i64> {
    (0..dim).map(|_| rng.random_range(-span..=span)).collect()
}

/// Up to `max_points` distinct points with coordinates in `[-span, span]`.
pub fn dataset(rng: &mut TestRng, dim: usize, max_points: usize, span: i64) -> PointSet {
    let n = rng.random_range(1..=max_points);
    let points = (0..n)
        .map(|_| Point::new(random_coords(rng, dim, span)))
        .collect();
    PointSet::new(dim, points).unwrap()
}

/// A TEC with a random pattern and translators drawn from a small box, so
/// that translated copies overlap often.
pub fn tec(rng: &mut TestRng, dim: usize, max_pattern: usize, max_translators: usize) -> Tec {
    let span = rng.random_range(1..=3);
    let pattern = loop {
        let n = rng.random_range(1..=max_pattern);
        let points = (0..n)
            .map(|_| Point::new(random_coords(rng, dim, span)))
            .collect();
        let set = PointSet::new(dim, points).unwrap();
        if !set.is_empty() {
            break set;
        }
    };
    let nonzero = rng.random_range(0..max_translators);
    let translators = (0..nonzero)
        .map(|_| Vector::new(random_coords(rng, dim, span + 1)))
        .collect();
    Tec::atomic(pattern, translators).unwrap()
}

/// A two-dimensional point set in which every difference vector between two
/// points occurs exactly once.
pub fn structureless(rng: &mut TestRng, n: usize) -> PointSet {
    let mut points: Vec<[i64; 2]> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    while points.len() < n {
        let cand = [rng.random_range(0..200), rng.random_range(0..200)];
        if points.contains(&cand) {
            continue;
        }
        let diffs: Vec<[i64; 2]> = points
            .iter()
            .flat_map(|p| {
                [
                    [cand[0] - p[0], cand[1] - p[1]],
                    [p[0] - cand[0], p[1] - cand[1]],
                ]
            })
            .collect();
        let mut unique = std::collections::BTreeSet::new();
        if diffs.iter().all(|d| !seen.contains(d) && unique.insert(*d)) {
            seen.extend(diffs);
            points.push(cand);
        }
    }
    PointSet::from_coords(points.iter().map(|p| p.to_vec())).unwrap()
}

/// Parameters of a generated two-level piece.
#[derive(Clone, Copy, Debug)]
pub struct Hierarchy {
    pub motif_points: usize,
    pub phrase_copies: usize,
    pub piece_copies: usize,
}

/// An (onset, pitch) piece: a motif of 3-5 notes stated 2-4 times to form a
/// phrase, and the phrase stated 2-8 times to form the piece. Statements
/// follow one another in time and are transposed at random.
pub fn hierarchical(rng: &mut TestRng) -> (PointSet, Hierarchy) {
    let motif_points = rng.random_range(3..=5);
    let mut onsets: Vec<i64> = (0..8).collect();
    onsets.shuffle(rng);
    let motif: Vec<[i64; 2]> = onsets[..motif_points]
        .iter()
        .map(|&t| [t, rng.random_range(0..12)])
        .collect();
    let phrase_copies = rng.random_range(2..=4);
    let piece_copies = rng.random_range(2..=8);
    let phrase: Vec<[i64; 2]> = (0..phrase_copies as i64)
        .map(|i| [i * 8 + rng.random_range(0..2), rng.random_range(-7..=7)])
        .collect();
    let phrase_len = phrase_copies as i64 * 8 + 4;
    let piece: Vec<[i64; 2]> = (0..piece_copies as i64)
        .map(|j| {
            [
                j * phrase_len + rng.random_range(0..3),
                rng.random_range(-12..=12),
            ]
        })
        .collect();
    let mut rows = Vec::new();
    for s in &piece {
        for t in &phrase {
            for m in &motif {
                rows.push(vec![m[0] + t[0] + s[0], 60 + m[1] + t[1] + s[1]]);
            }
        }
    }
    let set = PointSet::from_coords(rows).unwrap();
    (
        set,
        Hierarchy {
            motif_points,
            phrase_copies,
            piece_copies,
        },
    )
}
