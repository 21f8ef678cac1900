//! Brute-force reference implementations. These only use raw coordinate
//! vectors and std collections so that they share nothing with the code
//! under test beyond the public types they convert from.

use std::collections::{BTreeMap, BTreeSet};

use siatec::{PointSet, Tec};

pub type Coords = Vec<i64>;

pub const MAX_MTP_POINTS: usize = 30;
pub const MAX_TRANSLATORS: usize = 12;

#[derive(Debug, PartialEq, Eq)]
pub struct GuardViolation(pub &'static str);

pub fn rows(set: &PointSet) -> Vec<Coords> {
    set.iter().map(|p| p.coords().to_vec()).collect()
}

fn add(a: &[i64], b: &[i64]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `(vector, MTP)` for every nonzero vector between dataset points, by double loop.
pub fn brute_force_mtps(dataset: &PointSet) -> Result<Vec<(Coords, Vec<Coords>)>, GuardViolation> {
    if dataset.len() > MAX_MTP_POINTS {
        return Err(GuardViolation("dataset too large for the MTP oracle"));
    }
    let points = rows(dataset);
    let members: BTreeSet<&Coords> = points.iter().collect();
    let mut vectors = BTreeSet::new();
    for p in &points {
        for q in &points {
            if p < q {
                vectors.insert(sub(q, p));
            }
        }
    }
    Ok(vectors
        .into_iter()
        .map(|v| {
            let mtp: Vec<Coords> = points
                .iter()
                .filter(|p| members.contains(&add(p, &v)))
                .cloned()
                .collect();
            (v, mtp)
        })
        .collect())
}

/// Every `u` (zero included) that maps `pattern` into `dataset`, by exhaustive search
/// over differences of dataset and pattern points.
pub fn brute_force_translators(pattern: &[Coords], dataset: &PointSet) -> BTreeSet<Coords> {
    let points = rows(dataset);
    let members: BTreeSet<&Coords> = points.iter().collect();
    let mut out = BTreeSet::new();
    for q in &points {
        for p in pattern {
            let u = sub(q, p);
            if pattern.iter().all(|r| members.contains(&add(r, &u))) {
                out.insert(u);
            }
        }
    }
    out
}

pub fn covered(pattern: &[Coords], translators: &[Coords]) -> BTreeSet<Coords> {
    translators
        .iter()
        .flat_map(|v| pattern.iter().map(move |p| add(p, v)))
        .collect()
}

pub fn tec_parts(tec: &Tec) -> (Vec<Coords>, Vec<Coords>) {
    let pattern = rows(&tec.pattern_points());
    let translators = tec
        .translators()
        .iter()
        .map(|v| v.coords().to_vec())
        .collect();
    (pattern, translators)
}

/// Smallest translator subset containing zero with the same covered set.
pub fn brute_force_minimal_translators(tec: &Tec) -> Result<usize, GuardViolation> {
    let (pattern, translators) = tec_parts(tec);
    if translators.len() > MAX_TRANSLATORS {
        return Err(GuardViolation(
            "too many translators for the exhaustive oracle",
        ));
    }
    let target = covered(&pattern, &translators);
    let (zero, others): (Vec<Coords>, Vec<Coords>) = translators
        .into_iter()
        .partition(|v| v.iter().all(|&c| c == 0));
    let mut best = usize::MAX;
    for mask in 0u32..(1 << others.len()) {
        let count = mask.count_ones() as usize + 1;
        if count >= best {
            continue;
        }
        let mut subset = zero.clone();
        subset.extend(
            others
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, v)| v.clone()),
        );
        if covered(&pattern, &subset) == target {
            best = count;
        }
    }
    Ok(best)
}

/// `p -> |{(v, q) in V x P : q + v = p}|`
pub fn brute_force_frequencies(tec: &Tec) -> BTreeMap<Coords, usize> {
    let (pattern, translators) = tec_parts(tec);
    let mut out = BTreeMap::new();
    for v in &translators {
        for q in &pattern {
            *out.entry(add(q, v)).or_insert(0) += 1;
        }
    }
    out
}

/// `{(q - p, p) | p in P, q in C, f(q) > 1}`
pub fn brute_force_siam_table(tec: &Tec) -> BTreeSet<(Coords, Coords)> {
    let (pattern, _) = tec_parts(tec);
    let freqs = brute_force_frequencies(tec);
    let mut out = BTreeSet::new();
    for (q, f) in &freqs {
        if *f > 1 {
            for p in &pattern {
                out.insert((sub(q, p), p.clone()));
            }
        }
    }
    out
}

/// Nonzero translators mapping every pattern point onto a multipoint.
pub fn brute_force_removable(tec: &Tec) -> BTreeSet<Coords> {
    let (pattern, translators) = tec_parts(tec);
    let freqs = brute_force_frequencies(tec);
    translators
        .into_iter()
        .filter(|v| v.iter().any(|&c| c != 0))
        .filter(|v| {
            pattern
                .iter()
                .all(|p| freqs.get(&add(p, v)).is_some_and(|&f| f > 1))
        })
        .collect()
}
