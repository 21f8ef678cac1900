//! Exact integer points, translation vectors and sorted point sets.
//!
//! Every coordinate is an `i64`. Points and vectors compare lexicographically
//! (coordinate 0 first), which is the order every table in this crate is
//! sorted by. Arithmetic between a point and a vector of a different
//! dimension is a logic error and panics; the [`PointSet`] operations that
//! take user data check dimensions and return [`Error::DimensionMismatch`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// A position in k-dimensional integer space.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<i64>);

/// A displacement between two [`Point`]s.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector(Vec<i64>);

macro_rules! coords_impl {
    ($ty:ident) => {
        impl $ty {
            /// Panics if `coords` is empty.
            pub fn new(coords: impl Into<Vec<i64>>) -> Self {
                let coords = coords.into();
                assert!(!coords.is_empty(), "zero-dimensional {}", stringify!($ty));
                $ty(coords)
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[i64] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<i64> {
                self.0
            }
        }

        impl From<Vec<i64>> for $ty {
            fn from(coords: Vec<i64>) -> Self {
                $ty::new(coords)
            }
        }

        impl<const N: usize> From<[i64; N]> for $ty {
            fn from(coords: [i64; N]) -> Self {
                $ty::new(coords.to_vec())
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "<")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ">")
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Debug::fmt(self, f)
            }
        }
    };
}

coords_impl!(Point);
coords_impl!(Vector);

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector::new(vec![0; dim])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

#[inline]
fn zip_with(a: &[i64], b: &[i64], op: impl Fn(i64, i64) -> i64) -> Vec<i64> {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect()
}

impl Add<&Vector> for &Point {
    type Output = Point;
    fn add(self, v: &Vector) -> Point {
        Point(zip_with(&self.0, &v.0, |x, y| x + y))
    }
}

impl Sub<&Vector> for &Point {
    type Output = Point;
    fn sub(self, v: &Vector) -> Point {
        Point(zip_with(&self.0, &v.0, |x, y| x - y))
    }
}

impl Sub<&Point> for &Point {
    type Output = Vector;
    fn sub(self, q: &Point) -> Vector {
        Vector(zip_with(&self.0, &q.0, |x, y| x - y))
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, v: &Vector) -> Vector {
        Vector(zip_with(&self.0, &v.0, |x, y| x + y))
    }
}

impl Sub<&Vector> for &Vector {
    type Output = Vector;
    fn sub(self, v: &Vector) -> Vector {
        Vector(zip_with(&self.0, &v.0, |x, y| x - y))
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|&c| -c).collect())
    }
}

/// Compares `a - pa` with `b - pb` lexicographically without allocating.
#[inline]
pub(crate) fn cmp_offsets(a: &Point, pa: &Point, b: &Point, pb: &Point) -> Ordering {
    for d in 0..a.0.len() {
        let ord = (a.0[d] - pa.0[d]).cmp(&(b.0[d] - pb.0[d]));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// A lexicographically sorted, duplicate-free set of points of one dimension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    /// Sorts and deduplicates `points`, checking that they all have dimension `dim`.
    pub fn new(dim: usize, mut points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        points.sort_unstable();
        points.dedup();
        Ok(PointSet { dim, points })
    }

    /// Builds a set from raw coordinate rows; the dimension is taken from the first row.
    pub fn from_coords<I, C>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: Into<Vec<i64>>,
    {
        let points: Vec<Point> = rows
            .into_iter()
            .map(|c| {
                let c = c.into();
                if c.is_empty() {
                    Err(Error::ZeroDimension)
                } else {
                    Ok(Point(c))
                }
            })
            .collect::<Result<_>>()?;
        let dim = points.first().map(Point::dim).ok_or(Error::EmptyDataset)?;
        PointSet::new(dim, points)
    }

    pub fn empty(dim: usize) -> Self {
        assert!(dim > 0, "zero-dimensional point set");
        PointSet {
            dim,
            points: Vec::new(),
        }
    }

    /// `points` must already be strictly increasing and of dimension `dim`.
    pub(crate) fn from_sorted_unchecked(dim: usize, points: Vec<Point>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(points.iter().all(|p| p.dim() == dim));
        PointSet { dim, points }
    }

    pub(crate) fn from_unsorted_unchecked(dim: usize, mut points: Vec<Point>) -> Self {
        points.sort_unstable();
        points.dedup();
        PointSet::from_sorted_unchecked(dim, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            })
        }
    }

    /// `{ p + v | p in self }`. Translation preserves lexicographic order.
    pub fn translate(&self, v: &Vector) -> Result<PointSet> {
        self.check_dim(v.dim())?;
        Ok(self.translate_unchecked(v))
    }

    pub(crate) fn translate_unchecked(&self, v: &Vector) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p + v).collect(),
        }
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        self.check_dim(other.dim)?;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (
            self.points.iter().peekable(),
            other.points.iter().peekable(),
        );
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.cmp(y) {
                    Ordering::Less => a.next(),
                    Ordering::Greater => b.next(),
                    Ordering::Equal => {
                        b.next();
                        a.next()
                    }
                },
                (Some(_), None) => a.next(),
                (None, Some(_)) => b.next(),
                (None, None) => break,
            };
            out.extend(next.cloned());
        }
        Ok(PointSet::from_sorted_unchecked(self.dim, out))
    }

    pub fn difference(&self, other: &PointSet) -> Result<PointSet> {
        self.check_dim(other.dim)?;
        let points = self
            .points
            .iter()
            .filter(|p| !other.contains(p))
            .cloned()
            .collect();
        Ok(PointSet::from_sorted_unchecked(self.dim, points))
    }

    pub fn is_subset(&self, other: &PointSet) -> Result<bool> {
        self.check_dim(other.dim)?;
        Ok(self.points.iter().all(|p| other.contains(p)))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(rows: &[&[i64]]) -> PointSet {
        PointSet::from_coords(rows.iter().map(|r| r.to_vec())).unwrap()
    }

    #[test]
    fn translate_examples() {
        let p = set(&[&[1, 1], &[2, 2], &[3, 3]]);
        assert_eq!(
            p.translate(&Vector::from([4, 4])).unwrap(),
            set(&[&[5, 5], &[6, 6], &[7, 7]])
        );
        let single = set(&[&[1, 1]]);
        assert_eq!(single.translate(&Vector::zero(2)).unwrap(), single);
        assert_eq!(
            set(&[&[0, 0], &[1, 0]])
                .translate(&Vector::from([-1, 2]))
                .unwrap(),
            set(&[&[-1, 2], &[0, 2]])
        );
    }

    #[test]
    fn translate_dimension_mismatch() {
        let p = set(&[&[1, 1]]);
        assert!(matches!(
            p.translate(&Vector::from([1])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn set_operations() {
        let a = set(&[&[1], &[2]]);
        let b = set(&[&[2], &[3]]);
        assert_eq!(a.union(&b).unwrap(), set(&[&[1], &[2], &[3]]));
        assert_eq!(a.difference(&set(&[&[2]])).unwrap(), set(&[&[1]]));
        assert!(PointSet::empty(1).is_subset(&set(&[&[1]])).unwrap());
        assert!(!a.is_subset(&b).unwrap());
        assert!(a.union(&set(&[&[1, 2]])).is_err());
    }

    #[test]
    fn construction_sorts_and_dedups() {
        let s = set(&[&[3, 0], &[1, 5], &[3, 0], &[1, 2]]);
        assert_eq!(
            s.points(),
            &[
                Point::from([1, 2]),
                Point::from([1, 5]),
                Point::from([3, 0])
            ]
        );
        assert!(matches!(
            PointSet::new(2, vec![Point::from([1])]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            PointSet::new(0, vec![]),
            Err(Error::ZeroDimension)
        ));
    }

    fn arb_set(dim: usize) -> impl Strategy<Value = PointSet> {
        prop::collection::vec(prop::collection::vec(-20i64..20, dim), 0..30).prop_map(move |rows| {
            PointSet::new(dim, rows.into_iter().map(Point::new).collect()).unwrap()
        })
    }

    fn is_strictly_sorted(s: &PointSet) -> bool {
        s.points().windows(2).all(|w| w[0] < w[1])
    }

    proptest! {
        #[test]
        fn translate_inverse(s in arb_set(2), v in prop::collection::vec(-50i64..50, 2)) {
            let v = Vector::new(v);
            let moved = s.translate(&v).unwrap();
            prop_assert_eq!(moved.len(), s.len());
            prop_assert_eq!(moved.translate(&-&v).unwrap(), s);
        }

        #[test]
        fn union_difference_sorted(a in arb_set(3), b in arb_set(3)) {
            let u = a.union(&b).unwrap();
            let d = a.difference(&b).unwrap();
            prop_assert!(is_strictly_sorted(&u));
            prop_assert!(is_strictly_sorted(&d));
            prop_assert!(a.is_subset(&u).unwrap() && b.is_subset(&u).unwrap());
            prop_assert!(d.iter().all(|p| a.contains(p) && !b.contains(p)));
            prop_assert_eq!(u.len(), d.len() + b.len());
        }

        #[test]
        fn lexicographic_total_order(a in prop::collection::vec(-3i64..3, 3), b in prop::collection::vec(-3i64..3, 3)) {
            let (p, q) = (Point::new(a.clone()), Point::new(b.clone()));
            let n = [p < q, p == q, p > q].iter().filter(|&&x| x).count();
            prop_assert_eq!(n, 1);
            prop_assert_eq!(p.cmp(&q), a.cmp(&b));
        }
    }
}
