use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::IntervalError;

/// Half-open integer interval (lo, hi].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Interval {
    pub lo: u64,
    pub hi: u64,
}

impl Interval {
    pub fn new(lo: u64, hi: u64) -> Self {
        assert!(lo < hi, "empty interval ({lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn len(self) -> u64 {
        self.hi - self.lo
    }

    pub fn is_empty(self) -> bool {
        self.hi <= self.lo
    }

    pub fn contains(self, n: u64) -> bool {
        self.lo < n && n <= self.hi
    }

    pub fn is_disjoint(self, other: Interval) -> bool {
        self.hi <= other.lo || other.hi <= self.lo
    }

    /// Order by length, then left endpoint.
    pub fn cmp_by_len(&self, other: &Interval) -> Ordering {
        (self.len(), self.lo).cmp(&(other.len(), other.lo))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.lo, self.hi)
    }
}

/// The t - 1 intervals between consecutive sorted points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalFamily {
    points: Vec<u64>,
    intervals: Vec<Interval>,
}

impl IntervalFamily {
    pub fn build(points: &[u64]) -> Result<Self, IntervalError> {
        if points.len() < 2 {
            return Err(IntervalError::TooFewPoints(points.len()));
        }
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        if sorted[0] == 0 {
            return Err(IntervalError::NonPositivePoint);
        }
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(IntervalError::DuplicatePoints(w[0]));
        }
        let intervals = sorted.windows(2).map(|w| Interval::new(w[0], w[1])).collect();
        Ok(IntervalFamily {
            points: sorted,
            intervals,
        })
    }

    /// Sorted points.
    pub fn points(&self) -> &[u64] {
        &self.points
    }

    /// Intervals in ascending order of left endpoint.
    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn min(&self) -> u64 {
        self.points[0]
    }

    pub fn max(&self) -> u64 {
        *self.points.last().expect("at least two points")
    }

    pub fn contains_interval(&self, iv: Interval) -> bool {
        self.intervals
            .binary_search_by(|probe| probe.lo.cmp(&iv.lo))
            .is_ok_and(|i| self.intervals[i] == iv)
    }
}

/// #(I(n_1..n_k) \ I(n_1..n_{k-1})) for the first k points of `points`
/// taken in the given order. Requires 3 <= k <= points.len().
pub fn removal_count(points: &[u64], k: usize) -> Result<usize, IntervalError> {
    if k < 3 || k > points.len() {
        return Err(IntervalError::TooFewPoints(k.min(points.len())));
    }
    let big = IntervalFamily::build(&points[..k])?;
    let small = IntervalFamily::build(&points[..k - 1])?;
    Ok(big
        .intervals()
        .iter()
        .filter(|iv| !small.contains_interval(**iv))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ivs(fam: &IntervalFamily) -> Vec<(u64, u64)> {
        fam.intervals().iter().map(|iv| (iv.lo, iv.hi)).collect()
    }

    #[test]
    fn build_examples() {
        assert_eq!(ivs(&IntervalFamily::build(&[3, 7, 5]).unwrap()), vec![(3, 5), (5, 7)]);
        assert_eq!(ivs(&IntervalFamily::build(&[1, 2]).unwrap()), vec![(1, 2)]);
        assert_eq!(
            IntervalFamily::build(&[4, 9, 4]),
            Err(IntervalError::DuplicatePoints(4))
        );
        assert_eq!(IntervalFamily::build(&[4]), Err(IntervalError::TooFewPoints(1)));
        assert_eq!(IntervalFamily::build(&[0, 4]), Err(IntervalError::NonPositivePoint));
    }

    #[test]
    fn interval_basics() {
        let iv = Interval::new(5, 10);
        assert_eq!(iv.len(), 5);
        assert!(!iv.contains(5) && iv.contains(6) && iv.contains(10) && !iv.contains(11));
        assert!(iv.is_disjoint(Interval::new(10, 12)));
        assert!(!iv.is_disjoint(Interval::new(9, 12)));
        assert_eq!(iv.to_string(), "(5, 10]");
    }

    #[test]
    fn removal_examples() {
        // adding an interior point splits one interval into two
        assert_eq!(removal_count(&[1, 10, 5], 3), Ok(2));
        // adding an endpoint adds one interval
        assert_eq!(removal_count(&[1, 10, 20], 3), Ok(1));
        assert!(removal_count(&[1, 2], 2).is_err());
    }
}
