use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::SieveError;
use crate::arith::Valuation;

/// A certified pair (p, n) with p^ord || n! + f(n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HitRecord {
    pub p: u64,
    pub n: u64,
    pub ord: Valuation,
    pub f_id: String,
}

/// Scan statistics kept alongside the hits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanStats {
    /// Primes actually scanned, ascending. Empty for stores loaded from CSV.
    pub scanned_primes: Vec<u64>,
    /// Inclusive prime range of the run, when known.
    pub prime_range: Option<(u64, u64)>,
    /// Modular multiplications spent on factorial recurrences.
    pub factorial_steps: u64,
}

/// Finalized, immutable hits sorted by (p, n).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HitStore {
    records: Vec<HitRecord>,
    stats: ScanStats,
}

/// Shared append target for sieve workers. Appends are serialized through a
/// mutex; [`HitSink::finalize`] sorts once.
#[derive(Debug, Default)]
pub struct HitSink {
    inner: Mutex<(Vec<HitRecord>, ScanStats)>,
}

impl HitSink {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn append(&self, batch: Vec<HitRecord>, scanned: &[u64], steps: u64) {
        let mut guard = self.inner.lock().expect("sink poisoned");
        guard.0.extend(batch);
        guard.1.scanned_primes.extend_from_slice(scanned);
        guard.1.factorial_steps += steps;
    }

    pub fn finalize(self, prime_range: Option<(u64, u64)>) -> Result<HitStore, SieveError> {
        let (records, mut stats) = self.inner.into_inner().expect("sink poisoned");
        stats.scanned_primes.sort_unstable();
        stats.scanned_primes.dedup();
        stats.prime_range = prime_range;
        HitStore::from_parts(records, stats)
    }
}

impl HitStore {
    fn from_parts(mut records: Vec<HitRecord>, stats: ScanStats) -> Result<Self, SieveError> {
        records.sort_by(|a, b| (a.p, a.n, &a.f_id).cmp(&(b.p, b.n, &b.f_id)));
        for w in records.windows(2) {
            if (w[0].p, w[0].n, &w[0].f_id) == (w[1].p, w[1].n, &w[1].f_id) {
                return Err(SieveError::DuplicateHit { p: w[0].p, n: w[0].n });
            }
        }
        Ok(HitStore { records, stats })
    }

    pub fn from_records(records: Vec<HitRecord>) -> Result<Self, SieveError> {
        Self::from_parts(records, ScanStats::default())
    }

    pub fn records(&self) -> &[HitRecord] {
        &self.records
    }

    pub fn stats(&self) -> &ScanStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Hits of prime p, ascending in n.
    pub fn hits_for(&self, p: u64) -> &[HitRecord] {
        let start = self.records.partition_point(|r| r.p < p);
        let end = self.records.partition_point(|r| r.p <= p);
        &self.records[start..end]
    }

    /// Distinct primes with at least one hit, ascending.
    pub fn primes_with_hits(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.records.iter().map(|r| r.p).collect();
        ps.dedup();
        ps
    }

    /// Scanned primes when known, otherwise the primes that appear in hits.
    pub fn primes(&self) -> Vec<u64> {
        if self.stats.scanned_primes.is_empty() {
            self.primes_with_hits()
        } else {
            self.stats.scanned_primes.clone()
        }
    }

    /// #N_p for every prime with hits.
    pub fn hits_per_prime(&self) -> BTreeMap<u64, usize> {
        let mut m = BTreeMap::new();
        for r in &self.records {
            *m.entry(r.p).or_insert(0) += 1;
        }
        m
    }

    /// (p, #N_p) for a prime with the most hits; ties go to the smaller p.
    pub fn max_hits(&self) -> Option<(u64, usize)> {
        self.hits_per_prime().into_iter().fold(None, |best, (p, c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((p, c)),
        })
    }

    /// Upper end of the scanned prime range, or the largest prime with a hit.
    pub fn prime_bound(&self) -> Option<u64> {
        self.stats
            .prime_range
            .map(|(_, hi)| hi)
            .or_else(|| self.records.last().map(|r| r.p))
    }

    /// Writes `p,n,ord,f_id` rows with a header and LF line endings.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), SieveError> {
        let mut wtr = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(w);
        wtr.write_record(["p", "n", "ord", "f_id"])?;
        for r in &self.records {
            wtr.write_record([r.p.to_string(), r.n.to_string(), r.ord.to_string(), r.f_id.clone()])?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// Reads the format written by [`HitStore::write_csv`]. An empty input
    /// yields an empty store.
    pub fn read_csv<R: Read>(r: R) -> Result<Self, SieveError> {
        #[derive(Deserialize)]
        struct Row {
            p: u64,
            n: u64,
            ord: String,
            f_id: String,
        }
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
        let mut records = Vec::new();
        for row in rdr.deserialize::<Row>() {
            let row = row?;
            let ord = row.ord.parse::<Valuation>()?;
            records.push(HitRecord {
                p: row.p,
                n: row.n,
                ord,
                f_id: row.f_id,
            });
        }
        Self::from_records(records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(p: u64, n: u64, ord: Valuation) -> HitRecord {
        HitRecord {
            p,
            n,
            ord,
            f_id: "f0".into(),
        }
    }

    #[test]
    fn sorted_and_deduplicated() {
        let store = HitStore::from_records(vec![
            rec(11, 10, Valuation::Exact(1)),
            rec(7, 6, Valuation::Exact(1)),
            rec(7, 3, Valuation::Exact(1)),
        ])
        .unwrap();
        let keys: Vec<_> = store.records().iter().map(|r| (r.p, r.n)).collect();
        assert_eq!(keys, vec![(7, 3), (7, 6), (11, 10)]);
        assert_eq!(store.hits_for(7).len(), 2);
        assert!(store.hits_for(5).is_empty());
        assert_eq!(store.max_hits(), Some((7, 2)));
        assert_eq!(
            HitStore::from_records(vec![rec(7, 3, Valuation::Exact(1)), rec(7, 3, Valuation::Exact(1))]),
            Err(SieveError::DuplicateHit { p: 7, n: 3 })
        );
    }

    #[test]
    fn csv_round_trip() {
        let store = HitStore::from_records(vec![
            rec(7, 3, Valuation::Exact(1)),
            rec(71, 7, Valuation::Exact(2)),
            rec(1_000_003, 5, Valuation::AtLeast(1)),
        ])
        .unwrap();
        let mut buf = Vec::new();
        store.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text, "p,n,ord,f_id\n7,3,1,f0\n71,7,2,f0\n1000003,5,>=1,f0\n");
        assert_eq!(HitStore::read_csv(&buf[..]).unwrap(), store);
    }

    #[test]
    fn empty_inputs() {
        assert!(HitStore::read_csv(&b""[..]).unwrap().is_empty());
        assert!(HitStore::read_csv(&b"p,n,ord,f_id\n"[..]).unwrap().is_empty());
        assert!(HitStore::read_csv(&b"p,n,ord,f_id\n7,x,1,f0\n"[..]).is_err());
    }
}
