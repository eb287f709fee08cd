//! Integer partitions and the statistics attached to them.
//!
//! A [`Partition`] keeps its parts weakly decreasing. [`PartitionStats`]
//! bundles the quantities most formulas are indexed by: the length, the
//! products of factorials `mu!` and `m(mu)!`, and the multinomial-type count
//! `d_mu = k!/(mu! m(mu)!)` of set partitions of `[k]` with block sizes `mu`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::factorial;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Build from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part value -> multiplicity, ascending by part.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn stats(&self) -> PartitionStats {
        let length = self.len();
        let mut part_factorial = BigInt::one();
        for &p in &self.parts {
            part_factorial *= factorial(p as usize);
        }
        let mut mult_factorial = BigInt::one();
        for &m in self.multiplicities().values() {
            mult_factorial *= factorial(m as usize);
        }
        let numer = factorial(self.size() as usize);
        let denom = &part_factorial * &mult_factorial;
        let d = &numer / &denom;
        assert!(&d * &denom == numer, "d_mu is an integer by construction");
        PartitionStats {
            length,
            part_factorial,
            mult_factorial,
            d,
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// Derived statistics of one partition `mu` of `k`.
pub struct PartitionStats {
    /// Number of parts.
    pub length: usize,
    /// Product of the factorials of the parts.
    pub part_factorial: BigInt,
    /// Product of the factorials of the part multiplicities.
    pub mult_factorial: BigInt,
    /// `k! / (mu! m(mu)!)`, the number of set partitions of `[k]` whose
    /// block sizes are `mu`.
    pub d: BigInt,
}

/// All partitions of `n`, lexicographically decreasing: `(n)` first, the
/// all-ones partition last.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        for next in (1..=rest.min(max)).rev() {
            current.push(next);
            go(rest - next, next, current, out);
            current.pop();
        }
    }
    go(n, n.max(1), &mut current, &mut out);
    out
}

/// `n(n-1)(n-2)...(n-k+1)`; the empty product 1 when `k = 0`. `n` may be
/// negative.
pub fn falling_factorial(n: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k as i64 {
        acc *= n - j;
    }
    acc
}

/// The multiset union of `{k}` and `lambda`.
pub fn add_part(k: u32, lambda: &Partition) -> Partition {
    let mut parts = lambda.parts.clone();
    parts.push(k);
    Partition::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Independent count of partitions of n: parts-bounded-by-k table.
    fn partition_count_oracle(n: usize) -> u64 {
        let mut table = vec![vec![0u64; n + 1]; n + 1];
        for k in 0..=n {
            table[0][k] = 1;
        }
        for m in 1..=n {
            for k in 1..=n {
                table[m][k] = table[m][k - 1] + if m >= k { table[m - k][k] } else { 0 };
            }
        }
        table[n][n]
    }

    #[test]
    fn enumeration_is_complete_and_ordered() {
        for n in 0..=12u32 {
            let all = enumerate_partitions(n);
            assert_eq!(all.len() as u64, partition_count_oracle(n as usize));
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len());
            for p in &all {
                assert_eq!(p.size(), n);
                assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
            }
            // Lexicographically decreasing.
            for w in all.windows(2) {
                assert!(w[0].parts() > w[1].parts());
            }
        }
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let three: Vec<_> = enumerate_partitions(3);
        assert_eq!(
            three,
            vec![
                Partition::new(vec![3]),
                Partition::new(vec![2, 1]),
                Partition::new(vec![1, 1, 1]),
            ]
        );
        assert_eq!(enumerate_partitions(4).len(), 5);
    }

    #[test]
    fn stats_examples() {
        let mu = Partition::new(vec![2, 1, 1]);
        let s = mu.stats();
        assert_eq!(s.length, 3);
        assert_eq!(s.part_factorial, BigInt::from(2));
        assert_eq!(s.mult_factorial, BigInt::from(2));
        assert_eq!(s.d, BigInt::from(6));

        for n in 1..=8 {
            let s = Partition::new(vec![n]).stats();
            assert_eq!(s.length, 1);
            assert_eq!(s.d, BigInt::one());
        }

        assert_eq!(Partition::new(vec![1, 1]).stats().d, BigInt::one());
    }

    #[test]
    fn stats_reassemble_the_factorial() {
        for n in 0..=9u32 {
            let nf = factorial(n as usize);
            for mu in enumerate_partitions(n) {
                let s = mu.stats();
                assert_eq!(&s.d * &s.part_factorial * &s.mult_factorial, nf);
                let weighted: u32 = mu
                    .multiplicities()
                    .iter()
                    .map(|(&k, &m)| k * m)
                    .sum();
                assert_eq!(weighted, n);
            }
        }
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling_factorial(3, 2), BigInt::from(6));
        assert_eq!(falling_factorial(7, 0), BigInt::one());
        assert_eq!(falling_factorial(5, 3), BigInt::from(60));
        assert_eq!(falling_factorial(-1, 2), BigInt::from(2));
        assert_eq!(falling_factorial(2, 4), BigInt::ZERO);
    }

    #[test]
    fn add_part_examples() {
        assert_eq!(
            add_part(2, &Partition::new(vec![3, 1])),
            Partition::new(vec![3, 2, 1])
        );
        assert_eq!(add_part(1, &Partition::empty()), Partition::new(vec![1]));
    }

    #[test]
    fn add_part_covers_partitions_with_distinct_part_multiplicity() {
        // The images of (k, lambda) with 1 <= k <= n, lambda a partition of
        // n-k, hit each partition of n once per distinct part it contains.
        for n in 1..=8u32 {
            let mut hits: BTreeMap<Partition, u32> = BTreeMap::new();
            for k in 1..=n {
                for lambda in enumerate_partitions(n - k) {
                    *hits.entry(add_part(k, &lambda)).or_insert(0) += 1;
                }
            }
            for mu in enumerate_partitions(n) {
                assert_eq!(hits[&mu], mu.multiplicities().len() as u32);
            }
        }
    }

    #[test]
    fn display_is_comma_joined() {
        assert_eq!(Partition::new(vec![1, 2, 1]).to_string(), "2,1,1");
        assert_eq!(Partition::empty().to_string(), "");
    }

    #[test]
    #[should_panic(expected = "positive")]
    fn zero_parts_rejected() {
        let _ = Partition::new(vec![2, 0]);
    }
}
