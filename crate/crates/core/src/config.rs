//! Pebble configurations and their enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, Vertex};

/// Upper bound on the total number of pebbles in a configuration. Per-vertex
/// counts are stored as `u8`, and since every move removes a pebble no vertex
/// can ever exceed this.
pub const MAX_PEBBLES: u32 = u8::MAX as u32;

/// Pebble count per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Configuration(Vec<u8>);

impl Configuration {
    pub fn new(counts: Vec<u8>) -> Result<Self> {
        let size: u64 = counts.iter().map(|&c| c as u64).sum();
        if size > MAX_PEBBLES as u64 {
            return Err(Error::TooManyPebbles(size));
        }
        Ok(Configuration(counts))
    }

    pub fn from_counts(counts: &[u32]) -> Result<Self> {
        let size: u64 = counts.iter().map(|&c| c as u64).sum();
        if size > MAX_PEBBLES as u64 {
            return Err(Error::TooManyPebbles(size));
        }
        Ok(Configuration(counts.iter().map(|&c| c as u8).collect()))
    }

    pub fn zeros(n: usize) -> Self {
        Configuration(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().map(|&c| c as u32).sum()
    }

    pub fn get(&self, v: Vertex) -> u8 {
        self.0[v]
    }

    pub fn counts(&self) -> &[u8] {
        &self.0
    }

    pub(crate) fn counts_mut(&mut self) -> &mut [u8] {
        &mut self.0
    }

    pub fn check_for(&self, g: &Graph) -> Result<()> {
        if self.len() == g.n() {
            Ok(())
        } else {
            Err(Error::ConfigLength {
                expected: g.n(),
                got: self.len(),
            })
        }
    }

    /// Parses `n` whitespace-separated counts.
    pub fn parse_text(text: &str) -> Result<Self> {
        let counts = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| parse_err(1, format!("bad pebble count `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if counts.is_empty() {
            return Err(parse_err(1, "empty configuration"));
        }
        Configuration::from_counts(&counts)
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        parts.join(" ")
    }
}

impl TryFrom<Vec<u8>> for Configuration {
    type Error = Error;
    fn try_from(v: Vec<u8>) -> Result<Self> {
        Configuration::new(v)
    }
}

impl From<Configuration> for Vec<u8> {
    fn from(c: Configuration) -> Self {
        c.0
    }
}

impl std::ops::Index<Vertex> for Configuration {
    type Output = u8;
    fn index(&self, v: Vertex) -> &u8 {
        &self.0[v]
    }
}

/// Every composition of `size` into `n` non-negative parts, in descending
/// lexicographic order: `(size, 0, ..)` first, `(.., 0, size)` last.
pub fn enumerate_configurations(n: usize, size: u32) -> Compositions {
    assert!(n >= 1, "need at least one vertex");
    assert!(size <= MAX_PEBBLES, "too many pebbles");
    let mut first = vec![0u8; n];
    first[0] = size as u8;
    Compositions { next: Some(first) }
}

#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Vec<u8>>,
}

impl Iterator for Compositions {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        let current = self.next.take()?;
        let n = current.len();
        // Successor: move one pebble from the last nonzero non-final slot into
        // the slot after it, which absorbs everything to its right.
        if let Some(i) = (0..n - 1).rev().find(|&i| current[i] > 0) {
            let mut succ = current.clone();
            let tail: u8 = succ[i + 1..].iter().sum();
            succ[i] -= 1;
            succ[i + 1] = tail + 1;
            for c in &mut succ[i + 2..] {
                *c = 0;
            }
            self.next = Some(succ);
        }
        Some(Configuration(current))
    }
}

/// `C(n, k)` in `u128`; exact for the ranges used in sweeps.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn items(n: usize, size: u32) -> Vec<Vec<u8>> {
        enumerate_configurations(n, size)
            .map(|c| c.counts().to_vec())
            .collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(items(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(items(1, 7), vec![vec![7]]);
        assert_eq!(items(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(enumerate_configurations(5, 10).count(), 1001);
    }

    #[test]
    fn binomial_oracle() {
        // Pascal's rule as an independent check.
        let mut row = vec![1u128];
        for n in 1..=30u64 {
            let mut next = vec![1u128; n as usize + 1];
            for k in 1..n as usize {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
            for k in 0..=n {
                assert_eq!(binomial(n, k), row[k as usize]);
            }
        }
        assert_eq!(binomial(14, 4), 1001);
    }

    #[test]
    fn parse_and_emit() {
        let c = Configuration::parse_text("0 0  3\n").unwrap();
        assert_eq!(c.counts(), &[0, 0, 3]);
        assert_eq!(c.to_text(), "0 0 3");
        assert!(Configuration::parse_text("1 x").is_err());
        assert!(Configuration::parse_text("").is_err());
        assert_eq!(
            Configuration::parse_text("200 100"),
            Err(Error::TooManyPebbles(300))
        );
    }

    proptest! {
        #[test]
        fn enumeration_is_exact_and_descending(n in 1usize..6, size in 0u32..9) {
            let all = items(n, size);
            prop_assert_eq!(all.len() as u128, binomial(size as u64 + n as u64 - 1, n as u64 - 1));
            let distinct: HashSet<_> = all.iter().collect();
            prop_assert_eq!(distinct.len(), all.len());
            for c in &all {
                prop_assert_eq!(c.iter().map(|&x| x as u32).sum::<u32>(), size);
            }
            for w in all.windows(2) {
                prop_assert!(w[0] > w[1]);
            }
        }
    }
}
