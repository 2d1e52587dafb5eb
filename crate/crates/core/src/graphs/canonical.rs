use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::ComparisonGraph;

/// Largest vertex count accepted by the exhaustive permutation scan.
pub const MAX_CANONICAL_VERTICES: usize = 8;

/// Edge bitstring of a graph. Pair `(i, j)` at lexicographic position `k`
/// occupies bit `pairs - 1 - k`, so numeric order equals bitstring order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode {
    n: usize,
    bits: u64,
}

impl CanonicalCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn edge_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Bitstring as `0`/`1` characters, first pair first.
    pub fn bitstring(&self) -> String {
        let pairs = pair_count(self.n);
        (0..pairs)
            .map(|k| {
                if self.bits >> (pairs - 1 - k) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    pub(crate) fn from_bits(n: usize, bits: u64) -> Self {
        Self { n, bits }
    }

    pub fn to_hex(&self) -> String {
        format!("{:x}", self.bits)
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        let bits = u64::from_str_radix(hex.trim_start_matches("0x"), 16)
            .map_err(|e| Error::InvalidInput(format!("bad canonical code `{hex}`: {e}")))?;
        if n > MAX_CANONICAL_VERTICES || bits >> pair_count(n) != 0 {
            return Err(Error::InvalidInput(format!(
                "canonical code `{hex}` does not fit {n} vertices"
            )));
        }
        Ok(Self { n, bits })
    }

    /// The member graph whose edge bitstring is this code.
    pub fn graph(&self) -> ComparisonGraph {
        let pairs = pair_count(self.n);
        let mut g = ComparisonGraph::empty(self.n);
        for (k, (i, j)) in pair_list(self.n).into_iter().enumerate() {
            if self.bits >> (pairs - 1 - k) & 1 == 1 {
                g.add_edge(i, j).expect("pair in range");
            }
        }
        g
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Minimal edge bitstring over all `n!` vertex permutations.
pub fn canonical_code(g: &ComparisonGraph) -> Result<CanonicalCode> {
    let n = g.n();
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::TooLarge {
            n,
            max: MAX_CANONICAL_VERTICES,
        });
    }
    let table = PermutationTable::new(n);
    Ok(CanonicalCode {
        n,
        bits: table.images(encode(g)).min().unwrap_or(0),
    })
}

pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub(crate) fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Bit position of pair `(i, j)`, `i < j`.
fn bit_of(n: usize, i: usize, j: usize) -> usize {
    let index = i * n - i * (i + 1) / 2 + (j - i - 1);
    pair_count(n) - 1 - index
}

pub(crate) fn encode(g: &ComparisonGraph) -> u64 {
    g.edges()
        .fold(0, |acc, (i, j)| acc | 1 << bit_of(g.n(), i, j))
}

/// For every vertex permutation, the bit each pair bit is sent to.
pub(crate) struct PermutationTable {
    maps: Vec<Vec<u8>>,
}

impl PermutationTable {
    pub(crate) fn new(n: usize) -> Self {
        let pairs = pair_list(n);
        let mut maps = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let mut map = vec![0u8; pairs.len()];
            for &(i, j) in &pairs {
                let (a, b) = (perm[i], perm[j]);
                map[bit_of(n, i, j)] = bit_of(n, a.min(b), a.max(b)) as u8;
            }
            maps.push(map);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Self { maps }
    }

    /// Codes of all relabelings of the graph with code `bits`.
    pub(crate) fn images(&self, bits: u64) -> impl Iterator<Item = u64> + '_ {
        self.maps.iter().map(move |map| {
            map.iter()
                .enumerate()
                .filter(|(from, _)| bits >> from & 1 == 1)
                .fold(0u64, |acc, (_, &to)| acc | 1 << to)
        })
    }
}

/// Advances to the next permutation in lexicographic order.
fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm
        .iter()
        .rposition(|&x| x > perm[i])
        .expect("successor exists");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}
