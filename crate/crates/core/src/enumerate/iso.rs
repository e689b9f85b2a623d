//! Canonical forms of family masks under relabeling of the ground set.

use super::downset::bits;

/// Subset images under every permutation of `{0, .., n-1}`.
#[derive(Clone, Debug)]
pub(crate) struct Relabelings {
    maps: Vec<[u8; 64]>,
}

impl Relabelings {
    pub fn new(n: usize) -> Self {
        let size = 1usize << n;
        let maps = permutations(n)
            .into_iter()
            .map(|perm| {
                let mut map = [0u8; 64];
                for (s, image) in map.iter_mut().enumerate().take(size) {
                    *image = (0..n).filter(|&j| s >> j & 1 == 1).fold(0, |acc, j| acc | 1 << perm[j]);
                }
                map
            })
            .collect();
        Relabelings { maps }
    }

    /// Smallest image of `family` over all relabelings.
    pub fn canonical(&self, family: u64) -> u64 {
        self.maps
            .iter()
            .map(|map| bits(family).fold(0u64, |acc, s| acc | 1 << map[s]))
            .min()
            .expect("at least the identity")
    }
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}
