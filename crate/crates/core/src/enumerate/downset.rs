//! Downward-closed families of the n-cube as 64-bit masks.
//!
//! For `n ≤ 6` the `2^n` subsets of `{0, .., n-1}` fit in one `u64`: bit `s` of
//! a family mask is set when the subset with bit pattern `s` is a member.

use crate::family::{Hyperedge, SetFamily};
use crate::ideal::IdealFamily;

pub(crate) const MAX_CUBE_DIM: usize = 6;

/// Per-subset lookup tables for the n-cube.
#[derive(Clone, Debug)]
pub(crate) struct Cube {
    pub n: usize,
    /// `2^n`.
    pub size: usize,
    /// Subsets one element smaller than `s`.
    pub lower: [u64; 64],
    /// All subsets of `s`, including `s`.
    pub down: [u64; 64],
    /// Subsets and supersets of `s`, including `s`.
    pub comparable: [u64; 64],
    /// Subsets of each cardinality.
    pub by_size: [u64; MAX_CUBE_DIM + 1],
    /// Subsets containing vertex `j`.
    pub containing: [u64; MAX_CUBE_DIM],
}

impl Cube {
    pub fn new(n: usize) -> Cube {
        assert!((1..=MAX_CUBE_DIM).contains(&n), "cube dimension {n} out of range");
        let size = 1usize << n;
        let mut cube = Cube {
            n,
            size,
            lower: [0; 64],
            down: [0; 64],
            comparable: [0; 64],
            by_size: [0; MAX_CUBE_DIM + 1],
            containing: [0; MAX_CUBE_DIM],
        };
        for s in 0..size {
            for j in 0..n {
                if s & (1 << j) != 0 {
                    cube.lower[s] |= 1 << (s & !(1 << j));
                    cube.containing[j] |= 1 << s;
                }
            }
            for t in 0..size {
                if t & !s == 0 {
                    cube.down[s] |= 1 << t;
                    cube.comparable[s] |= 1 << t;
                    cube.comparable[t] |= 1 << s;
                }
            }
            cube.by_size[s.count_ones() as usize] |= 1 << s;
        }
        cube
    }

    /// Mask with every subset set.
    pub fn all(&self) -> u64 {
        if self.size == 64 {
            u64::MAX
        } else {
            (1u64 << self.size) - 1
        }
    }

    pub fn ground_bit(&self) -> u64 {
        1 << (self.size - 1)
    }

    pub fn tsh(&self, family: u64) -> i64 {
        self.by_size.iter().enumerate().map(|(k, &class)| k as i64 * i64::from((family & class).count_ones())).sum()
    }

    pub fn nds(&self, family: u64) -> i64 {
        2 * self.tsh(family) - self.n as i64 * i64::from(family.count_ones())
    }

    pub fn has_rare_vertex(&self, family: u64) -> bool {
        let m = family.count_ones();
        self.containing[..self.n].iter().any(|&c| 2 * (family & c).count_ones() <= m)
    }

    pub fn to_family(&self, family: u64) -> SetFamily {
        let edges = bits(family).map(|s| Hyperedge::from_bits_unchecked(s as u32)).collect();
        SetFamily::from_sorted_unchecked(Hyperedge::from_bits_unchecked(self.size as u32 - 1), edges)
    }

    pub fn to_ideal(&self, family: u64) -> IdealFamily {
        IdealFamily::new_unchecked(self.to_family(family))
    }
}

/// Indices of the set bits, ascending.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let s = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(s)
    })
}

/// Grows downward-closed families by scanning subsets in ascending value
/// order. A subset may be included only when all of its one-smaller subsets
/// already are; every scanned subset precedes its supersets, so a subset that
/// is not addable when reached stays excluded.
///
/// Each call to `next` walks one root-to-leaf path of the include/exclude tree
/// (include first) and yields the leaf.
#[derive(Clone, Debug)]
pub(crate) struct DownsetGrowth {
    cube: Cube,
    limit: usize,
    stack: Vec<(usize, u64)>,
}

impl DownsetGrowth {
    /// Every downward-closed family of the n-cube, the empty family included.
    pub fn all(n: usize) -> Self {
        let cube = Cube::new(n);
        let limit = cube.size;
        DownsetGrowth { cube, limit, stack: vec![(0, 0)] }
    }

    /// Downward-closed families containing `∅` but not `U`.
    pub fn proper_nonempty(n: usize) -> Self {
        let cube = Cube::new(n);
        let limit = cube.size - 1;
        DownsetGrowth { cube, limit, stack: vec![(1, 1)] }
    }

    pub fn cube(&self) -> &Cube {
        &self.cube
    }

    fn next_addable(&self, mut pos: usize, family: u64) -> Option<usize> {
        while pos < self.limit {
            let need = self.cube.lower[pos];
            if family & need == need {
                return Some(pos);
            }
            pos += 1;
        }
        None
    }

    /// Splits the pending work into at least `target` independent subtrees
    /// (fewer if the tree is smaller), listed in the order this iterator would
    /// visit them.
    pub fn split(self, target: usize) -> Vec<DownsetGrowth> {
        let mut frontier: Vec<(usize, u64)> = self.stack.iter().rev().copied().collect();
        loop {
            if frontier.len() >= target {
                break;
            }
            let mut grew = false;
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for (pos, family) in frontier {
                match self.next_addable(pos, family) {
                    Some(p) => {
                        next.push((p + 1, family | 1 << p));
                        next.push((p + 1, family));
                        grew = true;
                    }
                    None => next.push((self.limit, family)),
                }
            }
            frontier = next;
            if !grew {
                break;
            }
        }
        frontier
            .into_iter()
            .map(|state| DownsetGrowth { cube: self.cube.clone(), limit: self.limit, stack: vec![state] })
            .collect()
    }
}

impl Iterator for DownsetGrowth {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let (mut pos, mut family) = self.stack.pop()?;
        loop {
            match self.next_addable(pos, family) {
                None => return Some(family),
                Some(p) => {
                    self.stack.push((p + 1, family));
                    family |= 1 << p;
                    pos = p + 1;
                }
            }
        }
    }
}

/// Enumerates nonempty antichains of proper subsets of `U` and yields the
/// downward closure of each. Every downward-closed family containing `∅` and
/// avoiding `U` is the closure of exactly one such antichain (its maximal
/// members), so this generator is an independent route to the same families
/// [`DownsetGrowth::proper_nonempty`] produces.
#[derive(Clone, Debug)]
pub(crate) struct AntichainClosures {
    cube: Cube,
    /// (remaining candidates, closure of the chosen antichain)
    stack: Vec<(u64, u64)>,
}

impl AntichainClosures {
    pub fn proper_nonempty(n: usize) -> Self {
        let cube = Cube::new(n);
        let candidates = cube.all() & !cube.ground_bit();
        AntichainClosures { cube, stack: vec![(candidates, 0)] }
    }
}

impl Iterator for AntichainClosures {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while let Some((mut candidates, mut closure)) = self.stack.pop() {
            while candidates != 0 {
                let s = candidates.trailing_zeros() as usize;
                self.stack.push((candidates & !(1 << s), closure));
                candidates &= !self.cube.comparable[s];
                closure |= self.cube.down[s];
            }
            if closure != 0 {
                return Some(closure);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_down_closed_naive(n: usize, family: u64) -> bool {
        let size = 1usize << n;
        (0..size).all(|b| family >> b & 1 == 0 || (0..size).all(|a| a & !b != 0 || family >> a & 1 == 1))
    }

    #[test]
    fn cube_tables() {
        let c = Cube::new(3);
        assert_eq!(c.lower[0b011], (1 << 0b001) | (1 << 0b010));
        assert_eq!(c.down[0b101], (1 << 0) | (1 << 1) | (1 << 4) | (1 << 5));
        assert_eq!(c.by_size[0], 1);
        assert_eq!(c.containing[1], (1 << 2) | (1 << 3) | (1 << 6) | (1 << 7));
        assert_eq!(Cube::new(6).all(), u64::MAX);
        assert_eq!(c.nds(c.all()), 0);
    }

    #[test]
    fn growth_yields_distinct_downsets() {
        for n in 1..=4 {
            let all: Vec<u64> = DownsetGrowth::all(n).collect();
            let mut sorted = all.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
            assert!(all.iter().all(|&f| is_down_closed_naive(n, f)));
        }
    }

    #[test]
    fn split_covers_the_same_leaves_in_order() {
        for n in 2..=5 {
            let whole: Vec<u64> = DownsetGrowth::proper_nonempty(n).collect();
            for target in [1, 2, 7, 64] {
                let parts: Vec<u64> = DownsetGrowth::proper_nonempty(n).split(target).into_iter().flatten().collect();
                assert_eq!(parts, whole, "n = {n}, target = {target}");
            }
        }
    }

    #[test]
    fn antichain_closures_are_downsets() {
        for n in 1..=4 {
            let c = Cube::new(n);
            for f in AntichainClosures::proper_nonempty(n) {
                assert!(is_down_closed_naive(n, f));
                assert!(f & 1 == 1 && f & c.ground_bit() == 0);
            }
        }
    }
}
