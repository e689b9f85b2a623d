//! Intersection-closed families on small ground sets.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::downset::{bits, Cube};
use super::{check_range, EnumerateError};
use crate::family::SetFamily;

/// Largest ground set the intersection-closed search accepts.
pub const MAX_SEARCH_N: usize = 5;
/// Largest ground set for the rare-vertex conjecture check.
pub const MAX_CONJECTURE_N: usize = 5;

/// Every intersection-closed family of the n-cube (as masks), optionally
/// forced to contain `∅` and/or `U`.
///
/// Subsets are decided in ascending value order. When `S` is considered,
/// every chosen `T` precedes it and `S ∩ T ≤ T`, so whether `S ∩ T` is a
/// member is already settled; `S` may be included only if all those
/// intersections are members. Forced members never conflict: `∅` comes first
/// and `U ∩ T = T`.
#[derive(Clone, Debug)]
pub(crate) struct IntersectionClosedMasks {
    size: usize,
    require_empty: bool,
    require_ground: bool,
    stack: Vec<(usize, u64)>,
}

impl IntersectionClosedMasks {
    pub fn new(n: usize, require_empty: bool, require_ground: bool) -> Self {
        IntersectionClosedMasks { size: 1 << n, require_empty, require_ground, stack: vec![(0, 0)] }
    }

    fn compatible(s: usize, family: u64) -> bool {
        bits(family).all(|t| family >> (s & t) & 1 == 1)
    }

    fn forced(&self, s: usize) -> bool {
        (s == 0 && self.require_empty) || (s == self.size - 1 && self.require_ground)
    }
}

impl Iterator for IntersectionClosedMasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let (mut pos, mut family) = self.stack.pop()?;
        while pos < self.size {
            if Self::compatible(pos, family) {
                if !self.forced(pos) {
                    self.stack.push((pos + 1, family));
                }
                family |= 1 << pos;
            } else {
                debug_assert!(!self.forced(pos), "forced members are always compatible");
            }
            pos += 1;
        }
        Some(family)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SearchCoverage {
    Exhaustive,
    /// Random generator sets closed under intersection; not exhaustive.
    Sampled {
        samples: u64,
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub require_empty: bool,
    pub require_ground: bool,
    /// `Some((samples, seed))` switches to sampling.
    pub sampling: Option<(u64, u64)>,
}

impl SearchOptions {
    pub fn exhaustive(require_empty: bool, require_ground: bool) -> Self {
        SearchOptions { require_empty, require_ground, sampling: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub n: usize,
    pub coverage: SearchCoverage,
    /// Distinct intersection-closed families examined.
    pub families_visited: u64,
    pub nds_max: Option<i64>,
    /// Families with `NDS > 0`, in canonical order.
    pub violations: Vec<SetFamily>,
}

/// Finds intersection-closed families whose normalized degree sum is positive.
pub fn search_intersection_closed_violations(n: usize, opts: SearchOptions) -> Result<SearchReport, EnumerateError> {
    check_range(n, 1, MAX_SEARCH_N)?;
    let cube = Cube::new(n);
    let mut visited = 0u64;
    let mut nds_max = None;
    let mut found = BTreeSet::new();
    let mut visit = |family: u64| {
        visited += 1;
        let nds = cube.nds(family);
        nds_max = nds_max.max(Some(nds));
        if nds > 0 {
            found.insert(family);
        }
    };

    let coverage = match opts.sampling {
        None => {
            IntersectionClosedMasks::new(n, opts.require_empty, opts.require_ground).for_each(&mut visit);
            SearchCoverage::Exhaustive
        }
        Some((samples, seed)) => {
            let mut seen = BTreeSet::new();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let family = sample_closed(&cube, &mut rng, opts.require_empty, opts.require_ground);
                if seen.insert(family) {
                    visit(family);
                }
            }
            SearchCoverage::Sampled { samples, seed }
        }
    };

    // family masks order by their smallest differing subset, which is not the
    // edge-list order; sort the converted families instead
    let mut violations: Vec<SetFamily> = found.into_iter().map(|f| cube.to_family(f)).collect();
    violations.sort_by(|a, b| a.edges().cmp(b.edges()));
    Ok(SearchReport { n, coverage, families_visited: visited, nds_max, violations })
}

/// Closes a random set of generators under intersection.
fn sample_closed(cube: &Cube, rng: &mut ChaCha8Rng, require_empty: bool, require_ground: bool) -> u64 {
    let k = rng.random_range(1..=cube.n + 2);
    let mut family = 0u64;
    for _ in 0..k {
        family |= 1 << rng.random_range(0..cube.size);
    }
    if require_empty {
        family |= 1;
    }
    if require_ground {
        family |= cube.ground_bit();
    }
    loop {
        let mut grown = family;
        for a in bits(family) {
            for b in bits(family) {
                grown |= 1 << (a & b);
            }
        }
        if grown == family {
            return family;
        }
        family = grown;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: usize,
    pub families_checked: u64,
    /// Families with no rare vertex.
    pub failures: Vec<SetFamily>,
}

/// Checks every intersection-closed family containing `∅` and `U` on an
/// `n`-element ground set for a rare vertex.
pub fn verify_rare_vertex_conjecture(n: usize) -> Result<ConjectureReport, EnumerateError> {
    check_range(n, 1, MAX_CONJECTURE_N)?;
    let cube = Cube::new(n);
    let mut checked = 0;
    let mut failures = Vec::new();
    for family in IntersectionClosedMasks::new(n, true, true) {
        checked += 1;
        if !cube.has_rare_vertex(family) {
            failures.push(cube.to_family(family));
        }
    }
    Ok(ConjectureReport { n, families_checked: checked, failures })
}
