//! Exhaustive generation of ideal families and verification campaigns over them.
//!
//! Ideal families on an `n`-set correspond one-to-one with downward-closed
//! families `D` of the n-cube with `∅ ∈ D` and `U ∉ D`, via `F = D ∪ {U}`.
//! Two independent generators realize that correspondence: incremental growth
//! of downsets ([`enumerate_ideal_families`]) and closure of antichains
//! ([`enumerate_ideal_families_by_antichains`]).

mod closed;
mod downset;
mod iso;
mod random;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::family::SetFamily;
use crate::ideal::{rare_vertex_certificate, IdealFamily};
use crate::minors::check_decomposition_identities;
use crate::replay::replay_induction;

pub use closed::{
    search_intersection_closed_violations, verify_rare_vertex_conjecture, ConjectureReport, SearchCoverage,
    SearchOptions, SearchReport, MAX_CONJECTURE_N, MAX_SEARCH_N,
};
pub use random::{ideal_from_antichain, random_ideal_family, random_set_family};

use downset::{AntichainClosures, Cube, DownsetGrowth};
use iso::Relabelings;

/// Largest ground set the exhaustive enumerators accept.
pub const MAX_ENUMERATION_N: usize = downset::MAX_CUBE_DIM;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("n = {n} is outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },
}

pub(crate) fn check_range(n: usize, min: usize, max: usize) -> Result<(), EnumerateError> {
    if (min..=max).contains(&n) {
        Ok(())
    } else {
        Err(EnumerateError::OutOfRange { n, min, max })
    }
}

/// Every ideal family on `{0, .., n-1}`, each exactly once, in a fixed order.
pub fn enumerate_ideal_families(n: usize) -> Result<impl Iterator<Item = IdealFamily>, EnumerateError> {
    check_range(n, 1, MAX_ENUMERATION_N)?;
    let growth = DownsetGrowth::proper_nonempty(n);
    let cube = growth.cube().clone();
    Ok(growth.map(move |d| cube.to_ideal(d | cube.ground_bit())))
}

/// The same families as [`enumerate_ideal_families`], generated from the
/// antichain of maximal non-ground edges instead. The order differs.
pub fn enumerate_ideal_families_by_antichains(n: usize) -> Result<impl Iterator<Item = IdealFamily>, EnumerateError> {
    check_range(n, 1, MAX_ENUMERATION_N)?;
    let cube = Cube::new(n);
    Ok(AntichainClosures::proper_nonempty(n).map(move |d| cube.to_ideal(d | cube.ground_bit())))
}

/// Number of downward-closed subfamilies of the n-cube, the empty family
/// included.
pub fn count_downward_closed(n: usize) -> Result<u64, EnumerateError> {
    check_range(n, 1, MAX_ENUMERATION_N)?;
    Ok(DownsetGrowth::all(n).count() as u64)
}

pub fn count_ideal_families(n: usize) -> Result<u64, EnumerateError> {
    check_range(n, 1, MAX_ENUMERATION_N)?;
    Ok(DownsetGrowth::proper_nonempty(n).count() as u64)
}

/// Count plus an order-independent fingerprint of the family masks produced by
/// each generator, for cross-checking them where sorting the full lists would
/// be wasteful.
pub fn generator_fingerprints(n: usize) -> Result<[(u64, u64); 2], EnumerateError> {
    check_range(n, 1, MAX_ENUMERATION_N)?;
    let fold = |it: &mut dyn Iterator<Item = u64>| {
        it.fold((0u64, 0u64), |(count, acc), mask| (count + 1, acc.wrapping_add(mix(mask))))
    };
    Ok([fold(&mut DownsetGrowth::proper_nonempty(n)), fold(&mut AntichainClosures::proper_nonempty(n))])
}

/// splitmix64 finalizer
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Number of ideal families on `n` vertices up to relabeling of the vertices.
pub fn count_ideal_families_up_to_iso(n: usize) -> Result<u64, EnumerateError> {
    check_range(n, 1, MAX_ENUMERATION_N)?;
    let relabel = Relabelings::new(n);
    let forms: HashSet<u64> = DownsetGrowth::proper_nonempty(n).map(|d| relabel.canonical(d)).collect();
    Ok(forms.len() as u64)
}

/// Which per-family checks a campaign runs. The normalized degree sum is
/// always evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Build and re-check the rare-vertex injection.
    pub injection: bool,
    /// Check the decomposition identities at every vertex and replay the
    /// induction.
    pub identities: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub n: usize,
    pub families_visited: u64,
    pub nds_max: Option<i64>,
    /// Families with `NDS > 0`.
    pub violations: u64,
    pub injection_failures: u64,
    pub identity_failures: u64,
    pub wall_time: Duration,
    /// The first failing family met, with the reason.
    pub first_failure: Option<(SetFamily, String)>,
}

impl EnumerationStats {
    fn new(n: usize) -> Self {
        EnumerationStats { n, ..Default::default() }
    }

    /// Combines the stats of two disjoint runs; `self` is taken to come first.
    pub fn merge(self, other: EnumerationStats) -> EnumerationStats {
        EnumerationStats {
            n: self.n.max(other.n),
            families_visited: self.families_visited + other.families_visited,
            nds_max: self.nds_max.max(other.nds_max),
            violations: self.violations + other.violations,
            injection_failures: self.injection_failures + other.injection_failures,
            identity_failures: self.identity_failures + other.identity_failures,
            wall_time: self.wall_time.max(other.wall_time),
            first_failure: self.first_failure.or(other.first_failure),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations == 0 && self.injection_failures == 0 && self.identity_failures == 0
    }

    fn fail(&mut self, cube: &Cube, mask: u64, why: impl FnOnce() -> String) {
        if self.first_failure.is_none() {
            self.first_failure = Some((cube.to_family(mask), why()));
        }
    }

    fn check(&mut self, cube: &Cube, mask: u64, opts: VerifyOptions) {
        self.families_visited += 1;
        let nds = cube.nds(mask);
        self.nds_max = self.nds_max.max(Some(nds));
        if nds > 0 {
            self.violations += 1;
            self.fail(cube, mask, || format!("NDS = {nds} > 0"));
        }
        if !(opts.injection || opts.identities) {
            return;
        }
        let family = match IdealFamily::new(cube.to_family(mask)) {
            Ok(f) => f,
            Err(e) => {
                self.identity_failures += 1;
                self.fail(cube, mask, || format!("enumerated family is not ideal: {e}"));
                return;
            }
        };
        if opts.injection {
            if let Err(e) = rare_vertex_certificate(&family).verify(&family) {
                self.injection_failures += 1;
                self.fail(cube, mask, || format!("rare-vertex certificate: {e}"));
            }
        }
        if opts.identities {
            if let Err(why) = check_identities(&family) {
                self.identity_failures += 1;
                self.fail(cube, mask, || why);
            }
        }
    }
}

fn check_identities(family: &IdealFamily) -> Result<(), String> {
    if family.num_vertices() >= 2 {
        for v in family.vertices() {
            let report = check_decomposition_identities(family, v).map_err(|e| e.to_string())?;
            if let Some(c) = report.first_failure() {
                return Err(format!("identity {} fails at vertex {v}: {} != {}", c.name, c.lhs, c.rhs));
            }
        }
    }
    let cert = replay_induction(family).map_err(|e| e.to_string())?;
    cert.verify().map_err(|e| e.to_string())
}

/// Visits every ideal family on `n` vertices, checking `NDS ≤ 0` and whatever
/// `opts` selects.
pub fn verify_ideal_families(n: usize, opts: VerifyOptions) -> Result<EnumerationStats, EnumerateError> {
    verify_ideal_families_with_progress(n, opts, &|_, _| {})
}

/// As [`verify_ideal_families`], splitting the search tree into subtrees that
/// run on the rayon pool. `progress(done, total)` is called as subtrees finish.
pub fn verify_ideal_families_with_progress(
    n: usize,
    opts: VerifyOptions,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> Result<EnumerationStats, EnumerateError> {
    check_range(n, 1, MAX_ENUMERATION_N)?;
    let start = Instant::now();
    let growth = DownsetGrowth::proper_nonempty(n);
    let cube = growth.cube().clone();
    let subtrees = growth.split(64 * rayon::current_num_threads());
    let total = subtrees.len();
    let done = std::sync::atomic::AtomicUsize::new(0);

    let stats = subtrees
        .into_par_iter()
        .map(|subtree| {
            let mut stats = EnumerationStats::new(n);
            for d in subtree {
                stats.check(&cube, d | cube.ground_bit(), opts);
            }
            let finished = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
            progress(finished, total);
            stats
        })
        .reduce(|| EnumerationStats::new(n), EnumerationStats::merge);
    Ok(EnumerationStats { wall_time: start.elapsed(), ..stats })
}
