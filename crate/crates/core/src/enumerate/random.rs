//! Seeded random families for property tests.
//!
//! All sampling runs on ChaCha8 seeded from a 64-bit value, so a given
//! `(n, seed)` always produces the same family.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::{FamilyError, Hyperedge, SetFamily, UNIVERSE_WIDTH};
use crate::ideal::IdealFamily;

fn rng_for(n: usize, seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    rng
}

fn check_width(n: usize) -> Result<Hyperedge, FamilyError> {
    if n == 0 {
        return Err(FamilyError::EmptyGround);
    }
    if n > UNIVERSE_WIDTH {
        return Err(FamilyError::VertexOutOfRange(n - 1));
    }
    Hyperedge::prefix(n)
}

/// A uniformly sized random subset of `{0, .., n-1}` with at most `max_len`
/// members.
fn random_subset(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Hyperedge {
    let len = rng.random_range(0..=max_len);
    index::sample(rng, n, len)
        .into_iter()
        .fold(Hyperedge::EMPTY, |acc, j| acc.union(Hyperedge::from_bits_unchecked(1 << j)))
}

/// The ideal family generated by `antichain`: every subset of every member,
/// plus `∅` and `U`. Members must be proper subsets of `ground`; they need not
/// actually be pairwise incomparable.
pub fn ideal_from_antichain(ground: Hyperedge, antichain: &[Hyperedge]) -> Result<IdealFamily, FamilyError> {
    if ground.is_empty() {
        return Err(FamilyError::EmptyGround);
    }
    let mut edges = vec![Hyperedge::EMPTY, ground];
    for &top in antichain {
        if !top.is_subset_of(ground) || top == ground {
            return Err(FamilyError::EdgeOutsideGround { edge: top, ground });
        }
        let t = top.bits();
        let mut sub = t;
        loop {
            edges.push(Hyperedge::from_bits_unchecked(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & t;
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(IdealFamily::new_unchecked(SetFamily::from_sorted_unchecked(ground, edges)))
}

/// A random ideal family on `{0, .., n-1}`: `k ~ U[1, n]` distinct proper
/// subsets are drawn (each with a uniformly chosen size), the dominated ones
/// are dropped, and the downward closure is taken.
pub fn random_ideal_family(n: usize, seed: u64) -> Result<IdealFamily, FamilyError> {
    let ground = check_width(n)?;
    let mut rng = rng_for(n, seed);
    let k = rng.random_range(1..=n);
    let distinct = (1usize << n) - 1;
    let mut picked: Vec<Hyperedge> = Vec::with_capacity(k);
    while picked.len() < k.min(distinct) {
        let s = random_subset(&mut rng, n, n - 1);
        if !picked.contains(&s) {
            picked.push(s);
        }
    }
    let antichain: Vec<Hyperedge> =
        picked.iter().copied().filter(|&a| !picked.iter().any(|&b| a != b && a.is_subset_of(b))).collect();
    ideal_from_antichain(ground, &antichain)
}

/// A random family on `{0, .., n-1}` with no structure: up to `2n` random
/// subsets of any size.
pub fn random_set_family(n: usize, seed: u64) -> Result<SetFamily, FamilyError> {
    let ground = check_width(n)?;
    let mut rng = rng_for(n, seed ^ 0x9e37_79b9_7f4a_7c15);
    let k = rng.random_range(0..=2 * n);
    let edges: Vec<Hyperedge> = (0..k).map(|_| random_subset(&mut rng, n, n)).collect();
    SetFamily::from_edge_set(ground, edges)
}
