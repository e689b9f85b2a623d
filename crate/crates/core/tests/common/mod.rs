//! Brute-force oracles shared by the integration tests. Nothing here calls into
//! the library's enumeration code; families are plain masks over the subsets
//! of `{0, .., n-1}` (bit `s` set means subset `s` is a member).

#![allow(dead_code)]

use ideal_families::SetFamily;

pub fn members(family: u64, n: usize) -> Vec<u32> {
    (0..1u32 << n).filter(|&s| family >> s & 1 == 1).collect()
}

/// Literal reading of the ideal axioms: `∅`, `U`, and every subset of every
/// non-ground member is a member.
pub fn is_ideal_mask(family: u64, n: usize) -> bool {
    let ground = (1u32 << n) - 1;
    let sets = members(family, n);
    if family & 1 == 0 || family >> ground & 1 == 0 {
        return false;
    }
    sets.iter().filter(|&&b| b != ground).all(|&b| (0..=ground).filter(|&a| a & b == a).all(|a| family >> a & 1 == 1))
}

pub fn is_downward_closed_mask(family: u64, n: usize) -> bool {
    members(family, n).iter().all(|&b| (0..1u32 << n).filter(|&a| a & b == a).all(|a| family >> a & 1 == 1))
}

pub fn is_intersection_closed_mask(family: u64, n: usize) -> bool {
    let sets = members(family, n);
    sets.iter().all(|&a| sets.iter().all(|&b| family >> (a & b) & 1 == 1))
}

/// Every family on `n ≤ 4` vertices satisfying `keep`.
pub fn all_masks(n: usize, keep: impl Fn(u64) -> bool) -> Vec<u64> {
    assert!(n <= 4, "2^(2^n) masks");
    let count = 1u64 << (1u32 << n);
    (0..count).filter(|&f| keep(f)).collect()
}

pub fn ideal_masks(n: usize) -> Vec<u64> {
    all_masks(n, |f| is_ideal_mask(f, n))
}

/// Intersection-closed families containing `∅` and `U`.
pub fn closure_systems(n: usize) -> Vec<u64> {
    let ground = (1u32 << n) - 1;
    all_masks(n, |f| f & 1 == 1 && f >> ground & 1 == 1 && is_intersection_closed_mask(f, n))
}

pub fn degree(family: u64, n: usize, v: usize) -> i64 {
    members(family, n).iter().filter(|&&s| s >> v & 1 == 1).count() as i64
}

/// `2 Σ|H| − n|F|`, counted set by set.
pub fn nds(family: u64, n: usize) -> i64 {
    let sets = members(family, n);
    let tsh: i64 = sets.iter().map(|s| s.count_ones() as i64).sum();
    2 * tsh - (n * sets.len()) as i64
}

pub fn has_rare_vertex(family: u64, n: usize) -> bool {
    let size = family.count_ones() as i64;
    (0..n).any(|v| 2 * degree(family, n, v) <= size)
}

/// Number of classes of `masks` under relabeling, found by applying every
/// permutation (generated recursively) to every family.
pub fn iso_classes(masks: &[u64], n: usize) -> usize {
    let mut perms = Vec::new();
    permute(&mut (0..n).collect(), 0, &mut perms);
    let image = |family: u64, perm: &[usize]| {
        members(family, n).iter().fold(0u64, |acc, &s| {
            let t = (0..n).filter(|&j| s >> j & 1 == 1).fold(0u32, |t, j| t | 1 << perm[j]);
            acc | 1 << t
        })
    };
    let forms: std::collections::BTreeSet<u64> =
        masks.iter().map(|&f| perms.iter().map(|p| image(f, p)).min().unwrap()).collect();
    forms.len()
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Mask of a family whose ground set is `{0, .., n-1}`.
pub fn mask_of(family: &SetFamily) -> u64 {
    family.edges().iter().fold(0u64, |acc, e| acc | 1 << e.bits())
}
