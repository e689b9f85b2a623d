//! Vertices, hyperedges and set families over a fixed-width universe.
//!
//! A [`Hyperedge`] is a bit vector of width [`UNIVERSE_WIDTH`]; bit `j` is set
//! when vertex `j` is a member. A [`SetFamily`] pairs a labeled ground set with a
//! duplicate-free list of hyperedges kept in ascending bit-vector order. Minors
//! keep their parent's labels and only shrink the ground mask, so a family's
//! ground set need not be `{0, .., k-1}`.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, SerializeStruct, Serializer};
use thiserror::Error;

/// Number of vertex labels a hyperedge can carry.
pub const UNIVERSE_WIDTH: usize = 20;

const UNIVERSE_MASK: u32 = (1 << UNIVERSE_WIDTH) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("vertex index {0} is outside the universe of width {UNIVERSE_WIDTH}")]
    VertexOutOfRange(usize),
    #[error("hyperedge bits {0:#x} do not fit in the universe of width {UNIVERSE_WIDTH}")]
    EdgeOutOfRange(u32),
    #[error("the ground set must be nonempty")]
    EmptyGround,
    #[error("hyperedge {edge} is not a subset of the ground set {ground}")]
    EdgeOutsideGround { edge: Hyperedge, ground: Hyperedge },
    #[error("hyperedge {0} appears more than once")]
    DuplicateEdge(Hyperedge),
    #[error("vertex {vertex} is not in the ground set {ground}")]
    VertexOutsideGround { vertex: Vertex, ground: Hyperedge },
}

/// A vertex label in `[0, UNIVERSE_WIDTH)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(u8);

impl Vertex {
    pub fn new(index: usize) -> Result<Self, FamilyError> {
        if index < UNIVERSE_WIDTH {
            Ok(Vertex(index as u8))
        } else {
            Err(FamilyError::VertexOutOfRange(index))
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    fn bit(self) -> u32 {
        1 << self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of the universe, stored as a bit vector.
///
/// The derived ordering compares the raw bit values, which is the canonical
/// edge order used throughout the crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Hyperedge(u32);

impl Hyperedge {
    pub const EMPTY: Hyperedge = Hyperedge(0);

    pub fn from_bits(bits: u32) -> Result<Self, FamilyError> {
        if bits & !UNIVERSE_MASK == 0 {
            Ok(Hyperedge(bits))
        } else {
            Err(FamilyError::EdgeOutOfRange(bits))
        }
    }

    /// The set `{0, 1, .., n-1}`.
    pub fn prefix(n: usize) -> Result<Self, FamilyError> {
        if n > UNIVERSE_WIDTH {
            return Err(FamilyError::VertexOutOfRange(n - 1));
        }
        Ok(Hyperedge(((1u64 << n) - 1) as u32))
    }

    pub fn singleton(v: Vertex) -> Self {
        Hyperedge(v.bit())
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        Hyperedge(vertices.into_iter().fold(0, |acc, v| acc | v.bit()))
    }

    /// Builds a hyperedge from raw indices, panicking on an out-of-range index.
    /// Meant for literals in tests and examples.
    pub fn of(indices: &[usize]) -> Self {
        Hyperedge::from_vertices(indices.iter().map(|&i| Vertex::new(i).expect("vertex index out of range")))
    }

    #[inline]
    pub(crate) const fn from_bits_unchecked(bits: u32) -> Self {
        Hyperedge(bits)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: Vertex) -> bool {
        self.0 & v.bit() != 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Hyperedge) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersection(self, other: Hyperedge) -> Hyperedge {
        Hyperedge(self.0 & other.0)
    }

    #[inline]
    pub fn union(self, other: Hyperedge) -> Hyperedge {
        Hyperedge(self.0 | other.0)
    }

    #[inline]
    pub fn difference(self, other: Hyperedge) -> Hyperedge {
        Hyperedge(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, v: Vertex) -> Hyperedge {
        Hyperedge(self.0 | v.bit())
    }

    #[inline]
    pub fn without(self, v: Vertex) -> Hyperedge {
        Hyperedge(self.0 & !v.bit())
    }

    /// Members in ascending label order.
    pub fn vertices(self) -> impl Iterator<Item = Vertex> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            Some(Vertex(v))
        })
    }
}

impl fmt::Display for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.0)
    }
}

/// Serialized as the ascending list of member labels.
impl Serialize for Hyperedge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for v in self.vertices() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// A labeled ground set together with a canonically ordered, duplicate-free
/// collection of hyperedges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: Hyperedge,
    edges: Vec<Hyperedge>,
}

impl SetFamily {
    /// Builds a family, rejecting duplicate hyperedges.
    pub fn new<I>(ground: Hyperedge, edges: I) -> Result<Self, FamilyError>
    where
        I: IntoIterator<Item = Hyperedge>,
    {
        let mut edges: Vec<Hyperedge> = edges.into_iter().collect();
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(FamilyError::DuplicateEdge(w[0]));
        }
        Self::checked(ground, edges)
    }

    /// Builds a family with set semantics: repeated hyperedges collapse.
    pub fn from_edge_set<I>(ground: Hyperedge, edges: I) -> Result<Self, FamilyError>
    where
        I: IntoIterator<Item = Hyperedge>,
    {
        let mut edges: Vec<Hyperedge> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        Self::checked(ground, edges)
    }

    /// Family on the ground set `{0, .., n-1}`.
    pub fn on_prefix<I>(n: usize, edges: I) -> Result<Self, FamilyError>
    where
        I: IntoIterator<Item = Hyperedge>,
    {
        Self::new(Hyperedge::prefix(n)?, edges)
    }

    /// Every subset of `ground`.
    pub fn power_set(ground: Hyperedge) -> Result<Self, FamilyError> {
        if ground.is_empty() {
            return Err(FamilyError::EmptyGround);
        }
        let mut edges = Vec::with_capacity(1 << ground.len());
        let g = ground.bits();
        let mut sub = 0u32;
        loop {
            edges.push(Hyperedge(sub));
            if sub == g {
                break;
            }
            sub = (sub.wrapping_sub(g)) & g;
        }
        edges.sort_unstable();
        Ok(SetFamily { ground, edges })
    }

    fn checked(ground: Hyperedge, edges: Vec<Hyperedge>) -> Result<Self, FamilyError> {
        if ground.is_empty() {
            return Err(FamilyError::EmptyGround);
        }
        if let Some(&edge) = edges.iter().find(|e| !e.is_subset_of(ground)) {
            return Err(FamilyError::EdgeOutsideGround { edge, ground });
        }
        Ok(SetFamily { ground, edges })
    }

    /// Caller guarantees: ground nonempty, edges sorted, distinct, inside ground.
    pub(crate) fn from_sorted_unchecked(ground: Hyperedge, edges: Vec<Hyperedge>) -> Self {
        debug_assert!(!ground.is_empty());
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.is_subset_of(ground)));
        SetFamily { ground, edges }
    }

    #[inline]
    pub fn ground(&self) -> Hyperedge {
        self.ground
    }

    #[inline]
    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        self.ground.vertices()
    }

    /// `|U|`.
    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.ground.len()
    }

    /// `|F|`.
    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn contains(&self, edge: Hyperedge) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), FamilyError> {
        if self.ground.contains(v) {
            Ok(())
        } else {
            Err(FamilyError::VertexOutsideGround { vertex: v, ground: self.ground })
        }
    }

    /// Number of hyperedges containing `v`.
    pub fn degree(&self, v: Vertex) -> Result<u64, FamilyError> {
        self.check_vertex(v)?;
        Ok(self.degree_unchecked(v))
    }

    pub(crate) fn degree_unchecked(&self, v: Vertex) -> u64 {
        let bit = v.index();
        self.edges.iter().map(|e| u64::from((e.0 >> bit) & 1)).sum()
    }

    /// Degrees of all ground vertices in ascending label order.
    pub fn degrees(&self) -> Vec<(Vertex, u64)> {
        self.vertices().map(|v| (v, self.degree_unchecked(v))).collect()
    }

    /// Total size of the hyperedges.
    pub fn tsh(&self) -> u64 {
        self.edges.iter().map(|e| u64::from(e.0.count_ones())).sum()
    }

    /// Normalized degree sum `2·TSH − |U|·|F|`.
    pub fn nds(&self) -> i64 {
        2 * self.tsh() as i64 - (self.num_vertices() * self.num_edges()) as i64
    }

    /// `2·deg(v) − |F| ≤ 0`.
    pub fn is_rare(&self, v: Vertex) -> Result<bool, FamilyError> {
        let deg = self.degree(v)?;
        Ok(2 * deg as i64 - self.num_edges() as i64 <= 0)
    }

    pub fn rare_vertices(&self) -> Vec<Vertex> {
        let m = self.num_edges() as i64;
        self.vertices().filter(|&v| 2 * self.degree_unchecked(v) as i64 - m <= 0).collect()
    }

    pub fn is_average_rare(&self) -> bool {
        self.nds() <= 0
    }

    /// First pair `(A, B)` in canonical order with `A ∩ B` missing, if any.
    pub fn intersection_witness(&self) -> Option<(Hyperedge, Hyperedge)> {
        for (i, &a) in self.edges.iter().enumerate() {
            for &b in &self.edges[i + 1..] {
                if !self.contains(a.intersection(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_intersection_closed(&self) -> bool {
        self.intersection_witness().is_none()
    }

    /// Smallest intersection-closed family containing every hyperedge of `self`,
    /// on the same ground set.
    pub fn intersection_closure(&self) -> SetFamily {
        let mut closed: BTreeSet<Hyperedge> = self.edges.iter().copied().collect();
        let mut pending: Vec<Hyperedge> = self.edges.clone();
        while let Some(x) = pending.pop() {
            let fresh: Vec<Hyperedge> =
                closed.iter().map(|&y| x.intersection(y)).filter(|z| !closed.contains(z)).collect();
            for z in fresh {
                if closed.insert(z) {
                    pending.push(z);
                }
            }
        }
        SetFamily::from_sorted_unchecked(self.ground, closed.into_iter().collect())
    }
}

impl Serialize for SetFamily {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SetFamily", 2)?;
        st.serialize_field("ground", &self.ground)?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}} on {}", self.ground)
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
