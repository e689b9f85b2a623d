//! Single-vertex minors: deletion, ideal deletion, contraction and trace.
//!
//! Every minor lives on `U ∖ {v}` and keeps the parent's vertex labels, so the
//! quantities of a parent and its minors can be compared label for label.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{FamilyError, Hyperedge, SetFamily, Vertex};
use crate::ideal::{IdealFamily, IdealViolation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MinorKind {
    Deletion,
    IdealDeletion,
    Contraction,
    Trace,
}

impl MinorKind {
    pub fn short_name(self) -> &'static str {
        match self {
            MinorKind::Deletion => "del",
            MinorKind::IdealDeletion => "delp",
            MinorKind::Contraction => "con",
            MinorKind::Trace => "trace",
        }
    }
}

impl fmt::Display for MinorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for MinorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "del" => Ok(MinorKind::Deletion),
            "delp" => Ok(MinorKind::IdealDeletion),
            "con" => Ok(MinorKind::Contraction),
            "trace" => Ok(MinorKind::Trace),
            other => Err(format!("unknown minor {other:?}, expected del, delp, con or trace")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinorError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("minors need a ground set of at least two vertices, found {0}")]
    GroundTooSmall(usize),
    #[error("vertex {0} has degree zero, so the contraction has no hyperedges")]
    ZeroDegree(Vertex),
    #[error("{{{0}}} is not a hyperedge, so the contraction need not be ideal")]
    SingletonMissing(Vertex),
    #[error("the {kind} minor needs an ideal family: {violation}")]
    NeedsIdeal { kind: MinorKind, violation: IdealViolation },
    #[error("the {kind} minor by {vertex} is not ideal: {violation}")]
    NotIdeal { kind: MinorKind, vertex: Vertex, violation: IdealViolation },
    #[error("degree-one characterization fails at {vertex}: {{v}} present = {singleton}, degree = {degree}")]
    DegreeOneMismatch { vertex: Vertex, singleton: bool, degree: u64 },
}

/// Checks the shared preconditions and returns `U ∖ {v}`.
fn minor_ground(family: &SetFamily, v: Vertex) -> Result<Hyperedge, MinorError> {
    family.check_vertex(v)?;
    if family.num_vertices() < 2 {
        return Err(MinorError::GroundTooSmall(family.num_vertices()));
    }
    Ok(family.ground().without(v))
}

fn into_ideal(kind: MinorKind, vertex: Vertex, family: SetFamily) -> Result<IdealFamily, MinorError> {
    IdealFamily::new(family).map_err(|violation| MinorError::NotIdeal { kind, vertex, violation })
}

/// `{H ∈ F : v ∉ H}` on `U ∖ {v}`.
pub fn deletion(family: &SetFamily, v: Vertex) -> Result<SetFamily, MinorError> {
    let ground = minor_ground(family, v)?;
    let edges = family.edges().iter().copied().filter(|h| !h.contains(v)).collect();
    Ok(SetFamily::from_sorted_unchecked(ground, edges))
}

/// Deletion with `U ∖ {v}` adjoined, which keeps an ideal family ideal.
pub fn ideal_deletion(family: &IdealFamily, v: Vertex) -> Result<IdealFamily, MinorError> {
    let deleted = deletion(family, v)?;
    let ground = deleted.ground();
    let mut edges = deleted.edges().to_vec();
    // U ∖ {v} is the largest value any edge of the deletion can take.
    if edges.last() != Some(&ground) {
        edges.push(ground);
    }
    into_ideal(MinorKind::IdealDeletion, v, SetFamily::from_sorted_unchecked(ground, edges))
}

/// `{H ∖ {v} : v ∈ H ∈ F}` on `U ∖ {v}`.
pub fn contraction(family: &SetFamily, v: Vertex) -> Result<SetFamily, MinorError> {
    let ground = minor_ground(family, v)?;
    // Clearing a bit that every source has set keeps the sources' order.
    let edges: Vec<Hyperedge> = family.edges().iter().filter(|h| h.contains(v)).map(|h| h.without(v)).collect();
    if edges.is_empty() {
        return Err(MinorError::ZeroDegree(v));
    }
    Ok(SetFamily::from_sorted_unchecked(ground, edges))
}

/// Contraction of an ideal family; requires `{v} ∈ F`.
pub fn contraction_ideal(family: &IdealFamily, v: Vertex) -> Result<IdealFamily, MinorError> {
    minor_ground(family, v)?;
    if !family.contains(Hyperedge::singleton(v)) {
        return Err(MinorError::SingletonMissing(v));
    }
    into_ideal(MinorKind::Contraction, v, contraction(family, v)?)
}

/// `{H ∖ {v} : H ∈ F}` on `U ∖ {v}`, as a set.
pub fn trace(family: &SetFamily, v: Vertex) -> Result<SetFamily, MinorError> {
    let ground = minor_ground(family, v)?;
    let (with_v, without_v): (Vec<Hyperedge>, Vec<Hyperedge>) =
        family.edges().iter().copied().partition(|h| h.contains(v));
    let stripped = with_v.into_iter().map(|h| h.without(v));

    // merge two ascending runs, dropping collisions
    let mut edges = Vec::with_capacity(family.num_edges());
    let mut left = without_v.into_iter().peekable();
    let mut right = stripped.peekable();
    loop {
        let next = match (left.peek(), right.peek()) {
            (Some(&a), Some(&b)) if a == b => {
                left.next();
                right.next()
            }
            (Some(&a), Some(&b)) if a < b => left.next(),
            (Some(_), Some(_)) => right.next(),
            (Some(_), None) => left.next(),
            (None, Some(_)) => right.next(),
            (None, None) => break,
        };
        edges.extend(next);
    }
    Ok(SetFamily::from_sorted_unchecked(ground, edges))
}

pub fn trace_ideal(family: &IdealFamily, v: Vertex) -> Result<IdealFamily, MinorError> {
    into_ideal(MinorKind::Trace, v, trace(family, v)?)
}

/// Applies `kind` to an arbitrary family. The ideal deletion needs `family` to
/// be ideal.
pub fn apply_minor(kind: MinorKind, family: &SetFamily, v: Vertex) -> Result<SetFamily, MinorError> {
    match kind {
        MinorKind::Deletion => deletion(family, v),
        MinorKind::IdealDeletion => {
            let ideal =
                IdealFamily::new(family.clone()).map_err(|violation| MinorError::NeedsIdeal { kind, violation })?;
            Ok(ideal_deletion(&ideal, v)?.into_family())
        }
        MinorKind::Contraction => contraction(family, v),
        MinorKind::Trace => trace(family, v),
    }
}

/// Returns whether `{v}` is a hyperedge, after confirming that this happens
/// exactly when `deg(v) ≠ 1`.
pub fn degree_one_characterization(family: &IdealFamily, v: Vertex) -> Result<bool, MinorError> {
    minor_ground(family, v)?;
    let singleton = family.contains(Hyperedge::singleton(v));
    let degree = family.degree(v)?;
    if singleton == (degree == 1) {
        return Err(MinorError::DegreeOneMismatch { vertex: v, singleton, degree });
    }
    Ok(singleton)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinorSummary {
    pub num_edges: usize,
    pub tsh: u64,
    pub nds: i64,
}

impl MinorSummary {
    fn of(family: &SetFamily) -> Self {
        MinorSummary { num_edges: family.num_edges(), tsh: family.tsh(), nds: family.nds() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(name: &'static str, lhs: i64, rhs: i64) -> Self {
        IdentityCheck { name, lhs, rhs, holds: lhs == rhs }
    }
}

/// Parent quantities, minor quantities, and the exact identities linking them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub vertex: Vertex,
    pub n: usize,
    pub num_edges: usize,
    pub tsh: u64,
    pub degree: u64,
    pub ground_minus_vertex_present: bool,
    pub contraction: MinorSummary,
    pub deletion: MinorSummary,
    pub ideal_deletion: MinorSummary,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.holds)
    }
}

/// Computes the contraction, deletion and ideal deletion of `family` by `v` and
/// evaluates the counting identities between them. A failing check names the
/// identity in the returned report.
pub fn check_decomposition_identities(family: &IdealFamily, v: Vertex) -> Result<IdentityReport, MinorError> {
    let con = contraction(family, v)?;
    let del = deletion(family, v)?;
    let delp = ideal_deletion(family, v)?;
    let n = family.num_vertices() as i64;
    let degree = family.degree(v)?;
    let uv_present = family.contains(family.ground().without(v));

    let (con_s, del_s, delp_s) = (MinorSummary::of(&con), MinorSummary::of(&del), MinorSummary::of(&delp));
    let mut checks = vec![
        IdentityCheck::new(
            "|F| = |con| + |del|",
            family.num_edges() as i64,
            (con_s.num_edges + del_s.num_edges) as i64,
        ),
        IdentityCheck::new(
            "TSH(F) = TSH(con) + TSH(del) + deg(v)",
            family.tsh() as i64,
            (con_s.tsh + del_s.tsh + degree) as i64,
        ),
    ];
    if uv_present {
        checks.extend([
            IdentityCheck::new("|del| = |delp|", del_s.num_edges as i64, delp_s.num_edges as i64),
            IdentityCheck::new("TSH(del) = TSH(delp)", del_s.tsh as i64, delp_s.tsh as i64),
            IdentityCheck::new("NDS(del) = NDS(delp)", del_s.nds, delp_s.nds),
        ]);
    } else {
        checks.extend([
            IdentityCheck::new("|del| = |delp| - 1", del_s.num_edges as i64, delp_s.num_edges as i64 - 1),
            IdentityCheck::new("TSH(del) = TSH(delp) - (n - 1)", del_s.tsh as i64, delp_s.tsh as i64 - (n - 1)),
            IdentityCheck::new("NDS(del) = NDS(delp) - n + 1", del_s.nds, delp_s.nds - n + 1),
        ]);
    }

    Ok(IdentityReport {
        vertex: v,
        n: family.num_vertices(),
        num_edges: family.num_edges(),
        tsh: family.tsh(),
        degree,
        ground_minus_vertex_present: uv_present,
        contraction: con_s,
        deletion: del_s,
        ideal_deletion: delp_s,
        checks,
    })
}
