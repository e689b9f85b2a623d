//! Executable replay of the induction showing `NDS(F) ≤ 0` for ideal families.
//!
//! At every node the deterministic rare vertex `v` is taken from
//! [`rare_vertex_certificate`], the node is classified by `deg(v)` and whether
//! `U ∖ {v}` is a hyperedge, and the exact identity for that case is evaluated.
//! The replay then recurses into the ideal deletion and, when `deg(v) ≥ 2`, the
//! contraction, instead of assuming the bound for them.

use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::family::{FamilyError, Hyperedge, SetFamily, Vertex};
use crate::ideal::{rare_vertex_certificate, CertificateError, IdealFamily};
use crate::minors::{contraction_ideal, ideal_deletion, MinorError, MinorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// `|U| = 1`.
    Base,
    /// `deg(v) = 1`, `U ∖ {v} ∈ F`: closed-form leaf.
    Deg1WithUV,
    /// `deg(v) = 1`, `U ∖ {v} ∉ F`.
    Deg1NoUV,
    /// `deg(v) ≥ 2`, `U ∖ {v} ∈ F`.
    DegGe2WithUV,
    /// `deg(v) ≥ 2`, `U ∖ {v} ∉ F`.
    DegGe2NoUV,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Minor(#[from] MinorError),
    #[error("rare-vertex certificate rejected: {0}")]
    Certificate(#[from] CertificateError),
    #[error("vertex {0} is not rare")]
    NotRare(Vertex),
    #[error("vertex {vertex} falls in case {actual}, not {given}")]
    CaseMismatch { vertex: Vertex, given: CaseTag, actual: CaseTag },
    #[error("{case} identity fails for {family}: {lhs} != {rhs}")]
    IdentityMismatch { case: CaseTag, family: SetFamily, lhs: i64, rhs: i64 },
    #[error("{family} with degree-one vertex {vertex} is not {{H : v ∉ H}} ∪ {{U}}")]
    ShapeMismatch { family: SetFamily, vertex: Vertex },
    #[error("{case} bound fails for {family}: {what}")]
    BoundFails { case: CaseTag, family: SetFamily, what: &'static str },
    #[error("NDS of {family} is {nds} > 0")]
    PositiveNds { family: SetFamily, nds: i64 },
}

/// Classifies `(F, v)`; `v` must be a rare vertex of `F`.
pub fn classify_case(family: &IdealFamily, v: Vertex) -> Result<CaseTag, ReplayError> {
    if !family.is_rare(v)? {
        return Err(ReplayError::NotRare(v));
    }
    if family.num_vertices() == 1 {
        return Ok(CaseTag::Base);
    }
    let with_uv = family.contains(family.ground().without(v));
    Ok(match (family.degree(v)? == 1, with_uv) {
        (true, true) => CaseTag::Deg1WithUV,
        (true, false) => CaseTag::Deg1NoUV,
        (false, true) => CaseTag::DegGe2WithUV,
        (false, false) => CaseTag::DegGe2NoUV,
    })
}

struct CaseEvaluation {
    lhs: i64,
    rhs: i64,
    ideal_deletion: Option<IdealFamily>,
    contraction: Option<IdealFamily>,
}

fn evaluate_case(family: &IdealFamily, v: Vertex, tag: CaseTag) -> Result<CaseEvaluation, ReplayError> {
    let actual = classify_case(family, v)?;
    if actual != tag {
        return Err(ReplayError::CaseMismatch { vertex: v, given: tag, actual });
    }
    let n = family.num_vertices() as i64;
    let nds = family.nds();
    let rarity_slack = 2 * family.degree(v)? as i64 - family.num_edges() as i64;
    let bound_fails = |what| ReplayError::BoundFails { case: tag, family: family.as_family().clone(), what };

    let mut eval = CaseEvaluation { lhs: nds, rhs: 0, ideal_deletion: None, contraction: None };
    match tag {
        CaseTag::Base => {}
        CaseTag::Deg1WithUV => {
            let ground = family.ground();
            let expected = SetFamily::power_set(ground)?
                .edges()
                .iter()
                .copied()
                .filter(|h| !h.contains(v))
                .chain([ground])
                .collect::<Vec<Hyperedge>>();
            if family.edges() != expected.as_slice() {
                return Err(ReplayError::ShapeMismatch { family: family.as_family().clone(), vertex: v });
            }
            eval.rhs = n - (1i64 << (n - 1));
        }
        CaseTag::Deg1NoUV => {
            let delp = ideal_deletion(family, v)?;
            if delp.num_edges() < 2 {
                return Err(bound_fails("|delp| < 2"));
            }
            eval.rhs = delp.nds() + 2 - delp.num_edges() as i64;
            eval.ideal_deletion = Some(delp);
        }
        CaseTag::DegGe2WithUV | CaseTag::DegGe2NoUV => {
            let delp = ideal_deletion(family, v)?;
            let con = contraction_ideal(family, v)?;
            eval.rhs = delp.nds() + con.nds() + rarity_slack;
            if tag == CaseTag::DegGe2NoUV {
                eval.rhs += 1 - n;
            }
            eval.ideal_deletion = Some(delp);
            eval.contraction = Some(con);
        }
    }
    if eval.lhs != eval.rhs {
        return Err(ReplayError::IdentityMismatch {
            case: tag,
            family: family.as_family().clone(),
            lhs: eval.lhs,
            rhs: eval.rhs,
        });
    }
    Ok(eval)
}

/// Evaluates the identity of case `tag` at `(F, v)` and returns `(NDS(F), rhs)`.
pub fn check_case_identity(family: &IdealFamily, v: Vertex, tag: CaseTag) -> Result<(i64, i64), ReplayError> {
    let eval = evaluate_case(family, v, tag)?;
    Ok((eval.lhs, eval.rhs))
}

/// One node of a replayed induction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionCertificate {
    /// Which minor of the parent this node is; `None` at the root.
    pub minor: Option<MinorKind>,
    pub family: IdealFamily,
    pub n: usize,
    pub num_edges: usize,
    pub nds: i64,
    pub vertex: Vertex,
    pub degree: u64,
    pub case: CaseTag,
    pub identity_lhs: i64,
    pub identity_rhs: i64,
    pub children: Vec<InductionCertificate>,
}

impl InductionCertificate {
    /// Number of levels, counting the root.
    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(InductionCertificate::depth).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(InductionCertificate::node_count).sum::<usize>()
    }

    /// Re-asserts the tree's invariants from the stored numbers alone.
    pub fn verify(&self) -> Result<(), ReplayError> {
        let family = || self.family.as_family().clone();
        if self.identity_lhs != self.identity_rhs {
            return Err(ReplayError::IdentityMismatch {
                case: self.case,
                family: family(),
                lhs: self.identity_lhs,
                rhs: self.identity_rhs,
            });
        }
        if self.nds > 0 {
            return Err(ReplayError::PositiveNds { family: family(), nds: self.nds });
        }
        if self.depth() > self.n {
            return Err(ReplayError::BoundFails { case: self.case, family: family(), what: "depth exceeds n" });
        }
        let expected_children = match self.case {
            CaseTag::Base | CaseTag::Deg1WithUV => 0,
            CaseTag::Deg1NoUV => 1,
            CaseTag::DegGe2WithUV | CaseTag::DegGe2NoUV => 2,
        };
        if self.children.len() != expected_children {
            return Err(ReplayError::BoundFails {
                case: self.case,
                family: family(),
                what: "wrong number of children",
            });
        }
        if self.case == CaseTag::DegGe2NoUV {
            // every term of the identity is non-positive
            let slack = 2 * self.degree as i64 - self.num_edges as i64;
            let terms_ok = self.children.iter().all(|c| c.nds <= 0) && slack <= 0 && self.n >= 2;
            if !terms_ok {
                return Err(ReplayError::BoundFails { case: self.case, family: family(), what: "inequality chain" });
            }
        }
        self.children.iter().try_for_each(InductionCertificate::verify)
    }

    /// Indented one-line-per-node rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let role = self.minor.map_or("root", MinorKind::short_name);
        let _ = writeln!(
            out,
            "{:indent$}{role} [{case}] n={n} |F|={m} NDS={nds} v={v} deg={deg} identity {lhs} = {rhs}",
            "",
            indent = 2 * depth,
            case = self.case,
            n = self.n,
            m = self.num_edges,
            nds = self.nds,
            v = self.vertex,
            deg = self.degree,
            lhs = self.identity_lhs,
            rhs = self.identity_rhs,
        );
        for child in &self.children {
            child.render_into(out, depth + 1);
        }
    }
}

/// Replays the induction on `family` down to single-vertex and closed-form leaves.
pub fn replay_induction(family: &IdealFamily) -> Result<InductionCertificate, ReplayError> {
    replay_node(family.clone(), None)
}

fn replay_node(family: IdealFamily, minor: Option<MinorKind>) -> Result<InductionCertificate, ReplayError> {
    let cert = rare_vertex_certificate(&family);
    cert.verify(&family)?;
    let v = cert.vertex;
    let case = classify_case(&family, v)?;
    let eval = evaluate_case(&family, v, case)?;

    let mut children = Vec::new();
    if let Some(delp) = eval.ideal_deletion {
        children.push(replay_node(delp, Some(MinorKind::IdealDeletion))?);
    }
    if let Some(con) = eval.contraction {
        children.push(replay_node(con, Some(MinorKind::Contraction))?);
    }

    let nds = family.nds();
    if nds > 0 {
        return Err(ReplayError::PositiveNds { family: family.into_family(), nds });
    }
    Ok(InductionCertificate {
        minor,
        n: family.num_vertices(),
        num_edges: family.num_edges(),
        nds,
        vertex: v,
        degree: family.degree(v)?,
        case,
        identity_lhs: eval.lhs,
        identity_rhs: eval.rhs,
        children,
        family,
    })
}
