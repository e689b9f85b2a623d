//! Ideal families and the injection that certifies a rare vertex.

use std::collections::HashSet;
use std::fmt;
use std::ops::Deref;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::family::{Hyperedge, SetFamily, Vertex};

/// The first ideal-family axiom that fails, with a witness where one exists.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealViolation {
    #[error("axiom 1 (contains empty set) fails: the empty set is not a hyperedge")]
    MissingEmptySet,
    #[error("axiom 2 (contains ground set) fails: the ground set {0} is not a hyperedge")]
    MissingGroundSet(Hyperedge),
    #[error(
        "axiom 3 (downward-closed except the ground set) fails: {subset} ⊆ {superset} but {subset} is not a hyperedge"
    )]
    NotDownwardClosed { superset: Hyperedge, subset: Hyperedge },
}

impl IdealViolation {
    pub fn axiom(&self) -> u8 {
        match self {
            IdealViolation::MissingEmptySet => 1,
            IdealViolation::MissingGroundSet(_) => 2,
            IdealViolation::NotDownwardClosed { .. } => 3,
        }
    }
}

/// A [`SetFamily`] known to contain `∅` and `U`, and to contain every subset of
/// each hyperedge other than `U`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IdealFamily(SetFamily);

impl IdealFamily {
    pub fn new(family: SetFamily) -> Result<Self, IdealViolation> {
        check_axioms(&family)?;
        Ok(IdealFamily(family))
    }

    pub(crate) fn new_unchecked(family: SetFamily) -> Self {
        debug_assert!(check_axioms(&family).is_ok());
        IdealFamily(family)
    }

    pub fn as_family(&self) -> &SetFamily {
        &self.0
    }

    pub fn into_family(self) -> SetFamily {
        self.0
    }
}

impl Deref for IdealFamily {
    type Target = SetFamily;

    fn deref(&self) -> &SetFamily {
        &self.0
    }
}

impl Serialize for IdealFamily {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl TryFrom<SetFamily> for IdealFamily {
    type Error = IdealViolation;

    fn try_from(family: SetFamily) -> Result<Self, IdealViolation> {
        IdealFamily::new(family)
    }
}

impl fmt::Display for IdealFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for IdealFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealFamily({})", self.0)
    }
}

/// Checks the three ideal-family axioms, reporting the first one that fails.
pub fn validate_ideal(family: &SetFamily) -> Result<IdealFamily, IdealViolation> {
    IdealFamily::new(family.clone())
}

fn check_axioms(family: &SetFamily) -> Result<(), IdealViolation> {
    let ground = family.ground();
    if !family.contains(Hyperedge::EMPTY) {
        return Err(IdealViolation::MissingEmptySet);
    }
    if !family.contains(ground) {
        return Err(IdealViolation::MissingGroundSet(ground));
    }
    // Checking the subsets one element smaller suffices: they are themselves
    // non-ground hyperedges, so closure propagates all the way down.
    for &superset in family.edges() {
        if superset == ground {
            continue;
        }
        for v in superset.vertices() {
            let subset = superset.without(v);
            if !family.contains(subset) {
                return Err(IdealViolation::NotDownwardClosed { superset, subset });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("vertex {0} is not in the ground set")]
    VertexOutsideGround(Vertex),
    #[error("mapping domain differs from the hyperedges containing the vertex")]
    DomainMismatch,
    #[error("target {0} is not a hyperedge of the family")]
    TargetNotEdge(Hyperedge),
    #[error("target {0} contains the certified vertex")]
    TargetContainsVertex(Hyperedge),
    #[error("two sources map to the same target {0}")]
    NotInjective(Hyperedge),
    #[error("vertex {vertex} is not rare: 2·{degree} > {edges}")]
    NotRare { vertex: Vertex, degree: u64, edges: usize },
}

/// A vertex `v` together with an injection from the hyperedges containing `v`
/// into the hyperedges avoiding `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RareVertexCertificate {
    pub vertex: Vertex,
    /// The maximal non-ground hyperedge the vertex was chosen outside of.
    pub maximal_edge: Hyperedge,
    /// `(source, target)` pairs in canonical source order.
    pub mapping: Vec<(Hyperedge, Hyperedge)>,
}

impl RareVertexCertificate {
    /// Re-checks the certificate against `family` without trusting how it was built.
    pub fn verify(&self, family: &SetFamily) -> Result<(), CertificateError> {
        let v = self.vertex;
        if !family.ground().contains(v) {
            return Err(CertificateError::VertexOutsideGround(v));
        }
        let domain: Vec<Hyperedge> = family.edges().iter().copied().filter(|h| h.contains(v)).collect();
        let sources: Vec<Hyperedge> = self.mapping.iter().map(|&(s, _)| s).collect();
        if domain != sources {
            return Err(CertificateError::DomainMismatch);
        }
        let mut seen = HashSet::with_capacity(self.mapping.len());
        for &(_, target) in &self.mapping {
            if !family.contains(target) {
                return Err(CertificateError::TargetNotEdge(target));
            }
            if target.contains(v) {
                return Err(CertificateError::TargetContainsVertex(target));
            }
            if !seen.insert(target) {
                return Err(CertificateError::NotInjective(target));
            }
        }
        let degree = domain.len() as u64;
        if 2 * degree > family.num_edges() as u64 {
            return Err(CertificateError::NotRare { vertex: v, degree, edges: family.num_edges() });
        }
        Ok(())
    }
}

/// The canonically smallest hyperedge that is maximal among the non-ground
/// hyperedges.
pub fn maximal_proper_edge(family: &IdealFamily) -> Hyperedge {
    let ground = family.ground();
    // In an ideal family a non-ground edge M is maximal iff no M ∪ {x} other
    // than U is an edge.
    family
        .edges()
        .iter()
        .copied()
        .find(|&m| {
            m != ground && ground.difference(m).vertices().all(|x| m.with(x) == ground || !family.contains(m.with(x)))
        })
        .expect("an ideal family always has a non-ground hyperedge")
}

/// Picks the smallest vertex outside the canonical maximal non-ground edge `M`
/// and maps `H ↦ H ∖ {v}` for `H ≠ U`, `U ↦ M`.
pub fn rare_vertex_certificate(family: &IdealFamily) -> RareVertexCertificate {
    let ground = family.ground();
    let maximal_edge = maximal_proper_edge(family);
    let vertex = ground.difference(maximal_edge).vertices().next().expect("a non-ground edge misses some vertex");
    let mapping = family
        .edges()
        .iter()
        .filter(|h| h.contains(vertex))
        .map(|&h| if h == ground { (h, maximal_edge) } else { (h, h.without(vertex)) })
        .collect();
    RareVertexCertificate { vertex, maximal_edge, mapping }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(ix: &[usize]) -> Hyperedge {
        Hyperedge::of(ix)
    }

    fn three_vertex_ideal() -> SetFamily {
        SetFamily::on_prefix(3, [e(&[]), e(&[0]), e(&[1]), e(&[2]), e(&[0, 1]), e(&[0, 2]), e(&[0, 1, 2])]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_ideal(&three_vertex_ideal()).is_ok());

        let nds_one = SetFamily::on_prefix(3, [e(&[]), e(&[0]), e(&[0, 1]), e(&[0, 2]), e(&[0, 1, 2])]).unwrap();
        let err = validate_ideal(&nds_one).unwrap_err();
        assert_eq!(err.axiom(), 3);
        assert_eq!(err, IdealViolation::NotDownwardClosed { superset: e(&[0, 1]), subset: e(&[1]) });

        let only_ground = SetFamily::on_prefix(3, [e(&[0, 1, 2])]).unwrap();
        assert_eq!(validate_ideal(&only_ground).unwrap_err(), IdealViolation::MissingEmptySet);

        let no_ground = SetFamily::on_prefix(2, [e(&[]), e(&[0])]).unwrap();
        assert_eq!(validate_ideal(&no_ground).unwrap_err().axiom(), 2);
    }

    #[test]
    fn ground_is_exempt_from_downward_closure() {
        let f = SetFamily::on_prefix(3, [e(&[]), e(&[0, 1, 2])]).unwrap();
        assert!(validate_ideal(&f).is_ok());
    }

    #[test]
    fn certificate_three_vertex() {
        let f = validate_ideal(&three_vertex_ideal()).unwrap();
        let cert = rare_vertex_certificate(&f);
        assert_eq!(cert.maximal_edge, e(&[0, 1]));
        assert_eq!(cert.vertex, Vertex::new(2).unwrap());
        assert_eq!(cert.mapping, vec![(e(&[2]), e(&[])), (e(&[0, 2]), e(&[0])), (e(&[0, 1, 2]), e(&[0, 1]))]);
        assert_eq!(cert.verify(&f), Ok(()));
        assert_eq!(f.is_rare(cert.vertex), Ok(true));
    }

    #[test]
    fn certificate_single_vertex() {
        let f = validate_ideal(&SetFamily::on_prefix(1, [e(&[]), e(&[0])]).unwrap()).unwrap();
        let cert = rare_vertex_certificate(&f);
        assert_eq!(cert.maximal_edge, Hyperedge::EMPTY);
        assert_eq!(cert.vertex, Vertex::new(0).unwrap());
        assert_eq!(cert.mapping, vec![(e(&[0]), e(&[]))]);
        assert_eq!(cert.verify(&f), Ok(()));
    }

    #[test]
    fn certificate_power_set() {
        let f = validate_ideal(&SetFamily::power_set(e(&[0, 1])).unwrap()).unwrap();
        let cert = rare_vertex_certificate(&f);
        assert_eq!(cert.maximal_edge, e(&[0]));
        assert_eq!(cert.vertex, Vertex::new(1).unwrap());
        assert_eq!(cert.mapping, vec![(e(&[1]), e(&[])), (e(&[0, 1]), e(&[0]))]);
        assert_eq!(cert.verify(&f), Ok(()));
    }

    #[test]
    fn verify_catches_tampering() {
        let f = validate_ideal(&three_vertex_ideal()).unwrap();
        let mut cert = rare_vertex_certificate(&f);
        cert.mapping[2].1 = e(&[0]);
        assert_eq!(cert.verify(&f), Err(CertificateError::NotInjective(e(&[0]))));
        let mut cert = rare_vertex_certificate(&f);
        cert.mapping[0].1 = e(&[2]);
        assert_eq!(cert.verify(&f), Err(CertificateError::TargetContainsVertex(e(&[2]))));
        let mut cert = rare_vertex_certificate(&f);
        cert.mapping.pop();
        assert_eq!(cert.verify(&f), Err(CertificateError::DomainMismatch));
    }

    #[test]
    fn minor_ground_labels_are_kept() {
        // ideal family on the ground {1, 3}
        let f = SetFamily::new(e(&[1, 3]), [e(&[]), e(&[3]), e(&[1, 3])]).unwrap();
        let f = validate_ideal(&f).unwrap();
        let cert = rare_vertex_certificate(&f);
        assert_eq!(cert.maximal_edge, e(&[3]));
        assert_eq!(cert.vertex, Vertex::new(1).unwrap());
        assert_eq!(cert.verify(&f), Ok(()));
    }
}
