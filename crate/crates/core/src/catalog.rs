//! Small named families used as worked examples and golden inputs.

use crate::family::{FamilyError, Hyperedge, SetFamily, Vertex};
use crate::ideal::IdealFamily;

/// Every subset of `{0, .., n-1}`.
pub fn power_set(n: usize) -> Result<IdealFamily, FamilyError> {
    Ok(IdealFamily::new_unchecked(SetFamily::power_set(Hyperedge::prefix(n)?)?))
}

/// `{∅, {0}, {1}, {2}, {0,1}, {0,2}, {0,1,2}}`: degrees (4, 3, 3), NDS −1.
pub fn three_vertex_ideal() -> IdealFamily {
    let edges = [&[][..], &[0], &[1], &[2], &[0, 1], &[0, 2], &[0, 1, 2]];
    IdealFamily::new_unchecked(
        SetFamily::on_prefix(3, edges.iter().map(|ix| Hyperedge::of(ix))).expect("valid literal"),
    )
}

/// `{H : v ∉ H} ∪ {U}` on `{0, .., n-1}`: `v` has degree one and `U ∖ {v}` is an
/// edge. Its NDS is `n − 2^(n−1)`.
pub fn degree_one_family(n: usize, v: Vertex) -> Result<IdealFamily, FamilyError> {
    let ground = Hyperedge::prefix(n)?;
    if !ground.contains(v) {
        return Err(FamilyError::VertexOutsideGround { vertex: v, ground });
    }
    let below = SetFamily::power_set(ground)?;
    let edges = below.edges().iter().copied().filter(|h| !h.contains(v)).chain([ground]);
    Ok(IdealFamily::new_unchecked(SetFamily::new(ground, edges)?))
}

/// `{∅, {0}, {0,1}, {0,2}, {0,1,2}}`: intersection-closed, not ideal, NDS 1,
/// rare vertices 1 and 2.
pub fn intersection_closed_nds_one() -> SetFamily {
    let edges = [&[][..], &[0], &[0, 1], &[0, 2], &[0, 1, 2]];
    SetFamily::on_prefix(3, edges.iter().map(|ix| Hyperedge::of(ix))).expect("valid literal")
}
