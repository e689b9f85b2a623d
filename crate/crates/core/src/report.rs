use serde::{Deserialize, Serialize};

use crate::family::SetFamily;
use crate::ideal::validate_ideal;

/// Summary of one family, serialized as the JSON analysis report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub n: usize,
    pub num_edges: usize,
    pub tsh: u64,
    pub nds: i64,
    /// Indexed by ground vertex, ascending.
    pub degrees: Vec<u64>,
    pub rare_vertices: Vec<usize>,
    pub is_intersection_closed: bool,
    pub is_ideal: bool,
}

impl FamilyReport {
    pub fn of(family: &SetFamily) -> Self {
        FamilyReport {
            n: family.num_vertices(),
            num_edges: family.num_edges(),
            tsh: family.tsh(),
            nds: family.nds(),
            degrees: family.degrees().into_iter().map(|(_, d)| d).collect(),
            rare_vertices: family.rare_vertices().into_iter().map(|v| v.index()).collect(),
            is_intersection_closed: family.is_intersection_closed(),
            is_ideal: validate_ideal(family).is_ok(),
        }
    }
}
