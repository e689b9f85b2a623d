//! A workbench for finite set families: degrees, the normalized degree sum
//! (NDS), ideal families and their minors, exhaustive enumeration at small
//! ground-set sizes, and a replay of the induction showing that every ideal
//! family has `NDS ≤ 0`.
//!
//! ```
//! use ideal_families::{catalog, replay::replay_induction};
//!
//! let f = catalog::three_vertex_ideal();
//! assert_eq!(f.tsh(), 10);
//! assert_eq!(f.nds(), -1);
//! let cert = replay_induction(&f).unwrap();
//! assert!(cert.verify().is_ok());
//! ```

pub mod catalog;
pub mod enumerate;
pub mod family;
pub mod ideal;
pub mod minors;
pub mod replay;
pub mod report;
pub mod text;

pub use family::{FamilyError, Hyperedge, SetFamily, Vertex, UNIVERSE_WIDTH};
pub use ideal::{rare_vertex_certificate, validate_ideal, IdealFamily, IdealViolation, RareVertexCertificate};
pub use report::FamilyReport;
pub use text::{parse_family, write_family, ParseError};
