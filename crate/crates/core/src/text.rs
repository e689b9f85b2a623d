//! Plain-text family format.
//!
//! ```text
//! # comment
//! n=3
//! 000
//! 100
//! 110
//! 111
//! ```
//!
//! The header gives `|U|`; every other non-empty, non-comment line is one
//! hyperedge as a string of `|U|` binary digits, leftmost digit for vertex 0.
//! Writing a family whose ground set is not `{0, .., k-1}` (a minor, say)
//! numbers its ground vertices `0..k` in ascending label order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::family::{FamilyError, Hyperedge, SetFamily, UNIVERSE_WIDTH};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing `n=<k>` header")]
    MissingHeader,
    #[error("malformed header {0:?}, expected `n=<k>`")]
    BadHeader(String),
    #[error("ground size {0} is outside 1..={UNIVERSE_WIDTH}")]
    GroundSize(usize),
    #[error("expected {expected} binary digits, found {found:?}")]
    BadEdge { expected: usize, found: String },
    #[error("duplicate hyperedge {0:?}")]
    DuplicateEdge(String),
}

pub fn parse_family(input: &str) -> Result<SetFamily, ParseError> {
    let mut lines =
        input.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ParseError { line: 1, kind: ParseErrorKind::MissingHeader })?;
    let err = |line, kind| ParseError { line, kind };
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|k| k.trim().parse().ok())
        .ok_or_else(|| err(header_line, ParseErrorKind::BadHeader(header.to_string())))?;
    if n == 0 || n > UNIVERSE_WIDTH {
        return Err(err(header_line, ParseErrorKind::GroundSize(n)));
    }

    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, text) in lines {
        if text.len() != n || !text.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(err(line, ParseErrorKind::BadEdge { expected: n, found: text.to_string() }));
        }
        let bits = text.bytes().enumerate().fold(0u32, |acc, (j, b)| acc | (u32::from(b == b'1') << j));
        if !seen.insert(bits) {
            return Err(err(line, ParseErrorKind::DuplicateEdge(text.to_string())));
        }
        edges.push(Hyperedge::from_bits(bits).expect("n ≤ UNIVERSE_WIDTH"));
    }
    Ok(SetFamily::on_prefix(n, edges).expect("edges are distinct and inside the prefix ground"))
}

pub fn write_family(family: &SetFamily) -> String {
    let ground: Vec<_> = family.vertices().collect();
    let mut out = String::with_capacity((ground.len() + 1) * (family.num_edges() + 1) + 8);
    let _ = writeln!(out, "n={}", ground.len());
    for &edge in family.edges() {
        out.extend(ground.iter().map(|&v| if edge.contains(v) { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

/// Relabels the ground vertices to `0..k` in ascending order, which is how
/// [`write_family`] numbers them.
pub fn compact_labels(family: &SetFamily) -> Result<SetFamily, FamilyError> {
    let ground: Vec<_> = family.vertices().collect();
    let relabel = |edge: Hyperedge| {
        ground.iter().enumerate().filter(|&(_, &v)| edge.contains(v)).fold(0u32, |acc, (j, _)| acc | (1 << j))
    };
    SetFamily::on_prefix(ground.len(), family.edges().iter().map(|&e| Hyperedge::from_bits(relabel(e)).expect("fits")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments_and_blank_lines() {
        let f = parse_family("# the power set\n\nn=2\n00\n10\n# mid\n01\n11\n").unwrap();
        assert_eq!(f, SetFamily::power_set(Hyperedge::of(&[0, 1])).unwrap());
        assert_eq!(write_family(&f), "n=2\n00\n10\n01\n11\n");
    }

    #[test]
    fn leftmost_digit_is_vertex_zero() {
        let f = parse_family("n=3\n100\n").unwrap();
        assert_eq!(f.edges(), &[Hyperedge::of(&[0])]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_family("# only a comment\n").unwrap_err().kind, ParseErrorKind::MissingHeader);
        assert_eq!(parse_family("m=2\n").unwrap_err().line, 1);
        assert_eq!(parse_family("n=0\n").unwrap_err().kind, ParseErrorKind::GroundSize(0));
        assert_eq!(parse_family("n=21\n").unwrap_err().kind, ParseErrorKind::GroundSize(21));
        let e = parse_family("n=2\n00\n1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(e.kind, ParseErrorKind::BadEdge { expected: 2, .. }));
        let e = parse_family("n=2\n00\n1x\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::BadEdge { .. }));
        let e = parse_family("n=2\n10\n\n10\n").unwrap_err();
        assert_eq!(e, ParseError { line: 4, kind: ParseErrorKind::DuplicateEdge("10".into()) });
    }

    #[test]
    fn minors_are_written_with_compacted_labels() {
        let f = SetFamily::new(Hyperedge::of(&[1, 3]), [Hyperedge::EMPTY, Hyperedge::of(&[3])]).unwrap();
        assert_eq!(write_family(&f), "n=2\n00\n01\n");
        assert_eq!(parse_family(&write_family(&f)).unwrap(), compact_labels(&f).unwrap());
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..=8, bits in proptest::collection::btree_set(0u32..256, 0..40)) {
            let full = (1u32 << n) - 1;
            let edges = bits.into_iter().map(|b| Hyperedge::from_bits(b & full).unwrap());
            let f = SetFamily::from_edge_set(Hyperedge::prefix(n).unwrap(), edges).unwrap();
            let text = write_family(&f);
            let back = parse_family(&text).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(write_family(&back), text);
        }
    }
}
