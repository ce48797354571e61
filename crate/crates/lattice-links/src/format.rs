//! The `latticelink v1` interchange format.
//!
//! A document is a header line `latticelink v1` followed by one line per
//! component: space-separated vertex triples `x,y,z` in traversal order, the
//! closing edge implied. Blank lines and lines starting with `#` are ignored
//! on input (after leading whitespace); serialization emits no comments and
//! uses LF line endings so output is byte-exact reproducible.

use crate::link::{Component, LatticeLink};
use crate::point::LatticePoint;
use thiserror::Error;

pub const FORMAT_HEADER: &str = "latticelink v1";

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ParseError {
    #[error("missing header line `{FORMAT_HEADER}`")]
    MissingHeader,
    #[error("line {line}: expected header `{FORMAT_HEADER}`, found `{found}`")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: malformed vertex `{token}` (expected x,y,z with integer coordinates)")]
    BadVertex { line: usize, token: String },
    #[error("line {line}: component has {count} vertices; at least 4 are required")]
    TooFewVertices { line: usize, count: usize },
    #[error("no components in document")]
    EmptyLink,
}

pub fn parse_link(text: &str) -> Result<LatticeLink, ParseError> {
    let mut components = Vec::new();
    let mut saw_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != FORMAT_HEADER {
                return Err(ParseError::BadHeader {
                    line: line_no,
                    found: line.to_string(),
                });
            }
            saw_header = true;
            continue;
        }
        let mut vertices = Vec::new();
        for token in line.split_whitespace() {
            vertices.push(parse_vertex(token).ok_or_else(|| ParseError::BadVertex {
                line: line_no,
                token: token.to_string(),
            })?);
        }
        if vertices.len() < 4 {
            return Err(ParseError::TooFewVertices {
                line: line_no,
                count: vertices.len(),
            });
        }
        components.push(Component::new(vertices));
    }
    if !saw_header {
        return Err(ParseError::MissingHeader);
    }
    if components.is_empty() {
        return Err(ParseError::EmptyLink);
    }
    Ok(LatticeLink::new(components))
}

fn parse_vertex(token: &str) -> Option<LatticePoint> {
    let mut parts = token.split(',');
    let x = parts.next()?.parse().ok()?;
    let y = parts.next()?.parse().ok()?;
    let z = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some(LatticePoint::new(x, y, z))
}

pub fn serialize_link(link: &LatticeLink) -> String {
    let mut out = String::from(FORMAT_HEADER);
    out.push('\n');
    for comp in &link.components {
        let mut first = true;
        for v in comp.vertices() {
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}
