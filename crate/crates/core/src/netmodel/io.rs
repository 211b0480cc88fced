//! Network and assignment files.
//!
//! Both are JSON documents written in one canonical layout (one node, edge
//! or operator per line), so emitting a parsed canonical file reproduces it
//! byte for byte.
//!
//! ```text
//! {
//!   "nodes": [
//!     {"id": 1, "kind": "source", "message": "x"},
//!     {"id": 3, "kind": "relay"},
//!     {"id": 4, "kind": "receiver", "demands": "x"}
//!   ],
//!   "edges": [
//!     {"from": 1, "to": 3},
//!     {"from": 3, "to": 4}
//!   ]
//! }
//! ```
//!
//! ```text
//! {
//!   "ring": "GF2",
//!   "k": 1,
//!   "n": 1,
//!   "entries": {
//!     "1->3": [[1]],
//!     "3->4": [[1]]
//!   }
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::Value as Json;

use super::{Assignment, Edge, Network, Node, NodeId, NodeKind};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rings::{parse_ring, Ring};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    id: NodeId,
    kind: String,
    message: Option<String>,
    demands: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    from: NodeId,
    to: NodeId,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNetwork {
    nodes: Vec<RawNode>,
    edges: Vec<RawEdge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAssignment {
    ring: String,
    k: usize,
    n: usize,
    entries: serde_json::Map<String, Json>,
}

fn format_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

impl Network {
    /// Parses a network file. Structural problems beyond the file syntax
    /// are left to [`Network::validate`].
    pub fn from_json_str(text: &str) -> Result<Network> {
        let raw: RawNetwork = serde_json::from_str(text).map_err(format_err)?;
        let mut nodes = Vec::with_capacity(raw.nodes.len());
        for n in raw.nodes {
            let kind = match (n.kind.as_str(), n.message, n.demands) {
                ("source", Some(message), None) => NodeKind::Source { message },
                ("relay", None, None) => NodeKind::Relay,
                ("receiver", None, Some(demands)) => NodeKind::Receiver { demands },
                (kind @ ("source" | "relay" | "receiver"), _, _) => {
                    return Err(Error::Format(format!(
                        "node {}: a {kind} needs {}",
                        n.id,
                        match kind {
                            "source" => "`message` and no `demands`",
                            "relay" => "neither `message` nor `demands`",
                            _ => "`demands` and no `message`",
                        }
                    )))
                }
                (other, _, _) => {
                    return Err(Error::Format(format!(
                        "node {}: unknown kind `{other}`",
                        n.id
                    )))
                }
            };
            nodes.push(Node { id: n.id, kind });
        }
        let edges = raw
            .edges
            .into_iter()
            .map(|e| Edge::new(e.from, e.to))
            .collect();
        Ok(Network::new(nodes, edges))
    }

    pub fn to_json_string(&self) -> String {
        let mut out = String::from("{\n  \"nodes\": [\n");
        for (i, n) in self.nodes().iter().enumerate() {
            let extra = match &n.kind {
                NodeKind::Source { message } => format!(", \"message\": {}", quote(message)),
                NodeKind::Relay => String::new(),
                NodeKind::Receiver { demands } => format!(", \"demands\": {}", quote(demands)),
            };
            let sep = if i + 1 < self.nodes().len() { "," } else { "" };
            let _ = writeln!(
                out,
                "    {{\"id\": {}, \"kind\": \"{}\"{extra}}}{sep}",
                n.id,
                n.kind.name()
            );
        }
        out.push_str("  ],\n  \"edges\": [\n");
        for (i, e) in self.edges().iter().enumerate() {
            let sep = if i + 1 < self.edges().len() { "," } else { "" };
            let _ = writeln!(out, "    {{\"from\": {}, \"to\": {}}}{sep}", e.from, e.to);
        }
        out.push_str("  ]\n}\n");
        out
    }
}

impl Assignment {
    pub fn from_json_str(text: &str) -> Result<Assignment> {
        Self::parse(text, None)
    }

    /// Parses an assignment file but reads its literals in `ring` instead of
    /// the ring named in the file. Integer and `a/b` literals map through the
    /// canonical ring homomorphism, so one data file can serve several rings.
    pub fn from_json_str_in(text: &str, ring: &Ring) -> Result<Assignment> {
        Self::parse(text, Some(ring))
    }

    fn parse(text: &str, ring_override: Option<&Ring>) -> Result<Assignment> {
        let raw: RawAssignment = serde_json::from_str(text).map_err(format_err)?;
        let file_ring = parse_ring(&raw.ring)?;
        let ring = ring_override.cloned().unwrap_or(file_ring);
        let mut asg = Assignment::new(ring.clone(), raw.k, raw.n)?;
        let mut entries = BTreeMap::new();
        for (key, lit) in &raw.entries {
            let edge: Edge = key.parse()?;
            let m = Matrix::from_literal(&ring, lit)
                .map_err(|e| Error::Format(format!("entry {key}: {e}")))?;
            entries.insert(edge, m);
        }
        for (e, m) in entries {
            asg.insert(e, m);
        }
        Ok(asg)
    }

    pub fn to_json_string(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"ring\": {},", quote(&self.ring().to_string()));
        let _ = writeln!(out, "  \"k\": {},", self.k());
        let _ = writeln!(out, "  \"n\": {},", self.n());
        if self.entries().is_empty() {
            out.push_str("  \"entries\": {}\n}\n");
            return out;
        }
        out.push_str("  \"entries\": {\n");
        let len = self.entries().len();
        for (i, (e, m)) in self.entries().iter().enumerate() {
            let sep = if i + 1 < len { "," } else { "" };
            let _ = writeln!(
                out,
                "    {}: {}{sep}",
                quote(&e.to_string()),
                m.to_literal()
            );
        }
        out.push_str("  }\n}\n");
        out
    }
}
