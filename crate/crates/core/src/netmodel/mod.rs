//! Communication networks as DAGs with per-receiver demands, edge-operator
//! assignments, and their transfer-matrix semantics.
//!
//! An edge operator acts on the left of the upstream value, so a path
//! `e1, e2, ..., em` (tail to head) contributes `M_em * ... * M_e2 * M_e1`.

mod assignment;
mod io;
mod transfer;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use assignment::Assignment;
pub use transfer::{transfer, transfer_by_paths, verify, TransferMatrix, Verification};

pub type NodeId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Source { message: String },
    Relay,
    Receiver { demands: String },
}

impl NodeKind {
    pub fn name(&self) -> &'static str {
        match self {
            NodeKind::Source { .. } => "source",
            NodeKind::Relay => "relay",
            NodeKind::Receiver { .. } => "receiver",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
}

impl Node {
    pub fn source(id: NodeId, message: &str) -> Self {
        Node {
            id,
            kind: NodeKind::Source {
                message: message.to_string(),
            },
        }
    }

    pub fn relay(id: NodeId) -> Self {
        Node {
            id,
            kind: NodeKind::Relay,
        }
    }

    pub fn receiver(id: NodeId, demands: &str) -> Self {
        Node {
            id,
            kind: NodeKind::Receiver {
                demands: demands.to_string(),
            },
        }
    }

    pub fn is_source(&self) -> bool {
        matches!(self.kind, NodeKind::Source { .. })
    }

    pub fn is_receiver(&self) -> bool {
        matches!(self.kind, NodeKind::Receiver { .. })
    }
}

/// Directed edge `from -> to`, written `"from->to"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
}

impl Edge {
    pub fn new(from: NodeId, to: NodeId) -> Self {
        Edge { from, to }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("bad edge key `{s}`, expected `<from>-><to>`"));
        let (a, b) = s.split_once("->").ok_or_else(bad)?;
        Ok(Edge::new(
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ))
    }
}

/// Role of an edge, which fixes the shape of its operator in a (k, n)
/// assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    SourceToRelay,
    RelayToRelay,
    RelayToReceiver,
    SourceToReceiver,
}

impl EdgeKind {
    /// `(rows, cols)` of the operator: n x k into the network, n x n inside,
    /// k x n out of it, k x k straight from source to receiver.
    pub fn shape(self, k: usize, n: usize) -> (usize, usize) {
        match self {
            EdgeKind::SourceToRelay => (n, k),
            EdgeKind::RelayToRelay => (n, n),
            EdgeKind::RelayToReceiver => (k, n),
            EdgeKind::SourceToReceiver => (k, k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Violation {
    DuplicateNodeId(NodeId),
    UnknownEndpoint(Edge),
    ParallelEdge(Edge),
    SourceInDegree(NodeId),
    ReceiverOutDegree(NodeId),
    Cycle(Vec<NodeId>),
    DuplicateMessage(String),
    UnknownDemand { receiver: NodeId, message: String },
    UnreachableReceiver(NodeId),
    NoSources,
    NoReceivers,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateNodeId(id) => write!(f, "node id {id} is used more than once"),
            Violation::UnknownEndpoint(e) => write!(f, "edge {e} references an unknown node"),
            Violation::ParallelEdge(e) => write!(f, "edge {e} appears more than once"),
            Violation::SourceInDegree(id) => write!(f, "source {id} has incoming edges"),
            Violation::ReceiverOutDegree(id) => write!(f, "receiver {id} has outgoing edges"),
            Violation::Cycle(nodes) => {
                let ids: Vec<String> = nodes.iter().map(|n| n.to_string()).collect();
                write!(f, "directed cycle through nodes {{{}}}", ids.join(", "))
            }
            Violation::DuplicateMessage(m) => {
                write!(f, "message `{m}` is produced by more than one source")
            }
            Violation::UnknownDemand { receiver, message } => {
                write!(
                    f,
                    "receiver {receiver} demands `{message}`, which no source produces"
                )
            }
            Violation::UnreachableReceiver(id) => {
                write!(f, "receiver {id} is not reachable from any source")
            }
            Violation::NoSources => write!(f, "network has no sources"),
            Violation::NoReceivers => write!(f, "network has no receivers"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Network {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
}

impl Network {
    /// Assembles a network without checking it; see [`Network::validate`].
    pub fn new(nodes: Vec<Node>, edges: Vec<Edge>) -> Self {
        Network { nodes, edges }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn add_node(&mut self, node: Node) {
        self.nodes.push(node);
    }

    pub fn add_edge(&mut self, edge: Edge) {
        self.edges.push(edge);
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    /// Source ids in ascending order.
    pub fn sources(&self) -> Vec<NodeId> {
        let mut v: Vec<NodeId> = self
            .nodes
            .iter()
            .filter(|n| n.is_source())
            .map(|n| n.id)
            .collect();
        v.sort_unstable();
        v
    }

    /// Receiver ids in ascending order.
    pub fn receivers(&self) -> Vec<NodeId> {
        let mut v: Vec<NodeId> = self
            .nodes
            .iter()
            .filter(|n| n.is_receiver())
            .map(|n| n.id)
            .collect();
        v.sort_unstable();
        v
    }

    pub fn in_edges(&self, id: NodeId) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied().filter(move |e| e.to == id)
    }

    pub fn out_edges(&self, id: NodeId) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied().filter(move |e| e.from == id)
    }

    pub fn source_of(&self, message: &str) -> Option<NodeId> {
        self.nodes.iter().find_map(|n| match &n.kind {
            NodeKind::Source { message: m } if m == message => Some(n.id),
            _ => None,
        })
    }

    /// The source whose message receiver `id` demands.
    pub fn demanded_source(&self, id: NodeId) -> Option<NodeId> {
        match &self.node(id)?.kind {
            NodeKind::Receiver { demands } => self.source_of(demands),
            _ => None,
        }
    }

    pub fn edge_kind(&self, e: Edge) -> Option<EdgeKind> {
        let from = &self.node(e.from)?.kind;
        let to = &self.node(e.to)?.kind;
        match (from, to) {
            (NodeKind::Source { .. }, NodeKind::Relay) => Some(EdgeKind::SourceToRelay),
            (NodeKind::Relay, NodeKind::Relay) => Some(EdgeKind::RelayToRelay),
            (NodeKind::Relay, NodeKind::Receiver { .. }) => Some(EdgeKind::RelayToReceiver),
            (NodeKind::Source { .. }, NodeKind::Receiver { .. }) => {
                Some(EdgeKind::SourceToReceiver)
            }
            _ => None,
        }
    }

    /// Kahn's algorithm, smallest ready id first. On a cycle returns the
    /// ids that could not be ordered.
    pub fn topological_order(&self) -> std::result::Result<Vec<NodeId>, Vec<NodeId>> {
        let ids: BTreeSet<NodeId> = self.nodes.iter().map(|n| n.id).collect();
        let mut indeg: BTreeMap<NodeId, usize> = ids.iter().map(|&id| (id, 0)).collect();
        for e in &self.edges {
            if ids.contains(&e.from) {
                if let Some(d) = indeg.get_mut(&e.to) {
                    *d += 1;
                }
            }
        }
        let mut ready: BTreeSet<NodeId> = indeg
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&id, _)| id)
            .collect();
        let mut order = Vec::with_capacity(ids.len());
        while let Some(id) = ready.pop_first() {
            order.push(id);
            for e in self.out_edges(id) {
                if let Some(d) = indeg.get_mut(&e.to) {
                    *d -= 1;
                    if *d == 0 {
                        ready.insert(e.to);
                    }
                }
            }
        }
        if order.len() == ids.len() {
            Ok(order)
        } else {
            let done: BTreeSet<NodeId> = order.into_iter().collect();
            Err(ids.difference(&done).copied().collect())
        }
    }

    /// Every network invariant that fails, in a deterministic order. An
    /// empty list means the network is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for n in &self.nodes {
            if !seen.insert(n.id) {
                out.insert(Violation::DuplicateNodeId(n.id));
            }
        }
        let mut edge_seen = BTreeSet::new();
        for &e in &self.edges {
            if !seen.contains(&e.from) || !seen.contains(&e.to) {
                out.insert(Violation::UnknownEndpoint(e));
            }
            if !edge_seen.insert(e) {
                out.insert(Violation::ParallelEdge(e));
            }
            match self.node(e.to) {
                Some(n) if n.is_source() => {
                    out.insert(Violation::SourceInDegree(n.id));
                }
                _ => {}
            }
            match self.node(e.from) {
                Some(n) if n.is_receiver() => {
                    out.insert(Violation::ReceiverOutDegree(n.id));
                }
                _ => {}
            }
        }
        if let Err(stuck) = self.topological_order() {
            out.insert(Violation::Cycle(stuck));
        }
        let mut producers: HashMap<&str, usize> = HashMap::new();
        for n in &self.nodes {
            if let NodeKind::Source { message } = &n.kind {
                *producers.entry(message.as_str()).or_default() += 1;
            }
        }
        for (m, count) in &producers {
            if *count > 1 {
                out.insert(Violation::DuplicateMessage(m.to_string()));
            }
        }
        let sources = self.sources();
        let receivers = self.receivers();
        if sources.is_empty() {
            out.insert(Violation::NoSources);
        }
        if receivers.is_empty() {
            out.insert(Violation::NoReceivers);
        }
        let reachable = self.reachable_from(&sources);
        for n in &self.nodes {
            if let NodeKind::Receiver { demands } = &n.kind {
                if !producers.contains_key(demands.as_str()) {
                    out.insert(Violation::UnknownDemand {
                        receiver: n.id,
                        message: demands.clone(),
                    });
                }
                if !reachable.contains(&n.id) {
                    out.insert(Violation::UnreachableReceiver(n.id));
                }
            }
        }
        out.into_iter().collect()
    }

    /// `Ok` iff [`Network::validate`] finds nothing.
    pub fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidNetwork(v))
        }
    }

    fn reachable_from(&self, starts: &[NodeId]) -> BTreeSet<NodeId> {
        let mut seen: BTreeSet<NodeId> = starts.iter().copied().collect();
        let mut stack: Vec<NodeId> = starts.to_vec();
        while let Some(id) = stack.pop() {
            for e in self.out_edges(id) {
                if seen.insert(e.to) {
                    stack.push(e.to);
                }
            }
        }
        seen
    }

    /// All directed paths from `source` to `target`, each as its edges from
    /// tail to head, in depth-first order of edge listing.
    pub fn enumerate_paths(&self, source: NodeId, target: NodeId) -> Vec<Vec<Edge>> {
        fn walk(
            net: &Network,
            at: NodeId,
            target: NodeId,
            path: &mut Vec<Edge>,
            out: &mut Vec<Vec<Edge>>,
        ) {
            if at == target {
                out.push(path.clone());
                return;
            }
            // bounded by the path length so malformed cyclic input terminates
            if path.len() > net.edges.len() {
                return;
            }
            for e in net.out_edges(at) {
                path.push(e);
                walk(net, e.to, target, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, source, target, &mut Vec::new(), &mut out);
        out
    }

    /// Copy with node ids renamed through `map` (ids missing from the map
    /// are kept).
    pub fn relabeled(&self, map: &BTreeMap<NodeId, NodeId>) -> Network {
        let f = |id: NodeId| *map.get(&id).unwrap_or(&id);
        Network {
            nodes: self
                .nodes
                .iter()
                .map(|n| Node {
                    id: f(n.id),
                    kind: n.kind.clone(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(f(e.from), f(e.to)))
                .collect(),
        }
    }
}
