use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::netmodel::{Edge, Network, NodeId};

/// One (receiver, source) block equation: the path sum must equal the
/// identity (demanded source) or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockConstraint {
    pub receiver: NodeId,
    pub source: NodeId,
    pub identity: bool,
    /// Paths from source to receiver, edges tail to head.
    pub paths: Vec<Vec<Edge>>,
    /// Number of assigned edges after which the constraint is fully
    /// determined.
    pub depth: usize,
}

impl BlockConstraint {
    pub fn edges(&self) -> BTreeSet<Edge> {
        self.paths.iter().flatten().copied().collect()
    }
}

impl fmt::Display for BlockConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs = if self.identity { "I" } else { "0" };
        write!(
            f,
            "{}=>{} = {rhs} ({} paths)",
            self.source,
            self.receiver,
            self.paths.len()
        )
    }
}

/// Edge order for the search tree plus, per depth, the constraints that
/// become fully determined there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintPlan {
    order: Vec<Edge>,
    constraints: Vec<BlockConstraint>,
    checks: Vec<Vec<usize>>,
}

impl ConstraintPlan {
    /// Edges in assignment order; depth `d` assigns `order()[d - 1]`.
    pub fn order(&self) -> &[Edge] {
        &self.order
    }

    pub fn constraints(&self) -> &[BlockConstraint] {
        &self.constraints
    }

    /// Indices into [`ConstraintPlan::constraints`] checked once `depth`
    /// edges are assigned, for `depth` in `0..=order().len()`.
    pub fn checks_at(&self, depth: usize) -> &[usize] {
        &self.checks[depth]
    }

    pub fn depth_of(&self, receiver: NodeId, source: NodeId) -> Option<usize> {
        self.constraints
            .iter()
            .find(|c| c.receiver == receiver && c.source == source)
            .map(|c| c.depth)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Plans every (receiver, source) block of `net`. Edges that lie on no
/// source-to-receiver path go last.
pub fn plan(net: &Network) -> Result<ConstraintPlan> {
    net.check()?;
    let mut pairs = Vec::new();
    for t in net.receivers() {
        for s in net.sources() {
            pairs.push((t, s));
        }
    }
    build(net, &pairs, true)
}

/// Plans only the listed `(receiver, source)` blocks; the order contains
/// just the edges those blocks involve.
pub fn plan_blocks(net: &Network, blocks: &[(NodeId, NodeId)]) -> Result<ConstraintPlan> {
    net.check()?;
    for &(t, s) in blocks {
        let ok = net.node(t).is_some_and(|n| n.is_receiver())
            && net.node(s).is_some_and(|n| n.is_source());
        if !ok {
            return Err(Error::Assignment(format!(
                "({t}, {s}) is not a (receiver, source) pair"
            )));
        }
    }
    build(net, blocks, false)
}

fn build(net: &Network, pairs: &[(NodeId, NodeId)], all_edges: bool) -> Result<ConstraintPlan> {
    let topo = net
        .topological_order()
        .expect("validated network is acyclic");
    let pos: HashMap<NodeId, usize> = topo.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let edge_key = |e: &Edge| (pos[&e.from], pos[&e.to]);

    let mut constraints: Vec<BlockConstraint> = pairs
        .iter()
        .map(|&(t, s)| BlockConstraint {
            receiver: t,
            source: s,
            identity: net.demanded_source(t) == Some(s),
            paths: net.enumerate_paths(s, t),
            depth: 0,
        })
        .collect();
    let edge_sets: Vec<BTreeSet<Edge>> = constraints.iter().map(|c| c.edges()).collect();

    let mut order: Vec<Edge> = Vec::new();
    let mut placed: BTreeSet<Edge> = BTreeSet::new();
    let mut done = vec![false; constraints.len()];
    loop {
        for (i, set) in edge_sets.iter().enumerate() {
            if !done[i] && set.is_subset(&placed) {
                done[i] = true;
            }
        }
        let next = (0..constraints.len())
            .filter(|&i| !done[i])
            .min_by_key(|&i| {
                let c = &constraints[i];
                let open = edge_sets[i].difference(&placed).count();
                (!c.identity, open, c.source, c.receiver)
            });
        let Some(i) = next else { break };
        let mut fresh: Vec<Edge> = edge_sets[i].difference(&placed).copied().collect();
        fresh.sort_by_key(edge_key);
        for e in fresh {
            placed.insert(e);
            order.push(e);
        }
    }
    if all_edges {
        let mut rest: Vec<Edge> = net
            .edges()
            .iter()
            .filter(|e| !placed.contains(e))
            .copied()
            .collect();
        rest.sort_by_key(edge_key);
        order.extend(rest);
    }

    let index: HashMap<Edge, usize> = order.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut checks = vec![Vec::new(); order.len() + 1];
    for (i, (c, set)) in constraints.iter_mut().zip(&edge_sets).enumerate() {
        c.depth = set.iter().map(|e| index[e] + 1).max().unwrap_or(0);
        checks[c.depth].push(i);
    }
    Ok(ConstraintPlan {
        order,
        constraints,
        checks,
    })
}
