use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{Assignment, Network, NodeId};
use crate::error::Result;
use crate::linalg::Matrix;

/// Receivers x sources array of k x k blocks. Block `(t, s)` is the sum over
/// all paths `s -> t` of the operator products along the path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    receivers: Vec<NodeId>,
    sources: Vec<NodeId>,
    k: usize,
    blocks: Vec<Matrix>,
}

impl TransferMatrix {
    pub fn receivers(&self) -> &[NodeId] {
        &self.receivers
    }

    pub fn sources(&self) -> &[NodeId] {
        &self.sources
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn block(&self, receiver: NodeId, source: NodeId) -> Option<&Matrix> {
        let t = self.receivers.iter().position(|&r| r == receiver)?;
        let s = self.sources.iter().position(|&r| r == source)?;
        Some(&self.blocks[t * self.sources.len() + s])
    }

    /// `((receiver, source), block)` in row-major order.
    pub fn blocks(&self) -> impl Iterator<Item = ((NodeId, NodeId), &Matrix)> {
        let ns = self.sources.len();
        self.blocks
            .iter()
            .enumerate()
            .map(move |(i, m)| ((self.receivers[i / ns], self.sources[i % ns]), m))
    }
}

/// Prints the flattened block matrix; for scalar codes this is just the
/// receivers x sources grid, e.g. `[[0,1],[1,0]]`.
impl fmt::Display for TransferMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ns = self.sources.len();
        write!(f, "[")?;
        for (t, _) in self.receivers.iter().enumerate() {
            for row in 0..self.k {
                if t > 0 || row > 0 {
                    write!(f, ",")?;
                }
                write!(f, "[")?;
                for s in 0..ns {
                    let b = &self.blocks[t * ns + s];
                    for col in 0..self.k {
                        if s > 0 || col > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", b.ring().display(b.get(row, col)))?;
                    }
                }
                write!(f, "]")?;
            }
        }
        write!(f, "]")
    }
}

fn prepare(net: &Network, asg: &Assignment) -> Result<Vec<NodeId>> {
    net.check()?;
    asg.check_against(net)?;
    Ok(net
        .topological_order()
        .expect("validated network is acyclic"))
}

/// Transfer matrix by one dynamic-programming pass in topological order:
/// each node's value is `sum M_e * value(tail(e))` over its in-edges, seeded
/// with identity blocks at the sources.
pub fn transfer(net: &Network, asg: &Assignment) -> Result<TransferMatrix> {
    let order = prepare(net, asg)?;
    let ring = asg.ring();
    let k = asg.k();
    let sources = net.sources();
    let receivers = net.receivers();
    // per node, per source: None stands for a zero block
    let mut value: HashMap<NodeId, Vec<Option<Matrix>>> = HashMap::new();
    for id in order {
        let mut acc: Vec<Option<Matrix>> = vec![None; sources.len()];
        if let Some(s) = sources.iter().position(|&s| s == id) {
            acc[s] = Some(Matrix::identity(ring, k)?);
        }
        for e in net.in_edges(id) {
            let op = asg.get(e).expect("checked assignment");
            for (s, upstream) in value[&e.from].iter().enumerate() {
                if let Some(u) = upstream {
                    let term = op.mul(u)?;
                    acc[s] = Some(match acc[s].take() {
                        Some(a) => a.add(&term)?,
                        None => term,
                    });
                }
            }
        }
        value.insert(id, acc);
    }
    let mut blocks = Vec::with_capacity(receivers.len() * sources.len());
    for t in &receivers {
        for b in &value[t] {
            blocks.push(match b {
                Some(m) => m.clone(),
                None => Matrix::zero(ring, k, k)?,
            });
        }
    }
    Ok(TransferMatrix {
        receivers,
        sources,
        k,
        blocks,
    })
}

/// Transfer matrix straight from the definition: enumerate every path and
/// sum the right-to-left operator products. Exponential in general; used as
/// an independent check of [`transfer`].
pub fn transfer_by_paths(net: &Network, asg: &Assignment) -> Result<TransferMatrix> {
    prepare(net, asg)?;
    let ring = asg.ring();
    let k = asg.k();
    let sources = net.sources();
    let receivers = net.receivers();
    let mut blocks = Vec::with_capacity(receivers.len() * sources.len());
    for &t in &receivers {
        for &s in &sources {
            let mut sum = Matrix::zero(ring, k, k)?;
            for path in net.enumerate_paths(s, t) {
                let mut product: Option<Matrix> = None;
                for e in path {
                    let op = asg.get(e).expect("checked assignment");
                    product = Some(match product {
                        Some(p) => op.mul(&p)?,
                        None => op.clone(),
                    });
                }
                if let Some(p) = product {
                    sum = sum.add(&p)?;
                }
            }
            blocks.push(sum);
        }
    }
    Ok(TransferMatrix {
        receivers,
        sources,
        k,
        blocks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub satisfied: bool,
    pub transfer: TransferMatrix,
    /// `block - expected` for every (receiver, source) pair; expected is the
    /// identity for the demanded source and zero otherwise.
    pub residuals: BTreeMap<(NodeId, NodeId), Matrix>,
}

impl Verification {
    /// Pairs whose residual is nonzero.
    pub fn failures(&self) -> impl Iterator<Item = (&(NodeId, NodeId), &Matrix)> {
        self.residuals.iter().filter(|(_, m)| !m.is_zero())
    }
}

pub fn verify(net: &Network, asg: &Assignment) -> Result<Verification> {
    let tm = transfer(net, asg)?;
    let ring = asg.ring();
    let k = asg.k();
    let identity = Matrix::identity(ring, k)?;
    let zero = Matrix::zero(ring, k, k)?;
    let mut residuals = BTreeMap::new();
    for ((t, s), block) in tm.blocks() {
        let expected = if net.demanded_source(t) == Some(s) {
            &identity
        } else {
            &zero
        };
        residuals.insert((t, s), block.sub(expected)?);
    }
    let satisfied = residuals.values().all(|m| m.is_zero());
    Ok(Verification {
        satisfied,
        transfer: tm,
        residuals,
    })
}
