use std::collections::BTreeMap;

use super::{Edge, Network, NodeId};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rings::{Ring, Value};

/// Edge operators for a network: a `k/n` code over `ring`. Scalar codes are
/// the `k = n = 1` case with 1x1 matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    ring: Ring,
    k: usize,
    n: usize,
    entries: BTreeMap<Edge, Matrix>,
}

impl Assignment {
    pub fn new(ring: Ring, k: usize, n: usize) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::Assignment(format!(
                "k and n must be positive, got k={k}, n={n}"
            )));
        }
        Ok(Assignment {
            ring,
            k,
            n,
            entries: BTreeMap::new(),
        })
    }

    /// Scalar assignment from `(edge, value)` pairs.
    pub fn scalar(ring: &Ring, values: impl IntoIterator<Item = (Edge, Value)>) -> Result<Self> {
        let mut asg = Assignment::new(ring.clone(), 1, 1)?;
        for (e, v) in values {
            asg.insert(e, Matrix::scalar(ring, v)?);
        }
        Ok(asg)
    }

    /// Scalar assignment giving every edge of `net` the same value.
    pub fn uniform(net: &Network, ring: &Ring, v: &Value) -> Result<Self> {
        Assignment::scalar(ring, net.edges().iter().map(|&e| (e, v.clone())))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &BTreeMap<Edge, Matrix> {
        &self.entries
    }

    pub fn get(&self, e: Edge) -> Option<&Matrix> {
        self.entries.get(&e)
    }

    /// Sets the operator of `e`; shapes are checked by
    /// [`Assignment::check_against`].
    pub fn insert(&mut self, e: Edge, m: Matrix) -> Option<Matrix> {
        self.entries.insert(e, m)
    }

    /// Checks the shape rule: one entry per network edge, nothing extra,
    /// every operator over `ring` with the shape its edge kind dictates.
    pub fn check_against(&self, net: &Network) -> Result<()> {
        for &e in net.edges() {
            let kind = net
                .edge_kind(e)
                .ok_or_else(|| Error::Assignment(format!("edge {e} has no operator shape")))?;
            let m = self
                .entries
                .get(&e)
                .ok_or_else(|| Error::Assignment(format!("no operator for edge {e}")))?;
            if m.ring() != &self.ring {
                return Err(Error::RingMismatch {
                    expected: self.ring.clone(),
                    found: m.ring().clone(),
                });
            }
            let want = kind.shape(self.k, self.n);
            if m.shape() != want {
                return Err(Error::Shape(format!(
                    "edge {e} needs a {}x{} operator, got {}x{}",
                    want.0,
                    want.1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if let Some(extra) = self.entries.keys().find(|e| !net.edges().contains(e)) {
            return Err(Error::Assignment(format!(
                "edge {extra} is not in the network"
            )));
        }
        Ok(())
    }

    pub fn relabeled(&self, map: &BTreeMap<NodeId, NodeId>) -> Assignment {
        let f = |id: NodeId| *map.get(&id).unwrap_or(&id);
        Assignment {
            entries: self
                .entries
                .iter()
                .map(|(e, m)| (Edge::new(f(e.from), f(e.to)), m.clone()))
                .collect(),
            ..self.clone()
        }
    }
}
