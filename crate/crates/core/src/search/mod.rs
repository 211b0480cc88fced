//! Exhaustive solution search over finite rings.
//!
//! Edges are assigned one at a time in [`plan`] order. After each
//! assignment the block equations that just became fully determined are
//! evaluated through Cayley tables, and the branch is cut on the first
//! violated one. Nothing else is pruned, so an `exhausted-none` verdict
//! comes with a [`Certificate`] showing that every unpruned branch was
//! expanded over its whole domain.

mod engine;
mod plan;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

pub use engine::{Certificate, Limits, Verdict};
pub use plan::{plan, plan_blocks, BlockConstraint, ConstraintPlan};

use engine::{TableConstraint, TableProblem};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::netmodel::{verify, Assignment, Network, NodeId};
use crate::rings::{check_star_star_witness, Element, FiniteTable, Ring, Value};

/// Largest ring (element count) a search builds Cayley tables for.
pub const SEARCH_TABLE_LIMIT: u128 = 4096;

#[derive(Clone, Debug)]
pub struct SearchOutcome<S = Assignment> {
    pub verdict: Verdict,
    pub solutions: Vec<S>,
    pub nodes_visited: u64,
    pub certificate: Certificate,
    pub elapsed: Duration,
}

impl<S> SearchOutcome<S> {
    /// True when the verdict is `exhausted-none` and the node counter
    /// matches a certificate covering the whole space.
    pub fn is_certified_exhaustion(&self) -> bool {
        self.verdict == Verdict::ExhaustedNone
            && self.certificate.covers_full_space()
            && self.certificate.total_visited() == self.nodes_visited
    }
}

impl SearchOutcome<Assignment> {
    /// Plain-text report; solutions are written in the assignment file
    /// format. Wall time is included only on request so reports can be
    /// compared byte for byte.
    pub fn report(&self, with_elapsed: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verdict: {}", self.verdict);
        let _ = writeln!(out, "nodes_visited: {}", self.nodes_visited);
        let _ = writeln!(
            out,
            "full_space_covered: {}",
            self.certificate.covers_full_space()
        );
        if with_elapsed {
            let _ = writeln!(out, "elapsed_ms: {}", self.elapsed.as_millis());
        }
        let _ = writeln!(out, "solutions: {}", self.solutions.len());
        for (i, s) in self.solutions.iter().enumerate() {
            let _ = writeln!(out, "# solution {}", i + 1);
            out.push_str(&s.to_json_string());
        }
        out
    }
}

fn table_for(ring: &Ring, cap: u128) -> Result<FiniteTable> {
    let card = ring
        .cardinality()
        .ok_or_else(|| Error::InfiniteRing(ring.clone()))?;
    let limit = cap.min(SEARCH_TABLE_LIMIT);
    if card > limit {
        return Err(Error::CapExceeded {
            ring: ring.clone(),
            required: card,
            cap: limit,
        });
    }
    FiniteTable::new(ring, limit)
}

fn constraints_of(plan: &ConstraintPlan, one: u32, zero: u32) -> Vec<TableConstraint> {
    let pos = |e| {
        plan.order()
            .iter()
            .position(|x| *x == e)
            .expect("planned edge")
    };
    plan.constraints()
        .iter()
        .map(|c| TableConstraint {
            paths: c
                .paths
                .iter()
                .map(|p| p.iter().map(|&e| pos(e)).collect())
                .collect(),
            target: if c.identity { one } else { zero },
        })
        .collect()
}

fn checks_of(plan: &ConstraintPlan) -> Vec<Vec<usize>> {
    (0..=plan.len())
        .map(|d| plan.checks_at(d).to_vec())
        .collect()
}

/// Searches for scalar solutions of `net` over the finite `ring`. Values
/// are tried in enumeration order, so results are deterministic for given
/// limits and partition count. Every returned solution is re-checked with
/// [`verify`].
pub fn search_scalar(net: &Network, ring: &Ring, limits: &Limits) -> Result<SearchOutcome> {
    let start = Instant::now();
    let plan = plan(net)?;
    let table = table_for(ring, SEARCH_TABLE_LIMIT)?;
    let all: Vec<u32> = (0..table.len() as u32).collect();
    let problem = TableProblem {
        table: &table,
        domains: vec![all; plan.len()],
        constraints: constraints_of(&plan, table.one(), table.zero()),
        checks: checks_of(&plan),
    };
    let raw = engine::run(&problem, limits);
    let mut solutions = Vec::with_capacity(raw.solutions.len());
    for vals in &raw.solutions {
        let asg = Assignment::scalar(
            ring,
            plan.order()
                .iter()
                .zip(vals)
                .map(|(&e, &v)| (e, table.value(v).clone())),
        )?;
        if !verify(net, &asg)?.satisfied {
            return Err(Error::Assignment(format!(
                "search returned a non-solution:\n{}",
                asg.to_json_string()
            )));
        }
        solutions.push(asg);
    }
    Ok(SearchOutcome {
        verdict: raw.verdict,
        solutions,
        nodes_visited: raw.nodes,
        certificate: raw.certificate,
        elapsed: start.elapsed(),
    })
}

fn padded(
    size: usize,
    rows: usize,
    cols: usize,
    entry: impl Fn(usize, usize) -> Value,
    zero: &Value,
) -> Value {
    let mut out = Vec::with_capacity(size * size);
    for r in 0..size {
        for c in 0..size {
            out.push(if r < rows && c < cols {
                entry(r, c)
            } else {
                zero.clone()
            });
        }
    }
    Value::Matrix(out)
}

fn fits(v: &Value, size: usize, rows: usize, cols: usize, base: &Ring) -> bool {
    match v {
        Value::Matrix(entries) => entries
            .iter()
            .enumerate()
            .all(|(i, x)| (i / size < rows && i % size < cols) || base.is_zero(x)),
        _ => false,
    }
}

fn crop(v: &Value, size: usize, rows: usize, cols: usize, base: &Ring) -> Result<Matrix> {
    let Value::Matrix(entries) = v else {
        unreachable!("matrix ring values are matrices")
    };
    let mut out = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            out.push(entries[r * size + c].clone());
        }
    }
    Matrix::new(base.clone(), rows, cols, out)
}

/// Checks the listed blocks straight from path enumeration with matrix
/// arithmetic, independently of the search tables.
fn blocks_hold(net: &Network, asg: &Assignment, blocks: &[(NodeId, NodeId)]) -> Result<bool> {
    let ring = asg.ring();
    let k = asg.k();
    for &(t, s) in blocks {
        let mut sum = Matrix::zero(ring, k, k)?;
        for path in net.enumerate_paths(s, t) {
            let mut prod = asg.get(path[0]).expect("assigned edge").clone();
            for &e in &path[1..] {
                prod = asg.get(e).expect("assigned edge").mul(&prod)?;
            }
            sum = sum.add(&prod)?;
        }
        let ok = if net.demanded_source(t) == Some(s) {
            sum.is_identity()
        } else {
            sum.is_zero()
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches for `k/n` fractional solutions over the finite ring `base`.
///
/// Operators are embedded as zero-padded matrices in `M_max(k,n)(base)`,
/// which must have at most [`SEARCH_TABLE_LIMIT`] elements; each edge
/// ranges over the padded matrices of its shape. With `blocks` set, only
/// those (receiver, source) equations are imposed and only the edges they
/// involve are assigned, so solutions are partial assignments.
pub fn search_fractional(
    net: &Network,
    base: &Ring,
    k: usize,
    n: usize,
    blocks: Option<&[(NodeId, NodeId)]>,
    limits: &Limits,
) -> Result<SearchOutcome> {
    let start = Instant::now();
    Assignment::new(base.clone(), k, n)?;
    let plan = match blocks {
        Some(b) => plan_blocks(net, b)?,
        None => plan(net)?,
    };
    let size = k.max(n);
    let ring = Ring::matrix(size, base.clone())?;
    let table = table_for(&ring, SEARCH_TABLE_LIMIT)?;
    let shapes: Vec<(usize, usize)> = plan
        .order()
        .iter()
        .map(|&e| net.edge_kind(e).expect("validated edge").shape(k, n))
        .collect();
    let domains: Vec<Vec<u32>> = shapes
        .iter()
        .map(|&(r, c)| {
            (0..table.len() as u32)
                .filter(|&i| fits(table.value(i), size, r, c, base))
                .collect()
        })
        .collect();
    let zero = base.zero();
    let one = base.one();
    let identity = padded(
        size,
        k,
        k,
        |r, c| if r == c { one.clone() } else { zero.clone() },
        &zero,
    );
    let identity = table
        .index(&identity)
        .expect("identity block is a ring element");
    let problem = TableProblem {
        table: &table,
        domains,
        constraints: constraints_of(&plan, identity, table.zero()),
        checks: checks_of(&plan),
    };
    let raw = engine::run(&problem, limits);
    let pairs: Vec<(NodeId, NodeId)> = plan
        .constraints()
        .iter()
        .map(|c| (c.receiver, c.source))
        .collect();
    let mut solutions = Vec::with_capacity(raw.solutions.len());
    for vals in &raw.solutions {
        let mut asg = Assignment::new(base.clone(), k, n)?;
        for ((&e, &(r, c)), &v) in plan.order().iter().zip(&shapes).zip(vals) {
            asg.insert(e, crop(table.value(v), size, r, c, base)?);
        }
        let ok = match blocks {
            None => verify(net, &asg)?.satisfied,
            Some(_) => blocks_hold(net, &asg, &pairs)?,
        };
        if !ok {
            return Err(Error::Assignment(format!(
                "search returned a non-solution:\n{}",
                asg.to_json_string()
            )));
        }
        solutions.push(asg);
    }
    Ok(SearchOutcome {
        verdict: raw.verdict,
        solutions,
        nodes_visited: raw.nodes,
        certificate: raw.certificate,
        elapsed: start.elapsed(),
    })
}

/// Elements with `d1 r1 = d2 r2 = 1` and `d1 r2 = d2 r1 = 0`: two messages
/// packed losslessly into one channel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarStar {
    pub r1: Element,
    pub r2: Element,
    pub d1: Element,
    pub d2: Element,
}

/// Exhaustive scan for [`StarStar`] witnesses, assigning `r1, d1, r2, d2`
/// in that order and cutting as soon as an equation is determined.
pub fn search_star_star(ring: &Ring, cap: u128) -> Result<SearchOutcome<StarStar>> {
    let start = Instant::now();
    ring.require_within(cap)?;
    let table = table_for(ring, cap)?;
    let all: Vec<u32> = (0..table.len() as u32).collect();
    let (r1, d1, r2, d2) = (0, 1, 2, 3);
    let eq = |right: usize, left: usize, target: u32| TableConstraint {
        paths: vec![vec![right, left]],
        target,
    };
    let problem = TableProblem {
        table: &table,
        domains: vec![all; 4],
        constraints: vec![
            eq(r1, d1, table.one()),
            eq(r2, d1, table.zero()),
            eq(r2, d2, table.one()),
            eq(r1, d2, table.zero()),
        ],
        checks: vec![vec![], vec![], vec![0], vec![1], vec![2, 3]],
    };
    let raw = engine::run(&problem, &Limits::default());
    let el = |i: u32| Element::new(ring.clone(), table.value(i).clone());
    let mut solutions = Vec::with_capacity(raw.solutions.len());
    for v in &raw.solutions {
        let w = StarStar {
            r1: el(v[r1])?,
            d1: el(v[d1])?,
            r2: el(v[r2])?,
            d2: el(v[d2])?,
        };
        if !check_star_star_witness(&w.r1, &w.r2, &w.d1, &w.d2)? {
            return Err(Error::Assignment("search returned a non-witness".into()));
        }
        solutions.push(w);
    }
    Ok(SearchOutcome {
        verdict: raw.verdict,
        solutions,
        nodes_visited: raw.nodes,
        certificate: raw.certificate,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rings::parse_ring;

    fn ring(s: &str) -> Ring {
        parse_ring(s).unwrap()
    }

    #[test]
    fn butterfly_over_gf2_has_the_xor_code() {
        let out = search_scalar(&catalog::butterfly(), &ring("GF2"), &Limits::default()).unwrap();
        assert_eq!(out.verdict, Verdict::SolutionsFound);
        assert_eq!(out.solutions.len(), 1);
        let ones =
            Assignment::uniform(&catalog::butterfly(), &ring("GF2"), &Value::Residue(1)).unwrap();
        assert_eq!(out.solutions[0], ones);
        assert!(out.certificate.covers_full_space());
    }

    #[test]
    fn wingless_butterfly_has_no_scalar_code() {
        for r in ["GF2", "Z4", "GF3"] {
            let out = search_scalar(&catalog::wingless_butterfly(), &ring(r), &Limits::default())
                .unwrap();
            assert!(out.is_certified_exhaustion(), "{r}");
        }
    }

    #[test]
    fn infinite_and_oversized_rings_are_refused() {
        let net = catalog::butterfly();
        assert!(matches!(
            search_scalar(&net, &Ring::Rationals, &Limits::default()),
            Err(Error::InfiniteRing(_))
        ));
        assert!(matches!(
            search_scalar(&net, &ring("M2(Z9)"), &Limits::default()),
            Err(Error::CapExceeded { required: 6561, .. })
        ));
    }

    #[test]
    fn budget_is_a_verdict() {
        let out = search_scalar(
            &catalog::digital_network(),
            &ring("GF3"),
            &Limits {
                max_nodes: Some(10),
                ..Limits::default()
            },
        )
        .unwrap();
        assert_eq!(out.verdict, Verdict::BudgetExceeded);
        assert_eq!(out.nodes_visited, 10);
    }

    #[test]
    fn fractional_simple_satellite() {
        let net = catalog::simple_satellite();
        let half = search_fractional(
            &net,
            &ring("GF2"),
            1,
            2,
            None,
            &Limits {
                max_solutions: Some(1),
                ..Limits::default()
            },
        )
        .unwrap();
        assert_eq!(half.verdict, Verdict::SolutionsFound);
        let blocks = [(5, 1), (4, 2), (5, 2)];
        let two_thirds =
            search_fractional(&net, &ring("GF2"), 2, 3, Some(&blocks), &Limits::default()).unwrap();
        assert!(two_thirds.is_certified_exhaustion());
        assert_eq!(two_thirds.certificate.domain_sizes, vec![64; 4]);
    }

    #[test]
    fn star_star_has_no_witness_in_small_finite_rings() {
        for r in ["GF2", "Z6", "M2(GF2)"] {
            let out = search_star_star(&ring(r), 10_000).unwrap();
            assert!(out.is_certified_exhaustion(), "{r}");
        }
        assert!(matches!(
            search_star_star(&ring("Z6"), 5),
            Err(Error::CapExceeded { .. })
        ));
    }
}
