//! Depth-first search over Cayley-table indices.

use std::fmt;

use crate::rings::FiniteTable;

/// A product-sum equation over variables: the sum over `paths` of
/// `v[p_m] * ... * v[p_1]` must equal `target`.
#[derive(Clone, Debug)]
pub(crate) struct TableConstraint {
    pub paths: Vec<Vec<usize>>,
    pub target: u32,
}

#[derive(Clone, Debug)]
pub(crate) struct TableProblem<'t> {
    pub table: &'t FiniteTable,
    /// Per variable, in assignment order.
    pub domains: Vec<Vec<u32>>,
    pub constraints: Vec<TableConstraint>,
    /// `checks[d]` lists constraints determined once `d` variables are set.
    pub checks: Vec<Vec<usize>>,
}

/// Per-depth node counts of an explored search tree.
///
/// Depth `i` (0-based) counts nodes that assign variable `i`. A tree was
/// explored in full exactly when every surviving node at depth `i - 1` had
/// all `domain_sizes[i]` children visited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub domain_sizes: Vec<u64>,
    pub visited: Vec<u64>,
    pub pruned: Vec<u64>,
    /// A constraint with no variables failed, so the tree is empty.
    pub root_pruned: bool,
}

impl Certificate {
    fn new(domain_sizes: Vec<u64>) -> Self {
        let len = domain_sizes.len();
        Certificate {
            domain_sizes,
            visited: vec![0; len],
            pruned: vec![0; len],
            root_pruned: false,
        }
    }

    pub fn total_visited(&self) -> u64 {
        self.visited.iter().sum()
    }

    /// Leaves that passed every check.
    pub fn survivors(&self) -> u64 {
        match self.visited.last() {
            _ if self.root_pruned => 0,
            None => 1,
            Some(v) => v - self.pruned.last().unwrap(),
        }
    }

    pub fn covers_full_space(&self) -> bool {
        if self.root_pruned {
            return self.total_visited() == 0;
        }
        let mut expected = Some(1u64);
        for i in 0..self.visited.len() {
            expected = expected.and_then(|x| x.checked_mul(self.domain_sizes[i]));
            if expected != Some(self.visited[i]) {
                return false;
            }
            expected = Some(self.visited[i] - self.pruned[i]);
        }
        true
    }

    fn absorb(&mut self, other: &Certificate) {
        for (a, b) in self.visited.iter_mut().zip(&other.visited) {
            *a += b;
        }
        for (a, b) in self.pruned.iter_mut().zip(&other.pruned) {
            *a += b;
        }
        self.root_pruned |= other.root_pruned;
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "depth visited pruned domain")?;
        for i in 0..self.visited.len() {
            write!(
                f,
                "\n{:>5} {:>7} {:>6} {:>6}",
                i + 1,
                self.visited[i],
                self.pruned[i],
                self.domain_sizes[i]
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    SolutionsFound,
    ExhaustedNone,
    BudgetExceeded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::SolutionsFound => "solutions-found",
            Verdict::ExhaustedNone => "exhausted-none",
            Verdict::BudgetExceeded => "budget-exceeded",
        })
    }
}

/// Search limits. `max_nodes` counts search-tree nodes (one per variable
/// assignment tried) and is split evenly across partitions so results stay
/// deterministic for a given partition count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_solutions: Option<usize>,
    pub max_nodes: Option<u64>,
    /// Number of disjoint subtrees, split on the first variable's values
    /// and run on separate threads.
    pub partitions: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_solutions: None,
            max_nodes: None,
            partitions: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stop {
    Budget,
    Enough,
}

#[derive(Debug)]
pub(crate) struct RawOutcome {
    pub verdict: Verdict,
    pub solutions: Vec<Vec<u32>>,
    pub nodes: u64,
    pub certificate: Certificate,
}

struct Part<'a, 'p> {
    problem: &'a TableProblem<'p>,
    first: &'a [u32],
    vals: Vec<u32>,
    cert: Certificate,
    nodes: u64,
    max_nodes: Option<u64>,
    max_solutions: Option<usize>,
    solutions: Vec<Vec<u32>>,
    stop: Option<Stop>,
}

impl Part<'_, '_> {
    fn holds(&self, c: &TableConstraint) -> bool {
        let t = self.problem.table;
        let mut sum = t.zero();
        for path in &c.paths {
            let mut prod = self.vals[path[0]];
            for &v in &path[1..] {
                prod = t.mul(self.vals[v], prod);
            }
            sum = t.add(sum, prod);
        }
        sum == c.target
    }

    fn checks_pass(&self, depth: usize) -> bool {
        self.problem.checks[depth]
            .iter()
            .all(|&c| self.holds(&self.problem.constraints[c]))
    }

    fn run(&mut self) {
        if !self.checks_pass(0) {
            self.cert.root_pruned = true;
            return;
        }
        self.dfs(0);
    }

    fn dfs(&mut self, depth: usize) {
        if depth == self.vals.len() {
            self.solutions.push(self.vals.clone());
            if self
                .max_solutions
                .is_some_and(|m| self.solutions.len() >= m)
            {
                self.stop = Some(Stop::Enough);
            }
            return;
        }
        let domain: &[u32] = if depth == 0 {
            self.first
        } else {
            &self.problem.domains[depth]
        };
        for &v in domain {
            if self.max_nodes.is_some_and(|m| self.nodes >= m) {
                self.stop = Some(Stop::Budget);
                return;
            }
            self.nodes += 1;
            self.cert.visited[depth] += 1;
            self.vals[depth] = v;
            if self.checks_pass(depth + 1) {
                self.dfs(depth + 1);
                if self.stop.is_some() {
                    return;
                }
            } else {
                self.cert.pruned[depth] += 1;
            }
        }
    }
}

fn split<T>(items: &[T], parts: usize) -> Vec<&[T]> {
    let base = items.len() / parts;
    let extra = items.len() % parts;
    let mut out = Vec::with_capacity(parts);
    let mut at = 0;
    for i in 0..parts {
        let len = base + usize::from(i < extra);
        out.push(&items[at..at + len]);
        at += len;
    }
    out
}

/// Runs the search, possibly split into partitions on the first variable.
/// Partition results are merged in value order, as if the subtrees had been
/// explored one after another: solutions are concatenated (then truncated
/// to `max_solutions`), and a partition that ran out of budget ends the
/// merge with a budget verdict.
pub(crate) fn run(problem: &TableProblem<'_>, limits: &Limits) -> RawOutcome {
    let sizes: Vec<u64> = problem.domains.iter().map(|d| d.len() as u64).collect();
    let first: &[u32] = problem.domains.first().map_or(&[], |d| d.as_slice());
    let parts = if first.is_empty() {
        1
    } else {
        limits.partitions.clamp(1, first.len())
    };
    let chunks = split(first, parts);
    let budgets: Vec<Option<u64>> = match limits.max_nodes {
        None => vec![None; parts],
        Some(m) => (0..parts as u64)
            .map(|i| Some(m / parts as u64 + u64::from(i < m % parts as u64)))
            .collect(),
    };
    let make = |i: usize| Part {
        problem,
        first: chunks[i],
        vals: vec![0; problem.domains.len()],
        cert: Certificate::new(sizes.clone()),
        nodes: 0,
        max_nodes: budgets[i],
        max_solutions: limits.max_solutions,
        solutions: Vec::new(),
        stop: None,
    };
    let finished: Vec<Part> = if parts == 1 {
        let mut p = make(0);
        p.run();
        vec![p]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..parts)
                .map(|i| {
                    let mut p = make(i);
                    scope.spawn(move || {
                        p.run();
                        p
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search thread panicked"))
                .collect()
        })
    };

    let mut certificate = Certificate::new(sizes);
    let mut nodes = 0;
    let mut solutions = Vec::new();
    let mut verdict = None;
    for p in finished {
        nodes += p.nodes;
        certificate.absorb(&p.cert);
        if verdict.is_some() {
            continue;
        }
        solutions.extend(p.solutions);
        if let Some(m) = limits.max_solutions {
            if solutions.len() >= m {
                solutions.truncate(m);
                verdict = Some(Verdict::SolutionsFound);
                continue;
            }
        }
        if p.stop == Some(Stop::Budget) {
            verdict = Some(Verdict::BudgetExceeded);
        }
    }
    let verdict = verdict.unwrap_or(if solutions.is_empty() {
        Verdict::ExhaustedNone
    } else {
        Verdict::SolutionsFound
    });
    RawOutcome {
        verdict,
        solutions,
        nodes,
        certificate,
    }
}
