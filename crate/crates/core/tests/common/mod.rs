#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use netring::linalg::Matrix;
use netring::netmodel::{verify, Assignment, Edge, Network, Node, NodeId};
use netring::rings::{enumerate, parse_ring, Rational, Ring, Value};
use netring::search::{search_scalar, Limits};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(spec: &str) -> Ring {
    parse_ring(spec).unwrap()
}

/// Canonical random element. Rationals and Jacobson coefficients stay
/// small so products of a few factors cannot overflow.
pub fn random_value(ring: &Ring, rng: &mut ChaCha8Rng) -> Value {
    match ring {
        Ring::IntegersMod(m) | Ring::PrimeField(m) => Value::Residue(rng.gen_range(0..*m)),
        Ring::Rationals => {
            Value::Rational(Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=6)).unwrap())
        }
        Ring::Matrix { size, base } => {
            Value::Matrix((0..size * size).map(|_| random_value(base, rng)).collect())
        }
        Ring::Jacobson(base) => {
            let terms = rng.gen_range(0..=3);
            let raw = (0..terms)
                .map(|_| {
                    (
                        (rng.gen_range(0..3), rng.gen_range(0..3)),
                        random_value(base, rng),
                    )
                })
                .collect();
            ring.normalize(Value::Jacobson(raw)).unwrap()
        }
    }
}

/// Payload of the right shape that need not be canonical.
pub fn raw_value(ring: &Ring, rng: &mut ChaCha8Rng) -> Value {
    match ring {
        Ring::IntegersMod(_) | Ring::PrimeField(_) => Value::Residue(rng.gen_range(0..10_000)),
        Ring::Rationals => random_value(ring, rng),
        Ring::Matrix { size, base } => {
            Value::Matrix((0..size * size).map(|_| raw_value(base, rng)).collect())
        }
        Ring::Jacobson(base) => {
            let terms = rng.gen_range(0..=4);
            Value::Jacobson(
                (0..terms)
                    .map(|_| {
                        let c = if rng.gen_bool(0.3) {
                            base.zero()
                        } else {
                            raw_value(base, rng)
                        };
                        ((rng.gen_range(0..3), rng.gen_range(0..3)), c)
                    })
                    .collect(),
            )
        }
    }
}

pub fn random_matrix(ring: &Ring, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::new(
        ring.clone(),
        rows,
        cols,
        (0..rows * cols).map(|_| random_value(ring, rng)).collect(),
    )
    .unwrap()
}

pub fn random_assignment(
    net: &Network,
    ring: &Ring,
    k: usize,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Assignment {
    let mut asg = Assignment::new(ring.clone(), k, n).unwrap();
    for &e in net.edges() {
        let (r, c) = net.edge_kind(e).unwrap().shape(k, n);
        asg.insert(e, random_matrix(ring, r, c, rng));
    }
    asg
}

/// A random valid network with at most `max_edges` edges.
pub fn random_network(rng: &mut ChaCha8Rng, max_edges: usize) -> Network {
    loop {
        let ns = rng.gen_range(1..=2u32);
        let nr = rng.gen_range(0..=2u32);
        let nt = rng.gen_range(1..=2u32);
        let sources: Vec<NodeId> = (1..=ns).collect();
        let relays: Vec<NodeId> = (ns + 1..=ns + nr).collect();
        let receivers: Vec<NodeId> = (ns + nr + 1..=ns + nr + nt).collect();
        let mut candidates = Vec::new();
        for &s in &sources {
            for &x in relays.iter().chain(&receivers) {
                candidates.push(Edge::new(s, x));
            }
        }
        for (i, &a) in relays.iter().enumerate() {
            for &b in relays[i + 1..].iter().chain(&receivers) {
                candidates.push(Edge::new(a, b));
            }
        }
        candidates.shuffle(rng);
        let count = rng.gen_range(1..=max_edges.min(candidates.len()));
        candidates.truncate(count);
        let mut nodes: Vec<Node> = sources
            .iter()
            .map(|&s| Node::source(s, &format!("m{s}")))
            .collect();
        nodes.extend(relays.iter().map(|&r| Node::relay(r)));
        for &t in &receivers {
            let s = sources[rng.gen_range(0..sources.len())];
            nodes.push(Node::receiver(t, &format!("m{s}")));
        }
        let net = Network::new(nodes, candidates);
        if net.validate().is_empty() {
            return net;
        }
    }
}

/// Every scalar assignment of a small network over a small finite ring,
/// filtered by `verify`; no pruning at all. Each solution is rendered as
/// its assignment file so sets compare cheaply.
pub fn naive_solutions(net: &Network, ring: &Ring) -> BTreeSet<String> {
    let values = enumerate(ring, 1 << 16).unwrap();
    let edges = net.edges().to_vec();
    let mut digits = vec![0usize; edges.len()];
    let mut out = BTreeSet::new();
    loop {
        let asg = Assignment::scalar(
            ring,
            edges
                .iter()
                .zip(&digits)
                .map(|(&e, &d)| (e, values[d].clone())),
        )
        .unwrap();
        if verify(net, &asg).unwrap().satisfied {
            out.insert(asg.to_json_string());
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return out;
            }
            digits[i] += 1;
            if digits[i] < values.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

pub fn rendered(solutions: &[Assignment]) -> BTreeSet<String> {
    solutions.iter().map(|a| a.to_json_string()).collect()
}

/// Random bijection on the node ids of `net`.
pub fn random_relabeling(net: &Network, rng: &mut ChaCha8Rng) -> BTreeMap<NodeId, NodeId> {
    let ids: Vec<NodeId> = net.nodes().iter().map(|n| n.id).collect();
    let mut targets: Vec<NodeId> = (0..ids.len() as NodeId).map(|i| 100 + 7 * i).collect();
    targets.shuffle(rng);
    ids.into_iter().zip(targets).collect()
}

pub fn check_axioms(r: &Ring, seed: u64) {
    let mut rng = rng(seed);
    let [a, b, c] = [0; 3].map(|_| random_value(r, &mut rng));
    let add = |x: &_, y: &_| r.add(x, y).unwrap();
    let mul = |x: &_, y: &_| r.mul(x, y).unwrap();
    assert_eq!(add(&a, &b), add(&b, &a));
    assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
    assert_eq!(add(&a, &r.zero()), a);
    assert!(r.is_zero(&add(&a, &r.neg(&a).unwrap())));
    assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
    assert_eq!(mul(&a, &r.one()), a);
    assert_eq!(mul(&r.one(), &a), a);
    assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
    assert_eq!(mul(&add(&a, &b), &c), add(&mul(&a, &c), &mul(&b, &c)));
    assert!(r.is_zero(&mul(&a, &r.zero())));
    for v in [&a, &b, &c] {
        r.check(v).unwrap();
    }
}

pub fn check_normal_form(r: &Ring, seed: u64) {
    let mut rng = rng(seed);
    let raw = raw_value(r, &mut rng);
    let once = r.normalize(raw).unwrap();
    r.check(&once).unwrap();
    assert_eq!(r.normalize(once.clone()).unwrap(), once);
}

pub fn check_rank(field: &Ring, seed: u64) {
    let mut rng = rng(seed);
    let (m, n, p) = (
        rng.gen_range(1..=4),
        rng.gen_range(1..=4),
        rng.gen_range(1..=4),
    );
    let a = random_matrix(field, m, n, &mut rng);
    let b = random_matrix(field, n, p, &mut rng);
    let (ra, rb) = (a.rank().unwrap(), b.rank().unwrap());
    let rab = a.mul(&b).unwrap().rank().unwrap();
    assert!(rab <= ra.min(rb));
    assert!(ra + rb <= rab + n, "Sylvester: {ra} + {rb} - {n} > {rab}");
    assert_eq!(a.transpose().rank().unwrap(), ra);
    assert!(ra <= m.min(n));
}

/// Same verdict and solutions with a random partition count, with and
/// without a solution cap.
pub fn check_partition_independence(seed: u64) {
    let mut rng = rng(seed);
    let net = random_network(&mut rng, 6);
    let spec = ["GF2", "GF3", "Z4", "Z2"][rng.gen_range(0..4)];
    let r = ring(spec);
    let parts = rng.gen_range(2..=8);
    let cap = if rng.gen_bool(0.5) {
        None
    } else {
        Some(rng.gen_range(1..=3))
    };
    let run = |partitions| {
        search_scalar(
            &net,
            &r,
            &Limits {
                max_solutions: cap,
                max_nodes: None,
                partitions,
            },
        )
        .unwrap()
    };
    let (one, many) = (run(1), run(parts));
    assert_eq!(one.verdict, many.verdict);
    assert_eq!(one.solutions, many.solutions);
    if cap.is_none() {
        assert_eq!(one.certificate, many.certificate);
    }
}
