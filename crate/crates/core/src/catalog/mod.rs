//! Built-in networks and their known solutions.
//!
//! # Topologies
//!
//! The two separation networks are given only through their demand
//! equations, so their edge sets are read off the path products: every
//! monomial `r_{a,b} ... r_{c,d}` in an equation for (source, receiver) is a
//! path, and the union of those paths is the graph. Both reconstructions
//! were checked by regenerating all twelve equations from the graph.
//!
//! * [`digital_network`]: sources 1 (x), 2 (y), 3 (z); relays 4, 5, 6, 8;
//!   receivers 7 (z), 9 (x), 10 (y), 11 (x). Operators are indexed
//!   tail-first, `r_{i,j}` is the edge `i -> j`. The y-to-10 equation
//!   writes one term as `r_{6,10} r_{6,2}`; the graph only has `2 -> 6`, so
//!   that factor is read as `r_{2,6}` (the fractional version repeats the
//!   same index slip).
//! * [`analogue_network`]: sources 1 (a), 2 (b), 3 (c); relays 4..7;
//!   receivers 8 (c), 9 (b), 10 (a), 11 (c). Here the operators are indexed
//!   head-first, `r_{4,1}` is the edge `1 -> 4`; files and APIs always use
//!   tail-to-head edges. The 3/4 solution lists the c-to-4 operator as
//!   `4 x 3`, which is the shape composition requires.
//!
//! The Cond(k) family [`capacity_network`] has k + 1 sources all feeding k
//! relays, which all feed k receivers; receiver t demands message t.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::netmodel::{Assignment, Edge, Network, Node, NodeId};
use crate::rings::{parse_ring, Ring};

const DIGITAL_3_4: &str = include_str!("../../data/digital-3-4.json");
const ANALOGUE_3_4: &str = include_str!("../../data/analogue-3-4.json");
const ANALOGUE_SCALAR: &str = include_str!("../../data/analogue-scalar.json");
const SIMPLE_1_2: &str = include_str!("../../data/simple-1-2.json");

fn edges(pairs: &[(NodeId, NodeId)]) -> Vec<Edge> {
    pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect()
}

/// Two ground stations exchanging messages through a satellite, each also
/// hearing its own transmission over a direct "wing".
pub fn butterfly() -> Network {
    Network::new(
        vec![
            Node::source(1, "w"),
            Node::source(2, "e"),
            Node::relay(3),
            Node::receiver(4, "e"),
            Node::receiver(5, "w"),
        ],
        edges(&[(1, 3), (2, 3), (3, 4), (3, 5), (1, 4), (2, 5)]),
    )
}

/// The butterfly without wings: both messages must squeeze through the
/// satellite, receiver i wanting message i.
pub fn wingless_butterfly() -> Network {
    Network::new(
        vec![
            Node::source(1, "m1"),
            Node::source(2, "m2"),
            Node::relay(3),
            Node::receiver(4, "m1"),
            Node::receiver(5, "m2"),
        ],
        edges(&[(1, 3), (2, 3), (3, 4), (3, 5)]),
    )
}

/// The Cond(k) network: sources `1..=k+1`, relays `k+2..=2k+1`, receivers
/// `2k+2..=3k+1`. Receiver `2k+1+t` demands `m<t>`; message `m<k+1>` is
/// demanded by no one.
pub fn capacity_network(k: usize) -> Result<Network> {
    if k == 0 {
        return Err(Error::Shape("capacity network needs k >= 1".into()));
    }
    let k = k as NodeId;
    let source = |i: NodeId| i;
    let relay = |j: NodeId| k + 1 + j;
    let receiver = |t: NodeId| 2 * k + 1 + t;
    let mut nodes: Vec<Node> = (1..=k + 1)
        .map(|i| Node::source(source(i), &format!("m{i}")))
        .collect();
    nodes.extend((1..=k).map(|j| Node::relay(relay(j))));
    nodes.extend((1..=k).map(|t| Node::receiver(receiver(t), &format!("m{t}"))));
    let mut es = Vec::new();
    for j in 1..=k {
        for i in 1..=k + 1 {
            es.push(Edge::new(source(i), relay(j)));
        }
    }
    for t in 1..=k {
        for j in 1..=k {
            es.push(Edge::new(relay(j), receiver(t)));
        }
    }
    Ok(Network::new(nodes, es))
}

/// Solvable exactly when 1 + 1 = 0 (over Dedekind finite rings).
pub fn digital_network() -> Network {
    Network::new(
        vec![
            Node::source(1, "x"),
            Node::source(2, "y"),
            Node::source(3, "z"),
            Node::relay(4),
            Node::relay(5),
            Node::relay(6),
            Node::receiver(7, "z"),
            Node::relay(8),
            Node::receiver(9, "x"),
            Node::receiver(10, "y"),
            Node::receiver(11, "x"),
        ],
        edges(&[
            (1, 4),
            (1, 6),
            (2, 4),
            (2, 5),
            (2, 6),
            (3, 5),
            (3, 6),
            (3, 11),
            (4, 7),
            (4, 8),
            (5, 8),
            (5, 9),
            (6, 7),
            (6, 9),
            (6, 10),
            (8, 10),
            (8, 11),
        ]),
    )
}

/// Solvable exactly when 1 + 1 is invertible (over Dedekind finite rings).
pub fn analogue_network() -> Network {
    Network::new(
        vec![
            Node::source(1, "a"),
            Node::source(2, "b"),
            Node::source(3, "c"),
            Node::relay(4),
            Node::relay(5),
            Node::relay(6),
            Node::relay(7),
            Node::receiver(8, "c"),
            Node::receiver(9, "b"),
            Node::receiver(10, "a"),
            Node::receiver(11, "c"),
        ],
        edges(&[
            (1, 4),
            (1, 5),
            (1, 6),
            (2, 4),
            (2, 5),
            (2, 7),
            (3, 4),
            (3, 6),
            (3, 7),
            (4, 8),
            (4, 9),
            (4, 10),
            (5, 8),
            (5, 11),
            (6, 9),
            (6, 11),
            (7, 10),
            (7, 11),
        ]),
    )
}

/// Satellite exchange where only one ground station has a wing; capacity
/// 1/2.
pub fn simple_satellite() -> Network {
    Network::new(
        vec![
            Node::source(1, "x"),
            Node::source(2, "y"),
            Node::relay(3),
            Node::receiver(4, "y"),
            Node::receiver(5, "x"),
        ],
        edges(&[(1, 3), (2, 3), (3, 4), (3, 5), (1, 4)]),
    )
}

/// How a known assignment is produced for a given ring.
#[derive(Clone, Debug)]
pub enum AssignmentSource {
    /// Every edge carries the integer `c`.
    Uniform(i64),
    /// Every edge carries `default` except the listed ones.
    Sparse {
        default: i64,
        values: Vec<(Edge, i64)>,
    },
    /// Embedded assignment file, re-read in the requested ring.
    Data(&'static str),
}

#[derive(Clone, Debug)]
pub struct KnownAssignment {
    pub label: &'static str,
    pub source: AssignmentSource,
    /// `(ring, satisfied)` pairs the test suite re-checks. The first ring
    /// is the one used when emitting the assignment as a file.
    pub expectations: Vec<(Ring, bool)>,
}

impl KnownAssignment {
    fn new(label: &'static str, source: AssignmentSource, expectations: &[(&str, bool)]) -> Self {
        KnownAssignment {
            label,
            source,
            expectations: expectations
                .iter()
                .map(|(r, ok)| (parse_ring(r).expect("catalog ring specs are valid"), *ok))
                .collect(),
        }
    }

    pub fn instantiate(&self, net: &Network, ring: &Ring) -> Result<Assignment> {
        match &self.source {
            AssignmentSource::Uniform(c) => Assignment::uniform(net, ring, &ring.from_int(*c)?),
            AssignmentSource::Sparse { default, values } => {
                let mut out = Vec::with_capacity(net.edges().len());
                for &e in net.edges() {
                    let c = values
                        .iter()
                        .find(|(x, _)| *x == e)
                        .map_or(*default, |(_, c)| *c);
                    out.push((e, ring.from_int(c)?));
                }
                Assignment::scalar(ring, out)
            }
            AssignmentSource::Data(text) => Assignment::from_json_str_in(text, ring),
        }
    }

    pub fn primary_ring(&self) -> &Ring {
        &self.expectations[0].0
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub network: Network,
    pub known: Vec<KnownAssignment>,
}

fn entry(name: &str, network: Network, known: Vec<KnownAssignment>) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        network,
        known,
    }
}

fn capacity_entry(k: usize) -> Result<CatalogEntry> {
    let network = capacity_network(k)?;
    let k = k as NodeId;
    // relay j forwards source j, receiver t listens to relay t
    let mut values = Vec::new();
    for j in 1..=k {
        values.push((Edge::new(j, k + 1 + j), 1));
        values.push((Edge::new(k + 1 + j, 2 * k + 1 + j), 1));
    }
    Ok(entry(
        &format!("capacity_network_{k}"),
        network,
        vec![KnownAssignment::new(
            "identity-routing",
            AssignmentSource::Sparse { default: 0, values },
            &[("GF2", true), ("GF3", true), ("Q", true)],
        )],
    ))
}

/// Every built-in entry, in listing order.
pub fn entries() -> Vec<CatalogEntry> {
    use AssignmentSource::*;
    vec![
        entry(
            "butterfly",
            butterfly(),
            vec![
                KnownAssignment::new(
                    "all-ones",
                    Uniform(1),
                    &[("GF2", true), ("GF3", false), ("Q", false)],
                ),
                KnownAssignment::new(
                    "wings-minus-one",
                    Sparse {
                        default: 1,
                        values: vec![(Edge::new(1, 4), -1), (Edge::new(2, 5), -1)],
                    },
                    &[("Q", true), ("GF3", true), ("GF2", true)],
                ),
            ],
        ),
        entry(
            "wingless_butterfly",
            wingless_butterfly(),
            vec![KnownAssignment::new(
                "route-first",
                Sparse {
                    default: 0,
                    values: vec![(Edge::new(1, 3), 1), (Edge::new(3, 4), 1)],
                },
                &[("GF2", false), ("Q", false)],
            )],
        ),
        capacity_entry(1).expect("k = 1 is valid"),
        capacity_entry(2).expect("k = 2 is valid"),
        entry(
            "digital_network",
            digital_network(),
            vec![
                KnownAssignment::new(
                    "all-ones",
                    Uniform(1),
                    &[("GF2", true), ("GF3", false), ("Q", false)],
                ),
                KnownAssignment::new(
                    "digital-3-4",
                    Data(DIGITAL_3_4),
                    &[("Q", true), ("GF2", true)],
                ),
            ],
        ),
        entry(
            "analogue_network",
            analogue_network(),
            vec![
                KnownAssignment::new(
                    "paper-scalar",
                    Data(ANALOGUE_SCALAR),
                    &[("Q", true), ("GF3", true)],
                ),
                KnownAssignment::new("analogue-3-4", Data(ANALOGUE_3_4), &[("GF2", true)]),
            ],
        ),
        entry(
            "simple_satellite",
            simple_satellite(),
            vec![KnownAssignment::new(
                "paper-1-2",
                Data(SIMPLE_1_2),
                &[("GF2", true), ("GF3", true), ("Q", true)],
            )],
        ),
    ]
}

pub fn names() -> Vec<String> {
    entries().into_iter().map(|e| e.name).collect()
}

/// Looks up a listed entry, or any `capacity_network_<k>` with k >= 1.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    if let Some(e) = entries().into_iter().find(|e| e.name == name) {
        return Ok(e);
    }
    if let Some(k) = name
        .strip_prefix("capacity_network_")
        .and_then(|k| k.parse::<usize>().ok())
    {
        if k >= 1 {
            return capacity_entry(k);
        }
    }
    Err(Error::UnknownCatalogEntry(name.to_string()))
}

/// Writes `<name>.network.json` plus one `<name>.<label>.json` per known
/// assignment (in its primary ring) into `dir`, creating it if needed.
pub fn emit(name: &str, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let entry = lookup(name).map_err(|e| std::io::Error::new(std::io::ErrorKind::NotFound, e))?;
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let path = dir.join(format!("{name}.network.json"));
    fs::write(&path, entry.network.to_json_string())?;
    written.push(path);
    for known in &entry.known {
        let asg = known
            .instantiate(&entry.network, known.primary_ring())
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
        let path = dir.join(format!("{name}.{}.json", known.label));
        fs::write(&path, asg.to_json_string())?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::verify;

    #[test]
    fn every_entry_validates() {
        for e in entries() {
            assert!(e.network.validate().is_empty(), "{}", e.name);
        }
        for k in 1..=6 {
            let net = capacity_network(k).unwrap();
            assert!(net.validate().is_empty());
            assert_eq!(net.edges().len(), (k + 1) * k + k * k);
        }
        assert!(capacity_network(0).is_err());
    }

    #[test]
    fn known_assignments_meet_their_expectations() {
        for e in entries() {
            for known in &e.known {
                for (ring, expected) in &known.expectations {
                    let asg = known.instantiate(&e.network, ring).unwrap();
                    let v = verify(&e.network, &asg).unwrap();
                    assert_eq!(
                        v.satisfied, *expected,
                        "{} / {} over {ring}",
                        e.name, known.label
                    );
                }
            }
        }
    }

    #[test]
    fn data_files_are_canonical() {
        for text in [DIGITAL_3_4, ANALOGUE_3_4, ANALOGUE_SCALAR, SIMPLE_1_2] {
            assert_eq!(
                Assignment::from_json_str(text).unwrap().to_json_string(),
                text
            );
        }
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(names().len(), 7);
        assert!(lookup("digital_network").is_ok());
        assert_eq!(
            lookup("capacity_network_5").unwrap().network.edges().len(),
            55
        );
        assert!(matches!(
            lookup("capacity_network_0"),
            Err(Error::UnknownCatalogEntry(_))
        ));
        assert!(matches!(
            lookup("nosuch"),
            Err(Error::UnknownCatalogEntry(_))
        ));
    }
}
