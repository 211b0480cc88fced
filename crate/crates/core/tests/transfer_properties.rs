mod common;

use common::*;
use netring::catalog;
use netring::netmodel::{transfer, transfer_by_paths, verify, Assignment, Network};

const RINGS: [&str; 6] = ["GF2", "GF3", "Z4", "Q", "M2(GF2)", "J(GF2)"];

fn catalog_networks() -> Vec<Network> {
    catalog::entries().into_iter().map(|e| e.network).collect()
}

#[test]
fn dynamic_programming_matches_path_sums() {
    let mut rng = rng(1);
    for net in catalog_networks() {
        for spec in RINGS {
            let r = ring(spec);
            for _ in 0..20 {
                let asg = random_assignment(&net, &r, 1, 1, &mut rng);
                assert_eq!(
                    transfer(&net, &asg).unwrap(),
                    transfer_by_paths(&net, &asg).unwrap(),
                    "{spec}"
                );
            }
        }
        for (k, n) in [(2, 3), (3, 2)] {
            let asg = random_assignment(&net, &ring("GF3"), k, n, &mut rng);
            assert_eq!(
                transfer(&net, &asg).unwrap(),
                transfer_by_paths(&net, &asg).unwrap()
            );
        }
    }
}

#[test]
fn dynamic_programming_matches_path_sums_on_random_networks() {
    let mut rng = rng(2);
    for _ in 0..200 {
        let net = random_network(&mut rng, 8);
        let asg = random_assignment(&net, &ring("J(GF3)"), 1, 1, &mut rng);
        assert_eq!(
            transfer(&net, &asg).unwrap(),
            transfer_by_paths(&net, &asg).unwrap()
        );
    }
}

#[test]
fn relabeling_nodes_permutes_blocks() {
    let mut rng = rng(3);
    for net in catalog_networks() {
        let map = random_relabeling(&net, &mut rng);
        let moved = net.relabeled(&map);
        assert!(moved.validate().is_empty());
        for spec in ["GF3", "M2(GF2)"] {
            let asg = random_assignment(&net, &ring(spec), 1, 1, &mut rng);
            let before = transfer(&net, &asg).unwrap();
            let after = transfer(&moved, &asg.relabeled(&map)).unwrap();
            for ((t, s), block) in before.blocks() {
                assert_eq!(after.block(map[&t], map[&s]), Some(block));
            }
            assert_eq!(
                verify(&net, &asg).unwrap().satisfied,
                verify(&moved, &asg.relabeled(&map)).unwrap().satisfied
            );
        }
    }
}

#[test]
fn scaling_a_source_scales_its_column() {
    let mut rng = rng(4);
    for net in catalog_networks() {
        for (spec, k, n) in [("J(GF2)", 1, 1), ("M2(GF3)", 1, 1), ("GF5", 2, 3)] {
            let r = ring(spec);
            let asg = random_assignment(&net, &r, k, n, &mut rng);
            let base = transfer(&net, &asg).unwrap();
            let s = net.sources()[0];
            let c = random_matrix(&r, k, k, &mut rng);
            let mut scaled = asg.clone();
            for e in net.out_edges(s) {
                let m = asg.get(e).unwrap().mul(&c).unwrap();
                scaled.insert(e, m);
            }
            let after = transfer(&net, &scaled).unwrap();
            for ((t, src), block) in base.blocks() {
                let expected = if src == s {
                    block.mul(&c).unwrap()
                } else {
                    block.clone()
                };
                assert_eq!(after.block(t, src).unwrap(), &expected);
            }
        }
    }
}

#[test]
fn emitted_catalog_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("netring-emit-{}", std::process::id()));
    for name in catalog::names() {
        let files = catalog::emit(&name, &dir).unwrap();
        let entry = catalog::lookup(&name).unwrap();
        let net_text = std::fs::read_to_string(&files[0]).unwrap();
        let net = Network::from_json_str(&net_text).unwrap();
        assert_eq!(net, entry.network);
        assert_eq!(net.to_json_string(), net_text);
        assert_eq!(files.len(), 1 + entry.known.len());
        for (path, known) in files[1..].iter().zip(&entry.known) {
            let text = std::fs::read_to_string(path).unwrap();
            let asg = Assignment::from_json_str(&text).unwrap();
            assert_eq!(asg.to_json_string(), text);
            let (ring, expected) = &known.expectations[0];
            assert_eq!(asg.ring(), ring);
            assert_eq!(
                verify(&net, &asg).unwrap().satisfied,
                *expected,
                "{}",
                path.display()
            );
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
