//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p netring --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use netring::catalog;
use netring::netmodel::{verify, Assignment, Network};
use netring::rings::{check_capacity_violation_witness, theorem1_battery, Element};
use netring::search::{search_fractional, search_scalar, Limits};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn known(name: &str, label: &str, spec: &str) -> (Network, Assignment) {
    let entry = catalog::lookup(name).unwrap();
    let k = entry.known.iter().find(|k| k.label == label).unwrap();
    let asg = k.instantiate(&entry.network, &ring(spec)).unwrap();
    (entry.network, asg)
}

fn satisfied(net: &Network, asg: &Assignment) -> Result<(), String> {
    let v = verify(net, asg).map_err(|e| e.to_string())?;
    if v.satisfied {
        return Ok(());
    }
    let failures: Vec<String> = v
        .failures()
        .map(|((t, s), m)| format!("block ({t},{s}) residual {m}"))
        .collect();
    Err(failures.join("; "))
}

fn exhausted(net: &Network, spec: &str, partitions: usize) -> Result<(u64, Duration), String> {
    let out = search_scalar(
        net,
        &ring(spec),
        &Limits {
            partitions,
            ..Limits::default()
        },
    )
    .map_err(|e| e.to_string())?;
    ensure(
        out.is_certified_exhaustion(),
        format!("{spec}: verdict {} without a full certificate", out.verdict),
    )?;
    Ok((out.nodes_visited, out.elapsed))
}

fn butterfly() -> Outcome {
    let start = Instant::now();
    let (net, asg) = known("butterfly", "all-ones", "GF2");
    satisfied(&net, &asg)?;
    let t = verify(&net, &asg).unwrap().transfer.to_string();
    ensure(t == "[[0,1],[1,0]]", format!("transfer {t}"))?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), format!("took {took:?}"))?;
    Ok(format!("transfer {t} in {took:?}"))
}

fn theorem4() -> Outcome {
    let (net, asg) = known("digital_network", "all-ones", "GF2");
    satisfied(&net, &asg)?;
    let (nodes, one) = exhausted(&net, "GF3", 1)?;
    ensure(
        one < Duration::from_secs(600),
        format!("single partition took {one:?}"),
    )?;
    let (_, eight) = exhausted(&net, "GF3", 8)?;
    ensure(
        eight < Duration::from_secs(120),
        format!("8 partitions took {eight:?}"),
    )?;
    Ok(format!(
        "GF3 exhausted-none, {nodes} nodes, {one:?} (1 partition), {eight:?} (8 partitions)"
    ))
}

fn theorem5() -> Outcome {
    for spec in ["Q", "GF3"] {
        let (net, asg) = known("analogue_network", "paper-scalar", spec);
        satisfied(&net, &asg).map_err(|e| format!("{spec}: {e}"))?;
    }
    let (nodes, took) = exhausted(&catalog::analogue_network(), "GF2", 1)?;
    ensure(nodes <= 1 << 17, format!("{nodes} nodes"))?;
    ensure(took < Duration::from_secs(5), format!("took {took:?}"))?;
    Ok(format!("GF2 exhausted-none, {nodes} nodes, {took:?}"))
}

fn fractional(name: &str, label: &str, rings: &[&str]) -> Outcome {
    for spec in rings {
        let (net, asg) = known(name, label, spec);
        ensure((asg.k(), asg.n()) == (3, 4), "expected a 3/4 code")?;
        ensure(
            asg.entries().len() == net.edges().len(),
            "missing operators",
        )?;
        let v = verify(&net, &asg).map_err(|e| e.to_string())?;
        ensure(v.residuals.len() == 12, "expected twelve block equations")?;
        satisfied(&net, &asg).map_err(|e| format!("{spec}: {e}"))?;
    }
    Ok(format!(
        "all twelve blocks hold over {}; capacity >= 3/4 certified",
        rings.join(" and ")
    ))
}

fn simple_example() -> Outcome {
    let start = Instant::now();
    let (net, asg) = known("simple_satellite", "paper-1-2", "GF2");
    satisfied(&net, &asg)?;
    for spec in ["GF2", "GF3"] {
        exhausted(&net, spec, 1)?;
    }
    let blocks = [(5, 1), (4, 2), (5, 2)];
    let out = search_fractional(&net, &ring("GF2"), 2, 3, Some(&blocks), &Limits::default())
        .map_err(|e| e.to_string())?;
    ensure(
        out.is_certified_exhaustion(),
        format!("(2,3) search: {}", out.verdict),
    )?;
    ensure(
        out.certificate.domain_sizes == vec![64; 4],
        "expected four edges of six binary entries",
    )?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), format!("took {took:?}"))?;
    Ok(format!(
        "1/2 verifies; no 1/1 over GF2, GF3; no 2/3 over GF2 ({} nodes); {took:?}",
        out.nodes_visited
    ))
}

fn battery() -> Outcome {
    let mut specs: Vec<String> = (2..=12).map(|m| format!("Z{m}")).collect();
    specs.extend(["GF2", "GF3", "GF5", "GF7", "M2(GF2)"].map(String::from));
    for spec in &specs {
        let report = theorem1_battery(&ring(spec), 4096).map_err(|e| e.to_string())?;
        ensure(
            report.all_hold() && report.all_agree(),
            format!("{spec}: conditions disagree"),
        )?;
    }
    for base in ["GF2", "Q"] {
        let j = ring(&format!("J({base})"));
        let x = Element::monomial(&j, 0, 1, 1).unwrap();
        let y = Element::monomial(&j, 1, 0, 1).unwrap();
        let z = Element::one(&j).sub(&y.mul(&x).unwrap()).unwrap();
        ensure(x.mul(&y).unwrap().is_one(), "xy != 1")?;
        ensure(!y.mul(&x).unwrap().is_one(), "yx = 1")?;
        ensure(
            check_capacity_violation_witness(&x, &y, &z).unwrap(),
            "witness rejected",
        )?;
    }
    Ok(format!(
        "{} finite rings all true; J(F) witness (x, y, 1 - yx) certified",
        specs.len()
    ))
}

fn cond_k() -> Outcome {
    let mut total = 0;
    for k in 1..=2 {
        let net = catalog::capacity_network(k).unwrap();
        let spare = k as u32 + 1;
        for spec in ["GF2", "GF3"] {
            let out =
                search_scalar(&net, &ring(spec), &Limits::default()).map_err(|e| e.to_string())?;
            ensure(out.certificate.covers_full_space(), "search incomplete")?;
            ensure(
                !out.solutions.is_empty(),
                format!("k={k} {spec}: no solutions"),
            )?;
            for s in &out.solutions {
                let v = verify(&net, s).unwrap();
                for t in net.receivers() {
                    ensure(
                        v.transfer.block(t, spare).unwrap().is_zero(),
                        format!("k={k} {spec}: spare source reaches {t}"),
                    )?;
                }
                if k == 1 {
                    let r2 = s.get(netring::netmodel::Edge::new(2, 3)).unwrap();
                    ensure(r2.is_zero(), format!("{spec}: r2 = {r2}"))?;
                }
            }
            total += out.solutions.len();
        }
    }
    Ok(format!(
        "{total} solutions checked, spare-source blocks all zero, r2 = 0 for k=1"
    ))
}

fn oracle() -> Outcome {
    let mut rng = rng(9);
    let mut cases = 0;
    for entry in catalog::entries() {
        for known in &entry.known {
            for (r, _) in &known.expectations {
                let sample = known.instantiate(&entry.network, r).unwrap();
                for _ in 0..100 {
                    let asg =
                        random_assignment(&entry.network, r, sample.k(), sample.n(), &mut rng);
                    let dp = netring::netmodel::transfer(&entry.network, &asg).unwrap();
                    let paths = netring::netmodel::transfer_by_paths(&entry.network, &asg).unwrap();
                    ensure(dp == paths, format!("{} over {r}: mismatch", entry.name))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} random assignments, zero mismatches"))
}

fn properties() -> Outcome {
    const N: u64 = 1000;
    let rings = [
        "Z2", "Z6", "Z12", "GF7", "Q", "M2(Z4)", "M3(GF2)", "J(GF3)", "J(Q)",
    ]
    .map(ring);
    let fields = ["GF2", "GF3", "GF5", "Q"].map(ring);
    for seed in 0..N {
        check_axioms(&rings[seed as usize % rings.len()], seed);
        check_normal_form(&rings[seed as usize % rings.len()], seed + N);
        check_rank(&fields[seed as usize % fields.len()], seed + 2 * N);
        check_partition_independence(seed + 3 * N);
    }
    Ok(format!(
        "{N} cases each: ring axioms, normal form, Sylvester rank, partition independence"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("butterfly reproduction", butterfly),
        ("digital network (1+1=0 separation)", theorem4),
        ("analogue network (1+1 invertible separation)", theorem5),
        ("digital network 3/4 fractional solution", || {
            fractional("digital_network", "digital-3-4", &["GF2", "Q"])
        }),
        ("analogue network 3/4 fractional solution", || {
            fractional("analogue_network", "analogue-3-4", &["GF2"])
        }),
        ("simple satellite capacity 1/2", simple_example),
        ("Dedekind finiteness battery", battery),
        ("Cond(k) spare-source blocking", cond_k),
        ("transfer oracle equivalence", oracle),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
