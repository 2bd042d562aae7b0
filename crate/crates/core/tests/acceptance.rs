//! Acceptance suite: one PASS/FAIL line per criterion, each with its time
//! limit. Runs without the test harness so the lines always print.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;

use common::{naive_causes, naive_limited, naive_parameters, outcome_distribution};
use decause::causes::find_causes;
use decause::corpus;
use decause::diagram::{canonicalize, check_canonical_form, count_parameters, d_separated, export_pearl, CanonicalizeOptions};
use decause::laws::{check_cause_law, check_structural_law, check_table_law, random_query, selftest, Law};
use decause::mapping::{augment_with_set_decisions, extract_mapping_variable, verify_set_decisions, DO_NOTHING};
use decause::model::{enumerate_states, DecisionProblem, Variable};
use decause::random::{random_diagram, random_problem, rng, ProblemShape, DEFAULT_SEED};
use decause::responsiveness::{independent_of_decisions, state_violation, unresponsive_limited};
use decause::structural::{flatten, InfluenceDiagram, DEFAULT_BUDGET};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn sets(v: &[&[&str]]) -> Vec<Vec<String>> {
    v.iter().map(|s| strings(s)).collect()
}

fn medical_table() -> Outcome {
    let decisions = [Variable::new("r", ["take", "dont"])];
    let chances = [Variable::new("t", ["yes", "no"]), Variable::new("c", ["yes", "no"])];
    let states = enumerate_states(&decisions, &chances, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(states.len() == 16, || format!("{} states", states.len()))?;
    let frame = decause::model::Frame::new(decisions.to_vec(), chances.to_vec()).map_err(|e| e.to_string())?;
    let xs = frame.resolve_set(&["c"]).unwrap();
    let ys = frame.resolve_set(&["t"]).unwrap();
    // rows 13 to 16: (t, c) under take, then under dont
    let impossible = [
        ["yes", "yes", "yes", "no"],
        ["yes", "no", "yes", "yes"],
        ["no", "no", "no", "yes"],
        ["no", "yes", "no", "no"],
    ];
    let mut violating = Vec::new();
    for s in &states {
        let by_library = state_violation(&frame, s, &xs, &ys, None).is_some();
        let map = s.outcome_map(&frame);
        let row: Vec<&str> = ["take", "dont"]
            .iter()
            .flat_map(|a| {
                let real = &map[&decause::model::Assignment::new().with("r", *a)];
                [real.get("t").unwrap(), real.get("c").unwrap()]
            })
            .map(|v| match v {
                "yes" => "yes",
                _ => "no",
            })
            .collect();
        let by_oracle = row[0] == row[2] && row[1] != row[3];
        ensure(by_library == by_oracle, || format!("state {} disagrees with the oracle", s.label))?;
        if by_library {
            violating.push(row.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        }
    }
    let mut expected: Vec<Vec<String>> = impossible.iter().map(|r| strings(r)).collect();
    expected.sort();
    violating.sort();
    ensure(violating == expected, || format!("violating states {violating:?}"))?;
    let v = unresponsive_limited(&corpus::medical(), &["c"], &["t"]).map_err(|e| e.to_string())?;
    ensure(v.holds, || "c not limited by t in the medical fixture".into())
}

fn treatment_map_counts() -> Outcome {
    let mv = extract_mapping_variable(&corpus::medical(), &["t"], &["r"]).map_err(|e| e.to_string())?;
    let total: Vec<String> = (0..mv.instances.len())
        .filter(|&k| mv.is_total(k))
        .map(|k| mv.instance_name(k))
        .collect();
    let mut expected = strings(&[
        "take>yes|dont>no",
        "take>no|dont>yes",
        "take>yes|dont>yes",
        "take>no|dont>no",
    ]);
    expected.sort();
    let mut got = total.clone();
    got.sort();
    ensure(got == expected && total.len() == mv.instances.len(), || format!("maps {total:?}"))
}

fn cause_antichains() -> Outcome {
    let cases: [(&str, DecisionProblem, &str, Vec<Vec<String>>); 5] = [
        ("medical", corpus::medical(), "c", sets(&[&["r"], &["t"]])),
        ("medical-retro", corpus::medical_retro(), "t", sets(&[&["g", "r"], &["r", "v"]])),
        ("smoke", corpus::smoke(), "l", sets(&[&["s"]])),
        ("match", corpus::coin_match(), "m", sets(&[&["b"], &["w"]])),
        ("match", corpus::coin_match(), "w", sets(&[&["b"], &["m"]])),
    ];
    for (name, p, x, expected) in cases {
        let r = find_causes(&p, x, None).map_err(|e| e.to_string())?;
        let oracle = naive_causes(&p, x);
        ensure(r.exhaustive, || format!("{name}: search for {x} not exhaustive"))?;
        ensure(r.minimal_sets == oracle, || {
            format!("{name}: {x} has {:?}, oracle {oracle:?}", r.minimal_sets)
        })?;
        ensure(r.minimal_sets.iter().all(|s| expected.contains(s)) && expected.iter().all(|s| r.minimal_sets.contains(s)), || {
            format!("{name}: {x} has {:?}, expected {expected:?}", r.minimal_sets)
        })?;
    }
    Ok(())
}

fn parameter_counts() -> Outcome {
    let d = corpus::fig2b();
    ensure(count_parameters(&d) == 13 && naive_parameters(&d) == 13, || format!("fig2b: {}", count_parameters(&d)))?;
    let (theory, _) = export_pearl(&d).map_err(|e| e.to_string())?;
    ensure(count_parameters(&theory) == 31 && naive_parameters(&theory) == 31, || {
        format!("export: {}", count_parameters(&theory))
    })?;
    for m in ["t(r,g)", "c(t,g)"] {
        let n = theory.by_name(m).map_err(|e| e.to_string())?.instances.len();
        ensure(n == 16, || format!("{m} has {n} instances"))?;
    }
    Ok(())
}

fn round_trip_one(label: &str, p: &DecisionProblem) -> Outcome {
    let d = canonicalize(p, &CanonicalizeOptions::default()).map_err(|e| format!("{label}: {e}"))?;
    let v = check_canonical_form(&d, p).map_err(|e| format!("{label}: {e}"))?;
    ensure(v.is_canonical, || format!("{label}: {v}"))?;
    let back = flatten(&d).map_err(|e| format!("{label}: {e}"))?;
    ensure(back.same_distribution(p), || format!("{label}: flattened form differs"))?;
    ensure(outcome_distribution(&back) == outcome_distribution(p), || {
        format!("{label}: outcome distributions differ")
    })
}

fn round_trip() -> Outcome {
    for (i, p) in corpus::tables().iter().enumerate() {
        round_trip_one(&format!("corpus table {i}"), p)?;
    }
    let mut r = rng(DEFAULT_SEED);
    let shape = ProblemShape::default();
    for i in 0..1000 {
        let p = random_problem(&mut r, &shape);
        round_trip_one(&format!("random problem {i}"), &p)?;
    }
    Ok(())
}

fn property_suite() -> Outcome {
    let mut r = rng(DEFAULT_SEED ^ 0xc0);
    for (i, p) in corpus::tables().iter().enumerate() {
        for _ in 0..100 {
            let q = random_query(&mut r, p.frame());
            for law in Law::TABLE {
                if let decause::laws::Outcome::Fails(m) = check_table_law(law, p, &q) {
                    return Err(format!("corpus table {i}: {law} fails for {q}: {m}"));
                }
            }
            for law in Law::CAUSE {
                if let decause::laws::Outcome::Fails(m) = check_cause_law(law, p, &q) {
                    return Err(format!("corpus table {i}: {law} fails for {q}: {m}"));
                }
            }
        }
        for x in p.chances() {
            let oracle_unresponsive = naive_limited(p, std::slice::from_ref(&x.name), &[]);
            let by_law = unresponsive_limited(p, &[x.name.as_str()], &[]).unwrap().holds;
            ensure(oracle_unresponsive == by_law, || format!("corpus table {i}: {} disagrees with oracle", x.name))?;
        }
    }
    for (name, m) in corpus::models() {
        let Ok(flat) = flatten(&m) else { continue };
        for _ in 0..30 {
            let q = random_query(&mut r, flat.frame());
            for law in Law::STRUCTURAL {
                if let decause::laws::Outcome::Fails(msg) = check_structural_law(law, &m, &q) {
                    return Err(format!("{name}: {law} fails for {q}: {msg}"));
                }
            }
        }
    }
    let report = selftest(DEFAULT_SEED, 10_000);
    ensure(report.passed() && report.queries >= 10_000, || report.to_string())?;
    let idle: Vec<&str> = report
        .tallies
        .iter()
        .filter(|(_, t)| t.held == 0)
        .map(|(l, _)| l.name())
        .collect();
    ensure(idle.is_empty(), || format!("laws never exercised: {idle:?}"))
}

fn bet_converse() -> Outcome {
    let p = corpus::bet();
    let v = unresponsive_limited(&p, &["w"], &[]).map_err(|e| e.to_string())?;
    ensure(!v.holds && v.witness.is_some(), || "w is unresponsive".into())?;
    ensure(!naive_limited(&p, &strings(&["w"]), &[]), || "oracle finds w unresponsive".into())?;
    let ind = independent_of_decisions(&p, &["w"]).map_err(|e| e.to_string())?;
    ensure(ind, || "w depends on the bet".into())
}

fn dsep_sound(label: &str, d: &InfluenceDiagram) -> Outcome {
    let n = d.nodes().len();
    let joints = d
        .alternatives()
        .iter()
        .map(|a| d.joint_at(a, DEFAULT_BUDGET))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("{label}: {e}"))?;
    let name = |i: usize| d.node(i).name.clone();
    for a in 0..n {
        for b in a + 1..n {
            if d.node(a).is_decision() || d.node(b).is_decision() {
                continue;
            }
            let rest: Vec<usize> = (0..n).filter(|&i| i != a && i != b).collect();
            for mask in 0u32..1 << rest.len() {
                let z: Vec<usize> = rest.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &i)| i).collect();
                let zn: Vec<String> = z.iter().map(|&i| name(i)).collect();
                let sep = d_separated(d, &[name(a)], &[name(b)], &zn).map_err(|e| format!("{label}: {e}"))?;
                if sep {
                    for joint in &joints {
                        ensure(common::independent_in(joint, a, b, &z), || {
                            format!("{label}: {} and {} d-separated by {zn:?} but dependent", name(a), name(b))
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn dsep_soundness() -> Outcome {
    for (name, d) in corpus::diagrams() {
        dsep_sound(name, &d)?;
    }
    let mut r = rng(DEFAULT_SEED ^ 0xd5);
    for i in 0..500 {
        let size = r.gen_range(2..=6);
        let d = random_diagram(&mut r, size);
        dsep_sound(&format!("random diagram {i}"), &d)?;
    }
    Ok(())
}

fn set_decisions() -> Outcome {
    let m = corpus::medical_gene_model();
    let aug = augment_with_set_decisions(&m, &["c", "t"]).map_err(|e| e.to_string())?;
    let orig = flatten(&m).map_err(|e| e.to_string())?;
    let v = verify_set_decisions(&orig, &flatten(&aug).map_err(|e| e.to_string())?, None).map_err(|e| e.to_string())?;
    ensure(v.holds && v.checked > 0, || format!("gene augmentation fails: {:?}", v.failure))?;
    let forced = corpus::medical_force();
    let plain = forced.restrict_decision("set_t", DO_NOTHING).map_err(|e| e.to_string())?;
    let v = verify_set_decisions(&plain, &forced, None).map_err(|e| e.to_string())?;
    ensure(!v.holds && v.failure.is_some(), || "forced treatment passes".into())
}

fn cli_goldens() -> Outcome {
    let bad = common::check_goldens(&common::golden_dir());
    ensure(bad.is_empty(), || format!("mismatched transcripts: {bad:?}"))
}

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("medical table reconstruction", 1, medical_table),
        ("treatment mapping variable", 1, treatment_map_counts),
        ("cause antichains", 5, cause_antichains),
        ("parameter counts", 1, parameter_counts),
        ("canonical round trip", 60, round_trip),
        ("property suite", 120, property_suite),
        ("responsive but independent", 1, bet_converse),
        ("d-separation soundness", 60, dsep_soundness),
        ("set-decision semantics", 10, set_decisions),
        ("CLI golden transcripts", 10, cli_goldens),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = result.and_then(|()| {
            ensure(took <= Duration::from_secs(limit), || format!("took {took:.2?}, limit {limit} s"))
        });
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({took:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({took:.2?}): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
