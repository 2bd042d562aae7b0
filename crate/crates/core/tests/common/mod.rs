//! Independent oracles: brute-force definitions written against the
//! name-keyed views of a problem, sharing no code with the scans under test.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use decause::model::{Assignment, DecisionProblem};
use decause::prob::Probability;
use decause::structural::InfluenceDiagram;

/// Outcomes of every possible state as `alternative -> realization` maps.
pub fn outcomes(problem: &DecisionProblem) -> Vec<Vec<(Assignment, Assignment)>> {
    problem
        .weighted_states()
        .filter(|(_, p)| p.is_positive())
        .map(|(s, _)| s.outcome_map(problem.frame()).into_iter().collect())
        .collect()
}

fn read<'a>(alt: &'a Assignment, real: &'a Assignment, var: &str) -> &'a str {
    alt.get(var).or_else(|| real.get(var)).expect("variable in outcome")
}

/// Limited unresponsiveness straight from its definition.
pub fn naive_limited(problem: &DecisionProblem, x: &[String], y: &[String]) -> bool {
    outcomes(problem).iter().all(|state| {
        state.iter().all(|(a1, r1)| {
            state.iter().all(|(a2, r2)| {
                let agree = |vs: &[String]| vs.iter().all(|v| read(a1, r1, v) == read(a2, r2, v));
                !agree(y) || agree(x)
            })
        })
    })
}

/// All variable names of a problem.
pub fn names(problem: &DecisionProblem) -> Vec<String> {
    problem
        .decisions()
        .iter()
        .chain(problem.chances())
        .map(|v| v.name.clone())
        .collect()
}

/// Every subset of `items`.
pub fn power_set(items: &[String]) -> Vec<Vec<String>> {
    (0u64..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

/// Minimal cause sets by exhaustive minimality check, each sorted, listed
/// by size then lexicographically.
pub fn naive_causes(problem: &DecisionProblem, x: &str) -> Vec<Vec<String>> {
    let others: Vec<String> = names(problem).into_iter().filter(|v| v != x).collect();
    let target = vec![x.to_string()];
    let limiting: Vec<Vec<String>> = power_set(&others)
        .into_iter()
        .filter(|c| naive_limited(problem, &target, c))
        .collect();
    let mut out: Vec<Vec<String>> = limiting
        .iter()
        .filter(|c| {
            !limiting
                .iter()
                .any(|d| d.len() < c.len() && d.iter().all(|m| c.contains(m)))
        })
        .map(|c| {
            let mut c = c.clone();
            c.sort();
            c
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Independent probability count: each chance node needs
/// `(instances - 1)` numbers per parent row.
pub fn naive_parameters(diagram: &InfluenceDiagram) -> u128 {
    diagram
        .nodes()
        .iter()
        .enumerate()
        .filter(|(_, n)| n.is_chance())
        .map(|(i, n)| {
            let rows: u128 = diagram
                .parents_of(i)
                .iter()
                .map(|&p| diagram.node(p).instances.len() as u128)
                .product();
            rows * (n.instances.len() as u128 - 1)
        })
        .sum()
}

/// Exact conditional independence of nodes `a` and `b` given `given` in
/// a joint keyed by all node values.
pub fn independent_in(joint: &BTreeMap<Vec<usize>, Probability>, a: usize, b: usize, given: &[usize]) -> bool {
    type Key = Vec<usize>;
    let mut pz: BTreeMap<Key, Probability> = BTreeMap::new();
    let mut paz: BTreeMap<Key, Probability> = BTreeMap::new();
    let mut pbz: BTreeMap<Key, Probability> = BTreeMap::new();
    let mut pabz: BTreeMap<Key, Probability> = BTreeMap::new();
    for (values, p) in joint {
        let z: Key = given.iter().map(|&i| values[i]).collect();
        let with = |v: usize| {
            let mut k = z.clone();
            k.push(v);
            k
        };
        let mut ab = with(values[a]);
        ab.push(values[b]);
        *pz.entry(z.clone()).or_insert_with(Probability::zero) += p;
        *paz.entry(with(values[a])).or_insert_with(Probability::zero) += p;
        *pbz.entry(with(values[b])).or_insert_with(Probability::zero) += p;
        *pabz.entry(ab).or_insert_with(Probability::zero) += p;
    }
    let zero = Probability::zero();
    for (z, p_z) in &pz {
        for (az, p_az) in paz.iter().filter(|(k, _)| k[..z.len()] == z[..]) {
            for (bz, p_bz) in pbz.iter().filter(|(k, _)| k[..z.len()] == z[..]) {
                let mut key = az.clone();
                key.push(bz[z.len()]);
                let p_abz = pabz.get(&key).unwrap_or(&zero);
                if p_abz * p_z != p_az * p_bz {
                    return false;
                }
            }
        }
    }
    true
}

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_dir() -> PathBuf {
    crate_dir().join("tests").join("golden")
}

/// One CLI transcript: the command line, exit code and both streams.
pub fn transcript(args: &str) -> String {
    let mut argv = vec!["decause".to_string()];
    argv.extend(args.split_whitespace().map(String::from));
    let (code, out, err) = decause::cli::run_cli(argv);
    format!("$ decause {args}\nexit: {code}\n--- stdout\n{out}--- stderr\n{err}")
}

/// Compares every golden transcript in `dir` with a fresh run from the
/// crate directory; with `UPDATE_GOLDEN` set, rewrites them instead.
/// Returns the mismatching file names.
pub fn check_goldens(dir: &Path) -> Vec<String> {
    std::env::set_current_dir(crate_dir()).expect("crate directory");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("golden directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "txt"))
        .collect();
    files.sort();
    assert!(!files.is_empty(), "no golden transcripts");
    let mut bad = Vec::new();
    for f in files {
        let expected = std::fs::read_to_string(&f).expect("golden file");
        let args = expected
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("$ decause"))
            .expect("golden starts with the command")
            .trim()
            .to_string();
        let actual = transcript(&args);
        if update {
            std::fs::write(&f, &actual).expect("write golden");
        } else if actual != expected {
            bad.push(f.file_name().unwrap().to_string_lossy().into_owned());
        }
    }
    bad
}

/// Distribution over outcome maps, keyed by names, with merged labels.
pub fn outcome_distribution(
    problem: &DecisionProblem,
) -> BTreeMap<BTreeMap<Assignment, Assignment>, Probability> {
    let mut out = BTreeMap::new();
    for (s, p) in problem.weighted_states() {
        if p.is_positive() {
            *out.entry(s.outcome_map(problem.frame())).or_insert_with(Probability::zero) += p;
        }
    }
    out
}
