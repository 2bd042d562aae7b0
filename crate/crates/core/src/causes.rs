//! Cause sets: minimal limiting sets of a chance variable.
//!
//! `C` is a set of causes for `x` when `x` is unresponsive to the
//! decisions in states limited by `C` and by no proper subset of `C`.
//! A variable may have several such sets; [`find_causes`] reports all of
//! them up to a size bound, as an antichain.

use crate::error::{Error, Result};
use crate::model::{DecisionProblem, VarRef};
use crate::responsiveness::limited;

/// Hard cap on candidate subsets examined by one search.
pub const DEFAULT_SUBSET_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauseReport {
    pub target: String,
    /// Minimal cause sets, each sorted by name, listed by size and then
    /// lexicographically.
    pub minimal_sets: Vec<Vec<String>>,
    /// Largest subset size examined.
    pub search_bound: usize,
    /// True when every candidate subset was examined.
    pub exhaustive: bool,
}

/// Whether `c` is a set of causes for `x`. Minimality is checked against
/// every proper subset.
pub fn is_cause_set<S: AsRef<str>>(problem: &DecisionProblem, c: &[S], x: &str) -> Result<bool> {
    let frame = problem.frame();
    let xs = frame.resolve_chances(&[x])?;
    if c.iter().any(|v| v.as_ref() == x) {
        return Err(Error::ReflexiveCause(x.to_string()));
    }
    let cs = frame.resolve_set(c)?;
    if !limited(problem, &xs, &cs).holds {
        return Ok(false);
    }
    let n = cs.len();
    for mask in 0..(1u64 << n) - 1 {
        let sub: Vec<VarRef> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| cs[i]).collect();
        if limited(problem, &xs, &sub).holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All minimal cause sets of `x` among the problem's other variables, up
/// to `max_size` members (default: all of them).
pub fn find_causes(problem: &DecisionProblem, x: &str, max_size: Option<usize>) -> Result<CauseReport> {
    let frame = problem.frame();
    let target = frame.resolve_chances(&[x])?[0];
    let candidates: Vec<VarRef> = frame.resolve_set(
        &frame
            .all_vars()
            .into_iter()
            .filter(|&v| v != target)
            .map(|v| frame.name(v).to_string())
            .collect::<Vec<_>>(),
    )?;
    find_causes_among(problem, target, &candidates, max_size, DEFAULT_SUBSET_CAP)
}

/// Minimal cause sets of `target` drawn from `candidates`. Candidate
/// subsets are visited by increasing size and, within a size, in
/// lexicographic order of candidate positions; a limiting subset is
/// admitted unless it contains an already admitted one.
pub fn find_causes_among(
    problem: &DecisionProblem,
    target: VarRef,
    candidates: &[VarRef],
    max_size: Option<usize>,
    max_subsets: u64,
) -> Result<CauseReport> {
    let frame = problem.frame();
    if target.is_decision() {
        return Err(Error::DecisionNotAllowed(frame.name(target).to_string()));
    }
    if candidates.contains(&target) {
        return Err(Error::ReflexiveCause(frame.name(target).to_string()));
    }
    let n = candidates.len();
    let bound = max_size.unwrap_or(n).min(n);
    let xs = [target];
    let mut admitted: Vec<Vec<usize>> = Vec::new();
    let mut examined = 0u64;
    let mut capped = false;
    'sizes: for k in 0..=bound {
        for combo in Combinations::new(n, k) {
            if admitted.iter().any(|a| is_subset(a, &combo)) {
                continue;
            }
            examined += 1;
            if examined > max_subsets {
                capped = true;
                break 'sizes;
            }
            let set: Vec<VarRef> = combo.iter().map(|&i| candidates[i]).collect();
            if limited(problem, &xs, &set).holds {
                admitted.push(combo);
            }
        }
        if admitted.first().is_some_and(Vec::is_empty) {
            break;
        }
    }
    let mut minimal_sets: Vec<Vec<String>> = admitted
        .iter()
        .map(|combo| {
            let mut names: Vec<String> = combo.iter().map(|&i| frame.name(candidates[i]).to_string()).collect();
            names.sort();
            names
        })
        .collect();
    minimal_sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let unresponsive = minimal_sets.first().is_some_and(Vec::is_empty);
    Ok(CauseReport {
        target: frame.name(target).to_string(),
        minimal_sets,
        search_bound: bound,
        exhaustive: !capped && (unresponsive || bound >= n),
    })
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|s| big.contains(s))
}

/// k-subsets of `0..n` as sorted index vectors, lexicographic.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Subsets of `0..n` of size at most `max`, by size then lexicographic.
pub(crate) fn subsets_up_to(n: usize, max: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=max.min(n)).flat_map(move |k| Combinations::new(n, k))
}
