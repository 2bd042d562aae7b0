//! Limited unresponsiveness, decided by exhaustive scan.
//!
//! `X` is unresponsive to the decisions in states limited by `Y` when, in
//! every probability-positive state and for every pair of joint
//! alternatives, agreement on `Y` forces agreement on `X`. The scan visits
//! states in canonical order and alternative pairs `(a1, a2)` with
//! `a1 < a2` in lexicographic order, so the reported witness is always the
//! first violation under that order.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{marginal, Assignment, DecisionProblem, Frame, VarRef, WorldState};

/// A concrete violation: in `state`, the limiting variables agree under
/// both alternatives but `variable` does not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub state: String,
    pub alternatives: (Assignment, Assignment),
    pub variable: String,
    pub instances: (String, String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "state `{}`: under [{}] {}={} but under [{}] {}={}",
            self.state,
            self.alternatives.0,
            self.variable,
            self.instances.0,
            self.alternatives.1,
            self.variable,
            self.instances.1
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fails(witness: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Location of a violation inside one world state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateViolation {
    pub first: usize,
    pub second: usize,
    pub variable: VarRef,
}

/// First violation of the limited-unresponsiveness implication inside a
/// single world state, ignoring its probability. With `pin`, only pairs
/// whose limiting values both equal the pinned instance are considered.
pub fn state_violation(
    frame: &Frame,
    state: &WorldState,
    xs: &[VarRef],
    ys: &[VarRef],
    pin: Option<&[usize]>,
) -> Option<StateViolation> {
    let n = frame.alternative_count();
    let agrees = |a1: usize, a2: usize| {
        ys.iter().enumerate().all(|(k, &y)| {
            let v1 = state.value(frame, a1, y);
            v1 == state.value(frame, a2, y) && pin.is_none_or(|p| p[k] == v1)
        })
    };
    for a1 in 0..n {
        for a2 in a1 + 1..n {
            if !agrees(a1, a2) {
                continue;
            }
            if let Some(&x) = xs
                .iter()
                .find(|&&x| state.value(frame, a1, x) != state.value(frame, a2, x))
            {
                return Some(StateViolation {
                    first: a1,
                    second: a2,
                    variable: x,
                });
            }
        }
    }
    None
}

fn scan(problem: &DecisionProblem, xs: &[VarRef], ys: &[VarRef], pin: Option<&[usize]>) -> Verdict {
    let frame = problem.frame();
    for (si, state) in problem.states().iter().enumerate() {
        if !problem.probability(si).is_positive() {
            continue;
        }
        if let Some(v) = state_violation(frame, state, xs, ys, pin) {
            let var = frame.variable(v.variable);
            return Verdict::fails(Witness {
                state: state.label.clone(),
                alternatives: (frame.alternative_assignment(v.first), frame.alternative_assignment(v.second)),
                variable: var.name.clone(),
                instances: (
                    var.instances[state.value(frame, v.first, v.variable)].clone(),
                    var.instances[state.value(frame, v.second, v.variable)].clone(),
                ),
            });
        }
    }
    Verdict::holds()
}

/// Index-level entry point used by the other modules.
pub fn limited(problem: &DecisionProblem, xs: &[VarRef], ys: &[VarRef]) -> Verdict {
    scan(problem, xs, ys, None)
}

/// Whether `X` is unresponsive to the decisions in states limited by `Y`.
/// An empty `Y` gives plain unresponsiveness.
pub fn unresponsive_limited<S: AsRef<str>>(problem: &DecisionProblem, x: &[S], y: &[S]) -> Result<Verdict> {
    let frame = problem.frame();
    let xs = frame.resolve_chances(x)?;
    let ys = frame.resolve_set(y)?;
    Ok(limited(problem, &xs, &ys))
}

/// Limited unresponsiveness restricted to the pairs where `Y` takes the
/// given instance under both alternatives. `instance` must bind exactly the
/// variables of `Y`.
pub fn unresponsive_at_instance<S: AsRef<str>>(
    problem: &DecisionProblem,
    x: &[S],
    y: &[S],
    instance: &Assignment,
) -> Result<Verdict> {
    let frame = problem.frame();
    let xs = frame.resolve_chances(x)?;
    let ys = frame.resolve_set(y)?;
    let mut pin = Vec::with_capacity(ys.len());
    for &v in &ys {
        let name = frame.name(v);
        let inst = instance
            .get(name)
            .ok_or_else(|| Error::PartialInstance(name.to_string()))?;
        pin.push(frame.instance_index(v, inst)?);
    }
    if let Some((k, _)) = instance.iter().find(|(k, _)| !ys.iter().any(|&v| frame.name(v) == *k)) {
        return Err(Error::UnknownVariable(k.to_string()));
    }
    Ok(scan(problem, &xs, &ys, Some(&pin)))
}

/// Unresponsiveness of `X` to the decision subset `dsub`, limited by `Y`:
/// the decisions outside `dsub` join the limiting set.
pub fn unresponsive_to_subset<S: AsRef<str>>(
    problem: &DecisionProblem,
    x: &[S],
    dsub: &[S],
    y: &[S],
) -> Result<Verdict> {
    let frame = problem.frame();
    let xs = frame.resolve_chances(x)?;
    let sub = frame.resolve_set(dsub)?;
    if let Some(c) = sub.iter().find(|v| !v.is_decision()) {
        return Err(Error::ChanceNotAllowed(frame.name(*c).to_string()));
    }
    let mut ys = frame.resolve_set(y)?;
    ys.extend(frame.decision_refs().into_iter().filter(|d| !sub.contains(d)));
    ys.sort();
    ys.dedup();
    Ok(limited(problem, &xs, &ys))
}

/// Whether the marginal distribution of `X` is the same under every joint
/// alternative.
pub fn independent_of_decisions<S: AsRef<str>>(problem: &DecisionProblem, x: &[S]) -> Result<bool> {
    let xs = problem.frame().resolve_chances(x)?;
    Ok(independent_refs(problem, &xs))
}

pub(crate) fn independent_refs(problem: &DecisionProblem, xs: &[VarRef]) -> bool {
    let n = problem.frame().alternative_count();
    let first = marginal(problem, xs, 0);
    (1..n).all(|alt| marginal(problem, xs, alt) == first)
}

impl Witness {
    /// Re-checks the witness against the problem: the state exists with
    /// positive probability, the limiting variables agree under both
    /// alternatives, and the reported variable takes the reported
    /// instances.
    pub fn replays<S: AsRef<str>>(&self, problem: &DecisionProblem, y: &[S]) -> bool {
        let frame = problem.frame();
        let Some(si) = problem.state_index(&self.state) else {
            return false;
        };
        if !problem.probability(si).is_positive() {
            return false;
        }
        let (Ok(a1), Ok(a2)) = (
            frame.alternative_index(&self.alternatives.0),
            frame.alternative_index(&self.alternatives.1),
        ) else {
            return false;
        };
        let Ok(ys) = frame.resolve_set(y) else {
            return false;
        };
        let Ok(x) = frame.resolve(&self.variable) else {
            return false;
        };
        let var = frame.variable(x);
        let v1 = problem.value(si, a1, x);
        let v2 = problem.value(si, a2, x);
        ys.iter().all(|&v| problem.value(si, a1, v) == problem.value(si, a2, v))
            && v1 != v2
            && var.instances[v1] == self.instances.0
            && var.instances[v2] == self.instances.1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn omelet_is_responsive_with_first_witness() {
        let p = corpus::omelet();
        let v = unresponsive_limited::<&str>(&p, &["o"], &[]).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.state, "good");
        assert_eq!(w.alternatives.0, Assignment::new().with("d", "break_into_bowl"));
        assert_eq!(w.alternatives.1, Assignment::new().with("d", "throw_away"));
        assert_eq!(w.variable, "o");
        assert_eq!(w.instances, ("six".to_string(), "five".to_string()));
        assert!(w.replays::<&str>(&p, &[]));
    }

    #[test]
    fn cure_limited_by_taken() {
        let p = corpus::medical();
        assert!(unresponsive_limited(&p, &["c"], &["t"]).unwrap().holds);
        assert!(!unresponsive_limited::<&str>(&p, &["c"], &[]).unwrap().holds);
    }

    #[test]
    fn limiting_by_all_decisions_always_holds() {
        for p in corpus::tables() {
            let d: Vec<String> = p.decisions().iter().map(|d| d.name.clone()).collect();
            let u: Vec<String> = p.chances().iter().map(|c| c.name.clone()).collect();
            assert!(unresponsive_limited(&p, &u, &d).unwrap().holds);
        }
    }

    #[test]
    fn decision_in_x_is_rejected() {
        let p = corpus::medical();
        assert_eq!(
            unresponsive_limited(&p, &["r"], &["t"]).unwrap_err(),
            Error::DecisionNotAllowed("r".into())
        );
        assert!(matches!(
            unresponsive_limited(&p, &["zz"], &["t"]),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn instance_limited() {
        let p = corpus::medical();
        let yes = Assignment::new().with("t", "yes");
        assert!(unresponsive_at_instance(&p, &["c"], &["t"], &yes).unwrap().holds);
        let plain = unresponsive_limited::<&str>(&p, &["c"], &[]).unwrap();
        let empty = unresponsive_at_instance::<&str>(&p, &["c"], &[], &Assignment::new()).unwrap();
        assert_eq!(plain, empty);
        let smoke = corpus::smoke();
        let cancer = Assignment::new().with("l", "cancer");
        assert!(unresponsive_at_instance(&smoke, &["l"], &["l"], &cancer).unwrap().holds);
        let bad = Assignment::new().with("t", "maybe");
        assert!(matches!(
            unresponsive_at_instance(&p, &["c"], &["t"], &bad),
            Err(Error::UnknownInstance { .. })
        ));
        assert!(matches!(
            unresponsive_at_instance(&p, &["c"], &["t"], &Assignment::new()),
            Err(Error::PartialInstance(_))
        ));
    }

    #[test]
    fn empty_subset_always_holds() {
        for p in corpus::tables() {
            for c in p.chances() {
                assert!(unresponsive_to_subset::<&str>(&p, &[&c.name], &[], &[]).unwrap().holds);
            }
        }
    }

    #[test]
    fn fair_bet_is_independent_but_responsive() {
        let p = corpus::bet();
        assert!(independent_of_decisions(&p, &["w"]).unwrap());
        assert!(!unresponsive_limited::<&str>(&p, &["w"], &[]).unwrap().holds);
    }
}
