//! Decision problems in table form: variables, alternatives, realizations
//! and world states.
//!
//! A [`DecisionProblem`] is the triple of decision variables, chance
//! variables and a probability distribution over world states, where each
//! world state maps every joint alternative to a joint realization.
//! Internally everything is index based: variables are kept sorted by name,
//! instances keep their declared order, and a joint alternative is a
//! mixed-radix index with the first decision most significant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::prob::Probability;

/// A named variable with an ordered list of instance symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub instances: Vec<String>,
}

impl Variable {
    pub fn new<S: Into<String>>(name: impl Into<String>, instances: impl IntoIterator<Item = S>) -> Self {
        Variable {
            name: name.into(),
            instances: instances.into_iter().map(Into::into).collect(),
        }
    }

    pub fn index_of(&self, instance: &str) -> Option<usize> {
        self.instances.iter().position(|i| i == instance)
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }
}

/// Reference to a variable of a [`Frame`] by kind and position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarRef {
    Decision(usize),
    Chance(usize),
}

impl VarRef {
    pub fn is_decision(self) -> bool {
        matches!(self, VarRef::Decision(_))
    }
}

/// A (possibly partial) binding of variable names to instance symbols.
///
/// Renders as `var=instance` pairs joined by `;` in variable-name order,
/// which is also the key format used by the document encoding.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(pub BTreeMap<String, String>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    pub fn with(mut self, var: impl Into<String>, instance: impl Into<String>) -> Self {
        self.0.insert(var.into(), instance.into());
        self
    }

    pub fn get(&self, var: &str) -> Option<&str> {
        self.0.get(var).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Restriction to the given variable names.
    pub fn restrict<'a>(&self, vars: impl IntoIterator<Item = &'a str>) -> Assignment {
        let mut out = Assignment::new();
        for v in vars {
            if let Some(i) = self.0.get(v) {
                out.0.insert(v.to_string(), i.clone());
            }
        }
        out
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                f.write_str(";")?;
            }
            first = false;
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Assignment::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Schema {
                path: s.to_string(),
                message: format!("binding `{part}` is not of the form var=instance"),
            })?;
            out.0.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(out)
    }
}

/// A validation failure with a path to the offending element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl Violation {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for Violation {}

/// The variable vocabulary of a problem: decisions and chance variables,
/// each sorted by name, plus the decoded joint alternatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    decisions: Vec<Variable>,
    chances: Vec<Variable>,
    alternatives: Vec<Vec<usize>>,
}

impl Frame {
    pub fn new(mut decisions: Vec<Variable>, mut chances: Vec<Variable>) -> Result<Frame, Violation> {
        check_variables(&decisions, &chances)?;
        decisions.sort_by(|a, b| a.name.cmp(&b.name));
        chances.sort_by(|a, b| a.name.cmp(&b.name));
        let radices: Vec<usize> = decisions.iter().map(Variable::len).collect();
        let alternatives = mixed_radix(&radices);
        Ok(Frame {
            decisions,
            chances,
            alternatives,
        })
    }

    pub fn decisions(&self) -> &[Variable] {
        &self.decisions
    }

    pub fn chances(&self) -> &[Variable] {
        &self.chances
    }

    pub fn variable(&self, v: VarRef) -> &Variable {
        match v {
            VarRef::Decision(i) => &self.decisions[i],
            VarRef::Chance(i) => &self.chances[i],
        }
    }

    pub fn name(&self, v: VarRef) -> &str {
        &self.variable(v).name
    }

    pub fn resolve(&self, name: &str) -> Result<VarRef> {
        if let Some(i) = self.decisions.iter().position(|d| d.name == name) {
            return Ok(VarRef::Decision(i));
        }
        if let Some(i) = self.chances.iter().position(|c| c.name == name) {
            return Ok(VarRef::Chance(i));
        }
        Err(Error::UnknownVariable(name.to_string()))
    }

    /// Resolves a set of names, dropping duplicates; the result is ordered
    /// by variable name.
    pub fn resolve_set<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<VarRef>> {
        let mut seen = BTreeSet::new();
        for n in names {
            seen.insert(n.as_ref().to_string());
        }
        seen.iter().map(|n| self.resolve(n)).collect()
    }

    /// Resolves names that must all be chance variables.
    pub fn resolve_chances<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<VarRef>> {
        let refs = self.resolve_set(names)?;
        if let Some(d) = refs.iter().find(|r| r.is_decision()) {
            return Err(Error::DecisionNotAllowed(self.name(*d).to_string()));
        }
        Ok(refs)
    }

    /// All variables, decisions first, each group in name order.
    pub fn all_vars(&self) -> Vec<VarRef> {
        (0..self.decisions.len())
            .map(VarRef::Decision)
            .chain((0..self.chances.len()).map(VarRef::Chance))
            .collect()
    }

    pub fn decision_refs(&self) -> Vec<VarRef> {
        (0..self.decisions.len()).map(VarRef::Decision).collect()
    }

    pub fn chance_refs(&self) -> Vec<VarRef> {
        (0..self.chances.len()).map(VarRef::Chance).collect()
    }

    pub fn alternative_count(&self) -> usize {
        self.alternatives.len()
    }

    /// Decision instance indices of a joint alternative.
    pub fn alternative(&self, alt: usize) -> &[usize] {
        &self.alternatives[alt]
    }

    pub fn alternative_assignment(&self, alt: usize) -> Assignment {
        let mut a = Assignment::new();
        for (d, &i) in self.decisions.iter().zip(&self.alternatives[alt]) {
            a.0.insert(d.name.clone(), d.instances[i].clone());
        }
        a
    }

    pub fn alternative_index(&self, alt: &Assignment) -> Result<usize> {
        let mut index = 0usize;
        for d in &self.decisions {
            let inst = alt.get(&d.name).ok_or_else(|| Error::PartialInstance(d.name.clone()))?;
            let i = d.index_of(inst).ok_or_else(|| Error::UnknownInstance {
                variable: d.name.clone(),
                instance: inst.to_string(),
            })?;
            index = index * d.len() + i;
        }
        for k in alt.0.keys() {
            if !self.decisions.iter().any(|d| &d.name == k) {
                return Err(Error::UnknownVariable(k.clone()));
            }
        }
        Ok(index)
    }

    /// Number of joint realizations, saturating.
    pub fn realization_count(&self) -> u128 {
        self.chances
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    pub fn realization_assignment(&self, realization: &[usize]) -> Assignment {
        let mut a = Assignment::new();
        for (c, &i) in self.chances.iter().zip(realization) {
            a.0.insert(c.name.clone(), c.instances[i].clone());
        }
        a
    }

    pub fn realization_indices(&self, realization: &Assignment) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(self.chances.len());
        for c in &self.chances {
            let inst = realization
                .get(&c.name)
                .ok_or_else(|| Error::PartialInstance(c.name.clone()))?;
            out.push(c.index_of(inst).ok_or_else(|| Error::UnknownInstance {
                variable: c.name.clone(),
                instance: inst.to_string(),
            })?);
        }
        Ok(out)
    }

    /// Index of an instance symbol for a resolved variable.
    pub fn instance_index(&self, v: VarRef, instance: &str) -> Result<usize> {
        let var = self.variable(v);
        var.index_of(instance).ok_or_else(|| Error::UnknownInstance {
            variable: var.name.clone(),
            instance: instance.to_string(),
        })
    }
}

fn check_variables(decisions: &[Variable], chances: &[Variable]) -> Result<(), Violation> {
    let mut names = BTreeSet::new();
    let groups = [("decisions", decisions, 2usize), ("chances", chances, 1usize)];
    for (group, vars, min) in groups {
        for (i, v) in vars.iter().enumerate() {
            let path = format!("{group}[{i}]");
            if v.name.trim().is_empty() {
                return Err(Violation::new(format!("{path}.name"), "variable name is empty"));
            }
            if !names.insert(v.name.as_str()) {
                return Err(Violation::new(
                    format!("{path}.name"),
                    format!("duplicate variable name `{}`", v.name),
                ));
            }
            if v.instances.len() < min {
                return Err(Violation::new(
                    format!("{path}.instances"),
                    format!("`{}` needs at least {min} instance(s)", v.name),
                ));
            }
            let mut seen = BTreeSet::new();
            for inst in &v.instances {
                if inst.is_empty() {
                    return Err(Violation::new(format!("{path}.instances"), "empty instance symbol"));
                }
                if !seen.insert(inst.as_str()) {
                    return Err(Violation::new(
                        format!("{path}.instances"),
                        format!("duplicate instance `{inst}` in `{}`", v.name),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// All digit vectors of a mixed-radix number system, in lexicographic order.
pub(crate) fn mixed_radix(radices: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = radices.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; radices.len()];
    for _ in 0..total {
        out.push(digits.clone());
        for pos in (0..radices.len()).rev() {
            digits[pos] += 1;
            if digits[pos] < radices[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
    out
}

/// A state of the world: the realization obtained under every joint
/// alternative. `outcome[alt][chance]` is an instance index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WorldState {
    pub label: String,
    pub outcome: Vec<Vec<usize>>,
}

impl WorldState {
    pub fn realization(&self, alt: usize) -> &[usize] {
        &self.outcome[alt]
    }

    /// Instance index of `v` under alternative `alt`.
    pub fn value(&self, frame: &Frame, alt: usize, v: VarRef) -> usize {
        match v {
            VarRef::Decision(i) => frame.alternative(alt)[i],
            VarRef::Chance(i) => self.outcome[alt][i],
        }
    }

    pub fn outcome_map(&self, frame: &Frame) -> BTreeMap<Assignment, Assignment> {
        (0..frame.alternative_count())
            .map(|alt| {
                (
                    frame.alternative_assignment(alt),
                    frame.realization_assignment(&self.outcome[alt]),
                )
            })
            .collect()
    }
}

/// Enumerates every possible world state of a vocabulary: `r^a` of them,
/// where `r` is the number of joint realizations and `a` the number of
/// joint alternatives. States are ordered lexicographically by outcome and
/// labelled `1..=r^a`.
pub fn enumerate_states(
    decisions: &[Variable],
    chances: &[Variable],
    budget: u128,
) -> Result<Vec<WorldState>> {
    let frame = Frame::new(decisions.to_vec(), chances.to_vec())?;
    let r = frame.realization_count();
    let a = frame.alternative_count() as u32;
    let total = r.checked_pow(a).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::Budget {
            requested: total,
            budget,
        });
    }
    let realizations = mixed_radix(&frame.chances.iter().map(Variable::len).collect::<Vec<_>>());
    let picks = mixed_radix(&vec![realizations.len(); a as usize]);
    Ok(picks
        .into_iter()
        .enumerate()
        .map(|(i, pick)| WorldState {
            label: (i + 1).to_string(),
            outcome: pick.into_iter().map(|k| realizations[k].clone()).collect(),
        })
        .collect())
}

/// A problem as read from a document, before validation: outcomes are
/// name-keyed and may be incomplete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawProblem {
    pub decisions: Vec<Variable>,
    pub chances: Vec<Variable>,
    pub states: Vec<RawState>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawState {
    pub label: String,
    pub probability: Probability,
    pub outcome: BTreeMap<Assignment, Assignment>,
}

/// Checks every table invariant on a raw problem and returns the first
/// violation found. Duplicate outcome maps are not a violation: they are
/// merged on load.
pub fn validate_problem(raw: &RawProblem) -> Result<(), Violation> {
    DecisionProblem::from_raw(raw).map(|_| ())
}

/// A validated decision problem.
///
/// Invariants: only probability-positive states are stored (omitted or
/// zero-probability states are impossible), no two states share an outcome
/// map, states are sorted by outcome, labels are unique, and probabilities
/// sum to exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionProblem {
    frame: Frame,
    states: Vec<WorldState>,
    probabilities: Vec<Probability>,
}

impl DecisionProblem {
    pub fn from_raw(raw: &RawProblem) -> Result<DecisionProblem, Violation> {
        let frame = Frame::new(raw.decisions.clone(), raw.chances.clone())?;
        let mut states = Vec::with_capacity(raw.states.len());
        for (si, s) in raw.states.iter().enumerate() {
            let path = format!("states[{si}]");
            let mut outcome = vec![None; frame.alternative_count()];
            for (alt, real) in &s.outcome {
                let idx = frame.alternative_index(alt).map_err(|e| {
                    Violation::new(format!("{path}.outcome[{alt}]"), format!("bad alternative: {e}"))
                })?;
                let r = frame.realization_indices(real).map_err(|e| {
                    Violation::new(format!("{path}.outcome[{alt}]"), format!("bad realization: {e}"))
                })?;
                if real.len() != frame.chances.len() {
                    return Err(Violation::new(
                        format!("{path}.outcome[{alt}]"),
                        "realization binds unknown variables",
                    ));
                }
                outcome[idx] = Some(r);
            }
            if let Some(missing) = outcome.iter().position(Option::is_none) {
                return Err(Violation::new(
                    format!("{path}.outcome"),
                    format!(
                        "outcome not total: no realization for alternative {}",
                        frame.alternative_assignment(missing)
                    ),
                ));
            }
            states.push((
                WorldState {
                    label: s.label.clone(),
                    outcome: outcome.into_iter().map(Option::unwrap).collect(),
                },
                s.probability.clone(),
            ));
        }
        DecisionProblem::new(frame, states)
    }

    /// Builds a problem from indexed states. Zero-probability states are
    /// dropped and duplicate outcome maps merged (labels joined with `+`).
    pub fn new(frame: Frame, states: Vec<(WorldState, Probability)>) -> Result<DecisionProblem, Violation> {
        let mut total = Probability::zero();
        let mut merged: BTreeMap<Vec<Vec<usize>>, (Vec<String>, Probability)> = BTreeMap::new();
        for (si, (s, p)) in states.into_iter().enumerate() {
            let path = format!("states[{si}]");
            if !p.in_unit_interval() {
                return Err(Violation::new(
                    format!("{path}.probability"),
                    format!("probability {p} outside [0, 1]"),
                ));
            }
            if s.outcome.len() != frame.alternative_count() {
                return Err(Violation::new(format!("{path}.outcome"), "outcome not total"));
            }
            for real in &s.outcome {
                let ok = real.len() == frame.chances.len()
                    && real.iter().zip(&frame.chances).all(|(&i, c)| i < c.len());
                if !ok {
                    return Err(Violation::new(format!("{path}.outcome"), "realization not total over chance variables"));
                }
            }
            total += &p;
            if p.is_zero() {
                continue;
            }
            let entry = merged
                .entry(s.outcome)
                .or_insert_with(|| (Vec::new(), Probability::zero()));
            entry.0.push(s.label);
            entry.1 += p;
        }
        if !total.is_one() {
            return Err(Violation::new("states", format!("probabilities sum to {total}, not 1")));
        }
        let mut labels = BTreeSet::new();
        let mut out_states = Vec::with_capacity(merged.len());
        let mut probabilities = Vec::with_capacity(merged.len());
        for (outcome, (mut names, p)) in merged {
            names.sort();
            let label = names.join("+");
            if !labels.insert(label.clone()) {
                return Err(Violation::new("states", format!("duplicate state label `{label}`")));
            }
            out_states.push(WorldState { label, outcome });
            probabilities.push(p);
        }
        Ok(DecisionProblem {
            frame,
            states: out_states,
            probabilities,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn decisions(&self) -> &[Variable] {
        &self.frame.decisions
    }

    pub fn chances(&self) -> &[Variable] {
        &self.frame.chances
    }

    pub fn states(&self) -> &[WorldState] {
        &self.states
    }

    pub fn probability(&self, state: usize) -> &Probability {
        &self.probabilities[state]
    }

    pub fn weighted_states(&self) -> impl Iterator<Item = (&WorldState, &Probability)> {
        self.states.iter().zip(&self.probabilities)
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s.label == label)
    }

    /// Instance index of `v` in state `state` under alternative `alt`.
    pub fn value(&self, state: usize, alt: usize, v: VarRef) -> usize {
        self.states[state].value(&self.frame, alt, v)
    }

    /// Converts back to the name-keyed form (states in canonical order).
    pub fn to_raw(&self) -> RawProblem {
        RawProblem {
            decisions: self.frame.decisions.clone(),
            chances: self.frame.chances.clone(),
            states: self
                .weighted_states()
                .map(|(s, p)| RawState {
                    label: s.label.clone(),
                    probability: p.clone(),
                    outcome: s.outcome_map(&self.frame),
                })
                .collect(),
        }
    }

    /// Same variables and the same distribution over outcome maps, ignoring
    /// state labels.
    pub fn same_distribution(&self, other: &DecisionProblem) -> bool {
        self.frame == other.frame
            && self.states.len() == other.states.len()
            && self
                .states
                .iter()
                .zip(&other.states)
                .all(|(a, b)| a.outcome == b.outcome)
            && self.probabilities == other.probabilities
    }

    /// Fixes decision `name` to `instance` and drops it from the problem.
    pub fn restrict_decision(&self, name: &str, instance: &str) -> Result<DecisionProblem> {
        let v = self.frame.resolve(name)?;
        let VarRef::Decision(di) = v else {
            return Err(Error::ChanceNotAllowed(name.to_string()));
        };
        let fixed = self.frame.instance_index(v, instance)?;
        let mut decisions = self.frame.decisions.clone();
        decisions.remove(di);
        let frame = Frame::new(decisions, self.frame.chances.clone())?;
        let keep: Vec<usize> = (0..self.frame.alternative_count())
            .filter(|&alt| self.frame.alternative(alt)[di] == fixed)
            .collect();
        let states = self
            .weighted_states()
            .map(|(s, p)| {
                (
                    WorldState {
                        label: s.label.clone(),
                        outcome: keep.iter().map(|&alt| s.outcome[alt].clone()).collect(),
                    },
                    p.clone(),
                )
            })
            .collect();
        Ok(DecisionProblem::new(frame, states)?)
    }

    /// Keeps only the named chance variables; states that become identical
    /// are merged.
    pub fn project<S: AsRef<str>>(&self, keep: &[S]) -> Result<DecisionProblem> {
        let refs = self.frame.resolve_chances(keep)?;
        let idx: Vec<usize> = refs
            .iter()
            .map(|r| match r {
                VarRef::Chance(i) => *i,
                VarRef::Decision(_) => unreachable!(),
            })
            .collect();
        let chances = idx.iter().map(|&i| self.frame.chances[i].clone()).collect();
        let frame = Frame::new(self.frame.decisions.clone(), chances)?;
        let states = self
            .weighted_states()
            .map(|(s, p)| {
                (
                    WorldState {
                        label: s.label.clone(),
                        outcome: s
                            .outcome
                            .iter()
                            .map(|real| idx.iter().map(|&i| real[i]).collect())
                            .collect(),
                    },
                    p.clone(),
                )
            })
            .collect();
        Ok(DecisionProblem::new(frame, states)?)
    }

    /// Appends a chance variable whose instance in state `s` under
    /// alternative `alt` is `values[s][alt]`.
    pub fn with_chance_column(&self, var: Variable, values: &[Vec<usize>]) -> Result<DecisionProblem> {
        if values.len() != self.states.len() {
            return Err(Error::Misaligned("column length differs from state count".into()));
        }
        let mut chances = self.frame.chances.clone();
        let name = var.name.clone();
        chances.push(var);
        let frame = Frame::new(self.frame.decisions.clone(), chances)?;
        let VarRef::Chance(pos) = frame.resolve(&name)? else {
            unreachable!()
        };
        let states = self
            .weighted_states()
            .zip(values)
            .map(|((s, p), col)| {
                let outcome = s
                    .outcome
                    .iter()
                    .zip(col)
                    .map(|(real, &v)| {
                        let mut r = real.clone();
                        r.insert(pos, v);
                        r
                    })
                    .collect();
                (
                    WorldState {
                        label: s.label.clone(),
                        outcome,
                    },
                    p.clone(),
                )
            })
            .collect();
        Ok(DecisionProblem::new(frame, states)?)
    }
}

/// Distribution over joint realizations under a fixed joint alternative.
pub fn joint_distribution(
    problem: &DecisionProblem,
    alternative: &Assignment,
) -> Result<BTreeMap<Assignment, Probability>> {
    let alt = problem.frame.alternative_index(alternative)?;
    let mut out: BTreeMap<Assignment, Probability> = BTreeMap::new();
    for (s, p) in problem.weighted_states() {
        *out.entry(problem.frame.realization_assignment(s.realization(alt)))
            .or_insert_with(Probability::zero) += p;
    }
    Ok(out)
}

/// Marginal distribution of `vars` under alternative `alt`, keyed by the
/// tuple of instance indices.
pub(crate) fn marginal(problem: &DecisionProblem, vars: &[VarRef], alt: usize) -> BTreeMap<Vec<usize>, Probability> {
    let mut out: BTreeMap<Vec<usize>, Probability> = BTreeMap::new();
    for (si, p) in problem.probabilities.iter().enumerate() {
        let key = vars.iter().map(|&v| problem.value(si, alt, v)).collect();
        *out.entry(key).or_insert_with(Probability::zero) += p;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn smoke_vars() -> (Vec<Variable>, Vec<Variable>) {
        (
            vec![Variable::new("s", ["continue", "quit"])],
            vec![Variable::new("l", ["cancer", "no_cancer"])],
        )
    }

    #[test]
    fn enumerates_r_to_the_a() {
        let (d, c) = smoke_vars();
        let states = enumerate_states(&d, &c, 1000).unwrap();
        assert_eq!(states.len(), 4);
        let medical = enumerate_states(
            &[Variable::new("r", ["take", "dont"])],
            &[Variable::new("t", ["yes", "no"]), Variable::new("c", ["yes", "no"])],
            1000,
        )
        .unwrap();
        assert_eq!(medical.len(), 16);
        let distinct: BTreeSet<_> = medical.iter().map(|s| s.outcome.clone()).collect();
        assert_eq!(distinct.len(), 16);
    }

    #[test]
    fn no_decisions_gives_one_state_per_realization() {
        let states = enumerate_states(&[], &[Variable::new("x", ["a", "b", "c"])], 10).unwrap();
        assert_eq!(states.len(), 3);
    }

    #[test]
    fn enumeration_respects_budget() {
        let (d, c) = smoke_vars();
        assert!(matches!(enumerate_states(&d, &c, 3), Err(Error::Budget { requested: 4, .. })));
    }

    fn raw_smoke(probs: [(i64, i64); 4]) -> RawProblem {
        let (d, c) = smoke_vars();
        let rows = [("cancer", "no_cancer"), ("no_cancer", "no_cancer"), ("cancer", "cancer"), ("no_cancer", "cancer")];
        RawProblem {
            decisions: d,
            chances: c,
            states: rows
                .iter()
                .zip(probs)
                .enumerate()
                .map(|(i, ((cont, quit), (n, dd)))| RawState {
                    label: (i + 1).to_string(),
                    probability: Probability::new(n, dd),
                    outcome: [
                        (Assignment::new().with("s", "continue"), Assignment::new().with("l", *cont)),
                        (Assignment::new().with("s", "quit"), Assignment::new().with("l", *quit)),
                    ]
                    .into_iter()
                    .collect(),
                })
                .collect(),
        }
    }

    #[test]
    fn normalization_failure_is_reported() {
        let raw = raw_smoke([(1, 4), (1, 4), (1, 4), (1, 6)]);
        let v = validate_problem(&raw).unwrap_err();
        assert_eq!(v.path, "states");
        assert!(v.message.contains("sum to 11/12"), "{v}");
    }

    #[test]
    fn missing_alternative_is_reported() {
        let mut raw = raw_smoke([(1, 4); 4]);
        raw.states[2].outcome.remove(&Assignment::new().with("s", "quit"));
        let v = validate_problem(&raw).unwrap_err();
        assert_eq!(v.path, "states[2].outcome");
        assert!(v.message.contains("outcome not total"));
    }

    #[test]
    fn zero_states_dropped_and_duplicates_merged() {
        let mut raw = raw_smoke([(1, 2), (1, 4), (1, 4), (0, 1)]);
        let mut dup = raw.states[0].clone();
        dup.label = "1b".into();
        dup.probability = Probability::new(1, 4);
        raw.states[0].probability = Probability::new(1, 4);
        raw.states.push(dup);
        let p = DecisionProblem::from_raw(&raw).unwrap();
        assert_eq!(p.states().len(), 3);
        let i = p.state_index("1+1b").unwrap();
        assert_eq!(p.probability(i), &Probability::new(1, 2));
    }

    #[test]
    fn joint_distribution_sums_to_one() {
        let p = DecisionProblem::from_raw(&raw_smoke([(1, 2), (1, 4), (1, 4), (0, 1)])).unwrap();
        let cont = joint_distribution(&p, &Assignment::new().with("s", "continue")).unwrap();
        assert_eq!(cont[&Assignment::new().with("l", "cancer")], Probability::new(3, 4));
        let total: Probability = cont.values().sum();
        assert!(total.is_one());
        assert!(joint_distribution(&p, &Assignment::new().with("s", "maybe")).is_err());
    }

    #[test]
    fn restrict_and_project() {
        let p = DecisionProblem::from_raw(&raw_smoke([(1, 4); 4])).unwrap();
        let q = p.restrict_decision("s", "quit").unwrap();
        assert_eq!(q.frame().alternative_count(), 1);
        assert_eq!(q.states().len(), 2);
        let empty = p.project::<&str>(&[]).unwrap();
        assert_eq!(empty.states().len(), 1);
    }
}
