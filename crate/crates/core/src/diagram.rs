//! Canonical-form influence diagrams.
//!
//! A diagram is in canonical form when every chance node that responds to
//! the decisions descends from a decision node, and every node descending
//! from a decision node is deterministic. [`canonicalize`] builds such a
//! diagram from a table: unresponsive variables become chance roots,
//! every responsive variable `x` becomes a deterministic function of a
//! cause set `C` and a latent mechanism `x(C)`, and the dependencies among
//! the chance roots are read off the table's distribution.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::causes::{find_causes_among, DEFAULT_SUBSET_CAP};
use crate::error::{Error, Result};
use crate::mapping::{augment_with_set_decisions, extract_mapping_variable, mapping_name, render_map, Map, SET_PREFIX};
use crate::model::{mixed_radix, DecisionProblem, VarRef, Variable};
use crate::prob::Probability;
use crate::responsiveness::limited;
use crate::structural::{flatten_with, FlattenOptions, InfluenceDiagram, Node, NodeKind, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Clause {
    /// A responsive chance node that does not descend from a decision.
    Responsive,
    /// A non-deterministic node that descends from a decision.
    Deterministic,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Responsive => "clause 1",
            Clause::Deterministic => "clause 2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalViolation {
    pub node: String,
    pub clause: Clause,
    pub explanation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalVerdict {
    pub is_canonical: bool,
    pub violations: Vec<CanonicalViolation>,
    /// Nodes whose responsiveness could not be determined.
    pub warnings: Vec<String>,
}

impl fmt::Display for CanonicalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_canonical {
            writeln!(f, "canonical")?;
        } else {
            writeln!(f, "not canonical")?;
        }
        for v in &self.violations {
            writeln!(f, "  {} ({}): {}", v.node, v.clause, v.explanation)?;
        }
        for w in &self.warnings {
            writeln!(f, "  warning: {w}")?;
        }
        Ok(())
    }
}

/// Checks canonical form, using `problem` to decide which of the
/// diagram's variables respond to the decisions. Diagram nodes absent
/// from `problem` (mechanisms) are judged on the diagram's own flattened
/// semantics when it has one.
pub fn check_canonical_form(diagram: &InfluenceDiagram, problem: &DecisionProblem) -> Result<CanonicalVerdict> {
    let frame = problem.frame();
    for d in frame.decisions() {
        let ok = diagram.by_name(&d.name).is_ok_and(|n| n.is_decision() && n.instances == d.instances);
        if !ok {
            return Err(Error::Misaligned(format!("decision `{}` does not match a decision node", d.name)));
        }
    }
    for c in frame.chances() {
        let ok = diagram.by_name(&c.name).is_ok_and(|n| !n.is_decision() && n.instances == c.instances);
        if !ok {
            return Err(Error::Misaligned(format!("chance variable `{}` does not match a node", c.name)));
        }
    }
    if let Some(n) = diagram.nodes().iter().find(|n| n.is_decision() && frame.resolve(&n.name).is_err()) {
        return Err(Error::Misaligned(format!("decision node `{}` is not in the problem", n.name)));
    }
    let dd = diagram.decision_descendants();
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    let extras: Vec<usize> = (0..diagram.nodes().len())
        .filter(|&i| !diagram.node(i).is_decision() && frame.resolve(&diagram.node(i).name).is_err())
        .collect();
    let full = if extras.iter().any(|i| !dd.contains(i)) && diagram.is_structural() {
        Some(flatten_with(
            diagram,
            FlattenOptions {
                include_latent: true,
                budget: DEFAULT_BUDGET,
            },
        )?)
    } else {
        None
    };
    for (i, node) in diagram.nodes().iter().enumerate() {
        if node.is_decision() {
            continue;
        }
        if dd.contains(&i) {
            if node.is_chance() {
                violations.push(CanonicalViolation {
                    node: node.name.clone(),
                    clause: Clause::Deterministic,
                    explanation: "descends from a decision but is not deterministic".into(),
                });
            }
            continue;
        }
        let verdict = match frame.resolve(&node.name) {
            Ok(v) => Some(limited(problem, &[v], &[])),
            Err(_) => match &full {
                Some(p) => Some(limited(p, &[p.frame().resolve(&node.name)?], &[])),
                None => None,
            },
        };
        match verdict {
            Some(v) if !v.holds => violations.push(CanonicalViolation {
                node: node.name.clone(),
                clause: Clause::Responsive,
                explanation: format!(
                    "responds to the decisions but has no decision ancestor; {}",
                    v.witness.expect("failing verdict")
                ),
            }),
            Some(_) => {}
            None => warnings.push(format!("responsiveness of `{}` is undetermined", node.name)),
        }
    }
    Ok(CanonicalVerdict {
        is_canonical: violations.is_empty(),
        violations,
        warnings,
    })
}

/// Canonical-form check against the diagram's own semantics, latent nodes
/// included. A diagram without state semantics can only fail clause 2.
pub fn check_canonical_self(diagram: &InfluenceDiagram) -> Result<CanonicalVerdict> {
    if diagram.is_structural() {
        let p = flatten_with(
            diagram,
            FlattenOptions {
                include_latent: true,
                budget: DEFAULT_BUDGET,
            },
        )?;
        return check_canonical_form(diagram, &p);
    }
    let dd = diagram.decision_descendants();
    let violations = dd
        .iter()
        .filter(|&&i| diagram.node(i).is_chance())
        .map(|&i| CanonicalViolation {
            node: diagram.node(i).name.clone(),
            clause: Clause::Deterministic,
            explanation: "descends from a decision but is not deterministic".into(),
        })
        .collect();
    Ok(CanonicalVerdict {
        is_canonical: false,
        violations,
        warnings: Vec::new(),
    })
}

/// Caller choices for [`canonicalize`].
#[derive(Clone, Debug, Default)]
pub struct CanonicalizeOptions {
    /// Order of the chance variables; unresponsive ones must come first.
    pub ordering: Option<Vec<String>>,
    /// Cause set for a responsive variable, drawn from the decisions and
    /// the variables before it.
    pub cause_choice: BTreeMap<String, Vec<String>>,
}

/// Preference among minimal cause sets: fewest decisions, then fewest
/// members, then lexicographic.
fn preference(problem: &DecisionProblem, set: &[String]) -> (usize, usize, Vec<String>) {
    let decisions = set
        .iter()
        .filter(|n| problem.frame().resolve(n).is_ok_and(VarRef::is_decision))
        .count();
    (decisions, set.len(), set.to_vec())
}

fn preferred_cause(problem: &DecisionProblem, x: VarRef, candidates: &[VarRef]) -> Result<Vec<String>> {
    let report = find_causes_among(problem, x, candidates, None, DEFAULT_SUBSET_CAP)?;
    report
        .minimal_sets
        .into_iter()
        .min_by_key(|s| preference(problem, s))
        .ok_or(Error::Budget {
            requested: DEFAULT_SUBSET_CAP as u128 + 1,
            budget: DEFAULT_SUBSET_CAP as u128,
        })
}

/// Unresponsive variables first (name order), then the responsive ones,
/// each placed after the responsive members of its preferred cause set
/// where possible.
pub fn default_ordering(problem: &DecisionProblem) -> Result<Vec<String>> {
    let frame = problem.frame();
    let (fixed, mut open): (Vec<VarRef>, Vec<VarRef>) =
        frame.chance_refs().into_iter().partition(|&x| limited(problem, &[x], &[]).holds);
    let mut deps: BTreeMap<VarRef, Vec<VarRef>> = BTreeMap::new();
    for &x in &open {
        let candidates: Vec<VarRef> = frame.all_vars().into_iter().filter(|&v| v != x).collect();
        let set = preferred_cause(problem, x, &candidates)?;
        let responsive = set
            .iter()
            .map(|n| frame.resolve(n))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|v| open.contains(v))
            .collect();
        deps.insert(x, responsive);
    }
    let mut order: Vec<VarRef> = fixed;
    while !open.is_empty() {
        let pick = open
            .iter()
            .position(|x| deps[x].iter().all(|d| order.contains(d)))
            .unwrap_or(0);
        order.push(open.remove(pick));
    }
    Ok(order.into_iter().map(|v| frame.name(v).to_string()).collect())
}

/// Builds a canonical-form diagram whose flattening is `problem`.
pub fn canonicalize(problem: &DecisionProblem, options: &CanonicalizeOptions) -> Result<InfluenceDiagram> {
    let frame = problem.frame();
    let ordering = match &options.ordering {
        Some(o) => o.clone(),
        None => default_ordering(problem)?,
    };
    let order: Vec<VarRef> = ordering.iter().map(|n| frame.resolve(n)).collect::<Result<_>>()?;
    if let Some(d) = order.iter().find(|v| v.is_decision()) {
        return Err(Error::Model(format!("ordering lists decision `{}`", frame.name(*d))));
    }
    let listed: BTreeSet<VarRef> = order.iter().copied().collect();
    if listed.len() != order.len() || listed.len() != frame.chances().len() {
        return Err(Error::Model("ordering must list every chance variable exactly once".into()));
    }
    let responsive: Vec<bool> = order.iter().map(|&x| !limited(problem, &[x], &[]).holds).collect();
    if let Some(k) = (1..order.len()).find(|&k| responsive[k - 1] && !responsive[k]) {
        return Err(Error::Model(format!(
            "ordering places responsive `{}` before unresponsive `{}`",
            frame.name(order[k - 1]),
            frame.name(order[k])
        )));
    }

    let mut nodes: Vec<Node> = frame.decisions().iter().map(|d| Node::decision(d.name.clone(), d.instances.clone())).collect();
    // chance roots in order: unresponsive variables, then mechanisms;
    // each with its per-state instance
    let mut roots: Vec<(Variable, bool, Vec<usize>)> = Vec::new();
    for (k, &x) in order.iter().enumerate() {
        if !responsive[k] {
            let column = (0..problem.states().len()).map(|si| problem.value(si, 0, x)).collect();
            roots.push((frame.variable(x).clone(), false, column));
        }
    }
    for (k, &x) in order.iter().enumerate() {
        if !responsive[k] {
            continue;
        }
        let name = frame.name(x);
        let mut candidates = frame.decision_refs();
        candidates.extend(&order[..k]);
        let cause = match options.cause_choice.get(name) {
            Some(c) => {
                let refs = frame.resolve_set(c)?;
                if let Some(bad) = refs.iter().find(|v| !candidates.contains(v)) {
                    return Err(Error::Model(format!(
                        "cause choice for `{name}` uses `{}`, which is neither a decision nor an earlier variable",
                        frame.name(*bad)
                    )));
                }
                if let Some(w) = limited(problem, &[x], &refs).witness {
                    return Err(Error::Inconsistent { witness: Box::new(w) });
                }
                refs.iter().map(|&v| frame.name(v).to_string()).collect()
            }
            None => preferred_cause(problem, x, &candidates)?,
        };
        let mv = extract_mapping_variable(problem, &[name.to_string()], &cause)?;
        let column = problem.states().iter().map(|s| mv.per_state[&s.label]).collect();
        let mut parents = cause.clone();
        parents.push(mv.name.clone());
        let mut radices: Vec<usize> = mv.domain_vars.iter().map(Variable::len).collect();
        radices.push(mv.instances.len());
        let table = mixed_radix(&radices)
            .into_iter()
            .map(|row| {
                let (c, m) = row.split_at(row.len() - 1);
                mv.image(m[0], c).map(|v| v[0])
            })
            .collect();
        let var = frame.variable(x);
        nodes.push(Node::deterministic(name, var.instances.clone(), parents, table));
        roots.push((mv.variable(), true, column));
    }

    let mut joint: BTreeMap<Vec<usize>, Probability> = BTreeMap::new();
    for si in 0..problem.states().len() {
        let key = roots.iter().map(|r| r.2[si]).collect();
        *joint.entry(key).or_insert_with(Probability::zero) += problem.probability(si);
    }
    let sizes: Vec<usize> = roots.iter().map(|r| r.0.len()).collect();
    for k in 0..roots.len() {
        let mut parents: Vec<usize> = (0..k).collect();
        for w in (0..k).rev() {
            let rest: Vec<usize> = parents.iter().copied().filter(|&p| p != w).collect();
            if conditionally_independent(&joint, k, w, &rest) {
                parents = rest;
            }
        }
        let cpt = conditional_table(&joint, k, &parents, &sizes);
        let (var, latent, _) = &roots[k];
        let node = Node::chance(
            var.name.clone(),
            var.instances.clone(),
            parents.iter().map(|&p| roots[p].0.name.clone()).collect(),
            cpt,
        );
        nodes.push(if *latent { node.latent() } else { node });
    }
    InfluenceDiagram::new(nodes)
}

fn marginal_on(joint: &BTreeMap<Vec<usize>, Probability>, idx: &[usize]) -> BTreeMap<Vec<usize>, Probability> {
    let mut out: BTreeMap<Vec<usize>, Probability> = BTreeMap::new();
    for (k, p) in joint {
        *out.entry(idx.iter().map(|&i| k[i]).collect()).or_insert_with(Probability::zero) += p;
    }
    out
}

/// Exact test of `a ⊥ b | given` on a joint over index tuples.
pub(crate) fn conditionally_independent(
    joint: &BTreeMap<Vec<usize>, Probability>,
    a: usize,
    b: usize,
    given: &[usize],
) -> bool {
    let with = |extra: &[usize]| {
        let mut idx = given.to_vec();
        idx.extend(extra);
        marginal_on(joint, &idx)
    };
    let pab = with(&[a, b]);
    let pa = with(&[a]);
    let pb = with(&[b]);
    let ps = with(&[]);
    let n = given.len();
    for (ka, qa) in &pa {
        for (kb, qb) in pb.range(ka[..n].to_vec()..) {
            if kb[..n] != ka[..n] {
                break;
            }
            let mut key = ka.clone();
            key.push(kb[n]);
            let qab = pab.get(&key).cloned().unwrap_or_else(Probability::zero);
            if &qab * &ps[&ka[..n].to_vec()] != qa * qb {
                return false;
            }
        }
    }
    true
}

/// `P(k | parents)` rows in mixed-radix order over the parents; rows of
/// probability zero get the uniform distribution.
fn conditional_table(
    joint: &BTreeMap<Vec<usize>, Probability>,
    k: usize,
    parents: &[usize],
    sizes: &[usize],
) -> Vec<Vec<Probability>> {
    let mut idx = parents.to_vec();
    idx.push(k);
    let pk = marginal_on(joint, &idx);
    let pp = marginal_on(joint, parents);
    mixed_radix(&parents.iter().map(|&p| sizes[p]).collect::<Vec<_>>())
        .into_iter()
        .map(|row| match pp.get(&row) {
            Some(total) if total.is_positive() => (0..sizes[k])
                .map(|v| {
                    let mut key = row.clone();
                    key.push(v);
                    pk.get(&key).map_or_else(Probability::zero, |q| q / total)
                })
                .collect(),
            _ => vec![Probability::uniform(sizes[k]); sizes[k]],
        })
        .collect()
}

/// d-separation of `X` and `Y` given `Z` in the diagram's graph.
pub fn d_separated<S: AsRef<str>>(diagram: &InfluenceDiagram, x: &[S], y: &[S], z: &[S]) -> Result<bool> {
    let resolve = |v: &[S]| -> Result<BTreeSet<usize>> { v.iter().map(|n| diagram.index_of(n.as_ref())).collect() };
    let (xs, ys, zs) = (resolve(x)?, resolve(y)?, resolve(z)?);
    if !xs.is_disjoint(&ys) || !xs.is_disjoint(&zs) || !ys.is_disjoint(&zs) {
        return Err(Error::Misaligned("d-separation needs disjoint node sets".into()));
    }
    let reach = reachable(diagram, &xs, &zs);
    Ok(ys.is_disjoint(&reach))
}

/// Nodes reachable from `xs` along active trails given `zs`.
fn reachable(diagram: &InfluenceDiagram, xs: &BTreeSet<usize>, zs: &BTreeSet<usize>) -> BTreeSet<usize> {
    let zvec: Vec<usize> = zs.iter().copied().collect();
    let mut opened = diagram.ancestors(&zvec);
    opened.extend(zs);
    // `true` = arrived from a child, moving up
    let mut stack: Vec<(usize, bool)> = xs.iter().map(|&x| (x, true)).collect();
    let mut visited = BTreeSet::new();
    let mut out = BTreeSet::new();
    while let Some((n, up)) = stack.pop() {
        if !visited.insert((n, up)) {
            continue;
        }
        let blocked = zs.contains(&n);
        if !blocked {
            out.insert(n);
        }
        if up && !blocked {
            stack.extend(diagram.parents_of(n).iter().map(|&p| (p, true)));
            stack.extend(diagram.children_of(n).into_iter().map(|c| (c, false)));
        } else if !up {
            if !blocked {
                stack.extend(diagram.children_of(n).into_iter().map(|c| (c, false)));
            }
            if opened.contains(&n) {
                stack.extend(diagram.parents_of(n).iter().map(|&p| (p, true)));
            }
        }
    }
    out
}

/// Independent probabilities needed by the chance nodes.
pub fn count_parameters(diagram: &InfluenceDiagram) -> u128 {
    (0..diagram.nodes().len())
        .filter(|&i| diagram.node(i).is_chance())
        .map(|i| (diagram.node(i).instances.len() as u128 - 1) * diagram.row_count(i) as u128)
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PearlReport {
    /// Old and new mechanism names.
    pub absorbed: Vec<(String, String)>,
    pub set_decisions: Vec<String>,
    pub disturbances: Vec<String>,
    pub independent: bool,
    pub dependent_pairs: Vec<(String, String)>,
    pub parameters_before: u128,
    pub parameters_after: u128,
}

impl fmt::Display for PearlReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (old, new) in &self.absorbed {
            writeln!(f, "absorbed {old} into {new}")?;
        }
        writeln!(f, "set decisions: {}", self.set_decisions.join(", "))?;
        writeln!(f, "disturbances: {}", self.disturbances.join(", "))?;
        if self.independent {
            writeln!(f, "disturbances are mutually independent")?;
        } else {
            writeln!(f, "disturbances are dependent")?;
            for (a, b) in &self.dependent_pairs {
                writeln!(f, "  {a} and {b} are dependent; consider introducing a hidden common cause")?;
            }
        }
        writeln!(f, "parameters: {} -> {}", self.parameters_before, self.parameters_after)
    }
}

/// The single latent chance parent of `x` that feeds nothing else.
fn mechanism_of(diagram: &InfluenceDiagram, x: usize) -> Option<usize> {
    diagram
        .parents_of(x)
        .iter()
        .copied()
        .find(|&m| diagram.node(m).is_chance() && diagram.node(m).latent && diagram.children_of(m) == [x])
}

/// Converts a canonical diagram into a causal theory: each mechanism
/// absorbs its observable chance parents, becoming a disturbance, and
/// every deterministic node gets a set decision.
pub fn export_pearl(diagram: &InfluenceDiagram) -> Result<(InfluenceDiagram, PearlReport)> {
    let verdict = check_canonical_self(diagram)?;
    if !verdict.is_canonical {
        let names: Vec<String> = verdict.violations.iter().map(|v| v.node.clone()).collect();
        return Err(Error::NotCanonical(format!("violations at {}", names.join(", "))));
    }
    let mut nodes: Vec<Node> = diagram.nodes().to_vec();
    let mut absorbed = Vec::new();
    for x in 0..diagram.nodes().len() {
        if !diagram.node(x).is_deterministic() {
            continue;
        }
        let Some(m) = mechanism_of(diagram, x) else { continue };
        let observed: Vec<usize> = diagram
            .parents_of(m)
            .iter()
            .copied()
            .filter(|&p| !diagram.node(p).latent && !diagram.node(p).is_decision())
            .collect();
        if observed.is_empty() {
            continue;
        }
        let (new_x, new_m) = absorb(diagram, x, m, &observed)?;
        absorbed.push((diagram.node(m).name.clone(), new_m.name.clone()));
        let old_m = diagram.node(m).name.clone();
        nodes.retain(|n| n.name != old_m);
        let pos = nodes.iter().position(|n| n.name == diagram.node(x).name).expect("node");
        nodes[pos] = new_x;
        nodes.push(new_m);
    }
    let mut theory = InfluenceDiagram::new(nodes)?;
    let targets: Vec<String> = theory
        .nodes()
        .iter()
        .filter(|n| n.is_deterministic() && theory.by_name(&format!("{SET_PREFIX}{}", n.name)).is_err())
        .map(|n| n.name.clone())
        .collect();
    theory = augment_with_set_decisions(&theory, &targets)?;
    let disturbances: Vec<usize> = (0..theory.nodes().len()).filter(|&i| theory.node(i).is_chance()).collect();
    let alt = vec![0; theory.decision_indices().len()];
    let full = theory.joint_at(&alt, DEFAULT_BUDGET)?;
    let joint = marginal_on(&full, &disturbances);
    let positions: Vec<usize> = (0..disturbances.len()).collect();
    let independent = mutually_independent(&joint, &positions);
    let mut dependent_pairs = Vec::new();
    for a in 0..disturbances.len() {
        for b in a + 1..disturbances.len() {
            if !conditionally_independent(&joint, a, b, &[]) {
                dependent_pairs.push((
                    theory.node(disturbances[a]).name.clone(),
                    theory.node(disturbances[b]).name.clone(),
                ));
            }
        }
    }
    let report = PearlReport {
        absorbed,
        set_decisions: targets.iter().map(|t| format!("{SET_PREFIX}{t}")).collect(),
        disturbances: disturbances.iter().map(|&i| theory.node(i).name.clone()).collect(),
        independent,
        dependent_pairs,
        parameters_before: count_parameters(diagram),
        parameters_after: count_parameters(&theory),
    };
    Ok((theory, report))
}

fn mutually_independent(joint: &BTreeMap<Vec<usize>, Probability>, vars: &[usize]) -> bool {
    let marginals: Vec<BTreeMap<Vec<usize>, Probability>> = vars.iter().map(|&v| marginal_on(joint, &[v])).collect();
    let supports: Vec<Vec<&Vec<usize>>> = marginals.iter().map(|m| m.keys().collect()).collect();
    mixed_radix(&supports.iter().map(Vec::len).collect::<Vec<_>>())
        .into_iter()
        .all(|pick| {
            let key: Vec<usize> = pick.iter().enumerate().map(|(k, &i)| supports[k][i][0]).collect();
            let product = pick
                .iter()
                .enumerate()
                .fold(Probability::one(), |acc, (k, &i)| &acc * &marginals[k][supports[k][i]]);
            joint.get(&key).cloned().unwrap_or_else(Probability::zero) == product
        })
}

/// Replaces mechanism `m` of `x` by one over `C ∪ P`, where `C` are the
/// other parents of `x` and `P` the observed parents of `m`. A new
/// instance picks one old instance per `P`-row, independently with the
/// old conditional probabilities; instances inducing the same function
/// are merged.
fn absorb(diagram: &InfluenceDiagram, x: usize, m: usize, observed: &[usize]) -> Result<(Node, Node)> {
    let xn = diagram.node(x);
    let mn = diagram.node(m);
    let NodeKind::Deterministic { table } = &xn.kind else { unreachable!() };
    let NodeKind::Chance { cpt } = &mn.kind else { unreachable!() };
    let others: Vec<usize> = diagram.parents_of(x).iter().copied().filter(|&p| p != m).collect();
    let latent: Vec<usize> = diagram.parents_of(m).iter().copied().filter(|p| !observed.contains(p)).collect();
    let size = |v: &[usize]| -> Vec<usize> { v.iter().map(|&i| diagram.node(i).instances.len()).collect() };
    let c_rows = mixed_radix(&size(&others));
    let p_rows = mixed_radix(&size(observed));
    let l_rows = mixed_radix(&size(&latent));
    let k = mn.instances.len();
    let tuples = (k as u128).checked_pow(p_rows.len() as u32).unwrap_or(u128::MAX);
    if tuples > DEFAULT_BUDGET {
        return Err(Error::Budget {
            requested: tuples,
            budget: DEFAULT_BUDGET,
        });
    }
    let n = diagram.nodes().len();
    let x_of = |c: &[usize], inst: usize| -> Option<usize> {
        let mut values = vec![0; n];
        for (&p, &v) in others.iter().zip(c) {
            values[p] = v;
        }
        values[m] = inst;
        table[diagram.row_index(x, &values)]
    };
    let m_row = |p: &[usize], l: &[usize]| -> usize {
        let mut values = vec![0; n];
        for (&i, &v) in observed.iter().zip(p).chain(latent.iter().zip(l)) {
            values[i] = v;
        }
        diagram.row_index(m, &values)
    };
    let picks = mixed_radix(&vec![k; p_rows.len()]);
    // function over (c, p) rows, c most significant
    let functions: Vec<Vec<Option<usize>>> = picks
        .iter()
        .map(|pick| {
            c_rows
                .iter()
                .flat_map(|c| pick.iter().map(move |&inst| x_of(c, inst)))
                .collect()
        })
        .collect();
    let mut distinct: Vec<Vec<Option<usize>>> = Vec::new();
    let mut which = Vec::with_capacity(picks.len());
    for f in &functions {
        let i = distinct.iter().position(|d| d == f).unwrap_or_else(|| {
            distinct.push(f.clone());
            distinct.len() - 1
        });
        which.push(i);
    }
    let new_cpt = l_rows
        .iter()
        .map(|l| {
            let mut row = vec![Probability::zero(); distinct.len()];
            for (pick, &i) in picks.iter().zip(&which) {
                let q = pick
                    .iter()
                    .zip(&p_rows)
                    .fold(Probability::one(), |acc, (&inst, p)| &acc * &cpt[m_row(p, l)][inst]);
                row[i] += q;
            }
            row
        })
        .collect();
    let name = |v: &[usize]| -> Vec<String> { v.iter().map(|&i| diagram.node(i).name.clone()).collect() };
    let mut domain = name(&others);
    domain.extend(name(observed));
    let new_name = mapping_name(std::slice::from_ref(&xn.name), &domain);
    let domain_vars: Vec<Variable> = others.iter().chain(observed).map(|&i| diagram.node(i).variable()).collect();
    let range = [xn.variable()];
    let instances: Vec<String> = distinct
        .iter()
        .map(|f| {
            let map: Map = f.iter().map(|v| v.map(|v| vec![v])).collect();
            render_map(&domain_vars, &range, &map)
        })
        .collect();
    let new_m = Node::chance(new_name.clone(), instances, name(&latent), new_cpt).latent();
    let mut parents = domain;
    parents.push(new_name);
    let new_table = c_rows
        .iter()
        .enumerate()
        .flat_map(|(ci, _)| {
            let distinct = &distinct;
            let np = p_rows.len();
            (0..np).flat_map(move |pi| distinct.iter().map(move |f| f[ci * np + pi]))
        })
        .collect();
    let new_x = Node {
        parents,
        kind: NodeKind::Deterministic { table: new_table },
        ..xn.clone()
    };
    Ok((new_x, new_m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::structural::flatten;

    fn arcs(d: &InfluenceDiagram) -> BTreeSet<(String, String)> {
        d.nodes()
            .iter()
            .flat_map(|n| n.parents.iter().map(move |p| (p.clone(), n.name.clone())))
            .collect()
    }

    fn arc(a: &str, b: &str) -> (String, String) {
        (a.to_string(), b.to_string())
    }

    #[test]
    fn figure_one_a_is_not_canonical() {
        let v = check_canonical_form(&corpus::fig1a(), &corpus::medical()).unwrap();
        assert!(!v.is_canonical);
        assert!(v.violations.iter().any(|x| x.node == "t" && x.clause == Clause::Deterministic));
    }

    #[test]
    fn figure_one_b_is_canonical() {
        let v = check_canonical_form(&corpus::fig1b(), &corpus::medical()).unwrap();
        assert!(v.is_canonical, "{v}");
    }

    #[test]
    fn no_decisions_is_vacuously_canonical() {
        let d = InfluenceDiagram::new(vec![Node::chance("x", ["a", "b"], vec![], vec![vec![Probability::new(1, 2); 2]])])
            .unwrap();
        assert!(check_canonical_self(&d).unwrap().is_canonical);
    }

    #[test]
    fn medical_canonical_form() {
        let p = corpus::medical();
        let d = canonicalize(&p, &CanonicalizeOptions::default()).unwrap();
        let a = arcs(&d);
        for (x, y) in [("r", "t"), ("t(r)", "t"), ("t", "c"), ("c(t)", "c"), ("t(r)", "c(t)")] {
            assert!(a.contains(&arc(x, y)), "missing {x} -> {y}");
        }
        assert!(check_canonical_form(&d, &p).unwrap().is_canonical);
        assert!(flatten(&d).unwrap().same_distribution(&p));
    }

    #[test]
    fn gene_canonical_form_has_no_mechanism_arc() {
        let p = corpus::medical_gene();
        let opts = CanonicalizeOptions {
            ordering: Some(vec!["g".into(), "t".into(), "c".into()]),
            ..Default::default()
        };
        let d = canonicalize(&p, &opts).unwrap();
        let a = arcs(&d);
        assert!(a.contains(&arc("g", "t(r)")));
        assert!(a.contains(&arc("g", "c(t)")));
        assert!(!a.contains(&arc("t(r)", "c(t)")));
        assert!(flatten(&d).unwrap().same_distribution(&p));
    }

    #[test]
    fn bad_ordering_is_rejected() {
        let p = corpus::medical_gene();
        let opts = CanonicalizeOptions {
            ordering: Some(vec!["t".into(), "g".into(), "c".into()]),
            ..Default::default()
        };
        assert!(canonicalize(&p, &opts).is_err());
    }

    #[test]
    fn unresponsive_only_problem_has_no_mechanisms() {
        let p = corpus::medical_gene().project(&["g"]).unwrap();
        let d = canonicalize(&p, &CanonicalizeOptions::default()).unwrap();
        assert!(d.nodes().iter().all(|n| !n.is_deterministic()));
    }

    #[test]
    fn d_separation_basics() {
        let chain = InfluenceDiagram::new(vec![
            Node::chance("a", ["0", "1"], vec![], vec![vec![Probability::new(1, 2); 2]]),
            Node::deterministic("b", ["0", "1"], vec!["a".into()], vec![Some(0), Some(1)]),
            Node::deterministic("c", ["0", "1"], vec!["b".into()], vec![Some(0), Some(1)]),
        ])
        .unwrap();
        assert!(d_separated(&chain, &["a"], &["c"], &["b"]).unwrap());
        assert!(!d_separated(&chain, &["a"], &["c"], &[]).unwrap());
        let half = || vec![vec![Probability::new(1, 2); 2]];
        let collider = InfluenceDiagram::new(vec![
            Node::chance("a", ["0", "1"], vec![], half()),
            Node::chance("b", ["0", "1"], vec![], half()),
            Node::deterministic("c", ["0", "1", "2", "3"], vec!["a".into(), "b".into()], (0..4).map(Some).collect()),
        ])
        .unwrap();
        assert!(d_separated(&collider, &["a"], &["b"], &[]).unwrap());
        assert!(!d_separated(&collider, &["a"], &["b"], &["c"]).unwrap());
        assert!(d_separated(&corpus::fig2b(), &["t(r)"], &["c(t)"], &["g"]).unwrap());
        assert!(d_separated(&chain, &["a"], &["a"], &[]).is_err());
    }

    #[test]
    fn parameter_counts() {
        assert_eq!(count_parameters(&corpus::fig2b()), 13);
        let (theory, report) = export_pearl(&corpus::fig2b()).unwrap();
        assert_eq!(count_parameters(&theory), 31);
        assert_eq!(theory.by_name("t(r,g)").unwrap().instances.len(), 16);
        assert_eq!(theory.by_name("c(t,g)").unwrap().instances.len(), 16);
        assert!(report.independent, "{report}");
        assert_eq!((report.parameters_before, report.parameters_after), (13, 31));
        assert!(theory.by_name("set_t").is_ok());
        assert!(theory.by_name("set_g").is_err());
    }

    #[test]
    fn export_flags_dependent_mechanisms() {
        let (theory, report) = export_pearl(&corpus::fig1b()).unwrap();
        assert!(!report.independent);
        assert_eq!(report.dependent_pairs, vec![arc("c(t)", "t(r)")]);
        assert_eq!(count_parameters(&theory), count_parameters(&corpus::fig1b()));
    }

    #[test]
    fn export_requires_canonical_form() {
        assert!(matches!(export_pearl(&corpus::fig1a()), Err(Error::NotCanonical(_))));
    }

    #[test]
    fn export_keeps_behaviour() {
        let (theory, _) = export_pearl(&corpus::fig2b()).unwrap();
        let mut p = flatten(&theory).unwrap();
        for d in ["set_c", "set_t"] {
            p = p.restrict_decision(d, "do_nothing").unwrap();
        }
        assert!(p.same_distribution(&flatten(&corpus::fig2b()).unwrap()));
    }
}
