//! Mapping variables and set decisions.
//!
//! A mapping variable `X(Y)` has one instance per way `X` can depend on
//! `Y` in a state of the world. In table mode the maps are read off the
//! states: each state contributes the pairs `(Y, X)` it realizes under the
//! available alternatives, and `Y`-instances it never realizes stay
//! unobserved. In structural mode `Y` is forced to each of its instances by
//! overriding node outputs, so every map is total.
//!
//! A set decision `set_x` has the alternatives `do_nothing` and `set_<k>`
//! for each instance `k` of `x`.

use std::collections::BTreeMap;
use std::fmt;

use crate::causes::subsets_up_to;
use crate::error::{Error, Result};
use crate::model::{mixed_radix, DecisionProblem, Frame, VarRef, Variable, WorldState};
use crate::prob::Probability;
use crate::responsiveness::{limited, Witness};
use crate::structural::{flatten, Node, NodeKind, StructuralModel, DEFAULT_BUDGET};

pub const DO_NOTHING: &str = "do_nothing";
pub const SET_PREFIX: &str = "set_";
/// Rendering of a `Y`-instance whose image is unknown.
pub const UNOBSERVED: &str = "?";

/// One instance of a mapping variable: the image of each `Y`-instance
/// (mixed-radix order over `Y`), `None` where unobserved.
pub type Map = Vec<Option<Vec<usize>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingVariable {
    pub name: String,
    /// `Y`, in name order.
    pub domain_vars: Vec<Variable>,
    /// `X`, in name order.
    pub range_vars: Vec<Variable>,
    /// Distinct maps, sorted.
    pub instances: Vec<Map>,
    /// State label to instance index.
    pub per_state: BTreeMap<String, usize>,
    /// Probability of each instance.
    pub distribution: Vec<Probability>,
}

/// Name of the mapping variable `X(Y)`, e.g. `t(r)` or `c(t,g)`.
pub fn mapping_name<S: AsRef<str>>(x: &[S], y: &[S]) -> String {
    let join = |v: &[S]| v.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(",");
    format!("{}({})", join(x), join(y))
}

/// Renders a map as `take>yes|dont>no`; tuples are comma separated.
pub fn render_map(domain: &[Variable], range: &[Variable], map: &Map) -> String {
    let ys = mixed_radix(&domain.iter().map(Variable::len).collect::<Vec<_>>());
    ys.iter()
        .zip(map)
        .map(|(y, x)| {
            let lhs = tuple(domain, y);
            let rhs = x.as_ref().map_or_else(|| UNOBSERVED.to_string(), |x| tuple(range, x));
            format!("{lhs}>{rhs}")
        })
        .collect::<Vec<_>>()
        .join("|")
}

fn tuple(vars: &[Variable], values: &[usize]) -> String {
    vars.iter()
        .zip(values)
        .map(|(v, &i)| v.instances[i].as_str())
        .collect::<Vec<_>>()
        .join(",")
}

fn radix_index(radices: &[usize], digits: &[usize]) -> usize {
    radices.iter().zip(digits).fold(0, |acc, (&r, &d)| acc * r + d)
}

impl MappingVariable {
    /// Number of `Y`-instances.
    pub fn domain_size(&self) -> usize {
        self.domain_vars.iter().map(Variable::len).product()
    }

    /// Upper bound `b^a` on the instance count.
    pub fn max_instances(&self) -> u128 {
        let b: u128 = self.range_vars.iter().map(|v| v.len() as u128).product();
        (0..self.domain_size()).fold(1u128, |acc, _| acc.saturating_mul(b))
    }

    pub fn instance_name(&self, k: usize) -> String {
        render_map(&self.domain_vars, &self.range_vars, &self.instances[k])
    }

    pub fn instance_names(&self) -> Vec<String> {
        (0..self.instances.len()).map(|k| self.instance_name(k)).collect()
    }

    pub fn is_total(&self, k: usize) -> bool {
        self.instances[k].iter().all(Option::is_some)
    }

    /// The variable that materializes this mapping in a problem.
    pub fn variable(&self) -> Variable {
        Variable::new(self.name.clone(), self.instance_names())
    }

    /// Instance index of a named map, matching on its rendering.
    pub fn find(&self, rendered: &str) -> Option<usize> {
        (0..self.instances.len()).find(|&k| self.instance_name(k) == rendered)
    }

    /// Image of the `Y`-instance `y` (instance indices, name order) under
    /// instance `k`.
    pub fn image(&self, k: usize, y: &[usize]) -> Option<&[usize]> {
        let radices: Vec<usize> = self.domain_vars.iter().map(Variable::len).collect();
        self.instances[k][radix_index(&radices, y)].as_deref()
    }
}

impl fmt::Display for MappingVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({} instances)", self.name, self.instances.len())?;
        for (k, p) in self.distribution.iter().enumerate() {
            writeln!(f, "  {p}  {}", self.instance_name(k))?;
        }
        Ok(())
    }
}

fn collect_maps(
    name: String,
    domain_vars: Vec<Variable>,
    range_vars: Vec<Variable>,
    per_state: Vec<(String, Map, Probability)>,
) -> MappingVariable {
    let mut merged: BTreeMap<Map, Probability> = BTreeMap::new();
    for (_, m, p) in &per_state {
        *merged.entry(m.clone()).or_insert_with(Probability::zero) += p;
    }
    let instances: Vec<Map> = merged.keys().cloned().collect();
    let distribution = merged.into_values().collect();
    let per_state = per_state
        .into_iter()
        .map(|(label, m, _)| (label, instances.binary_search(&m).expect("collected map")))
        .collect();
    MappingVariable {
        name,
        domain_vars,
        range_vars,
        instances,
        per_state,
        distribution,
    }
}

/// Reads `X(Y)` off a table. Fails with the violation witness when `X` is
/// not unresponsive in states limited by `Y`.
pub fn extract_mapping_variable<S: AsRef<str>>(
    problem: &DecisionProblem,
    x: &[S],
    y: &[S],
) -> Result<MappingVariable> {
    let frame = problem.frame();
    let xs = frame.resolve_chances(x)?;
    let ys = frame.resolve_set(y)?;
    if let Some(witness) = limited(problem, &xs, &ys).witness {
        return Err(Error::Inconsistent { witness: Box::new(witness) });
    }
    let radices: Vec<usize> = ys.iter().map(|&v| frame.variable(v).len()).collect();
    let size: usize = radices.iter().product();
    let mut rows = Vec::with_capacity(problem.states().len());
    for (si, (state, p)) in problem.weighted_states().enumerate() {
        let mut map: Map = vec![None; size];
        for alt in 0..frame.alternative_count() {
            let yv: Vec<usize> = ys.iter().map(|&v| problem.value(si, alt, v)).collect();
            map[radix_index(&radices, &yv)] = Some(xs.iter().map(|&v| problem.value(si, alt, v)).collect());
        }
        rows.push((state.label.clone(), map, p.clone()));
    }
    Ok(collect_maps(
        mapping_name(&names(frame, &xs), &names(frame, &ys)),
        ys.iter().map(|&v| frame.variable(v).clone()).collect(),
        xs.iter().map(|&v| frame.variable(v).clone()).collect(),
        rows,
    ))
}

fn names(frame: &Frame, vs: &[VarRef]) -> Vec<String> {
    vs.iter().map(|&v| frame.name(v).to_string()).collect()
}

/// Appends a mapping variable to its source problem as a chance variable
/// that keeps the same instance under every alternative.
pub fn materialize(problem: &DecisionProblem, mv: &MappingVariable) -> Result<DecisionProblem> {
    let n = problem.frame().alternative_count();
    let column = problem
        .states()
        .iter()
        .map(|s| {
            mv.per_state
                .get(&s.label)
                .map(|&k| vec![k; n])
                .ok_or_else(|| Error::Misaligned(format!("mapping variable has no value for state `{}`", s.label)))
        })
        .collect::<Result<Vec<_>>>()?;
    problem.with_chance_column(mv.variable(), &column)
}

/// Whether equal `B`-instances imply equal `X`-instances across every
/// possible state and alternative.
pub fn check_functional<S: AsRef<str>>(problem: &DecisionProblem, x: &[S], b: &[S]) -> Result<bool> {
    let frame = problem.frame();
    let xs = frame.resolve_chances(x)?;
    let bs = frame.resolve_set(b)?;
    let mut seen: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for si in 0..problem.states().len() {
        for alt in 0..frame.alternative_count() {
            let key: Vec<usize> = bs.iter().map(|&v| problem.value(si, alt, v)).collect();
            let val: Vec<usize> = xs.iter().map(|&v| problem.value(si, alt, v)).collect();
            if seen.entry(key).or_insert_with(|| val.clone()) != &val {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A set decision for `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDecision {
    pub target: String,
    pub variable: Variable,
}

impl SetDecision {
    pub fn for_variable(target: &Variable) -> SetDecision {
        let mut alternatives = vec![DO_NOTHING.to_string()];
        alternatives.extend(target.instances.iter().map(|k| format!("{SET_PREFIX}{k}")));
        SetDecision {
            target: target.name.clone(),
            variable: Variable::new(format!("{SET_PREFIX}{}", target.name), alternatives),
        }
    }

    pub fn name(&self) -> &str {
        &self.variable.name
    }

    /// Instance forced by alternative `alt`, `None` for `do_nothing`.
    pub fn forced(alt: usize) -> Option<usize> {
        alt.checked_sub(1)
    }
}

/// Name of the latent node holding the unforced value of a chance target.
pub fn natural_name(target: &str) -> String {
    format!("{target}.natural")
}

/// Adds a set decision for each target. A deterministic target gets the
/// set decision as an extra parent; a chance target is split into a latent
/// copy with its distribution and a deterministic override.
pub fn augment_with_set_decisions<S: AsRef<str>>(model: &StructuralModel, targets: &[S]) -> Result<StructuralModel> {
    let mut nodes = model.nodes().to_vec();
    let mut seen = Vec::new();
    for t in targets {
        let t = t.as_ref();
        let sd = model.by_name(t)?;
        if sd.is_decision() {
            return Err(Error::DecisionNotAllowed(t.to_string()));
        }
        let set = SetDecision::for_variable(&sd.variable());
        if seen.contains(&t) || nodes.iter().any(|n| n.name == set.name()) {
            return Err(Error::Model(format!("`{t}` already has a set decision")));
        }
        seen.push(t);
        let pos = nodes.iter().position(|n| n.name == t).expect("resolved node");
        let node = nodes[pos].clone();
        let k = node.instances.len();
        let wrap = |base: Vec<Option<usize>>| -> Vec<Option<usize>> {
            base.into_iter()
                .flat_map(|v| std::iter::once(v).chain((0..k).map(Some)))
                .collect()
        };
        nodes[pos] = match node.kind {
            NodeKind::Deterministic { table } => {
                let mut parents = node.parents.clone();
                parents.push(set.name().to_string());
                Node {
                    parents,
                    kind: NodeKind::Deterministic { table: wrap(table) },
                    ..node
                }
            }
            NodeKind::Chance { cpt } => {
                let natural = natural_name(t);
                if nodes.iter().any(|n| n.name == natural) {
                    return Err(Error::Model(format!("node `{natural}` already exists")));
                }
                let mut copy = Node::chance(natural.clone(), node.instances.clone(), node.parents.clone(), cpt).latent();
                copy.latent = true;
                nodes.push(copy);
                Node {
                    parents: vec![natural, set.name().to_string()],
                    kind: NodeKind::Deterministic {
                        table: wrap((0..k).map(Some).collect()),
                    },
                    ..node
                }
            }
            NodeKind::Decision => unreachable!(),
        };
        nodes.push(Node::decision(set.name(), set.variable.instances.clone()));
    }
    let out = StructuralModel::new(nodes)?;
    out.require_structural().map_err(|e| Error::Unsupported(format!("set decisions break the model: {e}")))?;
    Ok(out)
}

/// A failing `(x, Y, Z)` triple of the set-decision biconditional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDecisionFailure {
    pub x: String,
    pub y: Vec<String>,
    pub z: Vec<String>,
    /// Which side held: the original relation, or the augmented one.
    pub original_holds: bool,
    /// Violation on the side that fails.
    pub witness: Witness,
}

impl fmt::Display for SetDecisionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (holds, fails) = if self.original_holds {
            ("original", "augmented")
        } else {
            ("augmented", "original")
        };
        write!(
            f,
            "x={} Y={{{}}} Z={{{}}}: holds in the {holds} problem but not in the {fails} one; {}",
            self.x,
            self.y.join(","),
            self.z.join(","),
            self.witness
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDecisionVerdict {
    pub holds: bool,
    pub failure: Option<SetDecisionFailure>,
    /// Number of triples compared.
    pub checked: u64,
}

/// Checks that the added set decisions of `augmented` behave as set
/// decisions for `original`: for every chance `x`, every `Z` among the
/// original variables and every `Y` among the targeted members of `Z`
/// other than `x` (`|Y|, |Z| <= bound`), `x` is unresponsive in `original`
/// limited by `Z` exactly when it is unresponsive in `augmented` limited by
/// `Z` and the set decisions of the targets outside `Y`. Setting a member
/// of `Y` is then free, so agreement on `Z` must still pin `x` down.
pub fn verify_set_decisions(
    original: &DecisionProblem,
    augmented: &DecisionProblem,
    bound: Option<usize>,
) -> Result<SetDecisionVerdict> {
    let of = original.frame();
    let af = augmented.frame();
    if of.chances() != af.chances() {
        return Err(Error::Misaligned("chance variables differ".into()));
    }
    for d in of.decisions() {
        if af.decisions().iter().all(|a| a != d) {
            return Err(Error::Misaligned(format!("decision `{}` missing from the augmented problem", d.name)));
        }
    }
    // targets with their set decisions, in target name order
    let mut targets: Vec<(VarRef, VarRef)> = Vec::new();
    for (i, d) in af.decisions().iter().enumerate() {
        if of.decisions().iter().any(|o| o == d) {
            continue;
        }
        let target = d
            .name
            .strip_prefix(SET_PREFIX)
            .ok_or_else(|| Error::Misaligned(format!("extra decision `{}` is not a set decision", d.name)))?;
        let tv = of
            .resolve_chances(&[target])
            .map_err(|_| Error::Misaligned(format!("set decision `{}` targets no chance variable", d.name)))?[0];
        if SetDecision::for_variable(of.variable(tv)).variable != *d {
            return Err(Error::Misaligned(format!("`{}` does not have set-decision alternatives", d.name)));
        }
        targets.push((af.resolve(target)?, VarRef::Decision(i)));
    }
    targets.sort_by(|a, b| af.name(a.0).cmp(af.name(b.0)));
    let all: Vec<VarRef> = of.all_vars();
    let bound = bound.unwrap_or(all.len());
    let mut checked = 0u64;
    for x in of.chance_refs() {
        let xa = af.resolve(of.name(x))?;
        for zsel in subsets_up_to(all.len(), bound) {
            let z: Vec<VarRef> = zsel.iter().map(|&i| all[i]).collect();
            let lhs = limited(original, &[x], &z);
            let za: Vec<VarRef> = z.iter().map(|&v| af.resolve(of.name(v))).collect::<Result<_>>()?;
            let settable: Vec<usize> = (0..targets.len())
                .filter(|&k| targets[k].0 != xa && za.contains(&targets[k].0))
                .collect();
            for ysel in subsets_up_to(settable.len(), bound) {
                checked += 1;
                let ysel: Vec<usize> = ysel.iter().map(|&i| settable[i]).collect();
                let mut lim = za.clone();
                for (k, &(t, s)) in targets.iter().enumerate() {
                    lim.push(if ysel.contains(&k) { t } else { s });
                }
                lim.sort();
                lim.dedup();
                let rhs = limited(augmented, &[xa], &lim);
                if lhs.holds != rhs.holds {
                    let witness = if lhs.holds { rhs.witness } else { lhs.witness.clone() }.expect("failing verdict");
                    return Ok(SetDecisionVerdict {
                        holds: false,
                        failure: Some(SetDecisionFailure {
                            x: of.name(x).to_string(),
                            y: ysel.iter().map(|&k| af.name(targets[k].0).to_string()).collect(),
                            z: z.iter().map(|&v| of.name(v).to_string()).collect(),
                            original_holds: lhs.holds,
                            witness,
                        }),
                        checked,
                    });
                }
            }
        }
    }
    Ok(SetDecisionVerdict {
        holds: true,
        failure: None,
        checked,
    })
}

/// Augments `model` with set decisions for `targets` and verifies them
/// against the unaugmented model.
pub fn verify_augmentation<S: AsRef<str>>(
    model: &StructuralModel,
    targets: &[S],
    bound: Option<usize>,
) -> Result<SetDecisionVerdict> {
    let augmented = augment_with_set_decisions(model, targets)?;
    verify_set_decisions(&flatten(model)?, &flatten(&augmented)?, bound)
}

struct Forcing {
    xs: Vec<usize>,
    ys: Vec<usize>,
    /// Position of each `Y` member in the decision list, if a decision.
    decision_slot: Vec<Option<usize>>,
    domain: Vec<Vec<usize>>,
}

impl Forcing {
    fn new<S: AsRef<str>>(model: &StructuralModel, x: &[S], y: &[S]) -> Result<Forcing> {
        let mut xs = x.iter().map(|n| model.index_of(n.as_ref())).collect::<Result<Vec<_>>>()?;
        let mut ys = y.iter().map(|n| model.index_of(n.as_ref())).collect::<Result<Vec<_>>>()?;
        xs.sort();
        xs.dedup();
        ys.sort();
        ys.dedup();
        if let Some(&d) = xs.iter().find(|&&i| model.node(i).is_decision()) {
            return Err(Error::DecisionNotAllowed(model.node(d).name.clone()));
        }
        let decisions = model.decision_indices();
        let decision_slot = ys.iter().map(|i| decisions.iter().position(|d| d == i)).collect();
        let domain = mixed_radix(&ys.iter().map(|&i| model.node(i).instances.len()).collect::<Vec<_>>());
        Ok(Forcing {
            xs,
            ys,
            decision_slot,
            domain,
        })
    }

    fn map(&self, model: &StructuralModel, joint: &[Option<usize>], alt: &[usize]) -> Result<Map> {
        let mut out = Vec::with_capacity(self.domain.len());
        for y in &self.domain {
            let mut decisions = alt.to_vec();
            let mut overrides = BTreeMap::new();
            for (k, &v) in y.iter().enumerate() {
                match self.decision_slot[k] {
                    Some(slot) => decisions[slot] = v,
                    None => {
                        overrides.insert(self.ys[k], v);
                    }
                }
            }
            let values = model.evaluate(joint, &decisions, &overrides)?;
            out.push(Some(self.xs.iter().map(|&i| values[i]).collect()));
        }
        Ok(out)
    }

    fn name(&self, model: &StructuralModel) -> String {
        let n = |v: &[usize]| v.iter().map(|&i| model.node(i).name.clone()).collect::<Vec<_>>();
        mapping_name(&n(&self.xs), &n(&self.ys))
    }

    fn vars(&self, model: &StructuralModel, of: &[usize]) -> Vec<Variable> {
        of.iter().map(|&i| model.node(i).variable()).collect()
    }
}

/// Builds `X(Y)` on a structural model by forcing `Y` to each of its
/// instances in every state of the world. The map must not depend on the
/// alternative; otherwise the mapping variable is responsive and has no
/// per-state value, reported as [`Error::Inconsistent`].
pub fn mapping_variable_structural<S: AsRef<str>>(
    model: &StructuralModel,
    x: &[S],
    y: &[S],
) -> Result<MappingVariable> {
    model.require_structural()?;
    let f = Forcing::new(model, x, y)?;
    let domain_vars = f.vars(model, &f.ys);
    let range_vars = f.vars(model, &f.xs);
    let name = f.name(model);
    let alternatives = model.alternatives();
    let decision_vars: Vec<Variable> = model.decision_indices().iter().map(|&i| model.node(i).variable()).collect();
    let mut rows = Vec::new();
    for (joint, p) in model.chance_joints(DEFAULT_BUDGET)? {
        let label = model.joint_label(&joint);
        let first = f.map(model, &joint, &alternatives[0])?;
        for alt in &alternatives[1..] {
            let m = f.map(model, &joint, alt)?;
            if m != first {
                let assignment = |a: &[usize]| {
                    let mut out = crate::model::Assignment::new();
                    for (v, &i) in decision_vars.iter().zip(a) {
                        out.0.insert(v.name.clone(), v.instances[i].clone());
                    }
                    out
                };
                return Err(Error::Inconsistent {
                    witness: Box::new(Witness {
                        state: label,
                        alternatives: (assignment(&alternatives[0]), assignment(alt)),
                        variable: name,
                        instances: (
                            render_map(&domain_vars, &range_vars, &first),
                            render_map(&domain_vars, &range_vars, &m),
                        ),
                    }),
                });
            }
        }
        rows.push((label, first, p));
    }
    Ok(collect_maps(name, domain_vars, range_vars, rows))
}

/// Label, probability, visible values and forced maps per alternative.
type ForcedJoint = (String, Probability, Vec<Vec<usize>>, Vec<Vec<Map>>);

/// Flattens a structural model with extra chance columns, one per
/// `(X, Y)` pair, holding the forced map `X(Y)` under each alternative.
/// The columns may vary with the alternative, which is what makes a
/// mapping variable responsive.
pub fn flatten_with_mappings<S: AsRef<str>>(
    model: &StructuralModel,
    mappings: &[(Vec<S>, Vec<S>)],
) -> Result<DecisionProblem> {
    model.require_structural()?;
    let forcings = mappings
        .iter()
        .map(|(x, y)| Forcing::new(model, x, y))
        .collect::<Result<Vec<_>>>()?;
    let base = model.frame(false)?;
    let visible: Vec<usize> = (0..model.nodes().len())
        .filter(|&i| !model.node(i).is_decision() && !model.node(i).latent)
        .collect();
    let alternatives = model.alternatives();
    let joints = model.chance_joints(DEFAULT_BUDGET)?;
    let none = BTreeMap::new();
    // per joint: visible values and each mapping's map, per alternative
    let mut raw: Vec<ForcedJoint> = Vec::new();
    let mut seen: Vec<BTreeMap<Map, ()>> = vec![BTreeMap::new(); forcings.len()];
    for (joint, p) in joints {
        let mut vis = Vec::new();
        let mut maps = Vec::new();
        for alt in &alternatives {
            let values = model.evaluate(&joint, alt, &none)?;
            vis.push(visible.iter().map(|&i| values[i]).collect());
            let ms = forcings
                .iter()
                .map(|f| f.map(model, &joint, alt))
                .collect::<Result<Vec<_>>>()?;
            for (k, m) in ms.iter().enumerate() {
                seen[k].insert(m.clone(), ());
            }
            maps.push(ms);
        }
        raw.push((model.joint_label(&joint), p, vis, maps));
    }
    let instances: Vec<Vec<Map>> = seen.into_iter().map(|s| s.into_keys().collect()).collect();
    let mut chances = base.chances().to_vec();
    for (f, inst) in forcings.iter().zip(&instances) {
        let (dv, rv) = (f.vars(model, &f.ys), f.vars(model, &f.xs));
        chances.push(Variable::new(
            f.name(model),
            inst.iter().map(|m| render_map(&dv, &rv, m)).collect::<Vec<_>>(),
        ));
    }
    let frame = Frame::new(base.decisions().to_vec(), chances)?;
    // realization order follows the frame's name order
    let names: Vec<String> = frame.chances().iter().map(|v| v.name.clone()).collect();
    let mut source: Vec<(bool, usize)> = Vec::new();
    for n in &names {
        if let Some(k) = visible.iter().position(|&i| &model.node(i).name == n) {
            source.push((false, k));
        } else {
            let k = forcings.iter().position(|f| &f.name(model) == n).expect("mapping column");
            source.push((true, k));
        }
    }
    let states = raw
        .into_iter()
        .map(|(label, p, vis, maps)| {
            let outcome = vis
                .iter()
                .zip(&maps)
                .map(|(v, ms)| {
                    source
                        .iter()
                        .map(|&(is_map, k)| {
                            if is_map {
                                instances[k].binary_search(&ms[k]).expect("seen map")
                            } else {
                                v[k]
                            }
                        })
                        .collect()
                })
                .collect();
            (WorldState { label, outcome }, p)
        })
        .collect();
    Ok(DecisionProblem::new(frame, states)?)
}
