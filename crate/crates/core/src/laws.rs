//! Laws of limited unresponsiveness, causes and mapping variables,
//! checked on concrete problems and queries.
//!
//! Each law is evaluated to an [`Outcome`]: it holds, it fails with a
//! description, or its premise is false (vacuous). [`selftest`] runs every
//! law on seeded random instances and shrinks the first failure.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::causes::find_causes;
use crate::error::Error;
use crate::io::{serialize_model, serialize_problem};
use crate::mapping::{
    augment_with_set_decisions, extract_mapping_variable, flatten_with_mappings, mapping_name, materialize,
    verify_set_decisions,
};
use crate::model::{DecisionProblem, Frame, VarRef, WorldState};
use crate::prob::Probability;
use crate::random::{random_model, random_problem, random_structural_problem, rng, ModelShape, ProblemShape};
use crate::responsiveness::{independent_refs, limited};
use crate::structural::{flatten, StructuralModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Law {
    /// `X` is limited by `Y` iff each member is.
    Decomposition,
    /// `X` limited by chance `W` iff `X ∪ W` is.
    SelfLimiting,
    /// The decisions limit everything.
    DecisionsLimit,
    Monotonicity,
    Cut,
    Composition,
    Transitivity,
    /// Unresponsive variables are independent of the decisions.
    UnresponsiveIndependent,
    /// Every failing verdict carries a witness that replays.
    WitnessReplays,
    /// Chance members of a minimal cause set respond to the decisions.
    CauseMembersResponsive,
    /// The empty set is a cause exactly for unresponsive variables.
    EmptyCause,
    /// Minimal cause sets form an antichain.
    CauseAntichain,
    /// A responsive variable has a cause set made of decisions only.
    DecisionCause,
    /// Singleton causes compose at the limiting level.
    CauseTransitivity,
    /// A mechanism over a cause set is unresponsive.
    MechanismUnresponsive,
    /// `X` limited by `Y` iff the mapping `X(Y)` is unresponsive.
    MappingUnresponsive,
    /// `X(W)` limited by `Z ∪ Y` iff `X(W ∪ Y)` limited by `Z`, for `Z`
    /// free of descendants of `Y`, `Y` free of descendants of `W`, and where setting the chance members of
    /// `Y` leaves the first verdict unchanged.
    MappingShift,
}

impl Law {
    pub const TABLE: [Law; 9] = [
        Law::Decomposition,
        Law::SelfLimiting,
        Law::DecisionsLimit,
        Law::Monotonicity,
        Law::Cut,
        Law::Composition,
        Law::Transitivity,
        Law::UnresponsiveIndependent,
        Law::WitnessReplays,
    ];
    pub const CAUSE: [Law; 6] = [
        Law::CauseMembersResponsive,
        Law::EmptyCause,
        Law::CauseAntichain,
        Law::DecisionCause,
        Law::CauseTransitivity,
        Law::MechanismUnresponsive,
    ];
    pub const STRUCTURAL: [Law; 3] = [Law::MappingUnresponsive, Law::MappingShift, Law::MechanismUnresponsive];

    pub fn name(self) -> &'static str {
        match self {
            Law::Decomposition => "decomposition",
            Law::SelfLimiting => "self-limiting",
            Law::DecisionsLimit => "decisions-limit",
            Law::Monotonicity => "monotonicity",
            Law::Cut => "cut",
            Law::Composition => "composition",
            Law::Transitivity => "transitivity",
            Law::UnresponsiveIndependent => "unresponsive-independent",
            Law::WitnessReplays => "witness-replays",
            Law::CauseMembersResponsive => "cause-members-responsive",
            Law::EmptyCause => "empty-cause",
            Law::CauseAntichain => "cause-antichain",
            Law::DecisionCause => "decision-cause",
            Law::CauseTransitivity => "cause-transitivity",
            Law::MechanismUnresponsive => "mechanism-unresponsive",
            Law::MappingUnresponsive => "mapping-unresponsive",
            Law::MappingShift => "mapping-shift",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Vacuous,
    Fails(String),
}

impl Outcome {
    fn check(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::Holds
        } else {
            Outcome::Fails(detail())
        }
    }

    fn implication(premise: bool, conclusion: bool, detail: impl FnOnce() -> String) -> Outcome {
        if premise {
            Outcome::check(conclusion, detail)
        } else {
            Outcome::Vacuous
        }
    }

    pub fn failed(&self) -> bool {
        matches!(self, Outcome::Fails(_))
    }
}

/// Variable sets for one law instance, by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Query {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
    pub w: Vec<String>,
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "X={{{}}} Y={{{}}} Z={{{}}} W={{{}}}",
            self.x.join(","),
            self.y.join(","),
            self.z.join(","),
            self.w.join(",")
        )
    }
}

fn pick<R: Rng>(rng: &mut R, from: &[String], p: f64) -> Vec<String> {
    from.iter().filter(|_| rng.gen_bool(p)).cloned().collect()
}

/// A random query over the variables of `frame`: `X` is a nonempty set
/// of chance variables, the others arbitrary.
pub fn random_query<R: Rng>(rng: &mut R, frame: &Frame) -> Query {
    let chances: Vec<String> = frame.chances().iter().map(|v| v.name.clone()).collect();
    let all: Vec<String> = frame
        .decisions()
        .iter()
        .chain(frame.chances())
        .map(|v| v.name.clone())
        .collect();
    let mut x = pick(rng, &chances, 0.4);
    if x.is_empty() {
        x.push(chances[rng.gen_range(0..chances.len())].clone());
    }
    Query {
        x,
        y: pick(rng, &all, 0.35),
        z: pick(rng, &all, 0.35),
        w: pick(rng, &all, 0.35),
    }
}

fn refs(frame: &Frame, names: &[String]) -> Vec<VarRef> {
    frame.resolve_set(names).expect("query variables belong to the problem")
}

fn union(a: &[VarRef], b: &[VarRef]) -> Vec<VarRef> {
    let mut out: Vec<VarRef> = a.iter().chain(b).copied().collect();
    out.sort();
    out.dedup();
    out
}

fn chance_part(v: &[VarRef]) -> Vec<VarRef> {
    v.iter().copied().filter(|r| !r.is_decision()).collect()
}

/// Evaluates a table law. Premises about `Y` use the scan with decisions
/// allowed on the left, where a decision agrees exactly when both
/// alternatives choose the same instance of it.
pub fn check_table_law(law: Law, problem: &DecisionProblem, q: &Query) -> Outcome {
    let frame = problem.frame();
    let x = chance_part(&refs(frame, &q.x));
    let y = refs(frame, &q.y);
    let z = refs(frame, &q.z);
    let w = chance_part(&refs(frame, &q.w));
    let lim = |a: &[VarRef], b: &[VarRef]| limited(problem, a, b).holds;
    match law {
        Law::Decomposition => {
            let whole = lim(&x, &y);
            let each = x.iter().all(|&v| lim(&[v], &y));
            Outcome::check(whole == each, || format!("set verdict {whole}, member verdicts {each}"))
        }
        Law::SelfLimiting => {
            let a = lim(&x, &w);
            let b = lim(&union(&x, &w), &w);
            Outcome::check(a == b, || format!("X limited by W: {a}; X ∪ W limited by W: {b}"))
        }
        Law::DecisionsLimit => Outcome::check(lim(&x, &frame.decision_refs()), || "decisions do not limit X".into()),
        Law::Monotonicity => Outcome::implication(lim(&x, &y), lim(&x, &union(&y, &z)), || {
            "limited by Y but not by Y ∪ Z".into()
        }),
        Law::Cut => Outcome::implication(lim(&x, &union(&y, &z)) && lim(&y, &z), lim(&x, &z), || {
            "X limited by Y ∪ Z and Y by Z, but X not by Z".into()
        }),
        Law::Composition => Outcome::implication(lim(&x, &z) && lim(&w, &z), lim(&union(&x, &w), &union(&w, &z)), || {
            "X and W limited by Z, but X ∪ W not by W ∪ Z".into()
        }),
        Law::Transitivity => Outcome::implication(lim(&x, &y) && lim(&y, &z), lim(&x, &z), || {
            "X limited by Y and Y by Z, but X not by Z".into()
        }),
        Law::UnresponsiveIndependent => Outcome::implication(lim(&x, &[]), independent_refs(problem, &x), || {
            "unresponsive but dependent on the decisions".into()
        }),
        Law::WitnessReplays => {
            let v = limited(problem, &x, &y);
            match v.witness {
                None => Outcome::check(v.holds, || "failing verdict without witness".into()),
                Some(wit) => Outcome::check(!v.holds && wit.replays(problem, &q.y), || format!("witness does not replay: {wit}")),
            }
        }
        _ => Outcome::Vacuous,
    }
}

/// Evaluates a cause law for the first member of `q.x` (with `q.y`,
/// `q.z` supplying the chain for transitivity).
pub fn check_cause_law(law: Law, problem: &DecisionProblem, q: &Query) -> Outcome {
    let frame = problem.frame();
    let x = &q.x[0];
    let xr = frame.resolve(x).expect("query variable");
    let report = match find_causes(problem, x, None) {
        Ok(r) => r,
        Err(e) => return Outcome::Fails(format!("cause search failed: {e}")),
    };
    let sets = &report.minimal_sets;
    let responsive = !limited(problem, &[xr], &[]).holds;
    match law {
        Law::CauseMembersResponsive => {
            let bad = sets.iter().flatten().find(|m| {
                let r = frame.resolve(m).expect("member");
                !r.is_decision() && limited(problem, &[r], &[]).holds
            });
            Outcome::check(bad.is_none(), || format!("`{}` is unresponsive yet in a cause set of `{x}`", bad.unwrap()))
        }
        Law::EmptyCause => {
            let empty = *sets == vec![Vec::<String>::new()];
            Outcome::check(empty == !responsive, || format!("empty cause set {empty}, responsive {responsive}"))
        }
        Law::CauseAntichain => {
            let nested = sets.iter().enumerate().any(|(i, a)| {
                sets.iter()
                    .enumerate()
                    .any(|(j, b)| i != j && a.iter().all(|m| b.contains(m)))
            });
            Outcome::check(!nested, || format!("nested cause sets {sets:?}"))
        }
        Law::DecisionCause => Outcome::implication(responsive, sets.iter().any(|s| {
            s.iter().all(|m| frame.resolve(m).is_ok_and(VarRef::is_decision))
        }), || format!("no all-decision cause set among {sets:?}")),
        Law::CauseTransitivity => {
            let (Some(a), Some(b), Some(c)) = (q.y.first(), q.x.first(), q.z.first()) else {
                return Outcome::Vacuous;
            };
            let (ar, br, cr) = (
                frame.resolve(a).expect("query"),
                frame.resolve(b).expect("query"),
                frame.resolve(c).expect("query"),
            );
            if br.is_decision() || cr.is_decision() || a == b || b == c || a == c {
                return Outcome::Vacuous;
            }
            let single = |cause: &String, of: &str| {
                find_causes(problem, of, None).is_ok_and(|r| r.minimal_sets.contains(&vec![cause.clone()]))
            };
            Outcome::implication(single(a, b) && single(b, c), limited(problem, &[cr], &[ar]).holds, || {
                format!("{{{a}}} causes {b} and {{{b}}} causes {c}, but {a} does not limit {c}")
            })
        }
        Law::MechanismUnresponsive => {
            for set in sets {
                let mv = match extract_mapping_variable(problem, std::slice::from_ref(x), set) {
                    Ok(m) => m,
                    Err(e) => return Outcome::Fails(format!("mechanism over {set:?}: {e}")),
                };
                let ext = match materialize(problem, &mv) {
                    Ok(p) => p,
                    Err(e) => return Outcome::Fails(format!("materializing {}: {e}", mv.name)),
                };
                let m = ext.frame().resolve(&mv.name).expect("materialized");
                if !limited(&ext, &[m], &[]).holds {
                    return Outcome::Fails(format!("mechanism {} responds to the decisions", mv.name));
                }
            }
            Outcome::Holds
        }
        _ => Outcome::Vacuous,
    }
}

/// Whether the set decisions needed to force `vars` exist and pass the
/// set-decision check on `model`.
pub fn settable(model: &StructuralModel, vars: &[String]) -> bool {
    let targets: Vec<&String> = vars
        .iter()
        .filter(|v| model.by_name(v).is_ok_and(|n| !n.is_decision()))
        .collect();
    let Ok(aug) = augment_with_set_decisions(model, &targets) else {
        return false;
    };
    let (Ok(orig), Ok(aug)) = (flatten(model), flatten(&aug)) else {
        return false;
    };
    verify_set_decisions(&orig, &aug, None).is_ok_and(|v| v.holds)
}

/// Evaluates a mapping law on a structural model. Instances whose forced
/// variables lack valid set decisions are vacuous.
pub fn check_structural_law(law: Law, model: &StructuralModel, q: &Query) -> Outcome {
    let sorted = |v: &[String]| {
        let mut v = v.to_vec();
        v.sort();
        v.dedup();
        v
    };
    let q = &Query {
        x: sorted(&q.x),
        y: sorted(&q.y),
        z: sorted(&q.z),
        w: sorted(&q.w),
    };
    let x = &q.x;
    let run = |mappings: &[(Vec<String>, Vec<String>)]| -> Result<DecisionProblem, Error> {
        flatten_with_mappings(model, mappings)
    };
    let lim_names = |p: &DecisionProblem, a: &[String], b: &[String]| -> bool {
        limited(p, &refs(p.frame(), a), &refs(p.frame(), b)).holds
    };
    match law {
        Law::MappingUnresponsive => {
            let y = &q.y;
            if !settable(model, y) {
                return Outcome::Vacuous;
            }
            let p = match run(&[(x.clone(), y.clone())]) {
                Ok(p) => p,
                Err(e) => return Outcome::Fails(format!("forcing failed: {e}")),
            };
            let a = lim_names(&p, x, y);
            let b = lim_names(&p, &[mapping_name(x, y)], &[]);
            Outcome::check(a == b, || format!("X limited by Y: {a}; X(Y) unresponsive: {b}"))
        }
        Law::MappingShift => {
            let (w, y, z) = (&q.w, &q.y, &q.z);
            let wy: Vec<String> = {
                let mut v: Vec<String> = w.iter().chain(y).cloned().collect();
                v.sort();
                v.dedup();
                v
            };
            let index = |names: &[String]| -> Vec<usize> { names.iter().filter_map(|n| model.index_of(n).ok()).collect() };
            let downstream = model.descendants(&index(y));
            if x.iter().any(|v| wy.contains(v))
                || index(z).iter().any(|i| downstream.contains(i))
                || index(y).iter().any(|i| model.descendants(&index(w)).contains(i))
                || !settable(model, &wy)
            {
                return Outcome::Vacuous;
            }
            let mut mappings = vec![(x.clone(), w.clone())];
            if wy != *w {
                mappings.push((x.clone(), wy.clone()));
            }
            let p = match run(&mappings) {
                Ok(p) => p,
                Err(e) => return Outcome::Fails(format!("forcing failed: {e}")),
            };
            let zy: Vec<String> = z.iter().chain(y).cloned().collect();
            let a = lim_names(&p, &[mapping_name(x, w)], &zy);
            let b = lim_names(&p, &[mapping_name(x, &wy)], z);
            let targets: Vec<&String> = y
                .iter()
                .filter(|v| model.by_name(v).is_ok_and(|n| !n.is_decision()))
                .collect();
            let forced_premise = augment_with_set_decisions(model, &targets)
                .and_then(|aug| flatten_with_mappings(&aug, &[(x.clone(), w.clone())]))
                .is_ok_and(|pa| lim_names(&pa, &[mapping_name(x, w)], &zy) == a);
            if !forced_premise {
                return Outcome::Vacuous;
            }
            Outcome::check(a == b, || format!("X(W) limited by Z ∪ Y: {a}; X(W ∪ Y) limited by Z: {b}"))
        }
        Law::MechanismUnresponsive => {
            let Ok(flat) = flatten(model) else { return Outcome::Vacuous };
            let target = &x[0];
            let Ok(report) = find_causes(&flat, target, None) else {
                return Outcome::Vacuous;
            };
            let Some(cause) = report.minimal_sets.first() else { return Outcome::Vacuous };
            if !settable(model, cause) {
                return Outcome::Vacuous;
            }
            let p = match run(&[(vec![target.clone()], cause.clone())]) {
                Ok(p) => p,
                Err(e) => return Outcome::Fails(format!("forcing failed: {e}")),
            };
            let m = mapping_name(std::slice::from_ref(target), cause);
            Outcome::check(lim_names(&p, std::slice::from_ref(&m), &[]), || format!("mechanism {m} responds to the decisions"))
        }
        _ => Outcome::Vacuous,
    }
}

/// Drops state `i` and renormalizes.
fn without_state(problem: &DecisionProblem, i: usize) -> Option<DecisionProblem> {
    if problem.states().len() < 2 {
        return None;
    }
    let rest: Probability = (0..problem.states().len())
        .filter(|&k| k != i)
        .map(|k| problem.probability(k).clone())
        .sum();
    let states: Vec<(WorldState, Probability)> = problem
        .weighted_states()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, (s, p))| (s.clone(), p / &rest))
        .collect();
    DecisionProblem::new(problem.frame().clone(), states).ok()
}

fn smaller_queries(q: &Query) -> Vec<Query> {
    let mut out = Vec::new();
    let fields: [fn(&mut Query) -> &mut Vec<String>; 4] = [|q| &mut q.x, |q| &mut q.y, |q| &mut q.z, |q| &mut q.w];
    for (f, field) in fields.iter().enumerate() {
        let mut probe = q.clone();
        let len = field(&mut probe).len();
        for i in 0..len {
            if f == 0 && len == 1 {
                continue;
            }
            let mut c = q.clone();
            field(&mut c).remove(i);
            out.push(c);
        }
    }
    out
}

/// Shrinks a failing table instance: removes states, query members and
/// unused variables while the law keeps failing.
pub fn shrink(
    law: Law,
    problem: &DecisionProblem,
    q: &Query,
    check: fn(Law, &DecisionProblem, &Query) -> Outcome,
) -> (DecisionProblem, Query) {
    let mut p = problem.clone();
    let mut q = q.clone();
    loop {
        let mut progressed = false;
        for i in 0..p.states().len() {
            if let Some(c) = without_state(&p, i) {
                if check(law, &c, &q).failed() {
                    p = c;
                    progressed = true;
                    break;
                }
            }
        }
        if progressed {
            continue;
        }
        for c in smaller_queries(&q) {
            if check(law, &p, &c).failed() {
                q = c;
                progressed = true;
                break;
            }
        }
        if progressed {
            continue;
        }
        let used = |n: &String| q.x.contains(n) || q.y.contains(n) || q.z.contains(n) || q.w.contains(n);
        let keep: Vec<String> = p.chances().iter().map(|v| v.name.clone()).filter(used).collect();
        if keep.len() < p.chances().len() {
            if let Ok(c) = p.project(&keep) {
                if check(law, &c, &q).failed() {
                    p = c;
                    continue;
                }
            }
        }
        let unused = p.decisions().iter().find(|d| !used(&d.name)).cloned();
        if let Some(d) = unused {
            if let Ok(c) = p.restrict_decision(&d.name, &d.instances[0]) {
                if check(law, &c, &q).failed() {
                    p = c;
                    continue;
                }
            }
        }
        return (p, q);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub law: Law,
    pub query: Query,
    pub detail: String,
    /// The (shrunk) problem or model as a document.
    pub document: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "law {} fails for {}: {}", self.law, self.query, self.detail)?;
        write!(f, "{}", self.document)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub held: u64,
    pub vacuous: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelftestReport {
    pub queries: u64,
    pub problems: u64,
    pub models: u64,
    pub tallies: BTreeMap<Law, Tally>,
    pub failures: Vec<Counterexample>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, law: Law, outcome: &Outcome) {
        let t = self.tallies.entry(law).or_default();
        match outcome {
            Outcome::Holds => t.held += 1,
            Outcome::Vacuous => t.vacuous += 1,
            Outcome::Fails(_) => {}
        }
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} queries over {} problems and {} models",
            self.queries, self.problems, self.models
        )?;
        for (law, t) in &self.tallies {
            writeln!(f, "  {:<26} held {:>6}  vacuous {:>6}", law.name(), t.held, t.vacuous)?;
        }
        for c in &self.failures {
            write!(f, "{c}")?;
        }
        if self.passed() {
            writeln!(f, "all laws hold")?;
        }
        Ok(())
    }
}

pub const QUERIES_PER_PROBLEM: u64 = 20;
pub const QUERIES_PER_MODEL: u64 = 4;

/// Checks one table problem under `queries` random queries, recording
/// into `report`; the first failure is shrunk.
pub fn check_problem<R: Rng>(rng: &mut R, problem: &DecisionProblem, queries: u64, report: &mut SelftestReport) {
    report.problems += 1;
    for _ in 0..queries {
        let q = random_query(rng, problem.frame());
        report.queries += 1;
        for law in Law::TABLE {
            let o = check_table_law(law, problem, &q);
            report.record(law, &o);
            if let Outcome::Fails(detail) = o {
                let (p, q) = shrink(law, problem, &q, check_table_law);
                report.failures.push(Counterexample {
                    law,
                    query: q,
                    detail,
                    document: serialize_problem(&p),
                });
                return;
            }
        }
    }
    for x in problem.chances() {
        let mut q = random_query(rng, problem.frame());
        q.x = vec![x.name.clone()];
        for law in Law::CAUSE {
            let o = check_cause_law(law, problem, &q);
            report.record(law, &o);
            if let Outcome::Fails(detail) = o {
                report.failures.push(Counterexample {
                    law,
                    query: q,
                    detail,
                    document: serialize_problem(problem),
                });
                return;
            }
        }
    }
}

/// Checks the mapping laws on one structural model.
pub fn check_model<R: Rng>(rng: &mut R, model: &StructuralModel, queries: u64, report: &mut SelftestReport) {
    let Ok(flat) = flatten(model) else { return };
    report.models += 1;
    for _ in 0..queries {
        let q = random_query(rng, flat.frame());
        report.queries += 1;
        for law in Law::STRUCTURAL {
            let o = check_structural_law(law, model, &q);
            report.record(law, &o);
            if let Outcome::Fails(detail) = o {
                report.failures.push(Counterexample {
                    law,
                    query: q,
                    detail,
                    document: serialize_model(model),
                });
                return;
            }
        }
    }
}

/// Runs every law on about `queries` random queries derived from `seed`,
/// stopping at the first failure.
pub fn selftest(seed: u64, queries: u64) -> SelftestReport {
    let mut r = rng(seed);
    let mut report = SelftestReport::default();
    let shape = ProblemShape::default();
    let model_shape = ModelShape::default();
    let mut round = 0u64;
    while report.queries < queries && report.passed() {
        let n = QUERIES_PER_PROBLEM.min(queries - report.queries);
        let problem = if round.is_multiple_of(2) {
            random_problem(&mut r, &shape)
        } else {
            random_structural_problem(&mut r, &model_shape)
        };
        check_problem(&mut r, &problem, n, &mut report);
        if round.is_multiple_of(5) && report.passed() {
            let model = random_model(&mut r, &model_shape);
            check_model(&mut r, &model, QUERIES_PER_MODEL, &mut report);
        }
        round += 1;
    }
    report
}
