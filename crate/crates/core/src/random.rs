//! Seeded generators of problems, structural models and diagrams.
//!
//! Every generator draws from a caller-supplied RNG; [`rng`] builds the
//! reproducible ChaCha generator used by the self-test and the test
//! suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{mixed_radix, DecisionProblem, Frame, Variable, WorldState};
use crate::prob::Probability;
use crate::structural::{flatten, InfluenceDiagram, Node, StructuralModel};

pub const DEFAULT_SEED: u64 = 0x5eed;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size limits for random tables.
#[derive(Clone, Copy, Debug)]
pub struct ProblemShape {
    pub max_decisions: usize,
    pub max_alternatives: usize,
    pub max_chances: usize,
    /// Instances per chance variable.
    pub chance_instances: usize,
    pub max_states: usize,
}

impl Default for ProblemShape {
    fn default() -> Self {
        ProblemShape {
            max_decisions: 3,
            max_alternatives: 2,
            max_chances: 3,
            chance_instances: 2,
            max_states: 6,
        }
    }
}

fn names(prefix: char, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn instances(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Positive weights normalized to a distribution; zeros allowed when
/// `sparse`, but never all of them.
fn distribution<R: Rng>(rng: &mut R, n: usize, sparse: bool) -> Vec<Probability> {
    let lo = if sparse { 0 } else { 1 };
    let mut w: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=3)).collect();
    if w.iter().all(|&x| x == 0) {
        let k = rng.gen_range(0..n);
        w[k] = 1;
    }
    let total: i64 = w.iter().sum();
    w.into_iter().map(|x| Probability::new(x, total)).collect()
}

/// A random table. Each chance variable is, per state, either constant,
/// a function of one decision, a function of an earlier chance variable,
/// or arbitrary, so limited-unresponsiveness relations occur often.
pub fn random_problem<R: Rng>(rng: &mut R, shape: &ProblemShape) -> DecisionProblem {
    let nd = rng.gen_range(0..=shape.max_decisions);
    let nc = rng.gen_range(1..=shape.max_chances.max(1));
    let decisions: Vec<Variable> = names('d', nd)
        .into_iter()
        .map(|n| Variable::new(n, instances(rng.gen_range(2..=shape.max_alternatives.max(2)))))
        .collect();
    let chances: Vec<Variable> = names('x', nc)
        .into_iter()
        .map(|n| Variable::new(n, instances(shape.chance_instances.max(1))))
        .collect();
    let frame = Frame::new(decisions.clone(), chances.clone()).expect("generated frame");
    let alts = frame.alternative_count();
    let ns = rng.gen_range(1..=shape.max_states.max(1));
    let probs = distribution(rng, ns, false);
    let states = probs
        .into_iter()
        .enumerate()
        .map(|(s, p)| {
            let mut outcome = vec![vec![0usize; nc]; alts];
            for (j, c) in chances.iter().enumerate() {
                let k = c.len();
                let mode = rng.gen_range(0..10);
                let table: Vec<usize> = (0..k.max(2) * 2).map(|_| rng.gen_range(0..k)).collect();
                let constant = rng.gen_range(0..k);
                let d = if nd > 0 { rng.gen_range(0..nd) } else { 0 };
                let e = if j > 0 { rng.gen_range(0..j) } else { 0 };
                for (alt, real) in outcome.iter_mut().enumerate() {
                    real[j] = match mode {
                        0..=3 => constant,
                        4..=5 if nd > 0 => table[frame.alternative(alt)[d]] % k,
                        6..=7 if j > 0 => table[real[e]] % k,
                        _ => rng.gen_range(0..k),
                    };
                }
            }
            (
                WorldState {
                    label: format!("s{s}"),
                    outcome,
                },
                p,
            )
        })
        .collect();
    DecisionProblem::new(frame, states).expect("generated problem")
}

/// Size limits for random structural models.
#[derive(Clone, Copy, Debug)]
pub struct ModelShape {
    pub max_decisions: usize,
    pub max_roots: usize,
    pub max_functions: usize,
    pub max_parents: usize,
}

impl Default for ModelShape {
    fn default() -> Self {
        ModelShape {
            max_decisions: 2,
            max_roots: 2,
            max_functions: 3,
            max_parents: 2,
        }
    }
}

/// A random structural model: binary decisions, chance roots (some
/// latent) that may depend on earlier roots, and deterministic binary
/// variables over earlier nodes. Visible roots never feed chance nodes.
pub fn random_model<R: Rng>(rng: &mut R, shape: &ModelShape) -> StructuralModel {
    let mut nodes: Vec<Node> = Vec::new();
    let nd = rng.gen_range(1..=shape.max_decisions.max(1));
    for n in names('d', nd) {
        nodes.push(Node::decision(n, ["0", "1"]));
    }
    let nr = rng.gen_range(1..=shape.max_roots.max(1));
    let mut latent_roots: Vec<(String, usize)> = Vec::new();
    let mut pool: Vec<(String, usize)> = nodes.iter().map(|n| (n.name.clone(), 2)).collect();
    for (i, n) in names('u', nr).into_iter().enumerate() {
        let k = rng.gen_range(2..=3);
        let latent = i == 0 || rng.gen_bool(0.5);
        let parents: Vec<(String, usize)> = if latent && !latent_roots.is_empty() && rng.gen_bool(0.4) {
            vec![latent_roots.choose(rng).expect("nonempty").clone()]
        } else {
            Vec::new()
        };
        let rows: usize = parents.iter().map(|p| p.1).product();
        let cpt = (0..rows).map(|_| distribution(rng, k, true)).collect();
        let node = Node::chance(n.clone(), instances(k), parents.into_iter().map(|p| p.0).collect(), cpt);
        if latent {
            latent_roots.push((n.clone(), k));
            nodes.push(node.latent());
        } else {
            nodes.push(node);
        }
        pool.push((n, k));
    }
    let nf = rng.gen_range(1..=shape.max_functions.max(1));
    for n in names('x', nf) {
        let np = rng.gen_range(1..=shape.max_parents.max(1).min(pool.len()));
        let mut parents: Vec<(String, usize)> = pool.choose_multiple(rng, np).cloned().collect();
        parents.sort();
        let rows: usize = parents.iter().map(|p| p.1).product();
        let table = (0..rows).map(|_| Some(rng.gen_range(0..2))).collect();
        nodes.push(Node::deterministic(
            n.clone(),
            ["0", "1"],
            parents.into_iter().map(|p| p.0).collect(),
            table,
        ));
        pool.push((n, 2));
    }
    InfluenceDiagram::new(nodes).expect("generated model")
}

/// A random table obtained by flattening a random structural model.
pub fn random_structural_problem<R: Rng>(rng: &mut R, shape: &ModelShape) -> DecisionProblem {
    flatten(&random_model(rng, shape)).expect("generated model flattens")
}

/// A random diagram over up to `max_nodes` nodes in which chance nodes may
/// depend on decisions.
pub fn random_diagram<R: Rng>(rng: &mut R, max_nodes: usize) -> InfluenceDiagram {
    let n = rng.gen_range(2..=max_nodes.max(2));
    let mut nodes: Vec<Node> = Vec::new();
    for (i, name) in names('n', n).into_iter().enumerate() {
        let kind = rng.gen_range(0..10);
        let k = rng.gen_range(2..=3);
        if kind < 2 {
            nodes.push(Node::decision(name, instances(k)));
            continue;
        }
        let mut parents: Vec<usize> = (0..i).filter(|_| rng.gen_bool(0.4)).collect();
        parents.truncate(3);
        let radices: Vec<usize> = parents.iter().map(|&p| nodes[p].instances.len()).collect();
        let rows = mixed_radix(&radices).len();
        let pnames = parents.iter().map(|&p| nodes[p].name.clone()).collect();
        if kind < 7 || parents.is_empty() {
            let cpt = (0..rows).map(|_| distribution(rng, k, true)).collect();
            nodes.push(Node::chance(name, instances(k), pnames, cpt));
        } else {
            let table = (0..rows).map(|_| Some(rng.gen_range(0..k))).collect();
            nodes.push(Node::deterministic(name, instances(k), pnames, table));
        }
    }
    InfluenceDiagram::new(nodes).expect("generated diagram")
}
