//! Builds a table and a structural model in code, then asks the same
//! question of both.
//!
//! ```text
//! cargo run --example build_problem
//! ```

use std::collections::BTreeMap;

use decause::causes::find_causes;
use decause::io::serialize_problem;
use decause::model::{Assignment, DecisionProblem, RawProblem, RawState, Variable};
use decause::prob::Probability;
use decause::structural::{flatten, InfluenceDiagram, Node};

/// Sprinkler on or off; the lawn is wet when it rains or the sprinkler runs.
fn table() -> decause::Result<DecisionProblem> {
    let on = Assignment::new().with("k", "on");
    let off = Assignment::new().with("k", "off");
    let wet = |w: &str| Assignment::new().with("w", w);
    let state = |label: &str, p: Probability, when_off: &str| RawState {
        label: label.into(),
        probability: p,
        outcome: BTreeMap::from([(on.clone(), wet("wet")), (off.clone(), wet(when_off))]),
    };
    let raw = RawProblem {
        decisions: vec![Variable::new("k", ["on", "off"])],
        chances: vec![Variable::new("w", ["wet", "dry"])],
        states: vec![
            state("rain", Probability::new(1, 4), "wet"),
            state("no_rain", Probability::new(3, 4), "dry"),
        ],
    };
    Ok(DecisionProblem::from_raw(&raw)?)
}

fn model() -> decause::Result<InfluenceDiagram> {
    let half = |n, d| Probability::new(n, d);
    InfluenceDiagram::new(vec![
        Node::decision("k", ["on", "off"]),
        Node::chance("rain", ["yes", "no"], vec![], vec![vec![half(1, 4), half(3, 4)]]).latent(),
        // rows in mixed-radix order over (k, rain)
        Node::deterministic("w", ["wet", "dry"], vec!["k".into(), "rain".into()], vec![Some(0), Some(0), Some(0), Some(1)]),
    ])
}

fn main() -> decause::Result<()> {
    let p = table()?;
    print!("{}", serialize_problem(&p));
    let flat = flatten(&model()?)?;
    println!("model flattens to the same table: {}", flat.same_distribution(&p));
    let causes = find_causes(&p, "w", None)?;
    println!("causes of w: {:?}", causes.minimal_sets);
    Ok(())
}
