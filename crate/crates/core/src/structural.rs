//! Influence diagrams with decision, chance and deterministic nodes.
//!
//! A diagram doubles as a structural model when no (non-deterministic)
//! chance node has a decision ancestor: then every joint instance of the
//! chance nodes is a state of the world, and the deterministic nodes map
//! each joint alternative to a realization. [`flatten`] turns such a model
//! into a [`DecisionProblem`].
//!
//! Table rows are indexed by the joint instance of the node's parents in
//! listed order, first parent most significant.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::{mixed_radix, Assignment, DecisionProblem, Frame, Variable, WorldState};
use crate::prob::Probability;

/// Default cap on enumerated chance joints and evaluated rows.
pub const DEFAULT_BUDGET: u128 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Decision,
    /// `cpt[row][instance]`.
    Chance { cpt: Vec<Vec<Probability>> },
    /// `table[row]` is the output instance, `None` for rows flagged
    /// unreachable.
    Deterministic { table: Vec<Option<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub instances: Vec<String>,
    pub parents: Vec<String>,
    pub kind: NodeKind,
    /// Latent nodes (mechanisms, exogenous state) are part of the state of
    /// the world but not of its realizations.
    pub latent: bool,
}

impl Node {
    pub fn decision<S: Into<String>>(name: impl Into<String>, instances: impl IntoIterator<Item = S>) -> Node {
        Node {
            name: name.into(),
            instances: instances.into_iter().map(Into::into).collect(),
            parents: Vec::new(),
            kind: NodeKind::Decision,
            latent: false,
        }
    }

    pub fn chance<S: Into<String>>(
        name: impl Into<String>,
        instances: impl IntoIterator<Item = S>,
        parents: Vec<String>,
        cpt: Vec<Vec<Probability>>,
    ) -> Node {
        Node {
            name: name.into(),
            instances: instances.into_iter().map(Into::into).collect(),
            parents,
            kind: NodeKind::Chance { cpt },
            latent: false,
        }
    }

    pub fn deterministic<S: Into<String>>(
        name: impl Into<String>,
        instances: impl IntoIterator<Item = S>,
        parents: Vec<String>,
        table: Vec<Option<usize>>,
    ) -> Node {
        Node {
            name: name.into(),
            instances: instances.into_iter().map(Into::into).collect(),
            parents,
            kind: NodeKind::Deterministic { table },
            latent: false,
        }
    }

    pub fn latent(mut self) -> Node {
        self.latent = true;
        self
    }

    pub fn is_decision(&self) -> bool {
        matches!(self.kind, NodeKind::Decision)
    }

    pub fn is_deterministic(&self) -> bool {
        matches!(self.kind, NodeKind::Deterministic { .. })
    }

    /// Chance node that is not deterministic.
    pub fn is_chance(&self) -> bool {
        matches!(self.kind, NodeKind::Chance { .. })
    }

    pub fn variable(&self) -> Variable {
        Variable::new(self.name.clone(), self.instances.clone())
    }

    pub fn index_of(&self, instance: &str) -> Option<usize> {
        self.instances.iter().position(|i| i == instance)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfluenceDiagram {
    nodes: Vec<Node>,
    parents: Vec<Vec<usize>>,
    order: Vec<usize>,
}

/// A diagram whose chance nodes have no decision ancestors. Operations that
/// need that property check it and report [`Error::Model`] otherwise.
pub type StructuralModel = InfluenceDiagram;

impl InfluenceDiagram {
    /// Validates and builds a diagram. Nodes are stored sorted by name.
    pub fn new(mut nodes: Vec<Node>) -> Result<InfluenceDiagram> {
        nodes.sort_by(|a, b| a.name.cmp(&b.name));
        let index: BTreeMap<&str, usize> = nodes.iter().enumerate().map(|(i, n)| (n.name.as_str(), i)).collect();
        if index.len() != nodes.len() {
            let dup = nodes.windows(2).find(|w| w[0].name == w[1].name).map(|w| w[0].name.clone());
            return Err(Error::Model(format!("duplicate node `{}`", dup.unwrap_or_default())));
        }
        let mut parents = Vec::with_capacity(nodes.len());
        for n in &nodes {
            if n.name.is_empty() {
                return Err(Error::Model("empty node name".into()));
            }
            let min = if n.is_decision() { 2 } else { 1 };
            if n.instances.len() < min {
                return Err(Error::Model(format!("`{}` needs at least {min} instance(s)", n.name)));
            }
            if n.instances.iter().collect::<BTreeSet<_>>().len() != n.instances.len() {
                return Err(Error::Model(format!("duplicate instance in `{}`", n.name)));
            }
            let mut ps = Vec::with_capacity(n.parents.len());
            for p in &n.parents {
                let &pi = index
                    .get(p.as_str())
                    .ok_or_else(|| Error::Model(format!("`{}` has unknown parent `{p}`", n.name)))?;
                if ps.contains(&pi) {
                    return Err(Error::Model(format!("`{}` lists parent `{p}` twice", n.name)));
                }
                ps.push(pi);
            }
            parents.push(ps);
        }
        let order = topological(&nodes, &parents)?;
        let diagram = InfluenceDiagram { nodes, parents, order };
        diagram.check_tables()?;
        Ok(diagram)
    }

    fn check_tables(&self) -> Result<()> {
        for (i, n) in self.nodes.iter().enumerate() {
            let rows = self.row_count(i);
            match &n.kind {
                NodeKind::Decision => {
                    if !n.parents.is_empty() {
                        return Err(Error::Model(format!("decision `{}` has parents", n.name)));
                    }
                }
                NodeKind::Chance { cpt } => {
                    if cpt.len() != rows {
                        return Err(Error::Model(format!(
                            "`{}` has {} probability rows, expected {rows}",
                            n.name,
                            cpt.len()
                        )));
                    }
                    for (r, row) in cpt.iter().enumerate() {
                        if row.len() != n.instances.len() || !row.iter().all(Probability::in_unit_interval) {
                            return Err(Error::Model(format!("`{}` row {r} is malformed", n.name)));
                        }
                        let total: Probability = row.iter().sum();
                        if !total.is_one() {
                            return Err(Error::Model(format!("`{}` row {r} sums to {total}", n.name)));
                        }
                    }
                }
                NodeKind::Deterministic { table } => {
                    if table.len() != rows {
                        return Err(Error::Model(format!(
                            "`{}` has {} function rows, expected {rows}",
                            n.name,
                            table.len()
                        )));
                    }
                    if table.iter().flatten().any(|&v| v >= n.instances.len()) {
                        return Err(Error::Model(format!("`{}` maps to an unknown instance", n.name)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn into_nodes(self) -> Vec<Node> {
        self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.nodes
            .binary_search_by(|n| n.name.as_str().cmp(name))
            .map_err(|_| Error::UnknownVariable(name.to_string()))
    }

    pub fn by_name(&self, name: &str) -> Result<&Node> {
        self.index_of(name).map(|i| &self.nodes[i])
    }

    pub fn parents_of(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub fn children_of(&self, i: usize) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&c| self.parents[c].contains(&i)).collect()
    }

    /// Topological order, ties broken by name.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.parents[i].iter().map(|&p| self.nodes[p].instances.len()).product()
    }

    /// Row index of node `i` given instance indices of all nodes.
    pub fn row_index(&self, i: usize, values: &[usize]) -> usize {
        self.parents[i]
            .iter()
            .fold(0, |acc, &p| acc * self.nodes[p].instances.len() + values[p])
    }

    /// Instance indices of node `i`'s parents for each row, in row order.
    pub fn parent_rows(&self, i: usize) -> Vec<Vec<usize>> {
        mixed_radix(&self.parents[i].iter().map(|&p| self.nodes[p].instances.len()).collect::<Vec<_>>())
    }

    /// Ancestors of the given nodes, excluding the nodes themselves unless
    /// they are ancestors of each other.
    pub fn ancestors(&self, of: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<usize> = of.iter().flat_map(|&i| self.parents[i].iter().copied()).collect();
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(self.parents[v].iter().copied());
            }
        }
        seen
    }

    pub fn descendants(&self, of: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<usize> = of.iter().flat_map(|&i| self.children_of(i)).collect();
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(self.children_of(v));
            }
        }
        seen
    }

    pub fn decision_indices(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_decision()).collect()
    }

    /// Nodes with at least one decision ancestor.
    pub fn decision_descendants(&self) -> BTreeSet<usize> {
        self.descendants(&self.decision_indices())
    }

    /// True when no non-deterministic chance node descends from a decision.
    pub fn is_structural(&self) -> bool {
        self.structural_violation().is_none()
    }

    fn structural_violation(&self) -> Option<&str> {
        let dd = self.decision_descendants();
        dd.into_iter()
            .find(|&i| self.nodes[i].is_chance())
            .map(|i| self.nodes[i].name.as_str())
    }

    pub fn require_structural(&self) -> Result<()> {
        match self.structural_violation() {
            Some(n) => Err(Error::Model(format!(
                "chance node `{n}` has a decision ancestor; the diagram has no state-of-the-world semantics"
            ))),
            None => Ok(()),
        }
    }

    /// Joint alternatives over the decision nodes (name order), as
    /// instance-index vectors.
    pub fn alternatives(&self) -> Vec<Vec<usize>> {
        let radices: Vec<usize> = self.decision_indices().iter().map(|&i| self.nodes[i].instances.len()).collect();
        mixed_radix(&radices)
    }

    /// Enumerates the probability-positive joint instances of every node
    /// without a decision ancestor. Entries for decision descendants are
    /// `None`.
    pub fn chance_joints(&self, budget: u128) -> Result<Vec<(Vec<Option<usize>>, Probability)>> {
        let dd = self.decision_descendants();
        let free: Vec<usize> = self
            .order
            .iter()
            .copied()
            .filter(|i| !dd.contains(i) && !self.nodes[*i].is_decision())
            .collect();
        let mut out = Vec::new();
        let mut values = vec![None; self.nodes.len()];
        let mut work = 0u128;
        self.branch(&free, 0, &mut values, Probability::one(), &mut out, &mut work, budget)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn branch(
        &self,
        free: &[usize],
        k: usize,
        values: &mut Vec<Option<usize>>,
        p: Probability,
        out: &mut Vec<(Vec<Option<usize>>, Probability)>,
        work: &mut u128,
        budget: u128,
    ) -> Result<()> {
        *work += 1;
        if *work > budget {
            return Err(Error::Budget {
                requested: *work,
                budget,
            });
        }
        if k == free.len() {
            out.push((values.clone(), p));
            return Ok(());
        }
        let i = free[k];
        let full: Vec<usize> = values.iter().map(|v| v.unwrap_or(0)).collect();
        let row = self.row_index(i, &full);
        match &self.nodes[i].kind {
            NodeKind::Chance { cpt } => {
                for (inst, q) in cpt[row].iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    values[i] = Some(inst);
                    self.branch(free, k + 1, values, &p * q, out, work, budget)?;
                }
                values[i] = None;
            }
            NodeKind::Deterministic { table } => {
                let v = table[row].ok_or_else(|| self.unreachable(i, &full))?;
                values[i] = Some(v);
                self.branch(free, k + 1, values, p, out, work, budget)?;
                values[i] = None;
            }
            NodeKind::Decision => unreachable!(),
        }
        Ok(())
    }

    fn unreachable(&self, i: usize, values: &[usize]) -> Error {
        let row: Vec<String> = self.parents[i]
            .iter()
            .map(|&p| format!("{}={}", self.nodes[p].name, self.nodes[p].instances[values[p]]))
            .collect();
        Error::Model(format!(
            "evaluation of `{}` reached row [{}] flagged unreachable",
            self.nodes[i].name,
            row.join(";")
        ))
    }

    /// Completes a chance joint under the decision instances `decisions`
    /// (one per decision node, name order). `overrides` pins node outputs;
    /// pinning a node whose value feeds a non-deterministic chance node is
    /// rejected since that node's distribution would change.
    pub fn evaluate(
        &self,
        joint: &[Option<usize>],
        decisions: &[usize],
        overrides: &BTreeMap<usize, usize>,
    ) -> Result<Vec<usize>> {
        let mut values = vec![0usize; self.nodes.len()];
        let dec = self.decision_indices();
        for (k, &d) in dec.iter().enumerate() {
            values[d] = decisions[k];
        }
        let mut tainted = vec![false; self.nodes.len()];
        for &i in &self.order {
            let node = &self.nodes[i];
            let parent_tainted = self.parents[i].iter().any(|&p| tainted[p]);
            if let Some(&v) = overrides.get(&i) {
                values[i] = v;
                tainted[i] = true;
                continue;
            }
            match &node.kind {
                NodeKind::Decision => {}
                NodeKind::Chance { .. } => {
                    if parent_tainted {
                        return Err(Error::Unsupported(format!(
                            "setting an ancestor of chance node `{}` would change its distribution",
                            node.name
                        )));
                    }
                    values[i] = joint[i].ok_or_else(|| {
                        Error::Model(format!("chance node `{}` has a decision ancestor", node.name))
                    })?;
                }
                NodeKind::Deterministic { table } => {
                    let row = self.row_index(i, &values);
                    values[i] = table[row].ok_or_else(|| self.unreachable(i, &values))?;
                    tainted[i] = parent_tainted;
                }
            }
        }
        Ok(values)
    }

    /// Exact joint distribution over all nodes under a fixed joint
    /// alternative. Works for any diagram: chance nodes may depend on
    /// decisions. Entries are keyed by instance indices of every node.
    pub fn joint_at(&self, decisions: &[usize], budget: u128) -> Result<BTreeMap<Vec<usize>, Probability>> {
        let mut values = vec![0usize; self.nodes.len()];
        for (k, &d) in self.decision_indices().iter().enumerate() {
            values[d] = decisions[k];
        }
        let mut out = BTreeMap::new();
        let mut work = 0u128;
        self.joint_rec(0, &mut values, Probability::one(), &mut out, &mut work, budget)?;
        Ok(out)
    }

    fn joint_rec(
        &self,
        k: usize,
        values: &mut Vec<usize>,
        p: Probability,
        out: &mut BTreeMap<Vec<usize>, Probability>,
        work: &mut u128,
        budget: u128,
    ) -> Result<()> {
        *work += 1;
        if *work > budget {
            return Err(Error::Budget {
                requested: *work,
                budget,
            });
        }
        if k == self.order.len() {
            *out.entry(values.clone()).or_insert_with(Probability::zero) += p;
            return Ok(());
        }
        let i = self.order[k];
        let row = self.row_index(i, values);
        match &self.nodes[i].kind {
            NodeKind::Decision => self.joint_rec(k + 1, values, p, out, work, budget)?,
            NodeKind::Chance { cpt } => {
                for (inst, q) in cpt[row].iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    values[i] = inst;
                    self.joint_rec(k + 1, values, &p * q, out, work, budget)?;
                }
            }
            NodeKind::Deterministic { table } => {
                values[i] = table[row].ok_or_else(|| self.unreachable(i, values))?;
                self.joint_rec(k + 1, values, p, out, work, budget)?;
            }
        }
        Ok(())
    }

    /// Frame of the flattened problem: decision nodes, and chance or
    /// deterministic nodes (latent ones only when asked).
    pub fn frame(&self, include_latent: bool) -> Result<Frame> {
        let decisions = self.nodes.iter().filter(|n| n.is_decision()).map(Node::variable).collect();
        let chances = self
            .nodes
            .iter()
            .filter(|n| !n.is_decision() && (include_latent || !n.latent))
            .map(Node::variable)
            .collect();
        Ok(Frame::new(decisions, chances)?)
    }

    /// Renders the non-deterministic chance part of a joint as a label.
    pub fn joint_label(&self, joint: &[Option<usize>]) -> String {
        let mut a = Assignment::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if let (true, Some(v)) = (n.is_chance(), joint[i]) {
                a.0.insert(n.name.clone(), n.instances[v].clone());
            }
        }
        if a.is_empty() {
            "state".to_string()
        } else {
            a.to_string()
        }
    }
}

fn topological(nodes: &[Node], parents: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = nodes.len();
    let mut indeg: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    // nodes are name-sorted, so the smallest index is the smallest name
    while let Some(i) = ready.pop_first() {
        order.push(i);
        for c in 0..n {
            if parents[c].contains(&i) {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.insert(c);
                }
            }
        }
    }
    if order.len() != n {
        let stuck = (0..n).find(|&i| indeg[i] > 0).map(|i| nodes[i].name.clone()).unwrap_or_default();
        return Err(Error::Model(format!("graph has a cycle through `{stuck}`")));
    }
    Ok(order)
}

#[derive(Clone, Copy, Debug)]
pub struct FlattenOptions {
    pub include_latent: bool,
    pub budget: u128,
}

impl Default for FlattenOptions {
    fn default() -> Self {
        FlattenOptions {
            include_latent: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Converts a structural model into its world-state table.
pub fn flatten(model: &StructuralModel) -> Result<DecisionProblem> {
    flatten_with(model, FlattenOptions::default())
}

pub fn flatten_with(model: &StructuralModel, opts: FlattenOptions) -> Result<DecisionProblem> {
    model.require_structural()?;
    let frame = model.frame(opts.include_latent)?;
    let visible: Vec<usize> = (0..model.nodes.len())
        .filter(|&i| !model.nodes[i].is_decision() && (opts.include_latent || !model.nodes[i].latent))
        .collect();
    let alternatives = model.alternatives();
    let joints = model.chance_joints(opts.budget)?;
    let rows = (joints.len() as u128).saturating_mul(alternatives.len() as u128);
    if rows > opts.budget {
        return Err(Error::Budget {
            requested: rows,
            budget: opts.budget,
        });
    }
    let none = BTreeMap::new();
    let mut states = Vec::with_capacity(joints.len());
    for (joint, p) in joints {
        let mut outcome = Vec::with_capacity(alternatives.len());
        for alt in &alternatives {
            let values = model.evaluate(&joint, alt, &none)?;
            outcome.push(visible.iter().map(|&i| values[i]).collect());
        }
        states.push((
            WorldState {
                label: model.joint_label(&joint),
                outcome,
            },
            p,
        ));
    }
    Ok(DecisionProblem::new(frame, states)?)
}
