//! Graphviz rendering of influence diagrams.
//!
//! Decisions are boxes, chance nodes ellipses, and deterministic nodes
//! double-bordered ellipses whose label names their defining parents.
//! Node identifiers are derived from names: `t(r)` becomes `t_of_r` and
//! `t(r,g)` becomes `t_of_r_g`.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::structural::{InfluenceDiagram, NodeKind};

/// A DOT identifier for a node name.
pub fn node_id(name: &str) -> String {
    let mut out = String::with_capacity(name.len() + 4);
    for ch in name.chars() {
        match ch {
            '(' => out.push_str("_of_"),
            ')' => {}
            c if c.is_ascii_alphanumeric() || c == '_' => out.push(c),
            _ => out.push('_'),
        }
    }
    if out.is_empty() || out.starts_with(|c: char| c.is_ascii_digit()) {
        out.insert_str(0, "n_");
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn export_dot(diagram: &InfluenceDiagram) -> String {
    let mut taken = BTreeSet::new();
    let ids: Vec<String> = diagram
        .nodes()
        .iter()
        .map(|n| {
            let base = node_id(&n.name);
            let mut id = base.clone();
            let mut k = 2;
            while !taken.insert(id.clone()) {
                id = format!("{base}_{k}");
                k += 1;
            }
            id
        })
        .collect();
    let mut out = String::from("digraph decause {\n");
    for (i, n) in diagram.nodes().iter().enumerate() {
        let (shape, label) = match n.kind {
            NodeKind::Decision => ("shape=box", n.name.clone()),
            NodeKind::Chance { .. } => ("shape=ellipse", n.name.clone()),
            NodeKind::Deterministic { .. } => (
                "shape=ellipse, peripheries=2",
                format!("{} = f({})", n.name, n.parents.join(", ")),
            ),
        };
        let style = if n.latent { ", style=dashed" } else { "" };
        let _ = writeln!(out, "  {} [{shape}{style}, label={}];", ids[i], quote(&label));
    }
    for (i, _) in diagram.nodes().iter().enumerate() {
        for &p in diagram.parents_of(i) {
            let _ = writeln!(out, "  {} -> {};", ids[p], ids[i]);
        }
    }
    out.push_str("}\n");
    out
}
