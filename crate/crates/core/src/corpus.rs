//! The bundled example problems.
//!
//! | file | content |
//! |------|---------|
//! | `omelet.table.json` | Savage's sixth-egg decision, three alternatives, two states |
//! | `smoke.table.json` | continue or quit smoking, the four possible states |
//! | `bet.table.json`, `bet.model.json` | betting on a fair coin |
//! | `match.table.json` | the coin bet with a second variable "outcome matches bet" |
//! | `medical.table.json` | treatment recommendation, 16 states, the last four impossible, uniform 1/12 |
//! | `medical-gene.model.json` | the same story with a genotype driving both mechanisms |
//! | `medical-retro.model.json` | a second decision (retroviral therapy) that changes genotype |
//! | `medical-force.model.json` | forcing the treatment spoils the cure: not a valid set decision |
//! | `fig1a.diagram.json` | ordinary influence diagram `r -> t -> c` |
//! | `fig1b.diagram.json` | canonical form of the medical table |
//! | `fig2b.diagram.json` | canonical form with genotype and conditionally independent mechanisms |
//!
//! Probabilities in the medical family are fixture conventions.

use crate::io::{parse_problem, Document};
use crate::model::DecisionProblem;
use crate::structural::{flatten, InfluenceDiagram};

pub const FILES: &[(&str, &str)] = &[
    ("omelet.table.json", include_str!("../corpus/omelet.table.json")),
    ("smoke.table.json", include_str!("../corpus/smoke.table.json")),
    ("bet.table.json", include_str!("../corpus/bet.table.json")),
    ("bet.model.json", include_str!("../corpus/bet.model.json")),
    ("match.table.json", include_str!("../corpus/match.table.json")),
    ("medical.table.json", include_str!("../corpus/medical.table.json")),
    ("medical-gene.model.json", include_str!("../corpus/medical-gene.model.json")),
    ("medical-retro.model.json", include_str!("../corpus/medical-retro.model.json")),
    ("medical-force.model.json", include_str!("../corpus/medical-force.model.json")),
    ("fig1a.diagram.json", include_str!("../corpus/fig1a.diagram.json")),
    ("fig1b.diagram.json", include_str!("../corpus/fig1b.diagram.json")),
    ("fig2b.diagram.json", include_str!("../corpus/fig2b.diagram.json")),
];

/// Raw text of a bundled file.
pub fn text(name: &str) -> &'static str {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .unwrap_or_else(|| panic!("no corpus file `{name}`"))
}

fn document(name: &str) -> Document {
    parse_problem(text(name)).unwrap_or_else(|e| panic!("corpus file `{name}` is invalid: {e}"))
}

fn table(name: &str) -> DecisionProblem {
    match document(name) {
        Document::Table(p) => p,
        Document::Structural(_) => panic!("`{name}` is not a table"),
    }
}

fn model(name: &str) -> InfluenceDiagram {
    match document(name) {
        Document::Structural(m) => m,
        Document::Table(_) => panic!("`{name}` is not a model"),
    }
}

pub fn omelet() -> DecisionProblem {
    table("omelet.table.json")
}

pub fn smoke() -> DecisionProblem {
    table("smoke.table.json")
}

pub fn bet() -> DecisionProblem {
    table("bet.table.json")
}

pub fn bet_model() -> InfluenceDiagram {
    model("bet.model.json")
}

pub fn coin_match() -> DecisionProblem {
    table("match.table.json")
}

pub fn medical() -> DecisionProblem {
    table("medical.table.json")
}

pub fn medical_gene_model() -> InfluenceDiagram {
    model("medical-gene.model.json")
}

pub fn medical_gene() -> DecisionProblem {
    flatten(&medical_gene_model()).expect("medical-gene flattens")
}

pub fn medical_retro_model() -> InfluenceDiagram {
    model("medical-retro.model.json")
}

pub fn medical_retro() -> DecisionProblem {
    flatten(&medical_retro_model()).expect("medical-retro flattens")
}

pub fn medical_force_model() -> InfluenceDiagram {
    model("medical-force.model.json")
}

pub fn medical_force() -> DecisionProblem {
    flatten(&medical_force_model()).expect("medical-force flattens")
}

pub fn fig1a() -> InfluenceDiagram {
    model("fig1a.diagram.json")
}

pub fn fig1b() -> InfluenceDiagram {
    model("fig1b.diagram.json")
}

pub fn fig2b() -> InfluenceDiagram {
    model("fig2b.diagram.json")
}

/// Every bundled problem in table form (models flattened).
pub fn tables() -> Vec<DecisionProblem> {
    vec![
        omelet(),
        smoke(),
        bet(),
        flatten(&bet_model()).expect("bet model flattens"),
        coin_match(),
        medical(),
        medical_gene(),
        medical_retro(),
        medical_force(),
    ]
}

/// Every bundled structural model, including the canonical diagrams.
pub fn models() -> Vec<(&'static str, InfluenceDiagram)> {
    vec![
        ("bet.model.json", bet_model()),
        ("medical-gene.model.json", medical_gene_model()),
        ("medical-retro.model.json", medical_retro_model()),
        ("medical-force.model.json", medical_force_model()),
        ("fig1b.diagram.json", fig1b()),
        ("fig2b.diagram.json", fig2b()),
    ]
}

/// Every bundled diagram, including the non-structural one.
pub fn diagrams() -> Vec<(&'static str, InfluenceDiagram)> {
    let mut out = models();
    out.push(("fig1a.diagram.json", fig1a()));
    out
}
