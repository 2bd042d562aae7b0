mod common;

use decause::corpus;
use decause::dot::export_dot;
use decause::io::{parse_problem, serialize_document, serialize_problem};
use decause::random::{random_diagram, random_problem, rng, ProblemShape};

/// The medical table lists its four impossible rows explicitly; every
/// other fixture is stored in canonical form.
const LISTS_ZERO_ROWS: &str = "medical.table.json";

#[test]
fn every_fixture_round_trips() {
    for (name, text) in corpus::FILES {
        let doc = parse_problem(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let once = serialize_document(&doc);
        if *name != LISTS_ZERO_ROWS {
            assert_eq!(&once, text, "{name} is not in canonical form");
        }
        let reparsed = parse_problem(&once).unwrap();
        assert_eq!(serialize_document(&reparsed), once, "{name}");
    }
}

#[test]
fn bundled_files_match_the_corpus_directory() {
    for (name, text) in corpus::FILES {
        let on_disk = std::fs::read_to_string(common::crate_dir().join("corpus").join(name)).unwrap();
        assert_eq!(&on_disk, text, "{name}");
    }
}

#[test]
fn random_problems_round_trip() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let p = random_problem(&mut r, &ProblemShape::default());
        let text = serialize_problem(&p);
        let back = parse_problem(&text).unwrap().into_problem().unwrap();
        assert!(back.same_distribution(&p));
        assert_eq!(serialize_problem(&back), text);
    }
}

#[test]
fn omitted_rows_are_implicit_zeros() {
    let full = corpus::text(LISTS_ZERO_ROWS);
    let mut doc: serde_json::Value = serde_json::from_str(full).unwrap();
    let states = doc["states"].as_array_mut().unwrap();
    assert_eq!(states.len(), 16);
    states.retain(|s| s["probability"] != "0");
    assert_eq!(states.len(), 12);
    let trimmed = parse_problem(&serde_json::to_string(&doc).unwrap()).unwrap().into_problem().unwrap();
    assert!(trimmed.same_distribution(&corpus::medical()));
}

#[test]
fn decimals_are_exact() {
    let mut doc: serde_json::Value = serde_json::from_str(corpus::text("bet.table.json")).unwrap();
    doc["states"][0]["probability"] = "0.3".into();
    doc["states"][1]["probability"] = "0.7".into();
    let p = parse_problem(&serde_json::to_string(&doc).unwrap()).unwrap().into_problem().unwrap();
    let mut shown: Vec<String> = (0..2).map(|i| p.probability(i).to_string()).collect();
    shown.sort();
    assert_eq!(shown, ["3/10", "7/10"]);
}

/// Tokens of the DOT subset the exporter emits.
#[derive(Debug, PartialEq)]
enum Tok {
    Id(String),
    Quoted(String),
    Sym(&'static str),
}

fn lex(text: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('"') => break,
                    Some('\\') => {
                        s.push(*chars.get(i + 1).ok_or("dangling escape")?);
                        i += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(Tok::Quoted(s));
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let id: String = chars[start..i].iter().collect();
            if id.starts_with(|c: char| c.is_ascii_digit()) && !id.chars().all(|c| c.is_ascii_digit()) {
                return Err(format!("identifier `{id}` starts with a digit"));
            }
            out.push(Tok::Id(id));
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Tok::Sym("->"));
            i += 2;
        } else {
            let sym = match c {
                '{' => "{",
                '}' => "}",
                '[' => "[",
                ']' => "]",
                '=' => "=",
                ',' => ",",
                ';' => ";",
                _ => return Err(format!("unexpected character `{c}`")),
            };
            out.push(Tok::Sym(sym));
            i += 1;
        }
    }
    Ok(out)
}

/// Accepts `digraph ID { (node_stmt | edge_stmt)* }`; returns node and
/// edge counts.
fn check_dot(text: &str) -> Result<(usize, usize), String> {
    let toks = lex(text)?;
    let mut i = 0;
    let expect = |t: Tok, i: &mut usize| -> Result<(), String> {
        if toks.get(*i) == Some(&t) {
            *i += 1;
            Ok(())
        } else {
            Err(format!("expected {t:?} at token {i}, found {:?}", toks.get(*i)))
        }
    };
    expect(Tok::Id("digraph".into()), &mut i)?;
    matches!(toks.get(i), Some(Tok::Id(_))).then_some(()).ok_or("graph id")?;
    i += 1;
    expect(Tok::Sym("{"), &mut i)?;
    let (mut nodes, mut edges) = (0, 0);
    let mut declared = std::collections::BTreeSet::new();
    loop {
        match toks.get(i) {
            Some(Tok::Sym("}")) => {
                i += 1;
                break;
            }
            Some(Tok::Id(a)) => {
                let a = a.clone();
                i += 1;
                match toks.get(i) {
                    Some(Tok::Sym("->")) => {
                        i += 1;
                        let Some(Tok::Id(b)) = toks.get(i) else { return Err("edge target".into()) };
                        if !declared.contains(&a) || !declared.contains(b) {
                            return Err(format!("edge {a} -> {b} uses an undeclared node"));
                        }
                        i += 1;
                        edges += 1;
                    }
                    Some(Tok::Sym("[")) => {
                        i += 1;
                        loop {
                            let Some(Tok::Id(_)) = toks.get(i) else { return Err("attribute name".into()) };
                            i += 1;
                            expect(Tok::Sym("="), &mut i)?;
                            match toks.get(i) {
                                Some(Tok::Id(_)) | Some(Tok::Quoted(_)) => i += 1,
                                other => return Err(format!("attribute value {other:?}")),
                            }
                            match toks.get(i) {
                                Some(Tok::Sym(",")) => i += 1,
                                Some(Tok::Sym("]")) => {
                                    i += 1;
                                    break;
                                }
                                other => return Err(format!("attribute list {other:?}")),
                            }
                        }
                        if !declared.insert(a.clone()) {
                            return Err(format!("node {a} declared twice"));
                        }
                        nodes += 1;
                    }
                    other => return Err(format!("statement {other:?}")),
                }
                expect(Tok::Sym(";"), &mut i)?;
            }
            other => return Err(format!("unexpected {other:?}")),
        }
    }
    if i != toks.len() {
        return Err("trailing tokens".into());
    }
    Ok((nodes, edges))
}

#[test]
fn dot_output_is_well_formed_and_stable() {
    for (name, d) in corpus::diagrams() {
        let text = export_dot(&d);
        let (nodes, edges) = check_dot(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        assert_eq!(nodes, d.nodes().len(), "{name}");
        let arcs: usize = (0..d.nodes().len()).map(|i| d.parents_of(i).len()).sum();
        assert_eq!(edges, arcs, "{name}");
        assert_eq!(export_dot(&d), text, "{name}");
    }
    let mut r = rng(5);
    for _ in 0..200 {
        let d = random_diagram(&mut r, 8);
        let text = export_dot(&d);
        check_dot(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    }
}

#[test]
fn dot_checker_rejects_malformed_text() {
    assert!(check_dot("digraph g { a -> b; }").is_err());
    assert!(check_dot("digraph g { a [shape=box] }").is_err());
    assert!(check_dot("digraph g { 1a [shape=box]; }").is_err());
    assert!(check_dot("digraph g {\n}\n").is_ok());
}
