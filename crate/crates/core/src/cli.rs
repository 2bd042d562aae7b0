//! The `decause` command line.
//!
//! [`run_cli`] takes the full argument vector and returns the exit code
//! with both output streams, so the binary is a thin wrapper and the
//! behaviour is testable in process.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, or the queried property holds |
//! | 1 | the property fails; a witness is printed |
//! | 2 | usage, parse or schema error |
//!
//! List arguments are comma separated; commas inside parentheses belong to
//! the name, so `--x "t(r,g),c"` names two variables.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::causes::find_causes;
use crate::diagram::{
    canonicalize, check_canonical_form, check_canonical_self, count_parameters, d_separated, export_pearl,
    CanonicalVerdict, CanonicalizeOptions,
};
use crate::dot::export_dot;
use crate::error::Error;
use crate::io::{parse_problem, serialize_model, serialize_problem, Document};
use crate::laws::selftest;
use crate::mapping::{extract_mapping_variable, mapping_variable_structural, MappingVariable};
use crate::model::{Assignment, DecisionProblem};
use crate::random::DEFAULT_SEED;
use crate::responsiveness::{
    independent_of_decisions, unresponsive_at_instance, unresponsive_limited, unresponsive_to_subset, Verdict,
};
use crate::structural::{flatten, InfluenceDiagram};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Default number of selftest queries.
pub const DEFAULT_BUDGET: u64 = 2000;

#[derive(Parser, Debug)]
#[command(name = "decause", version, about = "Decision-relative causality on world-state tables and influence diagrams")]
struct Cli {
    /// Output format of results.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a document.
    Validate { file: PathBuf },
    /// Is X unresponsive to the decisions in states limited by a set?
    Unresponsive(UnresponsiveArgs),
    /// Is the distribution of X the same under every alternative?
    Independent {
        file: PathBuf,
        #[arg(long, value_parser = parse_list)]
        x: List,
    },
    /// Minimal cause sets of a chance variable.
    Causes {
        file: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// The mapping variable X(Y).
    Mapvar {
        file: PathBuf,
        #[arg(long, value_parser = parse_list)]
        x: List,
        #[arg(long, value_parser = parse_list, num_args = 0..=1, default_missing_value = "", default_value = "")]
        y: List,
        /// Build the map by forcing Y on a structural model.
        #[arg(long)]
        structural: bool,
    },
    /// Compile a problem into a canonical-form influence diagram.
    Canonicalize {
        file: PathBuf,
        #[arg(long, value_parser = parse_list)]
        ordering: Option<List>,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Flatten a structural model into a table.
    Flatten {
        file: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Check a diagram's canonical form against a problem.
    CheckCanonical { diagram: PathBuf, problem: PathBuf },
    /// d-separation of X and Y given Z.
    Dsep {
        diagram: PathBuf,
        #[arg(long, value_parser = parse_list)]
        x: List,
        #[arg(long, value_parser = parse_list)]
        y: List,
        #[arg(long, value_parser = parse_list, num_args = 0..=1, default_missing_value = "", default_value = "")]
        z: List,
    },
    /// Number of independent probabilities a diagram needs.
    Params { diagram: PathBuf },
    /// Convert a canonical diagram into a functional causal theory.
    ExportPearl {
        diagram: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Render a diagram as Graphviz DOT.
    ExportDot { diagram: PathBuf },
    /// Check the algebraic laws on seeded random instances.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of random queries.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Args, Debug)]
struct UnresponsiveArgs {
    file: PathBuf,
    #[arg(long, value_parser = parse_list)]
    x: List,
    /// Limiting set; empty for plain unresponsiveness.
    #[arg(long, value_parser = parse_list, num_args = 0..=1, default_missing_value = "", default_value = "")]
    limit: List,
    /// Restrict to pairs where the limiting set takes this instance (`v=i,...`).
    #[arg(long, value_parser = parse_bindings)]
    instance: Option<Assignment>,
    /// Decision subset; the other decisions join the limiting set.
    #[arg(long, value_parser = parse_list)]
    dsub: Option<List>,
}

type List = Vec<String>;

/// Splits on commas outside parentheses; blank items are dropped.
pub fn split_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn parse_list(s: &str) -> Result<List, String> {
    Ok(split_list(s))
}

fn parse_bindings(s: &str) -> Result<Assignment, String> {
    let mut a = Assignment::new();
    for item in split_list(s) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("binding `{item}` is not of the form var=instance"))?;
        a.0.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(a)
}

/// Collected output of one invocation.
#[derive(Default)]
struct Streams {
    out: String,
    err: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistent { .. } | Error::NotCanonical(_) => EXIT_FAILS,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn load(path: &PathBuf) -> Result<Document, Failure> {
    let text = read(path)?;
    parse_problem(&text).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_problem(path: &PathBuf) -> Result<DecisionProblem, Failure> {
    Ok(load(path)?.into_problem()?)
}

fn load_diagram(path: &PathBuf) -> Result<InfluenceDiagram, Failure> {
    load(path)?.into_diagram().map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_out(s: &mut Streams, out: &Option<PathBuf>, text: String) -> Result<(), Failure> {
    match out {
        None => s.out.push_str(&text),
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("cannot write {}: {e}", p.display()),
            })?;
            let _ = writeln!(s.err, "wrote {}", p.display());
        }
    }
    Ok(())
}

fn json_line(s: &mut Streams, v: Value) {
    s.out.push_str(&serde_json::to_string_pretty(&v).expect("json values always serialize"));
    s.out.push('\n');
}

fn set_text(set: &[String]) -> String {
    format!("{{{}}}", set.join(", "))
}

fn verdict(s: &mut Streams, format: Format, v: &Verdict) -> i32 {
    match format {
        Format::Text => {
            if v.holds {
                s.out.push_str("holds\n");
            } else {
                s.out.push_str("fails\n");
            }
            if let Some(w) = &v.witness {
                let _ = writeln!(s.out, "witness: {w}");
            }
        }
        Format::Json => {
            let witness = v.witness.as_ref().map(|w| {
                json!({
                    "state": w.state,
                    "alternatives": [w.alternatives.0.to_string(), w.alternatives.1.to_string()],
                    "variable": w.variable,
                    "instances": [w.instances.0, w.instances.1],
                })
            });
            json_line(s, json!({ "holds": v.holds, "witness": witness }));
        }
    }
    if v.holds {
        EXIT_OK
    } else {
        EXIT_FAILS
    }
}

fn mapping_json(m: &MappingVariable) -> Value {
    let instances: Vec<Value> = (0..m.instances.len())
        .map(|k| json!({ "map": m.instance_name(k), "probability": m.distribution[k].to_string() }))
        .collect();
    json!({ "name": m.name, "instances": instances, "states": m.per_state.iter().map(|(l, &k)| (l.clone(), json!(m.instance_name(k)))).collect::<serde_json::Map<_, _>>() })
}

fn canonical(s: &mut Streams, format: Format, v: &CanonicalVerdict) -> i32 {
    match format {
        Format::Text => s.out.push_str(&v.to_string()),
        Format::Json => {
            let violations: Vec<Value> = v
                .violations
                .iter()
                .map(|x| json!({ "node": x.node, "clause": x.clause.to_string(), "explanation": x.explanation }))
                .collect();
            json_line(
                s,
                json!({ "canonical": v.is_canonical, "violations": violations, "warnings": v.warnings }),
            );
        }
    }
    if v.is_canonical {
        EXIT_OK
    } else {
        EXIT_FAILS
    }
}

fn execute(cli: Cli, s: &mut Streams) -> Result<i32, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Validate { file } => {
            let text = read(&file)?;
            match parse_problem(&text) {
                Ok(doc) => {
                    let (kind, summary) = match &doc {
                        Document::Table(p) => (
                            "table",
                            format!(
                                "{} decisions, {} chance variables, {} states",
                                p.decisions().len(),
                                p.chances().len(),
                                p.states().len()
                            ),
                        ),
                        Document::Structural(m) => ("structural", format!("{} nodes", m.nodes().len())),
                    };
                    match format {
                        Format::Text => {
                            let _ = writeln!(s.out, "valid {kind} document: {summary}");
                        }
                        Format::Json => json_line(s, json!({ "valid": true, "kind": kind, "summary": summary })),
                    }
                    Ok(EXIT_OK)
                }
                Err(e @ (Error::Syntax { .. } | Error::Schema { .. })) => Err(Failure {
                    code: EXIT_USAGE,
                    message: format!("{}: {e}", file.display()),
                }),
                Err(e) => {
                    match format {
                        Format::Text => {
                            let _ = writeln!(s.out, "invalid: {e}");
                        }
                        Format::Json => json_line(s, json!({ "valid": false, "error": e.to_string() })),
                    }
                    Ok(EXIT_FAILS)
                }
            }
        }
        Command::Unresponsive(a) => {
            let p = load_problem(&a.file)?;
            let v = match (&a.instance, &a.dsub) {
                (Some(_), Some(_)) => {
                    return Err(Failure {
                        code: EXIT_USAGE,
                        message: "--instance and --dsub cannot be combined".into(),
                    })
                }
                (Some(inst), None) => unresponsive_at_instance(&p, &a.x, &a.limit, inst)?,
                (None, Some(d)) => unresponsive_to_subset(&p, &a.x, d, &a.limit)?,
                (None, None) => unresponsive_limited(&p, &a.x, &a.limit)?,
            };
            Ok(verdict(s, format, &v))
        }
        Command::Independent { file, x } => {
            let p = load_problem(&file)?;
            let ind = independent_of_decisions(&p, &x)?;
            match format {
                Format::Text => s.out.push_str(if ind { "independent\n" } else { "dependent\n" }),
                Format::Json => json_line(s, json!({ "independent": ind })),
            }
            Ok(if ind { EXIT_OK } else { EXIT_FAILS })
        }
        Command::Causes { file, x, max_size } => {
            let p = load_problem(&file)?;
            let r = find_causes(&p, &x, max_size)?;
            match format {
                Format::Text => {
                    for set in &r.minimal_sets {
                        let _ = writeln!(s.out, "{}", set_text(set));
                    }
                    if !r.exhaustive {
                        let _ = writeln!(s.err, "search stopped at size {}; the list may be incomplete", r.search_bound);
                    }
                }
                Format::Json => json_line(
                    s,
                    json!({
                        "target": r.target,
                        "minimal_sets": r.minimal_sets,
                        "search_bound": r.search_bound,
                        "exhaustive": r.exhaustive,
                    }),
                ),
            }
            Ok(EXIT_OK)
        }
        Command::Mapvar { file, x, y, structural } => {
            let doc = load(&file)?;
            let result = if structural {
                let m = doc.into_diagram()?;
                mapping_variable_structural(&m, &x, &y)
            } else {
                extract_mapping_variable(&doc.into_problem()?, &x, &y)
            };
            match result {
                Ok(m) => {
                    match format {
                        Format::Text => s.out.push_str(&m.to_string()),
                        Format::Json => json_line(s, mapping_json(&m)),
                    }
                    Ok(EXIT_OK)
                }
                Err(Error::Inconsistent { witness }) => {
                    let v = Verdict::fails(*witness);
                    Ok(verdict(s, format, &v))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Canonicalize { file, ordering, out } => {
            let p = load_problem(&file)?;
            let opts = CanonicalizeOptions {
                ordering,
                ..Default::default()
            };
            let d = canonicalize(&p, &opts)?;
            write_out(s, &out, serialize_model(&d))?;
            Ok(EXIT_OK)
        }
        Command::Flatten { file, out } => {
            let m = load_diagram(&file)?;
            let p = flatten(&m)?;
            write_out(s, &out, serialize_problem(&p))?;
            Ok(EXIT_OK)
        }
        Command::CheckCanonical { diagram, problem } => {
            let d = load_diagram(&diagram)?;
            let p = load_problem(&problem)?;
            let v = check_canonical_form(&d, &p)?;
            Ok(canonical(s, format, &v))
        }
        Command::Dsep { diagram, x, y, z } => {
            let d = load_diagram(&diagram)?;
            let sep = d_separated(&d, &x, &y, &z)?;
            match format {
                Format::Text => s.out.push_str(if sep { "d-separated\n" } else { "d-connected\n" }),
                Format::Json => json_line(s, json!({ "d_separated": sep })),
            }
            Ok(if sep { EXIT_OK } else { EXIT_FAILS })
        }
        Command::Params { diagram } => {
            let d = load_diagram(&diagram)?;
            let n = count_parameters(&d);
            match format {
                Format::Text => {
                    let _ = writeln!(s.out, "{n}");
                }
                Format::Json => json_line(s, json!({ "parameters": n.to_string() })),
            }
            Ok(EXIT_OK)
        }
        Command::ExportPearl { diagram, out } => {
            let d = load_diagram(&diagram)?;
            let verdict = check_canonical_self(&d)?;
            if !verdict.is_canonical {
                s.err.push_str(&verdict.to_string());
                return Err(Error::NotCanonical(diagram.display().to_string()).into());
            }
            let (theory, report) = export_pearl(&d)?;
            write_out(s, &out, serialize_model(&theory))?;
            s.err.push_str(&report.to_string());
            Ok(EXIT_OK)
        }
        Command::ExportDot { diagram } => {
            let d = load_diagram(&diagram)?;
            s.out.push_str(&export_dot(&d));
            Ok(EXIT_OK)
        }
        Command::Selftest { seed, budget } => {
            let r = selftest(seed, budget);
            match format {
                Format::Text => s.out.push_str(&r.to_string()),
                Format::Json => {
                    let laws: serde_json::Map<String, Value> = r
                        .tallies
                        .iter()
                        .map(|(l, t)| (l.name().to_string(), json!({ "held": t.held, "vacuous": t.vacuous })))
                        .collect();
                    let failures: Vec<Value> = r
                        .failures
                        .iter()
                        .map(|c| json!({ "law": c.law.name(), "query": c.query.to_string(), "detail": c.detail, "document": c.document }))
                        .collect();
                    json_line(
                        s,
                        json!({ "seed": seed, "queries": r.queries, "problems": r.problems, "models": r.models, "laws": laws, "failures": failures }),
                    );
                }
            }
            Ok(if r.passed() { EXIT_OK } else { EXIT_FAILS })
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name. Returns the exit
/// code, the output stream and the error stream.
pub fn run_cli<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                (EXIT_USAGE, String::new(), text)
            } else {
                (EXIT_OK, text, String::new())
            };
        }
    };
    let mut s = Streams::default();
    let code = match execute(cli, &mut s) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(s.err, "error: {}", f.message);
            f.code
        }
    };
    (code, s.out, s.err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &str) -> (i32, String, String) {
        let mut argv = vec!["decause".to_string()];
        argv.extend(args.split_whitespace().map(String::from));
        run_cli(argv)
    }

    #[test]
    fn lists_respect_parentheses() {
        assert_eq!(split_list("t(r,g), c"), vec!["t(r,g)", "c"]);
        assert!(split_list("").is_empty());
    }

    #[test]
    fn causes_of_cure() {
        let (code, out, _) = run("causes corpus/medical.table.json --x c");
        assert_eq!(code, 0);
        assert_eq!(out, "{r}\n{t}\n");
    }

    #[test]
    fn omelet_is_responsive() {
        let (code, out, _) = run("unresponsive corpus/omelet.table.json --x o --limit");
        assert_eq!(code, 1);
        assert!(out.contains("state `good`"), "{out}");
    }

    #[test]
    fn params_of_gene_diagram() {
        let (code, out, _) = run("params corpus/fig2b.diagram.json");
        assert_eq!((code, out.as_str()), (0, "13\n"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run("causes").0, 2);
        assert_eq!(run("causes corpus/missing.json --x c").0, 2);
        assert_eq!(run("causes corpus/medical.table.json --x nope").0, 2);
    }
}
