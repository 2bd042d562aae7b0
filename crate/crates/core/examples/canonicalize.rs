//! Compiles the medical-treatment table into a canonical-form influence
//! diagram and prints it as a model document.
//!
//! ```text
//! cargo run --example canonicalize > medical.diagram.json
//! ```

use decause::corpus;
use decause::diagram::{canonicalize, check_canonical_form, CanonicalizeOptions};
use decause::io::serialize_model;
use decause::structural::flatten;

fn main() -> decause::Result<()> {
    let problem = corpus::medical();
    let diagram = canonicalize(&problem, &CanonicalizeOptions::default())?;

    let verdict = check_canonical_form(&diagram, &problem)?;
    eprint!("{verdict}");
    eprintln!("round trip exact: {}", flatten(&diagram)?.same_distribution(&problem));
    for node in diagram.nodes() {
        if !node.parents.is_empty() {
            eprintln!("{} <- {}", node.name, node.parents.join(", "));
        }
    }
    print!("{}", serialize_model(&diagram));
    Ok(())
}
