//! Converts canonical diagrams into functional causal theories.
//!
//! ```text
//! cargo run --example export_pearl > theory.json
//! ```

use decause::corpus;
use decause::diagram::export_pearl;
use decause::io::serialize_model;

fn main() -> decause::Result<()> {
    let (theory, report) = export_pearl(&corpus::fig2b())?;
    eprintln!("genotype diagram:");
    eprint!("{report}");
    for node in theory.nodes().iter().filter(|n| n.latent) {
        eprintln!("  disturbance {} has {} instances", node.name, node.instances.len());
    }

    let (_, report) = export_pearl(&corpus::fig1b())?;
    eprintln!("treatment diagram:");
    eprint!("{report}");

    print!("{}", serialize_model(&theory));
    Ok(())
}
