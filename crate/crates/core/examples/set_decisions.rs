//! Set decisions: augmenting a model and checking that forcing a
//! variable changes nothing else.
//!
//! ```text
//! cargo run --example set_decisions
//! ```

use decause::corpus;
use decause::mapping::{augment_with_set_decisions, verify_augmentation, verify_set_decisions, DO_NOTHING};
use decause::structural::flatten;

fn main() -> decause::Result<()> {
    let gene = corpus::medical_gene_model();
    let augmented = augment_with_set_decisions(&gene, &["c", "t"])?;
    for node in augmented.nodes() {
        if node.is_decision() {
            println!("decision {} in {{{}}}", node.name, node.instances.join(", "));
        }
    }
    let verdict = verify_set_decisions(&flatten(&gene)?, &flatten(&augmented)?, None)?;
    println!("genotype model: valid {} after {} comparisons", verdict.holds, verdict.checked);

    let only_t = verify_augmentation(&gene, &["t"], Some(1))?;
    println!("setting t alone, bound 1: valid {}", only_t.holds);

    // forcing the treatment also spoils the cure
    let forced = corpus::medical_force();
    let natural = forced.restrict_decision("set_t", DO_NOTHING)?;
    let verdict = verify_set_decisions(&natural, &forced, None)?;
    match verdict.failure {
        Some(f) => println!("forced treatment is not a set decision: {f}"),
        None => println!("forced treatment passes"),
    }
    Ok(())
}
