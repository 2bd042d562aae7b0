//! Mapping variables read off a table and built by forcing a model.
//!
//! ```text
//! cargo run --example mapping_variables
//! ```

use decause::corpus;
use decause::mapping::{extract_mapping_variable, mapping_variable_structural, materialize};
use decause::responsiveness::unresponsive_limited;

fn main() -> decause::Result<()> {
    let medical = corpus::medical();
    let treatment = extract_mapping_variable(&medical, &["t"], &["r"])?;
    print!("{treatment}");
    for (state, k) in treatment.per_state.iter().take(4) {
        println!("  state {state}: {}", treatment.instance_name(*k));
    }

    // in the table, c is never observed at both values of t in one state
    let cure = extract_mapping_variable(&medical, &["c"], &["t"])?;
    print!("{cure}");
    let with_cure = materialize(&medical, &cure)?;
    println!("c(t) unresponsive: {}", unresponsive_limited(&with_cure, &["c(t)"], &[])?.holds);

    // forcing t on the genotype model yields total maps
    let forced = mapping_variable_structural(&corpus::medical_gene_model(), &["c"], &["t"])?;
    print!("{forced}");

    match extract_mapping_variable(&medical, &["c"], &[] as &[&str]) {
        Ok(_) => println!("c() is well defined"),
        Err(e) => println!("c() is not: {e}"),
    }
    Ok(())
}
