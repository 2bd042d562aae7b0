//! Canonical form checks, d-separation and parameter counts.
//!
//! ```text
//! cargo run --example diagrams
//! ```

use decause::corpus;
use decause::diagram::{check_canonical_form, count_parameters, d_separated};

fn main() -> decause::Result<()> {
    let medical = corpus::medical();
    for (name, diagram) in [("fig1a", corpus::fig1a()), ("fig1b", corpus::fig1b())] {
        print!("{name}: {}", check_canonical_form(&diagram, &medical)?);
    }

    let gene = corpus::fig2b();
    let queries: [(&[&str], &[&str], &[&str]); 4] = [
        (&["t(r)"], &["c(t)"], &["g"]),
        (&["t(r)"], &["c(t)"], &[]),
        (&["r"], &["g"], &[]),
        (&["t"], &["c(t)"], &["g"]),
    ];
    for (x, y, z) in queries {
        println!(
            "{} and {} given {{{}}}: d-separated {}",
            x.join(","),
            y.join(","),
            z.join(","),
            d_separated(&gene, x, y, z)?
        );
    }
    println!("fig2b needs {} probabilities", count_parameters(&gene));
    println!("fig1b needs {} probabilities", count_parameters(&corpus::fig1b()));
    Ok(())
}
