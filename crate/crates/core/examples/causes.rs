//! Minimal cause sets, reported as antichains.
//!
//! ```text
//! cargo run --example causes
//! ```

use decause::causes::{find_causes, is_cause_set};
use decause::corpus;

fn show(label: &str, sets: &[Vec<String>]) {
    let rendered: Vec<String> = sets.iter().map(|s| format!("{{{}}}", s.join(", "))).collect();
    println!("{label}: {}", rendered.join(" "));
}

fn main() -> decause::Result<()> {
    let medical = corpus::medical();
    show("causes of c in medical", &find_causes(&medical, "c", None)?.minimal_sets);
    println!("{{t}} causes c: {}", is_cause_set(&medical, &["t"], "c")?);
    println!("{{r, t}} causes c: {}", is_cause_set(&medical, &["r", "t"], "c")?);

    let retro = corpus::medical_retro();
    show("causes of t in medical-retro", &find_causes(&retro, "t", None)?.minimal_sets);

    let gene = corpus::medical_gene();
    show("causes of g in medical-gene", &find_causes(&gene, "g", None)?.minimal_sets);

    let game = corpus::coin_match();
    show("causes of m", &find_causes(&game, "m", None)?.minimal_sets);
    show("causes of w", &find_causes(&game, "w", None)?.minimal_sets);

    let bounded = find_causes(&retro, "t", Some(1))?;
    println!(
        "search up to size {}: {} sets, exhaustive {}",
        bounded.search_bound,
        bounded.minimal_sets.len(),
        bounded.exhaustive
    );
    Ok(())
}
