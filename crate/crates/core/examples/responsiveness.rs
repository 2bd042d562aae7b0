//! Limited unresponsiveness on the omelet and medical-treatment tables.
//!
//! ```text
//! cargo run --example responsiveness
//! ```

use decause::corpus;
use decause::model::Assignment;
use decause::responsiveness::{
    independent_of_decisions, unresponsive_at_instance, unresponsive_limited, unresponsive_to_subset,
};

fn main() -> decause::Result<()> {
    let omelet = corpus::omelet();
    for x in ["o", "g", "s"] {
        let v = unresponsive_limited(&omelet, &[x], &[])?;
        match v.witness {
            Some(w) => println!("omelet: {x} responds to the decision; {w}"),
            None => println!("omelet: {x} is unresponsive"),
        }
    }

    let medical = corpus::medical();
    let plain = unresponsive_limited(&medical, &["c"], &[])?;
    let limited = unresponsive_limited(&medical, &["c"], &["t"])?;
    println!("medical: c unresponsive {}, limited by t {}", plain.holds, limited.holds);

    let taken = Assignment::new().with("t", "yes");
    let pinned = unresponsive_at_instance(&medical, &["c"], &["t"], &taken)?;
    println!("medical: limited by t=yes {}", pinned.holds);

    // the two-decision retroviral story: genotype responds to v only
    let retro = corpus::medical_retro();
    for dsub in [["r"], ["v"]] {
        let v = unresponsive_to_subset(&retro, &["g"], &dsub, &[] as &[&str])?;
        println!("retro: g unresponsive to {{{}}} {}", dsub[0], v.holds);
    }

    // responsive yet independent: the fair-coin bet
    let bet = corpus::bet();
    println!(
        "bet: w responsive {}, independent of the bet {}",
        !unresponsive_limited(&bet, &["w"], &[])?.holds,
        independent_of_decisions(&bet, &["w"])?
    );
    Ok(())
}
