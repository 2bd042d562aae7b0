//! Runs the law checks on seeded random problems and models.
//!
//! ```text
//! cargo run --release --example selftest -- 42 10000
//! ```

use decause::laws::selftest;
use decause::random::DEFAULT_SEED;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let queries = args.next().and_then(|s| s.parse().ok()).unwrap_or(1000);
    let report = selftest(seed, queries);
    print!("{report}");
    if !report.passed() {
        std::process::exit(1);
    }
}
