//! Renders every bundled diagram as Graphviz DOT.
//!
//! ```text
//! cargo run --example dot | dot -Tsvg -O
//! ```

use decause::corpus;
use decause::dot::export_dot;

fn main() {
    for (name, diagram) in corpus::diagrams() {
        println!("// {name}");
        print!("{}", export_dot(&diagram));
    }
}
