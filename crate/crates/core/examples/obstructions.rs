//! Embedding obstructions: the square test, the equal-rank and
//! finite-index tests, and the `T_6` epsilon sweep.
//!
//! `cargo run --example obstructions -- [max_len]`

use rhpp::lattice::ExtendedLattice;
use rhpp::obstruction::{equal_rank_embed_test, finite_index_embed_test, square_index_test, t6_epsilon_sweep};
use rhpp::spec::parse_lattice;

fn main() -> rhpp::Result<()> {
    let max_len: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10);

    for spec in ["2A1+3diag(-3)", "6A1", "3A1+2A2", "3A1+A2+diag(-5)"] {
        let ext = ExtendedLattice::by_canonical_class(&parse_lattice(spec)?.lattice())?;
        let sq = square_index_test(&ext)?;
        let fi = finite_index_embed_test(&ext)?;
        println!("{spec} + K: K^2 = {}", ext.ks2());
        println!("  square index: {}", if sq.is_obstructed() { "obstructed" } else { "passes" });
        println!("  finite index: {}", fi.failing_place().map_or("passes".to_string(), |p| format!("obstructed at {p}")));
    }
    for spec in ["3A1+A2+A4", "4A1+A5", "3A1+2A3"] {
        let v = equal_rank_embed_test(&parse_lattice(spec)?.lattice())?;
        println!("{spec}: equal rank {}", v.failing_place().map_or("passes".to_string(), |p| format!("obstructed at {p}")));
    }

    let sweep = t6_epsilon_sweep(max_len)?;
    println!("T_6 sweep to length {max_len}: {}/{} strings pass", sweep.passed, sweep.strings);
    if !sweep.ok() {
        std::process::exit(1);
    }
    Ok(())
}
