//! Quotient singularities: discrepancies, `D_p^2`, and the polyhedral
//! `K^2` table next to four nodes.
//!
//! `cargo run --example singularities -- [b_max]`

use rhpp::singularity::{ks2_with_four_nodes, ks_formulas, QuotientSingularity, StarRow};

fn main() -> rhpp::Result<()> {
    let b_max: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);

    for p in [
        QuotientSingularity::cyclic(24, 5)?,
        QuotientSingularity::cyclic(5, 1)?,
        QuotientSingularity::dihedral(2, "2,2".parse()?)?,
        QuotientSingularity::dihedral(3, "3".parse()?)?,
    ] {
        let (a, dp2) = p.discrepancy_and_dp2()?;
        let a: Vec<String> = a.iter().map(ToString::to_string).collect();
        println!("{:<16} |G| = {:<4} a = [{}]  D^2 = {dp2}", p.lattice_name(), p.group_order(), a.join(", "));
    }

    println!("\nK^2 for 4A1 + polyhedral point, b = 2..={b_max}");
    for f in ks_formulas() {
        let row = StarRow::by_id(f.row)?;
        let mut cells = Vec::new();
        for b in 2..=b_max {
            let p = QuotientSingularity::polyhedral(row.kind, row.index, b)?;
            let v = f.eval(b);
            assert_eq!(v, ks2_with_four_nodes(&p)?, "{} at b = {b}", f.row);
            cells.push(format!("{v:>8}"));
        }
        println!("{:<3} {:?} {}", f.row, row.arms, cells.join(" "));
    }
    Ok(())
}
