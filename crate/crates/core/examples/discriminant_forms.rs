//! Discriminant groups and the order-4 isotropic subgroups of `4A1 + D5`.
//!
//! `cargo run --example discriminant_forms`

use rhpp::lattice::DiscriminantGroup;
use rhpp::obstruction::enriques_disc_analysis;
use rhpp::spec::parse_lattice;

fn main() -> rhpp::Result<()> {
    for spec in ["A1", "A3", "D5", "E6", "3A1+2A3", "4A1+D5"] {
        let g = DiscriminantGroup::of(&parse_lattice(spec)?.lattice())?;
        println!("{spec:<8} invariant factors {:?}, order {}", g.invariant_factors, g.order());
    }

    let a = enriques_disc_analysis()?;
    println!("\n{}: q(v) = {}, q(e1+e2+e3+e4) = {}, q(e1+e2) = {}", a.lattice, a.q_v, a.q_e_sum, a.q_e1_e2);
    println!("isotropic subgroups of order 4: {}", a.isotropic_order4);
    for (sub, det) in a.admissible.iter().zip(&a.overlattice_dets) {
        println!("  {{{}}}  overlattice det {det}", sub.join(", "));
    }
    println!("all contain e1+e2+e3+e4: {}", a.all_contain_e_sum);
    println!("{}", a.citation);
    Ok(())
}
