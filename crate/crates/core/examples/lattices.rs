//! Integral lattices: determinants, diagonal forms, and the extension by
//! the canonical class.
//!
//! `cargo run --example lattices -- [spec]`

use rhpp::lattice::ExtendedLattice;
use rhpp::spec::parse_lattice;

fn main() -> rhpp::Result<()> {
    let specs: Vec<String> = match std::env::args().nth(1) {
        Some(s) => vec![s],
        None => ["E8", "H+E8", "3A1+2A3", "4A1+D5", "2A1+3diag(-3)", "HJ[3,2,2,2,2,3]"].map(String::from).to_vec(),
    };
    for spec in &specs {
        let l = parse_lattice(spec)?.lattice();
        let d = l.diagonalize()?;
        println!("{spec}: rank {}, det {}, signature {:?}, even {}", l.rank(), l.det(), l.signature()?, l.is_even());
        println!("  diagonal <{}>", d.to_strings().join(", "));
        if l.is_negative_definite() {
            let ext = ExtendedLattice::by_canonical_class(&l)?;
            match ext.lattice() {
                Some(m) => println!("  with K: K^2 = {}, det {}", ext.ks2(), m.det()),
                None => println!("  with K: K^2 = {} (numerically trivial)", ext.ks2()),
            }
        }
    }
    Ok(())
}
