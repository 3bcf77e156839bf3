//! Hilbert symbols and local invariants of rational diagonal forms.
//!
//! `cargo run --example padic -- [a b]`

use rhpp::padic::{hilbert, rationally_equivalent, DiagonalForm, Place};
use rhpp::rational::Q;

fn main() -> rhpp::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (a, b) = match args[..] {
        [a, b] => (a, b),
        _ => (-1, -3),
    };
    let (qa, qb) = (Q::from_integer(a.into()), Q::from_integer(b.into()));
    let places = [Place::Real, Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Prime(7)];
    for p in places {
        println!("({a}, {b})_{p} = {}", hilbert(&qa, &qb, p)?);
    }

    let f = DiagonalForm::from_ints(&[1, -1, -1])?;
    let g = DiagonalForm::from_ints(&[1, -2, -2])?;
    let h = DiagonalForm::from_ints(&[1, -3, -3])?;
    for (name, other) in [("<1,-2,-2>", &g), ("<1,-3,-3>", &h)] {
        let eq = rationally_equivalent(&f, other)?;
        println!("<1,-1,-1> ~ {name}: {}  (failing places {:?})", eq.equivalent, eq.failing_places());
    }
    for p in [Place::Prime(2), Place::Prime(3)] {
        println!("eps_{p}(<1,-3,-3>) = {}, d = {:?}", h.epsilon(p)?, h.d(p)?);
    }
    Ok(())
}
