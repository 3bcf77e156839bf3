//! Continued fractions: evaluation, the tau step, and the T_6 class.
//!
//! `cargo run --example continued_fractions -- [q q1]`

use num_bigint::BigInt;
use rhpp::hjcf::{generate_td, td_by_classification};
use rhpp::HjString;

fn main() -> rhpp::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (q, q1) = match args[..] {
        [q, q1] => (q, q1),
        _ => (24, 11),
    };
    let s = HjString::expand(&BigInt::from(q), &BigInt::from(q1))?;
    println!("{q}/{q1} = {s}");
    println!("  q = {}, q_1 = {}, q_l = {}, q_1,l = {}", s.det(), s.q1(), s.ql(), s.q1l());
    println!("  t = q_1 + q_l - q = {}", s.t_invariant());
    println!("  class: {:?}", s.classify()?);

    let mut t = s.clone();
    for _ in 0..3 {
        t = t.tau();
        println!("  tau -> {t}  (t = {}, q = {})", t.t_invariant(), t.det());
    }

    let t6 = generate_td(6, 10);
    println!("T_6 strings up to length 10: {}", t6.len());
    println!("  agrees with classification scan: {}", t6 == td_by_classification(6, 10));
    for s in t6.iter().take(6) {
        println!("  {s}  q = {}", s.det());
    }
    Ok(())
}
