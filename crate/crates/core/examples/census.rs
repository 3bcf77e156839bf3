//! Runs the default census and prints the summary table.
//!
//! `cargo run --release --example census -- [json]`

use rhpp::census::{run_census, CensusConfig, Format};

fn main() -> rhpp::Result<()> {
    let format = match std::env::args().nth(1).as_deref() {
        Some("json") => Format::Json,
        _ => Format::Table,
    };
    let report = run_census(&CensusConfig::default())?;
    print!("{}", report.render(format)?);
    if !report.summary.golden_ok() {
        std::process::exit(1);
    }
    Ok(())
}
