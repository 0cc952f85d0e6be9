//! Runs every verification check and prints the table. Takes a couple of
//! minutes in release mode, mostly the sub-collection sweep.

use sic_core::report::Format;
use sic_core::reproduce::{reproduce, ReproduceConfig};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("seed is a u64"))
        .unwrap_or(sic_core::reproduce::DEFAULT_SEED);
    let report = reproduce(&ReproduceConfig {
        seed,
        ..ReproduceConfig::default()
    });
    print!("{}", report.render(Format::Human));
    eprintln!("elapsed {:.1}s", report.elapsed.as_secs_f64());
}
