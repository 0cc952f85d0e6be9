//! Subspace dimensions and classification for a grid of scenarios.

use sic_core::symmetrizer::{classify, dim_antisymmetric, dim_symmetric, find_dim_two};
use sic_core::{Scenario, Statistics};

fn main() {
    println!(
        "{:>3} {:>3} {:>8} {:>8}  fermions",
        "n", "d", "dim S", "dim A"
    );
    for n in 2..=4 {
        for d in 2..=4 {
            let f = Scenario::new(n, d, Statistics::Fermionic).unwrap();
            println!(
                "{n:>3} {d:>3} {:>8} {:>8}  {}",
                dim_symmetric(n, d).unwrap(),
                dim_antisymmetric(n, d).unwrap(),
                classify(&f)
            );
        }
    }
    match find_dim_two(20, 20) {
        None => println!("no two-dimensional subspace for 2 <= n, d <= 20"),
        Some(s) => println!("two-dimensional subspace at {s}"),
    }
}
