//! The printed two-qutrit bases next to generated ones, with their checks.

use sic_core::symmetrizer::{generate_basis, paper_basis, PaperBasis};
use sic_core::{Scenario, Statistics};

fn main() {
    for which in [PaperBasis::BosonTwoQutrits, PaperBasis::FermionTwoQutrits] {
        let b = paper_basis(which);
        println!("{which:?}");
        for v in b.vectors() {
            println!("  normsq {}  {}", v.normsq(), v.render());
        }
        println!(
            "  orthogonal {}, symmetry {}",
            b.is_pairwise_orthogonal(),
            b.all_symmetric()
        );
    }

    let s = Scenario::new(2, 3, Statistics::Fermionic).unwrap();
    let slater = generate_basis(&s).unwrap();
    println!(
        "Slater basis equals the printed one up to sign and order: {}",
        slater.matches_up_to_sign_and_order(&paper_basis(PaperBasis::FermionTwoQutrits))
    );

    let three = Scenario::new(3, 3, Statistics::Bosonic).unwrap();
    println!(
        "three bosonic qutrits: {} basis vectors",
        generate_basis(&three).unwrap().len()
    );
}
