//! The triad operator sum is the identity times 17, so every state scores
//! the same.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sic_core::frames::enumerate_frames;
use sic_core::inequality::{build_inequality, frame_operator, quantum_value, random_state};
use sic_core::{BuiltinSet, QuantumState, RationalMatrix};

fn main() {
    let a3 = BuiltinSet::A3.build();
    let frames = enumerate_frames(&a3);
    let all_identity = frames
        .iter()
        .all(|f| frame_operator(f).unwrap() == RationalMatrix::identity(3));
    println!("every frame operator is the identity: {all_identity}");

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let psi = random_state(&mut rng, 3);
        println!(
            "{} -> {}",
            psi.amplitudes(),
            quantum_value(&frames, &psi).unwrap()
        );
    }
    let e = QuantumState::from_integers(&[0, 0, 1]).unwrap();
    println!(
        "{} -> {}",
        e.amplitudes(),
        quantum_value(&frames, &e).unwrap()
    );

    let ineq = build_inequality(&a3).unwrap();
    println!(
        "quantum {} vs noncontextual {}: gap {}",
        ineq.quantum_value,
        ineq.noncontextual_bound,
        ineq.gap()
    );
}
