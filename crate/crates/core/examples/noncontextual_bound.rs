//! Maximises the triad sum over noncontextual assignments, and shows that
//! the maximiser is not a KS colouring.

use sic_core::frames::{enumerate_frames, ks_colorable};
use sic_core::inequality::{algebraic_bound, classical_beta, noncontextual_bound};
use sic_core::BuiltinSet;

fn main() {
    let a3 = BuiltinSet::A3.build();
    let frames = enumerate_frames(&a3);
    let b = noncontextual_bound(&frames).unwrap();
    println!(
        "noncontextual {} / algebraic {} ({} nodes)",
        b.value,
        algebraic_bound(&frames),
        b.nodes_explored
    );
    let minus = b.witness.minus_set();
    println!("witness: -1 on {} directions", minus.len());
    for d in &minus {
        println!("  {d}");
    }
    println!("re-evaluated: {:?}", classical_beta(&b.witness, &frames));

    let orthogonal_pairs: Vec<String> = minus
        .iter()
        .enumerate()
        .flat_map(|(i, u)| minus[i + 1..].iter().map(move |v| (*u, *v)))
        .filter(|(u, v)| u.is_orthogonal(v).unwrap())
        .map(|(u, v)| format!("{u}⊥{v}"))
        .collect();
    println!("orthogonal -1 pairs: {}", orthogonal_pairs.join(" "));
    println!(
        "KS colourable: {}",
        ks_colorable(&a3, &frames).unwrap().result.is_colorable()
    );
}
