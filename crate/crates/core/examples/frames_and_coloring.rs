//! Frames of each set and the KS colouring decision.

use sic_core::frames::{enumerate_frames, ks_colorable, shared_vector_index};
use sic_core::{BuiltinSet, ColorabilityResult, VectorSet};

fn main() {
    for b in [BuiltinSet::S4, BuiltinSet::A3, BuiltinSet::S6] {
        let s = b.build();
        let frames = enumerate_frames(&s);
        let verdict = match ks_colorable(&s, &frames).unwrap().result {
            ColorabilityResult::Colorable(_) => "colourable".to_string(),
            ColorabilityResult::NotColorable { nodes_explored } => {
                format!("not colourable ({nodes_explored} search nodes)")
            }
        };
        println!("{}: {} frames, {verdict}", s.name(), frames.len());
    }

    let a3 = BuiltinSet::A3.build();
    let frames = enumerate_frames(&a3);
    for (d, occ) in shared_vector_index(&frames) {
        if occ.len() >= 4 {
            println!("{d} sits in {} frames", occ.len());
        }
    }

    // two frames sharing (1,0,0) are easy to colour
    let toy = VectorSet::from_raw(
        "toy",
        3,
        [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1], [0, 1, -1]],
    )
    .unwrap();
    let frames = enumerate_frames(&toy);
    if let ColorabilityResult::Colorable(w) = ks_colorable(&toy, &frames).unwrap().result {
        let ones: Vec<String> = w
            .iter()
            .filter(|(_, &v)| v)
            .map(|(d, _)| d.to_string())
            .collect();
        println!("toy colouring puts 1 on {}", ones.join(" "));
    }
}
