//! Builds the three sets, prints their bookkeeping and round-trips one
//! through the text format.

use sic_core::kssets::{
    a3_construction, build_s4, parse_set, s6_construction, serialize_set, BuiltinSet,
};

fn main() {
    for b in [BuiltinSet::A3, BuiltinSet::S4, BuiltinSet::S6] {
        let s = b.build();
        println!("{}: {} rays in dimension {}", s.name(), s.len(), s.dim());
    }

    let a3 = a3_construction();
    println!(
        "A3: {} expanded, {} removed, {} kept",
        a3.pre_removal.len(),
        a3.removed.len(),
        a3.result.len()
    );
    let s6 = s6_construction();
    let overlap = s6.parts[0].intersection(&s6.parts[1]).unwrap();
    println!(
        "S6: {} + {} - {} + {} - {} = {}",
        s6.parts[0].len(),
        s6.parts[1].len(),
        overlap.len(),
        s6.parts[2].len(),
        s6.removed.len(),
        s6.result.len()
    );
    for d in overlap.members() {
        println!("  shared {d}");
    }

    let text = serialize_set(&build_s4());
    let back = parse_set(&text).unwrap();
    println!("S4 survives a round trip: {}", back.set == build_s4());
}
