//! A pointed path on which every mutation type occurs.

use std::collections::BTreeMap;

use levels::motion::mutation_rich_path;

fn main() {
    let (n, r) = (8, 5);
    let path = mutation_rich_path(n, r, 0).expect("construction succeeds");
    let mut counts = BTreeMap::new();
    for e in &path.events {
        *counts.entry(e.mtype).or_insert(0) += 1;
    }
    println!(
        "{} events, {} configurations, all pointed: {}",
        path.events.len(),
        path.configs.len(),
        path.configs.iter().all(|c| c.is_pointed())
    );
    for (t, c) in counts {
        println!("  type {t:?}: {c}");
    }
    println!("missing types: {:?}", path.missing_types(n, r));
}
