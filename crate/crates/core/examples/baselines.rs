//! Random and frequency-ordered assignments of the desk instance, with the
//! cost of each and where the most frequently picked items end up.
//!
//!     cargo run --release --example baselines -- [seed]

use slap::baselines::{frequency_assignment, random_assignment};
use slap::cost::{total_time, CostParams};
use slap::orders::pick_frequency;
use slap::synthetic::desk_instance;
use std::sync::Arc;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let inst = desk_instance(seed);
    let catalog = Arc::new(inst.catalog.clone());
    let params = CostParams::default();
    let freq = pick_frequency(&inst.orders, &catalog);

    let random = random_assignment(&inst.layout, catalog.clone(), seed)?;
    let frequency = frequency_assignment(&inst.layout, catalog, &freq, &params.level_categories())?;
    println!("random    {} s", total_time(&inst.layout, &random, &inst.orders, &params)?);
    println!("frequency {} s", total_time(&inst.layout, &frequency, &inst.orders, &params)?);

    let mut top: Vec<_> = freq.iter().collect();
    top.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
    println!("\nmost picked items (aisle, subsection, level, stack):");
    for (id, count) in top.into_iter().take(8) {
        let f = frequency.slot_of(&inst.layout, *id).expect("assigned");
        let r = random.slot_of(&inst.layout, *id).expect("assigned");
        println!("  item {id:>4} picked {count:>3}x  frequency {f}  random {r}");
    }
    Ok(())
}
