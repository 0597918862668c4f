//! Generates correlated synthetic orders and writes a complete data set
//! (layout, catalog, orders) that the `slap` binary can read.
//!
//!     cargo run --example synthetic_orders -- [out-dir] [seed]

use slap::analysis::jaccard;
use slap::model::io::{write_catalog, write_layout};
use slap::orders::{pick_frequency, write_orders_csv};
use slap::synthetic::{generate_instance, LayoutSpec, SyntheticSpec};
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "synthetic-data".into()));
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0);

    let spec = SyntheticSpec::desk();
    let inst = generate_instance(&spec, &LayoutSpec::desk(), seed)?;
    std::fs::create_dir_all(&out)?;
    write_layout(out.join("layout.json"), &inst.layout)?;
    write_catalog(out.join("catalog.csv"), &inst.catalog)?;
    write_orders_csv(out.join("orders.csv"), &inst.orders)?;

    let sizes: Vec<usize> = inst.orders.batches().iter().map(|b| b.len()).collect();
    let mean = sizes.iter().sum::<usize>() as f64 / sizes.len() as f64;
    println!(
        "{} items in {} option groups, {} batches (size {}..={}, mean {mean:.1}), {} positions",
        inst.catalog.len(),
        spec.option_groups.len(),
        sizes.len(),
        sizes.iter().min().unwrap(),
        sizes.iter().max().unwrap(),
        inst.layout.position_count()
    );

    // items of one option group travel together; compare with an unrelated pair
    let freq = pick_frequency(&inst.orders, &inst.catalog);
    let mut by_count: Vec<_> = freq.iter().filter(|(_, &c)| c > 0).collect();
    by_count.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
    let (a, b) = (*by_count[0].0, *by_count[by_count.len() - 1].0);
    let best_partner = inst
        .catalog
        .items()
        .iter()
        .filter(|i| i.id != a)
        .filter_map(|i| jaccard(&inst.orders, a, i.id).map(|v| (v, i.id)))
        .fold((0.0, a), |acc, x| if x.0 > acc.0 { x } else { acc });
    println!(
        "item {a}: strongest co-pick partner {} (jaccard {:.2}); rarely picked item {b}: jaccard {:.2}",
        best_partner.1,
        best_partner.0,
        jaccard(&inst.orders, a, b).unwrap_or(0.0)
    );
    println!("wrote {}", out.display());
    Ok(())
}
