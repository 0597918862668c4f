//! Heatmap, neighbour-similarity and histogram exports for a random and a
//! frequency-ordered assignment of the desk instance.
//!
//!     cargo run --release --example analysis_exports -- [out-dir]

use slap::analysis::{
    batch_time_histogram, frequency_heatmap, grid_to_csv, histograms_to_csv,
    neighbor_similarity_map, similarity_grid, NeighborScope,
};
use slap::baselines::{frequency_assignment, random_assignment};
use slap::cost::CostParams;
use slap::orders::pick_frequency;
use slap::synthetic::desk_instance;
use std::path::PathBuf;
use std::sync::Arc;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "analysis-out".into()));
    std::fs::create_dir_all(&out)?;
    let inst = desk_instance(1);
    let catalog = Arc::new(inst.catalog.clone());
    let params = CostParams::default();
    let freq = pick_frequency(&inst.orders, &catalog);
    let random = random_assignment(&inst.layout, catalog.clone(), 1)?;
    let frequency = frequency_assignment(&inst.layout, catalog, &freq, &params.level_categories())?;

    for (name, a) in [("random", &random), ("frequency", &frequency)] {
        for grid in frequency_heatmap(&inst.layout, a, &freq) {
            let path = out.join(format!("heatmap_{name}_level{}.csv", grid.level));
            std::fs::write(path, grid_to_csv(&grid, |v| format!("{v:.4}")))?;
        }
        let sim = neighbor_similarity_map(&inst.layout, a, &inst.orders, &params, NeighborScope::Category);
        for grid in similarity_grid(&inst.layout, a, &sim) {
            let path = out.join(format!("similarity_{name}_level{}.csv", grid.level));
            std::fs::write(path, grid_to_csv(&grid, |v| v.map_or("undef".into(), |v| format!("{v:.4}"))))?;
        }
        println!(
            "{name:<9} mean neighbour similarity {:.3} ({} pairs never picked)",
            sim.mean().unwrap_or(0.0),
            sim.excluded_pairs
        );
    }

    // the random assignment is the reference the times are normalized to
    let hist = batch_time_histogram(
        &inst.orders,
        &inst.layout,
        &[("random", &random), ("frequency", &frequency)],
        &params,
        25,
    )?;
    std::fs::write(out.join("histogram.csv"), histograms_to_csv(&hist))?;
    for h in &hist {
        println!("{:<9} mean batch time {:.3} of the slowest random bin ({} s)", h.name, h.mean, h.normalization);
    }
    println!("wrote {}", out.display());
    Ok(())
}
