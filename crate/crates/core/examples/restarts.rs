//! Independent annealing chains on several threads. The winner is the same
//! whatever the thread count.
//!
//!     cargo run --release --example restarts -- [chains] [threads]

use slap::annealer::{anneal_restarts, AnnealSchedule};
use slap::baselines::frequency_assignment;
use slap::cost::CostParams;
use slap::orders::pick_frequency;
use slap::synthetic::desk_instance;
use std::sync::Arc;
use std::time::Instant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let chains: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);
    let threads: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);

    let inst = desk_instance(1);
    let catalog = Arc::new(inst.catalog.clone());
    let params = CostParams::default();
    let freq = pick_frequency(&inst.orders, &catalog);
    let init = frequency_assignment(&inst.layout, catalog, &freq, &params.level_categories())?;
    // a shorter schedule than the default keeps the demo quick
    let schedule = AnnealSchedule { iters_per_temp: 250, ..AnnealSchedule::default() };
    let seeds: Vec<u64> = (1..=chains).collect();

    let started = Instant::now();
    let outcome = anneal_restarts(&inst.layout, &inst.orders, &params, &schedule, &init, &seeds, threads)?;
    println!("{chains} chains on {threads} threads in {:.1?}", started.elapsed());
    for (seed, cost) in seeds.iter().zip(&outcome.costs) {
        let mark = if *seed == seeds[outcome.best_index] { "  <- best" } else { "" };
        println!("  seed {seed:>3}: {cost} s{mark}");
    }
    println!("start {} s, best {} s", outcome.trace.initial_cost, outcome.trace.best_cost);
    Ok(())
}
