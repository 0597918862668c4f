//! Anneals the desk-scale synthetic instance and compares it with both baselines.
//!
//!     cargo run --release --example anneal_desk -- [seed]

use slap::annealer::{Annealer, AnnealSchedule, Observer, TempRecord};
use slap::baselines::{frequency_assignment, random_assignment};
use slap::cost::{total_time, CostParams};
use slap::orders::pick_frequency;
use slap::synthetic::desk_instance;
use std::sync::Arc;

struct Progress;

impl Observer for Progress {
    fn on_step(&mut self, r: &TempRecord) {
        if r.step % 25 == 0 {
            println!(
                "step {:>4}  T={:>10.3e}  accept={:.3}  current={}  best={}",
                r.step, r.temperature, r.acceptance_rate, r.current_cost, r.best_cost
            );
        }
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let inst = desk_instance(seed);
    let catalog = Arc::new(inst.catalog.clone());
    let params = CostParams::default();

    let random = random_assignment(&inst.layout, catalog.clone(), seed)?;
    let freq = pick_frequency(&inst.orders, &catalog);
    let frequency = frequency_assignment(&inst.layout, catalog.clone(), &freq, &params.level_categories())?;
    let random_cost = total_time(&inst.layout, &random, &inst.orders, &params)?;
    let frequency_cost = total_time(&inst.layout, &frequency, &inst.orders, &params)?;
    println!("random    {random_cost} s");
    println!("frequency {frequency_cost} s");

    let schedule = AnnealSchedule::for_catalog(catalog.len());
    let annealer = Annealer::new(&inst.layout, &inst.orders, &params, schedule);
    let (best, trace) = annealer.run_observed(frequency, seed, &mut Progress)?;
    let best_cost = total_time(&inst.layout, &best, &inst.orders, &params)?;
    let pct = |base: slap::Time| 100.0 * (base - best_cost).as_secs_f64() / base.as_secs_f64();
    println!(
        "annealed  {best_cost} s after {} iterations in {:.1?} ({:.1}% below random, {:.1}% below frequency)",
        trace.iterations,
        trace.wall_time,
        pct(random_cost),
        pct(frequency_cost)
    );
    Ok(())
}
