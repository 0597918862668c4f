//! Retrieval time of a few hand-built bins under each routing mode.
//!
//!     cargo run --example cost_model

use slap::cost::{batch_time, AisleMode, CostParams, PassMode};
use slap::model::{Assignment, Catalog, ContainerClass, Item, ItemId, Placement, SlotAddress, WarehouseLayout};
use slap::orders::Batch;
use std::sync::Arc;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // two aisles of 8 subsections, 4 levels, six small boxes per cell
    let rl = ContainerClass::REGULAR_LOW;
    let layout = WarehouseLayout::uniform(vec![8, 8], 4, &[rl; 6]);
    let slots = [
        (1, SlotAddress::new(0, 1, 0, 0)),
        (2, SlotAddress::new(0, 4, 1, 0)),
        (3, SlotAddress::new(0, 3, 2, 0)),
        (4, SlotAddress::new(1, 7, 0, 0)),
        (5, SlotAddress::new(1, 0, 3, 0)),
    ];
    let catalog = Arc::new(Catalog::new(slots.iter().map(|&(id, _)| Item::new(id, rl)).collect())?);
    let placements: Vec<Placement> =
        slots.iter().map(|&(id, slot)| Placement { item: ItemId(id), slot }).collect();
    let assignment = Assignment::from_placements(&layout, catalog, &placements)?;

    let bins = [
        ("lower only", vec![1, 2]),
        ("lower + one upper level", vec![1, 2, 3]),
        ("two aisles, both upper levels", vec![1, 3, 4, 5]),
    ];
    let modes = [
        ("wide, multi-pass", AisleMode::Wide, PassMode::MultiPass),
        ("wide, aggregate", AisleMode::Wide, PassMode::Aggregate),
        ("narrow, multi-pass", AisleMode::Narrow, PassMode::MultiPass),
    ];
    for (label, items) in &bins {
        let (batch, _) = Batch::new(*label, items.iter().map(|&i| ItemId(i)));
        println!("{label}: items {items:?}");
        for (mode, aisle_mode, pass_mode) in modes {
            let params = CostParams { aisle_mode, pass_mode, ..CostParams::default() };
            let c = batch_time(&layout, &assignment, &batch, &params)?;
            println!("  {mode:<20} route {:>5} s  pick {:>5} s  bin {:>5} s", c.routing, c.picking, c.total);
        }
    }
    Ok(())
}
