//! Shared fixtures: random tiny instances and a naive picker simulator used as
//! a cost oracle. The simulator only reads placements (slot addresses) and raw
//! parameters, never the library's evaluator or indexes.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use slap::cost::{AisleMode, CostParams, PassMode};
use slap::model::{
    composition_width, Assignment, Catalog, CellKey, ContainerClass, Item, ItemId, Placement,
    SlotAddress, WarehouseLayout, CELL_WIDTH_UNITS, MAX_CONTAINERS_PER_CELL,
};
use slap::orders::{Batch, OrderSet};
use slap::Time;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

pub struct Tiny {
    pub layout: WarehouseLayout,
    pub catalog: Arc<Catalog>,
    pub orders: OrderSet,
    pub placements: Vec<Placement>,
    pub assignment: Assignment,
    pub params: CostParams,
}

fn random_composition(rng: &mut impl Rng) -> Vec<ContainerClass> {
    loop {
        let n = rng.gen_range(0..=MAX_CONTAINERS_PER_CELL);
        let c: Vec<ContainerClass> =
            (0..n).map(|_| ContainerClass::ALL[rng.gen_range(0..4)]).collect();
        if composition_width(&c) <= CELL_WIDTH_UNITS {
            return c;
        }
    }
}

pub fn random_params(rng: &mut impl Rng, levels: u32) -> CostParams {
    let mut lower: Vec<u32> = (0..levels).filter(|_| rng.gen_bool(0.5)).collect();
    if lower.is_empty() {
        lower.push(0);
    }
    CostParams {
        tau_aisle: Time::from_ticks(rng.gen_range(0..500)),
        tau_s: Time::from_ticks(rng.gen_range(0..50)),
        tau_levels: (0..levels).map(|_| Time::from_ticks(rng.gen_range(0..400))).collect(),
        tau_lift: Time::from_ticks(rng.gen_range(0..2000)),
        aisle_mode: if rng.gen_bool(0.5) { AisleMode::Wide } else { AisleMode::Narrow },
        pass_mode: if rng.gen_bool(0.5) { PassMode::MultiPass } else { PassMode::Aggregate },
        lower_levels: lower,
    }
}

/// At most 3 aisles, 6 subsections, 4 levels, 20 items and 10 batches.
pub fn tiny(rng: &mut impl Rng) -> Tiny {
    let aisles = rng.gen_range(1..=3);
    let lengths: Vec<u32> = (0..aisles).map(|_| rng.gen_range(1..=6)).collect();
    let levels = rng.gen_range(1..=4);
    let mut compositions = BTreeMap::new();
    let mut blocked = BTreeSet::new();
    for (a, &len) in lengths.iter().enumerate() {
        for s in 0..len {
            for l in 0..levels {
                let key = CellKey::new(a as u32, s, l);
                if rng.gen_bool(0.1) {
                    blocked.insert(key);
                } else {
                    compositions.insert(key, random_composition(rng));
                }
            }
        }
    }
    let layout = WarehouseLayout::new(lengths, levels, compositions, blocked);

    let mut slots: Vec<(SlotAddress, ContainerClass)> = layout
        .positions()
        .map(|(p, info)| (layout.home_address(p), info.class))
        .collect();
    slots.shuffle(rng);
    slots.truncate(rng.gen_range(0..=20));
    let mut ids: Vec<u64> = (0..slots.len() as u64 * 3).collect();
    ids.shuffle(rng);
    let items: Vec<Item> = slots.iter().zip(&ids).map(|(&(_, c), &id)| Item::new(id, c)).collect();
    let placements: Vec<Placement> = slots
        .iter()
        .zip(&ids)
        .map(|(&(slot, _), &id)| Placement { item: ItemId(id), slot })
        .collect();
    let catalog = Arc::new(Catalog::new(items).unwrap());
    let assignment = Assignment::from_placements(&layout, catalog.clone(), &placements).unwrap();

    let batches = (0..rng.gen_range(0..=10))
        .map(|b| {
            let k = if ids.is_empty() { 0 } else { rng.gen_range(0..=catalog.len()) };
            let chosen: Vec<ItemId> = catalog
                .items()
                .choose_multiple(rng, k)
                .map(|i| i.id)
                .collect();
            Batch::new(format!("b{b}"), chosen).0
        })
        .collect();
    let params = random_params(rng, levels);
    Tiny {
        layout,
        catalog,
        orders: OrderSet::new(batches),
        placements,
        assignment,
        params,
    }
}

/// Walks one bin by hand: every lift stop is a separate tour (unless the
/// parameters merge all levels), aisles are visited left to right, and each
/// step of the walk is charged `tau_s`.
pub fn simulate_bin(
    lengths: &[u32],
    slot_of: &HashMap<ItemId, SlotAddress>,
    items: &[ItemId],
    p: &CostParams,
) -> i64 {
    let lower: BTreeSet<u32> = p.lower_levels.iter().copied().collect();
    let tour_of = |level: u32| -> Option<u32> {
        match p.pass_mode {
            PassMode::Aggregate => None,
            PassMode::MultiPass if lower.contains(&level) => None,
            PassMode::MultiPass => Some(level),
        }
    };

    // which subsections hold picks, per tour and aisle
    let mut tours: BTreeMap<Option<u32>, BTreeMap<u32, BTreeSet<u32>>> = BTreeMap::new();
    let mut t = 0i64;
    let mut upper_stops = BTreeSet::new();
    for id in items {
        let s = slot_of[id];
        tours
            .entry(tour_of(s.level))
            .or_default()
            .entry(s.aisle)
            .or_default()
            .insert(s.subsection);
        t += p.tau_levels[s.level as usize].ticks();
        if !lower.contains(&s.level) {
            upper_stops.insert(s.level);
        }
    }
    // the lift is fetched for the first upper level and re-adjusted for each further one
    t += p.tau_lift.ticks() * upper_stops.len() as i64;

    for aisles in tours.values() {
        for (aisle, &len) in lengths.iter().enumerate() {
            let Some(picks) = aisles.get(&(aisle as u32)) else { continue };
            t += p.tau_aisle.ticks();
            match p.aisle_mode {
                AisleMode::Narrow => {
                    for _ in 0..len {
                        t += p.tau_s.ticks();
                    }
                }
                AisleMode::Wide => {
                    // walk in until past the farthest pick, turn, walk back out
                    let mut pos = 0u32;
                    let mut remaining = picks.len();
                    while remaining > 0 {
                        if picks.contains(&pos) {
                            remaining -= 1;
                        }
                        pos += 1;
                        t += p.tau_s.ticks();
                    }
                    while pos > 0 {
                        pos -= 1;
                        t += p.tau_s.ticks();
                    }
                }
            }
        }
    }
    t
}

pub fn simulate_total(
    layout: &WarehouseLayout,
    placements: &[Placement],
    orders: &OrderSet,
    p: &CostParams,
) -> i64 {
    let slot_of: HashMap<ItemId, SlotAddress> =
        placements.iter().map(|pl| (pl.item, pl.slot)).collect();
    orders
        .batches()
        .iter()
        .map(|b| simulate_bin(layout.aisle_lengths(), &slot_of, b.items(), p))
        .sum()
}

/// A mid-size generated instance (≈120 items, 150 batches).
pub fn mid_instance(seed: u64) -> slap::synthetic::Instance {
    use slap::synthetic::{generate_instance, LayoutSpec, OptionGroup, SyntheticSpec};
    let spec = SyntheticSpec {
        base_item_count: 4,
        option_groups: (0..29)
            .map(|i| OptionGroup {
                size: 4,
                activation: 0.45 * 0.93f64.powi(i),
            })
            .collect(),
        batch_count: 150,
        min_batch_size: 1,
        max_batch_size: 30,
        class_weights: [0.2, 0.2, 0.3, 0.3],
    };
    let layout = LayoutSpec {
        aisle_lengths: vec![10, 12, 10],
        levels: 4,
        fill: 0.8,
        blocked: vec![CellKey::new(0, 0, 3), CellKey::new(2, 9, 2)],
    };
    generate_instance(&spec, &layout, seed).unwrap()
}

pub fn seeded(seed: u64) -> rand_pcg::Pcg64 {
    slap::rng::stream(seed, 0xACCE)
}

/// Five items in one aisle of three subsections over two levels.
pub fn hand_instance() -> (WarehouseLayout, Assignment, OrderSet, CostParams, Vec<(u64, SlotAddress)>) {
    let layout = WarehouseLayout::uniform(vec![3], 2, &[ContainerClass::REGULAR_LOW; 6]);
    let slots = vec![
        (1, SlotAddress::new(0, 0, 0, 0)),
        (2, SlotAddress::new(0, 0, 0, 1)),
        (3, SlotAddress::new(0, 1, 0, 0)),
        (4, SlotAddress::new(0, 2, 0, 0)),
        (5, SlotAddress::new(0, 1, 1, 0)),
    ];
    let catalog = Arc::new(Catalog::new(slots.iter().map(|&(i, _)| Item::new(i, ContainerClass::REGULAR_LOW)).collect()).unwrap());
    let placements: Vec<Placement> =
        slots.iter().map(|&(i, slot)| Placement { item: ItemId(i), slot }).collect();
    let a = Assignment::from_placements(&layout, catalog, &placements).unwrap();
    let batch = |id: &str, items: &[u64]| Batch::new(id, items.iter().map(|&i| ItemId(i))).0;
    let orders = OrderSet::new(vec![
        batch("A", &[1, 2]),
        batch("B", &[2, 3]),
        batch("C", &[1, 2, 3]),
        batch("D", &[3]),
        batch("E", &[5]),
    ]);
    let params = CostParams { lower_levels: vec![0], ..CostParams::default() };
    (layout, a, orders, params, slots)
}

pub fn brute_jaccard(orders: &OrderSet, i: u64, j: u64) -> Option<f64> {
    let with = |x: u64| -> BTreeSet<usize> {
        orders.batches().iter().enumerate().filter(|(_, b)| b.contains(ItemId(x))).map(|(k, _)| k).collect()
    };
    let (a, b) = (with(i), with(j));
    let union = a.union(&b).count();
    (union > 0).then(|| a.intersection(&b).count() as f64 / union as f64)
}
