mod support;

use proptest::prelude::*;
use slap::baselines::{frequency_assignment, random_assignment, BaselineError};
use slap::model::{
    canonical_slot_order, validate_assignment, Catalog, ContainerClass, Item, ItemId,
    LevelCategories, WarehouseLayout,
};
use slap::orders::pick_frequency;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;
use support::{seeded, tiny};

/// Independent admissibility check: walk every slot of the layout and every
/// item of the catalog without using the library's validator.
fn admissible(layout: &WarehouseLayout, a: &slap::model::Assignment) -> bool {
    let mut seen_slots = HashSet::new();
    for item in a.catalog().items() {
        let Some(slot) = a.slot_of(layout, item.id) else { return false };
        if !seen_slots.insert(slot) {
            return false;
        }
        let Some(cell) = layout.cell_id(slot.cell()) else { return false };
        if layout.cell(cell).blocked {
            return false;
        }
        // the class of the container at `slot` in the current arrangement
        let module = a.module_in(cell);
        let Some(pos) = layout.cell(module).positions().nth(slot.stack_position as usize) else {
            return false;
        };
        if layout.position(pos).class != item.container_class {
            return false;
        }
    }
    true
}

#[test]
fn random_baseline_is_uniform_over_bijections() {
    let rl = ContainerClass::REGULAR_LOW;
    let layout = WarehouseLayout::uniform(vec![2], 1, &[rl]);
    let catalog = Arc::new(Catalog::new(vec![Item::new(1u64, rl), Item::new(2u64, rl)]).unwrap());
    let n = 10_000;
    let hits = (0..n)
        .filter(|&seed| {
            let a = random_assignment(&layout, catalog.clone(), seed).unwrap();
            a.slot_of(&layout, ItemId(1)).unwrap().subsection == 0
        })
        .count() as f64;
    let sigma = (n as f64 * 0.25).sqrt();
    assert!((hits - n as f64 / 2.0).abs() < 3.0 * sigma, "{hits} of {n}");
}

#[test]
fn capacity_shortfall_is_reported() {
    let layout = WarehouseLayout::uniform(vec![1], 1, &[ContainerClass::REGULAR_HIGH]);
    let catalog = Arc::new(
        Catalog::new(vec![Item::new(1u64, ContainerClass::LARGE_LOW)]).unwrap(),
    );
    let err = random_assignment(&layout, catalog.clone(), 0).unwrap_err();
    assert!(matches!(err, BaselineError::Capacity { class, .. } if class == ContainerClass::LARGE_LOW));
    let err = frequency_assignment(&layout, catalog, &BTreeMap::new(), &LevelCategories::default());
    assert!(err.is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn baselines_are_admissible(seed in any::<u64>()) {
        let t = tiny(&mut seeded(seed));
        let r = random_assignment(&t.layout, t.catalog.clone(), seed).unwrap();
        prop_assert!(admissible(&t.layout, &r));
        prop_assert!(validate_assignment(&t.layout, &t.catalog, &r).is_empty());
        prop_assert_eq!(&r, &random_assignment(&t.layout, t.catalog.clone(), seed).unwrap());

        let freq = pick_frequency(&t.orders, &t.catalog);
        let levels = t.params.level_categories();
        let f = frequency_assignment(&t.layout, t.catalog.clone(), &freq, &levels).unwrap();
        prop_assert!(admissible(&t.layout, &f));
        prop_assert!(validate_assignment(&t.layout, &t.catalog, &f).is_empty());

        // within a class, more frequent items never sit later in canonical order
        let rank: BTreeMap<_, _> = canonical_slot_order(&t.layout, &levels)
            .into_iter()
            .enumerate()
            .map(|(k, s)| (s, k))
            .collect();
        for x in t.catalog.items() {
            for y in t.catalog.items() {
                if x.container_class == y.container_class && freq[&x.id] > freq[&y.id] {
                    let rx = rank[&f.slot_of(&t.layout, x.id).unwrap()];
                    let ry = rank[&f.slot_of(&t.layout, y.id).unwrap()];
                    prop_assert!(rx < ry);
                }
            }
        }
    }
}
