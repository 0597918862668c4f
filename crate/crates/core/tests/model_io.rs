mod support;

use slap::baselines::random_assignment;
use slap::cost::{total_time, CostParams};
use slap::model::io::{
    layout_from_json, layout_to_json, read_catalog, read_placements, write_assignment,
    write_catalog,
};
use slap::model::{canonical_slot_order, validate_layout, Assignment, LevelCategories, WarehouseLayout, ContainerClass};
use slap::synthetic::desk_instance;
use std::sync::Arc;
use support::{seeded, tiny};

#[test]
fn layouts_round_trip_exactly() {
    for seed in 0..50 {
        let t = tiny(&mut seeded(seed));
        let text = layout_to_json(&t.layout);
        let back = layout_from_json(&text).unwrap();
        assert_eq!(layout_to_json(&back), text);
        assert_eq!(back.compositions(), t.layout.compositions());
    }
    let desk = desk_instance(0);
    assert!(validate_layout(&desk.layout).is_empty());
    let text = layout_to_json(&desk.layout);
    assert_eq!(layout_to_json(&layout_from_json(&text).unwrap()), text);
}

#[test]
fn assignment_files_reproduce_costs() {
    let inst = desk_instance(3);
    let dir = tempfile::tempdir().unwrap();
    let catalog = Arc::new(inst.catalog.clone());
    let a = random_assignment(&inst.layout, catalog, 3).unwrap();
    write_catalog(dir.path().join("c.csv"), &inst.catalog).unwrap();
    write_assignment(dir.path().join("a.csv"), &inst.layout, &a).unwrap();

    let catalog = Arc::new(read_catalog(dir.path().join("c.csv")).unwrap());
    let placements = read_placements(dir.path().join("a.csv")).unwrap();
    let back = Assignment::from_placements(&inst.layout, catalog, &placements).unwrap();
    let p = CostParams::default();
    assert_eq!(
        total_time(&inst.layout, &back, &inst.orders, &p).unwrap(),
        total_time(&inst.layout, &a, &inst.orders, &p).unwrap()
    );
}

#[test]
fn canonical_order_puts_lower_levels_first() {
    let rl = ContainerClass::REGULAR_LOW;
    let layout = WarehouseLayout::uniform(vec![1], 1, &[rl]);
    let layout2 = WarehouseLayout::uniform(vec![2], 1, &[rl]);
    let order = canonical_slot_order(&layout2, &LevelCategories::default());
    assert_eq!((order[0].subsection, order[1].subsection), (0, 1));
    assert_eq!(canonical_slot_order(&layout, &LevelCategories::default()).len(), 1);

    let layout = WarehouseLayout::uniform(vec![3, 3], 4, &[rl, rl]);
    let cats = LevelCategories::default();
    let order = canonical_slot_order(&layout, &cats);
    let first_upper = order.iter().position(|s| !cats.is_lower(s.level)).unwrap();
    assert!(order[first_upper..].iter().all(|s| !cats.is_lower(s.level)));
    assert_eq!(order, canonical_slot_order(&layout, &cats));
}
