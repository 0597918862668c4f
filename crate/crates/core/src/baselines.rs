//! Reference assignments: uniform random and frequency-ordered.

use crate::model::{
    canonical_slot_order, Assignment, Catalog, ContainerClass, ItemId, LevelCategories,
    PositionId, WarehouseLayout,
};
use crate::rng::{self, streams};
use rand::seq::SliceRandom;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BaselineError {
    #[error("{class}: {items} items but only {positions} container positions")]
    Capacity {
        class: ContainerClass,
        items: usize,
        positions: usize,
    },
}

fn check_capacity(layout: &WarehouseLayout, catalog: &Catalog) -> Result<(), BaselineError> {
    let cap = layout.capacity_by_class();
    let need = catalog.count_by_class();
    for class in ContainerClass::ALL {
        let i = class.index();
        if need[i] > cap[i] {
            return Err(BaselineError::Capacity {
                class,
                items: need[i],
                positions: cap[i],
            });
        }
    }
    Ok(())
}

/// Per class, a uniformly random injection of the class's items into its
/// unblocked positions.
pub fn random_assignment(
    layout: &WarehouseLayout,
    catalog: Arc<Catalog>,
    seed: u64,
) -> Result<Assignment, BaselineError> {
    check_capacity(layout, &catalog)?;
    let mut rng = rng::stream(seed, streams::RANDOM_BASELINE);
    let mut by_class: [Vec<PositionId>; 4] = Default::default();
    for (id, info) in layout.positions() {
        by_class[info.class.index()].push(id);
    }
    let mut assignment = Assignment::empty(layout, catalog.clone());
    for class in ContainerClass::ALL {
        let positions = &mut by_class[class.index()];
        positions.shuffle(&mut rng);
        let items = catalog
            .items()
            .iter()
            .enumerate()
            .filter(|(_, it)| it.container_class == class);
        for ((index, _), &pos) in items.zip(positions.iter()) {
            assignment
                .place(layout, index, pos)
                .expect("class-matched free position");
        }
    }
    Ok(assignment)
}

/// Items by descending pick frequency (ties by ascending id), each placed in
/// the first free position of its class along the canonical slot order.
pub fn frequency_assignment(
    layout: &WarehouseLayout,
    catalog: Arc<Catalog>,
    frequencies: &BTreeMap<ItemId, u64>,
    levels: &LevelCategories,
) -> Result<Assignment, BaselineError> {
    check_capacity(layout, &catalog)?;
    let mut queues: [Vec<PositionId>; 4] = Default::default();
    for slot in canonical_slot_order(layout, levels) {
        let pos = layout.position_at(slot).expect("canonical slots exist");
        queues[layout.position(pos).class.index()].push(pos);
    }
    let mut next = [0usize; 4];

    let mut order: Vec<usize> = (0..catalog.len()).collect();
    order.sort_by_key(|&i| {
        let id = catalog.item(i).id;
        (std::cmp::Reverse(frequencies.get(&id).copied().unwrap_or(0)), id)
    });

    let mut assignment = Assignment::empty(layout, catalog.clone());
    for index in order {
        let c = catalog.item(index).container_class.index();
        let pos = queues[c][next[c]];
        next[c] += 1;
        assignment
            .place(layout, index, pos)
            .expect("class-matched free position");
    }
    Ok(assignment)
}
