use super::{LevelCategories, SlotAddress, WarehouseLayout};

/// Every unblocked container position, in the order a picker reaches them:
/// lower level category first, then aisle visiting order, subsection depth,
/// level and stack position.
pub fn canonical_slot_order(
    layout: &WarehouseLayout,
    levels: &LevelCategories,
) -> Vec<SlotAddress> {
    let mut slots: Vec<SlotAddress> = layout
        .positions()
        .map(|(id, _)| layout.home_address(id))
        .collect();
    slots.sort_by_key(|s| {
        (
            levels.category(s.level),
            s.aisle,
            s.subsection,
            s.level,
            s.stack_position,
        )
    });
    slots
}
