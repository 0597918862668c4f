use super::class::{composition_width, CELL_WIDTH_UNITS, MAX_CONTAINERS_PER_CELL};
use super::{
    Assignment, Catalog, CellKey, ContainerClass, ItemId, Placement, SlotAddress, WarehouseLayout,
};
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    NoAisles,
    NoLevels,
    EmptyAisle { aisle: u32 },
    CellOutOfRange { cell: CellKey },
    CompositionOnBlockedCell { cell: CellKey },
    WidthOverflow { cell: CellKey, width_units: u32 },
    TooManyContainers { cell: CellKey, count: usize },
    UnknownItem { item: ItemId },
    UnknownSlot { item: ItemId, slot: SlotAddress },
    BlockedCellUsed { item: ItemId, slot: SlotAddress },
    ClassMismatch { item: ItemId, slot: SlotAddress, expected: ContainerClass, found: ContainerClass },
    DuplicatePosition { slot: SlotAddress, items: Vec<ItemId> },
    ItemPlacedTwice { item: ItemId },
    UnassignedItem { item: ItemId },
    InconsistentIndex { detail: String },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::NoAisles => write!(f, "no aisles"),
            Issue::NoLevels => write!(f, "no levels"),
            Issue::EmptyAisle { aisle } => write!(f, "aisle {aisle} has no subsections"),
            Issue::CellOutOfRange { cell } => write!(f, "cell {cell} is outside the layout"),
            Issue::CompositionOnBlockedCell { cell } => {
                write!(f, "blocked cell {cell} carries a composition")
            }
            Issue::WidthOverflow { cell, width_units } => write!(
                f,
                "width overflow at {cell}: {:.1} of {:.1} regular widths",
                *width_units as f64 / 2.0,
                CELL_WIDTH_UNITS as f64 / 2.0
            ),
            Issue::TooManyContainers { cell, count } => write!(
                f,
                "{count} containers at {cell}, at most {MAX_CONTAINERS_PER_CELL} fit"
            ),
            Issue::UnknownItem { item } => write!(f, "item {item} is not in the catalog"),
            Issue::UnknownSlot { item, slot } => {
                write!(f, "item {item} placed at nonexistent slot {slot}")
            }
            Issue::BlockedCellUsed { item, slot } => {
                write!(f, "item {item} placed in blocked cell at {slot}")
            }
            Issue::ClassMismatch {
                item,
                slot,
                expected,
                found,
            } => write!(
                f,
                "class mismatch: item {item} needs {expected}, slot {slot} is {found}"
            ),
            Issue::DuplicatePosition { slot, items } => {
                let ids: Vec<String> = items.iter().map(ToString::to_string).collect();
                write!(f, "duplicate position {slot} holds items {}", ids.join(", "))
            }
            Issue::ItemPlacedTwice { item } => write!(f, "item {item} placed more than once"),
            Issue::UnassignedItem { item } => write!(f, "item {item} is unassigned"),
            Issue::InconsistentIndex { detail } => write!(f, "inconsistent index: {detail}"),
        }
    }
}

/// All problems found by a validation pass. Empty means admissible.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.issues.len()
    }

    fn push(&mut self, issue: Issue) {
        self.issues.push(issue);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "ok");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

pub fn validate_layout(layout: &WarehouseLayout) -> ValidationReport {
    let mut report = ValidationReport::default();
    if layout.aisle_count() == 0 {
        report.push(Issue::NoAisles);
    }
    if layout.level_count() == 0 {
        report.push(Issue::NoLevels);
    }
    for (aisle, &len) in layout.aisle_lengths().iter().enumerate() {
        if len == 0 {
            report.push(Issue::EmptyAisle { aisle: aisle as u32 });
        }
    }
    for &cell in layout.blocked() {
        if layout.cell_id(cell).is_none() {
            report.push(Issue::CellOutOfRange { cell });
        }
    }
    for (&cell, containers) in layout.compositions() {
        if layout.cell_id(cell).is_none() {
            report.push(Issue::CellOutOfRange { cell });
            continue;
        }
        if layout.blocked().contains(&cell) && !containers.is_empty() {
            report.push(Issue::CompositionOnBlockedCell { cell });
        }
        let width_units = composition_width(containers);
        if width_units > CELL_WIDTH_UNITS {
            report.push(Issue::WidthOverflow { cell, width_units });
        }
        if containers.len() > MAX_CONTAINERS_PER_CELL {
            report.push(Issue::TooManyContainers {
                cell,
                count: containers.len(),
            });
        }
    }
    report
}

/// Checks raw placement records against `layout` (modules in home cells).
pub fn validate_placements(
    layout: &WarehouseLayout,
    catalog: &Catalog,
    placements: &[Placement],
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut by_slot: HashMap<SlotAddress, Vec<ItemId>> = HashMap::new();
    let mut seen = vec![0u32; catalog.len()];

    for p in placements {
        let Some(index) = catalog.index_of(p.item) else {
            report.push(Issue::UnknownItem { item: p.item });
            continue;
        };
        seen[index] += 1;
        if seen[index] == 2 {
            report.push(Issue::ItemPlacedTwice { item: p.item });
        }
        by_slot.entry(p.slot).or_default().push(p.item);

        let cell = p.slot.cell();
        if layout.cell_id(cell).is_none() {
            report.push(Issue::UnknownSlot {
                item: p.item,
                slot: p.slot,
            });
            continue;
        }
        if layout.blocked().contains(&cell) {
            report.push(Issue::BlockedCellUsed {
                item: p.item,
                slot: p.slot,
            });
            continue;
        }
        let containers = layout.composition(cell);
        let Some(&found) = containers.get(p.slot.stack_position as usize) else {
            report.push(Issue::UnknownSlot {
                item: p.item,
                slot: p.slot,
            });
            continue;
        };
        let expected = catalog.item(index).container_class;
        if expected != found {
            report.push(Issue::ClassMismatch {
                item: p.item,
                slot: p.slot,
                expected,
                found,
            });
        }
    }

    let mut duplicates: Vec<(SlotAddress, Vec<ItemId>)> = by_slot
        .into_iter()
        .filter(|(_, items)| items.len() > 1)
        .collect();
    duplicates.sort();
    for (slot, mut items) in duplicates {
        items.sort();
        report.push(Issue::DuplicatePosition { slot, items });
    }
    for (index, &count) in seen.iter().enumerate() {
        if count == 0 {
            report.push(Issue::UnassignedItem {
                item: catalog.item(index).id,
            });
        }
    }
    report
}

/// Full admissibility check of an assignment, including its cell arrangement.
///
/// Walks every physical cell, reads the composition of the module sitting
/// there, and checks each stored item against that composition, the blocked
/// set and both directions of the item/position index.
pub fn validate_assignment(
    layout: &WarehouseLayout,
    catalog: &Catalog,
    assignment: &Assignment,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let own = assignment.catalog();
    let mut seen = vec![0u32; catalog.len()];

    for (cell_index, cell) in layout.cells().iter().enumerate() {
        let physical = super::CellId(cell_index as u32);
        let module = assignment.module_in(physical);
        if assignment.cell_of(module) != physical {
            report.push(Issue::InconsistentIndex {
                detail: format!("cell {} and its module disagree", cell.key),
            });
        }
        let module_info = layout.cell(module);
        if cell.blocked != module_info.blocked || (cell.blocked && module != physical) {
            report.push(Issue::InconsistentIndex {
                detail: format!(
                    "module of {} moved across the blocked boundary into {}",
                    module_info.key, cell.key
                ),
            });
            continue;
        }
        let containers = layout.composition(module_info.key);
        for pos in module_info.positions() {
            let Some(item_index) = assignment.item_at(pos) else {
                continue;
            };
            let info = layout.position(pos);
            let slot = SlotAddress::new(
                cell.key.aisle,
                cell.key.subsection,
                cell.key.level,
                info.stack_position,
            );
            let item = own.item(item_index);
            let Some(index) = catalog.index_of(item.id) else {
                report.push(Issue::UnknownItem { item: item.id });
                continue;
            };
            seen[index] += 1;
            if seen[index] == 2 {
                report.push(Issue::ItemPlacedTwice { item: item.id });
            }
            if assignment.position_of(item_index) != Some(pos) {
                report.push(Issue::InconsistentIndex {
                    detail: format!("item {} is not indexed at {slot}", item.id),
                });
            }
            if cell.blocked {
                report.push(Issue::BlockedCellUsed { item: item.id, slot });
            }
            let expected = catalog.item(index).container_class;
            match containers.get(info.stack_position as usize) {
                Some(&found) if found == expected => {}
                Some(&found) => report.push(Issue::ClassMismatch {
                    item: item.id,
                    slot,
                    expected,
                    found,
                }),
                None => report.push(Issue::UnknownSlot { item: item.id, slot }),
            }
        }
    }

    for (index, &count) in seen.iter().enumerate() {
        if count == 0 {
            report.push(Issue::UnassignedItem {
                item: catalog.item(index).id,
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Item, WarehouseLayout};
    use std::collections::{BTreeMap, BTreeSet};
    use std::sync::Arc;

    const LH: ContainerClass = ContainerClass::LARGE_HIGH;
    const LL: ContainerClass = ContainerClass::LARGE_LOW;
    const RL: ContainerClass = ContainerClass::REGULAR_LOW;
    const RH: ContainerClass = ContainerClass::REGULAR_HIGH;

    fn one_cell(containers: Vec<ContainerClass>) -> WarehouseLayout {
        let mut c = BTreeMap::new();
        c.insert(CellKey::new(0, 0, 0), containers);
        WarehouseLayout::new(vec![1], 1, c, BTreeSet::new())
    }

    #[test]
    fn layout_examples() {
        let report = validate_layout(&one_cell(vec![LH, LH, LH]));
        assert!(matches!(report.issues[..], [Issue::WidthOverflow { .. }]));
        assert!(validate_layout(&one_cell(vec![RL; 6])).is_empty());
        assert!(validate_layout(&one_cell(vec![LL, LL, RL, RL])).is_empty());
        assert!(validate_layout(&one_cell(vec![RH, RH, RH])).is_empty());
        let report = validate_layout(&WarehouseLayout::new(vec![], 1, BTreeMap::new(), BTreeSet::new()));
        assert!(report.issues.contains(&Issue::NoAisles));
    }

    #[test]
    fn composition_on_blocked_cell() {
        let mut c = BTreeMap::new();
        let key = CellKey::new(0, 0, 0);
        c.insert(key, vec![RL]);
        let layout = WarehouseLayout::new(vec![1], 1, c, BTreeSet::from([key]));
        assert!(validate_layout(&layout)
            .issues
            .contains(&Issue::CompositionOnBlockedCell { cell: key }));
    }

    #[test]
    fn placement_examples() {
        let layout = one_cell(vec![LL, LL, RL, RL]);
        let catalog = Catalog::new(vec![Item::new(1u64, RL), Item::new(2u64, RL)]).unwrap();
        let at = |item, stack| Placement {
            item: ItemId(item),
            slot: SlotAddress::new(0, 0, 0, stack),
        };

        let report = validate_placements(&layout, &catalog, &[at(1, 0), at(2, 2)]);
        assert!(matches!(report.issues[..], [Issue::ClassMismatch { .. }]));

        let report = validate_placements(&layout, &catalog, &[at(1, 2), at(2, 2)]);
        assert!(matches!(report.issues[..], [Issue::DuplicatePosition { .. }]));

        let report = validate_placements(&layout, &catalog, &[at(1, 2), at(2, 3)]);
        assert!(report.is_empty(), "{report}");

        let report = validate_placements(&layout, &catalog, &[at(1, 2)]);
        assert_eq!(report.issues, vec![Issue::UnassignedItem { item: ItemId(2) }]);

        let a = Assignment::from_placements(&layout, Arc::new(catalog.clone()), &[at(1, 2), at(2, 3)]).unwrap();
        assert!(validate_assignment(&layout, &catalog, &a).is_empty());
    }
}
