use super::{Catalog, CellId, CellKey, ItemId, PositionId, SlotAddress, WarehouseLayout};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// One line of an assignment file: item `item` is stored at `slot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub item: ItemId,
    pub slot: SlotAddress,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssignmentError {
    #[error("item {0} is not in the catalog")]
    UnknownItem(ItemId),
    #[error("item {0} is placed more than once")]
    ItemPlacedTwice(ItemId),
    #[error("slot {0} does not exist in the layout")]
    UnknownSlot(SlotAddress),
    #[error("slot {slot} already holds item {occupant}, cannot place item {item}")]
    SlotTaken {
        slot: SlotAddress,
        occupant: ItemId,
        item: ItemId,
    },
    #[error("item {item} needs a {expected} container but slot {slot} is {found}")]
    ClassMismatch {
        item: ItemId,
        slot: SlotAddress,
        expected: super::ContainerClass,
        found: super::ContainerClass,
    },
    #[error("arranged layout does not match the base layout: {0}")]
    ArrangementMismatch(String),
}

/// Dedicated storage assignment: which item sits in which container position,
/// plus which rack module currently occupies each cell.
///
/// Both directions of the item/position mapping are stored and kept in sync.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    catalog: Arc<Catalog>,
    item_position: Vec<Option<PositionId>>,
    position_item: Vec<Option<u32>>,
    module_in_cell: Vec<CellId>,
    cell_of_module: Vec<CellId>,
}

impl Assignment {
    /// No items placed, every module in its home cell.
    pub fn empty(layout: &WarehouseLayout, catalog: Arc<Catalog>) -> Self {
        let identity: Vec<CellId> = (0..layout.cell_count() as u32).map(CellId).collect();
        Assignment {
            item_position: vec![None; catalog.len()],
            position_item: vec![None; layout.position_count()],
            module_in_cell: identity.clone(),
            cell_of_module: identity,
            catalog,
        }
    }

    /// Builds an assignment from file records, read against `layout` with every
    /// module in its home cell.
    pub fn from_placements(
        layout: &WarehouseLayout,
        catalog: Arc<Catalog>,
        placements: &[Placement],
    ) -> Result<Self, AssignmentError> {
        let mut assignment = Assignment::empty(layout, catalog);
        for p in placements {
            let item = assignment
                .catalog
                .index_of(p.item)
                .ok_or(AssignmentError::UnknownItem(p.item))?;
            let pos = layout
                .position_at(p.slot)
                .ok_or(AssignmentError::UnknownSlot(p.slot))?;
            assignment.place(layout, item, pos)?;
        }
        Ok(assignment)
    }

    /// Builds an assignment from records written against `arranged`, a
    /// rearrangement of `layout` produced by [`arranged_layout`](Self::arranged_layout).
    ///
    /// Modules are matched to physical cells by composition; modules with equal
    /// compositions are interchangeable, so any consistent matching is exact.
    pub fn from_arranged_placements(
        layout: &WarehouseLayout,
        arranged: &WarehouseLayout,
        catalog: Arc<Catalog>,
        placements: &[Placement],
    ) -> Result<Self, AssignmentError> {
        let mismatch = |msg: String| AssignmentError::ArrangementMismatch(msg);
        if layout.aisle_lengths() != arranged.aisle_lengths()
            || layout.level_count() != arranged.level_count()
        {
            return Err(mismatch("dimensions differ".into()));
        }
        if layout.blocked() != arranged.blocked() {
            return Err(mismatch("blocked cells differ".into()));
        }
        let mut pool: BTreeMap<Vec<super::ContainerClass>, Vec<CellId>> = BTreeMap::new();
        for &cell in layout.unblocked_cells().iter().rev() {
            let comp = layout.composition(layout.cell(cell).key).to_vec();
            pool.entry(comp).or_default().push(cell);
        }
        let mut assignment = Assignment::empty(layout, catalog);
        for &cell in layout.unblocked_cells() {
            let key = layout.cell(cell).key;
            let comp = arranged.composition(key);
            let module = pool
                .get_mut(comp)
                .and_then(Vec::pop)
                .ok_or_else(|| mismatch(format!("no module with the composition found at {key}")))?;
            let current = assignment.module_in(cell);
            if current != module {
                let holder = assignment.cell_of(module);
                assignment.swap_cells(cell, holder);
            }
        }
        for p in placements {
            let item = assignment
                .catalog
                .index_of(p.item)
                .ok_or(AssignmentError::UnknownItem(p.item))?;
            let cell = layout
                .cell_id(p.slot.cell())
                .ok_or(AssignmentError::UnknownSlot(p.slot))?;
            let module = layout.cell(assignment.module_in(cell));
            let pos = module
                .positions()
                .nth(p.slot.stack_position as usize)
                .ok_or(AssignmentError::UnknownSlot(p.slot))?;
            assignment.place(layout, item, pos)?;
        }
        Ok(assignment)
    }

    /// Puts catalog item `item` (dense index) at `pos`.
    pub fn place(
        &mut self,
        layout: &WarehouseLayout,
        item: usize,
        pos: PositionId,
    ) -> Result<(), AssignmentError> {
        let it = *self.catalog.item(item);
        if self.item_position[item].is_some() {
            return Err(AssignmentError::ItemPlacedTwice(it.id));
        }
        let slot = self.address_of_position(layout, pos);
        if let Some(occupant) = self.position_item[pos.index()] {
            return Err(AssignmentError::SlotTaken {
                slot,
                occupant: self.catalog.item(occupant as usize).id,
                item: it.id,
            });
        }
        let found = layout.position(pos).class;
        if found != it.container_class {
            return Err(AssignmentError::ClassMismatch {
                item: it.id,
                slot,
                expected: it.container_class,
                found,
            });
        }
        self.item_position[item] = Some(pos);
        self.position_item[pos.index()] = Some(item as u32);
        Ok(())
    }

    #[inline]
    pub fn catalog(&self) -> &Arc<Catalog> {
        &self.catalog
    }

    #[inline]
    pub fn position_of(&self, item: usize) -> Option<PositionId> {
        self.item_position[item]
    }

    #[inline]
    pub fn item_at(&self, pos: PositionId) -> Option<usize> {
        self.position_item[pos.index()].map(|i| i as usize)
    }

    /// Module currently sitting in physical cell `cell`.
    #[inline]
    pub fn module_in(&self, cell: CellId) -> CellId {
        self.module_in_cell[cell.index()]
    }

    /// Physical cell currently holding module `module`.
    #[inline]
    pub fn cell_of(&self, module: CellId) -> CellId {
        self.cell_of_module[module.index()]
    }

    /// Physical cell of a placed item.
    #[inline]
    pub fn item_cell(&self, layout: &WarehouseLayout, item: usize) -> Option<CellId> {
        self.item_position[item].map(|p| self.cell_of(layout.position(p).module))
    }

    pub fn address_of_position(&self, layout: &WarehouseLayout, pos: PositionId) -> SlotAddress {
        let info = layout.position(pos);
        let key = layout.cell(self.cell_of(info.module)).key;
        SlotAddress::new(key.aisle, key.subsection, key.level, info.stack_position)
    }

    pub fn slot_of(&self, layout: &WarehouseLayout, item: ItemId) -> Option<SlotAddress> {
        let idx = self.catalog.index_of(item)?;
        self.item_position[idx].map(|p| self.address_of_position(layout, p))
    }

    /// Items stored in physical cell `cell`.
    pub fn items_in_cell<'a>(
        &'a self,
        layout: &'a WarehouseLayout,
        cell: CellId,
    ) -> impl Iterator<Item = usize> + 'a {
        layout
            .cell(self.module_in(cell))
            .positions()
            .filter_map(move |p| self.item_at(p))
    }

    pub fn assigned_count(&self) -> usize {
        self.item_position.iter().filter(|p| p.is_some()).count()
    }

    /// Exchanges the contents of two positions (either may be empty).
    pub(crate) fn swap_positions(&mut self, a: PositionId, b: PositionId) {
        let ia = self.position_item[a.index()];
        let ib = self.position_item[b.index()];
        self.position_item[a.index()] = ib;
        self.position_item[b.index()] = ia;
        if let Some(i) = ia {
            self.item_position[i as usize] = Some(b);
        }
        if let Some(i) = ib {
            self.item_position[i as usize] = Some(a);
        }
    }

    /// Exchanges the modules (compositions with contents) of two physical cells.
    pub(crate) fn swap_cells(&mut self, a: CellId, b: CellId) {
        let ma = self.module_in_cell[a.index()];
        let mb = self.module_in_cell[b.index()];
        self.module_in_cell[a.index()] = mb;
        self.module_in_cell[b.index()] = ma;
        self.cell_of_module[mb.index()] = a;
        self.cell_of_module[ma.index()] = b;
    }

    /// All placements, ordered by item id.
    pub fn placements(&self, layout: &WarehouseLayout) -> Vec<Placement> {
        let mut out: Vec<Placement> = self
            .item_position
            .iter()
            .enumerate()
            .filter_map(|(i, p)| {
                p.map(|p| Placement {
                    item: self.catalog.item(i).id,
                    slot: self.address_of_position(layout, p),
                })
            })
            .collect();
        out.sort();
        out
    }

    /// The layout with every module moved to the cell it currently occupies.
    ///
    /// Reading [`placements`](Self::placements) against this layout reproduces
    /// the assignment exactly.
    pub fn arranged_layout(&self, layout: &WarehouseLayout) -> WarehouseLayout {
        let mut compositions: BTreeMap<CellKey, Vec<super::ContainerClass>> = layout
            .compositions()
            .iter()
            .filter(|(k, _)| layout.cell_id(**k).is_none_or(|id| layout.cell(id).blocked))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        for &cell in layout.unblocked_cells() {
            let module = layout.cell(self.module_in(cell)).key;
            let containers = layout.composition(module);
            if !containers.is_empty() {
                compositions.insert(layout.cell(cell).key, containers.to_vec());
            }
        }
        WarehouseLayout::new(
            layout.aisle_lengths().to_vec(),
            layout.level_count(),
            compositions,
            layout.blocked().clone(),
        )
    }

    /// True when every module sits in its home cell.
    pub fn is_home_arrangement(&self) -> bool {
        self.module_in_cell
            .iter()
            .enumerate()
            .all(|(i, m)| m.index() == i)
    }
}
