//! Warehouse geometry, container classes, the item catalog and the storage
//! assignment, together with admissibility checks.

mod assignment;
mod catalog;
mod class;
pub mod io;
mod layout;
mod order;
mod validate;

pub use assignment::{Assignment, AssignmentError, Placement};
pub use catalog::{Catalog, DuplicateItem, Item, ItemId};
pub use class::{
    composition_width, ContainerClass, HeightClass, UnknownClassCode, WidthClass,
    CELL_WIDTH_UNITS, MAX_CONTAINERS_PER_CELL,
};
pub use layout::{
    CellId, CellInfo, CellKey, LevelCategories, PositionId, PositionInfo, SlotAddress,
    WarehouseLayout,
};
pub use order::canonical_slot_order;
pub use validate::{
    validate_assignment, validate_layout, validate_placements, Issue, ValidationReport,
};
