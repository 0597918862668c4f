use super::ContainerClass;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// An `(aisle, subsection, level)` storage cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellKey {
    pub aisle: u32,
    pub subsection: u32,
    pub level: u32,
}

impl CellKey {
    pub const fn new(aisle: u32, subsection: u32, level: u32) -> Self {
        CellKey {
            aisle,
            subsection,
            level,
        }
    }
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(aisle {}, subsection {}, level {})",
            self.aisle, self.subsection, self.level
        )
    }
}

/// A single container position. `subsection` doubles as the travel coordinate:
/// subsection 0 abuts the aisle entrance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SlotAddress {
    pub aisle: u32,
    pub subsection: u32,
    pub level: u32,
    pub stack_position: u32,
}

impl SlotAddress {
    pub const fn new(aisle: u32, subsection: u32, level: u32, stack_position: u32) -> Self {
        SlotAddress {
            aisle,
            subsection,
            level,
            stack_position,
        }
    }

    #[inline]
    pub const fn cell(self) -> CellKey {
        CellKey::new(self.aisle, self.subsection, self.level)
    }
}

impl fmt::Display for SlotAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(aisle {}, subsection {}, level {}, position {})",
            self.aisle, self.subsection, self.level, self.stack_position
        )
    }
}

/// Dense index of a physical cell.
#[repr(transparent)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(pub u32);

impl CellId {
    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense index of a container position.
///
/// Positions belong to the rack module that was loaded into a cell, not to the
/// physical cell, so they stay valid when whole cells are exchanged.
#[repr(transparent)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositionId(pub u32);

impl PositionId {
    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellInfo {
    pub key: CellKey,
    pub blocked: bool,
    first_position: u32,
    position_count: u32,
}

impl CellInfo {
    pub fn positions(&self) -> impl ExactSizeIterator<Item = PositionId> + Clone {
        (self.first_position..self.first_position + self.position_count).map(PositionId)
    }

    #[inline]
    pub fn position_count(&self) -> usize {
        self.position_count as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PositionInfo {
    /// Cell whose composition defines this position (its home module).
    pub module: CellId,
    pub stack_position: u32,
    pub class: ContainerClass,
}

/// Partition of levels into the directly reachable lower category and the
/// lift-served upper category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCategories {
    lower: BTreeSet<u32>,
}

impl Default for LevelCategories {
    fn default() -> Self {
        LevelCategories {
            lower: [0, 1].into_iter().collect(),
        }
    }
}

impl LevelCategories {
    pub fn new(lower: impl IntoIterator<Item = u32>) -> Self {
        LevelCategories {
            lower: lower.into_iter().collect(),
        }
    }

    #[inline]
    pub fn is_lower(&self, level: u32) -> bool {
        self.lower.contains(&level)
    }

    /// 0 for the lower category, 1 for the upper.
    #[inline]
    pub fn category(&self, level: u32) -> u8 {
        u8::from(!self.is_lower(level))
    }

    pub fn lower_levels(&self) -> impl Iterator<Item = u32> + '_ {
        self.lower.iter().copied()
    }
}

/// Warehouse geometry and the container composition of every cell.
///
/// Construction never fails so that inadmissible layouts can still be
/// inspected by [`validate_layout`](super::validate_layout). Compositions on
/// blocked or out-of-range cells are kept in the raw data but contribute no
/// positions to the index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WarehouseLayout {
    aisle_lengths: Vec<u32>,
    level_count: u32,
    compositions: BTreeMap<CellKey, Vec<ContainerClass>>,
    blocked: BTreeSet<CellKey>,
    aisle_offsets: Vec<u32>,
    cells: Vec<CellInfo>,
    positions: Vec<PositionInfo>,
    unblocked: Vec<CellId>,
}

impl WarehouseLayout {
    pub fn new(
        aisle_lengths: Vec<u32>,
        level_count: u32,
        mut compositions: BTreeMap<CellKey, Vec<ContainerClass>>,
        blocked: BTreeSet<CellKey>,
    ) -> Self {
        // an empty composition and a missing one mean the same
        compositions.retain(|_, c| !c.is_empty());
        let mut aisle_offsets = Vec::with_capacity(aisle_lengths.len() + 1);
        let mut acc = 0u32;
        for len in &aisle_lengths {
            aisle_offsets.push(acc);
            acc += len * level_count;
        }
        aisle_offsets.push(acc);

        let mut cells = Vec::with_capacity(acc as usize);
        let mut positions = Vec::new();
        let mut unblocked = Vec::new();
        for (aisle, &len) in aisle_lengths.iter().enumerate() {
            for subsection in 0..len {
                for level in 0..level_count {
                    let key = CellKey::new(aisle as u32, subsection, level);
                    let id = CellId(cells.len() as u32);
                    let is_blocked = blocked.contains(&key);
                    let first = positions.len() as u32;
                    if !is_blocked {
                        unblocked.push(id);
                        if let Some(containers) = compositions.get(&key) {
                            for (stack, &class) in containers.iter().enumerate() {
                                positions.push(PositionInfo {
                                    module: id,
                                    stack_position: stack as u32,
                                    class,
                                });
                            }
                        }
                    }
                    cells.push(CellInfo {
                        key,
                        blocked: is_blocked,
                        first_position: first,
                        position_count: positions.len() as u32 - first,
                    });
                }
            }
        }

        WarehouseLayout {
            aisle_lengths,
            level_count,
            compositions,
            blocked,
            aisle_offsets,
            cells,
            positions,
            unblocked,
        }
    }

    /// A layout where every listed cell gets the same composition.
    pub fn uniform(aisle_lengths: Vec<u32>, level_count: u32, containers: &[ContainerClass]) -> Self {
        let mut compositions = BTreeMap::new();
        for (aisle, &len) in aisle_lengths.iter().enumerate() {
            for subsection in 0..len {
                for level in 0..level_count {
                    compositions.insert(CellKey::new(aisle as u32, subsection, level), containers.to_vec());
                }
            }
        }
        WarehouseLayout::new(aisle_lengths, level_count, compositions, BTreeSet::new())
    }

    #[inline]
    pub fn aisle_lengths(&self) -> &[u32] {
        &self.aisle_lengths
    }

    #[inline]
    pub fn aisle_count(&self) -> usize {
        self.aisle_lengths.len()
    }

    #[inline]
    pub fn aisle_length(&self, aisle: u32) -> u32 {
        self.aisle_lengths[aisle as usize]
    }

    #[inline]
    pub fn level_count(&self) -> u32 {
        self.level_count
    }

    pub fn max_aisle_length(&self) -> u32 {
        self.aisle_lengths.iter().copied().max().unwrap_or(0)
    }

    #[inline]
    pub fn compositions(&self) -> &BTreeMap<CellKey, Vec<ContainerClass>> {
        &self.compositions
    }

    pub fn composition(&self, key: CellKey) -> &[ContainerClass] {
        self.compositions.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }

    #[inline]
    pub fn blocked(&self) -> &BTreeSet<CellKey> {
        &self.blocked
    }

    #[inline]
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    #[inline]
    pub fn cells(&self) -> &[CellInfo] {
        &self.cells
    }

    #[inline]
    pub fn cell(&self, id: CellId) -> &CellInfo {
        &self.cells[id.index()]
    }

    pub fn cell_id(&self, key: CellKey) -> Option<CellId> {
        let len = *self.aisle_lengths.get(key.aisle as usize)?;
        if key.subsection >= len || key.level >= self.level_count {
            return None;
        }
        Some(CellId(
            self.aisle_offsets[key.aisle as usize] + key.subsection * self.level_count + key.level,
        ))
    }

    /// Cells that moves may touch, in cell-id order.
    #[inline]
    pub fn unblocked_cells(&self) -> &[CellId] {
        &self.unblocked
    }

    #[inline]
    pub fn position_count(&self) -> usize {
        self.positions.len()
    }

    #[inline]
    pub fn position(&self, id: PositionId) -> &PositionInfo {
        &self.positions[id.index()]
    }

    pub fn positions(&self) -> impl ExactSizeIterator<Item = (PositionId, &PositionInfo)> {
        self.positions
            .iter()
            .enumerate()
            .map(|(i, p)| (PositionId(i as u32), p))
    }

    /// Address of a position when its module sits in its home cell.
    pub fn home_address(&self, id: PositionId) -> SlotAddress {
        let p = self.position(id);
        let key = self.cell(p.module).key;
        SlotAddress::new(key.aisle, key.subsection, key.level, p.stack_position)
    }

    /// Position at `slot` when every module sits in its home cell.
    pub fn position_at(&self, slot: SlotAddress) -> Option<PositionId> {
        let cell = self.cell(self.cell_id(slot.cell())?);
        if slot.stack_position >= cell.position_count {
            return None;
        }
        Some(PositionId(cell.first_position + slot.stack_position))
    }

    /// Number of unblocked container positions per class.
    pub fn capacity_by_class(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for p in &self.positions {
            counts[p.class.index()] += 1;
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RL: ContainerClass = ContainerClass::REGULAR_LOW;
    const LH: ContainerClass = ContainerClass::LARGE_HIGH;

    #[test]
    fn cells_and_positions_are_indexed() {
        let mut c = BTreeMap::new();
        c.insert(CellKey::new(0, 0, 0), vec![RL, RL, RL]);
        c.insert(CellKey::new(1, 2, 1), vec![LH]);
        let blocked = BTreeSet::from([CellKey::new(1, 0, 0)]);
        let layout = WarehouseLayout::new(vec![1, 3], 2, c, blocked);

        assert_eq!(layout.cell_count(), 2 + 6);
        assert_eq!(layout.position_count(), 4);
        assert_eq!(layout.max_aisle_length(), 3);
        assert_eq!(layout.unblocked_cells().len(), 7);
        assert_eq!(layout.capacity_by_class(), [1, 0, 0, 3]);

        let slot = SlotAddress::new(1, 2, 1, 0);
        let p = layout.position_at(slot).unwrap();
        assert_eq!(layout.home_address(p), slot);
        assert_eq!(layout.position(p).class, LH);
        assert_eq!(layout.position_at(SlotAddress::new(1, 2, 1, 1)), None);
        assert_eq!(layout.cell_id(CellKey::new(0, 1, 0)), None);

        let id = layout.cell_id(CellKey::new(1, 0, 0)).unwrap();
        assert!(layout.cell(id).blocked);
        assert_eq!(layout.cell(id).position_count, 0);
    }
}
