use crate::model::{Assignment, CellId, PositionId, WarehouseLayout};
use crate::rng::Rng;
use rand::Rng as _;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    ContainerSwap,
    SubsectionSwap,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::ContainerSwap => f.write_str("container swap"),
            MoveKind::SubsectionSwap => f.write_str("subsection swap"),
        }
    }
}

/// A neighbourhood step.
///
/// `ContainerSwap` exchanges the items of two occupied positions of the same
/// container class. `SubsectionSwap` exchanges the whole rack modules
/// (composition and contents) of two unblocked cells. Both are involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    ContainerSwap { a: PositionId, b: PositionId },
    SubsectionSwap { a: CellId, b: CellId },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::ContainerSwap { .. } => MoveKind::ContainerSwap,
            Move::SubsectionSwap { .. } => MoveKind::SubsectionSwap,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("both ends of the move are the same")]
    SameEnds,
    #[error("position {0} does not exist")]
    UnknownPosition(u32),
    #[error("cell {0} does not exist")]
    UnknownCell(u32),
    #[error("position {0} is empty")]
    Unoccupied(u32),
    #[error("positions {0} and {1} hold different container classes")]
    ClassMismatch(u32, u32),
    #[error("cell {0} is blocked")]
    Blocked(u32),
    #[error("no valid {0} exists")]
    NoValidMove(MoveKind),
}

pub fn check_move(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    mv: &Move,
) -> Result<(), MoveError> {
    match *mv {
        Move::ContainerSwap { a, b } => {
            for p in [a, b] {
                if p.index() >= layout.position_count() {
                    return Err(MoveError::UnknownPosition(p.0));
                }
            }
            if a == b {
                return Err(MoveError::SameEnds);
            }
            for p in [a, b] {
                if assignment.item_at(p).is_none() {
                    return Err(MoveError::Unoccupied(p.0));
                }
            }
            if layout.position(a).class != layout.position(b).class {
                return Err(MoveError::ClassMismatch(a.0, b.0));
            }
        }
        Move::SubsectionSwap { a, b } => {
            for c in [a, b] {
                if c.index() >= layout.cell_count() {
                    return Err(MoveError::UnknownCell(c.0));
                }
            }
            if a == b {
                return Err(MoveError::SameEnds);
            }
            for c in [a, b] {
                if layout.cell(c).blocked {
                    return Err(MoveError::Blocked(c.0));
                }
            }
        }
    }
    Ok(())
}

/// Applies `mv` after checking it.
pub fn apply_move(
    layout: &WarehouseLayout,
    assignment: &mut Assignment,
    mv: &Move,
) -> Result<(), MoveError> {
    check_move(layout, assignment, mv)?;
    apply_unchecked(assignment, mv);
    Ok(())
}

/// Undoes `mv`. Every move is its own inverse.
pub fn revert_move(
    layout: &WarehouseLayout,
    assignment: &mut Assignment,
    mv: &Move,
) -> Result<(), MoveError> {
    apply_move(layout, assignment, mv)
}

#[inline]
pub(crate) fn apply_unchecked(assignment: &mut Assignment, mv: &Move) {
    match *mv {
        Move::ContainerSwap { a, b } => assignment.swap_positions(a, b),
        Move::SubsectionSwap { a, b } => assignment.swap_cells(a, b),
    }
}

/// Uniform proposal samplers.
///
/// The set of occupied positions per class never changes under either move
/// (container swaps exchange two occupied positions, subsection swaps carry
/// positions along with their module), so it is captured once.
#[derive(Debug, Clone)]
pub struct MoveSampler {
    occupied: [Vec<PositionId>; 4],
    swappable_total: u64,
    cells: Vec<CellId>,
}

impl MoveSampler {
    pub fn new(layout: &WarehouseLayout, assignment: &Assignment) -> Self {
        let mut occupied: [Vec<PositionId>; 4] = Default::default();
        for (id, info) in layout.positions() {
            if assignment.item_at(id).is_some() {
                occupied[info.class.index()].push(id);
            }
        }
        let swappable_total = occupied
            .iter()
            .filter(|v| v.len() >= 2)
            .map(|v| v.len() as u64)
            .sum();
        MoveSampler {
            occupied,
            swappable_total,
            cells: layout.unblocked_cells().to_vec(),
        }
    }

    pub fn can_propose(&self, kind: MoveKind) -> bool {
        match kind {
            MoveKind::ContainerSwap => self.swappable_total > 0,
            MoveKind::SubsectionSwap => self.cells.len() >= 2,
        }
    }

    /// Picks a class with probability proportional to its occupied count
    /// (classes with fewer than two occupied positions excluded), then two
    /// distinct occupied positions of that class.
    pub fn propose_container_swap(&self, rng: &mut Rng) -> Result<Move, MoveError> {
        if self.swappable_total == 0 {
            return Err(MoveError::NoValidMove(MoveKind::ContainerSwap));
        }
        let mut r = rng.gen_range(0..self.swappable_total);
        let class = self
            .occupied
            .iter()
            .filter(|v| v.len() >= 2)
            .find(|v| {
                let n = v.len() as u64;
                if r < n {
                    true
                } else {
                    r -= n;
                    false
                }
            })
            .expect("weights cover the sampled index");
        let (i, j) = distinct_pair(rng, class.len() as u64);
        Ok(Move::ContainerSwap {
            a: class[i],
            b: class[j],
        })
    }

    pub fn propose_subsection_swap(&self, rng: &mut Rng) -> Result<Move, MoveError> {
        if self.cells.len() < 2 {
            return Err(MoveError::NoValidMove(MoveKind::SubsectionSwap));
        }
        let (i, j) = distinct_pair(rng, self.cells.len() as u64);
        Ok(Move::SubsectionSwap {
            a: self.cells[i],
            b: self.cells[j],
        })
    }
}

fn distinct_pair(rng: &mut Rng, n: u64) -> (usize, usize) {
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i as usize, j as usize)
}

pub fn propose_container_swap(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    rng: &mut Rng,
) -> Result<Move, MoveError> {
    MoveSampler::new(layout, assignment).propose_container_swap(rng)
}

pub fn propose_subsection_swap(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    rng: &mut Rng,
) -> Result<Move, MoveError> {
    MoveSampler::new(layout, assignment).propose_subsection_swap(rng)
}
