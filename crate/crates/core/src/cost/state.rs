use super::eval::{BatchCost, CostError, Evaluator};
use super::CostParams;
use crate::annealer::moves::{self, Move, MoveError};
use crate::model::{Assignment, WarehouseLayout};
use crate::orders::OrderSet;
use crate::time::Time;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StateError {
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("a move is already pending")]
    MovePending,
    #[error("no move is pending")]
    NothingPending,
}

#[derive(Debug, Clone, Copy)]
struct Pending {
    mv: Move,
    delta: Time,
}

/// An assignment together with cached per-batch costs.
///
/// Moves are evaluated incrementally: only batches containing an item whose
/// cell changes are re-evaluated. The cache is exact because all times are
/// integer ticks.
#[derive(Debug, Clone)]
pub struct CostState<'a> {
    layout: &'a WarehouseLayout,
    assignment: Assignment,
    evaluator: Evaluator,
    batch_items: Vec<Vec<u32>>,
    item_batches: Vec<Vec<u32>>,
    costs: Vec<BatchCost>,
    total: Time,
    pending: Option<Pending>,
    mark: Vec<u32>,
    epoch: u32,
    affected: Vec<u32>,
    fresh: Vec<BatchCost>,
    cells: Vec<crate::model::CellKey>,
}

impl<'a> CostState<'a> {
    pub fn new(
        layout: &'a WarehouseLayout,
        orders: &OrderSet,
        params: &CostParams,
        assignment: Assignment,
    ) -> Result<Self, CostError> {
        let mut evaluator = Evaluator::new(layout, params)?;
        let catalog = assignment.catalog().clone();
        let mut item_batches = vec![Vec::new(); catalog.len()];
        let mut batch_items = Vec::with_capacity(orders.len());
        for (b, batch) in orders.batches().iter().enumerate() {
            let mut items = Vec::with_capacity(batch.len());
            for &id in batch.items() {
                let idx = catalog
                    .index_of(id)
                    .filter(|&i| assignment.position_of(i).is_some())
                    .ok_or(CostError::Unassigned(id))?;
                items.push(idx as u32);
                item_batches[idx].push(b as u32);
            }
            batch_items.push(items);
        }
        let mut cells = Vec::new();
        let costs: Vec<BatchCost> = batch_items
            .iter()
            .map(|items| {
                fill_cells(&mut cells, layout, &assignment, items);
                evaluator.evaluate(cells.iter().copied())
            })
            .collect();
        let total = costs.iter().map(|c| c.total).sum();
        Ok(CostState {
            layout,
            assignment,
            evaluator,
            mark: vec![0; batch_items.len()],
            batch_items,
            item_batches,
            costs,
            total,
            pending: None,
            epoch: 0,
            affected: Vec::new(),
            fresh: Vec::new(),
            cells,
        })
    }

    #[inline]
    pub fn total(&self) -> Time {
        self.total
    }

    #[inline]
    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    #[inline]
    pub fn layout(&self) -> &'a WarehouseLayout {
        self.layout
    }

    #[inline]
    pub fn batch_costs(&self) -> &[BatchCost] {
        &self.costs
    }

    pub fn into_assignment(self) -> Assignment {
        self.assignment
    }

    /// Applies `mv` tentatively and returns the exact change of the total.
    /// Follow with [`commit`](Self::commit) or [`rollback`](Self::rollback).
    pub fn try_move(&mut self, mv: Move) -> Result<Time, StateError> {
        if self.pending.is_some() {
            return Err(StateError::MovePending);
        }
        moves::check_move(self.layout, &self.assignment, &mv)?;

        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.fill(0);
            self.epoch = 1;
        }
        self.affected.clear();
        match mv {
            Move::ContainerSwap { a, b } => {
                for p in [a, b] {
                    if let Some(item) = self.assignment.item_at(p) {
                        self.mark_item(item);
                    }
                }
            }
            Move::SubsectionSwap { a, b } => {
                for c in [a, b] {
                    let module = self.assignment.module_in(c);
                    for p in self.layout.cell(module).positions() {
                        if let Some(item) = self.assignment.item_at(p) {
                            self.mark_item(item);
                        }
                    }
                }
            }
        }

        moves::apply_unchecked(&mut self.assignment, &mv);
        let mut delta = Time::ZERO;
        self.fresh.clear();
        for &b in &self.affected {
            fill_cells(
                &mut self.cells,
                self.layout,
                &self.assignment,
                &self.batch_items[b as usize],
            );
            let cost = self.evaluator.evaluate(self.cells.iter().copied());
            delta += cost.total - self.costs[b as usize].total;
            self.fresh.push(cost);
        }
        self.pending = Some(Pending { mv, delta });
        Ok(delta)
    }

    fn mark_item(&mut self, item: usize) {
        for &b in &self.item_batches[item] {
            if self.mark[b as usize] != self.epoch {
                self.mark[b as usize] = self.epoch;
                self.affected.push(b);
            }
        }
    }

    pub fn commit(&mut self) -> Result<Time, StateError> {
        let pending = self.pending.take().ok_or(StateError::NothingPending)?;
        for (&b, &cost) in self.affected.iter().zip(&self.fresh) {
            self.costs[b as usize] = cost;
        }
        self.total += pending.delta;
        Ok(self.total)
    }

    pub fn rollback(&mut self) -> Result<(), StateError> {
        let pending = self.pending.take().ok_or(StateError::NothingPending)?;
        moves::apply_unchecked(&mut self.assignment, &pending.mv);
        Ok(())
    }

    /// The change of the total that `mv` would cause; the state is unchanged.
    pub fn delta_time(&mut self, mv: Move) -> Result<Time, StateError> {
        let delta = self.try_move(mv)?;
        self.rollback()?;
        Ok(delta)
    }

    /// Applies `mv` and returns the new total.
    pub fn apply(&mut self, mv: Move) -> Result<Time, StateError> {
        self.try_move(mv)?;
        self.commit()
    }

    /// Recomputes the total from scratch, ignoring the cache.
    pub fn recompute_total(&mut self) -> Time {
        let mut total = Time::ZERO;
        for items in &self.batch_items {
            fill_cells(&mut self.cells, self.layout, &self.assignment, items);
            total += self.evaluator.evaluate(self.cells.iter().copied()).total;
        }
        total
    }

    /// True when every cached batch cost and the cached total match a fresh
    /// evaluation.
    pub fn is_coherent(&mut self) -> bool {
        let mut sum = Time::ZERO;
        for (b, items) in self.batch_items.iter().enumerate() {
            fill_cells(&mut self.cells, self.layout, &self.assignment, items);
            let fresh = self.evaluator.evaluate(self.cells.iter().copied());
            if fresh != self.costs[b] {
                return false;
            }
            sum += fresh.total;
        }
        sum == self.total
    }
}

#[inline]
fn fill_cells(
    out: &mut Vec<crate::model::CellKey>,
    layout: &WarehouseLayout,
    assignment: &Assignment,
    items: &[u32],
) {
    out.clear();
    out.extend(items.iter().map(|&i| {
        let cell = assignment
            .item_cell(layout, i as usize)
            .expect("batch items are assigned");
        layout.cell(cell).key
    }));
}
