use super::{AisleMode, CostParams, ParamsError, PassMode};
use crate::model::{Assignment, CellKey, ItemId, WarehouseLayout};
use crate::orders::{Batch, OrderSet};
use crate::time::Time;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CostError {
    #[error("item {0} is not assigned to a storage position")]
    Unassigned(ItemId),
    #[error(transparent)]
    Params(#[from] ParamsError),
}

/// Retrieval time of one bin.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BatchCost {
    /// Travel time.
    pub routing: Time,
    /// Pick time including lift operations.
    pub picking: Time,
    /// `routing + picking`.
    pub total: Time,
}

impl BatchCost {
    #[inline]
    pub fn new(routing: Time, picking: Time) -> Self {
        BatchCost {
            routing,
            picking,
            total: routing + picking,
        }
    }
}

/// Per-batch evaluator with reusable scratch space.
///
/// A sweep is one routing pass: the lower level category forms sweep 0 and
/// each upper level its own sweep (all levels share sweep 0 in aggregate
/// mode). Within a sweep every aisle with picks costs `tau_aisle` plus its
/// travel distance times `tau_s`.
#[derive(Debug, Clone)]
pub(crate) struct Evaluator {
    tau_aisle: Time,
    tau_s: Time,
    tau_lift: Time,
    tau_level: Vec<Time>,
    narrow: bool,
    aisle_len: Vec<i64>,
    aisles: usize,
    sweep_of_level: Vec<usize>,
    upper: Vec<bool>,
    // scratch
    depth: Vec<u32>,
    touched: Vec<usize>,
    upper_seen: Vec<bool>,
    upper_touched: Vec<u32>,
}

impl Evaluator {
    pub(crate) fn new(layout: &WarehouseLayout, params: &CostParams) -> Result<Self, ParamsError> {
        params.check_layout(layout)?;
        let levels = layout.level_count() as usize;
        let categories = params.level_categories();
        let upper: Vec<bool> = (0..levels as u32).map(|l| !categories.is_lower(l)).collect();
        let mut sweep_of_level = vec![0usize; levels];
        if params.pass_mode == PassMode::MultiPass {
            let mut next = 1;
            for l in 0..levels {
                if upper[l] {
                    sweep_of_level[l] = next;
                    next += 1;
                }
            }
        }
        let sweeps = sweep_of_level.iter().copied().max().unwrap_or(0) + 1;
        let aisles = layout.aisle_count();
        Ok(Evaluator {
            tau_aisle: params.tau_aisle,
            tau_s: params.tau_s,
            tau_lift: params.tau_lift,
            tau_level: params.tau_levels[..levels].to_vec(),
            narrow: params.aisle_mode == AisleMode::Narrow,
            aisle_len: layout.aisle_lengths().iter().map(|&l| l as i64).collect(),
            aisles,
            sweep_of_level,
            upper,
            depth: vec![0; sweeps * aisles],
            touched: Vec::new(),
            upper_seen: vec![false; levels],
            upper_touched: Vec::new(),
        })
    }

    /// Cost of picking one item from each cell in `cells`.
    pub(crate) fn evaluate(&mut self, cells: impl Iterator<Item = CellKey>) -> BatchCost {
        let mut picking = Time::ZERO;
        for cell in cells {
            let level = cell.level as usize;
            picking += self.tau_level[level];
            if self.upper[level] && !self.upper_seen[level] {
                self.upper_seen[level] = true;
                self.upper_touched.push(cell.level);
            }
            let slot = self.sweep_of_level[level] * self.aisles + cell.aisle as usize;
            let reach = cell.subsection + 1;
            let d = &mut self.depth[slot];
            if *d == 0 {
                self.touched.push(slot);
            }
            if reach > *d {
                *d = reach;
            }
        }

        let mut routing = Time::ZERO;
        for &slot in &self.touched {
            let distance = if self.narrow {
                self.aisle_len[slot % self.aisles]
            } else {
                2 * self.depth[slot] as i64
            };
            routing += self.tau_aisle + self.tau_s * distance;
            self.depth[slot] = 0;
        }
        self.touched.clear();

        // lower stop is always the starting point; each upper level adds one lift operation
        picking += self.tau_lift * self.upper_touched.len() as i64;
        for &l in &self.upper_touched {
            self.upper_seen[l as usize] = false;
        }
        self.upper_touched.clear();

        BatchCost::new(routing, picking)
    }
}

fn batch_cells<'a>(
    layout: &'a WarehouseLayout,
    assignment: &'a Assignment,
    batch: &'a Batch,
) -> Result<Vec<CellKey>, CostError> {
    let catalog = assignment.catalog();
    batch
        .items()
        .iter()
        .map(|&id| {
            catalog
                .index_of(id)
                .and_then(|i| assignment.item_cell(layout, i))
                .map(|c| layout.cell(c).key)
                .ok_or(CostError::Unassigned(id))
        })
        .collect()
}

pub fn batch_time(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    batch: &Batch,
    params: &CostParams,
) -> Result<BatchCost, CostError> {
    let mut eval = Evaluator::new(layout, params)?;
    let cells = batch_cells(layout, assignment, batch)?;
    Ok(eval.evaluate(cells.into_iter()))
}

/// Travel time of one bin under the s-shape heuristic.
pub fn route_time(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    batch: &Batch,
    params: &CostParams,
) -> Result<Time, CostError> {
    Ok(batch_time(layout, assignment, batch, params)?.routing)
}

/// Pick time of one bin: per-level pick times plus one lift operation per
/// visited upper level.
pub fn pick_time(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    batch: &Batch,
    params: &CostParams,
) -> Result<Time, CostError> {
    Ok(batch_time(layout, assignment, batch, params)?.picking)
}

/// Cost of every batch, in batch order.
pub fn batch_times(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    orders: &OrderSet,
    params: &CostParams,
) -> Result<Vec<BatchCost>, CostError> {
    let mut eval = Evaluator::new(layout, params)?;
    orders
        .batches()
        .iter()
        .map(|b| Ok(eval.evaluate(batch_cells(layout, assignment, b)?.into_iter())))
        .collect()
}

/// Total retrieval time: the sum of all bin times.
pub fn total_time(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    orders: &OrderSet,
    params: &CostParams,
) -> Result<Time, CostError> {
    Ok(batch_times(layout, assignment, orders, params)?
        .iter()
        .map(|c| c.total)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{AisleMode, PassMode};
    use crate::model::{Catalog, ContainerClass, Item, Placement, SlotAddress};
    use crate::orders::OrderSet;
    use std::sync::Arc;

    const RL: ContainerClass = ContainerClass::REGULAR_LOW;

    /// One aisle of eight subsections, four levels, six Regular-Low slots per cell.
    fn setup(slots: &[(u32, u32)]) -> (WarehouseLayout, Assignment, Batch) {
        let layout = WarehouseLayout::uniform(vec![8], 4, &[RL; 6]);
        let catalog = Arc::new(
            Catalog::new((0..slots.len() as u64).map(|i| Item::new(i, RL)).collect()).unwrap(),
        );
        let mut stack = std::collections::BTreeMap::new();
        let placements: Vec<Placement> = slots
            .iter()
            .enumerate()
            .map(|(i, &(sub, level))| {
                let k = stack.entry((sub, level)).or_insert(0u32);
                *k += 1;
                Placement {
                    item: ItemId(i as u64),
                    slot: SlotAddress::new(0, sub, level, *k - 1),
                }
            })
            .collect();
        let a = Assignment::from_placements(&layout, catalog, &placements).unwrap();
        let (batch, _) = Batch::new("b", (0..slots.len() as u64).map(ItemId));
        (layout, a, batch)
    }

    #[test]
    fn empty_batch_costs_nothing() {
        let (layout, a, _) = setup(&[(0, 0)]);
        let (empty, _) = Batch::new("e", []);
        let c = batch_time(&layout, &a, &empty, &CostParams::default()).unwrap();
        assert_eq!(c, BatchCost::new(Time::ZERO, Time::ZERO));
    }

    #[test]
    fn single_aisle_lower_route() {
        // farthest pick in subsection 4 → depth 5, there and back
        let (layout, a, batch) = setup(&[(1, 0), (4, 1)]);
        let p = CostParams::default();
        assert_eq!(route_time(&layout, &a, &batch, &p).unwrap(), Time::from_secs(50));
        assert_eq!(pick_time(&layout, &a, &batch, &p).unwrap(), Time::from_secs(30));
        assert_eq!(batch_time(&layout, &a, &batch, &p).unwrap().total, Time::from_secs(80));
    }

    #[test]
    fn upper_level_gets_its_own_pass() {
        let (layout, a, batch) = setup(&[(2, 0), (3, 2)]);
        let p = CostParams::default();
        assert_eq!(route_time(&layout, &a, &batch, &p).unwrap(), Time::from_secs(88));

        let agg = CostParams {
            pass_mode: PassMode::Aggregate,
            ..p
        };
        assert_eq!(route_time(&layout, &a, &batch, &agg).unwrap(), Time::from_secs(30 + 16));
    }

    #[test]
    fn pick_time_counts_lift_stops() {
        let (layout, a, batch) = setup(&[(0, 0), (1, 0), (2, 1), (0, 2), (5, 2)]);
        let p = CostParams::default();
        assert_eq!(pick_time(&layout, &a, &batch, &p).unwrap(), Time::from_secs(225));

        let (layout, a, batch) = setup(&[(0, 0), (0, 2), (0, 3)]);
        assert_eq!(
            pick_time(&layout, &a, &batch, &p).unwrap(),
            Time::from_secs(15 + 30 + 30 + 240)
        );

        let (layout, a, batch) = setup(&[(0, 0), (6, 1)]);
        assert_eq!(pick_time(&layout, &a, &batch, &p).unwrap(), Time::from_secs(30));
    }

    #[test]
    fn narrow_aisles_ignore_depth() {
        let p = CostParams {
            aisle_mode: AisleMode::Narrow,
            ..CostParams::default()
        };
        for sub in 0..8 {
            let (layout, a, batch) = setup(&[(sub, 0)]);
            assert_eq!(route_time(&layout, &a, &batch, &p).unwrap(), Time::from_secs(30 + 16));
        }
    }

    #[test]
    fn unassigned_item_is_named() {
        let (layout, _, batch) = setup(&[(0, 0), (1, 0)]);
        let catalog = Arc::new(
            Catalog::new(vec![Item::new(0u64, RL), Item::new(1u64, RL)]).unwrap(),
        );
        let a = Assignment::empty(&layout, catalog);
        let err = batch_time(&layout, &a, &batch, &CostParams::default()).unwrap_err();
        assert_eq!(err, CostError::Unassigned(ItemId(0)));
    }

    #[test]
    fn totals_are_linear_in_batches() {
        let (layout, a, batch) = setup(&[(1, 0), (3, 2)]);
        let p = CostParams::default();
        let one = batch_time(&layout, &a, &batch, &p).unwrap().total;
        let orders = OrderSet::new(vec![batch.clone(), batch]);
        assert_eq!(total_time(&layout, &a, &orders, &p).unwrap(), one * 2);
        assert_eq!(total_time(&layout, &a, &OrderSet::new(vec![]), &p).unwrap(), Time::ZERO);
    }
}
