//! Post-hoc analytics: pick-frequency heatmaps, neighbour co-occurrence
//! similarity and histograms of per-batch retrieval time.

use crate::cost::{batch_times, CostError, CostParams};
use crate::model::{Assignment, CellId, ItemId, WarehouseLayout, MAX_CONTAINERS_PER_CELL};
use crate::orders::OrderSet;
use crate::time::Time;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("item {0} is not assigned")]
    Unassigned(ItemId),
    #[error("histograms need at least one batch")]
    EmptyOrders,
    #[error("histograms need at least one assignment")]
    NoAssignments,
    #[error("bin count must be positive")]
    NoBins,
    #[error(transparent)]
    Cost(#[from] CostError),
}

/// Jaccard coefficient of the batch sets of `i` and `j`; `None` when neither
/// item is ever picked.
pub fn jaccard(orders: &OrderSet, i: ItemId, j: ItemId) -> Option<f64> {
    let a = orders.batches_with(i);
    let b = orders.batches_with(j);
    let (mut x, mut y, mut common) = (0, 0, 0usize);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                x += 1;
                y += 1;
            }
        }
    }
    let union = a.len() + b.len() - common;
    (union > 0).then(|| common as f64 / union as f64)
}

/// Which items count as neighbours besides being in the same or an adjacent
/// subsection of the same aisle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NeighborScope {
    /// Same level category (lower or upper).
    #[default]
    Category,
    /// Same level only.
    Level,
}

pub fn neighbor_set(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    params: &CostParams,
    item: ItemId,
    scope: NeighborScope,
) -> Result<BTreeSet<ItemId>, AnalysisError> {
    let catalog = assignment.catalog();
    let home = catalog
        .index_of(item)
        .and_then(|i| assignment.item_cell(layout, i))
        .ok_or(AnalysisError::Unassigned(item))?;
    let key = layout.cell(home).key;
    let categories = params.level_categories();
    let lo = key.subsection.saturating_sub(1);
    let hi = (key.subsection + 1).min(layout.aisle_length(key.aisle) - 1);
    let mut out = BTreeSet::new();
    for subsection in lo..=hi {
        for level in 0..layout.level_count() {
            let same = match scope {
                NeighborScope::Category => categories.category(level) == categories.category(key.level),
                NeighborScope::Level => level == key.level,
            };
            if !same {
                continue;
            }
            let cell = layout
                .cell_id(crate::model::CellKey::new(key.aisle, subsection, level))
                .expect("cell in range");
            for other in assignment.items_in_cell(layout, cell) {
                let id = catalog.item(other).id;
                if id != item {
                    out.insert(id);
                }
            }
        }
    }
    Ok(out)
}

/// Average neighbour similarity per assigned item.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityMap {
    /// `None` when the item has no neighbour with a defined coefficient.
    pub values: BTreeMap<ItemId, Option<f64>>,
    /// Neighbour pairs left out of the averages because neither was picked.
    pub excluded_pairs: usize,
}

impl SimilarityMap {
    pub fn defined(&self) -> impl Iterator<Item = (ItemId, f64)> + '_ {
        self.values.iter().filter_map(|(k, v)| v.map(|v| (*k, v)))
    }

    pub fn mean(&self) -> Option<f64> {
        let (sum, n) = self.defined().fold((0.0, 0usize), |(s, n), (_, v)| (s + v, n + 1));
        (n > 0).then(|| sum / n as f64)
    }
}

pub fn neighbor_similarity_map(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    orders: &OrderSet,
    params: &CostParams,
    scope: NeighborScope,
) -> SimilarityMap {
    let catalog = assignment.catalog();
    let mut values = BTreeMap::new();
    let mut excluded_pairs = 0;
    for item in catalog.items() {
        let Ok(neighbors) = neighbor_set(layout, assignment, params, item.id, scope) else {
            continue;
        };
        let mut sum = 0.0;
        let mut n = 0usize;
        for j in neighbors {
            match jaccard(orders, item.id, j) {
                Some(v) => {
                    sum += v;
                    n += 1;
                }
                None => excluded_pairs += 1,
            }
        }
        values.insert(item.id, (n > 0).then(|| sum / n as f64));
    }
    SimilarityMap {
        values,
        excluded_pairs,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub name: String,
    /// `counts.len() + 1` strictly increasing edges starting at 0.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// Largest batch time under the reference assignment.
    pub normalization: Time,
    /// Mean normalized batch time.
    pub mean: f64,
}

/// Histograms of batch times normalized by the largest batch time under the
/// first (reference) assignment. All histograms share equal-width bins on
/// `[0, max(1, largest normalized time)]`; the last bin is closed.
pub fn batch_time_histogram(
    orders: &OrderSet,
    layout: &WarehouseLayout,
    assignments: &[(&str, &Assignment)],
    params: &CostParams,
    bins: usize,
) -> Result<Vec<Histogram>, AnalysisError> {
    if orders.is_empty() {
        return Err(AnalysisError::EmptyOrders);
    }
    if assignments.is_empty() {
        return Err(AnalysisError::NoAssignments);
    }
    if bins == 0 {
        return Err(AnalysisError::NoBins);
    }
    let mut times = Vec::with_capacity(assignments.len());
    for (_, a) in assignments {
        times.push(batch_times(layout, a, orders, params)?);
    }
    let normalization = times[0].iter().map(|c| c.total).max().unwrap_or(Time::ZERO);
    let scale = if normalization > Time::ZERO {
        normalization.ticks() as f64
    } else {
        1.0
    };
    let normalized: Vec<Vec<f64>> = times
        .iter()
        .map(|ts| ts.iter().map(|c| c.total.ticks() as f64 / scale).collect())
        .collect();
    let ceiling = normalized
        .iter()
        .flatten()
        .copied()
        .fold(1.0f64, f64::max);
    let edges: Vec<f64> = (0..=bins).map(|k| ceiling * k as f64 / bins as f64).collect();

    Ok(assignments
        .iter()
        .zip(normalized)
        .map(|((name, _), values)| {
            let mut counts = vec![0u64; bins];
            for &v in &values {
                let k = ((v / ceiling) * bins as f64).floor() as usize;
                counts[k.min(bins - 1)] += 1;
            }
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            Histogram {
                name: name.to_string(),
                edges: edges.clone(),
                counts,
                normalization,
                mean,
            }
        })
        .collect())
}

/// `bin_lo,bin_hi,count_<name>...`
pub fn histograms_to_csv(histograms: &[Histogram]) -> String {
    let mut out = String::from("bin_lo,bin_hi");
    for h in histograms {
        let _ = write!(out, ",count_{}", h.name);
    }
    out.push('\n');
    if let Some(first) = histograms.first() {
        for k in 0..first.counts.len() {
            let _ = write!(out, "{},{}", first.edges[k], first.edges[k + 1]);
            for h in histograms {
                let _ = write!(out, ",{}", h.counts[k]);
            }
            out.push('\n');
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum GridCell<T> {
    Value(T),
    /// A container with no item.
    Empty,
    Blocked,
    /// No container at this position.
    None,
}

/// One level of a plot grid: row = subsection depth, column =
/// `aisle * 6 + stack position`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelGrid<T> {
    pub level: u32,
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<GridCell<T>>,
}

impl<T: Copy> LevelGrid<T> {
    pub fn get(&self, row: usize, col: usize) -> GridCell<T> {
        self.cells[row * self.cols + col]
    }
}

fn build_grids<T: Copy>(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    value: impl Fn(ItemId) -> Option<T>,
) -> Vec<LevelGrid<T>> {
    let rows = layout.max_aisle_length() as usize;
    let cols = layout.aisle_count() * MAX_CONTAINERS_PER_CELL;
    let catalog = assignment.catalog();
    let mut grids: Vec<LevelGrid<T>> = (0..layout.level_count())
        .map(|level| LevelGrid {
            level,
            rows,
            cols,
            cells: vec![GridCell::None; rows * cols],
        })
        .collect();
    for (i, cell) in layout.cells().iter().enumerate() {
        let key = cell.key;
        let grid = &mut grids[key.level as usize];
        let base = key.subsection as usize * cols + key.aisle as usize * MAX_CONTAINERS_PER_CELL;
        if cell.blocked {
            for k in 0..MAX_CONTAINERS_PER_CELL {
                grid.cells[base + k] = GridCell::Blocked;
            }
            continue;
        }
        let module = layout.cell(assignment.module_in(CellId(i as u32)));
        for pos in module.positions() {
            let stack = layout.position(pos).stack_position as usize;
            if stack >= MAX_CONTAINERS_PER_CELL {
                continue;
            }
            grid.cells[base + stack] = match assignment.item_at(pos) {
                Some(item) => match value(catalog.item(item).id) {
                    Some(v) => GridCell::Value(v),
                    None => GridCell::Empty,
                },
                None => GridCell::Empty,
            };
        }
    }
    grids
}

/// Per level, `log10(1 + picks)` of the item in every container position.
pub fn frequency_heatmap(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    frequencies: &BTreeMap<ItemId, u64>,
) -> Vec<LevelGrid<f64>> {
    build_grids(layout, assignment, |id| {
        Some((1.0 + frequencies.get(&id).copied().unwrap_or(0) as f64).log10())
    })
}

/// Per level, the neighbour similarity of the item in every container
/// position. Items without a defined value appear as `Value(None)`.
pub fn similarity_grid(
    layout: &WarehouseLayout,
    assignment: &Assignment,
    map: &SimilarityMap,
) -> Vec<LevelGrid<Option<f64>>> {
    build_grids(layout, assignment, |id| Some(map.values.get(&id).copied().flatten()))
}

pub fn grid_to_csv<T: Copy>(grid: &LevelGrid<T>, fmt: impl Fn(T) -> String) -> String {
    let mut out = String::new();
    for r in 0..grid.rows {
        for c in 0..grid.cols {
            if c > 0 {
                out.push(',');
            }
            match grid.get(r, c) {
                GridCell::Value(v) => out.push_str(&fmt(v)),
                GridCell::Empty => out.push_str("empty"),
                GridCell::Blocked => out.push_str("blocked"),
                GridCell::None => {}
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Catalog, ContainerClass, Item};
    use crate::orders::Batch;
    use std::sync::Arc;

    fn orders(batches: &[(&str, &[u64])]) -> OrderSet {
        OrderSet::new(
            batches
                .iter()
                .map(|(id, items)| Batch::new(*id, items.iter().copied().map(ItemId)).0)
                .collect(),
        )
    }

    #[test]
    fn jaccard_cases() {
        let o = orders(&[("A", &[1, 2]), ("B", &[1, 2, 3]), ("C", &[2]), ("D", &[4])]);
        assert_eq!(jaccard(&o, ItemId(1), ItemId(1)), Some(1.0));
        assert_eq!(jaccard(&o, ItemId(3), ItemId(4)), Some(0.0));
        // batches of 1 = {A,B}, of 3 = {B}; of 2 = {A,B,C}
        assert_eq!(jaccard(&o, ItemId(1), ItemId(2)), Some(2.0 / 3.0));
        assert_eq!(jaccard(&o, ItemId(8), ItemId(9)), None);
        let o = orders(&[("A", &[1]), ("B", &[1, 2]), ("C", &[2])]);
        assert_eq!(jaccard(&o, ItemId(1), ItemId(2)), Some(1.0 / 3.0));
    }

    fn small() -> (WarehouseLayout, Assignment) {
        let layout = WarehouseLayout::uniform(vec![4, 2], 3, &[ContainerClass::REGULAR_HIGH]);
        let catalog = Arc::new(
            Catalog::new((1..=6).map(|i| Item::new(i, ContainerClass::REGULAR_HIGH)).collect())
                .unwrap(),
        );
        let mut a = Assignment::empty(&layout, catalog.clone());
        let slots = [
            (0, 0, 0), // item 1
            (0, 1, 0), // item 2, adjacent
            (0, 1, 2), // item 3, adjacent but upper
            (0, 3, 0), // item 4, two away
            (1, 0, 0), // item 5, other aisle
            (0, 0, 1), // item 6, same subsection, other lower level
        ];
        for (i, (aisle, s, l)) in slots.iter().enumerate() {
            let pos = layout
                .position_at(crate::model::SlotAddress::new(*aisle, *s, *l, 0))
                .unwrap();
            a.place(&layout, i, pos).unwrap();
        }
        (layout, a)
    }

    #[test]
    fn neighbors_follow_category() {
        let (layout, a) = small();
        let p = CostParams::default();
        let n = neighbor_set(&layout, &a, &p, ItemId(1), NeighborScope::Category).unwrap();
        assert_eq!(n, [ItemId(2), ItemId(6)].into_iter().collect());
        let n = neighbor_set(&layout, &a, &p, ItemId(1), NeighborScope::Level).unwrap();
        assert_eq!(n, [ItemId(2)].into_iter().collect());
        let n = neighbor_set(&layout, &a, &p, ItemId(5), NeighborScope::Category).unwrap();
        assert!(n.is_empty());
        assert!(neighbor_set(&layout, &a, &p, ItemId(77), NeighborScope::Category).is_err());
    }

    #[test]
    fn heatmap_values_and_shape() {
        let (layout, a) = small();
        let freq: BTreeMap<ItemId, u64> = [(ItemId(1), 99)].into_iter().collect();
        let grids = frequency_heatmap(&layout, &a, &freq);
        assert_eq!(grids.len(), 3);
        assert_eq!(grids[0].rows, 4);
        assert_eq!(grids[0].cols, 2 * MAX_CONTAINERS_PER_CELL);
        assert_eq!(grids[0].get(0, 0), GridCell::Value(2.0));
        assert_eq!(grids[0].get(1, 0), GridCell::Value(0.0));
        assert_eq!(grids[0].get(2, 0), GridCell::Empty);
        assert_eq!(grids[0].get(0, 1), GridCell::None);
        // aisle 1 has only 2 subsections
        assert_eq!(grids[0].get(3, 6), GridCell::None);
        let csv = grid_to_csv(&grids[0], |v| format!("{v:.3}"));
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("2.000,,,,,,"));
    }

    #[test]
    fn histogram_single_batch_self_normalizes() {
        let (layout, a) = small();
        let o = orders(&[("A", &[1, 2])]);
        let h = batch_time_histogram(&o, &layout, &[("ref", &a)], &CostParams::default(), 10)
            .unwrap();
        assert_eq!(h[0].counts.iter().sum::<u64>(), 1);
        assert_eq!(h[0].counts[9], 1);
        assert_eq!(h[0].mean, 1.0);
        assert!(h[0].edges.windows(2).all(|w| w[0] < w[1]));
        assert!(batch_time_histogram(&OrderSet::default(), &layout, &[("r", &a)], &CostParams::default(), 5).is_err());
        let csv = histograms_to_csv(&h);
        assert!(csv.starts_with("bin_lo,bin_hi,count_ref\n0,0.1,0\n"));
    }
}
