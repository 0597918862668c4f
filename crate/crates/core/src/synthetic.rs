//! Synthetic instances: a product-option order model and a matching layout.
//!
//! Each batch contains the base items (needed by every product) plus the items
//! of every option group that the batch activates. Groups activate
//! independently, so co-occurrence within a group is perfect and across groups
//! is known in closed form.

use crate::model::{
    composition_width, Catalog, CellKey, ContainerClass, Item, ItemId, WarehouseLayout,
    CELL_WIDTH_UNITS, MAX_CONTAINERS_PER_CELL,
};
use crate::orders::{Batch, OrderSet};
use crate::rng::{self, streams};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptionGroup {
    pub size: usize,
    pub activation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub base_item_count: usize,
    pub option_groups: Vec<OptionGroup>,
    pub batch_count: usize,
    pub min_batch_size: usize,
    pub max_batch_size: usize,
    /// Relative frequency of L-H, L-L, R-H, R-L items.
    pub class_weights: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("activation probability {0} of option group {1} is outside [0, 1]")]
    Activation(f64, usize),
    #[error("batch size bounds must satisfy 1 <= min <= max (got {0}..={1})")]
    SizeBounds(usize, usize),
    #[error("catalog of {0} items cannot fill batches of at least {1} items")]
    CatalogTooSmall(usize, usize),
    #[error("class weights must be non-negative with a positive sum")]
    ClassWeights,
    #[error("fill ratio {0} is outside (0, 1]")]
    Fill(f64),
    #[error("no room for another {0} container in the layout")]
    NoRoom(ContainerClass),
}

impl SyntheticSpec {
    /// The desk-scale instance: 240 items, 400 batches of 1 to 60 items,
    /// mean batch size around 30.
    pub fn desk() -> Self {
        let mut groups = Vec::new();
        let mut remaining = 232usize;
        let mut i = 0usize;
        while remaining > 0 {
            let size = (2 + (i * 5) % 7).min(remaining);
            groups.push(OptionGroup {
                size,
                activation: 0.5 * 0.9f64.powi(i as i32),
            });
            remaining -= size;
            i += 1;
        }
        SyntheticSpec {
            base_item_count: 8,
            option_groups: groups,
            batch_count: 400,
            min_batch_size: 1,
            max_batch_size: 60,
            class_weights: [0.2, 0.2, 0.3, 0.3],
        }
    }

    pub fn item_count(&self) -> usize {
        self.base_item_count + self.option_groups.iter().map(|g| g.size).sum::<usize>()
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        for (i, g) in self.option_groups.iter().enumerate() {
            if !(0.0..=1.0).contains(&g.activation) {
                return Err(SpecError::Activation(g.activation, i));
            }
        }
        if self.min_batch_size < 1 || self.max_batch_size < self.min_batch_size {
            return Err(SpecError::SizeBounds(self.min_batch_size, self.max_batch_size));
        }
        if self.item_count() < self.min_batch_size {
            return Err(SpecError::CatalogTooSmall(self.item_count(), self.min_batch_size));
        }
        let sum: f64 = self.class_weights.iter().sum();
        if self.class_weights.iter().any(|w| !(*w >= 0.0)) || !(sum > 0.0) {
            return Err(SpecError::ClassWeights);
        }
        Ok(())
    }
}

/// Generates the catalog and batches. Identical `spec` and `seed` give
/// identical output on every platform.
pub fn generate_synthetic(spec: &SyntheticSpec, seed: u64) -> Result<(Catalog, OrderSet), SpecError> {
    spec.validate()?;
    let n = spec.item_count();

    let mut rng = rng::stream(seed, streams::SYNTHETIC_CATALOG);
    let mut ids: Vec<u64> = (1..=n as u64).collect();
    ids.shuffle(&mut rng);
    let total_weight: f64 = spec.class_weights.iter().sum();
    let mut items: Vec<Item> = ids
        .iter()
        .map(|&id| {
            let mut x = rng.gen::<f64>() * total_weight;
            let mut class = ContainerClass::ALL[3];
            for (c, w) in ContainerClass::ALL.iter().zip(spec.class_weights) {
                if x < w {
                    class = *c;
                    break;
                }
                x -= w;
            }
            Item::new(id, class)
        })
        .collect();

    // role order: base items, then each group's items
    let base: Vec<ItemId> = ids[..spec.base_item_count].iter().copied().map(ItemId).collect();
    let mut groups = Vec::with_capacity(spec.option_groups.len());
    let mut offset = spec.base_item_count;
    for g in &spec.option_groups {
        groups.push(
            ids[offset..offset + g.size]
                .iter()
                .copied()
                .map(ItemId)
                .collect::<Vec<_>>(),
        );
        offset += g.size;
    }
    items.sort_by_key(|i| i.id);
    let catalog = Catalog::new(items).expect("generated ids are unique");

    let mut rng = rng::stream(seed, streams::SYNTHETIC_BATCHES);
    let width = spec.batch_count.max(1).to_string().len().max(5);
    let mut batches = Vec::with_capacity(spec.batch_count);
    for b in 0..spec.batch_count {
        let mut set: BTreeSet<ItemId> = base.iter().copied().collect();
        for (g, members) in spec.option_groups.iter().zip(&groups) {
            let draw = rng.gen::<f64>();
            if draw < g.activation {
                set.extend(members.iter().copied());
            }
        }
        let mut chosen: Vec<ItemId> = set.into_iter().collect();
        if chosen.len() > spec.max_batch_size {
            let (kept, _) = chosen.partial_shuffle(&mut rng, spec.max_batch_size);
            chosen = kept.to_vec();
        }
        while chosen.len() < spec.min_batch_size {
            let pick = ItemId(rng.gen_range(1..=n as u64));
            if !chosen.contains(&pick) {
                chosen.push(pick);
            }
        }
        let (batch, _) = Batch::new(format!("B{b:0width$}"), chosen);
        batches.push(batch);
    }
    Ok((catalog, OrderSet::new(batches)))
}

/// Geometry of a generated layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutSpec {
    pub aisle_lengths: Vec<u32>,
    pub levels: u32,
    /// Target ratio of items to container positions, per class.
    pub fill: f64,
    pub blocked: Vec<CellKey>,
}

impl LayoutSpec {
    /// 4 aisles of 16 subsections, 4 levels, a few non-exchangeable cells.
    pub fn desk() -> Self {
        let mut blocked = vec![CellKey::new(0, 0, 3), CellKey::new(1, 0, 3)];
        for s in 14..16 {
            for l in 2..4 {
                blocked.push(CellKey::new(3, s, l));
            }
        }
        LayoutSpec {
            aisle_lengths: vec![16; 4],
            levels: 4,
            fill: 0.85,
            blocked,
        }
    }
}

/// Builds a layout with just enough containers of each class to host
/// `catalog` at the requested fill ratio. Containers are spread over the
/// unblocked cells round-robin in random cell order; cells may end up empty.
pub fn generate_layout(
    catalog: &Catalog,
    spec: &LayoutSpec,
    seed: u64,
) -> Result<WarehouseLayout, SpecError> {
    if !(spec.fill > 0.0 && spec.fill <= 1.0) {
        return Err(SpecError::Fill(spec.fill));
    }
    let mut rng = rng::stream(seed, streams::SYNTHETIC_LAYOUT);
    let blocked: BTreeSet<CellKey> = spec.blocked.iter().copied().collect();
    let mut cells: Vec<CellKey> = Vec::new();
    for (a, &len) in spec.aisle_lengths.iter().enumerate() {
        for s in 0..len {
            for l in 0..spec.levels {
                let key = CellKey::new(a as u32, s, l);
                if !blocked.contains(&key) {
                    cells.push(key);
                }
            }
        }
    }
    cells.shuffle(&mut rng);

    let mut containers = Vec::new();
    for (class, &count) in ContainerClass::ALL.iter().zip(catalog.count_by_class().iter()) {
        let needed = (count as f64 / spec.fill).ceil() as usize;
        containers.extend(std::iter::repeat_n(*class, needed));
    }
    containers.shuffle(&mut rng);

    let mut contents: Vec<Vec<ContainerClass>> = vec![Vec::new(); cells.len()];
    let mut cursor = 0usize;
    for class in containers {
        let found = (0..cells.len()).map(|k| (cursor + k) % cells.len()).find(|&c| {
            let cell = &contents[c];
            if cell.len() >= MAX_CONTAINERS_PER_CELL {
                return false;
            }
            let mut trial = cell.clone();
            trial.push(class);
            composition_width(&trial) <= CELL_WIDTH_UNITS
        });
        let Some(c) = found else {
            return Err(SpecError::NoRoom(class));
        };
        contents[c].push(class);
        cursor = c + 1;
    }

    let compositions: BTreeMap<CellKey, Vec<ContainerClass>> = cells
        .into_iter()
        .zip(contents)
        .filter(|(_, c)| !c.is_empty())
        .collect();
    Ok(WarehouseLayout::new(
        spec.aisle_lengths.clone(),
        spec.levels,
        compositions,
        blocked,
    ))
}

/// A complete generated problem.
#[derive(Debug, Clone)]
pub struct Instance {
    pub layout: WarehouseLayout,
    pub catalog: Catalog,
    pub orders: OrderSet,
}

pub fn generate_instance(
    orders: &SyntheticSpec,
    layout: &LayoutSpec,
    seed: u64,
) -> Result<Instance, SpecError> {
    let (catalog, orders) = generate_synthetic(orders, seed)?;
    let layout = generate_layout(&catalog, layout, seed)?;
    Ok(Instance {
        layout,
        catalog,
        orders,
    })
}

/// The desk-scale instance for `seed`.
pub fn desk_instance(seed: u64) -> Instance {
    generate_instance(&SyntheticSpec::desk(), &LayoutSpec::desk(), seed)
        .expect("desk presets are valid")
}

/// A quick instance for unit tests: 2 aisles of 5 subsections, 3 levels.
#[cfg(test)]
pub(crate) fn small_instance(seed: u64) -> Instance {
    let spec = SyntheticSpec {
        base_item_count: 2,
        option_groups: (0..6)
            .map(|i| OptionGroup {
                size: 3,
                activation: 0.6 - 0.08 * i as f64,
            })
            .collect(),
        batch_count: 30,
        min_batch_size: 1,
        max_batch_size: 8,
        class_weights: [0.25; 4],
    };
    let layout = LayoutSpec {
        aisle_lengths: vec![5, 5],
        levels: 3,
        fill: 0.8,
        blocked: vec![CellKey::new(1, 4, 2)],
    };
    generate_instance(&spec, &layout, seed).expect("valid spec")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_layout;

    fn no_options(base: usize) -> SyntheticSpec {
        SyntheticSpec {
            base_item_count: base,
            option_groups: vec![],
            batch_count: 20,
            min_batch_size: 1,
            max_batch_size: 60,
            class_weights: [1.0; 4],
        }
    }

    #[test]
    fn no_option_groups_gives_identical_batches() {
        let (catalog, orders) = generate_synthetic(&no_options(5), 3).unwrap();
        assert_eq!(catalog.len(), 5);
        let first = orders.batches()[0].items().to_vec();
        assert_eq!(first.len(), 5);
        assert!(orders.batches().iter().all(|b| b.items() == first.as_slice()));
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let spec = SyntheticSpec::desk();
        let a = generate_synthetic(&spec, 11).unwrap();
        let b = generate_synthetic(&spec, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            crate::orders::orders_to_csv(&a.1),
            crate::orders::orders_to_csv(&b.1)
        );
        let c = generate_synthetic(&spec, 12).unwrap();
        assert_ne!(a.1, c.1);
    }

    #[test]
    fn certain_group_always_present() {
        let mut spec = no_options(2);
        spec.option_groups = vec![
            OptionGroup { size: 3, activation: 1.0 },
            OptionGroup { size: 4, activation: 0.3 },
        ];
        let (_, orders) = generate_synthetic(&spec, 5).unwrap();
        let every: Vec<ItemId> = orders.batches()[0].items().to_vec();
        // the certain group's items are in every batch, together with the base
        let always: Vec<ItemId> = orders
            .picked_items()
            .filter(|i| orders.batches_with(*i).len() == orders.len())
            .collect();
        assert_eq!(always.len(), 5);
        assert!(always.iter().all(|i| every.contains(i)));
    }

    #[test]
    fn sizes_respect_bounds() {
        let mut spec = SyntheticSpec::desk();
        spec.min_batch_size = 12;
        spec.max_batch_size = 20;
        let (_, orders) = generate_synthetic(&spec, 9).unwrap();
        assert!(orders.batches().iter().all(|b| (12..=20).contains(&b.len())));
    }

    #[test]
    fn invalid_specs_rejected() {
        let mut spec = no_options(3);
        spec.option_groups.push(OptionGroup { size: 1, activation: 1.5 });
        assert!(matches!(spec.validate(), Err(SpecError::Activation(..))));
        let mut spec = no_options(3);
        spec.min_batch_size = 0;
        assert!(matches!(spec.validate(), Err(SpecError::SizeBounds(..))));
        let mut spec = no_options(3);
        spec.min_batch_size = 4;
        spec.max_batch_size = 4;
        assert!(matches!(spec.validate(), Err(SpecError::CatalogTooSmall(..))));
    }

    #[test]
    fn desk_preset_shape() {
        let spec = SyntheticSpec::desk();
        assert_eq!(spec.item_count(), 240);
        let inst = desk_instance(1);
        assert!(validate_layout(&inst.layout).is_empty());
        let cap = inst.layout.capacity_by_class();
        let need = inst.catalog.count_by_class();
        for c in 0..4 {
            assert!(cap[c] >= need[c]);
        }
        let mean = inst.orders.batches().iter().map(|b| b.len()).sum::<usize>() as f64
            / inst.orders.len() as f64;
        assert!((20.0..40.0).contains(&mean), "mean batch size {mean}");
    }
}
