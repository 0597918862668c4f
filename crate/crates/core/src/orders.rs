//! Pre-batched orders: loading, the item-to-batch index and pick frequencies.

use crate::model::io::FormatError;
use crate::model::{Catalog, ItemId};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BatchId(pub String);

impl std::fmt::Display for BatchId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for BatchId {
    fn from(value: &str) -> Self {
        BatchId(value.to_string())
    }
}

/// Items retrieved together in one picker tour. Items form a set: sorted and
/// free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Batch {
    id: BatchId,
    items: Vec<ItemId>,
}

impl Batch {
    /// Builds a batch, dropping repeated items. Returns the batch and the
    /// number of duplicates removed.
    pub fn new(id: impl Into<BatchId>, items: impl IntoIterator<Item = ItemId>) -> (Self, usize) {
        let mut items: Vec<ItemId> = items.into_iter().collect();
        let before = items.len();
        items.sort_unstable();
        items.dedup();
        let dropped = before - items.len();
        (
            Batch {
                id: id.into(),
                items,
            },
            dropped,
        )
    }

    #[inline]
    pub fn id(&self) -> &BatchId {
        &self.id
    }

    #[inline]
    pub fn items(&self) -> &[ItemId] {
        &self.items
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.items.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.items.binary_search(&item).is_ok()
    }
}

impl From<String> for BatchId {
    fn from(value: String) -> Self {
        BatchId(value)
    }
}

/// The batch list plus the inverted index item → batches containing it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrderSet {
    batches: Vec<Batch>,
    index: BTreeMap<ItemId, Vec<usize>>,
}

impl OrderSet {
    pub fn new(batches: Vec<Batch>) -> Self {
        let mut index: BTreeMap<ItemId, Vec<usize>> = BTreeMap::new();
        for (b, batch) in batches.iter().enumerate() {
            for &item in batch.items() {
                index.entry(item).or_default().push(b);
            }
        }
        OrderSet { batches, index }
    }

    #[inline]
    pub fn batches(&self) -> &[Batch] {
        &self.batches
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.batches.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.batches.is_empty()
    }

    /// Indices (into [`batches`](Self::batches)) of the batches containing `item`.
    pub fn batches_with(&self, item: ItemId) -> &[usize] {
        self.index.get(&item).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Items that occur in at least one batch.
    pub fn picked_items(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.index.keys().copied()
    }

    /// Checks every batch item against `catalog`, returning the sorted unknown ids.
    pub fn unknown_items(&self, catalog: &Catalog) -> Vec<ItemId> {
        self.index
            .keys()
            .copied()
            .filter(|id| catalog.index_of(*id).is_none())
            .collect()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum OrdersError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("unknown item ids: {}", join_ids(.0))]
    UnknownItems(Vec<ItemId>),
    #[error("unsupported orders file extension `{0}` (expected .csv or .json)")]
    UnsupportedExtension(String),
}

fn join_ids(ids: &[ItemId]) -> String {
    ids.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Result of reading an orders file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedOrders {
    pub orders: OrderSet,
    /// Repeated (batch, item) lines that were collapsed.
    pub duplicates_dropped: usize,
}

/// Parses `batch_id,item_id` rows. A leading header row is optional. Batches
/// keep the order of their first row.
pub fn parse_orders_csv(text: &str) -> Result<LoadedOrders, OrdersError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut order: Vec<String> = Vec::new();
    let mut groups: HashMap<String, Vec<ItemId>> = HashMap::new();
    for (i, record) in rdr.records().enumerate() {
        let line = i as u64 + 1;
        let record = record.map_err(|e| OrdersError::Parse {
            line,
            message: e.to_string(),
        })?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 2 {
            return Err(OrdersError::Parse {
                line,
                message: format!("expected 2 fields `batch_id,item_id`, found {}", record.len()),
            });
        }
        if i == 0 && &record[0] == "batch_id" {
            continue;
        }
        let item: u64 = record[1].parse().map_err(|_| OrdersError::Parse {
            line,
            message: format!("invalid item id `{}`", &record[1]),
        })?;
        let batch = record[0].to_string();
        groups
            .entry(batch.clone())
            .or_insert_with(|| {
                order.push(batch);
                Vec::new()
            })
            .push(ItemId(item));
    }
    Ok(assemble(order, groups))
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonBatch {
    id: serde_json::Value,
    items: Vec<u64>,
}

/// Parses `[{"id": ..., "items": [...]}]`. Ids may be strings or numbers.
pub fn parse_orders_json(text: &str) -> Result<LoadedOrders, OrdersError> {
    let rows: Vec<JsonBatch> = serde_json::from_str(text).map_err(FormatError::from)?;
    let mut order = Vec::new();
    let mut groups: HashMap<String, Vec<ItemId>> = HashMap::new();
    for row in rows {
        let id = match row.id {
            serde_json::Value::String(s) => s,
            other => other.to_string(),
        };
        let entry = groups.entry(id.clone()).or_insert_with(|| {
            order.push(id);
            Vec::new()
        });
        entry.extend(row.items.into_iter().map(ItemId));
    }
    Ok(assemble(order, groups))
}

fn assemble(order: Vec<String>, mut groups: HashMap<String, Vec<ItemId>>) -> LoadedOrders {
    let mut duplicates_dropped = 0;
    let batches = order
        .into_iter()
        .map(|id| {
            let items = groups.remove(&id).unwrap_or_default();
            let (batch, dropped) = Batch::new(id, items);
            duplicates_dropped += dropped;
            batch
        })
        .collect();
    LoadedOrders {
        orders: OrderSet::new(batches),
        duplicates_dropped,
    }
}

/// Reads an orders file (format inferred from the extension) and checks every
/// item against `catalog`.
pub fn load_orders(path: impl AsRef<Path>, catalog: &Catalog) -> Result<LoadedOrders, OrdersError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| FormatError::io(path, e))?;
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase();
    let loaded = match ext.as_str() {
        "csv" => parse_orders_csv(&text)?,
        "json" => parse_orders_json(&text)?,
        other => return Err(OrdersError::UnsupportedExtension(other.to_string())),
    };
    let unknown = loaded.orders.unknown_items(catalog);
    if !unknown.is_empty() {
        return Err(OrdersError::UnknownItems(unknown));
    }
    Ok(loaded)
}

pub fn orders_to_csv(orders: &OrderSet) -> String {
    let mut out = String::from("batch_id,item_id\n");
    for batch in orders.batches() {
        for item in batch.items() {
            out.push_str(&batch.id().0);
            out.push(',');
            out.push_str(&item.0.to_string());
            out.push('\n');
        }
    }
    out
}

pub fn write_orders_csv(path: impl AsRef<Path>, orders: &OrderSet) -> Result<(), FormatError> {
    crate::model::io::write_string(path.as_ref(), &orders_to_csv(orders))
}

/// Number of batches containing each catalog item, zero for never-picked items.
pub fn pick_frequency(orders: &OrderSet, catalog: &Catalog) -> BTreeMap<ItemId, u64> {
    catalog
        .items()
        .iter()
        .map(|item| (item.id, orders.batches_with(item.id).len() as u64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ContainerClass, Item};

    fn ids(v: &[u64]) -> Vec<ItemId> {
        v.iter().copied().map(ItemId).collect()
    }

    #[test]
    fn csv_two_batches_and_index() {
        let loaded = parse_orders_csv("batch_id,item_id\nA,1\nA,2\nB,2\n").unwrap();
        let o = &loaded.orders;
        assert_eq!(o.len(), 2);
        assert_eq!(o.batches()[0].id().0, "A");
        assert_eq!(o.batches()[0].items(), ids(&[1, 2]).as_slice());
        assert_eq!(o.batches_with(ItemId(2)), &[0, 1]);
        assert_eq!(o.batches_with(ItemId(1)), &[0]);
        assert_eq!(loaded.duplicates_dropped, 0);
    }

    #[test]
    fn empty_file_gives_empty_set() {
        let loaded = parse_orders_csv("").unwrap();
        assert!(loaded.orders.is_empty());
        let loaded = parse_orders_json("[]").unwrap();
        assert!(loaded.orders.is_empty());
    }

    #[test]
    fn repeated_item_is_deduplicated() {
        let loaded = parse_orders_csv("A,7\nA,7\nA,3\n").unwrap();
        assert_eq!(loaded.orders.batches()[0].items(), ids(&[3, 7]).as_slice());
        assert_eq!(loaded.duplicates_dropped, 1);
    }

    #[test]
    fn parse_error_reports_line() {
        match parse_orders_csv("batch_id,item_id\nA,1\nB,notanumber\n") {
            Err(OrdersError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_accepts_numeric_and_string_ids() {
        let loaded =
            parse_orders_json(r#"[{"id":"A","items":[1,2]},{"id":5,"items":[2,2]}]"#).unwrap();
        assert_eq!(loaded.orders.batches()[1].id().0, "5");
        assert_eq!(loaded.duplicates_dropped, 1);
    }

    #[test]
    fn unknown_items_listed() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("orders.csv");
        fs::write(&path, "A,1\nA,9\nB,8\n").unwrap();
        let catalog = Catalog::new(vec![Item::new(1, ContainerClass::LARGE_HIGH)]).unwrap();
        match load_orders(&path, &catalog) {
            Err(OrdersError::UnknownItems(v)) => assert_eq!(v, ids(&[8, 9])),
            other => panic!("unexpected {other:?}"),
        }
        let bad = dir.path().join("orders.txt");
        fs::write(&bad, "").unwrap();
        assert!(matches!(
            load_orders(&bad, &catalog),
            Err(OrdersError::UnsupportedExtension(_))
        ));
    }

    #[test]
    fn csv_writer_round_trips() {
        let (a, _) = Batch::new("A", ids(&[4, 1]));
        let (b, _) = Batch::new("B", ids(&[2]));
        let orders = OrderSet::new(vec![a, b]);
        let loaded = parse_orders_csv(&orders_to_csv(&orders)).unwrap();
        assert_eq!(loaded.orders, orders);
    }

    #[test]
    fn frequencies_count_batches() {
        let catalog = Catalog::new(
            (1..=4)
                .map(|i| Item::new(i, ContainerClass::REGULAR_LOW))
                .collect(),
        )
        .unwrap();
        let batches: Vec<Batch> = (0..10)
            .map(|b| {
                let items = if b < 3 { ids(&[1, 2]) } else { ids(&[2]) };
                Batch::new(format!("b{b}"), items).0
            })
            .collect();
        let orders = OrderSet::new(batches);
        let f = pick_frequency(&orders, &catalog);
        assert_eq!(f[&ItemId(1)], 3);
        assert_eq!(f[&ItemId(2)], 10);
        assert_eq!(f[&ItemId(4)], 0);

        let empty = pick_frequency(&OrderSet::default(), &catalog);
        assert!(empty.values().all(|&v| v == 0));
    }
}
