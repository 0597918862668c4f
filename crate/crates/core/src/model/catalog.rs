use super::ContainerClass;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

#[repr(transparent)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ItemId(pub u64);

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u64> for ItemId {
    fn from(value: u64) -> Self {
        ItemId(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Item {
    pub id: ItemId,
    pub container_class: ContainerClass,
}

impl Item {
    pub fn new(id: impl Into<ItemId>, container_class: ContainerClass) -> Self {
        Item {
            id: id.into(),
            container_class,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("duplicate item id {0} in catalog")]
pub struct DuplicateItem(pub ItemId);

/// The item universe. Items keep their insertion order; `index_of` maps ids to
/// that dense order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Catalog {
    items: Vec<Item>,
    index: HashMap<ItemId, usize>,
}

impl Catalog {
    pub fn new(items: Vec<Item>) -> Result<Self, DuplicateItem> {
        let mut index = HashMap::with_capacity(items.len());
        for (i, item) in items.iter().enumerate() {
            if index.insert(item.id, i).is_some() {
                return Err(DuplicateItem(item.id));
            }
        }
        Ok(Catalog { items, index })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.items.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    #[inline]
    pub fn items(&self) -> &[Item] {
        &self.items
    }

    #[inline]
    pub fn item(&self, index: usize) -> &Item {
        &self.items[index]
    }

    #[inline]
    pub fn index_of(&self, id: ItemId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn get(&self, id: ItemId) -> Option<&Item> {
        self.index_of(id).map(|i| &self.items[i])
    }

    pub fn count_by_class(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for item in &self.items {
            counts[item.container_class.index()] += 1;
        }
        counts
    }
}
