//! Layout JSON, catalog CSV and assignment CSV formats.

use super::{
    Assignment, Catalog, CellKey, ContainerClass, DuplicateItem, Item, ItemId, Placement,
    SlotAddress, WarehouseLayout,
};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("duplicate composition for cell {0}")]
    DuplicateComposition(CellKey),
    #[error(transparent)]
    DuplicateItem(#[from] DuplicateItem),
}

impl FormatError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        FormatError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    fn csv(err: csv::Error, fallback_line: u64) -> Self {
        let line = err
            .position()
            .map(|p| p.line())
            .unwrap_or(fallback_line);
        FormatError::Csv {
            line,
            message: err.to_string(),
        }
    }
}

pub(crate) fn read_to_string(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|e| FormatError::io(path, e))
}

pub(crate) fn write_string(path: &Path, contents: &str) -> Result<(), FormatError> {
    fs::write(path, contents).map_err(|e| FormatError::io(path, e))
}

#[derive(Debug, Serialize, Deserialize)]
struct LayoutFile {
    aisles: Vec<u32>,
    levels: u32,
    #[serde(default)]
    compositions: Vec<CompositionEntry>,
    #[serde(default)]
    blocked: Vec<[u32; 3]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CompositionEntry {
    aisle: u32,
    subsection: u32,
    level: u32,
    containers: Vec<ContainerClass>,
}

pub fn layout_from_json(text: &str) -> Result<WarehouseLayout, FormatError> {
    let file: LayoutFile = serde_json::from_str(text)?;
    let mut compositions = BTreeMap::new();
    for entry in file.compositions {
        let key = CellKey::new(entry.aisle, entry.subsection, entry.level);
        if compositions.insert(key, entry.containers).is_some() {
            return Err(FormatError::DuplicateComposition(key));
        }
    }
    let blocked: BTreeSet<CellKey> = file
        .blocked
        .into_iter()
        .map(|[a, s, l]| CellKey::new(a, s, l))
        .collect();
    Ok(WarehouseLayout::new(file.aisles, file.levels, compositions, blocked))
}

/// Canonical JSON: compositions and blocked cells in cell order, empty
/// compositions omitted.
pub fn layout_to_json(layout: &WarehouseLayout) -> String {
    let file = LayoutFile {
        aisles: layout.aisle_lengths().to_vec(),
        levels: layout.level_count(),
        compositions: layout
            .compositions()
            .iter()
            .filter(|(_, c)| !c.is_empty())
            .map(|(k, c)| CompositionEntry {
                aisle: k.aisle,
                subsection: k.subsection,
                level: k.level,
                containers: c.clone(),
            })
            .collect(),
        blocked: layout
            .blocked()
            .iter()
            .map(|k| [k.aisle, k.subsection, k.level])
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("layout serializes");
    out.push('\n');
    out
}

pub fn read_layout(path: impl AsRef<Path>) -> Result<WarehouseLayout, FormatError> {
    layout_from_json(&read_to_string(path.as_ref())?)
}

pub fn write_layout(path: impl AsRef<Path>, layout: &WarehouseLayout) -> Result<(), FormatError> {
    write_string(path.as_ref(), &layout_to_json(layout))
}

#[derive(Debug, Serialize, Deserialize)]
struct CatalogRow {
    item_id: u64,
    container_class: ContainerClass,
}

pub fn read_catalog_from(reader: impl Read) -> Result<Catalog, FormatError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut items = Vec::new();
    for (i, row) in rdr.deserialize::<CatalogRow>().enumerate() {
        let row = row.map_err(|e| FormatError::csv(e, i as u64 + 2))?;
        items.push(Item::new(row.item_id, row.container_class));
    }
    Ok(Catalog::new(items)?)
}

pub fn write_catalog_to(writer: impl Write, catalog: &Catalog) -> Result<(), FormatError> {
    let mut wtr = csv::Writer::from_writer(writer);
    for item in catalog.items() {
        wtr.serialize(CatalogRow {
            item_id: item.id.0,
            container_class: item.container_class,
        })
        .map_err(|e| FormatError::csv(e, 0))?;
    }
    wtr.flush().map_err(|e| FormatError::Io {
        path: PathBuf::new(),
        source: e,
    })
}

pub fn read_catalog(path: impl AsRef<Path>) -> Result<Catalog, FormatError> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| FormatError::io(path, e))?;
    read_catalog_from(file)
}

pub fn write_catalog(path: impl AsRef<Path>, catalog: &Catalog) -> Result<(), FormatError> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| FormatError::io(path, e))?;
    write_catalog_to(file, catalog)
}

#[derive(Debug, Serialize, Deserialize)]
struct PlacementRow {
    item_id: u64,
    aisle: u32,
    subsection: u32,
    level: u32,
    stack_position: u32,
}

pub fn read_placements_from(reader: impl Read) -> Result<Vec<Placement>, FormatError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<PlacementRow>().enumerate() {
        let row = row.map_err(|e| FormatError::csv(e, i as u64 + 2))?;
        out.push(Placement {
            item: ItemId(row.item_id),
            slot: SlotAddress::new(row.aisle, row.subsection, row.level, row.stack_position),
        });
    }
    Ok(out)
}

pub fn write_placements_to(writer: impl Write, placements: &[Placement]) -> Result<(), FormatError> {
    let mut wtr = csv::Writer::from_writer(writer);
    for p in placements {
        wtr.serialize(PlacementRow {
            item_id: p.item.0,
            aisle: p.slot.aisle,
            subsection: p.slot.subsection,
            level: p.slot.level,
            stack_position: p.slot.stack_position,
        })
        .map_err(|e| FormatError::csv(e, 0))?;
    }
    wtr.flush().map_err(|e| FormatError::Io {
        path: PathBuf::new(),
        source: e,
    })
}

pub fn read_placements(path: impl AsRef<Path>) -> Result<Vec<Placement>, FormatError> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| FormatError::io(path, e))?;
    read_placements_from(file)
}

/// Writes the assignment's placements (physical addresses, ordered by item id).
pub fn write_assignment(
    path: impl AsRef<Path>,
    layout: &WarehouseLayout,
    assignment: &Assignment,
) -> Result<(), FormatError> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| FormatError::io(path, e))?;
    write_placements_to(file, &assignment.placements(layout))
}
