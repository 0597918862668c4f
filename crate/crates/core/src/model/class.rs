use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WidthClass {
    Large,
    Regular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HeightClass {
    High,
    Low,
}

/// Width of one cell in half-units of a regular container width.
pub const CELL_WIDTH_UNITS: u32 = 6;
/// Upper bound on containers in one cell (three regular-low over three regular-low).
pub const MAX_CONTAINERS_PER_CELL: usize = 6;

impl WidthClass {
    /// Footprint in half-units: a large container is one and a half regular widths.
    #[inline]
    pub const fn units(self) -> u32 {
        match self {
            WidthClass::Large => 3,
            WidthClass::Regular => 2,
        }
    }
}

/// One of the four storage container size categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContainerClass {
    pub width: WidthClass,
    pub height: HeightClass,
}

impl ContainerClass {
    pub const LARGE_HIGH: ContainerClass = ContainerClass::new(WidthClass::Large, HeightClass::High);
    pub const LARGE_LOW: ContainerClass = ContainerClass::new(WidthClass::Large, HeightClass::Low);
    pub const REGULAR_HIGH: ContainerClass =
        ContainerClass::new(WidthClass::Regular, HeightClass::High);
    pub const REGULAR_LOW: ContainerClass =
        ContainerClass::new(WidthClass::Regular, HeightClass::Low);

    pub const ALL: [ContainerClass; 4] = [
        ContainerClass::LARGE_HIGH,
        ContainerClass::LARGE_LOW,
        ContainerClass::REGULAR_HIGH,
        ContainerClass::REGULAR_LOW,
    ];

    pub const fn new(width: WidthClass, height: HeightClass) -> Self {
        ContainerClass { width, height }
    }

    /// Dense index in `0..4`, matching the order of [`ContainerClass::ALL`].
    #[inline]
    pub const fn index(self) -> usize {
        let w = match self.width {
            WidthClass::Large => 0,
            WidthClass::Regular => 2,
        };
        let h = match self.height {
            HeightClass::High => 0,
            HeightClass::Low => 1,
        };
        w + h
    }

    pub const fn code(self) -> &'static str {
        match (self.width, self.height) {
            (WidthClass::Large, HeightClass::High) => "L-H",
            (WidthClass::Large, HeightClass::Low) => "L-L",
            (WidthClass::Regular, HeightClass::High) => "R-H",
            (WidthClass::Regular, HeightClass::Low) => "R-L",
        }
    }
}

impl fmt::Display for ContainerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown container class code `{0}` (expected L-H, L-L, R-H or R-L)")]
pub struct UnknownClassCode(pub String);

impl FromStr for ContainerClass {
    type Err = UnknownClassCode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "L-H" => Ok(ContainerClass::LARGE_HIGH),
            "L-L" => Ok(ContainerClass::LARGE_LOW),
            "R-H" => Ok(ContainerClass::REGULAR_HIGH),
            "R-L" => Ok(ContainerClass::REGULAR_LOW),
            other => Err(UnknownClassCode(other.to_string())),
        }
    }
}

impl Serialize for ContainerClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for ContainerClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Width a composition needs, in half-units.
///
/// High containers take a full-height column each. Low containers of the same
/// width pair up two-high, so `n` of them need `ceil(n / 2)` columns.
pub fn composition_width(containers: &[ContainerClass]) -> u32 {
    let mut width = 0;
    let mut low = [0u32; 2];
    for c in containers {
        match c.height {
            HeightClass::High => width += c.width.units(),
            HeightClass::Low => match c.width {
                WidthClass::Large => low[0] += 1,
                WidthClass::Regular => low[1] += 1,
            },
        }
    }
    width + low[0].div_ceil(2) * WidthClass::Large.units()
        + low[1].div_ceil(2) * WidthClass::Regular.units()
}
