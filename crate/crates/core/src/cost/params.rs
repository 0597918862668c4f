use crate::model::{LevelCategories, WarehouseLayout};
use crate::time::Time;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AisleMode {
    /// Right-hand rule: walk to the farthest pick and back.
    #[default]
    Wide,
    /// Unidirectional aisles, always traversed in full.
    Narrow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PassMode {
    /// One routing sweep per lift stop: the lower levels together, then each
    /// visited upper level on its own.
    #[default]
    MultiPass,
    /// A single sweep with picks of all levels merged per aisle.
    Aggregate,
}

/// Time constants of the retrieval model. Times are in seconds in JSON and
/// must be whole deciseconds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostParams {
    /// Charged once per aisle entered in a sweep.
    pub tau_aisle: Time,
    /// Travel per subsection of distance.
    pub tau_s: Time,
    /// Pick time per item, indexed by level.
    pub tau_levels: Vec<Time>,
    /// Fetching or re-adjusting the lift.
    pub tau_lift: Time,
    #[serde(default)]
    pub aisle_mode: AisleMode,
    #[serde(default)]
    pub pass_mode: PassMode,
    pub lower_levels: Vec<u32>,
}

impl Default for CostParams {
    fn default() -> Self {
        CostParams {
            tau_aisle: Time::from_secs(30),
            tau_s: Time::from_secs(2),
            tau_levels: vec![
                Time::from_secs(15),
                Time::from_secs(15),
                Time::from_secs(30),
                Time::from_secs(30),
            ],
            tau_lift: Time::from_secs(120),
            aisle_mode: AisleMode::Wide,
            pass_mode: PassMode::MultiPass,
            lower_levels: vec![0, 1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamsError {
    #[error("{0} must be non-negative")]
    Negative(&'static str),
    #[error("lower_levels must not be empty")]
    NoLowerLevels,
    #[error("tau_levels has {have} entries but the layout has {need} levels")]
    MissingLevelRate { have: usize, need: usize },
}

impl CostParams {
    /// Two-category rates: `lower` for levels in `lower_levels`, `upper` elsewhere.
    pub fn two_category(
        tau_aisle: Time,
        tau_s: Time,
        lower: Time,
        upper: Time,
        tau_lift: Time,
        levels: u32,
        lower_levels: Vec<u32>,
    ) -> Self {
        let tau_levels = (0..levels)
            .map(|l| if lower_levels.contains(&l) { lower } else { upper })
            .collect();
        CostParams {
            tau_aisle,
            tau_s,
            tau_levels,
            tau_lift,
            aisle_mode: AisleMode::Wide,
            pass_mode: PassMode::MultiPass,
            lower_levels,
        }
    }

    pub fn level_categories(&self) -> LevelCategories {
        LevelCategories::new(self.lower_levels.iter().copied())
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        if self.tau_aisle.is_negative() {
            return Err(ParamsError::Negative("tau_aisle"));
        }
        if self.tau_s.is_negative() {
            return Err(ParamsError::Negative("tau_s"));
        }
        if self.tau_lift.is_negative() {
            return Err(ParamsError::Negative("tau_lift"));
        }
        if self.tau_levels.iter().any(|t| t.is_negative()) {
            return Err(ParamsError::Negative("tau_levels"));
        }
        if self.lower_levels.is_empty() {
            return Err(ParamsError::NoLowerLevels);
        }
        Ok(())
    }

    /// [`validate`](Self::validate) plus coverage of every layout level.
    pub fn check_layout(&self, layout: &WarehouseLayout) -> Result<(), ParamsError> {
        self.validate()?;
        let need = layout.level_count() as usize;
        if self.tau_levels.len() < need {
            return Err(ParamsError::MissingLevelRate {
                have: self.tau_levels.len(),
                need,
            });
        }
        Ok(())
    }
}
