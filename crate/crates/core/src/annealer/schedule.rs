use serde::{Deserialize, Serialize};

/// Geometric cooling schedule with stopping rules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnealSchedule {
    pub t0: f64,
    pub alpha: f64,
    pub iters_per_temp: u64,
    pub t_min: f64,
    /// Temperature steps without progress before stopping; 0 disables the rule.
    pub stall_steps: u32,
    /// Probability of proposing a subsection swap instead of a container swap.
    pub move_mix: f64,
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        AnnealSchedule {
            t0: 1e7,
            alpha: 0.95,
            iters_per_temp: 1000,
            t_min: 1e-2,
            stall_steps: 20,
            move_mix: 0.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScheduleError {
    #[error("temperatures must satisfy t0 >= t_min > 0 (got t0 = {t0}, t_min = {t_min})")]
    Temperatures { t0: f64, t_min: f64 },
    #[error("cooling constant {0} is outside (0, 1)")]
    Alpha(f64),
    #[error("iters_per_temp must be at least 1")]
    Iterations,
    #[error("move_mix {0} is outside [0, 1]")]
    MoveMix(f64),
}

impl AnnealSchedule {
    /// Default schedule with `iters_per_temp = max(1000, 4 * items)`.
    pub fn for_catalog(items: usize) -> Self {
        AnnealSchedule {
            iters_per_temp: (4 * items as u64).max(1000),
            ..AnnealSchedule::default()
        }
    }

    pub fn validate(&self) -> Result<(), ScheduleError> {
        if !(self.t_min > 0.0 && self.t0 >= self.t_min && self.t0.is_finite()) {
            return Err(ScheduleError::Temperatures {
                t0: self.t0,
                t_min: self.t_min,
            });
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(ScheduleError::Alpha(self.alpha));
        }
        if self.iters_per_temp == 0 {
            return Err(ScheduleError::Iterations);
        }
        if !(0.0..=1.0).contains(&self.move_mix) {
            return Err(ScheduleError::MoveMix(self.move_mix));
        }
        Ok(())
    }

    /// Number of temperature steps before the floor is reached, ignoring stalls.
    pub fn max_steps(&self) -> u64 {
        let mut t = self.t0;
        let mut steps = 0;
        while t > self.t_min {
            t *= self.alpha;
            steps += 1;
        }
        steps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_spans_about_four_hundred_steps() {
        // ln(1e7 / 1e-2) / -ln(0.95) = 404.02
        assert_eq!(AnnealSchedule::default().max_steps(), 405);
        assert_eq!(AnnealSchedule::for_catalog(1250).iters_per_temp, 5000);
        assert_eq!(AnnealSchedule::for_catalog(10).iters_per_temp, 1000);
    }

    #[test]
    fn validation() {
        assert!(AnnealSchedule::default().validate().is_ok());
        let bad = |f: fn(&mut AnnealSchedule)| {
            let mut s = AnnealSchedule::default();
            f(&mut s);
            s.validate().is_err()
        };
        assert!(bad(|s| s.alpha = 1.0));
        assert!(bad(|s| s.alpha = 0.0));
        assert!(bad(|s| s.t_min = 0.0));
        assert!(bad(|s| s.t0 = 1e-3));
        assert!(bad(|s| s.iters_per_temp = 0));
        assert!(bad(|s| s.move_mix = 1.5));
        let mut equal = AnnealSchedule::default();
        equal.t_min = equal.t0;
        assert!(equal.validate().is_ok());
        assert_eq!(equal.max_steps(), 0);
    }

    #[test]
    fn json_shape() {
        let s: AnnealSchedule = serde_json::from_str(
            r#"{"t0":1e7,"alpha":0.95,"iters_per_temp":5000,"t_min":0.01,"stall_steps":20,"move_mix":0.2}"#,
        )
        .unwrap();
        assert_eq!(s.iters_per_temp, 5000);
    }
}
