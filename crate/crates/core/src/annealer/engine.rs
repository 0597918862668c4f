use super::moves::{self, Move, MoveError, MoveKind, MoveSampler};
use super::schedule::{AnnealSchedule, ScheduleError};
use crate::cost::{total_time, CostError, CostParams, CostState, StateError};
use crate::model::{validate_assignment, Assignment, ValidationReport, WarehouseLayout};
use crate::orders::OrderSet;
use crate::rng::{self, streams};
use crate::time::Time;
use rand::Rng as _;
use serde::Serialize;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnnealError {
    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("initial assignment is not admissible:\n{0}")]
    Inadmissible(ValidationReport),
    #[error("cached best cost {cached} differs from recomputed {fresh}")]
    CacheMismatch { cached: Time, fresh: Time },
    #[error("no restart seeds given")]
    NoSeeds,
}

/// Metropolis criterion: improvements always pass; a deterioration `delta`
/// passes when `u < exp(-delta / temperature)`.
pub fn accept(delta: f64, temperature: f64, u: f64) -> Result<bool, AnnealError> {
    if !(temperature > 0.0) {
        return Err(AnnealError::NonPositiveTemperature(temperature));
    }
    if delta <= 0.0 {
        return Ok(true);
    }
    Ok(u < (-delta / temperature).exp())
}

/// Summary of one temperature step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TempRecord {
    pub step: u64,
    pub temperature: f64,
    pub acceptance_rate: f64,
    pub current_cost: Time,
    pub best_cost: Time,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub seed: u64,
    pub records: Vec<TempRecord>,
    pub iterations: u64,
    pub initial_cost: Time,
    pub best_cost: Time,
    pub wall_time: Duration,
}

impl RunTrace {
    /// CSV with columns `step,T,acceptance_rate,current_cost,best_cost`
    /// (costs in seconds).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,T,acceptance_rate,current_cost,best_cost\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{:e},{},{},{}\n",
                r.step, r.temperature, r.acceptance_rate, r.current_cost, r.best_cost
            ));
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_csv().as_bytes())
    }
}

/// State visible to an [`Observer`] after each proposal.
#[derive(Debug)]
pub struct IterationEvent<'s> {
    pub iteration: u64,
    pub step: u64,
    pub temperature: f64,
    pub mv: Move,
    pub delta: Time,
    pub accepted: bool,
    pub current_cost: Time,
    pub best_cost: Time,
    pub assignment: &'s Assignment,
}

pub trait Observer {
    fn on_iteration(&mut self, _event: &IterationEvent<'_>) {}
    fn on_step(&mut self, _record: &TempRecord) {}
}

impl Observer for () {}

/// A single annealing chain over a fixed problem.
#[derive(Debug, Clone)]
pub struct Annealer<'a> {
    layout: &'a WarehouseLayout,
    orders: &'a OrderSet,
    params: &'a CostParams,
    schedule: AnnealSchedule,
}

impl<'a> Annealer<'a> {
    pub fn new(
        layout: &'a WarehouseLayout,
        orders: &'a OrderSet,
        params: &'a CostParams,
        schedule: AnnealSchedule,
    ) -> Self {
        Annealer {
            layout,
            orders,
            params,
            schedule,
        }
    }

    pub fn schedule(&self) -> &AnnealSchedule {
        &self.schedule
    }

    pub fn run(&self, initial: Assignment, seed: u64) -> Result<(Assignment, RunTrace), AnnealError> {
        self.run_observed(initial, seed, &mut ())
    }

    /// Runs the chain and returns the best assignment seen, which is never
    /// worse than `initial`.
    pub fn run_observed(
        &self,
        initial: Assignment,
        seed: u64,
        observer: &mut dyn Observer,
    ) -> Result<(Assignment, RunTrace), AnnealError> {
        let started = Instant::now();
        let schedule = &self.schedule;
        schedule.validate()?;
        let report = validate_assignment(self.layout, initial.catalog(), &initial);
        if !report.is_empty() {
            return Err(AnnealError::Inadmissible(report));
        }

        let sampler = MoveSampler::new(self.layout, &initial);
        let mut kind_rng = rng::stream(seed, streams::MOVE_KIND);
        let mut container_rng = rng::stream(seed, streams::CONTAINER_SWAP);
        let mut subsection_rng = rng::stream(seed, streams::SUBSECTION_SWAP);
        let mut accept_rng = rng::stream(seed, streams::ACCEPTANCE);
        let can_container = sampler.can_propose(MoveKind::ContainerSwap);
        let can_subsection = sampler.can_propose(MoveKind::SubsectionSwap);

        let mut state = CostState::new(self.layout, self.orders, self.params, initial)?;
        let initial_cost = state.total();
        let mut best_cost = initial_cost;
        // None while the current state is itself a best state
        let mut best: Option<Assignment> = None;
        let mut records = Vec::new();
        let mut iteration = 0u64;
        let mut stalled = 0u32;
        let mut temperature = schedule.t0;
        let mut step = 0u64;

        while temperature > schedule.t_min && (can_container || can_subsection) {
            let step_start = state.total();
            let best_before = best_cost;
            let mut accepted = 0u64;
            for _ in 0..schedule.iters_per_temp {
                let wants_subsection = kind_rng.gen::<f64>() < schedule.move_mix;
                let kind = match (wants_subsection, can_container, can_subsection) {
                    (true, _, true) | (false, false, true) => MoveKind::SubsectionSwap,
                    _ => MoveKind::ContainerSwap,
                };
                let mv = match kind {
                    MoveKind::ContainerSwap => sampler.propose_container_swap(&mut container_rng)?,
                    MoveKind::SubsectionSwap => {
                        sampler.propose_subsection_swap(&mut subsection_rng)?
                    }
                };
                let delta = state.try_move(mv)?;
                let ok = delta <= Time::ZERO
                    || accept(delta.as_secs_f64(), temperature, accept_rng.gen::<f64>())?;
                if ok {
                    if best.is_none() && delta > Time::ZERO {
                        // the move is already applied; undo it on the copy
                        let mut snapshot = state.assignment().clone();
                        moves::apply_unchecked(&mut snapshot, &mv);
                        best = Some(snapshot);
                    }
                    state.commit()?;
                    accepted += 1;
                    if state.total() < best_cost {
                        best_cost = state.total();
                        best = None;
                    }
                } else {
                    state.rollback()?;
                }
                iteration += 1;
                observer.on_iteration(&IterationEvent {
                    iteration,
                    step,
                    temperature,
                    mv,
                    delta,
                    accepted: ok,
                    current_cost: state.total(),
                    best_cost,
                    assignment: state.assignment(),
                });
            }

            let record = TempRecord {
                step,
                temperature,
                acceptance_rate: accepted as f64 / schedule.iters_per_temp as f64,
                current_cost: state.total(),
                best_cost,
            };
            observer.on_step(&record);
            records.push(record);

            if best_cost < best_before || state.total() < step_start {
                stalled = 0;
            } else {
                stalled += 1;
            }
            temperature *= schedule.alpha;
            step += 1;
            if schedule.stall_steps > 0 && stalled >= schedule.stall_steps {
                break;
            }
        }

        let best = best.unwrap_or_else(|| state.into_assignment());
        let fresh = total_time(self.layout, &best, self.orders, self.params)?;
        if fresh != best_cost {
            return Err(AnnealError::CacheMismatch {
                cached: best_cost,
                fresh,
            });
        }
        Ok((
            best,
            RunTrace {
                seed,
                records,
                iterations: iteration,
                initial_cost,
                best_cost,
                wall_time: started.elapsed(),
            },
        ))
    }
}

/// Runs one chain; see [`Annealer::run`].
pub fn anneal(
    layout: &WarehouseLayout,
    orders: &OrderSet,
    params: &CostParams,
    schedule: &AnnealSchedule,
    initial: Assignment,
    seed: u64,
) -> Result<(Assignment, RunTrace), AnnealError> {
    Annealer::new(layout, orders, params, schedule.clone()).run(initial, seed)
}

/// Result of independent chains started from the same assignment.
#[derive(Debug, Clone)]
pub struct RestartOutcome {
    pub best: Assignment,
    pub trace: RunTrace,
    /// Index into the seed list of the winning chain.
    pub best_index: usize,
    /// Best cost of every chain, in seed order.
    pub costs: Vec<Time>,
}

/// Runs one chain per seed on up to `threads` threads and keeps the lowest
/// cost (earliest seed on ties). The outcome does not depend on `threads`.
pub fn anneal_restarts(
    layout: &WarehouseLayout,
    orders: &OrderSet,
    params: &CostParams,
    schedule: &AnnealSchedule,
    initial: &Assignment,
    seeds: &[u64],
    threads: usize,
) -> Result<RestartOutcome, AnnealError> {
    if seeds.is_empty() {
        return Err(AnnealError::NoSeeds);
    }
    let annealer = Annealer::new(layout, orders, params, schedule.clone());
    let threads = threads.clamp(1, seeds.len());
    let mut results: Vec<Option<Result<(Assignment, RunTrace), AnnealError>>> =
        (0..seeds.len()).map(|_| None).collect();

    if threads == 1 {
        for (slot, &seed) in results.iter_mut().zip(seeds) {
            *slot = Some(annealer.run(initial.clone(), seed));
        }
    } else {
        let annealer = &annealer;
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    scope.spawn(move || {
                        (t..seeds.len())
                            .step_by(threads)
                            .map(|i| (i, annealer.run(initial.clone(), seeds[i])))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for handle in handles {
                for (i, r) in handle.join().expect("annealing thread panicked") {
                    results[i] = Some(r);
                }
            }
        });
    }

    let mut outcomes = Vec::with_capacity(seeds.len());
    for r in results {
        outcomes.push(r.expect("every seed ran")?);
    }
    let costs: Vec<Time> = outcomes.iter().map(|(_, t)| t.best_cost).collect();
    let best_index = costs
        .iter()
        .enumerate()
        .min_by_key(|(i, c)| (**c, *i))
        .map(|(i, _)| i)
        .expect("non-empty");
    let (best, trace) = outcomes.swap_remove(best_index);
    Ok(RestartOutcome {
        best,
        trace,
        best_index,
        costs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::random_assignment;
    use crate::synthetic::small_instance;
    use std::sync::Arc;

    fn quick() -> AnnealSchedule {
        AnnealSchedule {
            t0: 500.0,
            alpha: 0.8,
            iters_per_temp: 200,
            t_min: 1.0,
            stall_steps: 0,
            move_mix: 0.3,
        }
    }

    #[test]
    fn metropolis_examples() {
        assert!(accept(-5.0, 1e-3, 0.999).unwrap());
        assert!(accept(100.0, 100.0, 0.30).unwrap());
        assert!(!accept(100.0, 100.0, 0.50).unwrap());
        assert_eq!(accept(1.0, 0.0, 0.5), Err(AnnealError::NonPositiveTemperature(0.0)));
    }

    #[test]
    fn degenerate_schedule_returns_initial() {
        let inst = small_instance(1);
        let params = CostParams::default();
        let a = random_assignment(&inst.layout, Arc::new(inst.catalog.clone()), 1).unwrap();
        let schedule = AnnealSchedule { t0: 1.0, t_min: 1.0, ..quick() };
        let (best, trace) = anneal(&inst.layout, &inst.orders, &params, &schedule, a.clone(), 9).unwrap();
        assert_eq!(best, a);
        assert!(trace.records.is_empty());
        assert_eq!(trace.iterations, 0);
    }

    #[test]
    fn same_seed_same_run() {
        let inst = small_instance(2);
        let params = CostParams::default();
        let a = random_assignment(&inst.layout, Arc::new(inst.catalog.clone()), 2).unwrap();
        let run = || anneal(&inst.layout, &inst.orders, &params, &quick(), a.clone(), 11).unwrap();
        let (b1, t1) = run();
        let (b2, t2) = run();
        assert_eq!(b1, b2);
        assert_eq!(t1.records, t2.records);
        assert!(t1.best_cost <= t1.initial_cost);
        assert!(t1.records.windows(2).all(|w| w[1].best_cost <= w[0].best_cost));
        assert_eq!(total_time(&inst.layout, &b1, &inst.orders, &params).unwrap(), t1.best_cost);
    }

    #[test]
    fn restarts_do_not_depend_on_threads() {
        let inst = small_instance(3);
        let params = CostParams::default();
        let a = random_assignment(&inst.layout, Arc::new(inst.catalog.clone()), 3).unwrap();
        let seeds = [5, 6, 7];
        let run = |threads| {
            anneal_restarts(&inst.layout, &inst.orders, &params, &quick(), &a, &seeds, threads).unwrap()
        };
        let serial = run(1);
        let parallel = run(3);
        assert_eq!(serial.costs, parallel.costs);
        assert_eq!(serial.best, parallel.best);
        assert_eq!(serial.best_index, parallel.best_index);
        let min = *serial.costs.iter().min().unwrap();
        assert_eq!(serial.trace.best_cost, min);
        assert_eq!(
            anneal_restarts(&inst.layout, &inst.orders, &params, &quick(), &a, &[], 1).unwrap_err(),
            AnnealError::NoSeeds
        );
    }

    #[test]
    fn trace_csv_header() {
        let trace = RunTrace {
            seed: 0,
            records: vec![TempRecord {
                step: 0,
                temperature: 1e7,
                acceptance_rate: 0.5,
                current_cost: Time::from_secs(12),
                best_cost: Time::from_ticks(105),
            }],
            iterations: 1,
            initial_cost: Time::ZERO,
            best_cost: Time::ZERO,
            wall_time: Duration::ZERO,
        };
        assert_eq!(
            trace.to_csv(),
            "step,T,acceptance_rate,current_cost,best_cost\n0,1e7,0.5,12,10.5\n"
        );
    }
}
