//! Exact makespan minimization over all baking orders.
//!
//! Every schedule has some order in which items first enter the container,
//! and for a fixed order the greedy scheduler is optimal; minimizing the
//! greedy makespan over all distinct orders therefore solves the whole
//! problem. Orders that only permute items with identical dimensions and
//! bake time produce identical schedules, so one representative per
//! equivalence class is enumerated.
//!
//! Evaluation runs in fixed-size batches. Within a batch permutations may be
//! evaluated on worker threads, but results are reduced in enumeration order
//! by `(makespan, order)` minimum, so the outcome — including the tie-break
//! to the lexicographically smallest order and all counters — is byte-for-
//! byte identical for any worker count.

use rayon::prelude::*;
use thiserror::Error;

use crate::geometry::{Container, ItemId};
use crate::scheduler::{self, BakeItem, SchedError, Schedule};
use crate::Scalar;

/// Permutations handed to the evaluator between two pruning checks; fixed so
/// counters do not depend on the worker count.
const BATCH: usize = 256;

/// Errors raised by the exhaustive solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Sched(#[from] SchedError),
    #[error("{n} items would mean up to {n}! greedy runs; raise the guard or force")]
    GuardExceeded { n: usize, guard: usize },
}

/// A problem instance: the container and the items to bake, ids unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub container: Container<Scalar>,
    pub items: Vec<BakeItem>,
}

impl Instance {
    pub fn new(container: Container<Scalar>, items: Vec<BakeItem>) -> Result<Self, SchedError> {
        for (i, item) in items.iter().enumerate() {
            if items[..i].iter().any(|other| other.id == item.id) {
                return Err(SchedError::DuplicateItem(item.id.clone()));
            }
        }
        Ok(Instance { container, items })
    }
}

/// Options for [`solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Stop enumerating once a schedule meets the lower bound exactly. Off by
    /// default: the exhaustive sweep is the reference behavior.
    pub prune: bool,
    /// Worker threads for batch evaluation; 1 means fully sequential.
    pub workers: usize,
    /// Refuse instances with more items than this unless `force` is set.
    pub guard: usize,
    pub force: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            prune: false,
            workers: 1,
            guard: 10,
            force: false,
        }
    }
}

/// Outcome of the exhaustive solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub best: Schedule,
    pub best_order: Vec<ItemId>,
    pub permutations_evaluated: u64,
    pub permutations_pruned: u64,
    pub lower_bound: Scalar,
}

/// A makespan no schedule can beat: every item must bake for its own time,
/// and the total space-time demand `sum(volume_i * T_i)` cannot exceed
/// container volume times the makespan.
pub fn lower_bound(instance: &Instance) -> Scalar {
    let zero = crate::scalar(0);
    let max_time = instance
        .items
        .iter()
        .map(|i| i.bake_time.clone())
        .max()
        .unwrap_or_else(|| zero.clone());
    let demand = instance
        .items
        .iter()
        .fold(zero, |acc, i| acc + i.dims.volume() * i.bake_time.clone());
    let volume_bound = demand / instance.container.volume();
    max_time.max(volume_bound)
}

/// Streams every distinct baking order as index sequences into the item
/// slice, in lexicographic order over the sequences.
///
/// Items identical in dimensions and bake time are interchangeable, so only
/// the canonical representative of each equivalence class of orders is
/// yielded: the one where such items appear in their input order.
pub struct PermutationStream {
    class_of: Vec<usize>,
    class_sizes: Vec<usize>,
    used: Vec<bool>,
    prefix: Vec<usize>,
    started: bool,
    done: bool,
}

/// Builds the stream for `items`. An empty slice yields a single empty order.
pub fn permutation_stream(items: &[BakeItem]) -> PermutationStream {
    let mut class_reps: Vec<usize> = Vec::new();
    let mut class_of: Vec<usize> = Vec::with_capacity(items.len());
    for (idx, item) in items.iter().enumerate() {
        let class = class_reps
            .iter()
            .position(|&rep| items[rep].dims == item.dims && items[rep].bake_time == item.bake_time)
            .unwrap_or_else(|| {
                class_reps.push(idx);
                class_reps.len() - 1
            });
        class_of.push(class);
    }
    let mut class_sizes = vec![0usize; class_reps.len()];
    for &class in &class_of {
        class_sizes[class] += 1;
    }
    PermutationStream {
        used: vec![false; class_of.len()],
        prefix: Vec::with_capacity(class_of.len()),
        class_of,
        class_sizes,
        started: false,
        done: false,
    }
}

impl PermutationStream {
    /// Number of distinct orders: the multinomial coefficient
    /// `n! / prod(class size!)`, saturating at `u64::MAX`.
    pub fn total_count(&self) -> u64 {
        let n = self.class_of.len() as u128;
        let mut numerator: u128 = 1;
        for k in 1..=n {
            numerator = match numerator.checked_mul(k) {
                Some(v) => v,
                None => return u64::MAX,
            };
        }
        let mut denominator: u128 = 1;
        for &size in &self.class_sizes {
            for k in 1..=(size as u128) {
                denominator *= k;
            }
        }
        u64::try_from(numerator / denominator).unwrap_or(u64::MAX)
    }

    /// An index may enter the sequence only if no earlier item of its class
    /// is still waiting; that pins class members to their input order.
    fn eligible(&self, i: usize) -> bool {
        !self.used[i] && (0..i).all(|j| self.class_of[j] != self.class_of[i] || self.used[j])
    }

    fn first_eligible_after(&self, after: Option<usize>) -> Option<usize> {
        let lo = after.map_or(0, |a| a + 1);
        (lo..self.class_of.len()).find(|&i| self.eligible(i))
    }

    /// Extends the prefix with the smallest eligible index at every
    /// remaining position.
    fn fill_rest(&mut self) {
        while self.prefix.len() < self.class_of.len() {
            let i = self
                .first_eligible_after(None)
                .expect("an eligible index exists while the prefix is short");
            self.used[i] = true;
            self.prefix.push(i);
        }
    }
}

impl Iterator for PermutationStream {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_rest();
            return Some(self.prefix.clone());
        }
        // Backtrack to the deepest position that still has a larger
        // eligible candidate, take it, and refill greedily.
        while let Some(last) = self.prefix.pop() {
            self.used[last] = false;
            if let Some(next) = self.first_eligible_after(Some(last)) {
                self.used[next] = true;
                self.prefix.push(next);
                self.fill_rest();
                return Some(self.prefix.clone());
            }
        }
        self.done = true;
        None
    }
}

/// Minimizes the makespan over every distinct baking order by running the
/// greedy scheduler on each. Ties go to the lexicographically smallest order.
/// With `prune`, enumeration stops after the first batch whose best schedule
/// meets the lower bound exactly; skipped permutations are counted, not
/// evaluated.
pub fn solve(instance: &Instance, options: &SolveOptions) -> Result<SolveResult, SolveError> {
    let n = instance.items.len();
    if n > options.guard && !options.force {
        return Err(SolveError::GuardExceeded {
            n,
            guard: options.guard,
        });
    }
    for item in &instance.items {
        if !crate::packer::item_fits(&instance.container, &item.dims) {
            return Err(SolveError::Sched(SchedError::ItemCannotFit {
                id: item.id.clone(),
            }));
        }
    }

    let bound = lower_bound(instance);
    let mut stream = permutation_stream(&instance.items);
    let total = stream.total_count();

    let pool = (options.workers > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.workers)
            .build()
            .expect("worker pool")
    });

    let evaluate = |order: &[usize]| -> Schedule {
        let permuted: Vec<BakeItem> = order.iter().map(|&i| instance.items[i].clone()).collect();
        scheduler::greedy_schedule(&instance.container, &permuted)
            .expect("items were checked to fit")
    };

    let mut best: Option<(Schedule, Vec<usize>)> = None;
    let mut evaluated: u64 = 0;
    loop {
        let batch: Vec<Vec<usize>> = stream.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        let schedules: Vec<Schedule> = match &pool {
            Some(pool) => pool.install(|| batch.par_iter().map(|o| evaluate(o)).collect()),
            None => batch.iter().map(|o| evaluate(o)).collect(),
        };
        evaluated += batch.len() as u64;
        for (order, schedule) in batch.into_iter().zip(schedules) {
            let better = match &best {
                None => true,
                Some((incumbent, _)) => schedule.makespan < incumbent.makespan,
            };
            if better {
                best = Some((schedule, order));
            }
        }
        if options.prune {
            if let Some((incumbent, _)) = &best {
                if incumbent.makespan == bound {
                    break;
                }
            }
        }
    }

    let (best, best_order) = best.expect("at least one order is always enumerated");
    Ok(SolveResult {
        best,
        best_order: best_order
            .into_iter()
            .map(|i| instance.items[i].id.clone())
            .collect(),
        permutations_evaluated: evaluated,
        permutations_pruned: total.saturating_sub(evaluated),
        lower_bound: bound,
    })
}
