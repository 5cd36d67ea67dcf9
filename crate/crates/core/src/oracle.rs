//! Brute-force ground-truth checkers for small all-integer instances.
//!
//! These are deliberately naive and structurally unrelated to the solver:
//! the packing oracle scans every integer position instead of canonical
//! subset sums, and the schedule oracle enumerates every integer start-time
//! assignment and checks each unit time cell instead of simulating beats.
//! They share nothing with the solver beyond the scalar type and the
//! axis-aligned box overlap primitive.
//!
//! Integer positions suffice for the packing verdict because a feasible
//! integer instance also admits a corner-supported layout, whose coordinates
//! are sums of integer extents. Likewise the schedule oracle's integer start
//! times contain the greedy scheduler's event times on integer instances, so
//! agreement on makespans is meaningful there; no claim is made about
//! schedules with fractional start times.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::geometry::AxisBox;
use crate::num::as_integer;
use crate::optimizer::Instance;
use crate::ItemId;

/// Errors raised by the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} is not a positive integer")]
    NonInteger { what: String },
    #[error("instance has {n} items, above the oracle cap of {cap}")]
    TooManyItems { n: usize, cap: usize },
    #[error("total bake time {total} exceeds the oracle cap of {cap}")]
    TotalTimeExceeded { total: i64, cap: i64 },
    #[error("unknown item `{0}` in order")]
    UnknownItem(ItemId),
}

/// Runtime caps keeping the exhaustive searches at desk scale. Raise them for
/// deeper audits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_items: usize,
    pub max_total_time: i64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_items: 4,
            max_total_time: 8,
        }
    }
}

/// An instance whose dimensions and bake times are all positive integers,
/// verified on construction. The oracles only operate on these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerInstance {
    container: [i64; 3],
    items: Vec<IntegerItem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerItem {
    pub id: ItemId,
    pub dims: [i64; 3],
    pub bake_time: i64,
}

impl IntegerInstance {
    pub fn from_instance(inst: &Instance) -> Result<Self, OracleError> {
        let c = &inst.container;
        let container = [
            int_of(c.extent(crate::Axis::X), "container length")?,
            int_of(c.extent(crate::Axis::Y), "container width")?,
            int_of(c.extent(crate::Axis::Z), "container height")?,
        ];
        let items = inst
            .items
            .iter()
            .map(|item| {
                let what = format!("item `{}`", item.id);
                Ok(IntegerItem {
                    id: item.id.clone(),
                    dims: [
                        int_of(item.dims.l(), &what)?,
                        int_of(item.dims.w(), &what)?,
                        int_of(item.dims.h(), &what)?,
                    ],
                    bake_time: int_of(&item.bake_time, &format!("{what} bake time"))?,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntegerInstance { container, items })
    }

    pub fn container(&self) -> [i64; 3] {
        self.container
    }

    pub fn items(&self) -> &[IntegerItem] {
        &self.items
    }

    pub fn total_time(&self) -> i64 {
        self.items.iter().map(|i| i.bake_time).sum()
    }
}

fn int_of(value: &crate::Scalar, what: &str) -> Result<i64, OracleError> {
    as_integer(value)
        .and_then(|n| n.to_i64())
        .filter(|n| *n > 0)
        .ok_or_else(|| OracleError::NonInteger {
            what: what.to_string(),
        })
}

/// Exhaustive packing check over every integer position (and, when
/// `with_rotations`, every distinct axis permutation of each item's
/// dimensions): true iff some placement keeps all boxes inside the container
/// and pairwise non-overlapping.
pub fn grid_pack_oracle(container: [i64; 3], dims: &[[i64; 3]], with_rotations: bool) -> bool {
    let orientations: Vec<Vec<[i64; 3]>> = dims
        .iter()
        .map(|d| {
            if with_rotations {
                distinct_permutations(*d)
            } else {
                vec![*d]
            }
        })
        .collect();
    let mut placed: Vec<AxisBox<i64>> = Vec::with_capacity(dims.len());
    place_next(container, &orientations, 0, &mut placed)
}

fn distinct_permutations(d: [i64; 3]) -> Vec<[i64; 3]> {
    let [a, b, c] = d;
    let all = [
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ];
    let mut out: Vec<[i64; 3]> = Vec::with_capacity(6);
    for p in all {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn place_next(
    container: [i64; 3],
    orientations: &[Vec<[i64; 3]>],
    k: usize,
    placed: &mut Vec<AxisBox<i64>>,
) -> bool {
    if k == orientations.len() {
        return true;
    }
    for ext in &orientations[k] {
        if ext[0] > container[0] || ext[1] > container[1] || ext[2] > container[2] {
            continue;
        }
        for x in 0..=(container[0] - ext[0]) {
            for y in 0..=(container[1] - ext[1]) {
                for z in 0..=(container[2] - ext[2]) {
                    let b = AxisBox::new([x, y, z], *ext);
                    if placed.iter().any(|p| p.overlaps(&b)) {
                        continue;
                    }
                    placed.push(b);
                    if place_next(container, orientations, k + 1, placed) {
                        return true;
                    }
                    placed.pop();
                }
            }
        }
    }
    false
}

/// A start-time assignment the oracle found feasible, aligned with the
/// instance's item order.
pub type StartAssignment = Vec<i64>;

/// Enumerates every feasible integer start assignment with
/// `S_i in [0, total - T_i]`, optionally constrained to be non-decreasing
/// along `order`. An assignment is feasible iff for every unit time cell the
/// set of items alive in that cell passes [`grid_pack_oracle`] with rotations
/// (items may be rearranged from one cell to the next).
pub fn feasible_start_assignments(
    inst: &IntegerInstance,
    order: Option<&[ItemId]>,
    limits: &OracleLimits,
) -> Result<Vec<StartAssignment>, OracleError> {
    let n = inst.items.len();
    if n > limits.max_items {
        return Err(OracleError::TooManyItems {
            n,
            cap: limits.max_items,
        });
    }
    let total = inst.total_time();
    if total > limits.max_total_time {
        return Err(OracleError::TotalTimeExceeded {
            total,
            cap: limits.max_total_time,
        });
    }
    let order_positions = match order {
        Some(ids) => Some(order_indices(inst, ids)?),
        None => None,
    };

    let mut feasible = Vec::new();
    if n == 0 {
        feasible.push(Vec::new());
        return Ok(feasible);
    }
    let mut packable: HashMap<u32, bool> = HashMap::new();
    let mut starts = vec![0i64; n];
    enumerate_starts(
        inst,
        total,
        order_positions.as_deref(),
        &mut starts,
        0,
        &mut packable,
        &mut feasible,
    );
    Ok(feasible)
}

fn order_indices(inst: &IntegerInstance, ids: &[ItemId]) -> Result<Vec<usize>, OracleError> {
    ids.iter()
        .map(|id| {
            inst.items
                .iter()
                .position(|item| &item.id == id)
                .ok_or_else(|| OracleError::UnknownItem(id.clone()))
        })
        .collect()
}

fn enumerate_starts(
    inst: &IntegerInstance,
    total: i64,
    order: Option<&[usize]>,
    starts: &mut Vec<i64>,
    k: usize,
    packable: &mut HashMap<u32, bool>,
    feasible: &mut Vec<StartAssignment>,
) {
    let n = inst.items.len();
    if k == n {
        if assignment_feasible(inst, starts, packable) {
            feasible.push(starts.clone());
        }
        return;
    }
    // With an order constraint, fill start times along that order so the
    // non-decreasing requirement can prune as we go.
    let item = match order {
        Some(positions) => positions[k],
        None => k,
    };
    let min_start = match (order, k) {
        (Some(positions), k) if k > 0 => starts[positions[k - 1]],
        _ => 0,
    };
    for s in min_start..=(total - inst.items[item].bake_time) {
        starts[item] = s;
        enumerate_starts(inst, total, order, starts, k + 1, packable, feasible);
    }
}

fn assignment_feasible(
    inst: &IntegerInstance,
    starts: &[i64],
    packable: &mut HashMap<u32, bool>,
) -> bool {
    let end = starts
        .iter()
        .zip(&inst.items)
        .map(|(s, item)| s + item.bake_time)
        .max()
        .unwrap_or(0);
    for t in 0..end {
        let mut mask = 0u32;
        for (i, (s, item)) in starts.iter().zip(&inst.items).enumerate() {
            if *s <= t && t < s + item.bake_time {
                mask |= 1 << i;
            }
        }
        if mask == 0 {
            continue;
        }
        let ok = *packable.entry(mask).or_insert_with(|| {
            let dims: Vec<[i64; 3]> = inst
                .items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, item)| item.dims)
                .collect();
            grid_pack_oracle(inst.container, &dims, true)
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Minimum makespan over every feasible integer start assignment, optionally
/// constrained to the given baking order. `None` when no assignment is
/// feasible (some item never fits).
pub fn time_grid_schedule_oracle(
    inst: &IntegerInstance,
    order: Option<&[ItemId]>,
    limits: &OracleLimits,
) -> Result<Option<i64>, OracleError> {
    let assignments = feasible_start_assignments(inst, order, limits)?;
    Ok(assignments
        .iter()
        .map(|starts| makespan_of_starts(inst, starts))
        .min())
}

/// Makespan of an assignment: latest leave time minus earliest start.
pub fn makespan_of_starts(inst: &IntegerInstance, starts: &[i64]) -> i64 {
    let max_end = starts
        .iter()
        .zip(inst.items())
        .map(|(s, item)| s + item.bake_time)
        .max()
        .unwrap_or(0);
    let min_start = starts.iter().min().copied().unwrap_or(0);
    max_end - min_start
}
