//! Greedy beat-wise scheduling under a fixed baking order, and the
//! independent schedule validator.
//!
//! Time advances in beats. At the start of each beat the scheduler extends
//! the resident set with as many queued items as still pack (in queue order,
//! stopping at the first that does not), packs the whole set from scratch —
//! items are free to move or reorient between beats — and bakes until the
//! smallest remaining bake time runs out. Finished items leave, and the loop
//! repeats until the container drains. Every event time is an exact rational,
//! so on all-integer instances all beat boundaries are integers.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::geometry::{Container, Dims3, ItemId, Layout};
use crate::num::format_scalar;
use crate::packer::{self, PackItem};
use crate::Scalar;

/// Errors raised while building schedules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchedError {
    #[error("item `{id}` cannot fit in the container in any orientation")]
    ItemCannotFit { id: ItemId },
    #[error("duplicate item id `{0}`")]
    DuplicateItem(ItemId),
    #[error("item `{id}` has a non-positive bake time")]
    NonPositiveBakeTime { id: ItemId },
}

/// An item to schedule: dimensions plus the contiguous bake time it must
/// spend inside the container.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BakeItem {
    pub id: ItemId,
    pub dims: Dims3<Scalar>,
    pub bake_time: Scalar,
}

impl BakeItem {
    pub fn new(id: ItemId, dims: Dims3<Scalar>, bake_time: Scalar) -> Result<Self, SchedError> {
        if bake_time <= crate::scalar(0) {
            return Err(SchedError::NonPositiveBakeTime { id });
        }
        Ok(BakeItem {
            id,
            dims,
            bake_time,
        })
    }

    fn as_pack_item(&self) -> PackItem<Scalar> {
        PackItem::new(self.id.clone(), self.dims.clone())
    }
}

/// A maximal interval with a frozen layout: `[start, start + duration)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Beat {
    pub index: usize,
    pub start: Scalar,
    pub duration: Scalar,
    pub layout: Layout<Scalar>,
}

impl Beat {
    pub fn end(&self) -> Scalar {
        self.start.clone() + self.duration.clone()
    }
}

/// Entry and leave times for one item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduledItem {
    pub id: ItemId,
    pub start: Scalar,
    pub end: Scalar,
}

/// A complete schedule: the baking order, per-item survival intervals, and
/// the beat sequence tiling `[0, makespan)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub order: Vec<ItemId>,
    pub items: Vec<ScheduledItem>,
    pub beats: Vec<Beat>,
    pub makespan: Scalar,
}

impl Schedule {
    pub fn empty() -> Self {
        Schedule {
            order: Vec::new(),
            items: Vec::new(),
            beats: Vec::new(),
            makespan: crate::scalar(0),
        }
    }

    pub fn start_of(&self, id: &ItemId) -> Option<&Scalar> {
        self.items.iter().find(|s| &s.id == id).map(|s| &s.start)
    }
}

/// Splits items into those that fit the container in some orientation and
/// the ids of those that never do.
pub fn split_oversize(
    container: &Container<Scalar>,
    items: &[BakeItem],
) -> (Vec<BakeItem>, Vec<ItemId>) {
    let mut fitting = Vec::with_capacity(items.len());
    let mut dropped = Vec::new();
    for item in items {
        if packer::item_fits(container, &item.dims) {
            fitting.push(item.clone());
        } else {
            dropped.push(item.id.clone());
        }
    }
    (fitting, dropped)
}

/// Greedily extends the resident set with queued items, one at a time in
/// queue order, re-running the packing decision on the union each time (the
/// placement itself is unordered). Stops before the first item whose
/// addition cannot pack, or when the queue is exhausted. Returns the layout
/// of the final set and how many queue items were taken.
///
/// Panics if the resident set alone no longer packs; callers uphold the
/// invariant that residents come from a previously packed beat.
pub fn max_prefix_fit(
    container: &Container<Scalar>,
    resident: &[BakeItem],
    queue: &[BakeItem],
) -> (Layout<Scalar>, usize) {
    let mut pack_items: Vec<PackItem<Scalar>> =
        resident.iter().map(BakeItem::as_pack_item).collect();
    let mut layout = packer::pack_decision(container, &pack_items)
        .expect("resident items fit individually")
        .expect("resident set packed in the previous beat");
    let mut taken = 0;
    for item in queue {
        pack_items.push(item.as_pack_item());
        match packer::pack_decision(container, &pack_items) {
            Ok(Some(next)) => {
                layout = next;
                taken += 1;
            }
            _ => break,
        }
    }
    (layout, taken)
}

/// Runs the greedy beat-wise schedule for `items` in the given order.
///
/// Every item must fit the container in some orientation; the first that
/// does not is reported by name (use [`split_oversize`] first to drop such
/// items instead). Start times are non-decreasing along the input order, and
/// each beat retires at least one item, so there are at most `n` beats.
pub fn greedy_schedule(
    container: &Container<Scalar>,
    items: &[BakeItem],
) -> Result<Schedule, SchedError> {
    for (i, item) in items.iter().enumerate() {
        if items[..i].iter().any(|other| other.id == item.id) {
            return Err(SchedError::DuplicateItem(item.id.clone()));
        }
        if !packer::item_fits(container, &item.dims) {
            return Err(SchedError::ItemCannotFit {
                id: item.id.clone(),
            });
        }
    }

    let zero = crate::scalar(0);
    let mut resident: Vec<(usize, Scalar)> = Vec::new(); // (item index, remaining time)
    let mut next = 0usize;
    let mut now = zero.clone();
    let mut starts: Vec<Option<Scalar>> = vec![None; items.len()];
    let mut beats: Vec<Beat> = Vec::new();

    while !resident.is_empty() || next < items.len() {
        let resident_items: Vec<BakeItem> =
            resident.iter().map(|(i, _)| items[*i].clone()).collect();
        let (layout, taken) = max_prefix_fit(container, &resident_items, &items[next..]);
        for idx in next..next + taken {
            starts[idx] = Some(now.clone());
            resident.push((idx, items[idx].bake_time.clone()));
        }
        next += taken;

        let duration = resident
            .iter()
            .map(|(_, remaining)| remaining)
            .min()
            .cloned()
            .expect("a beat always holds at least one item");
        beats.push(Beat {
            index: beats.len(),
            start: now.clone(),
            duration: duration.clone(),
            layout,
        });
        now += duration.clone();
        for (_, remaining) in &mut resident {
            *remaining = remaining.clone() - duration.clone();
        }
        resident.retain(|(_, remaining)| !remaining.is_zero());
    }

    let scheduled = items
        .iter()
        .zip(starts)
        .map(|(item, start)| {
            let start = start.expect("every item was scheduled");
            ScheduledItem {
                id: item.id.clone(),
                end: start.clone() + item.bake_time.clone(),
                start,
            }
        })
        .collect();
    Ok(Schedule {
        order: items.iter().map(|i| i.id.clone()).collect(),
        items: scheduled,
        beats,
        makespan: now,
    })
}

/// Makespan of a schedule: latest leave time minus earliest entry time.
pub fn makespan_of(schedule: &Schedule) -> Scalar {
    let max_end = schedule.items.iter().map(|s| s.end.clone()).max();
    let min_start = schedule.items.iter().map(|s| s.start.clone()).min();
    match (max_end, min_start) {
        (Some(end), Some(start)) => end - start,
        _ => crate::scalar(0),
    }
}

/// What a validation found wrong, in machine-checkable categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Overlap,
    Protrude,
    BeatGap,
    NonPositiveBeat,
    DiscontinuousBake,
    OutsideSurvival,
    DurationMismatch,
    StartMismatch,
    OrderViolation,
    MakespanMismatch,
    UnknownItem,
    MissingItem,
    DimsMismatch,
    ContainerMismatch,
    MalformedOrder,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ViolationKind::Overlap => "overlap",
            ViolationKind::Protrude => "protrude",
            ViolationKind::BeatGap => "beat-gap",
            ViolationKind::NonPositiveBeat => "non-positive-beat",
            ViolationKind::DiscontinuousBake => "discontinuous-bake",
            ViolationKind::OutsideSurvival => "outside-survival",
            ViolationKind::DurationMismatch => "duration-mismatch",
            ViolationKind::StartMismatch => "start-mismatch",
            ViolationKind::OrderViolation => "order-violation",
            ViolationKind::MakespanMismatch => "makespan-mismatch",
            ViolationKind::UnknownItem => "unknown-item",
            ViolationKind::MissingItem => "missing-item",
            ViolationKind::DimsMismatch => "dims-mismatch",
            ViolationKind::ContainerMismatch => "container-mismatch",
            ViolationKind::MalformedOrder => "malformed-order",
        };
        f.write_str(name)
    }
}

/// One violation: its kind, where it happened, and a human-readable detail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub beat: Option<usize>,
    pub item: Option<ItemId>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(beat) = self.beat {
            write!(f, " beat {beat}")?;
        }
        if let Some(item) = &self.item {
            write!(f, " item {item}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

/// Result of validating a schedule against its instance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn flag(
        &mut self,
        kind: ViolationKind,
        beat: Option<usize>,
        item: Option<ItemId>,
        detail: impl Into<String>,
    ) {
        self.violations.push(Violation {
            kind,
            beat,
            item,
            detail: detail.into(),
        });
    }
}

/// Checks an untrusted schedule against the instance: every beat layout must
/// be a valid configuration, the beats must tile `[0, makespan)` exactly,
/// and every item must sit in precisely the beats covering its survival
/// interval `[S, S + T)` for a total presence of exactly `T`. With
/// `order_constrained`, start times must also be non-decreasing along the
/// declared order. Structural problems are reported as violations, never as
/// panics.
pub fn validate_schedule(
    container: &Container<Scalar>,
    items: &[BakeItem],
    schedule: &Schedule,
    order_constrained: bool,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let zero = crate::scalar(0);

    let by_id: BTreeMap<&ItemId, &BakeItem> = items.iter().map(|i| (&i.id, i)).collect();

    // Identity structure: order and item lines must both enumerate the
    // instance's items exactly once.
    let mut seen_order: Vec<&ItemId> = Vec::new();
    for id in &schedule.order {
        if seen_order.contains(&id) {
            report.flag(
                ViolationKind::MalformedOrder,
                None,
                Some(id.clone()),
                "item appears twice in the order",
            );
        }
        seen_order.push(id);
        if !by_id.contains_key(id) {
            report.flag(
                ViolationKind::UnknownItem,
                None,
                Some(id.clone()),
                "order names an item not in the instance",
            );
        }
    }
    let mut seen_items: Vec<&ItemId> = Vec::new();
    for s in &schedule.items {
        if seen_items.contains(&&s.id) {
            report.flag(
                ViolationKind::MalformedOrder,
                None,
                Some(s.id.clone()),
                "item has two survival intervals",
            );
        }
        seen_items.push(&s.id);
        match by_id.get(&s.id) {
            None => report.flag(
                ViolationKind::UnknownItem,
                None,
                Some(s.id.clone()),
                "scheduled item not in the instance",
            ),
            Some(item) => {
                let survival = s.end.clone() - s.start.clone();
                if survival != item.bake_time {
                    report.flag(
                        ViolationKind::DurationMismatch,
                        None,
                        Some(s.id.clone()),
                        format!(
                            "survival interval lasts {}, bake time is {}",
                            format_scalar(&survival),
                            format_scalar(&item.bake_time)
                        ),
                    );
                }
            }
        }
    }
    for item in items {
        if !schedule.items.iter().any(|s| s.id == item.id) {
            report.flag(
                ViolationKind::MissingItem,
                None,
                Some(item.id.clone()),
                "instance item never scheduled",
            );
        }
    }

    // Makespan and the zero origin.
    let max_end = schedule.items.iter().map(|s| s.end.clone()).max();
    let min_start = schedule.items.iter().map(|s| s.start.clone()).min();
    let expected_makespan = match (&max_end, &min_start) {
        (Some(end), Some(start)) => end.clone() - start.clone(),
        _ => zero.clone(),
    };
    if schedule.makespan != expected_makespan {
        report.flag(
            ViolationKind::MakespanMismatch,
            None,
            None,
            format!(
                "declared {}, items span {}",
                format_scalar(&schedule.makespan),
                format_scalar(&expected_makespan)
            ),
        );
    }
    if let Some(start) = &min_start {
        if !start.is_zero() {
            report.flag(
                ViolationKind::StartMismatch,
                None,
                None,
                format!("earliest start is {}, expected 0", format_scalar(start)),
            );
        }
    }

    // Beats must tile [0, makespan) contiguously with positive durations.
    let mut running = zero.clone();
    for (i, beat) in schedule.beats.iter().enumerate() {
        if beat.index != i {
            report.flag(
                ViolationKind::BeatGap,
                Some(i),
                None,
                format!("beat index {} at position {i}", beat.index),
            );
        }
        if beat.duration <= zero {
            report.flag(
                ViolationKind::NonPositiveBeat,
                Some(i),
                None,
                format!("duration {}", format_scalar(&beat.duration)),
            );
        }
        if beat.start != running {
            report.flag(
                ViolationKind::BeatGap,
                Some(i),
                None,
                format!(
                    "starts at {}, previous beat ended at {}",
                    format_scalar(&beat.start),
                    format_scalar(&running)
                ),
            );
        }
        running = beat.start.clone() + beat.duration.clone();
    }
    if running != schedule.makespan {
        report.flag(
            ViolationKind::BeatGap,
            None,
            None,
            format!(
                "beats end at {}, makespan is {}",
                format_scalar(&running),
                format_scalar(&schedule.makespan)
            ),
        );
    }

    // Per-beat geometry.
    for beat in &schedule.beats {
        let layout = &beat.layout;
        if layout.container() != container {
            report.flag(
                ViolationKind::ContainerMismatch,
                Some(beat.index),
                None,
                "layout container differs from the instance container",
            );
        }
        for placed in layout.items() {
            match by_id.get(&placed.id) {
                None => report.flag(
                    ViolationKind::UnknownItem,
                    Some(beat.index),
                    Some(placed.id.clone()),
                    "placed item not in the instance",
                ),
                Some(item) => {
                    if placed.dims != item.dims {
                        report.flag(
                            ViolationKind::DimsMismatch,
                            Some(beat.index),
                            Some(placed.id.clone()),
                            "placed dimensions differ from the instance",
                        );
                    }
                }
            }
            let outside = crate::geometry::protrusion_volume(placed, container);
            if !outside.is_zero() {
                report.flag(
                    ViolationKind::Protrude,
                    Some(beat.index),
                    Some(placed.id.clone()),
                    format!("volume {} outside the container", format_scalar(&outside)),
                );
            }
        }
        for (i, a) in layout.items().iter().enumerate() {
            for b in &layout.items()[i + 1..] {
                let overlap = crate::geometry::pair_overlap_volume(a, b);
                if !overlap.is_zero() {
                    report.flag(
                        ViolationKind::Overlap,
                        Some(beat.index),
                        Some(a.id.clone()),
                        format!("overlaps {} with volume {}", b.id, format_scalar(&overlap)),
                    );
                }
            }
        }
    }

    // Continuity: each item is present in exactly the beats its survival
    // interval covers, and those presences add up to the full bake time.
    for s in &schedule.items {
        let mut presence = zero.clone();
        let mut first_beat_start: Option<Scalar> = None;
        for beat in &schedule.beats {
            let present = beat.layout.get(&s.id).is_some();
            let covered = s.start <= beat.start && beat.end() <= s.end;
            if present {
                presence += beat.duration.clone();
                if first_beat_start.is_none() {
                    first_beat_start = Some(beat.start.clone());
                }
                if !covered {
                    report.flag(
                        ViolationKind::OutsideSurvival,
                        Some(beat.index),
                        Some(s.id.clone()),
                        "item present outside its survival interval",
                    );
                }
            } else if covered {
                report.flag(
                    ViolationKind::DiscontinuousBake,
                    Some(beat.index),
                    Some(s.id.clone()),
                    "item absent from a beat inside its survival interval",
                );
            }
        }
        if let Some(item) = by_id.get(&s.id) {
            if presence != item.bake_time {
                report.flag(
                    ViolationKind::DurationMismatch,
                    None,
                    Some(s.id.clone()),
                    format!(
                        "present for {}, bake time is {}",
                        format_scalar(&presence),
                        format_scalar(&item.bake_time)
                    ),
                );
            }
        }
        if let Some(first) = first_beat_start {
            if first != s.start {
                report.flag(
                    ViolationKind::StartMismatch,
                    None,
                    Some(s.id.clone()),
                    format!(
                        "declared start {}, first beat presence at {}",
                        format_scalar(&s.start),
                        format_scalar(&first)
                    ),
                );
            }
        }
    }

    if order_constrained {
        for pair in schedule.order.windows(2) {
            if let (Some(a), Some(b)) = (schedule.start_of(&pair[0]), schedule.start_of(&pair[1])) {
                if a > b {
                    report.flag(
                        ViolationKind::OrderViolation,
                        None,
                        Some(pair[1].clone()),
                        format!(
                            "starts at {} before {} at {}",
                            format_scalar(b),
                            pair[0],
                            format_scalar(a)
                        ),
                    );
                }
            }
        }
    }

    report
}
