//! Plain-text instance and schedule files, plus CSV emission for plotting.
//!
//! Both formats are line-oriented: diff-friendly, exact, and trivially
//! parseable from any language. Every scalar is written as a lowest-terms
//! fraction (`7/2`) or a bare integer, so emit-then-parse is the identity.
//!
//! Instance files:
//!
//! ```text
//! # anything after a hash is a comment
//! container 2 1 1
//! item a 1 1 1 5
//! item b 0.5 1 1 3/2
//! ```
//!
//! Schedule files carry the makespan, the baking order, one `item` line per
//! survival interval, one `beat` line per beat, and one `place` line per
//! placement (`place <beat> <id> <x> <y> <z> <orientation-code>`).

use std::fmt::Write as _;

use thiserror::Error;

use crate::geometry::{Container, Dims3, ItemId, Layout, Orientation, PlacedItem, Placement};
use crate::num::{format_scalar, parse_scalar};
use crate::optimizer::Instance;
use crate::scheduler::{BakeItem, Beat, Schedule, ScheduledItem};
use crate::Scalar;

/// A parse failure, tagged with the 1-based line it happened on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing container line")]
    MissingContainer,
    #[error("second container line")]
    DuplicateContainer,
    #[error("malformed number `{0}`")]
    MalformedNumber(String),
    #[error("number `{0}` must be strictly positive")]
    NonPositiveNumber(String),
    #[error("duplicate item id `{0}`")]
    DuplicateItem(String),
    #[error("invalid item id `{0}`")]
    InvalidItemId(String),
    #[error("unknown item `{0}`")]
    UnknownItem(String),
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("expected {expected} fields, found {found}")]
    WrongFieldCount { expected: usize, found: usize },
    #[error("invalid orientation code `{0}`")]
    InvalidOrientation(String),
    #[error("beat {0} referenced before being declared")]
    UnknownBeat(usize),
    #[error("malformed index `{0}`")]
    MalformedIndex(String),
    #[error("{0}")]
    Other(String),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Strips a `#` comment and surrounding whitespace; `None` when nothing is
/// left.
fn significant(line: &str) -> Option<&str> {
    let body = match line.split_once('#') {
        Some((before, _)) => before,
        None => line,
    }
    .trim();
    (!body.is_empty()).then_some(body)
}

fn positive_scalar(token: &str, line: usize) -> Result<Scalar, ParseError> {
    let value = parse_scalar(token)
        .map_err(|_| err(line, ParseErrorKind::MalformedNumber(token.to_string())))?;
    if value <= crate::scalar(0) {
        return Err(err(
            line,
            ParseErrorKind::NonPositiveNumber(token.to_string()),
        ));
    }
    Ok(value)
}

fn any_scalar(token: &str, line: usize) -> Result<Scalar, ParseError> {
    parse_scalar(token).map_err(|_| err(line, ParseErrorKind::MalformedNumber(token.to_string())))
}

fn item_id(token: &str, line: usize) -> Result<ItemId, ParseError> {
    ItemId::new(token).map_err(|_| err(line, ParseErrorKind::InvalidItemId(token.to_string())))
}

/// Parses an instance file: one `container L W H` line first, then one
/// `item <id> <l> <w> <h> <T>` line per item. Numbers are exact decimals or
/// fractions; errors carry the offending line number.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut container: Option<Container<Scalar>> = None;
    let mut items: Vec<BakeItem> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let Some(body) = significant(raw) else {
            continue;
        };
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields[0] {
            "container" => {
                if container.is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateContainer));
                }
                if fields.len() != 4 {
                    return Err(err(
                        line,
                        ParseErrorKind::WrongFieldCount {
                            expected: 4,
                            found: fields.len(),
                        },
                    ));
                }
                let l = positive_scalar(fields[1], line)?;
                let w = positive_scalar(fields[2], line)?;
                let h = positive_scalar(fields[3], line)?;
                container = Some(Container::new(l, w, h).expect("positivity already checked"));
            }
            "item" => {
                if container.is_none() {
                    return Err(err(line, ParseErrorKind::MissingContainer));
                }
                if fields.len() != 6 {
                    return Err(err(
                        line,
                        ParseErrorKind::WrongFieldCount {
                            expected: 6,
                            found: fields.len(),
                        },
                    ));
                }
                let id = item_id(fields[1], line)?;
                if items.iter().any(|i| i.id == id) {
                    return Err(err(
                        line,
                        ParseErrorKind::DuplicateItem(fields[1].to_string()),
                    ));
                }
                let l = positive_scalar(fields[2], line)?;
                let w = positive_scalar(fields[3], line)?;
                let h = positive_scalar(fields[4], line)?;
                let t = positive_scalar(fields[5], line)?;
                let dims = Dims3::new(l, w, h).expect("positivity already checked");
                items.push(BakeItem::new(id, dims, t).expect("positivity already checked"));
            }
            other => {
                return Err(err(
                    line,
                    ParseErrorKind::UnknownDirective(other.to_string()),
                ));
            }
        }
    }

    let container = container.ok_or_else(|| err(1, ParseErrorKind::MissingContainer))?;
    Ok(Instance::new(container, items).expect("ids already deduplicated"))
}

/// Emits an instance in the format [`parse_instance`] reads.
pub fn emit_instance(instance: &Instance) -> String {
    let mut out = String::new();
    let c = &instance.container;
    writeln!(
        out,
        "container {} {} {}",
        format_scalar(c.extent(crate::Axis::X)),
        format_scalar(c.extent(crate::Axis::Y)),
        format_scalar(c.extent(crate::Axis::Z)),
    )
    .unwrap();
    for item in &instance.items {
        writeln!(
            out,
            "item {} {} {} {} {}",
            item.id,
            format_scalar(item.dims.l()),
            format_scalar(item.dims.w()),
            format_scalar(item.dims.h()),
            format_scalar(&item.bake_time),
        )
        .unwrap();
    }
    out
}

/// Emits a schedule with a fixed line order: `makespan`, `order`, `item`
/// lines in order of the item list, `beat` lines ascending, then `place`
/// lines grouped by beat in layout order. Byte-stable.
pub fn emit_schedule(schedule: &Schedule) -> String {
    let mut out = String::new();
    writeln!(out, "makespan {}", format_scalar(&schedule.makespan)).unwrap();
    if !schedule.order.is_empty() {
        let ids: Vec<&str> = schedule.order.iter().map(ItemId::as_str).collect();
        writeln!(out, "order {}", ids.join(" ")).unwrap();
    }
    for item in &schedule.items {
        writeln!(
            out,
            "item {} start {} end {}",
            item.id,
            format_scalar(&item.start),
            format_scalar(&item.end),
        )
        .unwrap();
    }
    for beat in &schedule.beats {
        writeln!(
            out,
            "beat {} start {} duration {}",
            beat.index,
            format_scalar(&beat.start),
            format_scalar(&beat.duration),
        )
        .unwrap();
    }
    for beat in &schedule.beats {
        for placed in beat.layout.items() {
            writeln!(
                out,
                "place {} {} {} {} {} {}",
                beat.index,
                placed.id,
                format_scalar(&placed.placement.x),
                format_scalar(&placed.placement.y),
                format_scalar(&placed.placement.z),
                placed.placement.orient.code(),
            )
            .unwrap();
        }
    }
    out
}

/// Parses a schedule file back into a [`Schedule`]. The instance supplies
/// the container and each item's dimensions (placements only carry the
/// position and orientation). Structural mistakes — bad numbers, unknown
/// items, a `place` line for an undeclared beat — are parse errors with line
/// numbers; semantic problems are left to the validator.
pub fn parse_schedule(text: &str, instance: &Instance) -> Result<Schedule, ParseError> {
    let mut makespan: Option<Scalar> = None;
    let mut order: Vec<ItemId> = Vec::new();
    let mut items: Vec<ScheduledItem> = Vec::new();
    let mut beats: Vec<Beat> = Vec::new();

    let dims_of = |token: &str, line: usize| -> Result<(ItemId, Dims3<Scalar>), ParseError> {
        let id = item_id(token, line)?;
        let item = instance
            .items
            .iter()
            .find(|i| i.id == id)
            .ok_or_else(|| err(line, ParseErrorKind::UnknownItem(token.to_string())))?;
        Ok((id, item.dims.clone()))
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let Some(body) = significant(raw) else {
            continue;
        };
        let fields: Vec<&str> = body.split_whitespace().collect();
        let expect_fields = |n: usize| -> Result<(), ParseError> {
            if fields.len() != n {
                Err(err(
                    line,
                    ParseErrorKind::WrongFieldCount {
                        expected: n,
                        found: fields.len(),
                    },
                ))
            } else {
                Ok(())
            }
        };
        match fields[0] {
            "makespan" => {
                expect_fields(2)?;
                makespan = Some(any_scalar(fields[1], line)?);
            }
            "order" => {
                for token in &fields[1..] {
                    order.push(item_id(token, line)?);
                }
            }
            "item" => {
                expect_fields(6)?;
                if fields[2] != "start" || fields[4] != "end" {
                    return Err(err(
                        line,
                        ParseErrorKind::Other("expected `item <id> start <q> end <q>`".into()),
                    ));
                }
                let (id, _) = dims_of(fields[1], line)?;
                items.push(ScheduledItem {
                    id,
                    start: any_scalar(fields[3], line)?,
                    end: any_scalar(fields[5], line)?,
                });
            }
            "beat" => {
                expect_fields(6)?;
                if fields[2] != "start" || fields[4] != "duration" {
                    return Err(err(
                        line,
                        ParseErrorKind::Other("expected `beat <j> start <q> duration <q>`".into()),
                    ));
                }
                let index: usize = fields[1]
                    .parse()
                    .map_err(|_| err(line, ParseErrorKind::MalformedIndex(fields[1].into())))?;
                beats.push(Beat {
                    index,
                    start: any_scalar(fields[3], line)?,
                    duration: any_scalar(fields[5], line)?,
                    layout: Layout::new(instance.container.clone()),
                });
            }
            "place" => {
                expect_fields(7)?;
                let index: usize = fields[1]
                    .parse()
                    .map_err(|_| err(line, ParseErrorKind::MalformedIndex(fields[1].into())))?;
                let (id, dims) = dims_of(fields[2], line)?;
                let x = any_scalar(fields[3], line)?;
                let y = any_scalar(fields[4], line)?;
                let z = any_scalar(fields[5], line)?;
                let code: u8 = fields[6]
                    .parse()
                    .map_err(|_| err(line, ParseErrorKind::InvalidOrientation(fields[6].into())))?;
                let orient = Orientation::from_code(code)
                    .map_err(|_| err(line, ParseErrorKind::InvalidOrientation(fields[6].into())))?;
                let beat = beats
                    .iter_mut()
                    .find(|b| b.index == index)
                    .ok_or_else(|| err(line, ParseErrorKind::UnknownBeat(index)))?;
                beat.layout
                    .push(PlacedItem::new(id, dims, Placement::new(x, y, z, orient)))
                    .map_err(|e| err(line, ParseErrorKind::Other(e.to_string())))?;
            }
            other => {
                return Err(err(
                    line,
                    ParseErrorKind::UnknownDirective(other.to_string()),
                ));
            }
        }
    }

    Ok(Schedule {
        order,
        items,
        beats,
        makespan: makespan.unwrap_or_else(|| crate::scalar(0)),
    })
}

/// Gantt rows: header `id,start,end`, one row per scheduled item in schedule
/// order.
pub fn emit_gantt_csv(schedule: &Schedule) -> String {
    let mut out = String::from("id,start,end\n");
    for item in &schedule.items {
        writeln!(
            out,
            "{},{},{}",
            item.id,
            format_scalar(&item.start),
            format_scalar(&item.end),
        )
        .unwrap();
    }
    out
}

/// Per-beat box geometry for external 3D plotting: header
/// `beat,id,x,y,z,ex,ey,ez`, one row per placement with oriented extents.
pub fn emit_boxes_csv(schedule: &Schedule) -> String {
    let mut out = String::from("beat,id,x,y,z,ex,ey,ez\n");
    for beat in &schedule.beats {
        for placed in beat.layout.items() {
            let extents = placed.extents();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                beat.index,
                placed.id,
                format_scalar(&placed.placement.x),
                format_scalar(&placed.placement.y),
                format_scalar(&placed.placement.z),
                format_scalar(&extents[0]),
                format_scalar(&extents[1]),
                format_scalar(&extents[2]),
            )
            .unwrap();
        }
    }
    out
}
