//! Exact cuboid geometry: oriented boxes, layouts, and the total intersection
//! volume that decides whether a configuration is valid.
//!
//! A layout places axis-aligned boxes by their lower-left-near vertex inside a
//! container anchored at the origin. Validity is a single exact quantity: the
//! sum of all pairwise item-item overlap volumes plus each item's volume
//! protruding outside the container. A layout is valid iff that sum is zero,
//! so face contact (overlap of measure zero) is allowed.

use std::cmp::{max, min};
use std::fmt;

use thiserror::Error;

use crate::num::Num;

/// Errors raised while constructing geometric values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension `{0}` must be strictly positive")]
    NonPositiveDimension(String),
    #[error("orientation code {0} is not in 1..=6")]
    InvalidOrientationCode(u8),
    #[error("item id `{0}` is empty or contains whitespace")]
    InvalidItemId(String),
    #[error("duplicate item id `{0}` in layout")]
    DuplicateItem(ItemId),
}

/// One of the three coordinate axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => write!(f, "x"),
            Axis::Y => write!(f, "y"),
            Axis::Z => write!(f, "z"),
        }
    }
}

/// Identifier token for an item: non-empty, free of whitespace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemId(String);

impl ItemId {
    pub fn new(token: impl Into<String>) -> Result<Self, GeometryError> {
        let token = token.into();
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(GeometryError::InvalidItemId(token));
        }
        Ok(ItemId(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One of the six axis-aligned orientations of a cuboid.
///
/// Code `c` maps the item dimensions `(l, w, h)` to per-axis extents:
///
/// | code | x | y | z |
/// |------|---|---|---|
/// | 1    | l | w | h |
/// | 2    | l | h | w |
/// | 3    | w | l | h |
/// | 4    | w | h | l |
/// | 5    | h | l | w |
/// | 6    | h | w | l |
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orientation(u8);

impl Orientation {
    pub const ALL: [Orientation; 6] = [
        Orientation(1),
        Orientation(2),
        Orientation(3),
        Orientation(4),
        Orientation(5),
        Orientation(6),
    ];

    pub fn from_code(code: u8) -> Result<Self, GeometryError> {
        if (1..=6).contains(&code) {
            Ok(Orientation(code))
        } else {
            Err(GeometryError::InvalidOrientationCode(code))
        }
    }

    pub fn code(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Cuboid item dimensions `(l, w, h)`, all strictly positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dims3<T> {
    l: T,
    w: T,
    h: T,
}

impl<T: Num> Dims3<T> {
    pub fn new(l: T, w: T, h: T) -> Result<Self, GeometryError> {
        for (name, v) in [("l", &l), ("w", &w), ("h", &h)] {
            if *v <= T::zero() {
                return Err(GeometryError::NonPositiveDimension(format!("{name}={v}")));
            }
        }
        Ok(Dims3 { l, w, h })
    }

    pub fn l(&self) -> &T {
        &self.l
    }

    pub fn w(&self) -> &T {
        &self.w
    }

    pub fn h(&self) -> &T {
        &self.h
    }

    /// Per-axis extents of the item under orientation `o` (see the code table
    /// on [`Orientation`]). The result is always a permutation of `(l, w, h)`.
    pub fn oriented_extents(&self, o: Orientation) -> [T; 3] {
        let (l, w, h) = (self.l.clone(), self.w.clone(), self.h.clone());
        match o.code() {
            1 => [l, w, h],
            2 => [l, h, w],
            3 => [w, l, h],
            4 => [w, h, l],
            5 => [h, l, w],
            6 => [h, w, l],
            _ => unreachable!("orientation codes are 1..=6"),
        }
    }

    pub fn volume(&self) -> T {
        self.l.clone() * self.w.clone() * self.h.clone()
    }

    /// Dimensions in non-decreasing order; two items pack identically up to
    /// orientation iff their sorted triples match.
    pub fn sorted(&self) -> [T; 3] {
        let mut v = [self.l.clone(), self.w.clone(), self.h.clone()];
        v.sort();
        v
    }
}

/// The container: extents along x, y, z, anchored at the origin. Everything
/// on or outside its walls is forbidden space for items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Container<T> {
    extents: [T; 3],
}

impl<T: Num> Container<T> {
    pub fn new(l: T, w: T, h: T) -> Result<Self, GeometryError> {
        for (name, v) in [("L", &l), ("W", &w), ("H", &h)] {
            if *v <= T::zero() {
                return Err(GeometryError::NonPositiveDimension(format!("{name}={v}")));
            }
        }
        Ok(Container { extents: [l, w, h] })
    }

    pub fn extent(&self, axis: Axis) -> &T {
        &self.extents[axis.index()]
    }

    pub fn extents(&self) -> &[T; 3] {
        &self.extents
    }

    pub fn volume(&self) -> T {
        self.extents[0].clone() * self.extents[1].clone() * self.extents[2].clone()
    }
}

/// Position and orientation of one item: the coordinate of its
/// lower-left-near vertex plus an orientation code. Out-of-container
/// positions are representable; the overlap functional detects them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement<T> {
    pub x: T,
    pub y: T,
    pub z: T,
    pub orient: Orientation,
}

impl<T: Num> Placement<T> {
    pub fn new(x: T, y: T, z: T, orient: Orientation) -> Self {
        Placement { x, y, z, orient }
    }

    pub fn coord(&self, axis: Axis) -> &T {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
            Axis::Z => &self.z,
        }
    }

    pub fn coord_mut(&mut self, axis: Axis) -> &mut T {
        match axis {
            Axis::X => &mut self.x,
            Axis::Y => &mut self.y,
            Axis::Z => &mut self.z,
        }
    }
}

/// An axis-aligned box given by its minimum corner and extents. This is the
/// primitive shared between the solver and the brute-force oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisBox<T> {
    min: [T; 3],
    max: [T; 3],
}

impl<T: Num> AxisBox<T> {
    pub fn new(min: [T; 3], extents: [T; 3]) -> Self {
        let max = [
            min[0].clone() + extents[0].clone(),
            min[1].clone() + extents[1].clone(),
            min[2].clone() + extents[2].clone(),
        ];
        AxisBox { min, max }
    }

    pub fn min(&self, axis: Axis) -> &T {
        &self.min[axis.index()]
    }

    pub fn max(&self, axis: Axis) -> &T {
        &self.max[axis.index()]
    }

    pub fn volume(&self) -> T {
        Axis::ALL
            .iter()
            .map(|&a| self.max[a.index()].clone() - self.min[a.index()].clone())
            .fold(T::one(), |acc, e| acc * e)
    }

    /// Volume of the intersection with `other`; zero when they merely touch.
    pub fn overlap_volume(&self, other: &AxisBox<T>) -> T {
        let mut vol = T::one();
        for axis in Axis::ALL {
            let i = axis.index();
            let lo = max(&self.min[i], &other.min[i]);
            let hi = min(&self.max[i], &other.max[i]);
            if hi <= lo {
                return T::zero();
            }
            vol = vol * (hi.clone() - lo.clone());
        }
        vol
    }

    /// True iff the open interiors intersect, i.e. the overlap volume is
    /// positive. Face or edge contact does not count.
    pub fn overlaps(&self, other: &AxisBox<T>) -> bool {
        Axis::ALL.iter().all(|&axis| {
            let i = axis.index();
            self.min[i] < other.max[i] && other.min[i] < self.max[i]
        })
    }

    /// Volume of this box lying outside `[0,L]x[0,W]x[0,H]`.
    pub fn outside_volume(&self, container: &Container<T>) -> T {
        let mut inside = T::one();
        for axis in Axis::ALL {
            let i = axis.index();
            let zero = T::zero();
            let lo = max(&self.min[i], &zero).clone();
            let hi = min(&self.max[i], &container.extents[i]).clone();
            if hi <= lo {
                inside = T::zero();
                break;
            }
            inside = inside * (hi - lo);
        }
        self.volume() - inside
    }
}

/// One item fixed in space: its identity, dimensions, and placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedItem<T> {
    pub id: ItemId,
    pub dims: Dims3<T>,
    pub placement: Placement<T>,
}

impl<T: Num> PlacedItem<T> {
    pub fn new(id: ItemId, dims: Dims3<T>, placement: Placement<T>) -> Self {
        PlacedItem {
            id,
            dims,
            placement,
        }
    }

    /// Extents along x, y, z as oriented by the placement.
    pub fn extents(&self) -> [T; 3] {
        self.dims.oriented_extents(self.placement.orient)
    }

    pub fn axis_box(&self) -> AxisBox<T> {
        AxisBox::new(
            [
                self.placement.x.clone(),
                self.placement.y.clone(),
                self.placement.z.clone(),
            ],
            self.extents(),
        )
    }
}

/// A configuration: every item's placement inside one container. Item ids are
/// unique; insertion order is preserved and meaningful for serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout<T> {
    container: Container<T>,
    items: Vec<PlacedItem<T>>,
}

impl<T: Num> Layout<T> {
    pub fn new(container: Container<T>) -> Self {
        Layout {
            container,
            items: Vec::new(),
        }
    }

    pub fn with_items(
        container: Container<T>,
        items: Vec<PlacedItem<T>>,
    ) -> Result<Self, GeometryError> {
        let mut layout = Layout::new(container);
        for item in items {
            layout.push(item)?;
        }
        Ok(layout)
    }

    pub fn push(&mut self, item: PlacedItem<T>) -> Result<(), GeometryError> {
        if self.items.iter().any(|p| p.id == item.id) {
            return Err(GeometryError::DuplicateItem(item.id));
        }
        self.items.push(item);
        Ok(())
    }

    pub fn container(&self) -> &Container<T> {
        &self.container
    }

    pub fn items(&self) -> &[PlacedItem<T>] {
        &self.items
    }

    pub fn get(&self, id: &ItemId) -> Option<&PlacedItem<T>> {
        self.items.iter().find(|p| &p.id == id)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub(crate) fn items_mut(&mut self) -> &mut [PlacedItem<T>] {
        &mut self.items
    }

    /// Total intersection volume: every item's protrusion outside the
    /// container plus the overlap volume of every unordered item pair.
    /// Always non-negative; zero exactly when the configuration is valid.
    pub fn total_overlap(&self) -> T {
        let boxes: Vec<AxisBox<T>> = self.items.iter().map(PlacedItem::axis_box).collect();
        let mut total = T::zero();
        for b in &boxes {
            total = total + b.outside_volume(&self.container);
        }
        for (i, a) in boxes.iter().enumerate() {
            for b in &boxes[i + 1..] {
                total = total + a.overlap_volume(b);
            }
        }
        total
    }

    /// True iff the total intersection volume is exactly zero.
    pub fn is_valid(&self) -> bool {
        self.total_overlap().is_zero()
    }

    /// Sum of all placement coordinates. Sliding any item toward the origin
    /// strictly decreases it, which is what drives layout normalization.
    pub fn potential_energy(&self) -> T {
        self.items.iter().fold(T::zero(), |acc, p| {
            acc + p.placement.x.clone() + p.placement.y.clone() + p.placement.z.clone()
        })
    }
}

/// Intersection volume of two placed items; symmetric, zero on face contact.
pub fn pair_overlap_volume<T: Num>(a: &PlacedItem<T>, b: &PlacedItem<T>) -> T {
    a.axis_box().overlap_volume(&b.axis_box())
}

/// Volume of `item` lying outside the container; zero iff fully inside.
pub fn protrusion_volume<T: Num>(item: &PlacedItem<T>, container: &Container<T>) -> T {
    item.axis_box().outside_volume(container)
}
