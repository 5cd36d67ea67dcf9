//! Exact cuboid packing decision: can a given set of boxes sit in the
//! container simultaneously?
//!
//! The search is complete because any feasible instance also admits a
//! corner-supported layout (one where no item can slide toward the origin on
//! any axis on its own). In such a layout every coordinate equals a chain of
//! touching items' extents stacked from a wall, so it is a subset sum of the
//! *other* items' extents along that axis as oriented. Enumerating those
//! subset-sum grids per item, inside an outer loop over per-item orientation
//! choices, therefore decides feasibility exactly.
//!
//! With orientations fixed, only the extent each chained item actually
//! realizes on the axis can contribute, so the grids here are subset sums of
//! the realized extents (at most `2^(n-1)` values per item per axis).
//! Including an item's unused dimensions as well would enlarge the grid
//! without adding any reachable corner position.

use std::cmp::max;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::geometry::{
    Axis, AxisBox, Container, Dims3, GeometryError, ItemId, Layout, Orientation, PlacedItem,
    Placement,
};
use crate::num::Num;

/// Item count above which the packing search logs a warning: the orientation
/// loop is `6^n` in the worst case, so expect long runs beyond this.
pub const PACK_WARN_ITEMS: usize = 8;

/// Errors raised by the packing search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackError {
    #[error("item `{id}` cannot fit in the container in any orientation")]
    ItemCannotFit { id: ItemId },
    #[error("item `{id}` exceeds the container under orientation {orient}")]
    OrientedItemTooLarge { id: ItemId, orient: Orientation },
    #[error("layout is not valid (total overlap is positive)")]
    InvalidLayout,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// An item to pack: identity plus dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackItem<T> {
    pub id: ItemId,
    pub dims: Dims3<T>,
}

impl<T: Num> PackItem<T> {
    pub fn new(id: ItemId, dims: Dims3<T>) -> Self {
        PackItem { id, dims }
    }
}

/// One orientation choice per item, aligned with the item slice it was built
/// for.
pub type OrientationAssignment = Vec<Orientation>;

/// Per-item, per-axis sorted candidate coordinates for a fixed orientation
/// assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateGrid<T> {
    per_item: Vec<[Vec<T>; 3]>,
}

impl<T: Num> CandidateGrid<T> {
    pub fn for_item(&self, item: usize) -> &[Vec<T>; 3] {
        &self.per_item[item]
    }

    pub fn for_item_axis(&self, item: usize, axis: Axis) -> &[T] {
        &self.per_item[item][axis.index()]
    }

    pub fn item_count(&self) -> usize {
        self.per_item.len()
    }
}

/// One representative orientation per distinct extent triple, ascending by
/// code: one for a cube, three for a box with exactly two equal sides, six
/// when all dimensions differ.
pub fn orientation_classes<T: Num>(dims: &Dims3<T>) -> Vec<Orientation> {
    let mut seen: Vec<[T; 3]> = Vec::with_capacity(6);
    let mut classes = Vec::with_capacity(6);
    for o in Orientation::ALL {
        let extents = dims.oriented_extents(o);
        if !seen.contains(&extents) {
            seen.push(extents);
            classes.push(o);
        }
    }
    classes
}

/// True iff the item fits inside the container in at least one orientation.
pub fn item_fits<T: Num>(container: &Container<T>, dims: &Dims3<T>) -> bool {
    orientation_classes(dims)
        .iter()
        .any(|&o| extents_fit(&dims.oriented_extents(o), container))
}

fn extents_fit<T: Num>(extents: &[T; 3], container: &Container<T>) -> bool {
    Axis::ALL
        .iter()
        .all(|&a| extents[a.index()] <= *container.extent(a))
}

/// Candidate coordinates along one axis for every item: the subset sums of
/// the *other* items' oriented extents on that axis (empty subset included),
/// kept when they leave room for the item itself. Sorted and deduplicated.
pub fn axis_candidates<T: Num>(
    items: &[PackItem<T>],
    orientations: &[Orientation],
    axis: Axis,
    container: &Container<T>,
) -> Vec<Vec<T>> {
    assert_eq!(items.len(), orientations.len());
    let extents: Vec<T> = items
        .iter()
        .zip(orientations)
        .map(|(item, &o)| item.dims.oriented_extents(o)[axis.index()].clone())
        .collect();
    (0..items.len())
        .map(|i| {
            let limit = container.extent(axis).clone() - extents[i].clone();
            if limit < T::zero() {
                return Vec::new();
            }
            let mut sums: BTreeSet<T> = BTreeSet::new();
            sums.insert(T::zero());
            for (j, e) in extents.iter().enumerate() {
                if j == i {
                    continue;
                }
                let grown: Vec<T> = sums
                    .iter()
                    .map(|s| s.clone() + e.clone())
                    .filter(|s| *s <= limit)
                    .collect();
                sums.extend(grown);
            }
            sums.into_iter().collect()
        })
        .collect()
}

/// Builds the full three-axis candidate grid for a fixed orientation
/// assignment.
pub fn candidate_grid<T: Num>(
    items: &[PackItem<T>],
    orientations: &[Orientation],
    container: &Container<T>,
) -> CandidateGrid<T> {
    let x = axis_candidates(items, orientations, Axis::X, container);
    let y = axis_candidates(items, orientations, Axis::Y, container);
    let z = axis_candidates(items, orientations, Axis::Z, container);
    let per_item = x
        .into_iter()
        .zip(y)
        .zip(z)
        .map(|((gx, gy), gz)| [gx, gy, gz])
        .collect();
    CandidateGrid { per_item }
}

/// Complete packing search with every item's orientation fixed.
///
/// Returns a valid layout with every coordinate drawn from the candidate
/// grid, or `None` when no placement over the grid exists (which, by the
/// corner-support argument, means none exists at all). Items whose oriented
/// extents exceed the container are reported before searching.
///
/// Search order is deterministic: items in input order, coordinates in
/// ascending `(x, y, z)` order. A branch is abandoned as soon as a partial
/// placement overlaps, which visits a subset of the same finite grid the flat
/// enumeration would.
pub fn pack_with_orientations<T: Num>(
    container: &Container<T>,
    items: &[PackItem<T>],
    orientations: &[Orientation],
) -> Result<Option<Layout<T>>, PackError> {
    assert_eq!(items.len(), orientations.len());
    let extents: Vec<[T; 3]> = items
        .iter()
        .zip(orientations)
        .map(|(item, &o)| item.dims.oriented_extents(o))
        .collect();
    for (item, (&o, ext)) in items.iter().zip(orientations.iter().zip(&extents)) {
        if !extents_fit(ext, container) {
            return Err(PackError::OrientedItemTooLarge {
                id: item.id.clone(),
                orient: o,
            });
        }
    }
    let grid = candidate_grid(items, orientations, container);

    // Items with identical oriented extents are interchangeable boxes; forcing
    // their placements into non-decreasing lexicographic order prunes permuted
    // duplicates without losing any witness.
    let mut prev_same: Vec<Option<usize>> = vec![None; items.len()];
    for i in 0..items.len() {
        prev_same[i] = (0..i).rev().find(|&j| extents[j] == extents[i]);
    }

    let mut search = Search {
        extents: &extents,
        grid: &grid,
        prev_same: &prev_same,
        boxes: Vec::with_capacity(items.len()),
        coords: Vec::with_capacity(items.len()),
    };
    if !search.place(0) {
        return Ok(None);
    }

    let placed: Vec<PlacedItem<T>> = items
        .iter()
        .zip(orientations)
        .zip(&search.coords)
        .map(|((item, &o), c)| {
            PlacedItem::new(
                item.id.clone(),
                item.dims.clone(),
                Placement::new(c[0].clone(), c[1].clone(), c[2].clone(), o),
            )
        })
        .collect();
    let layout = Layout::with_items(container.clone(), placed)?;
    assert!(
        layout.is_valid(),
        "packing search produced an invalid layout"
    );
    Ok(Some(layout))
}

struct Search<'a, T> {
    extents: &'a [[T; 3]],
    grid: &'a CandidateGrid<T>,
    prev_same: &'a [Option<usize>],
    boxes: Vec<AxisBox<T>>,
    coords: Vec<[T; 3]>,
}

impl<T: Num> Search<'_, T> {
    fn place(&mut self, k: usize) -> bool {
        if k == self.extents.len() {
            return true;
        }
        let [gx, gy, gz] = self.grid.for_item(k);
        let floor = self.prev_same[k].map(|j| self.coords[j].clone());
        for x in gx {
            for y in gy {
                for z in gz {
                    if let Some(ref f) = floor {
                        if (x, y, z) < (&f[0], &f[1], &f[2]) {
                            continue;
                        }
                    }
                    let coords = [x.clone(), y.clone(), z.clone()];
                    let candidate = AxisBox::new(coords.clone(), self.extents[k].clone());
                    if self.boxes.iter().any(|b| b.overlaps(&candidate)) {
                        continue;
                    }
                    self.boxes.push(candidate);
                    self.coords.push(coords);
                    if self.place(k + 1) {
                        return true;
                    }
                    self.boxes.pop();
                    self.coords.pop();
                }
            }
        }
        false
    }
}

/// Full packing decision: iterates orientation choices per item (one
/// representative per distinct extent triple, non-fitting ones dropped) and
/// runs [`pack_with_orientations`] on each assignment, in lexicographic order
/// by item index and ascending code. Returns the first layout found, `None`
/// when every assignment fails, or an error naming the first item that fits
/// in no orientation at all.
pub fn pack_decision<T: Num>(
    container: &Container<T>,
    items: &[PackItem<T>],
) -> Result<Option<Layout<T>>, PackError> {
    if items.len() > PACK_WARN_ITEMS {
        log::warn!(
            "packing decision over {} items; the orientation loop is exponential",
            items.len()
        );
    }
    let mut fitting: Vec<Vec<Orientation>> = Vec::with_capacity(items.len());
    for item in items {
        let codes: Vec<Orientation> = orientation_classes(&item.dims)
            .into_iter()
            .filter(|&o| extents_fit(&item.dims.oriented_extents(o), container))
            .collect();
        if codes.is_empty() {
            return Err(PackError::ItemCannotFit {
                id: item.id.clone(),
            });
        }
        fitting.push(codes);
    }

    // Items with equal dimensions get non-decreasing orientation codes along
    // the input order: permuting codes within such a group only relabels
    // interchangeable boxes.
    let mut prev_same_dims: Vec<Option<usize>> = vec![None; items.len()];
    for i in 0..items.len() {
        prev_same_dims[i] = (0..i).rev().find(|&j| items[j].dims == items[i].dims);
    }

    let mut chosen: Vec<usize> = vec![0; items.len()];
    assign(container, items, &fitting, &prev_same_dims, &mut chosen, 0)
}

fn assign<T: Num>(
    container: &Container<T>,
    items: &[PackItem<T>],
    fitting: &[Vec<Orientation>],
    prev_same_dims: &[Option<usize>],
    chosen: &mut Vec<usize>,
    k: usize,
) -> Result<Option<Layout<T>>, PackError> {
    if k == items.len() {
        let orientations: OrientationAssignment =
            chosen.iter().zip(fitting).map(|(&i, f)| f[i]).collect();
        return pack_with_orientations(container, items, &orientations);
    }
    let start = prev_same_dims[k].map_or(0, |j| chosen[j]);
    for idx in start..fitting[k].len() {
        chosen[k] = idx;
        if let Some(layout) = assign(container, items, fitting, prev_same_dims, chosen, k + 1)? {
            return Ok(Some(layout));
        }
    }
    Ok(None)
}

/// Slides every item as far toward the origin as validity allows, axis by
/// axis (z, then y, then x; items in id order), repeating until nothing
/// moves. Each slide lands on the largest blocking face at or below the
/// current coordinate: the floor at `0` or another item's far face whose
/// cross-section overlaps. The result is valid, its potential energy never
/// exceeds the input's, and at the fixpoint every item on every axis rests on
/// a wall or on a blocking face.
pub fn normalize_layout<T: Num>(layout: &Layout<T>) -> Result<Layout<T>, PackError> {
    if !layout.is_valid() {
        return Err(PackError::InvalidLayout);
    }
    let mut result = layout.clone();
    let mut order: Vec<usize> = (0..result.len()).collect();
    order.sort_by(|&a, &b| result.items()[a].id.cmp(&result.items()[b].id));

    loop {
        let mut moved = false;
        for axis in [Axis::Z, Axis::Y, Axis::X] {
            for &idx in &order {
                let target = slide_target(&result, idx, axis);
                let item = &mut result.items_mut()[idx];
                if target < *item.placement.coord(axis) {
                    *item.placement.coord_mut(axis) = target;
                    moved = true;
                }
            }
        }
        if !moved {
            break;
        }
    }
    debug_assert!(result.is_valid());
    Ok(result)
}

/// Lowest coordinate item `idx` can take on `axis` with everything else
/// fixed: the maximum blocking face at or below its current position.
fn slide_target<T: Num>(layout: &Layout<T>, idx: usize, axis: Axis) -> T {
    let item = &layout.items()[idx];
    let item_box = item.axis_box();
    let current = item.placement.coord(axis);
    let mut target = T::zero();
    for (j, other) in layout.items().iter().enumerate() {
        if j == idx {
            continue;
        }
        let other_box = other.axis_box();
        if !cross_section_overlaps(&item_box, &other_box, axis) {
            continue;
        }
        let far = other_box.max(axis);
        if far <= current {
            target = max(target, far.clone());
        }
    }
    target
}

/// Open-interval overlap on both axes other than `axis`.
fn cross_section_overlaps<T: Num>(a: &AxisBox<T>, b: &AxisBox<T>, axis: Axis) -> bool {
    Axis::ALL
        .iter()
        .filter(|&&other| other != axis)
        .all(|&o| a.min(o) < b.max(o) && b.min(o) < a.max(o))
}

/// True iff every item on every axis either touches the origin wall or rests
/// against the far face of some cross-overlapping item. This is the fixpoint
/// property [`normalize_layout`] establishes.
pub fn is_corner_supported<T: Num>(layout: &Layout<T>) -> bool {
    layout.items().iter().enumerate().all(|(idx, item)| {
        Axis::ALL.iter().all(|&axis| {
            let coord = item.placement.coord(axis);
            if coord.is_zero() {
                return true;
            }
            let item_box = item.axis_box();
            layout.items().iter().enumerate().any(|(j, other)| {
                j != idx
                    && cross_section_overlaps(&item_box, &other.axis_box(), axis)
                    && *other.axis_box().max(axis) == *coord
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ratio, scalar, Scalar};

    fn id(s: &str) -> ItemId {
        ItemId::new(s).unwrap()
    }

    fn dims(l: i64, w: i64, h: i64) -> Dims3<Scalar> {
        Dims3::new(scalar(l), scalar(w), scalar(h)).unwrap()
    }

    fn container(l: i64, w: i64, h: i64) -> Container<Scalar> {
        Container::new(scalar(l), scalar(w), scalar(h)).unwrap()
    }

    fn item(name: &str, l: i64, w: i64, h: i64) -> PackItem<Scalar> {
        PackItem::new(id(name), dims(l, w, h))
    }

    fn codes(v: &[Orientation]) -> Vec<u8> {
        v.iter().map(|o| o.code()).collect()
    }

    #[test]
    fn orientation_classes_by_symmetry() {
        assert_eq!(codes(&orientation_classes(&dims(1, 1, 1))), vec![1]);

        let two_equal = orientation_classes(&dims(1, 1, 2));
        assert_eq!(two_equal.len(), 3);
        let mut triples: Vec<[Scalar; 3]> = two_equal
            .iter()
            .map(|&o| dims(1, 1, 2).oriented_extents(o))
            .collect();
        triples.sort();
        assert_eq!(
            triples,
            vec![
                [scalar(1), scalar(1), scalar(2)],
                [scalar(1), scalar(2), scalar(1)],
                [scalar(2), scalar(1), scalar(1)],
            ]
        );

        assert_eq!(
            codes(&orientation_classes(&dims(1, 2, 3))),
            vec![1, 2, 3, 4, 5, 6]
        );
    }

    /// Independent subset-sum enumeration used to pin candidate sets.
    fn brute_candidates(extents: &[Scalar], i: usize, container_extent: &Scalar) -> Vec<Scalar> {
        let others: Vec<&Scalar> = extents
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, e)| e)
            .collect();
        let limit = container_extent.clone() - extents[i].clone();
        let mut out = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << others.len()) {
            let mut sum = scalar(0);
            for (bit, e) in others.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    sum += (*e).clone();
                }
            }
            if sum <= limit {
                out.insert(sum);
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn axis_candidates_match_subset_enumeration() {
        let items = vec![item("a", 1, 1, 1), item("b", 2, 1, 1)];
        let oa = vec![Orientation::from_code(1).unwrap(); 2];
        let c = container(3, 1, 1);
        let got = axis_candidates(&items, &oa, Axis::X, &c);
        assert_eq!(got[0], vec![scalar(0), scalar(2)]);
        assert_eq!(got[1], vec![scalar(0), scalar(1)]);

        let extents = vec![scalar(1), scalar(2)];
        for (i, candidates) in got.iter().enumerate() {
            assert_eq!(candidates, &brute_candidates(&extents, i, &scalar(3)));
        }
    }

    #[test]
    fn axis_candidates_single_item_and_tight_bound() {
        let single = vec![item("a", 2, 1, 1)];
        let oa = vec![Orientation::from_code(1).unwrap()];
        for axis in Axis::ALL {
            let got = axis_candidates(&single, &oa, axis, &container(4, 4, 4));
            assert_eq!(got[0], vec![scalar(0)]);
        }

        // extent equals the container extent: the bound filters every
        // positive sum no matter the partners
        let items = vec![item("a", 1, 1, 1), item("b", 1, 1, 1), item("c", 1, 1, 1)];
        let oa = vec![Orientation::from_code(1).unwrap(); 3];
        let got = axis_candidates(&items, &oa, Axis::X, &container(1, 3, 3));
        assert_eq!(got[0], vec![scalar(0)]);
    }

    #[test]
    fn candidate_counts_stay_under_the_subset_bound() {
        let items = vec![
            item("a", 1, 2, 1),
            item("b", 2, 1, 1),
            item("c", 1, 1, 3),
            item("d", 2, 2, 2),
        ];
        let oa = vec![Orientation::from_code(1).unwrap(); 4];
        let grid = candidate_grid(&items, &oa, &container(4, 4, 4));
        for i in 0..items.len() {
            for axis in Axis::ALL {
                assert!(grid.for_item_axis(i, axis).len() <= 1 << (items.len() - 1));
            }
        }
    }

    #[test]
    fn packs_single_unit_item_snugly() {
        let layout = pack_decision(&container(1, 1, 1), &[item("a", 1, 1, 1)])
            .unwrap()
            .expect("feasible");
        let p = &layout.items()[0].placement;
        assert_eq!(
            (p.x.clone(), p.y.clone(), p.z.clone()),
            (scalar(0), scalar(0), scalar(0))
        );
    }

    #[test]
    fn two_big_cubes_cannot_share_a_three_cube() {
        // Fixed orientations: any two start coordinates differ by at most 1,
        // which is less than the extent 2, so interiors must intersect.
        let items = vec![item("a", 2, 2, 2), item("b", 2, 2, 2)];
        let oa = vec![Orientation::from_code(1).unwrap(); 2];
        let got = pack_with_orientations(&container(3, 3, 3), &items, &oa).unwrap();
        assert!(got.is_none());
        assert!(pack_decision(&container(3, 3, 3), &items)
            .unwrap()
            .is_none());
    }

    #[test]
    fn two_slabs_tile_a_two_by_two_by_one() {
        let items = vec![item("a", 1, 2, 1), item("b", 1, 2, 1)];
        let oa = vec![Orientation::from_code(1).unwrap(); 2];
        let layout = pack_with_orientations(&container(2, 2, 1), &items, &oa)
            .unwrap()
            .expect("feasible");
        let coords: Vec<(Scalar, Scalar, Scalar)> = layout
            .items()
            .iter()
            .map(|p| {
                (
                    p.placement.x.clone(),
                    p.placement.y.clone(),
                    p.placement.z.clone(),
                )
            })
            .collect();
        assert_eq!(
            coords,
            vec![
                (scalar(0), scalar(0), scalar(0)),
                (scalar(1), scalar(0), scalar(0)),
            ]
        );
    }

    #[test]
    fn oversize_item_is_reported_by_name() {
        let c = Container::new(ratio(9, 10), scalar(1), scalar(1)).unwrap();
        let err = pack_decision(&c, &[item("big", 1, 1, 1)]).unwrap_err();
        assert_eq!(err, PackError::ItemCannotFit { id: id("big") });
    }

    #[test]
    fn rotation_rescues_a_tall_item() {
        // (1,2,1) only fits a 2x1x1 container when oriented to (2,1,1),
        // which is code 3.
        let layout = pack_decision(&container(2, 1, 1), &[item("a", 1, 2, 1)])
            .unwrap()
            .expect("feasible via rotation");
        assert_eq!(layout.items()[0].placement.orient.code(), 3);
        assert_eq!(
            layout.items()[0].extents(),
            [scalar(2), scalar(1), scalar(1)]
        );
    }

    #[test]
    fn oriented_oversize_is_reported_before_searching() {
        let items = vec![item("a", 1, 2, 1)];
        let oa = vec![Orientation::from_code(1).unwrap()];
        let err = pack_with_orientations(&container(2, 1, 1), &items, &oa).unwrap_err();
        assert!(matches!(err, PackError::OrientedItemTooLarge { .. }));
    }

    #[test]
    fn returned_coordinates_come_from_the_candidate_grid() {
        let items = vec![item("a", 1, 1, 1), item("b", 2, 1, 1), item("c", 1, 1, 2)];
        let c = container(3, 2, 2);
        let layout = pack_decision(&c, &items).unwrap().expect("feasible");
        let oa: Vec<Orientation> = layout.items().iter().map(|p| p.placement.orient).collect();
        let grid = candidate_grid(&items, &oa, &c);
        for (i, placed) in layout.items().iter().enumerate() {
            for axis in Axis::ALL {
                assert!(
                    grid.for_item_axis(i, axis)
                        .contains(placed.placement.coord(axis)),
                    "coordinate not in candidate set"
                );
            }
        }
    }

    #[test]
    fn normalize_slides_a_free_item_to_the_origin() {
        let c = container(2, 1, 1);
        let layout = Layout::with_items(
            c,
            vec![PlacedItem::new(
                id("a"),
                dims(1, 1, 1),
                Placement::new(
                    ratio(1, 2),
                    scalar(0),
                    scalar(0),
                    Orientation::from_code(1).unwrap(),
                ),
            )],
        )
        .unwrap();
        let normalized = normalize_layout(&layout).unwrap();
        assert_eq!(normalized.items()[0].placement.x, scalar(0));
        assert!(is_corner_supported(&normalized));

        // Idempotence at the fixpoint.
        assert_eq!(normalize_layout(&normalized).unwrap(), normalized);
    }

    #[test]
    fn normalize_respects_blocking_faces() {
        let c = container(3, 1, 1);
        let one = Orientation::from_code(1).unwrap();
        let layout = Layout::with_items(
            c,
            vec![
                PlacedItem::new(
                    id("right"),
                    dims(1, 1, 1),
                    Placement::new(scalar(1), scalar(0), scalar(0), one),
                ),
                PlacedItem::new(
                    id("left"),
                    dims(1, 1, 1),
                    Placement::new(scalar(0), scalar(0), scalar(0), one),
                ),
            ],
        )
        .unwrap();
        let normalized = normalize_layout(&layout).unwrap();
        assert_eq!(normalized.get(&id("right")).unwrap().placement.x, scalar(1));
        assert_eq!(normalized.get(&id("left")).unwrap().placement.x, scalar(0));
        assert!(is_corner_supported(&normalized));
    }

    #[test]
    fn normalize_rejects_invalid_layouts() {
        let c = container(1, 1, 1);
        let one = Orientation::from_code(1).unwrap();
        let layout = Layout::with_items(
            c,
            vec![PlacedItem::new(
                id("a"),
                dims(1, 1, 1),
                Placement::new(ratio(1, 4), scalar(0), scalar(0), one),
            )],
        )
        .unwrap();
        assert_eq!(
            normalize_layout(&layout).unwrap_err(),
            PackError::InvalidLayout
        );
    }

    #[test]
    fn normalize_never_raises_potential_energy() {
        let c = container(4, 4, 4);
        let one = Orientation::from_code(1).unwrap();
        let layout = Layout::with_items(
            c,
            vec![
                PlacedItem::new(
                    id("a"),
                    dims(2, 2, 1),
                    Placement::new(scalar(2), scalar(1), scalar(3), one),
                ),
                PlacedItem::new(
                    id("b"),
                    dims(1, 1, 1),
                    Placement::new(scalar(0), scalar(2), scalar(1), one),
                ),
            ],
        )
        .unwrap();
        let normalized = normalize_layout(&layout).unwrap();
        assert!(normalized.is_valid());
        assert!(normalized.potential_energy() <= layout.potential_energy());
        assert!(is_corner_supported(&normalized));
    }
}
