//! Seeded instance generation: uniform random items, or guillotine cuts of
//! the container so the whole item set is packable by construction.
//!
//! Generated instances are all-integer, which keeps them inside the
//! brute-force oracles' domain. The same seed and parameters always produce
//! the same instance (the RNG is a fixed ChaCha stream, independent of
//! platform).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry::{Container, Dims3, ItemId};
use crate::optimizer::Instance;
use crate::scalar;
use crate::scheduler::BakeItem;

/// Errors for degenerate generator parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("item count must be at least 1")]
    ZeroItems,
    #[error("{what} range {lo}..={hi} is empty or touches zero")]
    BadRange {
        what: &'static str,
        lo: u32,
        hi: u32,
    },
    #[error("container dimensions must be positive")]
    BadContainer,
    #[error("container cannot be cut into {requested} boxes (only {possible} unit cells)")]
    CannotCut { requested: usize, possible: u64 },
}

/// How items are derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    /// Dimensions and bake times drawn uniformly from their ranges; the item
    /// set may or may not pack, or even fit.
    Random,
    /// Items are the leaves of recursive guillotine cuts of the container,
    /// so the full set packs simultaneously by construction. Bake times are
    /// still drawn from the bake range.
    FeasibleByCuts,
}

/// Parameters for [`generate_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub items: usize,
    pub container: [u32; 3],
    pub dim_range: (u32, u32),
    pub bake_range: (u32, u32),
    pub mode: GenMode,
}

/// Generates a deterministic instance from the parameters.
pub fn generate_instance(params: &GenParams) -> Result<Instance, GenError> {
    if params.items == 0 {
        return Err(GenError::ZeroItems);
    }
    check_range("dimension", params.dim_range)?;
    check_range("bake-time", params.bake_range)?;
    if params.container.contains(&0) {
        return Err(GenError::BadContainer);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let container = Container::new(
        scalar(params.container[0] as i64),
        scalar(params.container[1] as i64),
        scalar(params.container[2] as i64),
    )
    .expect("container extents checked positive");

    let dims_list: Vec<[u32; 3]> = match params.mode {
        GenMode::Random => (0..params.items)
            .map(|_| {
                [
                    rng.gen_range(params.dim_range.0..=params.dim_range.1),
                    rng.gen_range(params.dim_range.0..=params.dim_range.1),
                    rng.gen_range(params.dim_range.0..=params.dim_range.1),
                ]
            })
            .collect(),
        GenMode::FeasibleByCuts => cut_boxes(&mut rng, params.container, params.items)?,
    };

    let items = dims_list
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            let id = ItemId::new(format!("i{}", i + 1)).expect("generated ids are tokens");
            let dims = Dims3::new(
                scalar(d[0] as i64),
                scalar(d[1] as i64),
                scalar(d[2] as i64),
            )
            .expect("generated dimensions are positive");
            let t = rng.gen_range(params.bake_range.0..=params.bake_range.1);
            BakeItem::new(id, dims, scalar(t as i64)).expect("generated times are positive")
        })
        .collect();

    Ok(Instance::new(container, items).expect("generated ids are unique"))
}

fn check_range(what: &'static str, (lo, hi): (u32, u32)) -> Result<(), GenError> {
    if lo == 0 || hi < lo {
        return Err(GenError::BadRange { what, lo, hi });
    }
    Ok(())
}

/// Splits the container into exactly `n` boxes by repeated guillotine cuts:
/// pick a random cuttable box, a random axis with extent at least 2, and a
/// random integer cut plane strictly inside it.
fn cut_boxes(
    rng: &mut ChaCha8Rng,
    container: [u32; 3],
    n: usize,
) -> Result<Vec<[u32; 3]>, GenError> {
    let cells = container.iter().map(|&e| e as u64).product::<u64>();
    if (n as u64) > cells {
        return Err(GenError::CannotCut {
            requested: n,
            possible: cells,
        });
    }
    let mut boxes: Vec<[u32; 3]> = vec![container];
    while boxes.len() < n {
        let cuttable: Vec<usize> = boxes
            .iter()
            .enumerate()
            .filter(|(_, b)| b.iter().any(|&e| e >= 2))
            .map(|(i, _)| i)
            .collect();
        // cells >= n guarantees some box still has a long axis
        let &target = cuttable
            .get(rng.gen_range(0..cuttable.len()))
            .expect("a cuttable box exists while fewer boxes than unit cells");
        let cut = boxes[target];
        let axes: Vec<usize> = (0..3).filter(|&a| cut[a] >= 2).collect();
        let axis = axes[rng.gen_range(0..axes.len())];
        let plane = rng.gen_range(1..cut[axis]);
        let mut low = cut;
        low[axis] = plane;
        let mut high = cut;
        high[axis] = cut[axis] - plane;
        boxes[target] = low;
        boxes.push(high);
    }
    Ok(boxes)
}
