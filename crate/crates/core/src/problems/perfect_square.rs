//! Perfect-square placement (CSPLib prob009), permutation encoding.
//!
//! A configuration is the order in which the squares are dropped into the
//! master square. Each square goes to the lowest, then leftmost, slot of a
//! skyline; placement stops at the first square that does not fit there.
//! The cost weighs the unplaced squares and the shape of the remaining gaps,
//! and is zero exactly when every square is placed.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::model::{is_permutation_of, Cost, FullRecompute, ProblemModel, SwapEvaluator};

use super::ProblemError;

/// Master size, square count and largest square of the five benchmark
/// instances, indexed by instance id − 1.
pub const INSTANCE_TABLE: [(u32, usize, u32); 5] =
    [(112, 21, 50), (228, 23, 99), (326, 24, 142), (479, 24, 175), (524, 25, 220)];

const INSTANCE_1: &str = include_str!("../../data/perfect_square/instance1.txt");

/// Weights of the cost terms. The values are a documented choice, not tuned.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerfectSquareWeights {
    pub unplaced_count: Cost,
    pub largest_unplaced: Cost,
    pub slot_height_sum: Cost,
    pub slot_height_max: Cost,
    pub slot_width_sum: Cost,
}

impl Default for PerfectSquareWeights {
    fn default() -> Self {
        Self {
            unplaced_count: 10,
            largest_unplaced: 1,
            slot_height_sum: 1,
            slot_height_max: 1,
            slot_width_sum: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacedSquare {
    pub size: u32,
    pub x: u32,
    pub y: u32,
}

/// A gap above the skyline: `width` wide, from height `y` to the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpenSlot {
    pub x: u32,
    pub y: u32,
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacementResult {
    pub placed: Vec<PlacedSquare>,
    pub unplaced: Vec<u32>,
    pub open_slots: Vec<OpenSlot>,
}

impl PlacementResult {
    pub fn is_complete(&self) -> bool {
        self.unplaced.is_empty()
    }
}

#[derive(Clone, Copy)]
struct Segment {
    x: u32,
    width: u32,
    height: u32,
}

/// Drops squares in `order` onto the lowest-leftmost skyline segment until
/// one does not fit.
pub fn greedy_place(order: &[u32], master: u32) -> PlacementResult {
    let mut sky = vec![Segment { x: 0, width: master, height: 0 }];
    let mut placed = Vec::with_capacity(order.len());
    let mut unplaced = Vec::new();

    for (idx, &s) in order.iter().enumerate() {
        // segments are kept sorted by x, so the first minimum is the leftmost
        let (i, seg) = sky
            .iter()
            .copied()
            .enumerate()
            .min_by_key(|(_, g)| g.height)
            .expect("skyline is never empty");
        if s > seg.width || seg.height + s > master {
            unplaced.extend_from_slice(&order[idx..]);
            break;
        }
        placed.push(PlacedSquare { size: s, x: seg.x, y: seg.height });
        let top = Segment { x: seg.x, width: s, height: seg.height + s };
        if s < seg.width {
            let rest = Segment { x: seg.x + s, width: seg.width - s, height: seg.height };
            sky.splice(i..=i, [top, rest]);
        } else {
            sky[i] = top;
        }
        merge_equal_neighbours(&mut sky, i);
    }

    let open_slots = sky
        .iter()
        .filter(|g| g.height < master)
        .map(|g| OpenSlot { x: g.x, y: g.height, width: g.width, height: master - g.height })
        .collect();
    PlacementResult { placed, unplaced, open_slots }
}

/// Merges segment `i` with neighbours at the same height.
fn merge_equal_neighbours(sky: &mut Vec<Segment>, mut i: usize) {
    if i > 0 && sky[i - 1].height == sky[i].height {
        sky[i - 1].width += sky[i].width;
        sky.remove(i);
        i -= 1;
    }
    if i + 1 < sky.len() && sky[i + 1].height == sky[i].height {
        sky[i].width += sky[i + 1].width;
        sky.remove(i + 1);
    }
}

#[derive(Debug, Clone)]
pub struct PerfectSquareProblem {
    master_size: u32,
    sizes: Vec<u32>,
    instance_id: Option<usize>,
    weights: PerfectSquareWeights,
}

impl PerfectSquareProblem {
    /// Builds an instance, rejecting it unless the square areas add up to
    /// the master area.
    pub fn new(master_size: u32, sizes: Vec<u32>) -> Result<Self, ProblemError> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(ProblemError::InvalidInstance("square sizes must be positive".into()));
        }
        let area: u64 = sizes.iter().map(|&s| u64::from(s) * u64::from(s)).sum();
        let master_area = u64::from(master_size) * u64::from(master_size);
        if area != master_area {
            return Err(ProblemError::InvalidInstance(format!(
                "square areas sum to {area}, master area is {master_area}"
            )));
        }
        Ok(Self { master_size, sizes, instance_id: None, weights: PerfectSquareWeights::default() })
    }

    /// One of the benchmark instances. Only instance 1 ships with the crate;
    /// the others must be loaded with [`PerfectSquareProblem::load_instance`].
    pub fn instance(id: usize) -> Result<Self, ProblemError> {
        match id {
            1 => Self::parse(INSTANCE_1)?.checked_as(1),
            2..=5 => Err(ProblemError::InstanceUnavailable(id)),
            _ => Err(ProblemError::InvalidInstance(format!("no perfect-square instance {id}"))),
        }
    }

    /// Loads an instance file and checks it against the benchmark table.
    pub fn load_instance(path: impl AsRef<Path>, id: usize) -> Result<Self, ProblemError> {
        Self::load(path)?.checked_as(id)
    }

    /// Loads an instance file: first line the master size, then one square
    /// size per line.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ProblemError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| ProblemError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ProblemError> {
        let mut nums = text.lines().map(str::trim).filter(|l| !l.is_empty()).map(|l| {
            l.parse::<u32>()
                .map_err(|_| ProblemError::InvalidInstance(format!("not a square size: {l:?}")))
        });
        let master = nums
            .next()
            .ok_or_else(|| ProblemError::InvalidInstance("empty instance file".into()))??;
        let sizes = nums.collect::<Result<Vec<_>, _>>()?;
        Self::new(master, sizes)
    }

    fn checked_as(mut self, id: usize) -> Result<Self, ProblemError> {
        let &(master, count, largest) = INSTANCE_TABLE
            .get(id.wrapping_sub(1))
            .ok_or_else(|| ProblemError::InvalidInstance(format!("no perfect-square instance {id}")))?;
        let got = (self.master_size, self.sizes.len(), self.largest());
        if got != (master, count, largest) {
            return Err(ProblemError::InvalidInstance(format!(
                "instance {id} should be master {master}, {count} squares, largest {largest}; got {got:?}"
            )));
        }
        self.instance_id = Some(id);
        Ok(self)
    }

    pub fn with_weights(mut self, weights: PerfectSquareWeights) -> Self {
        self.weights = weights;
        self
    }

    pub fn master_size(&self) -> u32 {
        self.master_size
    }

    pub fn square_sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn instance_id(&self) -> Option<usize> {
        self.instance_id
    }

    pub fn weights(&self) -> PerfectSquareWeights {
        self.weights
    }

    pub fn largest(&self) -> u32 {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    /// Weighted cost of a placement; zero iff nothing is left unplaced.
    pub fn placement_cost(&self, p: &PlacementResult) -> Cost {
        if p.unplaced.is_empty() {
            return 0;
        }
        let w = &self.weights;
        let largest = p.unplaced.iter().copied().max().unwrap_or(0) as Cost;
        let height_sum: Cost = p.open_slots.iter().map(|s| s.height as Cost).sum();
        let height_max = p.open_slots.iter().map(|s| s.height as Cost).max().unwrap_or(0);
        let width_sum: Cost = p.open_slots.iter().map(|s| s.width as Cost).sum();
        // keep the count term positive even with zero weights
        (w.unplaced_count * p.unplaced.len() as Cost).max(1)
            + w.largest_unplaced * largest
            + w.slot_height_sum * height_sum
            + w.slot_height_max * height_max
            + w.slot_width_sum * width_sum
    }
}

impl fmt::Display for PerfectSquareProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} squares into {}x{}", self.sizes.len(), self.master_size, self.master_size)
    }
}

impl ProblemModel for PerfectSquareProblem {
    fn name(&self) -> String {
        match self.instance_id {
            Some(id) => format!("perfect-square-{id}"),
            None => format!("perfect-square-{}x{}", self.master_size, self.sizes.len()),
        }
    }

    fn size(&self) -> usize {
        self.sizes.len()
    }

    fn base_values(&self) -> &[u32] {
        &self.sizes
    }

    fn cost(&self, values: &[u32]) -> Cost {
        self.placement_cost(&greedy_place(values, self.master_size))
    }

    /// Placed squares carry no error; each unplaced square carries its size,
    /// so the largest square left over is repaired first.
    fn variable_errors(&self, values: &[u32], errors: &mut [Cost]) {
        let placed = greedy_place(values, self.master_size).placed.len();
        for (i, e) in errors.iter_mut().enumerate() {
            *e = if i < placed { 0 } else { values[i] as Cost };
        }
    }

    fn validate(&self, values: &[u32]) -> bool {
        is_permutation_of(values, &self.sizes) && grid_tiles(values, self.master_size)
    }

    fn evaluator(&self) -> Box<dyn SwapEvaluator + '_> {
        Box::new(FullRecompute::new(self))
    }
}

/// Replays the order on a cell grid: each square goes to the first empty cell
/// in bottom-to-top, left-to-right order and must cover only empty cells.
fn grid_tiles(order: &[u32], master: u32) -> bool {
    let m = master as usize;
    let mut filled = vec![false; m * m];
    let mut cursor = 0;
    for &s in order {
        let s = s as usize;
        while cursor < filled.len() && filled[cursor] {
            cursor += 1;
        }
        if cursor == filled.len() {
            return false;
        }
        let (y, x) = (cursor / m, cursor % m);
        if x + s > m || y + s > m {
            return false;
        }
        for row in y..y + s {
            let cells = &mut filled[row * m + x..row * m + x + s];
            if cells.iter().any(|&c| c) {
                return false;
            }
            cells.iter_mut().for_each(|c| *c = true);
        }
    }
    filled.iter().all(|&c| c)
}
