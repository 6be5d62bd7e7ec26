//! Brute-force ground truth: enumerate the geometric tilings of an `m x n`
//! grid by rectangles and count distinct block multisets.
//!
//! Tilings are generated once each by always covering the first empty cell
//! in row-major order; that cell must be the top-left corner of its block.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::partcore::Natural;
use crate::Result;

/// Largest grid area accepted by default.
pub const SIZE_LIMIT: u32 = 30;
/// Largest grid area accepted with the override.
pub const EXTENDED_LIMIT: u32 = 36;

/// A block placed with its top-left corner at `(row, col)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Placement {
    pub row: u32,
    pub col: u32,
    pub height: u32,
    pub width: u32,
}

impl Placement {
    /// Canonical dimensions `(a, b)` with `a <= b`.
    pub fn dims(&self) -> (u32, u32) {
        (self.height.min(self.width), self.height.max(self.width))
    }
}

/// A tiled (or partially tiled) grid: `cells` holds block index + 1, 0 if empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    pub rows: u32,
    pub cols: u32,
    pub cells: Vec<u32>,
    pub blocks: Vec<Placement>,
}

impl Grid {
    pub fn from_placements(rows: u32, cols: u32, blocks: &[Placement]) -> Self {
        let mut cells = vec![0; (rows * cols) as usize];
        for (id, b) in blocks.iter().enumerate() {
            for r in b.row..(b.row + b.height).min(rows) {
                for c in b.col..(b.col + b.width).min(cols) {
                    cells[(r * cols + c) as usize] = id as u32 + 1;
                }
            }
        }
        Grid { rows, cols, cells, blocks: blocks.to_vec() }
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|&c| c != 0)
    }

    /// Every block lies inside the grid, blocks do not overlap, and each
    /// block's cells are exactly its rectangle.
    pub fn is_well_formed(&self) -> bool {
        let mut seen = vec![0u32; self.cells.len()];
        for (id, b) in self.blocks.iter().enumerate() {
            if b.height == 0 || b.width == 0 || b.row + b.height > self.rows || b.col + b.width > self.cols {
                return false;
            }
            for r in b.row..b.row + b.height {
                for c in b.col..b.col + b.width {
                    let i = (r * self.cols + c) as usize;
                    if seen[i] != 0 || self.cells[i] != id as u32 + 1 {
                        return false;
                    }
                    seen[i] = id as u32 + 1;
                }
            }
        }
        seen == self.cells
    }

    /// One line, block ids row-major.
    pub fn dump(&self) -> alloc::string::String {
        let ids: Vec<alloc::string::String> = self.cells.iter().map(|c| alloc::format!("{c}")).collect();
        ids.join(" ")
    }
}

/// Sorted canonical dimension pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockMultiset {
    pub blocks: Vec<(u32, u32)>,
}

impl BlockMultiset {
    pub fn area(&self) -> u32 {
        self.blocks.iter().map(|&(a, b)| a * b).sum()
    }
}

pub fn canonical_multiset(grid: &Grid) -> Result<BlockMultiset> {
    if !grid.is_complete() {
        return Err(Error::IncompleteGrid);
    }
    let mut blocks: Vec<(u32, u32)> = grid.blocks.iter().map(Placement::dims).collect();
    blocks.sort_unstable();
    Ok(BlockMultiset { blocks })
}

/// Packed block counts, 6 bits per block type.
pub type MultisetKey = [u64; 4];

const BITS_PER_TYPE: usize = 6;
const TYPES_PER_WORD: usize = 64 / BITS_PER_TYPE;

// (anchor cell, shape index) per placed block
type Placed = [(u32, usize)];

#[derive(Debug, Clone, Copy)]
struct Shape {
    height: u32,
    width: u32,
    type_index: usize,
}

/// Enumerator for one grid and block filter.
#[derive(Debug, Clone)]
pub struct Tiler {
    rows: u32,
    cols: u32,
    full: u64,
    types: Vec<(u32, u32)>,
    shapes: Vec<Shape>,
    // per cell: (shape index, occupancy mask) of every placement anchored there
    anchored: Vec<Vec<(usize, u64)>>,
}

impl Tiler {
    /// `allow(a, b)` decides whether the `a x b` block (`a <= b`) may be used.
    pub fn new(rows: u32, cols: u32, allow: impl Fn(u32, u32) -> bool, extended: bool) -> Result<Self> {
        let limit = if extended { EXTENDED_LIMIT } else { SIZE_LIMIT };
        if rows * cols > limit {
            return Err(Error::SizeGuard { rows, cols, limit });
        }
        let mut types = Vec::new();
        for a in 1..=rows.max(cols) {
            for b in a..=rows.max(cols) {
                let fits = (a <= rows && b <= cols) || (b <= rows && a <= cols);
                if fits && allow(a, b) {
                    types.push((a, b));
                }
            }
        }
        assert!(types.len() <= 4 * TYPES_PER_WORD, "too many block types for the packed key");
        let mut shapes = Vec::new();
        for (t, &(a, b)) in types.iter().enumerate() {
            shapes.push(Shape { height: a, width: b, type_index: t });
            if a != b {
                shapes.push(Shape { height: b, width: a, type_index: t });
            }
        }
        let mut anchored = vec![Vec::new(); (rows * cols) as usize];
        for r in 0..rows {
            for c in 0..cols {
                for (s, shape) in shapes.iter().enumerate() {
                    if r + shape.height > rows || c + shape.width > cols {
                        continue;
                    }
                    let mut mask = 0u64;
                    for dr in 0..shape.height {
                        for dc in 0..shape.width {
                            mask |= 1 << ((r + dr) * cols + c + dc);
                        }
                    }
                    anchored[(r * cols + c) as usize].push((s, mask));
                }
            }
        }
        let cells = rows * cols;
        let full = if cells == 64 { u64::MAX } else { (1u64 << cells) - 1 };
        Ok(Tiler { rows, cols, full, types, shapes, anchored })
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn block_types(&self) -> &[(u32, u32)] {
        &self.types
    }

    fn placement(&self, cell: u32, shape: usize) -> Placement {
        let s = self.shapes[shape];
        Placement { row: cell / self.cols, col: cell % self.cols, height: s.height, width: s.width }
    }

    fn bump(key: &mut MultisetKey, type_index: usize, add: bool) {
        let shift = (type_index % TYPES_PER_WORD) * BITS_PER_TYPE;
        let word = &mut key[type_index / TYPES_PER_WORD];
        if add {
            *word += 1 << shift;
        } else {
            *word -= 1 << shift;
        }
    }

    /// Decodes a packed key into a sorted multiset.
    pub fn decode(&self, key: &MultisetKey) -> BlockMultiset {
        let mut blocks = Vec::new();
        for (t, &dims) in self.types.iter().enumerate() {
            let shift = (t % TYPES_PER_WORD) * BITS_PER_TYPE;
            let count = (key[t / TYPES_PER_WORD] >> shift) & ((1 << BITS_PER_TYPE) - 1);
            blocks.extend(core::iter::repeat_n(dims, count as usize));
        }
        BlockMultiset { blocks }
    }

    /// Calls `visit` with the placements of every complete tiling.
    pub fn visit(&self, mut visit: impl FnMut(&[Placement])) {
        let mut stack = Vec::new();
        self.walk(0, &mut stack, &mut |placed: &Placed| {
            let blocks: Vec<Placement> = placed.iter().map(|&(c, s)| self.placement(c, s)).collect();
            visit(&blocks);
        });
    }

    fn walk(&self, occ: u64, stack: &mut Vec<(u32, usize)>, leaf: &mut dyn FnMut(&Placed)) {
        if occ == self.full {
            leaf(stack);
            return;
        }
        let cell = (!occ).trailing_zeros();
        for &(s, mask) in &self.anchored[cell as usize] {
            if occ & mask == 0 {
                stack.push((cell, s));
                self.walk(occ | mask, stack, leaf);
                stack.pop();
            }
        }
    }

    /// Partial tilings after `depth` first-empty-cell placements (or fewer,
    /// if the grid fills up), for splitting work.
    pub fn prefixes(&self, depth: usize) -> Vec<Vec<Placement>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.prefix_walk(0, depth, &mut stack, &mut out);
        out
    }

    fn prefix_walk(&self, occ: u64, depth: usize, stack: &mut Vec<(u32, usize)>, out: &mut Vec<Vec<Placement>>) {
        if occ == self.full || stack.len() == depth {
            out.push(stack.iter().map(|&(c, s)| self.placement(c, s)).collect());
            return;
        }
        let cell = (!occ).trailing_zeros();
        for &(s, mask) in &self.anchored[cell as usize] {
            if occ & mask == 0 {
                stack.push((cell, s));
                self.prefix_walk(occ | mask, depth, stack, out);
                stack.pop();
            }
        }
    }

    /// Distinct multiset keys over all completions of `prefix`.
    pub fn keys_from(&self, prefix: &[Placement]) -> BTreeSet<MultisetKey> {
        let mut occ = 0u64;
        let mut key: MultisetKey = [0; 4];
        for p in prefix {
            let cell = p.row * self.cols + p.col;
            let &(s, mask) = self.anchored[cell as usize]
                .iter()
                .find(|&&(s, _)| self.shapes[s].height == p.height && self.shapes[s].width == p.width)
                .expect("prefix placement must be allowed");
            assert!(occ & mask == 0, "prefix placements overlap");
            occ |= mask;
            Self::bump(&mut key, self.shapes[s].type_index, true);
        }
        let mut keys = BTreeSet::new();
        self.key_walk(occ, &mut key, &mut keys);
        keys
    }

    fn key_walk(&self, occ: u64, key: &mut MultisetKey, keys: &mut BTreeSet<MultisetKey>) {
        if occ == self.full {
            keys.insert(*key);
            return;
        }
        let cell = (!occ).trailing_zeros();
        for &(s, mask) in &self.anchored[cell as usize] {
            if occ & mask == 0 {
                let t = self.shapes[s].type_index;
                Self::bump(key, t, true);
                self.key_walk(occ | mask, key, keys);
                Self::bump(key, t, false);
            }
        }
    }

    pub fn count_multisets(&self) -> Natural {
        Natural::from(self.keys_from(&[]).len())
    }

    /// Keys of multisets with at least one tiling invariant under swapping
    /// the two rows of a `2 x n` grid.
    pub fn symmetric_keys(&self) -> BTreeSet<MultisetKey> {
        assert_eq!(self.rows, 2, "row-swap symmetry is defined for two rows");
        let mut keys = BTreeSet::new();
        let mut stack = Vec::new();
        self.walk(0, &mut stack, &mut |placed: &Placed| {
            let blocks: Vec<Placement> = placed.iter().map(|&(c, s)| self.placement(c, s)).collect();
            if is_row_swap_symmetric(&blocks, self.rows) {
                let mut key = [0; 4];
                for &(_, s) in placed {
                    Self::bump(&mut key, self.shapes[s].type_index, true);
                }
                keys.insert(key);
            }
        });
        keys
    }
}

/// Whether reflecting every block across the horizontal midline gives the
/// same set of blocks.
pub fn is_row_swap_symmetric(blocks: &[Placement], rows: u32) -> bool {
    let set: BTreeSet<Placement> = blocks.iter().copied().collect();
    blocks.iter().all(|b| set.contains(&Placement { row: rows - b.row - b.height, ..*b }))
}

pub fn enumerate_tilings(rows: u32, cols: u32, allow: impl Fn(u32, u32) -> bool) -> Result<Vec<Grid>> {
    let tiler = Tiler::new(rows, cols, allow, false)?;
    let mut out = Vec::new();
    tiler.visit(|blocks| out.push(Grid::from_placements(rows, cols, blocks)));
    Ok(out)
}

pub fn count_multisets(rows: u32, cols: u32, allow: impl Fn(u32, u32) -> bool) -> Result<Natural> {
    Ok(Tiler::new(rows, cols, allow, false)?.count_multisets())
}

/// Every block allowed.
pub fn all_blocks(_: u32, _: u32) -> bool {
    true
}

/// Blocks `1 x i` (`i <= k`) and `2 x j` (`2 <= j <= l`), as canonical pairs.
pub fn restricted_blocks(k: u32, l: u32) -> impl Fn(u32, u32) -> bool {
    move |a, b| (a == 1 && b <= k) || (a == 2 && (2..=l).contains(&b))
}

/// `T(n)` (all blocks) or `S(n)` (no `1 x 2` block) by enumeration.
pub fn count_symmetric_multisets(n: u32, allow_one_by_two: bool) -> Result<Natural> {
    let tiler = Tiler::new(2, n, |a, b| allow_one_by_two || (a, b) != (1, 2), false)?;
    Ok(Natural::from(tiler.symmetric_keys().len()))
}
