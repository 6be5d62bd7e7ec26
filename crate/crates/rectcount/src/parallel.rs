//! Rayon drivers over the branch APIs of the core enumerators.

use std::collections::BTreeSet;

use rayon::prelude::*;
use rectcount_core::oracle::{MultisetKey, Tiler};
use rectcount_core::tile2::{p2_from_tilde, PartSet, TileCounter};
use rectcount_core::Natural;

/// `None` leaves the choice to rayon.
pub fn pool(jobs: Option<usize>) -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        b = b.num_threads(j.max(1));
    }
    b.build().expect("thread pool")
}

/// Tile counts for `n = 0..=max` with every `(n, branch)` pair as one task.
pub fn tile_table(max: u32, parts: &PartSet, pool: &rayon::ThreadPool) -> Vec<Natural> {
    let counters: Vec<TileCounter> = (0..=max).map(|n| TileCounter::new(n, parts.clone())).collect();
    let tasks: Vec<(usize, _)> = counters.iter().enumerate().flat_map(|(n, c)| c.branches().into_iter().map(move |b| (n, b))).collect();
    let counts: Vec<(usize, u128)> = pool.install(|| tasks.par_iter().map(|&(n, b)| (n, counters[n].count_branch(b))).collect());
    let mut table = vec![0u128; max as usize + 1];
    for (n, c) in counts {
        table[n] += c;
    }
    table.into_iter().map(Natural::from).collect()
}

pub fn p2_table(max: u32, pool: &rayon::ThreadPool) -> Vec<Natural> {
    p2_from_tilde(&tile_table(max, &PartSet::All, pool))
}

/// Distinct multisets over all tilings, split by placement prefixes.
pub fn count_multisets(tiler: &Tiler, pool: &rayon::ThreadPool) -> Natural {
    let depth = if tiler.rows() * tiler.cols() >= 16 { 3 } else { 1 };
    let prefixes = tiler.prefixes(depth);
    let keys: BTreeSet<MultisetKey> = pool.install(|| {
        prefixes
            .par_iter()
            .map(|p| tiler.keys_from(p))
            .reduce(BTreeSet::new, |mut a, mut b| {
                if a.len() < b.len() {
                    std::mem::swap(&mut a, &mut b);
                }
                a.extend(b);
                a
            })
    });
    Natural::from(keys.len())
}
