//! Deterministic parallel reductions.
//!
//! Report files must be byte-identical across runs and thread counts, so
//! floating-point sums are reduced in a fixed order: the index range is cut
//! into fixed-size blocks, block sums are computed in parallel, and the block
//! results are folded sequentially in index order. Max-reductions commute and
//! need no such care.

use rayon::prelude::*;

const BLOCK: usize = 4096;

/// Sum of `term(i)` for `i in 0..n`, reduced in a thread-count-independent
/// order.
pub fn block_sum<F>(n: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    if n <= BLOCK {
        return (0..n).map(term).sum();
    }
    let blocks = n.div_ceil(BLOCK);
    let partials: Vec<f64> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * BLOCK;
            let hi = ((b + 1) * BLOCK).min(n);
            (lo..hi).map(&term).sum::<f64>()
        })
        .collect();
    partials.into_iter().sum()
}

/// Max of `term(i)` for `i in 0..n`; `f64::max` is order-independent for
/// finite inputs so a plain parallel reduce is deterministic.
pub fn par_max<F>(n: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    (0..n)
        .into_par_iter()
        .map(term)
        .reduce(|| f64::NEG_INFINITY, f64::max)
}
