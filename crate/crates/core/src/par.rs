//! Execution helpers: data-parallel with the `parallel` feature (rayon),
//! sequential otherwise.
//!
//! Every reduction used here is associative and commutative (sums, minima,
//! first-success-by-index), so results are identical for any worker count,
//! including one.

/// Map `range` and fold with an associative, commutative `reduce`.
#[cfg(feature = "parallel")]
pub fn map_reduce<T, M, R>(range: std::ops::Range<u64>, identity: T, map: M, reduce: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    use rayon::prelude::*;
    range
        .into_par_iter()
        .map(map)
        .reduce(|| identity.clone(), reduce)
}

#[cfg(not(feature = "parallel"))]
pub fn map_reduce<T, M, R>(range: std::ops::Range<u64>, identity: T, map: M, reduce: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    range.map(map).fold(identity, reduce)
}

/// Sequential reference path for the same contract as [`map_reduce`];
/// the benches compare the two on identical workloads.
pub fn map_reduce_seq<T, M, R>(range: std::ops::Range<u64>, identity: T, map: M, reduce: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    range.map(map).fold(identity, reduce)
}

/// Map each item of a slice, preserving input order in the output.
#[cfg(feature = "parallel")]
pub fn map_collect<I, T, M>(items: &[I], map: M) -> Vec<T>
where
    I: Sync,
    T: Send,
    M: Fn(&I) -> T + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(map).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<I, T, M>(items: &[I], map: M) -> Vec<T>
where
    I: Sync,
    T: Send,
    M: Fn(&I) -> T + Sync + Send,
{
    items.iter().map(map).collect()
}

/// First `Some` by trial index over `0..trials`, plus the total success
/// count. Deterministic regardless of scheduling: the winner is defined by
/// index order, not completion order.
pub fn first_success_by_index<T, F>(trials: u64, f: F) -> (Option<(u64, T)>, u64)
where
    T: Send + Sync + Clone,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    let (best, successes) = map_reduce(
        0..trials,
        (None::<(u64, T)>, 0u64),
        |i| match f(i) {
            Some(v) => (Some((i, v)), 1),
            None => (None, 0),
        },
        |(a, ca), (b, cb)| {
            let best = match (a, b) {
                (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
                (Some(x), None) => Some(x),
                (None, y) => y,
            };
            (best, ca + cb)
        },
    );
    (best, successes)
}

/// Pin the global worker pool size; 0 keeps the default. Results never
/// depend on this (all reductions are order-independent), only wall time
/// does. Without the `parallel` feature this is a no-op.
#[cfg(feature = "parallel")]
pub fn configure_workers(n: usize) {
    if n > 0 {
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

#[cfg(not(feature = "parallel"))]
pub fn configure_workers(_n: usize) {}

/// Derive a per-trial seed from a base seed (splitmix64 finalizer).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_matches_sequential() {
        let f = |i: u64| i * i;
        let a = map_reduce(0..1000, 0u64, f, |x, y| x + y);
        let b = map_reduce_seq(0..1000, 0u64, f, |x, y| x + y);
        assert_eq!(a, b);
    }

    #[test]
    fn first_success_is_by_index() {
        // All odd trials succeed; the winner must be the smallest odd index.
        let (best, n) = first_success_by_index(100, |i| (i % 2 == 1).then_some(i));
        assert_eq!(best, Some((1, 1)));
        assert_eq!(n, 50);
    }

    #[test]
    fn derived_seeds_are_stable() {
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
        assert_ne!(derive_seed(7, 3), derive_seed(7, 4));
    }
}
