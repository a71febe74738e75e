//! Exhaustive sweeps over S_n, split by first entry across the rayon pool.

use rayon::prelude::*;

use crate::perm::{next_lex, Permutation};

/// Visits every permutation of length `n` starting with `first`, in lexicographic order.
fn for_each_with_first(n: usize, first: usize, mut f: impl FnMut(&Permutation)) {
    let mut values = Vec::with_capacity(n);
    values.push(first);
    values.extend((1..=n).filter(|&v| v != first));
    let mut pi = Permutation::from_vec_unchecked(values);
    loop {
        f(&pi);
        if !next_lex(&mut pi.values_mut()[1..]) {
            break;
        }
    }
}

/// Number of permutations of length `n` satisfying `pred`.
pub fn count<F>(n: usize, pred: F) -> u64
where
    F: Fn(&Permutation) -> bool + Sync,
{
    if n == 0 {
        return u64::from(pred(&Permutation::empty()));
    }
    (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut c = 0;
            for_each_with_first(n, first, |pi| {
                if pred(pi) {
                    c += 1;
                }
            });
            c
        })
        .sum()
}

/// Permutations of length `n` satisfying `pred`, in lexicographic order.
pub fn collect<F>(n: usize, pred: F) -> Vec<Permutation>
where
    F: Fn(&Permutation) -> bool + Sync,
{
    if n == 0 {
        return if pred(&Permutation::empty()) {
            vec![Permutation::empty()]
        } else {
            Vec::new()
        };
    }
    let chunks: Vec<Vec<Permutation>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            for_each_with_first(n, first, |pi| {
                if pred(pi) {
                    out.push(pi.clone());
                }
            });
            out
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

/// Folds `f` over every permutation of length `n` into per-worker accumulators, then
/// merges them with `merge`. `merge` must be commutative and associative.
pub fn fold<A, F, M>(n: usize, init: impl Fn() -> A + Sync, f: F, merge: M) -> A
where
    A: Send,
    F: Fn(&mut A, &Permutation) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    if n == 0 {
        let mut acc = init();
        f(&mut acc, &Permutation::empty());
        return acc;
    }
    (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            for_each_with_first(n, first, |pi| f(&mut acc, pi));
            acc
        })
        .reduce(&init, &merge)
}

/// First permutation (lexicographically) for which `pred` holds.
pub fn find_first<F>(n: usize, pred: F) -> Option<Permutation>
where
    F: Fn(&Permutation) -> bool + Sync,
{
    if n == 0 {
        let e = Permutation::empty();
        return pred(&e).then_some(e);
    }
    let hits: Vec<Option<Permutation>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut hit = None;
            for_each_with_first(n, first, |pi| {
                if hit.is_none() && pred(pi) {
                    hit = Some(pi.clone());
                }
            });
            hit
        })
        .collect();
    hits.into_iter().flatten().next()
}
