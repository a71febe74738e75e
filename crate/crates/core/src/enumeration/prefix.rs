//! Decomposition of a sortable permutation by where its `1` sits.
//!
//! For `n >= 4` every two-pop-stack sortable permutation falls in exactly one of six
//! cases, each pairing it with a smaller sortable permutation (the child):
//!
//! 1. `π = 1 ⊕ child`
//! 2. `1` ends the first block, which has length at least 2; `child` is `π` without `1`
//! 3. `π` starts `312`; `child` is the suffix after it
//! 4. `π` starts `413` and the suffix opens with a decreasing run of length >= 2
//!    ending in `2`; `child` is that suffix
//! 5. `π = 2 p 1 (p-1) ...` with the fifth entry, if any, above `p`; `child` drops
//!    `2`, `1` and `p-1`
//! 6. `π = 2 D 1 ...` where `D` is decreasing and is exactly the first block of
//!    `child`, which drops `2` and `1`; when `D` is a single entry it must sit below
//!    the entry after `1`
//!
//! Running the cases backwards builds each length from the three before it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{all_permutations, reduce_distinct, Permutation};
use crate::policy::Policy;
use crate::popstack::is_two_pop_sortable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixCase {
    /// 1 through 6.
    pub case: u8,
    pub child: Permutation,
}

impl PrefixCase {
    /// How much shorter the child is than its parent.
    pub fn shrink(case: u8) -> usize {
        match case {
            1 | 2 => 1,
            6 => 2,
            _ => 3,
        }
    }
}

fn strictly_decreasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}

fn shifted(s: &[usize], by: usize) -> impl Iterator<Item = usize> + '_ {
    s.iter().map(move |&x| x + by)
}

/// Length of the first block.
fn leading_block_len(v: &[usize]) -> usize {
    if v.is_empty() {
        return 0;
    }
    let mut j = 1;
    while j < v.len() && v[j] < v[j - 1] {
        j += 1;
    }
    j
}

/// Every case whose shape condition holds for `v` (length >= 4), with its child word.
fn matching_cases(v: &[usize]) -> Vec<(u8, Vec<usize>)> {
    let n = v.len();
    let one = v.iter().position(|&x| x == 1).expect("permutation holds 1");
    let mut hits = Vec::new();

    if one == 0 {
        hits.push((1, v[1..].to_vec()));
    }
    // `one` is 0-based; the 1-based position of 1 is `one + 1`
    let closes_block = |from: usize| {
        strictly_decreasing(&v[from..one]) && (one + 1 == n || v[one - 1] < v[one + 1])
    };
    if one >= 1 && closes_block(0) {
        let mut child = v[..one].to_vec();
        child.extend_from_slice(&v[one + 1..]);
        hits.push((2, child));
    }
    if v[..3] == [3, 1, 2] {
        hits.push((3, v[3..].to_vec()));
    }
    if v[..3] == [4, 1, 3] {
        let run = leading_block_len(&v[3..]);
        if run >= 2 && v[3 + run - 1] == 2 {
            hits.push((4, v[3..].to_vec()));
        }
    }
    if v[0] == 2 && v[2] == 1 && v[3] + 1 == v[1] && (n == 4 || v[4] > v[1]) {
        let mut child = vec![v[1]];
        child.extend_from_slice(&v[4..]);
        hits.push((5, child));
    }
    if v[0] == 2 && one >= 2 && closes_block(1) {
        let mut child = v[1..one].to_vec();
        child.extend_from_slice(&v[one + 1..]);
        hits.push((6, child));
    }
    hits
}

/// The unique case describing `pi` and its reduced child.
pub fn classify_prefix(pi: &Permutation) -> Result<PrefixCase> {
    if pi.len() < 4 {
        return Err(Error::Domain(format!(
            "prefix decomposition needs length >= 4, got {}",
            pi.len()
        )));
    }
    if !is_two_pop_sortable(pi) {
        return Err(Error::Domain(format!("{pi} is not two-pop-stack sortable")));
    }
    let mut hits = matching_cases(pi.values());
    if hits.len() != 1 {
        let ids: Vec<u8> = hits.iter().map(|h| h.0).collect();
        return Err(Error::Internal(format!(
            "{pi} matches prefix cases {ids:?}, expected exactly one"
        )));
    }
    let (case, word) = hits.pop().unwrap();
    let child = reduce_distinct(&word);
    if !is_two_pop_sortable(&child) {
        return Err(Error::Internal(format!(
            "case {case} child {child} of {pi} is not sortable"
        )));
    }
    Ok(PrefixCase { case, child })
}

/// Builds the parent of `child` under `case`, or `None` when the case does not apply
/// to a child of this shape.
pub fn extend_by_case(case: u8, child: &Permutation) -> Option<Permutation> {
    let c = child.values();
    let m = c.len();
    let mut out: Vec<usize> = Vec::with_capacity(m + PrefixCase::shrink(case));
    match case {
        1 => {
            out.push(1);
            out.extend(shifted(c, 1));
        }
        2 => {
            if m == 0 {
                return None;
            }
            let j = leading_block_len(c);
            out.extend(shifted(&c[..j], 1));
            out.push(1);
            out.extend(shifted(&c[j..], 1));
        }
        3 => {
            out.extend([3, 1, 2]);
            out.extend(shifted(c, 3));
        }
        4 => {
            if m < 2 || c[0] < c[1] {
                return None;
            }
            out.extend([4, 1, 3]);
            out.extend(c.iter().map(|&x| if x == 1 { 2 } else { x + 3 }));
        }
        5 => {
            if m == 0 || (m >= 2 && c[0] > c[1]) {
                return None;
            }
            let t = c[0];
            out.extend([2, t + 3, 1, t + 2]);
            out.extend(c[1..].iter().map(|&x| if x < t { x + 2 } else { x + 3 }));
        }
        6 => {
            if m == 0 {
                return None;
            }
            let j = leading_block_len(c);
            out.push(2);
            out.extend(shifted(&c[..j], 2));
            out.push(1);
            out.extend(shifted(&c[j..], 2));
        }
        _ => return None,
    }
    Some(Permutation::from_vec_unchecked(out))
}

/// All two-pop-stack sortable permutations of length `n`, sorted, built by running the
/// six cases backwards from lengths `n-1`, `n-2` and `n-3`.
pub fn generate_sortable(n: usize, policy: &Policy) -> Result<Vec<Permutation>> {
    policy.check_brute(n)?;
    let mut levels: Vec<Vec<Permutation>> = Vec::with_capacity(n + 1);
    for len in 0..=n {
        let level = if len < 4 {
            // every permutation of length <= 3 is sortable
            all_permutations(len).collect()
        } else {
            let mut level = Vec::new();
            for case in 1..=6u8 {
                for child in &levels[len - PrefixCase::shrink(case)] {
                    if let Some(parent) = extend_by_case(case, child) {
                        level.push(parent);
                    }
                }
            }
            level.sort();
            level
        };
        levels.push(level);
    }
    Ok(levels.pop().unwrap())
}
