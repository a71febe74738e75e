//! One deterministic pass through a pop stack, iterated.
//!
//! A pass reverses every block (maximal decreasing run). This module is the
//! ground truth that every characterization elsewhere is checked against.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Output of one pass: the concatenation of the reversed blocks.
pub fn pop_pass(pi: &Permutation) -> Permutation {
    let v = pi.values();
    let mut out = Vec::with_capacity(v.len());
    let mut start = 0;
    for i in 1..=v.len() {
        if i == v.len() || v[i - 1] < v[i] {
            out.extend(v[start..i].iter().rev());
            start = i;
        }
    }
    Permutation::from_vec_unchecked(out)
}

/// True iff `passes` applications of [`pop_pass`] produce the identity.
pub fn is_sortable(pi: &Permutation, passes: usize) -> bool {
    let mut current = pi.clone();
    for _ in 0..passes {
        if current.is_identity() {
            return true;
        }
        current = pop_pass(&current);
    }
    current.is_identity()
}

/// Membership in the two-pop-stack sortable class, by simulation.
pub fn is_two_pop_sortable(pi: &Permutation) -> bool {
    is_sortable(pi, 2)
}

/// Direct sum of decreasing permutations (equivalently avoids 231 and 312).
///
/// Checked directly from the layer structure rather than by simulation.
pub fn is_layered(pi: &Permutation) -> bool {
    let mut base = 0;
    for block in pi.blocks().iter() {
        if block.max() != base + block.len() {
            return false;
        }
        base += block.len();
    }
    true
}

/// `π, P(π), P(P(π)), …` ending at the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SortTrace {
    stages: Vec<Permutation>,
}

impl SortTrace {
    pub fn stages(&self) -> &[Permutation] {
        &self.stages
    }

    /// Passes needed to reach the identity.
    pub fn passes(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn result(&self) -> &Permutation {
        self.stages.last().expect("trace is never empty")
    }
}

pub fn sort_trace(pi: &Permutation) -> Result<SortTrace> {
    let n = pi.len();
    let cap = n * n.saturating_sub(1) / 2 + 1;
    let mut stages = vec![pi.clone()];
    while !stages.last().unwrap().is_identity() {
        if stages.len() >= cap {
            return Err(Error::Internal(format!(
                "pop-stack trace of {pi} exceeded {cap} stages"
            )));
        }
        let next = pop_pass(stages.last().unwrap());
        stages.push(next);
    }
    Ok(SortTrace { stages })
}

pub fn min_passes(pi: &Permutation) -> Result<usize> {
    sort_trace(pi).map(|t| t.passes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// P(π) = π_i ⋯ π_1 P(π_{i+1} ⋯ π_n) with π_1 ⋯ π_i the longest decreasing prefix.
    fn pop_pass_recursive(word: &[usize]) -> Vec<usize> {
        if word.is_empty() {
            return Vec::new();
        }
        let mut i = 1;
        while i < word.len() && word[i] < word[i - 1] {
            i += 1;
        }
        let mut out: Vec<usize> = word[..i].iter().rev().copied().collect();
        out.extend(pop_pass_recursive(&word[i..]));
        out
    }

    #[test]
    fn pass_examples() {
        assert_eq!(pop_pass(&p("2,1,5,3,6,4")), p("1,2,3,5,4,6"));
        assert_eq!(
            pop_pass(&Permutation::decreasing(6)),
            Permutation::identity(6)
        );
        assert_eq!(pop_pass(&p("2,3,4,1")), p("2,3,1,4"));
        assert_eq!(pop_pass(&Permutation::empty()), Permutation::empty());
    }

    #[test]
    fn block_reversal_matches_recursive_definition() {
        for n in 0..=8 {
            for pi in all_permutations(n) {
                assert_eq!(
                    pop_pass(&pi).values(),
                    pop_pass_recursive(pi.values()).as_slice()
                );
            }
        }
    }

    #[test]
    fn sortable_examples() {
        assert!(is_sortable(&p("2,4,3,1"), 2));
        assert!(!is_sortable(&p("2,3,4,1"), 2));
        assert!(is_sortable(&Permutation::identity(5), 0));
        assert!(!is_sortable(&p("2,1"), 0));
    }

    #[test]
    fn trace_examples() {
        let t = sort_trace(&p("2,3,4,1")).unwrap();
        let expected: Vec<_> = ["2,3,4,1", "2,3,1,4", "2,1,3,4", "1,2,3,4"].map(p).into();
        assert_eq!(t.stages(), expected.as_slice());
        assert_eq!(t.passes(), 3);
        assert_eq!(min_passes(&Permutation::identity(4)).unwrap(), 0);
        assert_eq!(
            sort_trace(&Permutation::identity(4))
                .unwrap()
                .stages()
                .len(),
            1
        );
        for n in 2..8 {
            assert_eq!(min_passes(&Permutation::decreasing(n)).unwrap(), 1);
        }
    }

    #[test]
    fn layered_examples() {
        assert!(is_layered(&p("3,2,1,4,6,5,9,8,7")));
        assert!(!is_layered(&p("2,3,1")));
        assert!(is_layered(&p("4,3,2,1,6,5,7,10,9,8")));
        assert!(is_layered(&Permutation::empty()));
    }

    #[test]
    fn layered_iff_one_pass_and_power_of_two_count() {
        for n in 1..=9 {
            let mut layered = 0u64;
            for pi in all_permutations(n) {
                let l = is_layered(&pi);
                assert_eq!(l, is_sortable(&pi, 1), "{pi}");
                layered += u64::from(l);
            }
            assert_eq!(layered, 1 << (n - 1));
        }
    }

    #[test]
    fn layered_count_sweep_at_ten() {
        assert_eq!(crate::sweep::count(10, is_layered), 1 << 9);
    }

    #[test]
    fn pass_fixes_only_identity() {
        for n in 0..=7 {
            for pi in all_permutations(n) {
                assert_eq!(pop_pass(&pi) == pi, pi.is_identity());
            }
        }
    }

    fn arb_perm() -> impl Strategy<Value = Permutation> {
        (0usize..12)
            .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn inversions_drop_and_no_new_inversions(pi in arb_perm()) {
            let q = pop_pass(&pi);
            if pi.is_identity() {
                prop_assert_eq!(q.inversion_count(), 0);
            } else {
                prop_assert!(q.inversion_count() < pi.inversion_count());
            }
            // pairs already in increasing order keep their relative order
            let mut pos = vec![0; pi.len() + 1];
            for (i, &v) in q.values().iter().enumerate() {
                pos[v] = i;
            }
            let v = pi.values();
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    if v[i] < v[j] {
                        prop_assert!(pos[v[i]] < pos[v[j]]);
                    }
                }
            }
        }

        #[test]
        fn trace_reaches_identity(pi in arb_perm()) {
            let t = sort_trace(&pi).unwrap();
            prop_assert!(t.result().is_identity());
            for w in t.stages().windows(2) {
                prop_assert_eq!(&pop_pass(&w[0]), &w[1]);
                prop_assert!(w[1].inversion_count() < w[0].inversion_count());
            }
            prop_assert!(is_sortable(&pi, t.passes()));
            if t.passes() > 0 {
                prop_assert!(!is_sortable(&pi, t.passes() - 1));
            }
        }
    }
}
