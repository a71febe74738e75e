//! Pattern containment with occurrence witnesses, plus the avoidance
//! characterizations of two-pop-stack sortability.
//!
//! Matching is exhaustive over subsequences. Every pattern used here has length at
//! most five, so an occurrence check on a length-9 permutation visits at most 126
//! position sets.

use std::collections::HashSet;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{reduce, Permutation};
use crate::sweep;

/// Calls `f` with every strictly increasing `k`-tuple of 0-based positions in `0..n`,
/// in lexicographic order, until `f` breaks.
pub(crate) fn for_each_position_set<B>(
    n: usize,
    k: usize,
    mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if let ControlFlow::Break(b) = f(&idx) {
            return Some(b);
        }
        // advance the rightmost index that still has room
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// True iff the entries of `values` at `positions` are order-isomorphic to `pattern`.
fn matches_at(values: &[usize], positions: &[usize], pattern: &[usize]) -> bool {
    for a in 0..positions.len() {
        for b in a + 1..positions.len() {
            if (values[positions[a]] < values[positions[b]]) != (pattern[a] < pattern[b]) {
                return false;
            }
        }
    }
    true
}

/// Parses `2341` (one digit per entry) or `2,3,4,1`.
fn parse_pattern_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.contains(',') {
        return s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad pattern entry {t:?}")))
            })
            .collect();
    }
    s.chars()
        .map(|c| {
            c.to_digit(10)
                .filter(|&d| d > 0)
                .map(|d| d as usize)
                .ok_or_else(|| Error::InvalidInput(format!("bad pattern character {c:?}")))
        })
        .collect()
}

fn write_word(f: &mut fmt::Formatter<'_>, word: &[usize]) -> fmt::Result {
    let sep = if word.iter().any(|&v| v > 9) { "," } else { "" };
    for (i, v) in word.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalPattern(Permutation);

impl ClassicalPattern {
    pub fn new(pattern: Permutation) -> Self {
        Self(pattern)
    }

    pub fn permutation(&self) -> &Permutation {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for ClassicalPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_pattern_word(s)?).map(Self)
    }
}

impl fmt::Display for ClassicalPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.0.values())
    }
}

/// 1-based positions of the lexicographically first occurrence of `rho` in `pi`.
pub fn find_occurrence(pi: &Permutation, rho: &ClassicalPattern) -> Option<Vec<usize>> {
    let values = pi.values();
    let pattern = rho.0.values();
    for_each_position_set(values.len(), pattern.len(), |pos| {
        if matches_at(values, pos, pattern) {
            ControlFlow::Break(pos.iter().map(|p| p + 1).collect())
        } else {
            ControlFlow::Continue(())
        }
    })
}

pub fn contains_classical(pi: &Permutation, rho: &ClassicalPattern) -> bool {
    find_occurrence(pi, rho).is_some()
}

/// A pattern some of whose entries carry a bar.
///
/// Text form marks a barred entry with a `~` prefix: `4~1352` is 4, barred 1, 3, 5, 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarredPattern {
    pattern: Permutation,
    barred: Vec<bool>,
    /// Reduction of the entries without a bar.
    unbarred: Permutation,
}

impl BarredPattern {
    /// `barred` holds 1-based positions; it must be a strict subset of `1..=k`.
    pub fn new(pattern: Permutation, barred: &[usize]) -> Result<Self> {
        let k = pattern.len();
        let mut flags = vec![false; k];
        for &b in barred {
            if b == 0 || b > k {
                return Err(Error::InvalidInput(format!(
                    "bar position {b} outside 1..={k}"
                )));
            }
            flags[b - 1] = true;
        }
        if k > 0 && flags.iter().all(|&f| f) {
            return Err(Error::InvalidInput("every entry is barred".into()));
        }
        let kept: Vec<usize> = pattern
            .values()
            .iter()
            .zip(&flags)
            .filter(|(_, &f)| !f)
            .map(|(&v, _)| v)
            .collect();
        let unbarred = reduce(&kept)?;
        Ok(Self {
            pattern,
            barred: flags,
            unbarred,
        })
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn unbarred(&self) -> &Permutation {
        &self.unbarred
    }

    /// 1-based barred positions.
    pub fn barred_positions(&self) -> Vec<usize> {
        (1..=self.barred.len())
            .filter(|&i| self.barred[i - 1])
            .collect()
    }
}

impl FromStr for BarredPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut barred = Vec::new();
        let mut pending_bar = false;
        for c in s.trim().chars() {
            if c == '~' {
                if pending_bar {
                    return Err(Error::InvalidInput(format!("doubled bar in {s:?}")));
                }
                pending_bar = true;
                continue;
            }
            let d = c
                .to_digit(10)
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::InvalidInput(format!("bad pattern character {c:?}")))?;
            values.push(d as usize);
            if pending_bar {
                barred.push(values.len());
                pending_bar = false;
            }
        }
        if pending_bar {
            return Err(Error::InvalidInput(format!("dangling bar in {s:?}")));
        }
        Self::new(Permutation::new(values)?, &barred)
    }
}

impl fmt::Display for BarredPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, &b) in self.pattern.values().iter().zip(&self.barred) {
            if b {
                f.write_str("~")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// An occurrence of the unbarred part of `rho` that does not extend to an occurrence
/// of the full pattern, as 1-based positions.
///
/// An occurrence extends when one extra entry of `pi` per barred position can be
/// added, all at once, so that the enlarged subsequence is an occurrence of the full
/// pattern with the original entries playing the unbarred roles.
pub fn find_barred_occurrence(pi: &Permutation, rho: &BarredPattern) -> Option<Vec<usize>> {
    if !rho.barred.contains(&true) {
        return find_occurrence(pi, &ClassicalPattern(rho.pattern.clone()));
    }
    let values = pi.values();
    let full = rho.pattern.values();
    let keep: Vec<usize> = (0..full.len()).filter(|&i| !rho.barred[i]).collect();

    let mut extendable: HashSet<Vec<usize>> = HashSet::new();
    for_each_position_set(values.len(), full.len(), |pos| {
        if matches_at(values, pos, full) {
            extendable.insert(keep.iter().map(|&i| pos[i]).collect());
        }
        ControlFlow::<()>::Continue(())
    });

    let core = rho.unbarred.values();
    for_each_position_set(values.len(), core.len(), |pos| {
        if matches_at(values, pos, core) && !extendable.contains(pos) {
            ControlFlow::Break(pos.iter().map(|p| p + 1).collect())
        } else {
            ControlFlow::Continue(())
        }
    })
}

pub fn contains_barred(pi: &Permutation, rho: &BarredPattern) -> bool {
    find_barred_occurrence(pi, rho).is_some()
}

/// A pattern split into groups by division marks, e.g. `32|1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DividedPattern {
    segments: Vec<Vec<usize>>,
    pattern: Permutation,
}

impl DividedPattern {
    pub fn new(segments: Vec<Vec<usize>>) -> Result<Self> {
        if segments.iter().any(Vec::is_empty) {
            return Err(Error::InvalidInput(
                "divided pattern has an empty segment".into(),
            ));
        }
        let pattern = Permutation::new(segments.concat())?;
        Ok(Self { segments, pattern })
    }

    pub fn segments(&self) -> &[Vec<usize>] {
        &self.segments
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }
}

impl FromStr for DividedPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let segments = s
            .split('|')
            .map(parse_pattern_word)
            .collect::<Result<Vec<_>>>()?;
        Self::new(segments)
    }
}

impl fmt::Display for DividedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write_word(f, seg)?;
        }
        Ok(())
    }
}

/// Occurrence of `rho` in `pi` divided at every ascent: each segment's entries share
/// a block of `pi`, and successive segments sit in strictly later blocks.
pub fn find_divided_occurrence(pi: &Permutation, rho: &DividedPattern) -> Option<Vec<usize>> {
    let values = pi.values();
    let block_of = pi.blocks().block_index_of_positions();
    let pattern = rho.pattern.values();
    let mut segment_of = Vec::with_capacity(pattern.len());
    for (s, seg) in rho.segments.iter().enumerate() {
        segment_of.extend(std::iter::repeat_n(s, seg.len()));
    }
    for_each_position_set(values.len(), pattern.len(), |pos| {
        let placed = pos.windows(2).zip(segment_of.windows(2)).all(|(p, s)| {
            if s[0] == s[1] {
                block_of[p[0]] == block_of[p[1]]
            } else {
                block_of[p[0]] < block_of[p[1]]
            }
        });
        if placed && matches_at(values, pos, pattern) {
            ControlFlow::Break(pos.iter().map(|p| p + 1).collect())
        } else {
            ControlFlow::Continue(())
        }
    })
}

pub fn contains_divided(pi: &Permutation, rho: &DividedPattern) -> bool {
    find_divided_occurrence(pi, rho).is_some()
}

pub const DIVIDED_OBSTRUCTIONS: [&str; 4] = ["2|3|1", "32|1", "3|1|2", "3|21"];

pub const CLASSICAL_OBSTRUCTIONS: [&str; 6] = ["2341", "3412", "3421", "4123", "4231", "4312"];

pub const BARRED_OBSTRUCTIONS: [&str; 2] = ["4~1352", "413~52"];

/// The four divided obstructions, parsed.
pub fn divided_obstructions() -> Vec<DividedPattern> {
    DIVIDED_OBSTRUCTIONS
        .iter()
        .map(|s| s.parse().expect("static pattern"))
        .collect()
}

/// Block condition: every adjacent pair of blocks has `max(B_i) <= min(B_{i+1}) + 1`.
pub fn is_sortable_by_blocks(pi: &Permutation) -> bool {
    pi.blocks()
        .as_slice()
        .windows(2)
        .all(|w| w[0].max() <= w[1].min() + 1)
}

pub fn is_sortable_by_divided(pi: &Permutation) -> bool {
    DIVIDED_OBSTRUCTIONS.iter().all(|s| {
        let rho: DividedPattern = s.parse().expect("static pattern");
        !contains_divided(pi, &rho)
    })
}

/// A forbidden pattern found in a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Pattern in its text form, e.g. `3421` or `4~1352`.
    pub pattern: String,
    /// 1-based positions realizing the (unbarred part of the) pattern.
    pub positions: Vec<usize>,
    pub values: Vec<usize>,
}

/// First of the eight forbidden patterns contained in `pi`, searched in the order
/// 2341, 3412, 3421, 4123, 4231, 4312, 4~1352, 413~52.
pub fn find_forbidden_pattern(pi: &Permutation) -> Option<Witness> {
    let witness = |pattern: &str, positions: Vec<usize>| Witness {
        pattern: pattern.to_string(),
        values: positions.iter().map(|&p| pi.at(p)).collect(),
        positions,
    };
    for s in CLASSICAL_OBSTRUCTIONS {
        let rho: ClassicalPattern = s.parse().expect("static pattern");
        if let Some(pos) = find_occurrence(pi, &rho) {
            return Some(witness(s, pos));
        }
    }
    for s in BARRED_OBSTRUCTIONS {
        let rho: BarredPattern = s.parse().expect("static pattern");
        if let Some(pos) = find_barred_occurrence(pi, &rho) {
            return Some(witness(s, pos));
        }
    }
    None
}

/// Avoids 2341, 3412, 3421, 4123, 4231, 4312, 4~1352 and 413~52.
pub fn is_sortable_by_patterns(pi: &Permutation) -> bool {
    find_forbidden_pattern(pi).is_none()
}

/// Order-type code of the entries at `positions`: one base-16 digit per entry
/// holding its rank. Only meaningful for fewer than 16 entries.
fn order_code(values: &[usize], positions: &[usize]) -> u64 {
    let mut code = 0u64;
    for &p in positions {
        let rank = positions.iter().filter(|&&q| values[q] < values[p]).count();
        code = code * 16 + rank as u64;
    }
    code
}

fn pattern_code(pattern: &Permutation) -> u64 {
    pattern
        .values()
        .iter()
        .fold(0u64, |c, &v| c * 16 + (v as u64 - 1))
}

/// A finite set of classical patterns, indexed for fast avoidance tests.
#[derive(Clone, Debug)]
pub struct PatternSet {
    /// (length, codes of the patterns with that length)
    by_length: Vec<(usize, HashSet<u64>)>,
}

impl PatternSet {
    pub fn new<'a>(patterns: impl IntoIterator<Item = &'a ClassicalPattern>) -> Self {
        let mut by_length: Vec<(usize, HashSet<u64>)> = Vec::new();
        for rho in patterns {
            assert!(rho.len() < 16, "pattern too long for order codes");
            let code = pattern_code(rho.permutation());
            match by_length.iter_mut().find(|(k, _)| *k == rho.len()) {
                Some((_, set)) => {
                    set.insert(code);
                }
                None => by_length.push((rho.len(), HashSet::from([code]))),
            }
        }
        Self { by_length }
    }

    pub fn parse_list(patterns: &[&str]) -> Result<Self> {
        let parsed = patterns
            .iter()
            .map(|s| s.parse::<ClassicalPattern>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(&parsed))
    }

    pub fn is_avoided_by(&self, pi: &Permutation) -> bool {
        let values = pi.values();
        self.by_length.iter().all(|(k, codes)| {
            for_each_position_set(values.len(), *k, |pos| {
                if codes.contains(&order_code(values, pos)) {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })
            .is_none()
        })
    }
}

/// Number of permutations of length `n` avoiding every pattern in `patterns`.
pub fn count_avoiders(patterns: &[ClassicalPattern], n: usize) -> u64 {
    let set = PatternSet::new(patterns);
    sweep::count(n, |pi| set.is_avoided_by(pi))
}
