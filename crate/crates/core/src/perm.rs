//! Permutations of `1..=n` and the statistics the rest of the crate is built on.
//!
//! Values and positions are 1-based in every public API: `Permutation::values()[0]`
//! is the entry at position 1. The empty permutation is a valid object.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` stored in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Validates that `values` is a bijection onto `1..=values.len()`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidInput(format!(
                    "entry {v} out of range 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidInput(format!("entry {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Self { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    pub fn empty() -> Self {
        Self { values: Vec::new() }
    }

    /// `1 2 ... n`
    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n).collect(),
        }
    }

    /// `n ... 2 1`
    pub fn decreasing(n: usize) -> Self {
        Self {
            values: (1..=n).rev().collect(),
        }
    }

    /// `(n+shift) ... (1+shift)` as a plain word; not a permutation unless `shift == 0`.
    pub fn decreasing_shifted(n: usize, shift: usize) -> Vec<usize> {
        (1..=n).rev().map(|v| v + shift).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut Vec<usize> {
        &mut self.values
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn ascent_count(&self) -> usize {
        self.values.windows(2).filter(|w| w[0] < w[1]).count()
    }

    pub fn descent_count(&self) -> usize {
        self.values.windows(2).filter(|w| w[0] > w[1]).count()
    }

    pub fn inversion_count(&self) -> usize {
        let v = &self.values;
        let mut inv = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// `self ⊕ other`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.len();
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|v| v + shift));
        Permutation { values }
    }

    /// Maximal contiguous strictly decreasing runs.
    pub fn blocks(&self) -> BlockDecomposition {
        let mut blocks = Vec::new();
        let mut start = 0;
        for i in 1..=self.values.len() {
            if i == self.values.len() || self.values[i - 1] < self.values[i] {
                blocks.push(Block {
                    start: start + 1,
                    values: self.values[start..i].to_vec(),
                });
                start = i;
            }
        }
        BlockDecomposition { blocks }
    }

    /// The point set `{(i, π_i)}` ordered by position.
    pub fn graph_points(&self) -> Vec<(usize, usize)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (i + 1, v))
            .collect()
    }

    /// Direct sum of decreasing permutations, one per part.
    pub fn layered(composition: &Composition) -> Permutation {
        let mut values = Vec::with_capacity(composition.total());
        let mut base = 0;
        for &part in composition.parts() {
            values.extend((1..=part).rev().map(|v| v + base));
            base += part;
        }
        Permutation { values }
    }

    /// Layer lengths of a layered permutation.
    pub fn to_composition(&self) -> Result<Composition> {
        let mut parts = Vec::new();
        let mut base = 0;
        for block in self.blocks().iter() {
            let len = block.len();
            // a layer holds exactly the next `len` values
            if block.max() != base + len || block.min() != base + 1 {
                return Err(Error::Domain(format!("{self} is not layered")));
            }
            parts.push(len);
            base += len;
        }
        Composition::new(parts)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Comma separated decimal values, e.g. `6,4,3,2,1,5`, or for length at most 9 a
    /// bare digit word such as `3421`. The empty string is the empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        if !s.contains(',') && s.len() > 1 && s.bytes().all(|b| b.is_ascii_digit()) {
            return Self::new(s.bytes().map(|b| (b - b'0') as usize).collect());
        }
        let values = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad permutation entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Self::new(values)
    }
}

/// Reduction: replace the i-th smallest entry of `word` by `i`.
pub fn reduce<T: Ord>(word: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by(|&a, &b| word[a].cmp(&word[b]));
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::InvalidInput(
            "reduce: entries are not distinct".into(),
        ));
    }
    let mut values = vec![0; word.len()];
    for (rank, &pos) in order.iter().enumerate() {
        values[pos] = rank + 1;
    }
    Ok(Permutation { values })
}

/// Reduction of a word already known to hold distinct entries.
pub(crate) fn reduce_distinct(word: &[usize]) -> Permutation {
    let mut values = Vec::with_capacity(word.len());
    for &x in word {
        values.push(1 + word.iter().filter(|&&y| y < x).count());
    }
    Permutation { values }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    /// 1-based position of the first entry.
    pub start: usize,
    pub values: Vec<usize>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The first entry, since a block is decreasing.
    pub fn max(&self) -> usize {
        self.values[0]
    }

    pub fn min(&self) -> usize {
        self.values[self.values.len() - 1]
    }

    /// 1-based position of the last entry.
    pub fn end(&self) -> usize {
        self.start + self.values.len() - 1
    }
}

/// Blocks of a permutation in left-to-right order. Boundaries sit exactly at ascents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Block> {
        self.blocks.iter()
    }

    pub fn as_slice(&self) -> &[Block] {
        &self.blocks
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::len).collect()
    }

    /// Block index (0-based) of every position of the source permutation.
    pub fn block_index_of_positions(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(b, block)| std::iter::repeat_n(b, block.len()))
            .collect()
    }

    pub fn concat(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .flat_map(|b| b.values.iter().copied())
            .collect()
    }
}

impl<'a> IntoIterator for &'a BlockDecomposition {
    type Item = &'a Block;
    type IntoIter = std::slice::Iter<'a, Block>;

    fn into_iter(self) -> Self::IntoIter {
        self.blocks.iter()
    }
}

/// An ordered sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(
                "composition parts must be positive".into(),
            ));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// All compositions of `n`, one per subset of the `n - 1` cut points; `n = 0` has
/// only the empty composition.
pub fn all_compositions(n: usize) -> impl Iterator<Item = Composition> {
    let cuts = n.saturating_sub(1);
    (0u64..1 << cuts).map(move |mask| {
        let mut parts = Vec::new();
        let mut len = 0;
        for i in 0..n {
            len += 1;
            if i + 1 == n || mask >> i & 1 == 1 {
                parts.push(len);
                len = 0;
            }
        }
        Composition { parts }
    })
}

/// Rearranges `v` into the next permutation in lexicographic order; false once `v`
/// is the last (decreasing) arrangement.
pub(crate) fn next_lex(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All permutations of length `n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current = Some(Permutation::identity(n));
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        if next_lex(next.values_mut()) {
            current = Some(next);
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn digits(s: &str) -> Permutation {
        Permutation::new(s.bytes().map(|b| (b - b'0') as usize).collect()).unwrap()
    }

    #[test]
    fn compositions_are_distinct_and_complete() {
        for n in 0..=8 {
            let all: std::collections::HashSet<Composition> = all_compositions(n).collect();
            assert_eq!(all.len(), 1 << n.saturating_sub(1));
            assert!(all.iter().all(|c| c.total() == n));
        }
    }

    #[test]
    fn digit_words() {
        assert_eq!(p("3421"), p("3,4,2,1"));
        assert_eq!(p("1"), Permutation::identity(1));
        assert!("10".parse::<Permutation>().is_err());
        assert!("3321".parse::<Permutation>().is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&[5, 4, 7, 2]).unwrap(), digits("3241"));
        assert_eq!(reduce(&[1, 2, 3]).unwrap(), digits("123"));
        assert_eq!(reduce(&[90, 10, 50]).unwrap(), digits("312"));
        assert_eq!(reduce::<i32>(&[]).unwrap(), Permutation::empty());
        assert!(matches!(reduce(&[3, 1, 3]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn direct_sum_examples() {
        let parts = ["321", "1", "21", "321"].map(digits);
        let folded = parts[1..]
            .iter()
            .fold(parts[0].clone(), |acc, q| acc.direct_sum(q));
        assert_eq!(folded, digits("321465987"));
        assert_eq!(Permutation::empty().direct_sum(&digits("21")), digits("21"));
        assert_eq!(digits("1").direct_sum(&digits("1")), digits("12"));
    }

    #[test]
    fn ascents_and_descents() {
        let pi = digits("321465987");
        assert_eq!(pi.ascent_count(), 3);
        assert_eq!(pi.descent_count(), 5);
        assert_eq!(Permutation::identity(6).ascent_count(), 5);
        assert_eq!(Permutation::decreasing(6).ascent_count(), 0);
        assert_eq!(Permutation::empty().ascent_count(), 0);
        assert_eq!(Permutation::empty().descent_count(), 0);
    }

    #[test]
    fn block_examples() {
        let lists = |pi: Permutation| -> Vec<Vec<usize>> {
            pi.blocks().iter().map(|b| b.values.clone()).collect()
        };
        assert_eq!(
            lists(digits("21534")),
            vec![vec![2, 1], vec![5, 3], vec![4]]
        );
        assert_eq!(
            lists(digits("215364")),
            vec![vec![2, 1], vec![5, 3], vec![6, 4]]
        );
        assert_eq!(Permutation::decreasing(7).blocks().len(), 1);
        assert!(Permutation::empty().blocks().is_empty());
        let b = digits("215364").blocks();
        assert_eq!(b.as_slice()[2].start, 5);
        assert_eq!(b.as_slice()[2].end(), 6);
        assert_eq!(b.block_index_of_positions(), vec![0, 0, 1, 1, 2, 2]);
    }

    #[test]
    fn graph_point_examples() {
        assert_eq!(
            digits("321465987").graph_points(),
            vec![
                (1, 3),
                (2, 2),
                (3, 1),
                (4, 4),
                (5, 6),
                (6, 5),
                (7, 9),
                (8, 8),
                (9, 7)
            ]
        );
        assert_eq!(digits("1").graph_points(), vec![(1, 1)]);
        assert_eq!(digits("21").graph_points(), vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn layered_examples() {
        let c = Composition::new(vec![3, 1, 2, 3]).unwrap();
        assert_eq!(Permutation::layered(&c), digits("321465987"));
        assert_eq!(digits("321465987").to_composition().unwrap(), c);
        let single = Composition::new(vec![5]).unwrap();
        assert_eq!(Permutation::layered(&single), Permutation::decreasing(5));
        let ones = Composition::new(vec![1; 5]).unwrap();
        assert_eq!(Permutation::layered(&ones), Permutation::identity(5));
        assert!(matches!(
            digits("231").to_composition(),
            Err(Error::Domain(_))
        ));
        assert!(Composition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn parse_and_display() {
        let pi = p("4,3,2,1,6,5,7,10,9,8");
        assert_eq!(pi.at(8), 10);
        assert_eq!(pi.to_string(), "4,3,2,1,6,5,7,10,9,8");
        assert_eq!(p(""), Permutation::empty());
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("0,1".parse::<Permutation>().is_err());
        assert!("1,x".parse::<Permutation>().is_err());
        assert!("1,3".parse::<Permutation>().is_err());
    }

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<_> = all_permutations(4).collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all_permutations(0).count(), 1);
        assert_eq!(all_permutations(1).count(), 1);
    }
}
