//! Polyominoes on the twisted cylinder of width `w`.
//!
//! Cell `(x, y)` (with `1 <= x <= w`) gets the spiral index `(y - 1) * w + x`. Moving
//! right adds 1 and moving up adds `w`, including across the seam where the cylinder
//! is twisted, so adjacency is plain index difference 1 or `w`. Polyominoes are taken
//! up to translation; the canonical representative has smallest cell 1.
//!
//! Widths 2 and 3 carry bijections with one- and two-pop-stack sortable permutations:
//! blocks become horizontal runs of cells, and the relation between neighbouring
//! blocks becomes the gap between runs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::patterns::is_sortable_by_blocks;
use crate::perm::Permutation;
use crate::policy::Policy;
use crate::popstack::is_layered;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CylinderPolyomino {
    width: usize,
    cells: Vec<usize>,
}

/// Connected components of `cells` (sorted, distinct) under adjacency {1, w}.
fn components(cells: &[usize], width: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(cells.len());
    for (i, &c) in cells.iter().enumerate() {
        for step in [1, width] {
            if let Ok(j) = cells[i + 1..].binary_search(&(c + step)) {
                uf.union(i, i + 1 + j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in cells.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(c);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

fn is_connected(cells: &[usize], width: usize) -> bool {
    let mut uf = UnionFind::<usize>::new(cells.len());
    let mut merges = 0;
    for (i, &c) in cells.iter().enumerate() {
        for step in [1, width] {
            if let Ok(j) = cells[i + 1..].binary_search(&(c + step)) {
                if uf.union(i, i + 1 + j) {
                    merges += 1;
                }
            }
        }
    }
    merges + 1 == cells.len()
}

impl CylinderPolyomino {
    /// Translates `cells` so the smallest is 1 and checks connectivity.
    pub fn canonicalize(cells: &[i64], width: usize) -> Result<Self> {
        if width < 2 {
            return Err(Error::InvalidInput(format!("width {width} < 2")));
        }
        let min = *cells
            .iter()
            .min()
            .ok_or_else(|| Error::InvalidInput("empty cell set".into()))?;
        let mut shifted: Vec<usize> = cells.iter().map(|&c| (c - min + 1) as usize).collect();
        shifted.sort_unstable();
        shifted.dedup();
        if !is_connected(&shifted, width) {
            return Err(Error::Disconnected {
                width,
                components: components(&shifted, width),
            });
        }
        Ok(Self {
            width,
            cells: shifted,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// Cells with no cell immediately to their right.
    pub fn right_free_count(&self) -> usize {
        self.cells
            .iter()
            .filter(|&&c| self.cells.binary_search(&(c + 1)).is_err())
            .count()
    }

    /// Maximal runs of consecutive indices as `(first cell, length)`.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for &c in &self.cells {
            match runs.last_mut() {
                Some((start, len)) if *start + *len == c => *len += 1,
                _ => runs.push((c, 1)),
            }
        }
        runs
    }

    /// The cells laid out along the strip: `#` filled, `.` empty.
    pub fn render_strip(&self) -> String {
        let last = *self.cells.last().unwrap();
        (1..=last)
            .map(|i| {
                if self.cells.binary_search(&i).is_ok() {
                    '#'
                } else {
                    '.'
                }
            })
            .collect()
    }

    /// Rows of `width` cells, top row first, bottom-left cell being index 1.
    pub fn render_rows(&self) -> String {
        let last = *self.cells.last().unwrap();
        let rows = last.div_ceil(self.width);
        let mut out = String::new();
        for y in (0..rows).rev() {
            for x in 1..=self.width {
                let i = y * self.width + x;
                out.push(if self.cells.binary_search(&i).is_ok() {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for CylinderPolyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.width)?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for CylinderPolyomino {
    type Err = Error;

    /// `w:i1,i2,...`; the indices are translated to canonical form.
    fn from_str(s: &str) -> Result<Self> {
        let (w, cells) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("expected w:i1,i2,... got {s:?}")))?;
        let width = w
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad width {w:?}")))?;
        let cells = cells
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidInput(format!("bad cell index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::canonicalize(&cells, width)
    }
}

fn candidate_budget(policy: &Policy) -> u128 {
    3u128.pow(policy.max_polyomino.saturating_sub(1) as u32)
}

fn check_enumeration(width: usize, size: usize, policy: &Policy) -> Result<()> {
    if width < 2 {
        return Err(Error::InvalidInput(format!("width {width} < 2")));
    }
    if size == 0 {
        return Err(Error::InvalidInput(
            "polyomino size must be at least 1".into(),
        ));
    }
    if size > policy.max_polyomino {
        return Err(Error::PolicyRefusal {
            what: "polyomino size",
            requested: size,
            limit: policy.max_polyomino,
        });
    }
    let candidates = (width as u128).checked_pow(size as u32 - 1);
    if candidates.is_none_or(|c| c > candidate_budget(policy)) {
        return Err(Error::PolicyRefusal {
            what: "polyomino width",
            requested: width,
            limit: 3,
        });
    }
    Ok(())
}

/// Visits every connected cell list reachable from cell 1 by increments in `1..=w`.
fn walk(cells: &mut Vec<usize>, size: usize, width: usize, visit: &mut impl FnMut(&[usize])) {
    if cells.len() == size {
        if is_connected(cells, width) {
            visit(cells);
        }
        return;
    }
    let last = *cells.last().unwrap();
    for d in 1..=width {
        cells.push(last + d);
        walk(cells, size, width, visit);
        cells.pop();
    }
}

fn for_each_by_first_step<A: Send>(
    width: usize,
    size: usize,
    init: impl Fn() -> A + Sync,
    visit: impl Fn(&mut A, &[usize]) + Sync,
) -> Vec<A> {
    if size == 1 {
        let mut acc = init();
        visit(&mut acc, &[1]);
        return vec![acc];
    }
    (1..=width)
        .into_par_iter()
        .map(|d| {
            let mut acc = init();
            let mut cells = vec![1, 1 + d];
            walk(&mut cells, size, width, &mut |c| visit(&mut acc, c));
            acc
        })
        .collect()
}

/// Number of size-`size` polyominoes on the width-`width` twisted cylinder.
///
/// Candidates are the increment sequences in `{1..w}^(size-1)` from cell 1; sorted
/// cells of a connected set never jump by more than `w`, so every polyomino appears
/// exactly once.
pub fn enumerate_polyominoes(width: usize, size: usize, policy: &Policy) -> Result<u64> {
    check_enumeration(width, size, policy)?;
    Ok(for_each_by_first_step(width, size, || 0u64, |c, _| *c += 1)
        .into_iter()
        .sum())
}

/// All size-`size` polyominoes, ordered by cell list.
pub fn list_polyominoes(
    width: usize,
    size: usize,
    policy: &Policy,
) -> Result<Vec<CylinderPolyomino>> {
    check_enumeration(width, size, policy)?;
    let chunks = for_each_by_first_step(width, size, Vec::new, |out, cells| {
        out.push(CylinderPolyomino {
            width,
            cells: cells.to_vec(),
        })
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// Counts by number of right-free cells, indexed `k` for `k + 1` right-free cells.
pub fn right_free_distribution(width: usize, size: usize, policy: &Policy) -> Result<Vec<u64>> {
    check_enumeration(width, size, policy)?;
    let parts = for_each_by_first_step(
        width,
        size,
        || vec![0u64; size],
        |hist, cells| {
            let free = cells
                .iter()
                .filter(|&&c| cells.binary_search(&(c + 1)).is_err())
                .count();
            hist[free - 1] += 1;
        },
    );
    Ok(parts.into_iter().fold(vec![0u64; size], |mut acc, h| {
        acc.iter_mut().zip(h).for_each(|(a, b)| *a += b);
        acc
    }))
}

/// Empty cells between consecutive runs of a strip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Gap {
    One,
    Two,
}

impl Gap {
    fn cells(self) -> usize {
        match self {
            Gap::One => 1,
            Gap::Two => 2,
        }
    }
}

/// Run lengths along the strip and the gaps between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StripEncoding {
    pub runs: Vec<usize>,
    pub gaps: Vec<Gap>,
}

impl StripEncoding {
    pub fn to_cells(&self) -> Vec<usize> {
        let mut cells = Vec::with_capacity(self.runs.iter().sum());
        let mut next = 1;
        for (i, &len) in self.runs.iter().enumerate() {
            if i > 0 {
                next += self.gaps[i - 1].cells();
            }
            cells.extend(next..next + len);
            next += len;
        }
        cells
    }
}

fn check_bijection_width(width: usize) -> Result<()> {
    if width == 2 || width == 3 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "bijections exist for widths 2 and 3, not {width}"
        )))
    }
}

/// Strip of a sortable permutation: block lengths as runs. Width 2 separates every
/// run by one empty cell. Width 3 uses one empty cell where `max(B_i) = min(B_{i+1}) + 1`
/// and two where `max(B_i) < min(B_{i+1})`.
pub fn perm_to_strip(pi: &Permutation, width: usize) -> Result<StripEncoding> {
    check_bijection_width(width)?;
    let ok = if width == 2 {
        is_layered(pi)
    } else {
        is_sortable_by_blocks(pi)
    };
    if !ok {
        let class = if width == 2 {
            "layered"
        } else {
            "two-pop-stack sortable"
        };
        return Err(Error::Domain(format!("{pi} is not {class}")));
    }
    if pi.is_empty() {
        return Err(Error::Domain(
            "the empty permutation has no polyomino".into(),
        ));
    }
    let blocks = pi.blocks();
    let gaps = blocks
        .as_slice()
        .windows(2)
        .map(|w| {
            if width == 2 || w[0].max() < w[1].min() {
                if width == 2 {
                    Gap::One
                } else {
                    Gap::Two
                }
            } else {
                Gap::One
            }
        })
        .collect();
    Ok(StripEncoding {
        runs: blocks.lengths(),
        gaps,
    })
}

pub fn perm_to_polyomino(pi: &Permutation, width: usize) -> Result<CylinderPolyomino> {
    let strip = perm_to_strip(pi, width)?;
    let cells: Vec<i64> = strip.to_cells().into_iter().map(|c| c as i64).collect();
    CylinderPolyomino::canonicalize(&cells, width)
        .map_err(|e| Error::Internal(format!("strip of {pi} is not a polyomino: {e}")))
}

pub fn polyomino_to_strip(p: &CylinderPolyomino) -> Result<StripEncoding> {
    check_bijection_width(p.width)?;
    let runs = p.runs();
    let mut gaps = Vec::with_capacity(runs.len().saturating_sub(1));
    for w in runs.windows(2) {
        let empty = w[1].0 - (w[0].0 + w[0].1);
        let gap = match (p.width, empty) {
            (2, 1) | (3, 1) => Gap::One,
            (3, 2) => Gap::Two,
            _ => {
                return Err(Error::Internal(format!(
                    "{p}: gap of {empty} empty cells between runs"
                )))
            }
        };
        if p.width == 3 && gap == Gap::One && w[0].1 == 1 && w[1].1 == 1 {
            return Err(Error::Internal(format!(
                "{p}: single-cell runs joined by a one-cell gap"
            )));
        }
        gaps.push(gap);
    }
    Ok(StripEncoding {
        runs: runs.into_iter().map(|r| r.1).collect(),
        gaps,
    })
}

/// Inverse of [`perm_to_polyomino`].
///
/// Values are assigned on the first-pass output `rev(B_1) ... rev(B_l)`, which must be
/// layered. Scanning it left to right, a new layer opens at every slot except the
/// first slot of a run entered through an overlap gap (a one-cell gap at width 3),
/// which joins the layer of the slot before it. Layers take consecutive value ranges
/// in scan order, decreasing inside each layer. Reversing each run's segment then
/// gives the permutation.
pub fn polyomino_to_perm(p: &CylinderPolyomino) -> Result<Permutation> {
    let strip = polyomino_to_strip(p)?;
    let n = p.size();

    // layer sizes over the slots of the first-pass output
    let mut layers: Vec<usize> = Vec::new();
    for (r, &len) in strip.runs.iter().enumerate() {
        for slot in 0..len {
            let joins = slot == 0 && r > 0 && p.width == 3 && strip.gaps[r - 1] == Gap::One;
            if joins {
                *layers.last_mut().unwrap() += 1;
            } else {
                layers.push(1);
            }
        }
    }
    let mut first_pass = Vec::with_capacity(n);
    let mut base = 0;
    for &size in &layers {
        first_pass.extend((1..=size).rev().map(|v| v + base));
        base += size;
    }

    let mut values = Vec::with_capacity(n);
    let mut start = 0;
    for &len in &strip.runs {
        values.extend(first_pass[start..start + len].iter().rev());
        start += len;
    }
    let pi = Permutation::new(values)
        .map_err(|e| Error::Internal(format!("{p}: decoded values invalid: {e}")))?;
    if pi.blocks().lengths() != strip.runs {
        return Err(Error::Internal(format!(
            "{p}: decoded {pi} has blocks {:?}, expected {:?}",
            pi.blocks().lengths(),
            strip.runs
        )));
    }
    Ok(pi)
}
