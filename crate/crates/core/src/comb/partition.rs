//! Partitions of a finite group into cells and the covering bounds they satisfy.

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use super::index::{covering_number, packing_index};
use super::{CovResult, PackResult};
use crate::dens::{is12, iss213};
use crate::error::{Error, Result};
use crate::grp::{Element, Group, Subset};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReport {
    pub cell: Vec<Element>,
    pub is12: Rational,
    pub iss213: Rational,
    pub pack: PackResult,
    /// Cover of `A_i A_i^{-1}`.
    pub difference_cover: CovResult,
    /// Whether `x A_i x^{-1} = A_i` for every `x`.
    pub conjugation_invariant: bool,
}

/// A cell and conjugator set with a small cover of `(A_i^{-1} A_i)^{wr E}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateCover {
    pub cell: usize,
    pub conjugators: Vec<Element>,
    pub cover: CovResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub cells: Vec<CellReport>,
    /// Some cell has `cov(A_i A_i^{-1}) <= n`.
    pub small_difference_cover: bool,
    /// Cell with the smallest `cov(A_i A_i^{-1})`; its cover is the minimal `F`.
    pub best_cell: usize,
    pub brs_bound: u64,
    /// The minimal `F` is within the bound.
    pub within_brs_bound: bool,
    /// First `(cell, E)` with `|E| <= 3` reaching a cover of size at most `n`.
    pub conjugate_cover: Option<ConjugateCover>,
    /// For partitions into conjugation-invariant cells: some cell has
    /// `cov(A_i A_i^{-1}) <= pack(A_i) <= n`.
    pub invariant_cells_bound: Option<bool>,
}

impl PartitionReport {
    /// Whether every reported conclusion holds.
    pub fn passed(&self) -> bool {
        self.small_difference_cover
            && self.within_brs_bound
            && self.conjugate_cover.is_some()
            && self.invariant_cells_bound != Some(false)
    }

    pub fn minimal_cover(&self) -> &CovResult {
        &self.cells[self.best_cell].difference_cover
    }
}

/// `max_{0<k<=n} sum_{i=0}^{n-k} k^i`; the `k = 1` term equals `n`.
pub fn brs_bound(n: usize) -> u64 {
    (1..=n as u64)
        .map(|k| (0..=(n as u64 - k) as u32).map(|i| k.pow(i)).sum::<u64>())
        .max()
        .unwrap_or(1)
}

fn upper(c: &CovResult) -> usize {
    c.value.upper().expect("covers exist on finite groups")
}

/// Analyzes a partition of a finite group into the given cells.
pub fn partition_analyze(g: &Group, cells: &[Subset]) -> Result<PartitionReport> {
    let fg = g
        .as_finite()
        .ok_or_else(|| Error::Unsupported("partition_analyze needs a finite group".into()))?;
    let order = fg.order();
    if cells.is_empty() {
        return Err(Error::NotAPartition("no cells".into()));
    }
    let mut seen = FixedBitSet::with_capacity(order);
    let mut bits = Vec::with_capacity(cells.len());
    for (i, c) in cells.iter().enumerate() {
        let b = g.finite_bits(c)?;
        if b.count_ones(..) == 0 {
            return Err(Error::NotAPartition(format!("cell {i} is empty")));
        }
        if !seen.is_disjoint(&b) {
            return Err(Error::NotAPartition(format!("cell {i} overlaps an earlier cell")));
        }
        seen.union_with(&b);
        bits.push(b);
    }
    if seen.count_ones(..) != order {
        return Err(Error::NotAPartition("cells do not cover the group".into()));
    }
    let n = cells.len();
    let mut reports = Vec::with_capacity(n);
    for b in &bits {
        let a = Subset::from_bits(b);
        let exact = |r: crate::dens::DensityResult| r.value.exact().cloned().expect("exact on finite groups");
        let invariant = (0..order).all(|x| {
            b.ones().all(|y| b.contains(fg.mul(fg.mul(x, y), fg.inv(x))))
        });
        reports.push(CellReport {
            cell: b.ones().map(Element::Index).collect(),
            is12: exact(is12(g, &a, None)?),
            iss213: exact(iss213(g, &a, None)?),
            pack: packing_index(g, &a, order, None)?,
            difference_cover: covering_number(g, &Subset::difference_set(a.clone()), order)?,
            conjugation_invariant: invariant,
        });
    }
    let best_cell = (0..n).min_by_key(|&i| upper(&reports[i].difference_cover)).expect("non-empty");
    let best = upper(&reports[best_cell].difference_cover);
    let bound = brs_bound(n);
    let carrier = g.carrier().expect("finite");
    let mut conjugate_cover = None;
    'search: for size in 1..=3.min(order) {
        for e in carrier.iter().cloned().combinations(size) {
            for (i, b) in bits.iter().enumerate() {
                let a = Subset::from_bits(b);
                let inner = Subset::product(Subset::inverse(a.clone()), a);
                let cover = covering_number(g, &Subset::wreath(inner, Subset::explicit(e.clone())), order)?;
                if upper(&cover) <= n {
                    conjugate_cover = Some(ConjugateCover { cell: i, conjugators: e, cover });
                    break 'search;
                }
            }
        }
    }
    let invariant_cells_bound = reports.iter().all(|r| r.conjugation_invariant).then(|| {
        reports.iter().any(|r| {
            let pack = r.pack.value.exact().expect("exact on finite groups");
            upper(&r.difference_cover) <= pack && pack <= n
        })
    });
    Ok(PartitionReport {
        small_difference_cover: best <= n,
        best_cell,
        brs_bound: bound,
        within_brs_bound: best as u64 <= bound,
        conjugate_cover,
        invariant_cells_bound,
        cells: reports,
    })
}
