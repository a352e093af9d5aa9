//! Packing index and covering number.

use fixedbitset::FixedBitSet;

use super::search::{max_independent, min_cover};
use super::{CovResult, CovValue, PackResult, PackValue};
use crate::error::{Error, Result};
use crate::grp::{Element, Group, Quotient, Subset, Window};

const COVER_LIMIT: usize = 20;

pub(crate) fn is_empty_set(g: &Group, a: &Subset) -> Result<bool> {
    if g.is_finite() {
        return Ok(g.finite_bits(a)?.count_ones(..) == 0);
    }
    if let Some((core, false)) = g.finite_core(a)? {
        return Ok(core.is_empty());
    }
    if let Some(p) = a.period(g) {
        let q = g.quotient_map(&p)?;
        let img = q.project_subset(g, a)?;
        return is_empty_set(q.target(), &img);
    }
    Ok(false)
}

fn quotient_of(g: &Group, a: &Subset) -> Result<Option<(Quotient, Subset)>> {
    match a.period(g) {
        Some(p) => {
            let q = g.quotient_map(&p)?;
            let img = q.project_subset(g, a)?;
            Ok(Some((q, img)))
        }
        None => Ok(None),
    }
}

fn lift_all(q: &Quotient, pts: &[Element]) -> Result<Vec<Element>> {
    pts.iter().map(|x| q.lift(x)).collect()
}

/// `pack(A)`: the largest number of pairwise disjoint left translates of `A`.
///
/// Exact on finite groups and for periodic subsets of `Z^d`. Elsewhere the
/// points of `search_window` are tried in order and the result is a lower
/// bound, `AtLeast(cap)` once `cap` disjoint translates are found.
pub fn packing_index(g: &Group, a: &Subset, cap: usize, search_window: Option<&Window>) -> Result<PackResult> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    g.check_subset(a)?;
    if is_empty_set(g, a)? {
        return Err(Error::UndefinedIndex);
    }
    let result = if let Some(fg) = g.as_finite() {
        let bits = g.finite_bits(a)?;
        let diff = g.finite_bits(&Subset::difference_set(a.clone()))?;
        let n = fg.order();
        let ceiling = n / bits.count_ones(..);
        let conflict = |x: usize, y: usize| x != y && diff.contains(fg.mul(fg.inv(x), y));
        if n <= 64 {
            let adj: Vec<u64> = (0..n)
                .map(|x| (0..n).filter(|&y| conflict(x, y)).fold(0u64, |m, y| m | 1 << y))
                .collect();
            let found = max_independent(&adj, ceiling);
            let proven = found.proven || found.members.len() == ceiling;
            let k = found.members.len();
            PackResult {
                value: if proven { PackValue::Exact(k) } else { PackValue::AtLeast(k) },
                witness: found.members.into_iter().map(Element::Index).collect(),
            }
        } else {
            let mut chosen: Vec<usize> = Vec::new();
            for x in 0..n {
                if chosen.iter().all(|&y| !conflict(x, y)) {
                    chosen.push(x);
                }
            }
            let k = chosen.len();
            PackResult {
                value: if k == ceiling { PackValue::Exact(k) } else { PackValue::AtLeast(k) },
                witness: chosen.into_iter().map(Element::Index).collect(),
            }
        }
    } else if let Some((q, img)) = quotient_of(g, a)? {
        let inner = packing_index(q.target(), &img, cap, None)?;
        PackResult { value: inner.value, witness: lift_all(&q, &inner.witness)? }
    } else if let Some((_, true)) = g.finite_core(a)? {
        PackResult { value: PackValue::Exact(1), witness: vec![g.identity()] }
    } else {
        let window = search_window.ok_or_else(|| {
            Error::WindowTooSmall("packing on an infinite group needs a search window".into())
        })?;
        window_packing(g, a, cap, window)?
    };
    verify_packing(g, a, &result.witness)?;
    Ok(result)
}

fn window_packing(g: &Group, a: &Subset, cap: usize, window: &Window) -> Result<PackResult> {
    let mut chosen: Vec<Element> = Vec::new();
    for x in window.iter() {
        let mut free = true;
        for y in &chosen {
            if g.translates_meet(a, y, x)? {
                free = false;
                break;
            }
        }
        if free {
            chosen.push(x.clone());
            if chosen.len() == cap {
                return Ok(PackResult { value: PackValue::AtLeast(cap), witness: chosen });
            }
        }
    }
    if window.len() <= 64 {
        let pts = window.elements();
        let mut adj = vec![0u64; pts.len()];
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if g.translates_meet(a, &pts[i], &pts[j])? {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        let found = max_independent(&adj, cap);
        if found.members.len() > chosen.len() {
            chosen = found.members.iter().map(|&i| pts[i].clone()).collect();
        }
    }
    Ok(PackResult { value: PackValue::AtLeast(chosen.len()), witness: chosen })
}

fn verify_packing(g: &Group, a: &Subset, pts: &[Element]) -> Result<()> {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            assert!(!g.translates_meet(a, &pts[i], &pts[j])?, "packing witness translates overlap");
        }
    }
    Ok(())
}

/// `cov(A)`: the fewest left translates of `A` covering the group.
///
/// Finite groups use an exact set-cover search while the trivial lower bound
/// stays within `min(cap, 20)`, and a greedy cover otherwise. Periodic subsets
/// of `Z^d` reduce to their quotient; finite and cofinite sets are decided
/// directly.
pub fn covering_number(g: &Group, a: &Subset, cap: usize) -> Result<CovResult> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    g.check_subset(a)?;
    if is_empty_set(g, a)? {
        return Err(Error::UndefinedIndex);
    }
    if let Some(fg) = g.as_finite() {
        let n = fg.order();
        let bits = g.finite_bits(a)?;
        let sets: Vec<FixedBitSet> = (0..n)
            .map(|x| {
                let mut t = FixedBitSet::with_capacity(n);
                for y in bits.ones() {
                    t.insert(fg.mul(x, y));
                }
                t
            })
            .collect();
        let found = min_cover(n, &sets, cap.min(COVER_LIMIT)).expect("translates of a non-empty set cover");
        let mut covered = FixedBitSet::with_capacity(n);
        for &x in &found.members {
            covered.union_with(&sets[x]);
        }
        assert_eq!(covered.count_ones(..), n, "cover witness misses points");
        let k = found.members.len();
        return Ok(CovResult {
            value: if found.proven { CovValue::Exact(k) } else { CovValue::AtMost(k) },
            witness: found.members.into_iter().map(Element::Index).collect(),
        });
    }
    if let Some((q, img)) = quotient_of(g, a)? {
        let inner = covering_number(q.target(), &img, cap)?;
        return Ok(CovResult { value: inner.value, witness: lift_all(&q, &inner.witness)? });
    }
    match g.finite_core(a)? {
        Some((_, false)) => Ok(CovResult { value: CovValue::Infinite, witness: Vec::new() }),
        Some((hole, true)) if hole.is_empty() => {
            Ok(CovResult { value: CovValue::Exact(1), witness: vec![g.identity()] })
        }
        Some((hole, true)) => {
            let mut diffs = Vec::new();
            for u in &hole {
                for v in &hole {
                    diffs.push(g.mul(u, &g.inv(v)));
                }
            }
            let x = g.far_point(&diffs);
            for u in &hole {
                assert!(
                    g.contains(a, u)? || g.contains(a, &g.mul(&g.inv(&x), u))?,
                    "cover witness misses points"
                );
            }
            Ok(CovResult { value: CovValue::Exact(2), witness: vec![g.identity(), x] })
        }
        None => Err(Error::Unsupported(
            "covering numbers on infinite groups need periodic, finite or cofinite sets".into(),
        )),
    }
}
