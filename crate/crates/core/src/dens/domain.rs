//! Test domains on which inner suprema are attained exactly, and helpers for
//! building 0/1 density games.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use num_traits::Zero;

use super::{Certificate, Column, DensityResult, Method, Value, Witness};
use crate::error::{Error, Result};
use crate::grp::{Element, Group, Subset, Window};
use crate::meas::Measure;
use crate::rational::{int, Rational};
use crate::ratlp::{game_value, GameMatrix, GameSolution};

/// Largest window materialized as a game test domain.
pub(crate) const DOMAIN_LIMIT: usize = 200_000;

/// Membership oracle: a bitset on finite groups, symbolic otherwise.
pub(crate) struct Member<'a> {
    g: &'a Group,
    set: &'a Subset,
    bits: Option<FixedBitSet>,
}

impl<'a> Member<'a> {
    pub(crate) fn new(g: &'a Group, set: &'a Subset) -> Result<Self> {
        g.check_subset(set)?;
        let bits = if g.is_finite() { Some(g.finite_bits(set)?) } else { None };
        Ok(Member { g, set, bits })
    }

    pub(crate) fn test(&self, x: &Element) -> Result<bool> {
        match &self.bits {
            Some(b) => Ok(b.contains(x.as_index().expect("finite element"))),
            None => self.g.contains(self.set, x),
        }
    }
}

/// `Some(0)` for the empty set and `Some(1)` for the whole group, when recognizable.
pub(crate) fn trivial(g: &Group, a: &Subset) -> Result<Option<Rational>> {
    g.check_subset(a)?;
    if let Some(fg) = g.as_finite() {
        let n = g.finite_bits(a)?.count_ones(..);
        return Ok(match n {
            0 => Some(int(0)),
            _ if n == fg.order() => Some(int(1)),
            _ => None,
        });
    }
    match g.finite_core(a)? {
        Some((e, false)) if e.is_empty() => return Ok(Some(int(0))),
        Some((e, true)) if e.is_empty() => return Ok(Some(int(1))),
        Some(_) => return Ok(None),
        None => {}
    }
    if let Some(p) = a.period(g) {
        let pts = crate::grp::box_points(&p);
        let mut hits = 0;
        for x in &pts {
            if g.contains(a, x)? {
                hits += 1;
            }
        }
        return Ok(match hits {
            0 => Some(int(0)),
            _ if hits == pts.len() => Some(int(1)),
            _ => None,
        });
    }
    Ok(None)
}

fn max_len(w: &Window) -> usize {
    w.iter().map(Element::word_len).max().unwrap_or(0)
}

fn checked_ball(g: &Group, radius: usize) -> Result<Vec<Element>> {
    match g.ball_size(radius) {
        Some(n) if n <= DOMAIN_LIMIT => Ok(g.ball(radius).elements().to_vec()),
        _ => Err(Error::Capacity(format!(
            "test domain of radius {radius} exceeds {DOMAIN_LIMIT} elements"
        ))),
    }
}

/// Test points `x` such that every payoff row `h -> [hx in A]`, `h` in `w`,
/// is attained by one of them.
pub(crate) fn one_sided_domain(g: &Group, a: &Subset, w: &Window) -> Result<Vec<Element>> {
    if let Some(c) = g.carrier() {
        return Ok(c.elements().to_vec());
    }
    if let Some((core, _)) = g.finite_core(a)? {
        let mut pts = BTreeSet::new();
        for h in w.iter() {
            let hi = g.inv(h);
            for e in &core {
                pts.insert(g.mul(&hi, e));
            }
        }
        let avoid: Vec<Element> = pts.iter().cloned().collect();
        pts.insert(g.far_point(&avoid));
        return Ok(pts.into_iter().collect());
    }
    if let Some(p) = a.period(g) {
        return Ok(crate::grp::box_points(&p));
    }
    if let Some(depth) = a.prefix_depth(g) {
        return checked_ball(g, max_len(w) + depth);
    }
    Err(Error::InnerSupNotExact(
        "the set is neither finite, cofinite, periodic nor prefix-determined".into(),
    ))
}

pub(crate) enum TwoSided {
    /// Abelian reduction: `xhy = h(xy)`, so single shifts suffice.
    Reduced(Vec<Element>),
    /// A shift pair with `x h y` in `A` for every row `h`.
    Saturated(Element, Element),
}

pub(crate) fn two_sided_domain(g: &Group, a: &Subset, w: &Window) -> Result<TwoSided> {
    if g.is_abelian() {
        return Ok(TwoSided::Reduced(one_sided_domain(g, a, w)?));
    }
    let depth = a.prefix_depth(g).unwrap_or(1);
    let xs = checked_ball(g, max_len(w) + depth + 1)?;
    let ys = g.ball(1);
    let m = Member::new(g, a)?;
    for x in &xs {
        for y in ys.iter() {
            let mut all = true;
            for h in w.iter() {
                if !m.test(&g.mul(&g.mul(x, h), y))? {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(TwoSided::Saturated(x.clone(), y.clone()));
            }
        }
    }
    Err(Error::InnerSupNotExact(
        "two-sided shifts of this set have no exact supremum on a free group".into(),
    ))
}

/// Columns (over `rows`) of the game `[r c in A]`, deduplicated in first-seen order.
pub(crate) fn point_columns(
    g: &Group,
    m: &Member<'_>,
    rows: &[Element],
    cols: &[Element],
) -> Result<(Vec<FixedBitSet>, Vec<Column>)> {
    let mut seen = std::collections::HashSet::new();
    let (mut out, mut labels) = (Vec::new(), Vec::new());
    for x in cols {
        let mut b = FixedBitSet::with_capacity(rows.len());
        for (i, h) in rows.iter().enumerate() {
            b.set(i, m.test(&g.mul(h, x))?);
        }
        if seen.insert(b.clone()) {
            out.push(b);
            labels.push(Column::Point(x.clone()));
        }
    }
    Ok((out, labels))
}

/// Columns of the finite two-sided game `[x r y in A]` over all pairs.
pub(crate) fn pair_columns(g: &Group, m: &Member<'_>, rows: &[Element]) -> Result<(Vec<FixedBitSet>, Vec<Column>)> {
    let carrier = g.carrier().expect("finite group");
    let mut seen = std::collections::HashSet::new();
    let (mut out, mut labels) = (Vec::new(), Vec::new());
    for x in carrier.iter() {
        for y in carrier.iter() {
            let mut b = FixedBitSet::with_capacity(rows.len());
            for (i, h) in rows.iter().enumerate() {
                b.set(i, m.test(&g.mul(&g.mul(x, h), y))?);
            }
            if seen.insert(b.clone()) {
                out.push(b);
                labels.push(Column::Pair(x.clone(), y.clone()));
            }
        }
    }
    Ok((out, labels))
}

pub(crate) fn solve_columns(rows: usize, cols: &[FixedBitSet]) -> Result<GameSolution> {
    let row_bits: Vec<FixedBitSet> = (0..rows)
        .map(|i| {
            let mut b = FixedBitSet::with_capacity(cols.len());
            for (j, c) in cols.iter().enumerate() {
                b.set(j, c.contains(i));
            }
            b
        })
        .collect();
    Ok(game_value(&GameMatrix::binary(cols.len(), row_bits)?))
}

pub(crate) fn measure_from(labels: &[Element], weights: &[Rational]) -> Option<Measure> {
    Measure::from_weights(labels.iter().cloned().zip(weights.iter().cloned())).ok()
}

pub(crate) fn game_result(
    sol: &GameSolution,
    rows: &[Element],
    labels: Vec<Column>,
    exact: bool,
    method: Method,
) -> DensityResult {
    let value = if exact { Value::Exact(sol.value.clone()) } else { Value::UpperBound(sol.value.clone()) };
    let dual = labels
        .into_iter()
        .zip(sol.col_strategy.iter().cloned())
        .filter(|(_, w)| !w.is_zero())
        .collect();
    DensityResult {
        value,
        method,
        witness: Witness { measure: measure_from(rows, &sol.row_strategy), dual, ..Witness::default() },
        certificate: Some(Certificate {
            upper: sol.col_payoffs.iter().max().cloned().expect("columns"),
            lower: sol.row_payoffs.iter().min().cloned().expect("rows"),
        }),
    }
}
