//! Kelley intersection numbers of finite set families.

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_traits::Zero;

use super::{DensityResult, Method, Witness};
use crate::error::{Error, Result};
use crate::grp::{Group, Subset};
use crate::rational::{int, Rational};
use crate::ratlp::{solve_lp, LinearProgram, Relation};

/// The left translates `{xA : x in G}` of a subset of a finite group, as
/// bitsets over the carrier.
pub fn translate_family(g: &Group, a: &Subset) -> Result<Vec<FixedBitSet>> {
    let fg = g
        .as_finite()
        .ok_or_else(|| Error::Unsupported("translate families need a finite group".into()))?;
    let bits = g.finite_bits(a)?;
    Ok((0..fg.order())
        .map(|x| {
            let mut b = FixedBitSet::with_capacity(fg.order());
            for y in bits.ones() {
                b.insert(fg.mul(x, y));
            }
            b
        })
        .collect())
}

fn dedup(family: &[FixedBitSet]) -> Result<Vec<FixedBitSet>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let width = family[0].len();
    if family.iter().any(|b| b.len() != width) {
        return Err(Error::InvalidArgument("family members live on different windows".into()));
    }
    let mut out: Vec<FixedBitSet> = Vec::new();
    for b in family {
        if !out.contains(b) {
            out.push(b.clone());
        }
    }
    Ok(out)
}

/// `min_{n <= max_tuple} min_{B_1..B_n} (1/n) max_y #{k : y in B_k}` over multisets
/// drawn from the family.
pub fn kelley_bruteforce(family: &[FixedBitSet], max_tuple: usize) -> Result<Rational> {
    if max_tuple == 0 {
        return Err(Error::InvalidArgument("max_tuple must be at least 1".into()));
    }
    let fam = dedup(family)?;
    let width = fam[0].len();
    let mut best: Option<(usize, usize)> = None;
    for n in 1..=max_tuple {
        for tuple in (0..fam.len()).combinations_with_replacement(n) {
            let mut counts = vec![0usize; width];
            for &k in &tuple {
                for y in fam[k].ones() {
                    counts[y] += 1;
                }
            }
            let hits = counts.into_iter().max().unwrap_or(0);
            if best.is_none_or(|(bh, bn)| hits * bn < bh * n) {
                best = Some((hits, n));
            }
        }
    }
    let (h, n) = best.expect("non-empty family");
    Ok(Rational::new((h as i64).into(), (n as i64).into()))
}

/// `I(B) = min { t : sum_B lambda_B chi_B <= t pointwise, lambda a probability vector }`.
pub fn kelley_lp(family: &[FixedBitSet]) -> Result<DensityResult> {
    let fam = dedup(family)?;
    let (m, width) = (fam.len(), fam[0].len());
    let mut objective = vec![Rational::zero(); m + 1];
    objective[m] = int(1);
    let mut lp = LinearProgram::minimize(objective);
    for y in 0..width {
        let mut row: Vec<Rational> = fam.iter().map(|b| if b.contains(y) { int(1) } else { int(0) }).collect();
        row.push(int(-1));
        lp.constrain(row, Relation::Le, int(0));
    }
    let mut ones = vec![int(1); m];
    ones.push(int(0));
    lp.constrain(ones, Relation::Eq, int(1));
    let sol = solve_lp(&lp)?;
    let witness = Witness { trace: sol.x[..m].to_vec(), ..Witness::default() };
    Ok(DensityResult::exact(sol.value, Method::LpGame).with_witness(witness))
}
