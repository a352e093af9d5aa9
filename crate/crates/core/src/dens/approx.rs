//! Subadditivization and upper Banach density approximants.

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DensityResult, Method, Value, Witness};
use crate::error::{Error, Result};
use crate::grp::{box_points, Element, Group, Subset};
use crate::rational::{int, Rational};

/// `h(A) = sup_C base(A cup C) - base(C)` over subsets `C` of a finite group.
///
/// All `2^|G|` sets are visited when `|G| <= exact_limit`; otherwise `samples`
/// random sets drawn from `seed` give a lower bound.
pub fn subadditivize(
    g: &Group,
    base: impl Fn(&FixedBitSet) -> Result<Rational>,
    a: &FixedBitSet,
    exact_limit: usize,
    samples: usize,
    seed: u64,
) -> Result<DensityResult> {
    let n = g
        .order()
        .ok_or_else(|| Error::Unsupported("subadditivization needs a finite group".into()))?;
    let exact = n <= exact_limit;
    let mut cands: Vec<FixedBitSet> = Vec::new();
    if exact {
        if n > 24 {
            return Err(Error::Capacity(format!("2^{n} subsets")));
        }
        for mask in 0u64..(1u64 << n) {
            let mut c = FixedBitSet::with_capacity(n);
            for i in 0..n {
                c.set(i, mask >> i & 1 == 1);
            }
            cands.push(c);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        cands.push(FixedBitSet::with_capacity(n));
        for _ in 0..samples {
            let mut c = FixedBitSet::with_capacity(n);
            for i in 0..n {
                c.set(i, rng.gen_bool(0.5));
            }
            cands.push(c);
        }
    }
    let mut best: Option<(Rational, FixedBitSet)> = None;
    for c in cands {
        let mut ac = a.clone();
        ac.union_with(&c);
        let v = base(&ac)? - base(&c)?;
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, c));
        }
    }
    let (v, c) = best.expect("at least one candidate");
    let value = if exact { Value::Exact(v) } else { Value::LowerBound(v) };
    let witness = Witness { points: c.ones().map(Element::Index).collect(), ..Witness::default() };
    Ok(DensityResult::new(value, if exact { Method::SubsetEnum } else { Method::Grid }).with_witness(witness))
}

fn cube(d: usize, side: usize) -> Vec<Element> {
    box_points(&vec![side as i64; d])
}

/// Upper Banach density of a subset of `Z^d` along a ladder of cube sides.
///
/// Each rung records `max_t |A cap (t + [0,L)^d)| / L^d` over all shifts `t`.
/// Periodic sets are exact through one period; for finite sets every rung is
/// an upper bound on `d*(A)` and the last one is reported.
pub fn dstar_window(g: &Group, a: &Subset, ladder: &[usize]) -> Result<DensityResult> {
    let d = g
        .free_abelian_rank()
        .ok_or_else(|| Error::Unsupported("dstar_window works on Z^d".into()))?;
    g.check_subset(a)?;
    if ladder.is_empty() || ladder.contains(&0) {
        return Err(Error::InvalidArgument("ladder sides must be positive".into()));
    }
    if let Some(p) = a.period(g) {
        let period_pts = box_points(&p);
        let mut hits = 0i64;
        for x in &period_pts {
            if g.contains(a, x)? {
                hits += 1;
            }
        }
        let mut rungs = Vec::new();
        for &side in ladder {
            let b = cube(d, side);
            let mut best = 0i64;
            for t in &period_pts {
                let mut c = 0;
                for x in &b {
                    if g.contains(a, &g.mul(t, x))? {
                        c += 1;
                    }
                }
                best = best.max(c);
            }
            rungs.push(Rational::new(best.into(), (b.len() as i64).into()));
        }
        let v = Rational::new(hits.into(), (period_pts.len() as i64).into());
        return Ok(DensityResult::exact(v, Method::Quotient)
            .with_witness(Witness { trace: rungs, ..Witness::default() }));
    }
    match g.finite_core(a)? {
        Some((_, true)) => {
            let rungs = vec![int(1); ladder.len()];
            Ok(DensityResult::exact(int(1), Method::ClosedForm)
                .with_witness(Witness { trace: rungs, ..Witness::default() }))
        }
        Some((core, false)) => {
            let mut rungs = Vec::new();
            let mut best_t = Vec::new();
            for &side in ladder {
                let b = cube(d, side);
                let mut best = (0usize, g.identity());
                for e in &core {
                    for x in &b {
                        let t = g.mul(e, &g.inv(x));
                        let c = b.iter().filter(|y| core.binary_search(&g.mul(&t, y)).is_ok()).count();
                        if c > best.0 {
                            best = (c, t);
                        }
                    }
                }
                rungs.push(Rational::new((best.0 as i64).into(), (b.len() as i64).into()));
                best_t.push(best.1);
            }
            let last = rungs.last().cloned().expect("non-empty ladder");
            Ok(DensityResult::new(Value::UpperBound(last), Method::Grid)
                .with_witness(Witness { trace: rungs, points: best_t, ..Witness::default() }))
        }
        None => Err(Error::WindowTooSmall(
            "box counts are only decidable for periodic, finite or cofinite sets".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn additive_base_is_fixed() {
        let g = Group::cyclic(4).unwrap();
        let base = |b: &FixedBitSet| Ok(Rational::new((b.count_ones(..) as i64).into(), 4.into()));
        let mut a = FixedBitSet::with_capacity(4);
        a.insert(1);
        a.insert(3);
        assert_eq!(subadditivize(&g, base, &a, 12, 0, 0).unwrap().value, Value::Exact(rat(1, 2)));
        let empty = FixedBitSet::with_capacity(4);
        assert_eq!(subadditivize(&g, base, &empty, 12, 0, 0).unwrap().value, Value::Exact(int(0)));
        let sampled = subadditivize(&g, base, &a, 2, 10, 7).unwrap();
        assert_eq!(sampled.value, Value::LowerBound(rat(1, 2)));
    }

    #[test]
    fn dstar_examples() {
        let z = Group::free_abelian(1).unwrap();
        let thirds = Subset::residues(vec![3], vec![vec![0]]).unwrap();
        let r = dstar_window(&z, &thirds, &[1, 2, 3, 6]).unwrap();
        assert_eq!(r.value, Value::Exact(rat(1, 3)));
        assert_eq!(r.witness.trace, vec![int(1), rat(1, 2), rat(1, 3), rat(1, 3)]);
        assert_eq!(dstar_window(&z, &Subset::full(), &[4]).unwrap().value, Value::Exact(int(1)));
        let single = Subset::explicit([Element::Vector(vec![0])]);
        let r = dstar_window(&z, &single, &[1, 2, 4, 8]).unwrap();
        assert_eq!(r.value, Value::UpperBound(rat(1, 8)));
        assert_eq!(r.witness.trace, vec![int(1), rat(1, 2), rat(1, 4), rat(1, 8)]);
    }
}
