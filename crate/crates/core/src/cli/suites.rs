//! Named property suites run exhaustively over small finite groups.

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value as Json};

use super::report::{cov_json, elems, folner_json, pack_json, partition_json, rat, record, t92_json};
use crate::comb::{covering_number, ergo_sum_check, folner_set, packing_index, partition_analyze, t92_check};
use crate::dens::{
    eval_extremal, is12, iss213, kelley_bruteforce, kelley_lp, si21, sis123, subadditivize, translate_family, us12,
    ExtremalBudget, ExtremalPattern, Value,
};
use crate::error::{Error, Result};
use crate::grp::{Element, Group, Subset};
use crate::lang::canonical_print;
use crate::meas::{invariance_defect, Measure};
use crate::rational::{rat as frac, Rational};

/// One result record of a suite.
pub(crate) type Case = Map<String, Json>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    KelleyDuality,
    FiniteCollapse,
    PackCov,
    ErgoSum,
    Partition,
    Chain,
    Hierarchy,
    T92,
    Folner,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::KelleyDuality => "kelley-duality",
            Suite::FiniteCollapse => "finite-collapse",
            Suite::PackCov => "pack-cov",
            Suite::ErgoSum => "ergo-sum",
            Suite::Partition => "partition",
            Suite::Chain => "chain",
            Suite::Hierarchy => "hierarchy",
            Suite::T92 => "t92",
            Suite::Folner => "folner",
        }
    }
}

const SINGLE_LIMIT: usize = 10;
const PAIR_LIMIT: usize = 8;

/// All subsets of `[0, n)` ordered by size, then by bitmask.
pub fn subsets_by_size(n: usize) -> Vec<FixedBitSet> {
    let mut masks: Vec<u64> = (0..1u64 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.into_iter().map(|m| mask_bits(n, m)).collect()
}

fn mask_bits(n: usize, m: u64) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for i in 0..n {
        b.set(i, m >> i & 1 == 1);
    }
    b
}

fn mask_of(b: &FixedBitSet) -> usize {
    b.ones().fold(0, |m, i| m | 1 << i)
}

/// Set partitions of `[0, n)` into at most `max_cells` non-empty blocks, in
/// restricted-growth order.
pub fn partitions(n: usize, max_cells: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn go(i: usize, used: usize, n: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            let mut cells = vec![Vec::new(); used];
            for (x, &l) in labels.iter().enumerate() {
                cells[l].push(x);
            }
            out.push(cells);
            return;
        }
        for l in 0..(used + 1).min(max) {
            labels[i] = l;
            go(i + 1, used.max(l + 1), n, max, labels, out);
        }
    }
    if n > 0 {
        go(0, 0, n, max_cells, &mut labels, &mut out);
    }
    out.sort_by_key(|p| p.len());
    out
}

fn exact(r: Result<crate::dens::DensityResult>) -> Result<Rational> {
    let r = r?;
    r.value
        .exact()
        .cloned()
        .ok_or_else(|| Error::Unsupported(format!("expected an exact value, got {}", r.value.kind())))
}

fn order_within(g: &Group, limit: usize, suite: Suite) -> Result<usize> {
    let n = g
        .order()
        .ok_or_else(|| Error::Unsupported(format!("suite {} needs a finite group", suite.name())))?;
    if n > limit {
        return Err(Error::Capacity(format!("suite {} enumerates subsets of groups up to order {limit}", suite.name())));
    }
    Ok(n)
}

fn check(suite: Suite, group: &str, set: Json, method: &str, pass: bool, witness: Json) -> Case {
    let mut m = record(suite.name(), group, set);
    m.insert("kind".into(), json!("check"));
    m.insert("value".into(), json!(if pass { "pass" } else { "fail" }));
    m.insert("method".into(), json!(method));
    m.insert("witness".into(), witness);
    m
}

fn text(g: &Group, b: &FixedBitSet) -> String {
    canonical_print(g, &Subset::from_bits(b))
}

pub(crate) fn run_suite(suite: Suite, g: Option<&Group>, group: &str, budget: &ExtremalBudget) -> Result<Vec<Case>> {
    if suite == Suite::Folner {
        return folner_cases();
    }
    let g = g.ok_or_else(|| Error::InvalidArgument(format!("suite {} needs --group", suite.name())))?;
    match suite {
        Suite::KelleyDuality => per_subset(g, suite, SINGLE_LIMIT, |b| {
            let a = Subset::from_bits(b);
            let n = g.order().expect("finite");
            let fam = translate_family(g, &a)?;
            let vals = [
                exact(is12(g, &a, None))?,
                exact(si21(g, &a))?,
                exact(kelley_lp(&fam))?,
                kelley_bruteforce(&fam, n)?,
            ];
            let pass = vals.iter().all(|v| *v == vals[0]);
            Ok(check(suite, group, json!(text(g, b)), "lp-game", pass, json!({
                "is12": rat(&vals[0]), "si21": rat(&vals[1]), "kelley_lp": rat(&vals[2]), "kelley_bruteforce": rat(&vals[3]),
            })))
        }),
        Suite::FiniteCollapse => per_subset(g, suite, SINGLE_LIMIT, |b| {
            let a = Subset::from_bits(b);
            let n = g.order().expect("finite");
            let share = Rational::new((b.count_ones(..) as i64).into(), (n as i64).into());
            let vals = [exact(is12(g, &a, None))?, exact(us12(g, &a, n, None))?, exact(iss213(g, &a, None))?];
            let pass = vals.iter().all(|v| *v == share);
            Ok(check(suite, group, json!(text(g, b)), "lp-game", pass, json!({
                "is12": rat(&vals[0]), "us12": rat(&vals[1]), "iss213": rat(&vals[2]), "share": rat(&share),
            })))
        }),
        Suite::PackCov => pack_cov_cases(g, group),
        Suite::ErgoSum => {
            let n = order_within(g, PAIR_LIMIT, suite)?;
            let sets = subsets_by_size(n);
            let pairs: Vec<(&FixedBitSet, &FixedBitSet)> =
                sets.iter().flat_map(|a| sets.iter().map(move |b| (a, b))).collect();
            pairs
                .par_iter()
                .map(|(a, b)| {
                    let pass = ergo_sum_check(g, &Subset::from_bits(a), &Subset::from_bits(b))?;
                    Ok(check(suite, group, json!([text(g, a), text(g, b)]), "subset-enum", pass, json!({})))
                })
                .collect()
        }
        Suite::Partition => {
            let n = order_within(g, PAIR_LIMIT, suite)?;
            partitions(n, 3)
                .par_iter()
                .map(|cells| {
                    let subsets: Vec<Subset> = cells.iter().map(|c| Subset::indices(c.iter().copied())).collect();
                    let report = partition_analyze(g, &subsets)?;
                    let names: Vec<String> = subsets.iter().map(|s| canonical_print(g, s)).collect();
                    Ok(check(suite, group, json!(names), "subset-enum", report.passed(), partition_json(g, &report)))
                })
                .collect()
        }
        Suite::Chain => chain_cases(g, group, budget),
        Suite::Hierarchy => {
            let patterns: Vec<ExtremalPattern> = ExtremalPattern::all(1).into_iter().chain(ExtremalPattern::all(2)).collect();
            let named = |q: &str, p: &str| ExtremalPattern::parse(q, p).expect("valid pattern");
            let refs = [named("i", "1"), named("s", "1"), named("is", "12"), named("si", "12")];
            per_subset(g, suite, SINGLE_LIMIT, |b| {
                let a = Subset::from_bits(b);
                let eval = |p: &ExtremalPattern| exact(eval_extremal(p, g, &a, *budget));
                let targets = refs.iter().map(eval).collect::<Result<Vec<_>>>()?;
                let mut values = Map::new();
                let mut pass = true;
                for p in &patterns {
                    let v = eval(p)?;
                    pass &= targets.contains(&v);
                    values.insert(p.to_string(), rat(&v));
                }
                Ok(check(suite, group, json!(text(g, b)), "lp-game", pass, Json::Object(values)))
            })
        }
        Suite::T92 => per_subset(g, suite, SINGLE_LIMIT, |b| {
            if b.count_ones(..) == 0 {
                return Ok(check(suite, group, json!(text(g, b)), "closed-form", true, json!({"skipped": "empty set"})));
            }
            let r = t92_check(g, &Subset::from_bits(b), budget)?;
            Ok(check(suite, group, json!(text(g, b)), "subset-enum", r.passed(), t92_json(g, &r)))
        }),
        Suite::Folner => unreachable!(),
    }
}

fn per_subset(
    g: &Group,
    suite: Suite,
    limit: usize,
    f: impl Fn(&FixedBitSet) -> Result<Case> + Sync + Send,
) -> Result<Vec<Case>> {
    let n = order_within(g, limit, suite)?;
    subsets_by_size(n).par_iter().map(f).collect()
}

fn pack_cov_cases(g: &Group, group: &str) -> Result<Vec<Case>> {
    let suite = Suite::PackCov;
    let n = order_within(g, PAIR_LIMIT, suite)?;
    let sets = subsets_by_size(n);
    let mut by_mask = vec![(Rational::zero(), Rational::zero()); 1 << n];
    let vals: Vec<(usize, Rational, Rational)> = sets
        .par_iter()
        .map(|b| {
            let a = Subset::from_bits(b);
            Ok((mask_of(b), exact(is12(g, &a, None))?, exact(iss213(g, &a, None))?))
        })
        .collect::<Result<_>>()?;
    for (m, i, s) in vals {
        by_mask[m] = (i, s);
    }
    let mut cases: Vec<Case> = sets
        .par_iter()
        .map(|b| {
            let a = Subset::from_bits(b);
            let (is, _) = &by_mask[mask_of(b)];
            if b.count_ones(..) == 0 {
                return Ok(check(suite, group, json!(text(g, b)), "closed-form", true, json!({"skipped": "empty set"})));
            }
            let pack = packing_index(g, &a, n, None)?;
            let cov = covering_number(g, &Subset::difference_set(a), n)?;
            let k = pack.value.exact().expect("exact on finite groups");
            let c = cov.value.exact().expect("exact on finite groups");
            let pass = Rational::from_integer((k as i64).into()) * is <= Rational::one() && c <= k;
            Ok(check(suite, group, json!(text(g, b)), "subset-enum", pass, json!({
                "is12": rat(is), "pack": pack_json(g, &pack), "difference_cover": cov_json(g, &cov),
            })))
        })
        .collect::<Result<_>>()?;
    let pairs: Vec<(&FixedBitSet, &FixedBitSet)> = sets.iter().flat_map(|a| sets.iter().map(move |b| (a, b))).collect();
    cases.extend(pairs.iter().map(|(a, b)| {
        let (ma, mb) = (mask_of(a), mask_of(b));
        let (is_a, iss_a) = &by_mask[ma];
        let (_, iss_b) = &by_mask[mb];
        let (is_u, iss_u) = &by_mask[ma | mb];
        let mixed = *is_u <= is_a + iss_b;
        let sub = *iss_u <= iss_a + iss_b;
        check(suite, group, json!([text(g, a), text(g, b)]), "lp-game", mixed && sub, json!({
            "is12_union": rat(is_u), "is12_a": rat(is_a), "iss213_b": rat(iss_b),
            "iss213_union": rat(iss_u), "iss213_a": rat(iss_a),
        }))
    }));
    Ok(cases)
}

fn chain_cases(g: &Group, group: &str, budget: &ExtremalBudget) -> Result<Vec<Case>> {
    let suite = Suite::Chain;
    let n = order_within(g, SINGLE_LIMIT, suite)?;
    let sets = subsets_by_size(n);
    let mut is_by_mask = vec![Rational::zero(); 1 << n];
    let vals: Vec<(usize, Rational)> = sets
        .par_iter()
        .map(|b| Ok((mask_of(b), exact(is12(g, &Subset::from_bits(b), None))?)))
        .collect::<Result<_>>()?;
    for (m, v) in vals {
        is_by_mask[m] = v;
    }
    let base = |b: &FixedBitSet| Ok(is_by_mask[mask_of(b)].clone());
    sets.par_iter()
        .map(|b| {
            let a = Subset::from_bits(b);
            let share = Rational::new((b.count_ones(..) as i64).into(), (n as i64).into());
            let hat = exact(subadditivize(g, base, b, n, 0, 0))?;
            let iss = exact(iss213(g, &a, None))?;
            let sis = sis123(g, &a, budget.kmax, budget.grid_denominator)?.value;
            let is = &is_by_mask[mask_of(b)];
            let (lo, hi) = match &sis {
                Value::Interval(lo, hi) => (lo.clone(), hi.clone()),
                Value::Exact(v) => (v.clone(), v.clone()),
                other => return Err(Error::Unsupported(format!("unexpected sis123 value {other:?}"))),
            };
            let pass = *is <= hat && hat <= iss && hi == iss && lo <= share && share <= hi;
            Ok(check(suite, group, json!(text(g, b)), "subset-enum", pass, json!({
                "is12": rat(is), "hat_is12": rat(&hat), "iss213": rat(&iss),
                "sis123_lo": rat(&lo), "sis123_hi": rat(&hi), "share": rat(&share),
            })))
        })
        .collect()
}

fn folner_cases() -> Result<Vec<Case>> {
    let suite = Suite::Folner;
    let mut out = Vec::new();
    for d in 1..=2usize {
        let f: Vec<Vec<i64>> = (0..d).map(|_| -1..=1i64).multi_cartesian_product().collect();
        for eps in [frac(1, 5), frac(1, 10)] {
            let b = folner_set(d, &f, &eps)?;
            let l = b.side as i64;
            let counted = (l + 2).pow(d as u32) - l.pow(d as u32);
            let prev = l - 1;
            let minimal = prev == 0
                || Rational::new(((prev + 2).pow(d as u32) - prev.pow(d as u32)).into(), prev.pow(d as u32).into()) >= eps;
            let pass = b.defect < eps && b.boundary as i64 == counted && minimal;
            let group = if d == 1 { "Z".to_string() } else { format!("Z^{d}") };
            let mut w = folner_json(&b);
            w["eps"] = rat(&eps);
            out.push(check(suite, &group, json!(format!("{{-1,0,1}}^{d}")), "closed-form", pass, w));
        }
    }
    let z = Group::free_abelian(1)?;
    let one = Element::Vector(vec![1]);
    for big_n in [10i64, 50] {
        let support: Vec<Element> = (-big_n..=big_n).map(|x| Element::Vector(vec![x])).collect();
        let mu = Measure::uniform(support.clone())?;
        let bound = frac(2, 2 * big_n + 1);
        for a in [Subset::explicit(support.clone()), Subset::residues(vec![2], vec![vec![0]])?] {
            let defect = invariance_defect(&z, &mu, &a, std::slice::from_ref(&one))?;
            let pass = defect <= bound;
            out.push(check(suite, "Z", json!(canonical_print(&z, &a)), "oracle", pass, json!({
                "measure": format!("uniform(-{big_n}..{big_n})"),
                "shifts": elems(&z, std::slice::from_ref(&one)),
                "defect": rat(&defect),
                "bound": rat(&bound),
            })));
        }
    }
    Ok(out)
}
