//! End-to-end acceptance criteria. Each criterion prints one line.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use common::*;
use extremal::cli;
use extremal::comb::{covering_number, folner_set, packing_index, partition_analyze, t92_check, brs_bound};
use extremal::dens::{
    eval_extremal, is12, iss213, kelley_bruteforce, kelley_lp, si21, sis123, subadditivize, translate_family, us12,
    ExtremalBudget, ExtremalPattern, Value,
};
use extremal::lang::{canonical_print, parse_group, parse_set, print_group};
use extremal::meas::{invariance_defect, Measure};
use extremal::rational::{int, rat, zero};
use extremal::{Element, Group, Rational, Subset, Window};
use fixedbitset::FixedBitSet;
use itertools::Itertools;

type Outcome = std::result::Result<String, String>;

fn bits(mask: u64, n: usize) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for i in members(mask, n) {
        b.insert(i);
    }
    b
}

fn subset(mask: u64, n: usize) -> Subset {
    Subset::indices(members(mask, n))
}

fn exact(r: extremal::Result<extremal::dens::DensityResult>) -> Rational {
    let r = r.expect("evaluation succeeds");
    r.value.exact().cloned().unwrap_or_else(|| panic!("expected exact, got {:?}", r.value))
}

fn upper(v: &Value) -> Rational {
    match v {
        Value::UpperBound(x) | Value::Exact(x) => x.clone(),
        other => panic!("expected an upper bound, got {other:?}"),
    }
}

fn within(t: Instant, limit: Duration) -> std::result::Result<Duration, String> {
    let e = t.elapsed();
    if e < limit {
        Ok(e)
    } else {
        Err(format!("took {e:?}, limit {limit:?}"))
    }
}

fn kelley_duality() -> Outcome {
    let t = Instant::now();
    let mut count = 0;
    for n in [5usize, 6] {
        let g = cyclic(n);
        for m in 0..1u64 << n {
            let a = subset(m, n);
            let fam = translate_family(&g, &a).unwrap();
            let vals = [
                exact(is12(&g, &a, None)),
                exact(si21(&g, &a)),
                exact(kelley_lp(&fam)),
                kelley_bruteforce(&fam, n).unwrap(),
            ];
            if vals.iter().any(|v| *v != share(m, n)) {
                return Err(format!("Cyclic({n}) mask {m:b}: {vals:?}"));
            }
            count += 1;
        }
    }
    let e = within(t, Duration::from_secs(60))?;
    Ok(format!("{count} subsets agree with |A|/|G| in {e:.1?}"))
}

fn finite_collapse() -> Outcome {
    let t = Instant::now();
    let mut groups: Vec<Group> = (2..=6).map(cyclic).collect();
    groups.push(Group::symmetric(3).unwrap());
    let mut count = 0;
    for g in &groups {
        let n = g.order().unwrap();
        for m in 0..1u64 << n {
            let a = subset(m, n);
            let vals = [exact(is12(g, &a, None)), exact(us12(g, &a, n, None)), exact(iss213(g, &a, None))];
            if vals.iter().any(|v| *v != share(m, n)) {
                return Err(format!("{:?} mask {m:b}: {vals:?}", g.spec()));
            }
            count += 1;
        }
    }
    let e = within(t, Duration::from_secs(300))?;
    Ok(format!("{count} subsets collapse to |A|/|G| in {e:.1?}"))
}

fn periodic_quotient() -> Outcome {
    let z = Group::free_abelian(1).unwrap();
    let even = Subset::residues(vec![2], vec![vec![0]]).unwrap();
    let r = is12(&z, &even, None).unwrap();
    if r.value != Value::Exact(rat(1, 2)) || r.method.tag() != "quotient" {
        return Err(format!("quotient gave {:?} via {}", r.value, r.method.tag()));
    }
    let mut previous: Option<Rational> = None;
    let mut rungs = Vec::new();
    for len in [2i64, 4, 8] {
        let w = Window::new((0..len).map(|x| Element::Vector(vec![x])).collect()).unwrap();
        let r = is12(&z, &even, Some(&w)).unwrap();
        let v = upper(&r.value);
        // the optimal measure, re-evaluated on one period of shifts
        let mu = r.witness.measure.as_ref().ok_or("missing witness measure")?;
        let sup = (0..2)
            .map(|x| {
                mu.iter()
                    .filter(|(y, _)| matches!(y, Element::Vector(c) if (c[0] + x).rem_euclid(2) == 0))
                    .map(|(_, p)| p.clone())
                    .fold(zero(), |s, p| s + p)
            })
            .max()
            .unwrap();
        if v != rat(1, 2) || sup > v || previous.as_ref().is_some_and(|p| v > *p) {
            return Err(format!("window of length {len} gave {v}, witness sup {sup}"));
        }
        previous = Some(v.clone());
        rungs.push(v.to_string());
    }
    let p = packing_index(&z, &even, 6, None).unwrap();
    let c = covering_number(&z, &even, 6).unwrap();
    if p.value.exact() != Some(2) || c.value.exact() != Some(2) {
        return Err(format!("pack {:?}, cov {:?}", p.value, c.value));
    }
    let w = &p.witness;
    let disjoint = w.len() == 2 && {
        let (Element::Vector(x), Element::Vector(y)) = (&w[0], &w[1]) else { unreachable!() };
        (x[0] - y[0]).rem_euclid(2) == 1
    };
    if !disjoint {
        return Err(format!("packing witness {w:?} is not two disjoint translates"));
    }
    Ok(format!("is12 = 1/2 via quotient, windows {}, pack = cov = 2", rungs.join(", ")))
}

fn inequality_suite() -> Outcome {
    let t = Instant::now();
    let mut checks = 0usize;
    for g in [cyclic(6), Group::symmetric(3).unwrap()] {
        let fg = table(&g);
        let n = fg.order();
        let mut is = Vec::new();
        let mut iss = Vec::new();
        for m in 0..1u64 << n {
            let a = subset(m, n);
            is.push(exact(is12(&g, &a, None)));
            iss.push(exact(iss213(&g, &a, None)));
        }
        for m in 1..1u64 << n {
            let a = subset(m, n);
            let p = packing_index(&g, &a, n, None).unwrap().value.exact().ok_or("inexact packing")?;
            let c = covering_number(&g, &Subset::difference_set(a), n).unwrap().value.exact().ok_or("inexact cover")?;
            if p != pack(fg, m) || c != cov(fg, difference(fg, m)) {
                return Err(format!("{:?} mask {m:b}: pack {p}, cov {c} disagree with brute force", g.spec()));
            }
            if Rational::from_integer((p as i64).into()) * &is[m as usize] > int(1) || c > p {
                return Err(format!("{:?} mask {m:b}: pack {p}, cov {c}, is12 {}", g.spec(), is[m as usize]));
            }
            checks += 2;
        }
        for a in 0..1u64 << n {
            for b in 0..1u64 << n {
                if is[(a | b) as usize] > &is[a as usize] + &iss[b as usize] {
                    return Err(format!("{:?}: is12 union bound fails for {a:b}, {b:b}", g.spec()));
                }
                checks += 1;
            }
        }
    }
    let g = cyclic(5);
    let iss: Vec<Rational> = (0..32u64).map(|m| exact(iss213(&g, &subset(m, 5), None))).collect();
    for a in 0..32usize {
        for b in 0..32usize {
            if iss[a | b] > &iss[a] + &iss[b] {
                return Err(format!("Cyclic(5): iss213 not subadditive at {a:b}, {b:b}"));
            }
            checks += 1;
        }
    }
    let e = within(t, Duration::from_secs(600))?;
    Ok(format!("{checks} exact comparisons hold in {e:.1?}"))
}

fn ergo_sum() -> Outcome {
    let mut pairs = 0;
    let mut premises = 0;
    for n in 3..=5usize {
        let g = cyclic(n);
        let fg = table(&g);
        let us: Vec<Rational> = (0..1u64 << n).map(|m| exact(us12(&g, &subset(m, n), n, None))).collect();
        for a in 0..1u64 << n {
            for b in 0..1u64 << n {
                pairs += 1;
                if &us[a as usize] + &us[b as usize] > int(1) {
                    premises += 1;
                    if product(fg, a, b) != full(n) {
                        return Err(format!("Cyclic({n}): AB != G for {a:b}, {b:b}"));
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} pairs, {premises} with us12(A)+us12(B) > 1, zero violations"))
}

/// `max_{1<k<=n} (k^{n+1-k} - 1)/(k - 1)`, taken as 1 for a single cell.
fn printed_bound(n: usize) -> u64 {
    (2..=n as u64).map(|k| (k.pow((n as u64 + 1 - k) as u32) - 1) / (k - 1)).max().unwrap_or(1)
}

fn partitions(n: usize, max_cells: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for labels in (0..n).map(|_| 0..max_cells).multi_cartesian_product() {
        // restricted growth: each new label is one above the largest seen
        let mut top = 0;
        let mut rgs = true;
        for (i, &l) in labels.iter().enumerate() {
            if (i == 0 && l != 0) || l > top + 1 {
                rgs = false;
                break;
            }
            top = top.max(l);
        }
        if !rgs {
            continue;
        }
        let mut cells = vec![0u64; top + 1];
        for (x, &l) in labels.iter().enumerate() {
            cells[l] |= 1 << x;
        }
        out.push(cells);
    }
    out
}

fn protasov_partitions() -> Outcome {
    let g = cyclic(6);
    let fg = table(&g);
    let all = partitions(6, 3);
    let mut over_printed = Vec::new();
    for cells in &all {
        let k = cells.len();
        let covers: Vec<usize> = cells.iter().map(|&c| cov(fg, difference(fg, c))).collect();
        let best = *covers.iter().min().unwrap();
        let subsets: Vec<Subset> = cells.iter().map(|&c| subset(c, 6)).collect();
        let report = partition_analyze(&g, &subsets).unwrap();
        let reported = report.minimal_cover().value.exact().ok_or("inexact minimal cover")?;
        if reported != best || report.minimal_cover().witness.len() != best {
            return Err(format!("cells {cells:?}: reported |F| = {reported}, brute force {best}"));
        }
        if best > k {
            return Err(format!("cells {cells:?}: every cell needs more than {k} translates"));
        }
        if reported as u64 > printed_bound(k) {
            over_printed.push((cells.clone(), reported, printed_bound(k)));
        }
        if reported as u64 > brs_bound(k) {
            return Err(format!("cells {cells:?}: |F| = {reported} exceeds even max_k sum_i k^i"));
        }
    }
    if let Some((cells, f, b)) = over_printed.first() {
        let named: Vec<Vec<usize>> = cells.iter().map(|&c| members(c, 6)).collect();
        return Err(format!(
            "{} of {} partitions have minimal |F| above the stated bound, e.g. {named:?} needs |F| = {f} > {b}; \
             some cell always has cov <= n and |F| stays within max_(0<k<=n) sum_(i<=n-k) k^i",
            over_printed.len(),
            all.len()
        ));
    }
    Ok(format!("{} partitions, every minimal |F| within the bound", all.len()))
}

fn chain() -> Outcome {
    let budget = ExtremalBudget::default();
    let mut count = 0;
    for n in 1..=6usize {
        let g = cyclic(n);
        let is: Vec<Rational> = (0..1u64 << n).map(|m| exact(is12(&g, &subset(m, n), None))).collect();
        let base = |b: &FixedBitSet| Ok(is[b.ones().fold(0usize, |m, i| m | 1 << i)].clone());
        for m in 0..1u64 << n {
            let a = subset(m, n);
            let s = share(m, n);
            let hat = exact(subadditivize(&g, base, &bits(m, n), n, 0, 0));
            // sup_C |A ∪ C|/n - |C|/n = |A|/n
            let iss = exact(iss213(&g, &a, None));
            let sis = sis123(&g, &a, budget.kmax, budget.grid_denominator).unwrap().value;
            let (lo, hi) = (sis.lo().cloned().unwrap(), sis.hi().cloned().unwrap());
            let ordered = is[m as usize] <= hat && hat <= iss && hat == s;
            if !ordered || hi != iss || lo > s || s > hi {
                return Err(format!("Cyclic({n}) mask {m:b}: is12 {}, hat {hat}, iss213 {iss}, sis [{lo}, {hi}]", is[m as usize]));
            }
            if n == 4 && (&s - &lo) > rat(1, 20) {
                return Err(format!("Cyclic(4) mask {m:b}: sis123 lower end {lo} is far from {s}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} subsets satisfy is12 <= hat <= iss213 with |A|/|G| in the sis123 interval"))
}

fn free_group_witnesses() -> Outcome {
    let t = Instant::now();
    let f2 = Group::free(2).unwrap();
    let (a_gen, a_inv, b_gen, b_inv) = (0u8, 1u8, 2u8, 3u8);
    let a = parse_set("prefix(a,A)", &f2).unwrap();
    let b = parse_set("prefix(b,B)", &f2).unwrap();
    let p = packing_index(&f2, &a, 6, Some(&f2.ball(6))).unwrap();
    if p.value.lower() < 6 {
        return Err(format!("packing found only {:?}", p.value));
    }
    // xA meets yA exactly when y^-1 x is trivial or starts or ends in a letter a^±1
    for (x, y) in p.witness.iter().tuple_combinations() {
        let Element::Word(w) = f2.multiply(&f2.invert(y).unwrap(), x).unwrap() else { unreachable!() };
        let ends = |l: &u8| *l == a_gen || *l == a_inv;
        if w.is_empty() || ends(&w[0]) || ends(w.last().unwrap()) {
            return Err(format!("translates by {x:?} and {y:?} overlap"));
        }
    }
    let powers = |l: u8| Window::new((0..6).map(|i| Element::Word(vec![l; i])).collect()).unwrap();
    let mut bounds = Vec::new();
    for (cell, window) in [(&a, powers(b_inv)), (&b, powers(a_inv))] {
        let r = is12(&f2, cell, Some(&window)).unwrap();
        let v = upper(&r.value);
        // each point of the window lies in at most one right translate of the cell
        let mu = Measure::uniform(window.elements().to_vec()).unwrap();
        for x in f2.ball(7).iter() {
            let hits = mu.iter().filter(|(y, _)| f2.contains(cell, &f2.multiply(y, x).unwrap()).unwrap()).count();
            if hits > 1 {
                return Err(format!("{x:?} puts {hits} window points in the cell"));
            }
        }
        if v > rat(1, 6) {
            return Err(format!("is12 upper bound {v} exceeds 1/6"));
        }
        bounds.push(v);
    }
    let e = Subset::explicit([f2.identity()]);
    let union = Subset::union(a.clone(), Subset::union(b.clone(), e.clone()));
    for w in f2.ball(5).iter() {
        if !f2.contains(&union, w).unwrap() {
            return Err(format!("{w:?} is missing from A ∪ B ∪ {{e}}"));
        }
    }
    let whole = exact(is12(&f2, &Subset::full(), Some(&powers(b_gen))));
    let pieces = &bounds[0] + &bounds[1] + upper(&is12(&f2, &e, Some(&powers(a_gen))).unwrap().value);
    if pieces >= whole {
        return Err(format!("cells sum to {pieces}, the group has {whole}"));
    }
    let elapsed = within(t, Duration::from_secs(60))?;
    Ok(format!(
        "{} disjoint translates in the radius-6 ball; is12 bounds {} and {} sum with {{e}} to {pieces} < 1 in {elapsed:.1?}",
        p.witness.len(),
        bounds[0],
        bounds[1]
    ))
}

fn hierarchy() -> Outcome {
    let budget = ExtremalBudget::default();
    let patterns: Vec<ExtremalPattern> = ExtremalPattern::all(1).into_iter().chain(ExtremalPattern::all(2)).collect();
    let si = ExtremalPattern::parse("si", "12").unwrap();
    let mut count = 0;
    for n in [2usize, 3] {
        let g = cyclic(n);
        for m in 0..1u64 << n {
            let a = subset(m, n);
            let i1 = if m == full(n) { int(1) } else { zero() };
            let s1 = if m != 0 { int(1) } else { zero() };
            let refs = [i1, s1, share(m, n), exact(eval_extremal(&si, &g, &a, budget))];
            for p in &patterns {
                let v = exact(eval_extremal(p, &g, &a, budget));
                if !refs.contains(&v) {
                    return Err(format!("Cyclic({n}) mask {m:b}: {p} = {v} is none of {refs:?}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} evaluations of {} patterns land on i_1, s_1, is_12 or si_12", patterns.len()))
}

fn t92() -> Outcome {
    let g = cyclic(6);
    let fg = table(&g);
    let budget = ExtremalBudget::default();
    for m in 1..1u64 << 6 {
        let a = subset(m, 6);
        let diff = difference(fg, m);
        let lo = sis123(&g, &a, budget.kmax, budget.grid_denominator).unwrap().value.lo().cloned().unwrap();
        if lo == zero() {
            return Err(format!("mask {m:b}: sis123 lower end is zero"));
        }
        let bound = (lo.recip()).ceil().to_integer();
        let c = cov(fg, diff);
        if num_bigint::BigInt::from(c) > bound {
            return Err(format!("mask {m:b}: cov(AA^-1) = {c} > {bound}"));
        }
        let r = t92_check(&g, &a, &budget).unwrap();
        let sq = product(fg, diff, diff);
        let w = &r.square_cover.witness;
        let covered = w.iter().fold(0u64, |acc, x| acc | left_translate(fg, x.as_index().unwrap(), sq));
        if w.is_empty() || covered != full(6) || !r.passed() {
            return Err(format!("mask {m:b}: square cover witness {w:?} does not cover"));
        }
    }
    Ok("63 non-empty subsets, cov(AA^-1) <= ceil(1/s) and AA^-1AA^-1 covered by explicit translates".into())
}

fn folner() -> Outcome {
    let mut lines = Vec::new();
    for d in 1..=2usize {
        let f: Vec<Vec<i64>> = (0..d).map(|_| -1..=1i64).multi_cartesian_product().collect();
        for eps in [rat(1, 5), rat(1, 10)] {
            let b = folner_set(d, &f, &eps).unwrap();
            let l = b.side as i64;
            let boundary = (l + 2).pow(d as u32) - l.pow(d as u32);
            let defect = rat(boundary, l.pow(d as u32));
            let prev = l - 1;
            let minimal = prev == 0 || rat((prev + 2).pow(d as u32) - prev.pow(d as u32), prev.pow(d as u32)) >= eps;
            if b.boundary as i64 != boundary || b.defect != defect || defect >= eps || !minimal {
                return Err(format!("d={d}, eps={eps}: {b:?}"));
            }
            lines.push(format!("d={d} eps={eps} side {l}"));
        }
    }
    let z = Group::free_abelian(1).unwrap();
    let one = Element::Vector(vec![1]);
    for big_n in [10i64, 50] {
        let support: Vec<Element> = (-big_n..=big_n).map(|x| Element::Vector(vec![x])).collect();
        let mu = Measure::uniform(support.clone()).unwrap();
        let sets: Vec<(Subset, Box<dyn Fn(i64) -> bool>)> = vec![
            (Subset::explicit(support.clone()), Box::new(move |x: i64| x.abs() <= big_n)),
            (Subset::residues(vec![2], vec![vec![0]]).unwrap(), Box::new(|x: i64| x.rem_euclid(2) == 0)),
            (Subset::explicit((0..=big_n).map(|x| Element::Vector(vec![x]))), Box::new(move |x: i64| (0..=big_n).contains(&x))),
        ];
        for (a, member) in sets {
            let d = invariance_defect(&z, &mu, &a, std::slice::from_ref(&one)).unwrap();
            let here = (-big_n..=big_n).filter(|&x| member(x)).count() as i64;
            let moved = (-big_n..=big_n).filter(|&x| member(x - 1)).count() as i64;
            let oracle = rat((here - moved).abs(), 2 * big_n + 1);
            if d != oracle || d > rat(2, 2 * big_n + 1) {
                return Err(format!("N={big_n}: defect {d}, counted {oracle}"));
            }
        }
    }
    Ok(format!("{}; shift defects of uniform(-N..N) within 2/(2N+1) for N = 10, 50", lines.join(", ")))
}

fn golden_corpus() -> std::result::Result<usize, String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut files: Vec<_> = fs::read_dir(&dir).map_err(|e| e.to_string())?.map(|e| e.unwrap().path()).collect();
    files.sort();
    let mut count = 0;
    for path in files {
        let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let mut g = None;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            if let Some(gt) = line.strip_prefix("group ") {
                let spec = parse_group(gt).map_err(|e| e.to_string())?;
                if print_group(&spec) != gt {
                    return Err(format!("{gt} prints as {}", print_group(&spec)));
                }
                g = Some(Group::new(spec).unwrap());
                continue;
            }
            let g = g.as_ref().ok_or("set before group")?;
            let (input, expected) = line.split_once(" => ").ok_or(format!("malformed line {line}"))?;
            let ast = parse_set(input, g).map_err(|e| format!("{input}: {e}"))?;
            let printed = canonical_print(g, &ast);
            let again = parse_set(&printed, g).map_err(|e| format!("{printed}: {e}"))?;
            if printed != expected || again != ast || canonical_print(g, &again) != printed {
                return Err(format!("{input} printed {printed}, expected {expected}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

fn determinism() -> Outcome {
    let runs: Vec<Vec<&str>> = vec![
        vec!["check", "kelley-duality", "--group", "Zmod(5)"],
        vec!["check", "finite-collapse", "--group", "Sym(3)"],
        vec!["check", "pack-cov", "--group", "Zmod(4)"],
        vec!["check", "ergo-sum", "--group", "Zmod(4)"],
        vec!["check", "partition", "--group", "Zmod(5)"],
        vec!["check", "chain", "--group", "Zmod(5)"],
        vec!["check", "hierarchy", "--group", "Zmod(3)"],
        vec!["check", "t92", "--group", "Zmod(6)"],
        vec!["check", "folner"],
        vec!["eval", "--group", "Zmod(6)", "--set", "{0,1,3}", "--quantity", "hat-is12", "--exact-limit", "4", "--samples", "32", "--seed", "7"],
    ];
    let mut seen = BTreeSet::new();
    for args in &runs {
        let go = |threads: &str| cli::run(["extremal"].iter().chain(args.iter()).chain(&["--threads", threads]).copied());
        let (first, second, single) = (go("4"), go("4"), go("1"));
        if first.code != 0 || first != second {
            return Err(format!("{} differs between runs (exit {})", args.join(" "), first.code));
        }
        let results = |o: &cli::Outcome| serde_json::from_str::<serde_json::Value>(&o.stdout).unwrap()["results"].clone();
        if results(&first) != results(&single) {
            return Err(format!("{} depends on the thread count", args.join(" ")));
        }
        seen.insert(args[1]);
    }
    let lines = golden_corpus()?;
    Ok(format!("{} commands byte-identical across runs and thread counts; {lines} golden lines round-trip", seen.len()))
}

/// Criteria that cannot hold as stated; they are still run and shown red.
const KNOWN_RED: &[usize] = &[6];

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("kelley duality", kelley_duality),
        ("finite collapse", finite_collapse),
        ("periodic quotient", periodic_quotient),
        ("inequality suite", inequality_suite),
        ("ergo-sum", ergo_sum),
        ("partition covers", protasov_partitions),
        ("chain", chain),
        ("free-group witnesses", free_group_witnesses),
        ("hierarchy collapse", hierarchy),
        ("difference-set covers", t92),
        ("folner boxes", folner),
        ("determinism", determinism),
    ];
    let mut unexpected = Vec::new();
    let mut red = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let k = i + 1;
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {k:>2} {name}: PASS ({detail})"),
            Err(detail) => {
                println!("criterion {k:>2} {name}: FAIL ({detail})");
                red.push(k);
                if !KNOWN_RED.contains(&k) {
                    unexpected.push(k);
                }
            }
        }
    }
    println!("acceptance: {} of 12 pass; red {red:?}; unexpected {unexpected:?}", 12 - red.len());
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
