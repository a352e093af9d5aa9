//! Every short extremal pattern collapses onto a handful of values.

use std::collections::BTreeMap;

use extremal::dens::{eval_extremal, ExtremalBudget, ExtremalPattern};
use extremal::lang::canonical_print;
use extremal::rational::to_pq;
use extremal::{Group, Subset};

fn main() -> extremal::Result<()> {
    let g = Group::cyclic(3)?;
    let budget = ExtremalBudget::default();
    let patterns: Vec<ExtremalPattern> = (1..=3).flat_map(ExtremalPattern::all).collect();
    println!("{} patterns of length at most 3 on Cyclic(3)", patterns.len());
    for a in [Subset::indices([0]), Subset::indices([0, 1]), Subset::indices([0, 1, 2])] {
        let mut by_value: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for p in &patterns {
            let r = eval_extremal(p, &g, &a, budget)?;
            let v = match (r.value.exact(), r.value.lo(), r.value.hi()) {
                (Some(x), _, _) => to_pq(x),
                (None, Some(lo), Some(hi)) => format!("[{}, {}]", to_pq(lo), to_pq(hi)),
                _ => r.value.kind().to_string(),
            };
            by_value.entry(v).or_default().push(p.to_string());
        }
        println!("A = {}", canonical_print(&g, &a));
        for (v, ps) in by_value {
            let short: Vec<&String> = ps.iter().filter(|p| p.len() <= 5).take(8).collect();
            println!("  {v:<6} {:>3} patterns, e.g. {}", ps.len(), short.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(" "));
        }
    }
    Ok(())
}
