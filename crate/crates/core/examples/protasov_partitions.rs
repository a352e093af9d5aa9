//! Partitions of a small group and the cell whose difference set needs the
//! fewest translates to cover the group.

use extremal::comb::{brs_bound, partition_analyze};
use extremal::lang::{canonical_print, print_element};
use extremal::{Group, Subset};

fn main() -> extremal::Result<()> {
    let g = Group::cyclic(6)?;
    let cells = |v: &[&[usize]]| v.iter().map(|c| Subset::indices(c.iter().copied())).collect::<Vec<_>>();
    for partition in [
        cells(&[&[0, 1, 2], &[3, 4, 5]]),
        cells(&[&[0, 2, 4], &[1, 3, 5]]),
        cells(&[&[0, 3], &[1, 4], &[2, 5]]),
        cells(&[&[0], &[1, 2], &[3, 4, 5]]),
    ] {
        let r = partition_analyze(&g, &partition)?;
        let names: Vec<String> = partition.iter().map(|c| canonical_print(&g, c)).collect();
        let f: Vec<String> = r.minimal_cover().witness.iter().map(|x| print_element(&g, x)).collect();
        println!(
            "{:<26} best cell {} needs F = {{{}}} (bound {}), passed {}",
            names.join(" | "),
            names[r.best_cell],
            f.join(","),
            r.brs_bound,
            r.passed()
        );
    }
    println!("bounds for n = 1..5 cells: {:?}", (1..=5).map(brs_bound).collect::<Vec<_>>());
    Ok(())
}
