//! Smallest cubes whose boundary is an eps-fraction of their volume.

use extremal::comb::folner_set;
use extremal::rational::{rat, to_pq};
use itertools::Itertools;

fn main() -> extremal::Result<()> {
    for d in 1..=3usize {
        let f: Vec<Vec<i64>> = (0..d).map(|_| -1..=1i64).multi_cartesian_product().collect();
        for eps in [rat(1, 2), rat(1, 5), rat(1, 10)] {
            let b = folner_set(d, &f, &eps)?;
            println!(
                "d = {d}, eps = {:<5} side {:>3}, boundary {:>6} / volume {:>7} = {}",
                to_pq(&eps),
                b.side,
                b.boundary,
                b.volume,
                to_pq(&b.defect)
            );
        }
    }
    Ok(())
}
