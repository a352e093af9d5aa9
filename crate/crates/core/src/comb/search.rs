//! Branch-and-bound kernels: maximum independent set and minimum set cover.

use fixedbitset::FixedBitSet;

const NODE_BUDGET: usize = 5_000_000;

pub(crate) struct Found {
    pub members: Vec<usize>,
    pub proven: bool,
}

/// Largest independent set of a graph on at most 64 vertices. `ceiling`
/// stops the search once reached.
pub(crate) fn max_independent(adj: &[u64], ceiling: usize) -> Found {
    assert!(adj.len() <= 64);
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut st = Mis { adj, ceiling, best: Vec::new(), cur: Vec::new(), nodes: 0, out_of_budget: false };
    st.go(all);
    Found { members: st.best, proven: !st.out_of_budget }
}

struct Mis<'a> {
    adj: &'a [u64],
    ceiling: usize,
    best: Vec<usize>,
    cur: Vec<usize>,
    nodes: usize,
    out_of_budget: bool,
}

impl Mis<'_> {
    fn go(&mut self, cand: u64) {
        if self.out_of_budget || self.best.len() >= self.ceiling {
            return;
        }
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            self.out_of_budget = true;
            return;
        }
        if cand == 0 {
            if self.cur.len() > self.best.len() {
                self.best = self.cur.clone();
            }
            return;
        }
        if self.cur.len() + cand.count_ones() as usize <= self.best.len() {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        self.cur.push(v);
        self.go(cand & !self.adj[v] & !bit);
        self.cur.pop();
        self.go(cand & !bit);
    }
}

/// Greedy cover: repeatedly takes the first set covering the most new points.
pub(crate) fn greedy_cover(n: usize, sets: &[FixedBitSet]) -> Option<Vec<usize>> {
    let mut covered = FixedBitSet::with_capacity(n);
    let mut chosen = Vec::new();
    while covered.count_ones(..) < n {
        let (i, gain) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.difference(&covered).count()))
            .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if gain == 0 {
            return None;
        }
        covered.union_with(&sets[i]);
        chosen.push(i);
    }
    Some(chosen)
}

/// Minimum cover of `[0, n)` by `sets`, searched exactly when the trivial
/// lower bound is at most `limit`.
pub(crate) fn min_cover(n: usize, sets: &[FixedBitSet], limit: usize) -> Option<Found> {
    let greedy = greedy_cover(n, sets)?;
    let widest = sets.iter().map(|s| s.count_ones(..)).max().unwrap_or(0);
    let floor = n.div_ceil(widest.max(1));
    if greedy.len() <= floor {
        return Some(Found { members: greedy, proven: true });
    }
    if floor > limit {
        return Some(Found { members: greedy, proven: false });
    }
    let mut st = Cover { sets, n, widest, best: greedy, nodes: 0, out_of_budget: false };
    let mut chosen = Vec::new();
    st.go(&FixedBitSet::with_capacity(n), &mut chosen);
    Some(Found { members: st.best, proven: !st.out_of_budget })
}

struct Cover<'a> {
    sets: &'a [FixedBitSet],
    n: usize,
    widest: usize,
    best: Vec<usize>,
    nodes: usize,
    out_of_budget: bool,
}

impl Cover<'_> {
    fn go(&mut self, covered: &FixedBitSet, chosen: &mut Vec<usize>) {
        if self.out_of_budget {
            return;
        }
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            self.out_of_budget = true;
            return;
        }
        let have = covered.count_ones(..);
        if have == self.n {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + (self.n - have).div_ceil(self.widest) >= self.best.len() {
            return;
        }
        let u = covered.zeroes().next().expect("uncovered point");
        for i in 0..self.sets.len() {
            if self.sets[i].contains(u) {
                let mut next = covered.clone();
                next.union_with(&self.sets[i]);
                chosen.push(i);
                self.go(&next, chosen);
                chosen.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(n: usize, xs: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &x in xs {
            b.insert(x);
        }
        b
    }

    #[test]
    fn cycle_independent_sets() {
        let adj: Vec<u64> = (0..5).map(|i| (1u64 << ((i + 1) % 5)) | (1u64 << ((i + 4) % 5))).collect();
        let f = max_independent(&adj, usize::MAX);
        assert!(f.proven);
        assert_eq!(f.members, vec![0, 2]);
    }

    #[test]
    fn cover_beats_greedy() {
        // greedy takes the middle block first and then needs two more
        let sets = vec![bits(6, &[0, 1, 2]), bits(6, &[3, 4, 5]), bits(6, &[1, 2, 3, 4]), bits(6, &[0]), bits(6, &[5])];
        assert_eq!(greedy_cover(6, &sets).unwrap().len(), 3);
        let f = min_cover(6, &sets, 20).unwrap();
        assert!(f.proven);
        assert_eq!(f.members, vec![0, 1]);
        assert!(min_cover(3, &[bits(3, &[0])], 20).is_none());
    }
}
