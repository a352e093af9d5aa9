//! Brute-force oracles over small finite groups, written against the
//! multiplication table only.

#![allow(dead_code)]

use extremal::grp::FiniteGroup;
use extremal::rational::rat;
use extremal::{Group, Rational};

pub fn cyclic(n: usize) -> Group {
    Group::cyclic(n).unwrap()
}

pub fn table(g: &Group) -> &FiniteGroup {
    g.as_finite().expect("finite group")
}

pub fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Bitmask of the left translate `xA`.
pub fn left_translate(fg: &FiniteGroup, x: usize, a: u64) -> u64 {
    members(a, fg.order()).into_iter().fold(0, |m, y| m | 1 << fg.mul(x, y))
}

/// `{x y : x in A, y in B}`.
pub fn product(fg: &FiniteGroup, a: u64, b: u64) -> u64 {
    let n = fg.order();
    let mut out = 0;
    for x in members(a, n) {
        for y in members(b, n) {
            out |= 1 << fg.mul(x, y);
        }
    }
    out
}

pub fn inverse(fg: &FiniteGroup, a: u64) -> u64 {
    members(a, fg.order()).into_iter().fold(0, |m, x| m | 1 << fg.inv(x))
}

pub fn difference(fg: &FiniteGroup, a: u64) -> u64 {
    product(fg, a, inverse(fg, a))
}

pub fn full(n: usize) -> u64 {
    (1u64 << n) - 1
}

pub fn share(a: u64, n: usize) -> Rational {
    rat(a.count_ones() as i64, n as i64)
}

/// Largest number of pairwise disjoint left translates of a non-empty `A`.
pub fn pack(fg: &FiniteGroup, a: u64) -> usize {
    let n = fg.order();
    let tr: Vec<u64> = (0..n).map(|x| left_translate(fg, x, a)).collect();
    let mut best = 0;
    for pos in 0..1u64 << n {
        let k = pos.count_ones() as usize;
        if k <= best {
            continue;
        }
        let mut seen = 0u64;
        let mut ok = true;
        for x in members(pos, n) {
            if seen & tr[x] != 0 {
                ok = false;
                break;
            }
            seen |= tr[x];
        }
        if ok {
            best = k;
        }
    }
    best
}

/// Fewest left translates of a non-empty `A` covering the group.
pub fn cov(fg: &FiniteGroup, a: u64) -> usize {
    let n = fg.order();
    let tr: Vec<u64> = (0..n).map(|x| left_translate(fg, x, a)).collect();
    (0..1u64 << n)
        .filter(|pos| members(*pos, n).into_iter().fold(0, |m, x| m | tr[x]) == full(n))
        .map(|pos| pos.count_ones() as usize)
        .min()
        .expect("the whole group covers")
}
