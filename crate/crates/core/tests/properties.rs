mod common;

use common::*;
use extremal::comb::{covering_number, packing_index, CovValue};
use extremal::dens::{is12, iss213, kelley_bruteforce, kelley_lp, translate_family, us12};
use extremal::grp::{letter, GroupSpec};
use extremal::lang::{canonical_print, parse_set};
use extremal::meas::{convolve, Measure};
use extremal::ratlp::{game_value, GameMatrix};
use extremal::rational::{int, rat, zero};
use extremal::{Element, Error, Group, Rational, Subset, Window};
use itertools::Itertools;
use proptest::prelude::*;

fn small_groups() -> Vec<Group> {
    [
        GroupSpec::Cyclic(1),
        GroupSpec::Cyclic(5),
        GroupSpec::Cyclic(6),
        GroupSpec::Dihedral(4),
        GroupSpec::Symmetric(3),
        GroupSpec::DirectProduct(vec![GroupSpec::Cyclic(2), GroupSpec::Cyclic(4)]),
        GroupSpec::DirectProduct(vec![GroupSpec::Cyclic(2), GroupSpec::Symmetric(3)]),
    ]
    .into_iter()
    .map(|s| Group::new(s).unwrap())
    .collect()
}

/// A small finite group and a random subset mask.
fn group_and_mask() -> impl Strategy<Value = (Group, u64)> {
    (0..small_groups().len(), any::<u64>()).prop_map(|(i, m)| {
        let g = small_groups().swap_remove(i);
        let n = g.order().unwrap();
        (g, m & full(n))
    })
}

fn exact(r: extremal::Result<extremal::dens::DensityResult>) -> Rational {
    r.unwrap().value.exact().cloned().expect("exact on finite groups")
}

fn word() -> impl Strategy<Value = Element> {
    proptest::collection::vec(0u8..4, 0..7).prop_map(|ls| {
        let f2 = Group::free(2).unwrap();
        ls.into_iter()
            .fold(f2.identity(), |w, l| f2.multiply(&w, &Element::Word(vec![l])).unwrap())
    })
}

fn vector() -> impl Strategy<Value = Element> {
    proptest::collection::vec(-20i64..20, 2).prop_map(Element::Vector)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finite_axioms((g, _) in group_and_mask(), a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let n = g.order().unwrap();
        let (a, b, c) = (Element::Index(a % n), Element::Index(b % n), Element::Index(c % n));
        let m = |x: &Element, y: &Element| g.multiply(x, y).unwrap();
        prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
        prop_assert_eq!(m(&g.identity(), &a), a.clone());
        prop_assert_eq!(m(&a, &g.identity()), a.clone());
        prop_assert_eq!(m(&a, &g.invert(&a).unwrap()), g.identity());
    }

    #[test]
    fn free_axioms(a in word(), b in word(), c in word()) {
        let g = Group::free(2).unwrap();
        let m = |x: &Element, y: &Element| g.multiply(x, y).unwrap();
        prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
        prop_assert_eq!(m(&a, &g.invert(&a).unwrap()), g.identity());
        let Element::Word(w) = m(&a, &b) else { unreachable!() };
        prop_assert!(w.windows(2).all(|p| p[0] ^ 1 != p[1]));
    }

    #[test]
    fn lattice_axioms(a in vector(), b in vector(), c in vector()) {
        let g = Group::free_abelian(2).unwrap();
        let m = |x: &Element, y: &Element| g.multiply(x, y).unwrap();
        prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
        prop_assert_eq!(m(&a, &b), m(&b, &a));
        prop_assert_eq!(m(&a, &g.invert(&a).unwrap()), g.identity());
    }

    #[test]
    fn quotient_is_a_homomorphism(a in vector(), b in vector(), m1 in 1i64..5, m2 in 1i64..5) {
        let g = Group::free_abelian(2).unwrap();
        let q = g.quotient_map(&[m1, m2]).unwrap();
        let t = q.target();
        let lhs = q.project(&g.multiply(&a, &b).unwrap()).unwrap();
        let rhs = t.multiply(&q.project(&a).unwrap(), &q.project(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(q.project(&q.lift(&q.project(&a).unwrap()).unwrap()).unwrap(), q.project(&a).unwrap());
    }

    #[test]
    fn pushforward_preserves_residue_mass(
        weights in proptest::collection::vec(1i64..5, 1..6),
        offset in -10i64..10,
        classes in proptest::collection::btree_set(0i64..4, 1..4),
    ) {
        let g = Group::free_abelian(1).unwrap();
        let total: i64 = weights.iter().sum();
        let mu = Measure::from_weights(
            weights.iter().enumerate().map(|(i, w)| (Element::Vector(vec![offset + 3 * i as i64]), rat(*w, total))),
        ).unwrap();
        let a = Subset::residues(vec![4], classes.into_iter().map(|c| vec![c]).collect()).unwrap();
        let q = g.quotient_map(&[4]).unwrap();
        let image = mu.push_forward(|x| q.project(x)).unwrap();
        prop_assert_eq!(image.total(), int(1));
        let projected = q.project_subset(&g, &a).unwrap();
        prop_assert_eq!(image.eval(q.target(), &projected).unwrap(), mu.eval(&g, &a).unwrap());
    }

    #[test]
    fn convolution_is_associative(
        (g, _) in group_and_mask(),
        ws in proptest::collection::vec(proptest::collection::vec(0i64..4, 1..5), 3),
    ) {
        let n = g.order().unwrap();
        let measure = |w: &Vec<i64>| {
            let total: i64 = w.iter().sum::<i64>() + 1;
            let mut pairs: Vec<(Element, Rational)> =
                w.iter().enumerate().map(|(i, x)| (Element::Index(i % n), rat(*x, total))).collect();
            pairs.push((Element::Index((w.len() * 7) % n), rat(1, total)));
            let mut merged = std::collections::BTreeMap::new();
            for (x, p) in pairs {
                *merged.entry(x).or_insert_with(zero) += p;
            }
            Measure::from_weights(merged).unwrap()
        };
        let (mu, nu, eta) = (measure(&ws[0]), measure(&ws[1]), measure(&ws[2]));
        let left = convolve(&g, &convolve(&g, &mu, &nu).unwrap(), &eta).unwrap();
        let right = convolve(&g, &mu, &convolve(&g, &nu, &eta).unwrap()).unwrap();
        prop_assert_eq!(left.total(), int(1));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn game_value_is_stable(
        entries in proptest::collection::vec(-3i64..4, 6),
        rows in 2usize..4,
        perm_seed in any::<u64>(),
    ) {
        let cols = 6 / rows;
        let m: Vec<Vec<Rational>> = (0..rows).map(|i| (0..cols).map(|j| int(entries[i * cols + j])).collect()).collect();
        let base = game_value(&GameMatrix::from_rows(m.clone()).unwrap());
        prop_assert!(base.verify());
        // permuting rows and columns
        let rp: Vec<usize> = (0..rows).rev().collect();
        let cp: Vec<usize> = (0..cols).map(|j| (j + perm_seed as usize) % cols).collect();
        let permuted: Vec<Vec<Rational>> = rp.iter().map(|&i| cp.iter().map(|&j| m[i][j].clone()).collect()).collect();
        prop_assert_eq!(&game_value(&GameMatrix::from_rows(permuted).unwrap()).value, &base.value);
        // a column dominated by column 0 (smaller everywhere) never helps the maximizer
        let dominated: Vec<Vec<Rational>> = m.iter().map(|r| {
            let mut r = r.clone();
            r.push(&r[0] - int(1));
            r
        }).collect();
        prop_assert_eq!(&game_value(&GameMatrix::from_rows(dominated).unwrap()).value, &base.value);
        // grid strategies with denominator 6 bracket the value
        let grid = |k: usize| (0..=6usize).combinations_with_replacement(k - 1).map(move |cuts| {
            let mut p = Vec::with_capacity(k);
            let mut last = 0;
            for c in cuts {
                p.push(rat((c - last) as i64, 6));
                last = c;
            }
            p.push(rat((6 - last) as i64, 6));
            p
        });
        let payoff = |p: &[Rational], q: &[Rational]| {
            let mut s = zero();
            for i in 0..rows {
                for j in 0..cols {
                    s += &p[i] * &q[j] * &m[i][j];
                }
            }
            s
        };
        let pure = |k: usize, i: usize| (0..k).map(|j| if i == j { int(1) } else { zero() }).collect::<Vec<_>>();
        let upper = grid(rows).map(|p| (0..cols).map(|j| payoff(&p, &pure(cols, j))).max().unwrap()).min().unwrap();
        let lower = grid(cols).map(|q| (0..rows).map(|i| payoff(&pure(rows, i), &q)).min().unwrap()).max().unwrap();
        prop_assert!(lower <= base.value && base.value <= upper);
    }

    #[test]
    fn densities_are_monotone_and_invariant((g, a) in group_and_mask(), b in any::<u64>(), x in 0usize..64) {
        let n = g.order().unwrap();
        let b = (b & full(n)) | a;
        let (sa, sb) = (Subset::indices(members(a, n)), Subset::indices(members(b, n)));
        let (ia, ib) = (exact(is12(&g, &sa, None)), exact(is12(&g, &sb, None)));
        prop_assert!(ia <= ib);
        prop_assert!(exact(iss213(&g, &sa, None)) <= exact(iss213(&g, &sb, None)));
        prop_assert!(exact(us12(&g, &sa, n, None)) <= exact(us12(&g, &sb, n, None)));
        prop_assert_eq!(&ia, &share(a, n));
        let shifted = Subset::translate(Element::Index(x % n), sa.clone());
        prop_assert_eq!(exact(is12(&g, &shifted, None)), ia);
    }

    #[test]
    fn kelley_bruteforce_decreases_to_lp((g, a) in group_and_mask()) {
        let n = g.order().unwrap();
        prop_assume!(n <= 8);
        let fam = translate_family(&g, &Subset::indices(members(a, n))).unwrap();
        let lp = exact(kelley_lp(&fam));
        let vals: Vec<Rational> = (1..=n).map(|k| kelley_bruteforce(&fam, k).unwrap()).collect();
        prop_assert!(vals.windows(2).all(|w| w[1] <= w[0]));
        prop_assert!(vals.iter().all(|v| *v >= lp));
        prop_assert_eq!(vals.last().unwrap(), &lp);
    }

    #[test]
    fn packing_and_covering((g, a) in group_and_mask(), b in any::<u64>()) {
        let n = g.order().unwrap();
        prop_assume!(a != 0 && n <= 12);
        let fg = table(&g);
        let sa = Subset::indices(members(a, n));
        let p = packing_index(&g, &sa, n, None).unwrap();
        let k = p.value.exact().unwrap();
        prop_assert_eq!(k, pack(fg, a));
        prop_assert!(rat(k as i64, 1) * exact(is12(&g, &sa, None)) <= int(1));
        let translates: Vec<u64> = p.witness.iter().map(|x| left_translate(fg, x.as_index().unwrap(), a)).collect();
        prop_assert!(translates.iter().tuple_combinations().all(|(s, t)| s & t == 0));
        let c = covering_number(&g, &Subset::difference_set(sa.clone()), n).unwrap();
        prop_assert!(c.value.exact().unwrap() <= k);
        prop_assert_eq!(c.value.exact().unwrap(), cov(fg, difference(fg, a)));
        // F A B = G for some finite F once both sets are non-empty
        let b = (b & full(n)).max(1);
        let ab = Subset::product(sa, Subset::indices(members(b, n)));
        let cover = covering_number(&g, &ab, n).unwrap();
        let CovValue::Exact(_) = cover.value else { panic!("finite groups have exact covers") };
        let covered = cover.witness.iter().fold(0, |m, x| m | left_translate(fg, x.as_index().unwrap(), product(fg, a, b)));
        prop_assert_eq!(covered, full(n));
    }

    #[test]
    fn balls_are_nested(r in 0usize..4) {
        for g in [Group::free(2).unwrap(), Group::free_abelian(2).unwrap()] {
            let small = g.ball(r);
            let big = g.ball(r + 1);
            prop_assert_eq!(small.elements(), &big.elements()[..small.len()]);
        }
    }

    #[test]
    fn realize_restricts(r in 0usize..3, m in 2i64..5) {
        let z2 = Group::free_abelian(2).unwrap();
        let set = Subset::union(
            Subset::residues(vec![m, 2], vec![vec![0, 0], vec![1, 1]]).unwrap(),
            Subset::explicit([Element::Vector(vec![3, -1])]),
        );
        let (small, big) = (z2.ball(r), z2.ball(r + 2));
        let sb = z2.realize(&set, &small).unwrap();
        let bb = z2.realize(&set, &big).unwrap();
        for (i, x) in small.iter().enumerate() {
            prop_assert_eq!(sb.contains(i), bb.contains(big.position(x).unwrap()));
        }
    }
}

/// Random canonical set expressions over one group.
fn expr(leaf: BoxedStrategy<Subset>, elem: BoxedStrategy<Element>) -> impl Strategy<Value = Subset> {
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Subset::union(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Subset::intersection(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Subset::product(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Subset::wreath(a, b)),
            inner.clone().prop_map(Subset::complement),
            inner.clone().prop_map(Subset::inverse),
            (elem.clone(), inner.clone()).prop_map(|(g, a)| Subset::translate(g, a)),
            (inner.clone(), elem.clone()).prop_map(|(a, g)| Subset::conjugate(a, g)),
        ]
    })
}

fn roundtrips(g: &Group, s: &Subset) -> std::result::Result<(), TestCaseError> {
    let text = canonical_print(g, s);
    let back = parse_set(&text, g).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
    prop_assert_eq!(&back, s, "{}", text);
    prop_assert_eq!(canonical_print(g, &back), text);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dsl_roundtrip_cyclic(s in expr(
        proptest::collection::vec(0usize..6, 0..4).prop_map(Subset::indices).boxed(),
        (0usize..6).prop_map(Element::Index).boxed(),
    )) {
        roundtrips(&cyclic(6), &s)?;
    }

    #[test]
    fn dsl_roundtrip_free(s in expr(
        prop_oneof![
            proptest::collection::vec(word(), 0..3).prop_map(Subset::explicit),
            proptest::collection::btree_set(0u8..4, 1..4).prop_map(|ls| Subset::prefix(ls.into_iter().map(|l| letter(l as usize / 2, l % 2 == 1)))),
        ].boxed(),
        word().boxed(),
    )) {
        roundtrips(&Group::free(2).unwrap(), &s)?;
    }

    #[test]
    fn dsl_roundtrip_lattice(s in expr(
        prop_oneof![
            proptest::collection::vec(vector(), 0..3).prop_map(Subset::explicit),
            (1i64..4, 1i64..4, proptest::collection::vec((0i64..4, 0i64..4), 1..3)).prop_map(|(a, b, cs)| {
                Subset::residues(vec![a, b], cs.into_iter().map(|(x, y)| vec![x % a, y % b]).collect()).unwrap()
            }),
        ].boxed(),
        vector().boxed(),
    )) {
        roundtrips(&Group::free_abelian(2).unwrap(), &s)?;
    }

    #[test]
    fn parse_errors_have_positions(text in "[{}()0-9a-z,|&*! \n;]{0,20}") {
        let g = cyclic(6);
        if let Err(e) = parse_set(&text, &g) {
            match e {
                Error::Parse(p) => {
                    prop_assert!(p.line >= 1 && p.column >= 1);
                    prop_assert!(!p.expected.is_empty());
                }
                other => prop_assert!(false, "non-parse error {:?} for {:?}", other, text),
            }
        }
    }
}

#[test]
fn windows_reject_duplicates() {
    let x = Element::Index(0);
    assert!(Window::new(vec![x.clone(), x]).is_err());
}
