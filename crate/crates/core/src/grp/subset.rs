//! Symbolic subsets of a group and their evaluation.

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use super::{inverse_letter, Backend, Element, Group, Letter, Window};
use crate::error::{Error, Result};

/// A set of group elements. Boolean variants compose other subsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Subset {
    /// Finite list of elements, sorted and without duplicates.
    Explicit(Vec<Element>),
    /// Union of residue classes of `Z^d` modulo `modulus`; classes lie in `[0, m)`.
    Residues { modulus: Vec<i64>, classes: Vec<Vec<i64>> },
    /// Free-group words whose first letter is one of the listed letters.
    Prefix(Vec<Letter>),
    Union(Box<Subset>, Box<Subset>),
    Intersection(Box<Subset>, Box<Subset>),
    Complement(Box<Subset>),
    /// Product set `AB`.
    Product(Box<Subset>, Box<Subset>),
    /// `S^{-1}`.
    Inverse(Box<Subset>),
    /// Left translate `gS`.
    Translate(Element, Box<Subset>),
    /// Conjugate `g^{-1} S g`.
    Conjugate(Box<Subset>, Element),
    /// `S^{wr E}`: union of `x^{-1} S x` over `x` in `E`.
    Wreath(Box<Subset>, Box<Subset>),
}

impl Subset {
    pub fn empty() -> Subset {
        Subset::Explicit(Vec::new())
    }

    pub fn full() -> Subset {
        Subset::Complement(Box::new(Subset::empty()))
    }

    pub fn explicit(elements: impl IntoIterator<Item = Element>) -> Subset {
        let mut v: Vec<Element> = elements.into_iter().collect();
        v.sort();
        v.dedup();
        Subset::Explicit(v)
    }

    pub fn indices(indices: impl IntoIterator<Item = usize>) -> Subset {
        Subset::explicit(indices.into_iter().map(Element::Index))
    }

    pub fn from_bits(bits: &FixedBitSet) -> Subset {
        Subset::indices(bits.ones())
    }

    pub fn residues(modulus: Vec<i64>, classes: Vec<Vec<i64>>) -> Result<Subset> {
        if modulus.is_empty() || modulus.iter().any(|&m| m < 1) {
            return Err(Error::InvalidSubset(format!("bad modulus {modulus:?}")));
        }
        let mut cls = Vec::with_capacity(classes.len());
        for c in classes {
            if c.len() != modulus.len() {
                return Err(Error::InvalidSubset(format!(
                    "residue class {c:?} does not match modulus {modulus:?}"
                )));
            }
            cls.push(c.iter().zip(&modulus).map(|(x, m)| x.rem_euclid(*m)).collect::<Vec<_>>());
        }
        cls.sort();
        cls.dedup();
        Ok(Subset::Residues { modulus, classes: cls })
    }

    pub fn prefix(letters: impl IntoIterator<Item = Letter>) -> Subset {
        let mut v: Vec<Letter> = letters.into_iter().collect();
        v.sort();
        v.dedup();
        Subset::Prefix(v)
    }

    pub fn union(a: Subset, b: Subset) -> Subset {
        Subset::Union(Box::new(a), Box::new(b))
    }

    pub fn intersection(a: Subset, b: Subset) -> Subset {
        Subset::Intersection(Box::new(a), Box::new(b))
    }

    pub fn complement(a: Subset) -> Subset {
        Subset::Complement(Box::new(a))
    }

    pub fn product(a: Subset, b: Subset) -> Subset {
        Subset::Product(Box::new(a), Box::new(b))
    }

    pub fn inverse(a: Subset) -> Subset {
        Subset::Inverse(Box::new(a))
    }

    pub fn translate(g: Element, a: Subset) -> Subset {
        Subset::Translate(g, Box::new(a))
    }

    pub fn conjugate(a: Subset, g: Element) -> Subset {
        Subset::Conjugate(Box::new(a), g)
    }

    pub fn wreath(a: Subset, e: Subset) -> Subset {
        Subset::Wreath(Box::new(a), Box::new(e))
    }

    /// `A A^{-1}`.
    pub fn difference_set(a: Subset) -> Subset {
        Subset::product(a.clone(), Subset::inverse(a))
    }

    /// Period of a subset of `Z^d`: membership depends only on `x mod period`.
    pub fn period(&self, g: &Group) -> Option<Vec<i64>> {
        let d = g.free_abelian_rank()?;
        self.period_in(g, d)
    }

    fn period_in(&self, g: &Group, d: usize) -> Option<Vec<i64>> {
        match self {
            Subset::Residues { modulus, .. } => Some(modulus.clone()),
            Subset::Explicit(v) if v.is_empty() => Some(vec![1; d]),
            Subset::Explicit(_) | Subset::Prefix(_) => None,
            Subset::Union(a, b) | Subset::Intersection(a, b) => {
                Some(lcm_vec(&a.period_in(g, d)?, &b.period_in(g, d)?))
            }
            Subset::Product(a, b) => match (a.period_in(g, d), b.period_in(g, d)) {
                (Some(p), Some(q)) => Some(lcm_vec(&p, &q)),
                (Some(p), None) | (None, Some(p)) => {
                    let other = if a.period_in(g, d).is_some() { b } else { a };
                    match g.finite_core(other) {
                        Ok(Some((_, false))) => Some(p),
                        _ => None,
                    }
                }
                (None, None) => None,
            },
            Subset::Complement(a) | Subset::Inverse(a) | Subset::Translate(_, a) | Subset::Conjugate(a, _) => {
                a.period_in(g, d)
            }
            Subset::Wreath(a, _) => a.period_in(g, d),
        }
    }

    /// For free groups: a depth `D` such that membership of every word of
    /// length `>= D` is decided by its first `D` letters.
    pub fn prefix_depth(&self, g: &Group) -> Option<usize> {
        g.free_rank()?;
        let direct = match self {
            Subset::Prefix(_) => Some(1),
            Subset::Explicit(v) => Some(v.iter().map(Element::word_len).max().unwrap_or(0) + 1),
            Subset::Union(a, b) | Subset::Intersection(a, b) => {
                Some(a.prefix_depth(g)?.max(b.prefix_depth(g)?))
            }
            Subset::Complement(a) => a.prefix_depth(g),
            Subset::Translate(x, a) => Some(x.word_len() + a.prefix_depth(g)?),
            Subset::Conjugate(a, x) => Some(2 * x.word_len() + a.prefix_depth(g)?),
            Subset::Wreath(a, e) => {
                let inner = a.prefix_depth(g)?;
                match g.finite_core(e) {
                    Ok(Some((list, false))) => {
                        Some(list.iter().map(|x| 2 * x.word_len() + inner).max().unwrap_or(1))
                    }
                    _ => None,
                }
            }
            _ => None,
        };
        direct.or_else(|| match g.finite_core(self) {
            Ok(Some((list, _))) => Some(list.iter().map(Element::word_len).max().unwrap_or(0) + 1),
            _ => None,
        })
    }
}

fn lcm_vec(p: &[i64], q: &[i64]) -> Vec<i64> {
    p.iter().zip(q).map(|(a, b)| a.lcm(b)).collect()
}

fn sorted_union(a: &[Element], b: &[Element]) -> Vec<Element> {
    let mut v: Vec<Element> = a.iter().chain(b).cloned().collect();
    v.sort();
    v.dedup();
    v
}

fn sorted_minus(a: &[Element], b: &[Element]) -> Vec<Element> {
    a.iter().filter(|x| b.binary_search(x).is_err()).cloned().collect()
}

fn sorted_intersection(a: &[Element], b: &[Element]) -> Vec<Element> {
    a.iter().filter(|x| b.binary_search(x).is_ok()).cloned().collect()
}

fn sorted(mut v: Vec<Element>) -> Vec<Element> {
    v.sort();
    v.dedup();
    v
}

impl Group {
    /// Checks that every leaf of `set` is well-typed for this group.
    pub fn check_subset(&self, set: &Subset) -> Result<()> {
        match set {
            Subset::Explicit(v) => v.iter().try_for_each(|e| self.validate(e)),
            Subset::Residues { modulus, .. } => match self.free_abelian_rank() {
                Some(d) if d == modulus.len() => Ok(()),
                _ => Err(Error::InvalidSubset(format!(
                    "residues modulo {modulus:?} need Z^{} as ambient group",
                    modulus.len()
                ))),
            },
            Subset::Prefix(ls) => match self.free_rank() {
                Some(k) if ls.iter().all(|&l| (l as usize) < 2 * k) => Ok(()),
                Some(_) => Err(Error::InvalidSubset("prefix letter out of range".into())),
                None => Err(Error::InvalidSubset("prefix sets need a free group".into())),
            },
            Subset::Union(a, b) | Subset::Intersection(a, b) | Subset::Product(a, b) | Subset::Wreath(a, b) => {
                self.check_subset(a)?;
                self.check_subset(b)
            }
            Subset::Complement(a) | Subset::Inverse(a) => self.check_subset(a),
            Subset::Translate(x, a) | Subset::Conjugate(a, x) => {
                self.validate(x)?;
                self.check_subset(a)
            }
        }
    }

    /// Characteristic bitset over the carrier of a finite group.
    pub fn finite_bits(&self, set: &Subset) -> Result<FixedBitSet> {
        let g = self
            .as_finite()
            .ok_or_else(|| Error::Unsupported("finite_bits needs a finite group".into()))?;
        let n = g.order();
        let mut out = FixedBitSet::with_capacity(n);
        match set {
            Subset::Explicit(v) => {
                for e in v {
                    self.validate(e)?;
                    out.insert(e.as_index().expect("validated"));
                }
            }
            Subset::Residues { .. } | Subset::Prefix(_) => {
                self.check_subset(set)?;
            }
            Subset::Union(a, b) => {
                out = self.finite_bits(a)?;
                out.union_with(&self.finite_bits(b)?);
            }
            Subset::Intersection(a, b) => {
                out = self.finite_bits(a)?;
                out.intersect_with(&self.finite_bits(b)?);
            }
            Subset::Complement(a) => {
                out = self.finite_bits(a)?;
                out.toggle_range(..);
            }
            Subset::Product(a, b) => {
                let (pa, pb) = (self.finite_bits(a)?, self.finite_bits(b)?);
                for x in pa.ones() {
                    for y in pb.ones() {
                        out.insert(g.mul(x, y));
                    }
                }
            }
            Subset::Inverse(a) => {
                for x in self.finite_bits(a)?.ones() {
                    out.insert(g.inv(x));
                }
            }
            Subset::Translate(t, a) => {
                self.validate(t)?;
                let t = t.as_index().expect("validated");
                for x in self.finite_bits(a)?.ones() {
                    out.insert(g.mul(t, x));
                }
            }
            Subset::Conjugate(a, c) => {
                self.validate(c)?;
                let c = c.as_index().expect("validated");
                let ci = g.inv(c);
                for x in self.finite_bits(a)?.ones() {
                    out.insert(g.mul(g.mul(ci, x), c));
                }
            }
            Subset::Wreath(a, e) => {
                let pa = self.finite_bits(a)?;
                for c in self.finite_bits(e)?.ones() {
                    let ci = g.inv(c);
                    for x in pa.ones() {
                        out.insert(g.mul(g.mul(ci, x), c));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, set: &Subset, x: &Element) -> Result<bool> {
        self.contains_with(set, x, None)
    }

    /// Membership test. Products of two infinite operands are resolved by
    /// searching `search` for a factorization; if none is found the call
    /// fails with `WindowTooSmall` instead of guessing.
    pub fn contains_with(&self, set: &Subset, x: &Element, search: Option<&Window>) -> Result<bool> {
        self.validate(x)?;
        if self.is_finite() {
            let bits = self.finite_bits(set)?;
            return Ok(bits.contains(x.as_index().expect("validated")));
        }
        self.contains_inf(set, x, search)
    }

    fn contains_inf(&self, set: &Subset, x: &Element, search: Option<&Window>) -> Result<bool> {
        match set {
            Subset::Explicit(v) => Ok(v.binary_search(x).is_ok()),
            Subset::Residues { modulus, classes } => match x {
                Element::Vector(v) if v.len() == modulus.len() => {
                    let r: Vec<i64> = v.iter().zip(modulus).map(|(a, m)| a.rem_euclid(*m)).collect();
                    Ok(classes.binary_search(&r).is_ok())
                }
                _ => Err(Error::InvalidSubset("residues need Z^d elements".into())),
            },
            Subset::Prefix(ls) => match x {
                Element::Word(w) => Ok(w.first().is_some_and(|l| ls.binary_search(l).is_ok())),
                _ => Err(Error::InvalidSubset("prefix sets need free-group words".into())),
            },
            Subset::Union(a, b) => {
                Ok(self.contains_inf(a, x, search)? || self.contains_inf(b, x, search)?)
            }
            Subset::Intersection(a, b) => {
                Ok(self.contains_inf(a, x, search)? && self.contains_inf(b, x, search)?)
            }
            Subset::Complement(a) => Ok(!self.contains_inf(a, x, search)?),
            Subset::Inverse(a) => self.contains_inf(a, &self.inv(x), search),
            Subset::Translate(t, a) => self.contains_inf(a, &self.mul(&self.inv(t), x), search),
            Subset::Conjugate(a, c) => {
                let y = self.mul(&self.mul(c, x), &self.inv(c));
                self.contains_inf(a, &y, search)
            }
            Subset::Wreath(a, e) => {
                let conj = self.enumerate(e)?.ok_or_else(|| {
                    Error::WindowTooSmall("conjugator set of a wreath must be finite".into())
                })?;
                for c in &conj {
                    let y = self.mul(&self.mul(c, x), &self.inv(c));
                    if self.contains_inf(a, &y, search)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Subset::Product(a, b) => self.product_contains(a, b, x, search),
        }
    }

    fn product_contains(&self, a: &Subset, b: &Subset, x: &Element, search: Option<&Window>) -> Result<bool> {
        if let Some(left) = self.enumerate(a)? {
            for u in &left {
                if self.contains_inf(b, &self.mul(&self.inv(u), x), search)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        if let Some(right) = self.enumerate(b)? {
            for v in &right {
                if self.contains_inf(a, &self.mul(x, &self.inv(v)), search)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        if let (Some(p), Some(q)) = (a.period(self), b.period(self)) {
            let m = lcm_vec(&p, &q);
            for u in box_points(&m) {
                if self.contains_inf(a, &u, search)? && self.contains_inf(b, &self.mul(&self.inv(&u), x), search)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        if let Some(w) = search {
            for u in w.iter() {
                if self.contains_inf(a, u, search)? && self.contains_inf(b, &self.mul(&self.inv(u), x), search)? {
                    return Ok(true);
                }
            }
            return Err(Error::WindowTooSmall(format!(
                "no factorization of {x:?} found in a search window of {} elements",
                w.len()
            )));
        }
        Err(Error::WindowTooSmall(
            "product of two infinite sets requires a search window".into(),
        ))
    }

    /// Lists a finite subset in canonical order; `None` when it is infinite
    /// (or not recognizably finite).
    pub fn enumerate(&self, set: &Subset) -> Result<Option<Vec<Element>>> {
        if let Some(g) = self.as_finite() {
            let _ = g;
            return Ok(Some(self.finite_bits(set)?.ones().map(Element::Index).collect()));
        }
        match self.finite_core(set)? {
            Some((list, false)) => Ok(Some(list)),
            _ => Ok(None),
        }
    }

    /// Describes `set` as `E` (`false`) or `G \ E` (`true`) for a finite `E`,
    /// when that shape is recognizable.
    pub fn finite_core(&self, set: &Subset) -> Result<Option<(Vec<Element>, bool)>> {
        if self.is_finite() {
            let bits = self.finite_bits(set)?;
            return Ok(Some((bits.ones().map(Element::Index).collect(), false)));
        }
        Ok(match set {
            Subset::Explicit(v) => Some((v.clone(), false)),
            Subset::Residues { modulus, classes } => {
                let total: i64 = modulus.iter().product();
                if classes.is_empty() {
                    Some((Vec::new(), false))
                } else if classes.len() as i64 == total {
                    Some((Vec::new(), true))
                } else {
                    None
                }
            }
            Subset::Prefix(ls) => {
                let k = self.free_rank().unwrap_or(0);
                if ls.is_empty() {
                    Some((Vec::new(), false))
                } else if ls.len() == 2 * k {
                    Some((vec![self.identity()], true))
                } else {
                    None
                }
            }
            Subset::Complement(a) => self.finite_core(a)?.map(|(e, c)| (e, !c)),
            Subset::Union(a, b) => match (self.finite_core(a)?, self.finite_core(b)?) {
                (Some((e1, false)), Some((e2, false))) => Some((sorted_union(&e1, &e2), false)),
                (Some((e1, true)), Some((e2, true))) => Some((sorted_intersection(&e1, &e2), true)),
                (Some((e1, false)), Some((e2, true))) | (Some((e2, true)), Some((e1, false))) => {
                    Some((sorted_minus(&e2, &e1), true))
                }
                (Some((e, true)), None) | (None, Some((e, true))) if e.is_empty() => Some((e, true)),
                (Some((e, false)), None) | (None, Some((e, false))) if e.is_empty() => {
                    let other = if self.finite_core(a)?.is_some() { b } else { a };
                    self.finite_core(other)?
                }
                _ => None,
            },
            Subset::Intersection(a, b) => match (self.finite_core(a)?, self.finite_core(b)?) {
                (Some((e1, false)), Some((e2, false))) => Some((sorted_intersection(&e1, &e2), false)),
                (Some((e1, true)), Some((e2, true))) => Some((sorted_union(&e1, &e2), true)),
                (Some((e1, false)), Some((e2, true))) | (Some((e2, true)), Some((e1, false))) => {
                    Some((sorted_minus(&e1, &e2), false))
                }
                (Some((e, false)), None) => {
                    let mut keep = Vec::new();
                    for x in e {
                        if self.contains_inf(b, &x, None)? {
                            keep.push(x);
                        }
                    }
                    Some((keep, false))
                }
                (None, Some((e, false))) => {
                    let mut keep = Vec::new();
                    for x in e {
                        if self.contains_inf(a, &x, None)? {
                            keep.push(x);
                        }
                    }
                    Some((keep, false))
                }
                _ => None,
            },
            Subset::Product(a, b) => match (self.finite_core(a)?, self.finite_core(b)?) {
                (Some((e1, false)), Some((e2, false))) => Some((
                    sorted(e1.iter().flat_map(|u| e2.iter().map(move |v| (u, v))).map(|(u, v)| self.mul(u, v)).collect()),
                    false,
                )),
                (Some((e, false)), _) | (_, Some((e, false))) if e.is_empty() => Some((Vec::new(), false)),
                _ => None,
            },
            Subset::Inverse(a) => self
                .finite_core(a)?
                .map(|(e, c)| (sorted(e.iter().map(|x| self.inv(x)).collect()), c)),
            Subset::Translate(t, a) => self
                .finite_core(a)?
                .map(|(e, c)| (sorted(e.iter().map(|x| self.mul(t, x)).collect()), c)),
            Subset::Conjugate(a, t) => {
                let ti = self.inv(t);
                self.finite_core(a)?
                    .map(|(e, c)| (sorted(e.iter().map(|x| self.mul(&self.mul(&ti, x), t)).collect()), c))
            }
            Subset::Wreath(a, e) => match (self.finite_core(e)?, self.finite_core(a)?) {
                (Some((conj, false)), _) if conj.is_empty() => Some((Vec::new(), false)),
                (Some((conj, false)), Some((core, flag))) => {
                    let images: Vec<Vec<Element>> = conj
                        .iter()
                        .map(|t| {
                            let ti = self.inv(t);
                            sorted(core.iter().map(|x| self.mul(&self.mul(&ti, x), t)).collect())
                        })
                        .collect();
                    let combined = if flag {
                        images.iter().skip(1).fold(images[0].clone(), |acc, s| sorted_intersection(&acc, s))
                    } else {
                        images.iter().fold(Vec::new(), |acc, s| sorted_union(&acc, s))
                    };
                    Some((combined, flag))
                }
                _ => None,
            },
        })
    }

    /// Membership bitset over `window`.
    pub fn realize(&self, set: &Subset, window: &Window) -> Result<FixedBitSet> {
        self.realize_with(set, window, None)
    }

    pub fn realize_with(&self, set: &Subset, window: &Window, search: Option<&Window>) -> Result<FixedBitSet> {
        self.check_subset(set)?;
        let mut out = FixedBitSet::with_capacity(window.len());
        if self.is_finite() {
            let bits = self.finite_bits(set)?;
            for (i, e) in window.iter().enumerate() {
                self.validate(e)?;
                out.set(i, bits.contains(e.as_index().expect("validated")));
            }
            return Ok(out);
        }
        for (i, e) in window.iter().enumerate() {
            out.set(i, self.contains_with(set, e, search)?);
        }
        Ok(out)
    }

    /// Whether `xA` and `yA` intersect, decided exactly for finite groups,
    /// periodic subsets of `Z^d`, finite or cofinite sets, and free-group sets
    /// with a prefix depth.
    pub fn translates_meet(&self, set: &Subset, x: &Element, y: &Element) -> Result<bool> {
        // xA meets yA iff A meets x^{-1}yA
        let shift = self.mul(&self.inv(x), y);
        if let Some(g) = self.as_finite() {
            let bits = self.finite_bits(set)?;
            let s = shift.as_index().expect("finite");
            return Ok(bits.ones().any(|a| bits.contains(g.mul(g.inv(s), a))));
        }
        let shifted = Subset::translate(shift.clone(), set.clone());
        if let Some((core, flag)) = self.finite_core(set)? {
            if flag {
                return Ok(true);
            }
            for a in &core {
                if self.contains_inf(&shifted, a, None)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        if let Some(p) = set.period(self) {
            for u in box_points(&p) {
                if self.contains_inf(set, &u, None)? && self.contains_inf(&shifted, &u, None)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        if let Some(d) = set.prefix_depth(self) {
            let depth = d + shift.word_len();
            for u in self.ball(depth).iter() {
                if self.contains_inf(set, u, None)? && self.contains_inf(&shifted, u, None)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        Err(Error::InnerSupNotExact(
            "cannot decide whether two translates of this set intersect".into(),
        ))
    }

    /// A word of the free group or vector of `Z^d` outside `avoid`.
    pub(crate) fn far_point(&self, avoid: &[Element]) -> Element {
        let r = avoid.iter().map(Element::word_len).max().unwrap_or(0) + 1;
        match self.backend() {
            Backend::FreeAbelian(d) => {
                let mut v = vec![0; *d];
                v[0] = r as i64;
                Element::Vector(v)
            }
            Backend::Free(_) => Element::Word(vec![0; r]),
            Backend::Finite(_) => self.identity(),
        }
    }
}

/// All points of the box `[0, m)` in lexicographic order.
pub(crate) fn box_points(m: &[i64]) -> Vec<Element> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; m.len()];
    loop {
        out.push(Element::Vector(cur.clone()));
        let mut k = m.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < m[k] {
                break;
            }
            cur[k] = 0;
        }
    }
}

#[allow(dead_code)]
fn reduced(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[1] != inverse_letter(p[0]))
}
