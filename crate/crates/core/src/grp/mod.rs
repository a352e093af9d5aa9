//! Group backends: finite table-backed groups, free abelian groups `Z^d`
//! and free groups `F_k`, all acting on themselves by left multiplication.

mod finite;
mod subset;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

pub use finite::{factorial, rank_perm, unrank_perm, FiniteGroup, TABLE_LIMIT};
pub use subset::Subset;
pub(crate) use subset::box_points;

use crate::error::{Error, Result};

pub const MAX_SYMMETRIC_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    DirectProduct(Vec<GroupSpec>),
    Symmetric(usize),
    Dihedral(usize),
    FreeAbelian(usize),
    Free(usize),
}

impl GroupSpec {
    pub fn is_finite(&self) -> bool {
        match self {
            GroupSpec::Cyclic(_) | GroupSpec::Symmetric(_) | GroupSpec::Dihedral(_) => true,
            GroupSpec::DirectProduct(parts) => parts.iter().all(GroupSpec::is_finite),
            GroupSpec::FreeAbelian(_) | GroupSpec::Free(_) => false,
        }
    }
}

/// Free-group letter: generator `i` is `2i`, its inverse `2i + 1`.
pub type Letter = u8;

pub fn letter(generator: usize, inverse: bool) -> Letter {
    (2 * generator + inverse as usize) as Letter
}

pub fn inverse_letter(l: Letter) -> Letter {
    l ^ 1
}

/// Canonical element encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    /// Index into a finite group's carrier.
    Index(usize),
    /// Vector in `Z^d`.
    Vector(Vec<i64>),
    /// Reduced word in a free group.
    Word(Vec<Letter>),
}

impl Element {
    pub fn word_len(&self) -> usize {
        match self {
            Element::Word(w) => w.len(),
            Element::Vector(v) => max_norm(v) as usize,
            Element::Index(_) => 0,
        }
    }

    pub fn as_index(&self) -> Option<usize> {
        match self {
            Element::Index(i) => Some(*i),
            _ => None,
        }
    }
}

fn max_norm(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// Orders elements the way windows enumerate them: finite groups by index,
/// `Z^d` by max-norm then lexicographically, free groups length-lexicographically.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        use Element::*;
        match (self, other) {
            (Index(a), Index(b)) => a.cmp(b),
            (Vector(a), Vector(b)) => max_norm(a).cmp(&max_norm(b)).then_with(|| a.cmp(b)),
            (Word(a), Word(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (Index(_), _) => Ordering::Less,
            (_, Index(_)) => Ordering::Greater,
            (Vector(_), Word(_)) => Ordering::Less,
            (Word(_), Vector(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone)]
pub enum Backend {
    Finite(FiniteGroup),
    FreeAbelian(usize),
    Free(usize),
}

/// An immutable group handle.
#[derive(Debug, Clone)]
pub struct Group {
    spec: GroupSpec,
    backend: Backend,
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        let backend = build_backend(&spec)?;
        Ok(Group { spec, backend })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(GroupSpec::Cyclic(n))
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        Self::new(GroupSpec::Symmetric(n))
    }

    pub fn free_abelian(d: usize) -> Result<Self> {
        Self::new(GroupSpec::FreeAbelian(d))
    }

    pub fn free(k: usize) -> Result<Self> {
        Self::new(GroupSpec::Free(k))
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn as_finite(&self) -> Option<&FiniteGroup> {
        match &self.backend {
            Backend::Finite(g) => Some(g),
            _ => None,
        }
    }

    /// `Some(|G|)` for finite groups, `None` for infinite ones.
    pub fn order(&self) -> Option<usize> {
        self.as_finite().map(FiniteGroup::order)
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn is_abelian(&self) -> bool {
        match &self.backend {
            Backend::Finite(g) => g.is_abelian(),
            Backend::FreeAbelian(_) => true,
            Backend::Free(k) => *k <= 1,
        }
    }

    pub fn free_abelian_rank(&self) -> Option<usize> {
        match self.backend {
            Backend::FreeAbelian(d) => Some(d),
            _ => None,
        }
    }

    pub fn free_rank(&self) -> Option<usize> {
        match self.backend {
            Backend::Free(k) => Some(k),
            _ => None,
        }
    }

    pub fn identity(&self) -> Element {
        match &self.backend {
            Backend::Finite(g) => Element::Index(g.identity()),
            Backend::FreeAbelian(d) => Element::Vector(vec![0; *d]),
            Backend::Free(_) => Element::Word(Vec::new()),
        }
    }

    pub fn validate(&self, a: &Element) -> Result<()> {
        let ok = match (&self.backend, a) {
            (Backend::Finite(g), Element::Index(i)) => *i < g.order(),
            (Backend::FreeAbelian(d), Element::Vector(v)) => v.len() == *d,
            (Backend::Free(k), Element::Word(w)) => {
                w.iter().all(|&l| (l as usize) < 2 * k)
                    && w.windows(2).all(|p| p[1] != inverse_letter(p[0]))
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!("{a:?} is not an element of {:?}", self.spec)))
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul(a, b))
    }

    pub fn invert(&self, a: &Element) -> Result<Element> {
        self.validate(a)?;
        Ok(self.inv(a))
    }

    /// Multiplication on already-validated elements.
    pub(crate) fn mul(&self, a: &Element, b: &Element) -> Element {
        match (&self.backend, a, b) {
            (Backend::Finite(g), Element::Index(x), Element::Index(y)) => Element::Index(g.mul(*x, *y)),
            (Backend::FreeAbelian(_), Element::Vector(x), Element::Vector(y)) => {
                Element::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Backend::Free(_), Element::Word(x), Element::Word(y)) => Element::Word(reduce_concat(x, y)),
            _ => panic!("element encoding does not match group backend"),
        }
    }

    pub(crate) fn inv(&self, a: &Element) -> Element {
        match (&self.backend, a) {
            (Backend::Finite(g), Element::Index(x)) => Element::Index(g.inv(*x)),
            (Backend::FreeAbelian(_), Element::Vector(x)) => Element::Vector(x.iter().map(|p| -p).collect()),
            (Backend::Free(_), Element::Word(x)) => {
                Element::Word(x.iter().rev().map(|&l| inverse_letter(l)).collect())
            }
            _ => panic!("element encoding does not match group backend"),
        }
    }

    /// Full carrier of a finite group in canonical order.
    pub fn carrier(&self) -> Option<Window> {
        self.as_finite()
            .map(|g| Window::from_sorted_unchecked((0..g.order()).map(Element::Index).collect()))
    }

    /// Elements of word length (resp. max-norm) at most `radius`, in canonical
    /// order. Finite groups return the full carrier.
    pub fn ball(&self, radius: usize) -> Window {
        match &self.backend {
            Backend::Finite(_) => self.carrier().expect("finite"),
            Backend::FreeAbelian(d) => Window::from_sorted_unchecked(zd_ball(*d, radius as i64)),
            Backend::Free(k) => Window::from_sorted_unchecked(free_ball(*k, radius)),
        }
    }

    /// Number of elements `ball(radius)` would hold, `None` on overflow.
    pub fn ball_size(&self, radius: usize) -> Option<usize> {
        match &self.backend {
            Backend::Finite(g) => Some(g.order()),
            Backend::FreeAbelian(d) => (2 * radius).checked_add(1)?.checked_pow(*d as u32),
            Backend::Free(k) => {
                let mut total: usize = 1;
                let mut layer: usize = 1;
                for i in 0..radius {
                    layer = layer.checked_mul(if i == 0 { 2 * k } else { 2 * k - 1 })?;
                    total = total.checked_add(layer)?;
                }
                Some(total)
            }
        }
    }

    /// Projection `Z^d -> Z^d / mZ^d` onto the product of cyclic groups.
    pub fn quotient_map(&self, modulus: &[i64]) -> Result<Quotient> {
        let d = self.free_abelian_rank().ok_or_else(|| {
            Error::UnsupportedReduction("quotient maps are defined on Z^d only".into())
        })?;
        if modulus.len() != d || modulus.iter().any(|&m| m < 1) {
            return Err(Error::UnsupportedReduction(format!(
                "modulus {modulus:?} must have {d} positive components"
            )));
        }
        let spec = if d == 1 {
            GroupSpec::Cyclic(modulus[0] as usize)
        } else {
            GroupSpec::DirectProduct(modulus.iter().map(|&m| GroupSpec::Cyclic(m as usize)).collect())
        };
        Ok(Quotient {
            target: Group::new(spec)?,
            modulus: modulus.to_vec(),
        })
    }
}

fn build_backend(spec: &GroupSpec) -> Result<Backend> {
    Ok(match spec {
        GroupSpec::Cyclic(n) if *n >= 1 => Backend::Finite(FiniteGroup::cyclic(*n)),
        GroupSpec::Symmetric(n) if (1..=MAX_SYMMETRIC_DEGREE).contains(n) => {
            Backend::Finite(FiniteGroup::symmetric(*n))
        }
        GroupSpec::Symmetric(n) if *n > MAX_SYMMETRIC_DEGREE => {
            return Err(Error::Capacity(format!(
                "Sym({n}) exceeds the supported degree {MAX_SYMMETRIC_DEGREE}"
            )))
        }
        GroupSpec::Dihedral(n) if *n >= 1 => Backend::Finite(FiniteGroup::dihedral(*n)),
        GroupSpec::FreeAbelian(d) if *d >= 1 => Backend::FreeAbelian(*d),
        GroupSpec::Free(k) if (1..=26).contains(k) => Backend::Free(*k),
        GroupSpec::DirectProduct(parts) if !parts.is_empty() => {
            let backends = parts.iter().map(build_backend).collect::<Result<Vec<_>>>()?;
            if backends.iter().all(|b| matches!(b, Backend::Finite(_))) {
                let groups = backends
                    .into_iter()
                    .map(|b| match b {
                        Backend::Finite(g) => g,
                        _ => unreachable!(),
                    })
                    .collect::<Vec<_>>();
                let order: Option<usize> = groups.iter().try_fold(1usize, |acc, g| acc.checked_mul(g.order()));
                match order {
                    Some(o) if o <= u32::MAX as usize => Backend::Finite(FiniteGroup::product(groups)),
                    _ => return Err(Error::Capacity("direct product order too large".into())),
                }
            } else if backends.iter().all(|b| matches!(b, Backend::FreeAbelian(_))) {
                let d = backends
                    .iter()
                    .map(|b| match b {
                        Backend::FreeAbelian(d) => *d,
                        _ => unreachable!(),
                    })
                    .sum();
                Backend::FreeAbelian(d)
            } else {
                return Err(Error::InvalidGroup(
                    "direct products must be all finite or all free abelian".into(),
                ));
            }
        }
        other => return Err(Error::InvalidGroup(format!("{other:?} has an invalid parameter"))),
    })
}

fn reduce_concat(x: &[Letter], y: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    out.extend_from_slice(x);
    for &l in y {
        if out.last() == Some(&inverse_letter(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn zd_ball(d: usize, radius: i64) -> Vec<Element> {
    let side = (2 * radius + 1) as usize;
    let mut all: Vec<Vec<i64>> = Vec::with_capacity(side.pow(d as u32));
    let mut cur = vec![-radius; d];
    loop {
        all.push(cur.clone());
        let mut k = d;
        loop {
            if k == 0 {
                let mut elems: Vec<Element> = all.into_iter().map(Element::Vector).collect();
                elems.sort();
                return elems;
            }
            k -= 1;
            if cur[k] < radius {
                cur[k] += 1;
                break;
            }
            cur[k] = -radius;
        }
    }
}

fn free_ball(k: usize, radius: usize) -> Vec<Element> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..radius {
        let mut next = Vec::with_capacity(layer.len() * (2 * k - 1).max(1));
        for w in &layer {
            for l in 0..(2 * k) as Letter {
                if w.last() == Some(&inverse_letter(l)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.into_iter().map(Element::Word).collect()
}

/// Finite ordered list of distinct elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl Window {
    pub fn new(elements: Vec<Element>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate window element {e:?}")));
            }
        }
        Ok(Window { elements, index })
    }

    fn from_sorted_unchecked(elements: Vec<Element>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Window { elements, index }
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elements.iter()
    }

    pub fn to_bits(&self, members: impl IntoIterator<Item = Element>) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for e in members {
            if let Some(i) = self.position(&e) {
                bits.insert(i);
            }
        }
        bits
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Window({} elements)", self.len())
    }
}

/// The projection of `Z^d` onto a finite product of cyclic groups.
#[derive(Debug, Clone)]
pub struct Quotient {
    target: Group,
    modulus: Vec<i64>,
}

impl Quotient {
    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub fn project(&self, a: &Element) -> Result<Element> {
        match a {
            Element::Vector(v) if v.len() == self.modulus.len() => {
                let comps: Vec<usize> = v
                    .iter()
                    .zip(&self.modulus)
                    .map(|(x, m)| x.rem_euclid(*m) as usize)
                    .collect();
                let g = self.target.as_finite().expect("quotient is finite");
                Ok(Element::Index(g.join(&comps)))
            }
            _ => Err(Error::InvalidElement(format!("{a:?} is not in Z^{}", self.modulus.len()))),
        }
    }

    /// Representative of a quotient element in the box `[0, m)`.
    pub fn lift(&self, a: &Element) -> Result<Element> {
        let g = self.target.as_finite().expect("quotient is finite");
        match a {
            Element::Index(i) if *i < g.order() => {
                Ok(Element::Vector(g.split(*i).into_iter().map(|c| c as i64).collect()))
            }
            _ => Err(Error::InvalidElement(format!("{a:?} is not in the quotient"))),
        }
    }

    /// Image of a periodic subset (its period must divide the modulus).
    pub fn project_subset(&self, source: &Group, set: &Subset) -> Result<Subset> {
        let period = set.period(source).ok_or_else(|| {
            Error::UnsupportedReduction("subset is not periodic".into())
        })?;
        if period.iter().zip(&self.modulus).any(|(p, m)| m % p != 0) {
            return Err(Error::UnsupportedReduction(format!(
                "period {period:?} does not divide modulus {:?}",
                self.modulus
            )));
        }
        let carrier = self.target.carrier().expect("finite");
        let mut members = Vec::new();
        for e in carrier.iter() {
            if source.contains(set, &self.lift(e)?)? {
                members.push(e.clone());
            }
        }
        Ok(Subset::explicit(members))
    }
}
