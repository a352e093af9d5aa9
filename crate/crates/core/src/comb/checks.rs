//! Set algebra, thickness, homotheties, Følner boxes and the inequality checks.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::index::covering_number;
use super::{CovResult, CovValue};
use crate::dens::{sis123, us12, ExtremalBudget, Value};
use crate::error::{Error, Result};
use crate::grp::{Element, Group, Subset, Window};
use crate::rational::{ceil_to_i64, floor_to_i64, Rational};

/// Evaluates a composed subset as far as the group allows.
///
/// On finite groups the result is the explicit member list. On infinite groups
/// finite and cofinite shapes are made explicit; anything else is returned
/// unchanged after its membership has been realized over `window` (or at the
/// identity when no window is given).
pub fn set_algebra(g: &Group, expr: &Subset, window: Option<&Window>) -> Result<Subset> {
    g.check_subset(expr)?;
    if g.is_finite() {
        return Ok(Subset::from_bits(&g.finite_bits(expr)?));
    }
    match g.finite_core(expr)? {
        Some((core, false)) => Ok(Subset::explicit(core)),
        Some((core, true)) => Ok(Subset::complement(Subset::explicit(core))),
        None => {
            match window {
                Some(w) => {
                    g.realize(expr, w)?;
                }
                None => {
                    g.contains(expr, &g.identity())?;
                }
            }
            Ok(expr.clone())
        }
    }
}

fn finite_order(g: &Group, what: &str) -> Result<usize> {
    g.order().ok_or_else(|| Error::Unsupported(format!("{what} needs a finite group")))
}

/// Right thickness on a finite group, which forces `A = G`.
pub fn is_right_thick(g: &Group, a: &Subset) -> Result<bool> {
    let n = finite_order(g, "is_right_thick")?;
    Ok(g.finite_bits(a)?.count_ones(..) == n)
}

fn us12_exact(g: &Group, a: &Subset, n: usize) -> Result<Rational> {
    Ok(us12(g, a, n, None)?.value.exact().cloned().expect("us12 is exact with kmax = |G|"))
}

/// Whether `us12(A) + us12(B) > 1` implies `AB = G`.
pub fn ergo_sum_check(g: &Group, a: &Subset, b: &Subset) -> Result<bool> {
    let n = finite_order(g, "ergo_sum_check")?;
    if us12_exact(g, a, n)? + us12_exact(g, b, n)? <= Rational::one() {
        return Ok(true);
    }
    is_right_thick(g, &Subset::product(a.clone(), b.clone()))
}

/// Whether `cov(AB) <= |G|^2 / (|A| |B|)` on a finite group.
pub fn di_nasso_lupini_check(g: &Group, a: &Subset, b: &Subset) -> Result<bool> {
    let n = finite_order(g, "di_nasso_lupini_check")?;
    let (ka, kb) = (g.finite_bits(a)?.count_ones(..), g.finite_bits(b)?.count_ones(..));
    if ka == 0 || kb == 0 {
        return Ok(true);
    }
    let cov = covering_number(g, &Subset::product(a.clone(), b.clone()), n)?;
    let k = cov.value.exact().expect("exact cover on a finite group");
    Ok(k * ka * kb <= n * n)
}

/// `h(x) = a_0 x a_1 x ... x a_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homothety {
    pub degree: usize,
    pub constants: Vec<Element>,
}

impl Homothety {
    pub fn identity(g: &Group) -> Self {
        Homothety { degree: 1, constants: vec![g.identity(), g.identity()] }
    }

    pub fn apply(&self, g: &Group, x: &Element) -> Element {
        let mut out = self.constants[0].clone();
        for c in &self.constants[1..] {
            out = g.mul(&g.mul(&out, x), c);
        }
        out
    }
}

const HOMOTHETY_LIMIT: u128 = 20_000_000;

/// First homothety (degree ascending, constants in carrier order) mapping `f`
/// into `A`. Abelian groups only enumerate `h(x) = nx + a`, stored as
/// constants `(a, e, ..., e)`.
pub fn homothety_witness(g: &Group, a: &Subset, f: &[Element], degree_cap: usize) -> Result<Option<Homothety>> {
    let n = finite_order(g, "homothety_witness")?;
    if f.is_empty() {
        return Err(Error::InvalidArgument("F must be non-empty".into()));
    }
    if degree_cap == 0 {
        return Err(Error::InvalidArgument("degree_cap must be at least 1".into()));
    }
    for x in f {
        g.validate(x)?;
    }
    let bits = g.finite_bits(a)?;
    let inside = |h: &Homothety| f.iter().all(|x| bits.contains(h.apply(g, x).as_index().expect("finite")));
    let carrier = g.carrier().expect("finite");
    if g.is_abelian() {
        for degree in 1..=degree_cap {
            for c in carrier.iter() {
                let mut constants = vec![c.clone()];
                constants.extend(std::iter::repeat_n(g.identity(), degree));
                let h = Homothety { degree, constants };
                if inside(&h) {
                    return Ok(Some(h));
                }
            }
        }
        return Ok(None);
    }
    for degree in 1..=degree_cap {
        if (n as u128).checked_pow(degree as u32 + 1).is_none_or(|c| c > HOMOTHETY_LIMIT) {
            return Err(Error::Capacity(format!("{n}^{} constant tuples", degree + 1)));
        }
        for tuple in (0..=degree).map(|_| carrier.iter().cloned()).multi_cartesian_product() {
            let h = Homothety { degree, constants: tuple };
            if inside(&h) {
                return Ok(Some(h));
            }
        }
    }
    Ok(None)
}

/// A cube `[0, L)^d` with its boundary count `|F + E \ E|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolnerBox {
    pub side: usize,
    pub boundary: usize,
    pub volume: usize,
    pub defect: Rational,
}

/// Smallest cube `E = [0, L)^d` with `|F + E \ E| < eps |E|`.
pub fn folner_set(d: usize, f: &[Vec<i64>], eps: &Rational) -> Result<FolnerBox> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if *eps <= Rational::zero() {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    if let Some(v) = f.iter().find(|v| v.len() != d) {
        return Err(Error::InvalidElement(format!("{v:?} is not in Z^{d}")));
    }
    let spread: i64 = f.iter().map(|v| v.iter().map(|c| c.abs()).max().unwrap_or(0)).sum();
    let bound = ceil_to_i64(&(Rational::from_integer((d as i64 * spread).into()) / eps)).expect("small bound") + 1;
    for side in 1..=bound.max(1) {
        let cube = crate::grp::box_points(&vec![side; d]);
        let mut outside: BTreeSet<Vec<i64>> = BTreeSet::new();
        for p in &cube {
            let Element::Vector(p) = p else { unreachable!() };
            for v in f {
                let q: Vec<i64> = p.iter().zip(v).map(|(x, y)| x + y).collect();
                if q.iter().any(|&c| c < 0 || c >= side) {
                    outside.insert(q);
                }
            }
        }
        let defect = Rational::new((outside.len() as i64).into(), (cube.len() as i64).into());
        if defect < *eps {
            return Ok(FolnerBox { side: side as usize, boundary: outside.len(), volume: cube.len(), defect });
        }
    }
    unreachable!("the boundary of a cube of side {bound} is below eps")
}

/// First `y` in `search` with `Ay` contained in `B`, trying the identity
/// before the window order.
pub fn finitely_representable(g: &Group, a: &[Element], b: &Subset, search: &Window) -> Result<Option<Element>> {
    for x in a {
        g.validate(x)?;
    }
    let e = g.identity();
    let order = search.iter().filter(|y| **y == e).chain(search.iter().filter(|y| **y != e));
    for y in order {
        let mut ok = true;
        for x in a {
            if !g.contains(b, &g.mul(x, y))? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(y.clone()));
        }
    }
    Ok(None)
}

/// Covering bound for `(AA^{-1})^{wr E}` against the `sis123` lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T92Report {
    pub sis123: Value,
    /// `ceil(1 / s)` for the lower end `s`; `None` when `s = 0`.
    pub bound: Option<usize>,
    /// `floor(1 / s)`, the bound the integer cover must actually meet.
    pub strict_bound: Option<usize>,
    pub conjugators: Vec<Element>,
    pub cover: CovResult,
    pub holds: bool,
    pub holds_strict: bool,
    /// Cover of `AA^{-1}AA^{-1}`.
    pub square_cover: CovResult,
}

/// Checks `cov((AA^{-1})^{wr E}) <= 1/s` over conjugator sets of size at most 3
/// and that `AA^{-1}AA^{-1}` has a finite cover.
pub fn t92_check(g: &Group, a: &Subset, budget: &ExtremalBudget) -> Result<T92Report> {
    let n = finite_order(g, "t92_check")?;
    if g.finite_bits(a)?.count_ones(..) == 0 {
        return Err(Error::UndefinedIndex);
    }
    let sis = sis123(g, a, budget.kmax, budget.grid_denominator)?.value;
    let s = sis.lo().cloned().expect("sis123 has a lower end");
    let (bound, strict_bound) = if s.is_zero() {
        (None, None)
    } else {
        let inv = s.recip();
        (ceil_to_i64(&inv).map(|v| v as usize), floor_to_i64(&inv).map(|v| v as usize))
    };
    let diff = Subset::difference_set(a.clone());
    let carrier = g.carrier().expect("finite");
    let mut best: Option<(Vec<Element>, CovResult)> = None;
    'search: for size in 1..=3.min(n) {
        for e in carrier.iter().cloned().combinations(size) {
            let set = Subset::wreath(diff.clone(), Subset::explicit(e.clone()));
            let cov = covering_number(g, &set, n)?;
            let k = cov.value.upper().expect("finite group");
            if best.as_ref().is_none_or(|(_, c)| k < c.value.upper().expect("finite group")) {
                best = Some((e, cov));
            }
            if strict_bound.is_none_or(|b| k <= b) {
                break 'search;
            }
        }
    }
    let (conjugators, cover) = best.expect("at least one conjugator set");
    let k = cover.value.upper().expect("finite group");
    let square = Subset::product(diff.clone(), diff);
    let square_cover = covering_number(g, &square, n)?;
    Ok(T92Report {
        sis123: sis,
        holds: bound.is_none_or(|b| k <= b),
        holds_strict: strict_bound.is_none_or(|b| k <= b),
        bound,
        strict_bound,
        conjugators,
        cover,
        square_cover,
    })
}

impl T92Report {
    /// Whether every checked inequality held and the square has a finite cover.
    pub fn passed(&self) -> bool {
        self.holds && self.holds_strict && self.square_cover.value != CovValue::Infinite
    }
}
