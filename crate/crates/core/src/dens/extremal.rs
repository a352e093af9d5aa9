//! The hierarchy of extremal densities `e_s` on finite groups.

use std::fmt;

use itertools::Itertools;
use num_traits::Zero;

use super::games::outer_candidates;
use super::{DensityResult, Method, Value, Witness};
use crate::error::{Error, Result};
use crate::grp::{Group, Subset};
use crate::meas::Measure;
use crate::rational::{int, Rational};
use crate::ratlp::{game_value, GameMatrix};

/// Quantifier over a measure `mu_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    /// `i`: infimum over finitely supported measures.
    Inf,
    /// `s`: supremum over finitely supported measures.
    Sup,
    /// `u`: infimum over uniform measures on finite sets.
    UniformInf,
    /// `I`: infimum over all measures.
    InfAll,
    /// `S`: supremum over all measures.
    SupAll,
}

impl Quantifier {
    pub fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'i' => Quantifier::Inf,
            's' => Quantifier::Sup,
            'u' => Quantifier::UniformInf,
            'I' => Quantifier::InfAll,
            'S' => Quantifier::SupAll,
            _ => return None,
        })
    }

    pub fn to_char(self) -> char {
        match self {
            Quantifier::Inf => 'i',
            Quantifier::Sup => 's',
            Quantifier::UniformInf => 'u',
            Quantifier::InfAll => 'I',
            Quantifier::SupAll => 'S',
        }
    }

    fn is_sup(self) -> bool {
        matches!(self, Quantifier::Sup | Quantifier::SupAll)
    }

    pub const ALL: [Quantifier; 5] = [
        Quantifier::Inf,
        Quantifier::Sup,
        Quantifier::UniformInf,
        Quantifier::InfAll,
        Quantifier::SupAll,
    ];
}

/// `e(1)_{mu_1} ... e(n)_{mu_n} (mu_{s(1)} * ... * mu_{s(n)})(A)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtremalPattern {
    quants: Vec<Quantifier>,
    perm: Vec<usize>,
}

impl ExtremalPattern {
    /// `perm` lists `s(1), ..., s(n)` (1-based).
    pub fn new(quants: Vec<Quantifier>, perm: Vec<usize>) -> Result<Self> {
        let n = quants.len();
        if !(1..=3).contains(&n) {
            return Err(Error::InvalidPattern(format!("length {n} is outside 1..=3")));
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(Error::InvalidPattern(format!("{perm:?} is not a permutation of 1..={n}")));
        }
        let free = perm.iter().position(|&v| v == n).expect("permutation");
        for (j, q) in quants.iter().enumerate() {
            if j != free && matches!(q, Quantifier::InfAll | Quantifier::SupAll) {
                return Err(Error::InvalidPattern(format!(
                    "quantifier {} at position {} must be one of u, i, s",
                    q.to_char(),
                    j + 1
                )));
            }
        }
        Ok(ExtremalPattern { quants, perm })
    }

    /// Parses e.g. `("is", "12")`.
    pub fn parse(quants: &str, perm: &str) -> Result<Self> {
        let q = quants
            .chars()
            .map(|c| Quantifier::from_char(c).ok_or_else(|| Error::InvalidPattern(format!("unknown quantifier {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let p = perm
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::InvalidPattern(format!("bad index {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, p)
    }

    pub fn len(&self) -> usize {
        self.quants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quants.is_empty()
    }

    pub fn quantifiers(&self) -> &[Quantifier] {
        &self.quants
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Every valid pattern of length `n`.
    pub fn all(n: usize) -> Vec<ExtremalPattern> {
        let mut out = Vec::new();
        for perm in (1..=n).permutations(n) {
            for qs in (0..n).map(|_| Quantifier::ALL).multi_cartesian_product() {
                if let Ok(p) = ExtremalPattern::new(qs, perm.clone()) {
                    out.push(p);
                }
            }
        }
        out
    }
}

impl fmt::Display for ExtremalPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in &self.quants {
            write!(f, "{}", q.to_char())?;
        }
        write!(f, "_")?;
        for s in &self.perm {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalBudget {
    /// Largest uniform outer measure tried.
    pub kmax: usize,
    /// Largest grid denominator for outer measures.
    pub grid_denominator: usize,
}

impl Default for ExtremalBudget {
    fn default() -> Self {
        ExtremalBudget { kmax: 12, grid_denominator: 4 }
    }
}

/// Largest carrier for which uniform outer measures are enumerated exhaustively.
const UNIFORM_LIMIT: usize = 16;

struct Table {
    n: usize,
    size: usize,
    hits: Vec<bool>,
}

impl Table {
    fn build(g: &Group, a: &Subset, pattern: &ExtremalPattern) -> Result<Table> {
        let fg = g.as_finite().expect("finite");
        let bits = g.finite_bits(a)?;
        let (n, size) = (pattern.len(), fg.order());
        let total = size
            .checked_pow(n as u32)
            .filter(|&t| t <= 4_000_000)
            .ok_or_else(|| Error::Capacity(format!("{size}^{n} assignments")))?;
        let mut hits = Vec::with_capacity(total);
        let mut assign = vec![0usize; n];
        for code in 0..total {
            let mut c = code;
            for k in (0..n).rev() {
                assign[k] = c % size;
                c /= size;
            }
            let prod = pattern.perm.iter().fold(fg.identity(), |acc, &s| fg.mul(acc, assign[s - 1]));
            hits.push(bits.contains(prod));
        }
        Ok(Table { n, size, hits })
    }

    fn at(&self, assign: &[usize]) -> bool {
        self.hits[assign.iter().fold(0, |acc, &x| acc * self.size + x)]
    }

    fn tuples(&self, k: usize) -> Vec<Vec<usize>> {
        (0..k).map(|_| 0..self.size).multi_cartesian_product().collect()
    }

    /// Pure extreme over all assignments.
    fn extreme(&self, sup: bool) -> Rational {
        let v = if sup { self.hits.iter().any(|&h| h) } else { self.hits.iter().all(|&h| h) };
        int(v as i64)
    }
}

/// Outer player of a two-level evaluation.
struct Outer<'a> {
    positions: &'a [usize],
    quant: Quantifier,
}

/// `outer_{mu} inner_{pure tuple} F` with an optional fixed measure at one position.
fn level2(
    t: &Table,
    outer: Outer<'_>,
    inner: &[usize],
    inner_sup: bool,
    fixed: Option<(usize, &[Rational])>,
) -> Result<(Rational, Vec<Rational>)> {
    let outer_tuples = t.tuples(outer.positions.len());
    let inner_tuples = t.tuples(inner.len());
    let fixed_support: Vec<(usize, Rational)> = fixed
        .map(|(_, w)| w.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
        .unwrap_or_default();
    let mut assign = vec![0usize; t.n];
    let mut entries: Vec<Vec<Rational>> = Vec::with_capacity(outer_tuples.len());
    for o in &outer_tuples {
        let mut row = Vec::with_capacity(inner_tuples.len());
        for it in &inner_tuples {
            for (p, v) in outer.positions.iter().zip(o) {
                assign[*p] = *v;
            }
            for (p, v) in inner.iter().zip(it) {
                assign[*p] = *v;
            }
            let e = match fixed {
                None => int(t.at(&assign) as i64),
                Some((fp, _)) => {
                    let mut s = Rational::zero();
                    for (h, w) in &fixed_support {
                        assign[fp] = *h;
                        if t.at(&assign) {
                            s += w;
                        }
                    }
                    s
                }
            };
            row.push(e);
        }
        entries.push(row);
    }
    let outer_sup = outer.quant.is_sup();
    if outer_sup == inner_sup {
        let all = entries.iter().flatten();
        let v = if outer_sup { all.max() } else { all.min() }.cloned().expect("entries");
        let pos = entries
            .iter()
            .position(|r| r.contains(&v))
            .expect("extreme attained");
        let mut w = vec![Rational::zero(); outer_tuples.len()];
        w[pos] = int(1);
        return Ok((v, w));
    }
    if outer.quant == Quantifier::UniformInf {
        return uniform_outer(&entries);
    }
    if outer_sup {
        let cols = entries.len();
        let rows: Vec<Vec<Rational>> = (0..inner_tuples.len())
            .map(|j| (0..cols).map(|i| entries[i][j].clone()).collect())
            .collect();
        let sol = game_value(&GameMatrix::from_rows(rows)?);
        Ok((sol.value, sol.col_strategy))
    } else {
        let sol = game_value(&GameMatrix::from_rows(entries)?);
        Ok((sol.value, sol.row_strategy))
    }
}

fn uniform_outer(entries: &[Vec<Rational>]) -> Result<(Rational, Vec<Rational>)> {
    let n = entries.len();
    if n > UNIFORM_LIMIT {
        return Err(Error::Capacity(format!("uniform measures on {n} points")));
    }
    let width = entries[0].len();
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for k in 1..=n {
        for f in (0..n).combinations(k) {
            let mut worst = Rational::zero();
            for j in 0..width {
                let s: Rational = f.iter().map(|&i| &entries[i][j]).sum();
                if s > worst {
                    worst = s;
                }
            }
            let v = worst / Rational::from_integer((k as i64).into());
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, f));
            }
        }
    }
    let (v, f) = best.expect("non-empty");
    let mut w = vec![Rational::zero(); n];
    for &i in &f {
        w[i] = Rational::new(1.into(), (f.len() as i64).into());
    }
    Ok((v, w))
}

fn normalize(q: Quantifier) -> Quantifier {
    match q {
        Quantifier::InfAll => Quantifier::Inf,
        Quantifier::SupAll => Quantifier::Sup,
        other => other,
    }
}

/// Evaluates an extremal density on a finite group.
///
/// Lengths 1 and 2 and every length-3 pattern whose inner pair of
/// quantifiers points the same way are exact. The rest return an interval
/// between the best outer measure found (uniform sets up to `kmax`, then the
/// rational grid) and the bound obtained by swapping the two outer quantifiers.
pub fn eval_extremal(
    pattern: &ExtremalPattern,
    g: &Group,
    a: &Subset,
    budget: ExtremalBudget,
) -> Result<DensityResult> {
    let carrier = g
        .carrier()
        .ok_or_else(|| Error::Unsupported("extremal densities are evaluated on finite groups".into()))?;
    g.check_subset(a)?;
    let n = pattern.len();
    let mut q: Vec<Quantifier> = pattern.quants.iter().map(|&x| normalize(x)).collect();
    if q[n - 1] == Quantifier::UniformInf {
        q[n - 1] = Quantifier::Inf;
    }
    let t = Table::build(g, a, pattern)?;
    let els = carrier.elements();
    let measure = |w: &[Rational]| Measure::from_weights(els.iter().cloned().zip(w.iter().cloned())).ok();

    if n == 1 {
        return Ok(DensityResult::exact(t.extreme(q[0].is_sup()), Method::ClosedForm));
    }
    let d: Vec<bool> = q.iter().map(|x| x.is_sup()).collect();
    if d.iter().all(|&x| x == d[0]) {
        return Ok(DensityResult::exact(t.extreme(d[0]), Method::ClosedForm));
    }
    let game_method = |qq: Quantifier| if qq == Quantifier::UniformInf { Method::SubsetEnum } else { Method::LpGame };
    if n == 2 {
        let (v, w) = level2(&t, Outer { positions: &[0], quant: q[0] }, &[1], d[1], None)?;
        return Ok(DensityResult::exact(v, game_method(q[0]))
            .with_witness(Witness { measure: measure(&w), ..Witness::default() }));
    }
    if d[1] == d[2] {
        let (v, w) = level2(&t, Outer { positions: &[0], quant: q[0] }, &[1, 2], d[1], None)?;
        return Ok(DensityResult::exact(v, game_method(q[0]))
            .with_witness(Witness { measure: measure(&w), ..Witness::default() }));
    }

    // inner pair alternates: value = Q0_{mu0} V(mu0) with V an exact game
    let outer_sup = d[0];
    let swap = if d[0] == d[1] {
        let quant = if outer_sup { Quantifier::Sup } else { Quantifier::Inf };
        level2(&t, Outer { positions: &[0, 1], quant }, &[2], d[2], None)?.0
    } else {
        level2(&t, Outer { positions: &[1], quant: q[1] }, &[0, 2], d[0], None)?.0
    };
    let size = t.size;
    let den = if q[0] == Quantifier::UniformInf { 0 } else { budget.grid_denominator };
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for alpha in outer_candidates(size, budget.kmax, den) {
        let (v, _) = level2(&t, Outer { positions: &[1], quant: q[1] }, &[2], d[2], Some((0, &alpha)))?;
        let better = best.as_ref().is_none_or(|(b, _)| if outer_sup { v > *b } else { v < *b });
        if better {
            let done = v == swap;
            best = Some((v, alpha));
            if done {
                break;
            }
        }
    }
    let (cand, alpha) = best.expect("at least one candidate");
    let (lo, hi) = if outer_sup { (cand, swap) } else { (swap, cand) };
    let witness = Witness { measure: measure(&alpha), ..Witness::default() };
    let r = if lo == hi {
        DensityResult::exact(lo, Method::LpGame)
    } else {
        DensityResult::new(Value::Interval(lo, hi), Method::Grid)
    };
    Ok(r.with_witness(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dens::is12;
    use crate::rational::rat;

    fn pat(e: &str, s: &str) -> ExtremalPattern {
        ExtremalPattern::parse(e, s).unwrap()
    }

    #[test]
    fn constraint_on_full_measures() {
        assert!(ExtremalPattern::parse("Is", "12").is_err());
        assert!(ExtremalPattern::parse("iS", "12").is_ok());
        assert!(ExtremalPattern::parse("Ss", "21").is_ok());
        assert!(ExtremalPattern::parse("is", "11").is_err());
        assert!(ExtremalPattern::parse("issi", "1234").is_err());
        assert_eq!(pat("is", "12").to_string(), "is_12");
    }

    #[test]
    fn closed_forms() {
        let g = Group::cyclic(4).unwrap();
        let a = Subset::indices([0, 1]);
        let b = ExtremalBudget::default();
        assert_eq!(eval_extremal(&pat("i", "1"), &g, &a, b).unwrap().value, Value::Exact(int(0)));
        assert_eq!(eval_extremal(&pat("s", "1"), &g, &a, b).unwrap().value, Value::Exact(int(1)));
        assert_eq!(eval_extremal(&pat("i", "1"), &g, &Subset::full(), b).unwrap().value, Value::Exact(int(1)));
        assert_eq!(eval_extremal(&pat("s", "1"), &g, &Subset::empty(), b).unwrap().value, Value::Exact(int(0)));
    }

    #[test]
    fn two_level_patterns() {
        let b = ExtremalBudget::default();
        let c4 = Group::cyclic(4).unwrap();
        let a = Subset::indices([0, 2]);
        assert_eq!(eval_extremal(&pat("is", "12"), &c4, &a, b).unwrap().value, Value::Exact(rat(1, 2)));
        let c3 = Group::cyclic(3).unwrap();
        let a = Subset::indices([0]);
        assert_eq!(eval_extremal(&pat("si", "12"), &c3, &a, b).unwrap().value, Value::Exact(rat(1, 3)));
        assert_eq!(eval_extremal(&pat("us", "12"), &c3, &a, b).unwrap().value, Value::Exact(rat(1, 3)));
    }

    #[test]
    fn three_level_patterns_bracket_is12() {
        let b = ExtremalBudget { kmax: 4, grid_denominator: 2 };
        let s3 = Group::symmetric(3).unwrap();
        let a = Subset::indices([0, 1]);
        let is = is12(&s3, &a, None).unwrap().value.exact().cloned().unwrap();
        for p in ExtremalPattern::all(3) {
            let r = eval_extremal(&p, &s3, &a, b).unwrap();
            assert!(r.value.lo().unwrap() <= r.value.hi().unwrap(), "{p}");
            if p.to_string() == "sis_123" {
                assert!(r.value.admits(&is), "{p}: {:?}", r.value);
            }
        }
    }
}
