//! Minimax densities realized as matrix games.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_traits::Zero;

use super::domain::{
    game_result, measure_from, one_sided_domain, pair_columns, point_columns, solve_columns, trivial,
    two_sided_domain, Member, TwoSided,
};
use super::{Column, DensityResult, Method, Value, Witness};
use crate::error::{Error, Result};
use crate::grp::{Element, Group, Subset, Window};
use crate::meas::Measure;
use crate::rational::{int, Rational};
use crate::ratlp::{game_value, GameMatrix, LinearProgram, Relation};

fn closed_form(v: Rational) -> DensityResult {
    DensityResult::exact(v, Method::ClosedForm)
}

/// Support rows and whether they exhaust a finite carrier.
fn rows_for(g: &Group, support: Option<&Window>) -> Result<(Vec<Element>, bool)> {
    match (g.carrier(), support) {
        (Some(c), None) => Ok((c.elements().to_vec(), true)),
        (Some(c), Some(w)) => {
            for e in w.iter() {
                g.validate(e)?;
            }
            if w.is_empty() {
                return Err(Error::EmptySupport);
            }
            Ok((w.elements().to_vec(), w.len() == c.len()))
        }
        (None, Some(w)) => {
            for e in w.iter() {
                g.validate(e)?;
            }
            if w.is_empty() {
                return Err(Error::EmptySupport);
            }
            Ok((w.elements().to_vec(), false))
        }
        (None, None) => Err(Error::InvalidArgument(
            "a support window is required on infinite groups".into(),
        )),
    }
}

/// Evaluates `f` on the image of a periodic subset of `Z^d` in its finite quotient.
fn via_quotient(
    g: &Group,
    a: &Subset,
    f: impl Fn(&Group, &Subset) -> Result<DensityResult>,
) -> Result<Option<DensityResult>> {
    let Some(p) = a.period(g) else { return Ok(None) };
    let q = g.quotient_map(&p)?;
    let image = q.project_subset(g, a)?;
    let mut r = f(q.target(), &image)?;
    r.method = Method::Quotient;
    if let Some(m) = r.witness.measure.take() {
        r.witness.measure = Some(m.push_forward(|x| q.lift(x))?);
    }
    let lift_col = |c: Column| -> Result<Column> {
        Ok(match c {
            Column::Point(x) => Column::Point(q.lift(&x)?),
            Column::Pair(x, y) => Column::Pair(q.lift(&x)?, q.lift(&y)?),
        })
    };
    r.witness.dual = std::mem::take(&mut r.witness.dual)
        .into_iter()
        .map(|(c, w)| Ok((lift_col(c)?, w)))
        .collect::<Result<_>>()?;
    r.witness.points = r.witness.points.iter().map(|x| q.lift(x)).collect::<Result<_>>()?;
    Ok(Some(r))
}

/// `is12(A) = inf_mu sup_x (mu * delta_x)(A)` over measures supported on `support`.
///
/// Exact on finite groups with full support and on periodic subsets of `Z^d`
/// (through the quotient); an upper bound over any other support window.
pub fn is12(g: &Group, a: &Subset, support: Option<&Window>) -> Result<DensityResult> {
    if let Some(v) = trivial(g, a)? {
        return Ok(closed_form(v));
    }
    if support.is_none() && !g.is_finite() {
        if let Some(r) = via_quotient(g, a, |q, s| is12(q, s, None))? {
            return Ok(r);
        }
    }
    let (rows, full) = rows_for(g, support)?;
    let cols = match support {
        Some(w) => one_sided_domain(g, a, w)?,
        None => g.carrier().expect("finite").elements().to_vec(),
    };
    let m = Member::new(g, a)?;
    let (bits, labels) = point_columns(g, &m, &rows, &cols)?;
    let sol = solve_columns(rows.len(), &bits)?;
    Ok(game_result(&sol, &rows, labels, full, Method::LpGame))
}

/// `Si21(A) = sup_nu inf_x nu(xA)` on a finite group, solved as its own LP.
pub fn si21(g: &Group, a: &Subset) -> Result<DensityResult> {
    let carrier = g
        .carrier()
        .ok_or_else(|| Error::Unsupported("si21 is computed on finite groups only".into()))?;
    if let Some(v) = trivial(g, a)? {
        return Ok(closed_form(v));
    }
    let n = carrier.len();
    let m = Member::new(g, a)?;
    // variables: nu_y for y in G, then t
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = int(1);
    let mut lp = LinearProgram::maximize(objective);
    for x in carrier.iter() {
        let xi = g.inv(x);
        let mut row = Vec::with_capacity(n + 1);
        for y in carrier.iter() {
            row.push(if m.test(&g.mul(&xi, y))? { int(1) } else { int(0) });
        }
        row.push(int(-1));
        lp.constrain(row, Relation::Ge, int(0));
    }
    let mut ones = vec![int(1); n];
    ones.push(int(0));
    lp.constrain(ones, Relation::Eq, int(1));
    let sol = crate::ratlp::solve_lp(&lp)?;
    let witness = Witness { measure: measure_from(carrier.elements(), &sol.x[..n]), ..Witness::default() };
    Ok(DensityResult::exact(sol.value, Method::LpGame).with_witness(witness))
}

fn column_masks(bits: &[FixedBitSet], rows: usize) -> Result<Vec<u64>> {
    if rows > 64 {
        return Err(Error::Capacity(format!("subset enumeration over {rows} support points")));
    }
    Ok(bits.iter().map(|b| b.ones().fold(0u64, |acc, i| acc | (1 << i))).collect())
}

/// `min_F max_c |F cap c| / |F|` over non-empty `F` with `|F| <= kmax`.
fn uniform_minimax(rows: usize, masks: &[u64], kmax: usize) -> (Rational, Vec<usize>) {
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    'outer: for k in 1..=kmax.min(rows) {
        for combo in (0..rows).combinations(k) {
            let f = combo.iter().fold(0u64, |acc, &i| acc | (1 << i));
            let hits = masks.iter().map(|c| (c & f).count_ones() as usize).max().unwrap_or(0);
            let better = match &best {
                None => true,
                Some((bh, bk, _)) => hits * bk < bh * k,
            };
            if better {
                best = Some((hits, k, combo));
                if hits == 0 {
                    break 'outer;
                }
            }
        }
    }
    let (h, k, f) = best.expect("at least one support point");
    (Rational::new((h as i64).into(), (k as i64).into()), f)
}

fn uniform_result(rows: &[Element], value: Rational, f: Vec<usize>, exact: bool) -> DensityResult {
    let pts: Vec<Element> = f.iter().map(|&i| rows[i].clone()).collect();
    let value = if exact { Value::Exact(value) } else { Value::UpperBound(value) };
    DensityResult::new(value, Method::SubsetEnum).with_witness(Witness {
        measure: Measure::uniform(pts.clone()).ok(),
        points: pts,
        ..Witness::default()
    })
}

/// `us12`: the infimum of `is12`'s game restricted to uniform measures on
/// subsets of `support` of size at most `kmax`.
pub fn us12(g: &Group, a: &Subset, kmax: usize, support: Option<&Window>) -> Result<DensityResult> {
    if kmax == 0 {
        return Err(Error::InvalidArgument("kmax must be at least 1".into()));
    }
    if let Some(v) = trivial(g, a)? {
        return Ok(closed_form(v));
    }
    let (rows, full) = rows_for(g, support)?;
    let cols = match support {
        Some(w) => one_sided_domain(g, a, w)?,
        None => g.carrier().expect("finite").elements().to_vec(),
    };
    let m = Member::new(g, a)?;
    let (bits, _) = point_columns(g, &m, &rows, &cols)?;
    let masks = column_masks(&bits, rows.len())?;
    let (value, f) = uniform_minimax(rows.len(), &masks, kmax);
    Ok(uniform_result(&rows, value, f, full && kmax >= rows.len()))
}

/// The Solecki submeasure `iss213(A) = inf_mu sup_{x,y} (mu * delta_y)(xA)`,
/// solved as the game with two-sided shifts as test points.
pub fn iss213(g: &Group, a: &Subset, support: Option<&Window>) -> Result<DensityResult> {
    if let Some(v) = trivial(g, a)? {
        return Ok(closed_form(v));
    }
    if support.is_none() && !g.is_finite() {
        if let Some(r) = via_quotient(g, a, |q, s| iss213(q, s, None))? {
            return Ok(r);
        }
    }
    let (rows, full) = rows_for(g, support)?;
    let m = Member::new(g, a)?;
    let (bits, labels) = match (g.is_finite(), support) {
        (true, _) => pair_columns(g, &m, &rows)?,
        (false, Some(w)) => match two_sided_domain(g, a, w)? {
            TwoSided::Reduced(cols) => {
                let (bits, labels) = point_columns(g, &m, &rows, &cols)?;
                let e = g.identity();
                let labels = labels
                    .into_iter()
                    .map(|c| match c {
                        Column::Point(x) => Column::Pair(x, e.clone()),
                        other => other,
                    })
                    .collect();
                (bits, labels)
            }
            TwoSided::Saturated(x, y) => {
                return Ok(saturated(&rows, x, y));
            }
        },
        (false, None) => unreachable!("rows_for rejects this case"),
    };
    let sol = solve_columns(rows.len(), &bits)?;
    Ok(game_result(&sol, &rows, labels, full, Method::LpGame))
}

fn saturated(rows: &[Element], x: Element, y: Element) -> DensityResult {
    DensityResult::new(Value::UpperBound(int(1)), Method::LpGame).with_witness(Witness {
        measure: Measure::uniform(rows.to_vec()).ok(),
        dual: vec![(Column::Pair(x, y), int(1))],
        ..Witness::default()
    })
}

/// Solecki's uniform form `inf_F max_{x,y} |F cap xAy| / |F|` over subsets of
/// `support` of size at most `kmax`.
pub fn uss213_search(g: &Group, a: &Subset, kmax: usize, support: Option<&Window>) -> Result<DensityResult> {
    if kmax == 0 {
        return Err(Error::InvalidArgument("kmax must be at least 1".into()));
    }
    if let Some(v) = trivial(g, a)? {
        return Ok(closed_form(v));
    }
    let (rows, full) = rows_for(g, support)?;
    let m = Member::new(g, a)?;
    let bits = match (g.is_finite(), support) {
        (true, _) => pair_columns(g, &m, &rows)?.0,
        (false, Some(w)) => match two_sided_domain(g, a, w)? {
            TwoSided::Reduced(cols) => point_columns(g, &m, &rows, &cols)?.0,
            TwoSided::Saturated(x, y) => {
                let mut r = saturated(&rows, x, y);
                r.method = Method::SubsetEnum;
                r.witness.measure = Some(Measure::dirac(rows[0].clone()));
                r.witness.points = vec![rows[0].clone()];
                return Ok(r);
            }
        },
        (false, None) => unreachable!("rows_for rejects this case"),
    };
    let masks = column_masks(&bits, rows.len())?;
    let (value, f) = uniform_minimax(rows.len(), &masks, kmax);
    Ok(uniform_result(&rows, value, f, full && kmax >= rows.len()))
}

/// All weight vectors `w / q` with `w` a composition of `q` into `n` parts.
pub(crate) fn grid_measures(n: usize, q: usize) -> Vec<Vec<Rational>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(n, q, &mut Vec::with_capacity(n), &mut raw);
    raw.into_iter()
        .map(|w| w.into_iter().map(|k| Rational::new((k as i64).into(), (q as i64).into())).collect())
        .collect()
}

/// Candidate outer measures on a finite carrier: uniform on subsets of size
/// at most `kmax`, then grid measures with denominators up to `den`.
pub(crate) fn outer_candidates(n: usize, kmax: usize, den: usize) -> impl Iterator<Item = Vec<Rational>> {
    let uniform = (1..=kmax.min(n)).flat_map(move |k| {
        (0..n).combinations(k).map(move |c| {
            let mut w = vec![Rational::zero(); n];
            for i in c {
                w[i] = Rational::new(1.into(), (k as i64).into());
            }
            w
        })
    });
    let mut seen: HashSet<Vec<Rational>> = HashSet::new();
    uniform
        .chain((1..=den).flat_map(move |q| grid_measures(n, q)))
        .filter(move |w| seen.insert(w.clone()))
}

/// `sis123(A) = sup_mu1 inf_mu2 sup_mu3 (mu1 * mu2 * mu3)(A)` on a finite group.
///
/// The lower end maximizes the exact inner game over candidate `mu1`; the upper
/// end is `iss213(A)`.
pub fn sis123(g: &Group, a: &Subset, kmax: usize, grid_denominator: usize) -> Result<DensityResult> {
    let carrier = g
        .carrier()
        .ok_or_else(|| Error::Unsupported("sis123 is computed on finite groups only".into()))?;
    if let Some(v) = trivial(g, a)? {
        return Ok(closed_form(v));
    }
    let upper = iss213(g, a, None)?
        .value
        .exact()
        .cloned()
        .expect("iss213 is exact on finite groups");
    let m = Member::new(g, a)?;
    let els = carrier.elements();
    let n = els.len();
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for alpha in outer_candidates(n, kmax, grid_denominator) {
        let v = sis_inner(g, &m, els, &alpha)?;
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            let done = v == upper;
            best = Some((v, alpha));
            if done {
                break;
            }
        }
    }
    let (lower, alpha) = best.expect("at least one candidate");
    let witness = Witness { measure: measure_from(els, &alpha), ..Witness::default() };
    Ok(DensityResult::new(Value::Interval(lower, upper), Method::Grid).with_witness(witness))
}

/// `inf_mu2 sup_x (mu1 * mu2 * delta_x)(A)` for fixed `mu1 = alpha`.
fn sis_inner(g: &Group, m: &Member<'_>, els: &[Element], alpha: &[Rational]) -> Result<Rational> {
    let support: Vec<(&Element, &Rational)> = els.iter().zip(alpha).filter(|(_, w)| !w.is_zero()).collect();
    let mut rows = Vec::with_capacity(els.len());
    for h in els {
        let mut row = Vec::with_capacity(els.len());
        for x in els {
            let mut s = Rational::zero();
            for (gi, w) in &support {
                if m.test(&g.mul(&g.mul(gi, h), x))? {
                    s += *w;
                }
            }
            row.push(s);
        }
        rows.push(row);
    }
    Ok(game_value(&GameMatrix::from_rows(rows)?).value)
}
