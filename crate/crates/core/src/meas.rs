//! Finitely supported probability measures with exact weights.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grp::{Element, Group, Subset};
use crate::rational::Rational;

/// A probability measure with finite support. Weights are positive and sum to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Measure {
    weights: BTreeMap<Element, Rational>,
}

impl Measure {
    pub fn dirac(x: Element) -> Measure {
        let mut weights = BTreeMap::new();
        weights.insert(x, Rational::one());
        Measure { weights }
    }

    pub fn uniform(support: impl IntoIterator<Item = Element>) -> Result<Measure> {
        let pts: Vec<Element> = support.into_iter().collect();
        if pts.is_empty() {
            return Err(Error::EmptySupport);
        }
        let w = Rational::new(1.into(), (pts.len() as i64).into());
        let mut weights = BTreeMap::new();
        for p in pts {
            if weights.insert(p.clone(), w.clone()).is_some() {
                return Err(Error::InvalidMeasure(format!("duplicate support point {p:?}")));
            }
        }
        Ok(Measure { weights })
    }

    /// Builds a measure from explicit weights; zero weights are dropped,
    /// negative weights or a total other than 1 are rejected.
    pub fn from_weights(pairs: impl IntoIterator<Item = (Element, Rational)>) -> Result<Measure> {
        let mut weights = BTreeMap::new();
        let mut total = Rational::zero();
        for (x, w) in pairs {
            if w.is_negative() {
                return Err(Error::InvalidMeasure(format!("negative weight at {x:?}")));
            }
            total += &w;
            if w.is_zero() {
                continue;
            }
            if weights.insert(x.clone(), w).is_some() {
                return Err(Error::InvalidMeasure(format!("duplicate support point {x:?}")));
            }
        }
        if weights.is_empty() {
            return Err(Error::EmptySupport);
        }
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}")));
        }
        Ok(Measure { weights })
    }

    fn accumulate(pairs: impl IntoIterator<Item = (Element, Rational)>) -> Measure {
        let mut weights: BTreeMap<Element, Rational> = BTreeMap::new();
        for (x, w) in pairs {
            *weights.entry(x).or_insert_with(Rational::zero) += w;
        }
        weights.retain(|_, w| !w.is_zero());
        Measure { weights }
    }

    pub fn weight(&self, x: &Element) -> Rational {
        self.weights.get(x).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.weights.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, &Rational)> {
        self.weights.iter()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.weights.values().sum()
    }

    /// `mu(A)`.
    pub fn eval(&self, g: &Group, a: &Subset) -> Result<Rational> {
        if g.is_finite() {
            let bits = g.finite_bits(a)?;
            let mut s = Rational::zero();
            for (x, w) in &self.weights {
                g.validate(x)?;
                if bits.contains(x.as_index().expect("validated")) {
                    s += w;
                }
            }
            return Ok(s);
        }
        let mut s = Rational::zero();
        for (x, w) in &self.weights {
            if g.contains(a, x)? {
                s += w;
            }
        }
        Ok(s)
    }

    /// Image measure under `f`.
    pub fn push_forward(&self, mut f: impl FnMut(&Element) -> Result<Element>) -> Result<Measure> {
        let mut pairs = Vec::with_capacity(self.len());
        for (x, w) in &self.weights {
            pairs.push((f(x)?, w.clone()));
        }
        Ok(Measure::accumulate(pairs))
    }
}

/// `mu * nu`: the image of the product measure under multiplication.
pub fn convolve(g: &Group, mu: &Measure, nu: &Measure) -> Result<Measure> {
    let mut pairs = Vec::with_capacity(mu.len() * nu.len());
    for (x, a) in mu.iter() {
        g.validate(x)?;
        for (y, b) in nu.iter() {
            g.validate(y)?;
            pairs.push((g.mul(x, y), a * b));
        }
    }
    Ok(Measure::accumulate(pairs))
}

/// The evaluator `x -> (mu * delta_x)(A) = sum_i alpha_i [g_i x in A]`.
pub fn act_convolve<'a>(
    g: &'a Group,
    mu: &'a Measure,
    a: &'a Subset,
) -> impl Fn(&Element) -> Result<Rational> + 'a {
    move |x: &Element| {
        g.validate(x)?;
        let mut s = Rational::zero();
        for (h, w) in mu.iter() {
            if g.contains(a, &g.mul(h, x))? {
                s += w;
            }
        }
        Ok(s)
    }
}

/// `max_s |mu(sA) - mu(A)|` over the given shifts.
pub fn invariance_defect(g: &Group, mu: &Measure, a: &Subset, shifts: &[Element]) -> Result<Rational> {
    let base = mu.eval(g, a)?;
    let mut worst = Rational::zero();
    for s in shifts {
        g.validate(s)?;
        let moved = mu.eval(g, &Subset::translate(s.clone(), a.clone()))?;
        let d = (moved - &base).abs();
        if d > worst {
            worst = d;
        }
    }
    Ok(worst)
}
