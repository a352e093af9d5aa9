//! Extremal densities and submeasures: exact values on finite groups and
//! certified bounds on windows of infinite groups.

mod approx;
mod domain;
mod extremal;
mod games;
mod kelley;

pub use approx::{dstar_window, subadditivize};
pub use extremal::{eval_extremal, ExtremalBudget, ExtremalPattern, Quantifier};
pub use games::{is12, iss213, si21, sis123, us12, uss213_search};
pub use kelley::{kelley_bruteforce, kelley_lp, translate_family};

use crate::grp::Element;
use crate::meas::Measure;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Exact(Rational),
    UpperBound(Rational),
    LowerBound(Rational),
    Interval(Rational, Rational),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Exact(_) => "exact",
            Value::UpperBound(_) => "upper",
            Value::LowerBound(_) => "lower",
            Value::Interval(..) => "interval",
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(v) => Some(v),
            _ => None,
        }
    }

    /// Best known lower bound on the true value.
    pub fn lo(&self) -> Option<&Rational> {
        match self {
            Value::Exact(v) | Value::LowerBound(v) | Value::Interval(v, _) => Some(v),
            Value::UpperBound(_) => None,
        }
    }

    /// Best known upper bound on the true value.
    pub fn hi(&self) -> Option<&Rational> {
        match self {
            Value::Exact(v) | Value::UpperBound(v) | Value::Interval(_, v) => Some(v),
            Value::LowerBound(_) => None,
        }
    }

    /// Whether `r` is consistent with this value.
    pub fn admits(&self, r: &Rational) -> bool {
        self.lo().is_none_or(|lo| lo <= r) && self.hi().is_none_or(|hi| r <= hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    LpGame,
    Quotient,
    SubsetEnum,
    Grid,
    Oracle,
    ClosedForm,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::LpGame => "lp-game",
            Method::Quotient => "quotient",
            Method::SubsetEnum => "subset-enum",
            Method::Grid => "grid",
            Method::Oracle => "oracle",
            Method::ClosedForm => "closed-form",
        }
    }
}

/// A test point of a density game: one shift `x`, or a two-sided shift `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Point(Element),
    Pair(Element, Element),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witness {
    /// Optimal (or best found) measure of the outer player.
    pub measure: Option<Measure>,
    /// Optimal mixed strategy over test points.
    pub dual: Vec<(Column, Rational)>,
    /// Distinguished elements, e.g. the finite set of a uniform optimum.
    pub points: Vec<Element>,
    /// Auxiliary sequence: Kelley weights or ladder rung values.
    pub trace: Vec<Rational>,
}

/// Exact strong-duality bounds of a solved game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Largest payoff the outer strategy concedes.
    pub upper: Rational,
    /// Smallest payoff the dual strategy secures.
    pub lower: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityResult {
    pub value: Value,
    pub method: Method,
    pub witness: Witness,
    pub certificate: Option<Certificate>,
}

impl DensityResult {
    pub fn new(value: Value, method: Method) -> Self {
        DensityResult { value, method, witness: Witness::default(), certificate: None }
    }

    pub fn exact(v: Rational, method: Method) -> Self {
        Self::new(Value::Exact(v), method)
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = witness;
        self
    }
}
