//! Exact rational linear programming and zero-sum matrix games.

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("malformed linear program: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }
}

/// `optimize objective . x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        LinearProgram { sense, objective, constraints: Vec::new() }
    }

    pub fn maximize(objective: Vec<Rational>) -> Self {
        Self::new(Sense::Maximize, objective)
    }

    pub fn minimize(objective: Vec<Rational>) -> Self {
        Self::new(Sense::Minimize, objective)
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    /// Optimal vertex.
    pub x: Vec<Rational>,
    /// Shadow price of each constraint: the rate of change of the optimal value
    /// per unit increase of its right-hand side.
    pub duals: Vec<Rational>,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    z: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn price(&mut self, cost: &[Rational]) {
        let w = self.width;
        let mut z: Vec<Rational> = cost.iter().map(|c| -c).collect();
        z.push(Rational::zero());
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=w {
                if !row[j].is_zero() {
                    z[j] += cb * &row[j];
                }
            }
        }
        self.z = z;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.width).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        }
        if !self.z[c].is_zero() {
            let f = self.z[c].clone();
            for &j in &nz {
                self.z[j] -= &f * &pivot_row[j];
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule simplex for maximization over the allowed columns.
    fn run(&mut self, allowed: &[bool]) -> Result<(), LpError> {
        let rhs = self.rhs();
        loop {
            let entering = (0..self.width).find(|&j| allowed[j] && self.z[j].is_negative());
            let Some(c) = entering else { return Ok(()) };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else { return Err(LpError::Unbounded) };
            self.pivot(r, c);
        }
    }
}

/// Two-phase dense simplex with exact pivoting and Bland's rule.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    let n = lp.num_vars();
    let m = lp.constraints.len();
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.coeffs.len() != n {
            return Err(LpError::Malformed(format!(
                "constraint {i} has {} coefficients, expected {n}",
                c.coeffs.len()
            )));
        }
    }
    let mut flipped = vec![false; m];
    let mut relations = Vec::with_capacity(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        let rel = if c.rhs.is_negative() {
            flipped[i] = true;
            match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            }
        } else {
            c.relation
        };
        relations.push(rel);
    }
    let n_slack = relations.iter().filter(|r| **r != Relation::Eq).count();
    let n_art = relations.iter().filter(|r| **r != Relation::Le).count();
    let width = n + n_slack + n_art;
    let mut rows = Vec::with_capacity(m);
    let mut unit = vec![0; m];
    let mut artificial = vec![false; width];
    let (mut next_slack, mut next_art) = (n, n + n_slack);
    for (i, c) in lp.constraints.iter().enumerate() {
        let sign = if flipped[i] { -Rational::one() } else { Rational::one() };
        let mut row: Vec<Rational> = c.coeffs.iter().map(|a| a * &sign).collect();
        row.resize(width + 1, Rational::zero());
        row[width] = &c.rhs * &sign;
        match relations[i] {
            Relation::Le => {
                row[next_slack] = Rational::one();
                unit[i] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_art] = Rational::one();
                artificial[next_art] = true;
                unit[i] = next_art;
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = Rational::one();
                artificial[next_art] = true;
                unit[i] = next_art;
                next_art += 1;
            }
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, z: Vec::new(), basis: unit.clone(), width };

    if n_art > 0 {
        let cost: Vec<Rational> = (0..width)
            .map(|j| if artificial[j] { -Rational::one() } else { Rational::zero() })
            .collect();
        t.price(&cost);
        t.run(&vec![true; width])?;
        if t.z[width].is_negative() {
            return Err(LpError::Infeasible);
        }
        for r in 0..m {
            if artificial[t.basis[r]] {
                if let Some(c) = (0..width).find(|&j| !artificial[j] && !t.rows[r][j].is_zero()) {
                    t.pivot(r, c);
                }
            }
        }
    }

    let negate = lp.sense == Sense::Minimize;
    let mut cost: Vec<Rational> = lp
        .objective
        .iter()
        .map(|c| if negate { -c } else { c.clone() })
        .collect();
    cost.resize(width, Rational::zero());
    t.price(&cost);
    let allowed: Vec<bool> = artificial.iter().map(|a| !a).collect();
    t.run(&allowed)?;

    let mut x = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rows[r][width].clone();
        }
    }
    let mut value = t.z[width].clone();
    let duals = (0..m)
        .map(|i| {
            let mut y = t.z[unit[i]].clone();
            if flipped[i] {
                y = -y;
            }
            if negate {
                y = -y;
            }
            y
        })
        .collect();
    if negate {
        value = -value;
    }
    Ok(LpSolution { value, x, duals })
}

#[derive(Debug, Clone, PartialEq)]
enum Payoffs {
    Binary(Vec<FixedBitSet>),
    Dense(Vec<Vec<Rational>>),
}

/// Payoff matrix of a zero-sum game. The row player minimizes.
#[derive(Debug, Clone, PartialEq)]
pub struct GameMatrix {
    rows: usize,
    cols: usize,
    payoffs: Payoffs,
}

impl GameMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LpError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(LpError::Malformed("game matrix must be at least 1x1".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(LpError::Malformed("ragged game matrix".into()));
        }
        Ok(GameMatrix { rows: r, cols: c, payoffs: Payoffs::Dense(rows) })
    }

    /// 0/1 game where `rows[i]` holds the columns with payoff 1.
    pub fn binary(cols: usize, rows: Vec<FixedBitSet>) -> Result<Self, LpError> {
        if rows.is_empty() || cols == 0 {
            return Err(LpError::Malformed("game matrix must be at least 1x1".into()));
        }
        let rows = rows
            .into_iter()
            .map(|mut b| {
                b.grow(cols);
                b
            })
            .collect::<Vec<_>>();
        if rows.iter().any(|b| b.len() != cols) {
            return Err(LpError::Malformed("binary row wider than the column count".into()));
        }
        Ok(GameMatrix { rows: rows.len(), cols, payoffs: Payoffs::Binary(rows) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        match &self.payoffs {
            Payoffs::Binary(b) => {
                if b[i].contains(j) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            Payoffs::Dense(d) => d[i][j].clone(),
        }
    }

    pub fn transpose(&self) -> GameMatrix {
        let payoffs = match &self.payoffs {
            Payoffs::Binary(b) => Payoffs::Binary(
                (0..self.cols)
                    .map(|j| {
                        let mut col = FixedBitSet::with_capacity(self.rows);
                        for (i, row) in b.iter().enumerate() {
                            col.set(i, row.contains(j));
                        }
                        col
                    })
                    .collect(),
            ),
            Payoffs::Dense(_) => Payoffs::Dense(
                (0..self.cols)
                    .map(|j| (0..self.rows).map(|i| self.entry(i, j)).collect())
                    .collect(),
            ),
        };
        GameMatrix { rows: self.cols, cols: self.rows, payoffs }
    }

    fn min_entry(&self) -> Rational {
        match &self.payoffs {
            Payoffs::Binary(b) => {
                if b.iter().all(|row| row.count_ones(..) == self.cols) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            Payoffs::Dense(d) => d.iter().flatten().min().cloned().unwrap_or_else(Rational::zero),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameSolution {
    pub value: Rational,
    /// Optimal mixed strategy of the minimizing row player.
    pub row_strategy: Vec<Rational>,
    /// Optimal mixed strategy of the maximizing column player.
    pub col_strategy: Vec<Rational>,
    /// Payoff of `row_strategy` against each pure column.
    pub col_payoffs: Vec<Rational>,
    /// Payoff of each pure row against `col_strategy`.
    pub row_payoffs: Vec<Rational>,
}

impl GameSolution {
    /// Exact strong-duality check: the row strategy concedes at most `value`
    /// and the column strategy secures at least `value`.
    pub fn verify(&self) -> bool {
        let upper = self.col_payoffs.iter().max();
        let lower = self.row_payoffs.iter().min();
        upper == Some(&self.value) && lower == Some(&self.value)
    }
}

/// Solves the game exactly; the row player minimizes the column payoff.
pub fn game_value(m: &GameMatrix) -> GameSolution {
    let (r, c) = (m.rows, m.cols);
    let shift = Rational::one() - m.min_entry();
    let shifted = |i: usize, j: usize| m.entry(i, j) + &shift;

    let (row_weights, col_weights) = if r <= c {
        // min 1.w s.t. M'w >= 1: column strategy in the primal, rows in the duals
        let mut lp = LinearProgram::minimize(vec![Rational::one(); c]);
        for i in 0..r {
            lp.constrain((0..c).map(|j| shifted(i, j)).collect(), Relation::Ge, Rational::one());
        }
        let sol = solve_lp(&lp).expect("positive games are feasible and bounded");
        (sol.duals, sol.x)
    } else {
        // max 1.u s.t. M'^T u <= 1
        let mut lp = LinearProgram::maximize(vec![Rational::one(); r]);
        for j in 0..c {
            lp.constrain((0..r).map(|i| shifted(i, j)).collect(), Relation::Le, Rational::one());
        }
        let sol = solve_lp(&lp).expect("positive games are feasible and bounded");
        (sol.x, sol.duals)
    };
    let normalize = |w: Vec<Rational>| {
        let total: Rational = w.iter().sum();
        w.into_iter().map(|x| x / &total).collect::<Vec<_>>()
    };
    let row_strategy = normalize(row_weights);
    let col_strategy = normalize(col_weights);
    let col_payoffs: Vec<Rational> = (0..c)
        .map(|j| {
            row_strategy
                .iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .map(|(i, w)| w * m.entry(i, j))
                .sum()
        })
        .collect();
    let row_payoffs: Vec<Rational> = (0..r)
        .map(|i| {
            col_strategy
                .iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .map(|(j, w)| w * m.entry(i, j))
                .sum()
        })
        .collect();
    let value = col_payoffs.iter().max().cloned().expect("at least one column");
    let sol = GameSolution { value, row_strategy, col_strategy, col_payoffs, row_payoffs };
    assert!(sol.verify(), "simplex returned strategies without a duality certificate");
    sol
}
