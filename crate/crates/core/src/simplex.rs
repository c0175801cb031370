//! Exact two-phase revised simplex over arbitrary-precision rationals.
//!
//! Problems are given in equality form: maximize `c·x` subject to `A x = b`,
//! `x >= 0`, with an integer constraint matrix stored column-wise and a
//! rational right-hand side. Pivoting follows Bland's rule in both phases,
//! which rules out cycling on the highly degenerate covering programs this
//! crate builds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ratio::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub cost: i64,
    /// `(row, coefficient)` pairs; rows must be distinct.
    pub entries: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpError {
    Infeasible,
    Unbounded,
}

impl std::fmt::Display for LpError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LpError::Infeasible => f.write_str("infeasible"),
            LpError::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub objective: Rational,
    pub values: Vec<Rational>,
    /// One dual price per constraint row, in the original row orientation.
    pub duals: Vec<Rational>,
    pub pivots: usize,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    rows: usize,
    columns: Vec<Column>,
    rhs: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(rhs: Vec<Rational>) -> Self {
        LinearProgram {
            rows: rhs.len(),
            columns: Vec::new(),
            rhs,
        }
    }

    /// Appends a column and returns its index.
    pub fn add_column(&mut self, cost: i64, entries: Vec<(usize, i64)>) -> usize {
        debug_assert!(entries.iter().all(|&(r, _)| r < self.rows));
        self.columns.push(Column { cost, entries });
        self.columns.len() - 1
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn columns(&self) -> usize {
        self.columns.len()
    }

    pub fn solve(&self) -> Result<LpSolution, LpError> {
        Tableau::new(self).run()
    }
}

struct Tableau {
    rows: usize,
    /// Structural columns first, then one artificial column per row that lacked a unit column.
    columns: Vec<Column>,
    structural: usize,
    flipped: Vec<bool>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    binv: Vec<Vec<Rational>>,
    xb: Vec<Rational>,
    pivots: usize,
}

impl Tableau {
    fn new(lp: &LinearProgram) -> Self {
        let rows = lp.rows;
        let flipped: Vec<bool> = lp.rhs.iter().map(|b| b.is_negative()).collect();
        let mut columns: Vec<Column> = lp
            .columns
            .iter()
            .map(|c| Column {
                cost: c.cost,
                entries: c
                    .entries
                    .iter()
                    .map(|&(r, a)| (r, if flipped[r] { -a } else { a }))
                    .collect(),
            })
            .collect();
        let structural = columns.len();

        // Reuse any unit column as the initial basic variable of its row.
        let mut basis = vec![usize::MAX; rows];
        for (j, c) in columns.iter().enumerate() {
            if let [(r, 1)] = c.entries.as_slice() {
                if basis[*r] == usize::MAX {
                    basis[*r] = j;
                }
            }
        }
        for (r, slot) in basis.iter_mut().enumerate() {
            if *slot == usize::MAX {
                columns.push(Column {
                    cost: 0,
                    entries: vec![(r, 1)],
                });
                *slot = columns.len() - 1;
            }
        }
        let mut is_basic = vec![false; columns.len()];
        for &j in &basis {
            is_basic[j] = true;
        }
        let binv = (0..rows)
            .map(|r| {
                (0..rows)
                    .map(|k| if r == k { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        let xb = lp.rhs.iter().map(|b| b.abs()).collect();
        Tableau {
            rows,
            columns,
            structural,
            flipped,
            basis,
            is_basic,
            binv,
            xb,
            pivots: 0,
        }
    }

    fn is_artificial(&self, j: usize) -> bool {
        j >= self.structural
    }

    fn run(mut self) -> Result<LpSolution, LpError> {
        let artificial_count = self.columns.len() - self.structural;
        if artificial_count > 0 {
            let phase_one: Vec<i64> = (0..self.columns.len())
                .map(|j| if self.is_artificial(j) { -1 } else { 0 })
                .collect();
            self.optimize(&phase_one, true)?;
            let infeasibility: Rational = self
                .basis
                .iter()
                .zip(&self.xb)
                .filter(|(&j, _)| self.is_artificial(j))
                .map(|(_, x)| x.clone())
                .sum();
            if infeasibility.is_positive() {
                return Err(LpError::Infeasible);
            }
            self.drive_out_artificials();
        }
        let costs: Vec<i64> = (0..self.columns.len())
            .map(|j| if self.is_artificial(j) { 0 } else { self.columns[j].cost })
            .collect();
        self.optimize(&costs, false)?;

        let mut values = vec![Rational::zero(); self.structural];
        for (r, &j) in self.basis.iter().enumerate() {
            if j < self.structural {
                values[j] = self.xb[r].clone();
            }
        }
        let objective = values
            .iter()
            .zip(&self.columns)
            .filter(|(v, _)| !v.is_zero())
            .map(|(v, c)| v * Rational::from_integer(c.cost.into()))
            .sum();
        let duals = self
            .duals(&costs)
            .into_iter()
            .zip(&self.flipped)
            .map(|(y, &f)| if f { -y } else { y })
            .collect();
        Ok(LpSolution {
            objective,
            values,
            duals,
            pivots: self.pivots,
        })
    }

    /// `y = c_B B^-1`.
    fn duals(&self, costs: &[i64]) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.rows];
        for (r, &j) in self.basis.iter().enumerate() {
            let c = costs[j];
            if c == 0 {
                continue;
            }
            let c = Rational::from_integer(c.into());
            for (k, yk) in y.iter_mut().enumerate() {
                if !self.binv[r][k].is_zero() {
                    *yk += &c * &self.binv[r][k];
                }
            }
        }
        y
    }

    /// `B^-1 A_j`.
    fn column_in_basis(&self, j: usize) -> Vec<Rational> {
        let mut u = vec![Rational::zero(); self.rows];
        for &(k, a) in &self.columns[j].entries {
            let a = Rational::from_integer(a.into());
            for (r, ur) in u.iter_mut().enumerate() {
                if !self.binv[r][k].is_zero() {
                    *ur += &self.binv[r][k] * &a;
                }
            }
        }
        u
    }

    fn optimize(&mut self, costs: &[i64], allow_artificial: bool) -> Result<(), LpError> {
        loop {
            let y = self.duals(costs);
            let pricer = Pricer::new(&y);
            let entering = (0..self.columns.len()).find(|&j| {
                !self.is_basic[j]
                    && (allow_artificial || !self.is_artificial(j))
                    && pricer.improves(costs[j], &self.columns[j].entries)
            });
            let Some(entering) = entering else {
                return Ok(());
            };
            let u = self.column_in_basis(entering);
            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.rows {
                if !u[r].is_positive() {
                    continue;
                }
                let ratio = &self.xb[r] / &u[r];
                let better = match &leaving {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio || (ratio == *best_ratio && self.basis[r] < self.basis[*best])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            let Some((row, _)) = leaving else {
                return Err(LpError::Unbounded);
            };
            self.pivot(row, entering, &u);
        }
    }

    fn pivot(&mut self, row: usize, entering: usize, u: &[Rational]) {
        let pivot = u[row].clone();
        for v in self.binv[row].iter_mut() {
            if !v.is_zero() {
                *v /= &pivot;
            }
        }
        self.xb[row] /= &pivot;
        let pivot_row = self.binv[row].clone();
        let pivot_x = self.xb[row].clone();
        for r in 0..self.rows {
            if r == row || u[r].is_zero() {
                continue;
            }
            let factor = &u[r];
            for (v, p) in self.binv[r].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= factor * p;
                }
            }
            self.xb[r] -= factor * &pivot_x;
        }
        self.is_basic[self.basis[row]] = false;
        self.is_basic[entering] = true;
        self.basis[row] = entering;
        self.pivots += 1;
    }

    /// Replaces artificial basics (all at zero after a feasible phase one)
    /// with structural columns where the row is not redundant.
    fn drive_out_artificials(&mut self) {
        for row in 0..self.rows {
            if !self.is_artificial(self.basis[row]) {
                continue;
            }
            let replacement = (0..self.structural).filter(|&j| !self.is_basic[j]).find_map(|j| {
                let u = self.column_in_basis(j);
                (!u[row].is_zero()).then_some((j, u))
            });
            if let Some((j, u)) = replacement {
                self.pivot(row, j, &u);
            }
        }
    }
}

/// Reduced-cost test `c_j - y·A_j > 0` on a common denominator, using
/// machine integers when the scaled duals fit.
struct Pricer {
    scale: BigInt,
    scaled: Vec<BigInt>,
    small: Option<(i128, Vec<i128>)>,
}

impl Pricer {
    fn new(y: &[Rational]) -> Self {
        let scale = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scaled: Vec<BigInt> = y.iter().map(|v| v.numer() * (&scale / v.denom())).collect();
        let limit = BigInt::from(1u64 << 62);
        let fits = |b: &BigInt| b.abs() < limit;
        let small = (fits(&scale) && scaled.iter().all(fits)).then(|| {
            (
                scale.to_i128().unwrap(),
                scaled.iter().map(|b| b.to_i128().unwrap()).collect(),
            )
        });
        Pricer { scale, scaled, small }
    }

    fn improves(&self, cost: i64, entries: &[(usize, i64)]) -> bool {
        if let Some((scale, scaled)) = &self.small {
            let mut acc = (cost as i128).checked_mul(*scale);
            for &(r, a) in entries {
                acc = acc.and_then(|s| scaled[r].checked_mul(a as i128).and_then(|t| s.checked_sub(t)));
            }
            if let Some(v) = acc {
                return v > 0;
            }
        }
        let mut acc = BigInt::from(cost) * &self.scale;
        for &(r, a) in entries {
            acc -= &self.scaled[r] * a;
        }
        acc.is_positive()
    }
}
