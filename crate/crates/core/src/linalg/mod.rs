//! Exact linear systems over the DVR O by column reduction with
//! minimal-valuation pivots.

use crate::coefficients::{CoeffConfig, DvrElement, Valuation};
use crate::error::{Error, Result};

/// A dense matrix with entries in O.
#[derive(Clone, Debug, PartialEq)]
pub struct DvrMatrix {
    config: CoeffConfig,
    rows: usize,
    cols: usize,
    /// Column-major storage.
    data: Vec<Vec<DvrElement>>,
}

impl DvrMatrix {
    pub fn zeros(config: CoeffConfig, rows: usize, cols: usize) -> Self {
        DvrMatrix { config, rows, cols, data: vec![vec![DvrElement::zero(config); rows]; cols] }
    }

    /// Builds a matrix from rows; every entry must lie in O.
    pub fn from_rows(config: CoeffConfig, rows: Vec<Vec<DvrElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(config, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for (j, e) in row.into_iter().enumerate() {
                m.set(i, j, e)?;
            }
        }
        Ok(m)
    }

    pub fn config(&self) -> CoeffConfig {
        self.config
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &DvrElement {
        &self.data[c][r]
    }

    pub fn set(&mut self, r: usize, c: usize, e: DvrElement) -> Result<()> {
        if e.config() != self.config {
            return Err(Error::ConfigMismatch);
        }
        if let Valuation::Finite(v) = e.valuation() {
            if v < 0 {
                return Err(Error::NegativeValuation(v));
            }
        }
        self.data[c][r] = e;
        Ok(())
    }

    pub fn column(&self, c: usize) -> &[DvrElement] {
        &self.data[c]
    }

    pub fn mul_vec(&self, x: &[DvrElement]) -> Result<Vec<DvrElement>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", x.len(), self.cols)));
        }
        let mut out = vec![DvrElement::zero(self.config); self.rows];
        for (col, xj) in self.data.iter().zip(x) {
            if xj.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(col) {
                if !a.is_zero() {
                    *o = &*o + &(a * xj);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    Solution(Vec<DvrElement>),
    /// `row` is the first equation that cannot be met over O. `gap` is the
    /// pivot valuation minus the residual valuation, or `None` when the
    /// system is inconsistent even over K.
    NoSolution {
        row: usize,
        gap: Option<i64>,
    },
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&[DvrElement]> {
        match self {
            SolveOutcome::Solution(x) => Some(x),
            SolveOutcome::NoSolution { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Pivot {
    row: usize,
    col: usize,
    val: i64,
}

/// `A·U = W` with `U` invertible over O and `W` lower triangular along the
/// pivot sequence; non-pivot columns of `W` vanish.
#[derive(Clone, Debug)]
pub struct DvrFactorization {
    config: CoeffConfig,
    rows: usize,
    cols: usize,
    w: Vec<Vec<DvrElement>>,
    u: Vec<Vec<DvrElement>>,
    pivots: Vec<Pivot>,
}

impl DvrFactorization {
    pub fn new(a: &DvrMatrix) -> Self {
        let config = a.config;
        let (rows, cols) = (a.rows, a.cols);
        let mut w = a.data.clone();
        let mut u: Vec<Vec<DvrElement>> =
            (0..cols).map(|j| (0..cols).map(|i| DvrElement::from_int(config, (i == j) as i64)).collect()).collect();
        let mut vals: Vec<Vec<Valuation>> = w.iter().map(|c| c.iter().map(|e| e.valuation()).collect()).collect();
        let mut row_open = vec![true; rows];
        let mut col_free = vec![true; cols];
        let mut pivots = Vec::new();
        loop {
            let mut best: Option<(i64, usize, usize)> = None;
            for (c, cv) in vals.iter().enumerate() {
                if !col_free[c] {
                    continue;
                }
                for (r, v) in cv.iter().enumerate() {
                    if let (true, Valuation::Finite(v)) = (row_open[r], v) {
                        if best.is_none_or(|b| (*v, r, c) < b) {
                            best = Some((*v, r, c));
                        }
                    }
                }
            }
            let Some((val, r, c)) = best else { break };
            row_open[r] = false;
            col_free[c] = false;
            let pivot = w[c][r].clone();
            for j in 0..cols {
                if !col_free[j] || w[j][r].is_zero() {
                    continue;
                }
                let q = w[j][r].div(&pivot).expect("pivot is nonzero");
                let (wc, uc) = (w[c].clone(), u[c].clone());
                for (x, y) in w[j].iter_mut().zip(&wc) {
                    if !y.is_zero() {
                        *x = &*x - &(&q * y);
                    }
                }
                for (x, y) in u[j].iter_mut().zip(&uc) {
                    if !y.is_zero() {
                        *x = &*x - &(&q * y);
                    }
                }
                vals[j] = w[j].iter().map(|e| e.valuation()).collect();
            }
            pivots.push(Pivot { row: r, col: c, val });
        }
        DvrFactorization { config, rows, cols, w, u, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[DvrElement]) -> Result<SolveOutcome> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("right side of length {} for {} rows", b.len(), self.rows)));
        }
        if let Some(bad) = b.iter().find(|e| !e.is_integral()) {
            return Err(Error::NegativeValuation(bad.valuation().finite().unwrap_or(0)));
        }
        let zero = DvrElement::zero(self.config);
        let mut residual = b.to_vec();
        let mut y = vec![zero.clone(); self.cols];
        for p in &self.pivots {
            let res = &residual[p.row];
            if res.is_zero() {
                continue;
            }
            let rv = res.valuation().finite().unwrap();
            if rv < p.val {
                return Ok(SolveOutcome::NoSolution { row: p.row, gap: Some(p.val - rv) });
            }
            let coef = res.div(&self.w[p.col][p.row]).expect("pivot is nonzero");
            for (r, wv) in self.w[p.col].iter().enumerate() {
                if !wv.is_zero() {
                    residual[r] = &residual[r] - &(&coef * wv);
                }
            }
            y[p.col] = coef;
        }
        if let Some(row) = residual.iter().position(|e| !e.is_zero()) {
            return Ok(SolveOutcome::NoSolution { row, gap: None });
        }
        let mut x = vec![zero; self.cols];
        for (uc, yc) in self.u.iter().zip(&y) {
            if yc.is_zero() {
                continue;
            }
            for (xi, ui) in x.iter_mut().zip(uc) {
                if !ui.is_zero() {
                    *xi = &*xi + &(ui * yc);
                }
            }
        }
        Ok(SolveOutcome::Solution(x))
    }
}

/// Solves `A·x = b` with `x` over O, or reports the obstruction.
pub fn solve_over_dvr(a: &DvrMatrix, b: &[DvrElement]) -> Result<SolveOutcome> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!("right side of length {} for {} rows", b.len(), a.rows)));
    }
    DvrFactorization::new(a).solve(b)
}
