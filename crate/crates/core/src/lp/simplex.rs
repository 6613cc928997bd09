use alloc::vec;
use alloc::vec::Vec;

use super::{LinearProgram, LpSolution, LpStatus, Relation, Sense, OPTIMALITY_TOLERANCE};

/// Smallest magnitude accepted as a pivot element.
const PIVOT_TOLERANCE: f64 = 1e-9;
/// Relative width of a ratio-test tie.
const RATIO_TIE: f64 = 1e-12;
/// Phase-one infeasibility threshold, relative to the largest right-hand side.
const PHASE_ONE_TOLERANCE: f64 = 1e-9;

struct Row {
    coefs: Vec<f64>,
    relation: Relation,
    rhs: f64,
}

/// Dense tableau `[A | b]` in canonical form for the current basis, plus the
/// reduced-cost row `[d | -z]`.
struct Tableau {
    rows: usize,
    width: usize,
    cells: Vec<f64>,
    basis: Vec<usize>,
    costs: Vec<f64>,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
    IterationLimit,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.width - 1
    }

    fn at(&self, row: usize, col: usize) -> f64 {
        self.cells[row * self.width + col]
    }

    /// Sets reduced costs for cost vector `c` under the current basis.
    fn price(&mut self, c: &[f64]) {
        self.costs.clear();
        self.costs.extend_from_slice(c);
        self.costs.resize(self.width, 0.0);
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = self.costs[b];
            if cb == 0.0 {
                continue;
            }
            let row = &self.cells[r * self.width..(r + 1) * self.width];
            for (d, a) in self.costs.iter_mut().zip(row) {
                *d -= cb * a;
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.width;
        let p = self.cells[row * w + col];
        for v in &mut self.cells[row * w..(row + 1) * w] {
            *v /= p;
        }
        self.cells[row * w + col] = 1.0;
        let pivot_row: Vec<f64> = self.cells[row * w..(row + 1) * w].to_vec();
        for r in 0..self.rows {
            if r == row {
                continue;
            }
            let factor = self.cells[r * w + col];
            if factor == 0.0 {
                continue;
            }
            for (v, a) in self.cells[r * w..(r + 1) * w].iter_mut().zip(&pivot_row) {
                *v -= factor * a;
            }
            self.cells[r * w + col] = 0.0;
        }
        let factor = self.costs[col];
        if factor != 0.0 {
            for (d, a) in self.costs.iter_mut().zip(&pivot_row) {
                *d -= factor * a;
            }
            self.costs[col] = 0.0;
        }
        self.basis[row] = col;
    }

    /// Bland's rule: lowest-index improving column enters; among tied minimum
    /// ratios the row whose basic variable has the lowest index leaves.
    fn run(&mut self, allowed_cols: usize, iterations: &mut usize, limit: usize) -> PhaseEnd {
        let rhs = self.rhs_col();
        loop {
            if *iterations >= limit {
                return PhaseEnd::IterationLimit;
            }
            let Some(col) = (0..allowed_cols).find(|&j| self.costs[j] < -OPTIMALITY_TOLERANCE) else {
                return PhaseEnd::Optimal;
            };
            let mut best: Option<f64> = None;
            for r in 0..self.rows {
                let a = self.at(r, col);
                if a > PIVOT_TOLERANCE {
                    let ratio = self.at(r, rhs).max(0.0) / a;
                    if best.is_none_or(|b| ratio < b) {
                        best = Some(ratio);
                    }
                }
            }
            let Some(min_ratio) = best else {
                return PhaseEnd::Unbounded;
            };
            let cutoff = min_ratio + RATIO_TIE * (1.0 + min_ratio);
            let leave = (0..self.rows)
                .filter(|&r| {
                    let a = self.at(r, col);
                    a > PIVOT_TOLERANCE && self.at(r, rhs).max(0.0) / a <= cutoff
                })
                .min_by_key(|&r| self.basis[r])
                .expect("minimum ratio row exists");
            self.pivot(leave, col);
            *iterations += 1;
        }
    }

    fn remove_row(&mut self, row: usize) {
        let w = self.width;
        self.cells.drain(row * w..(row + 1) * w);
        self.basis.remove(row);
        self.rows -= 1;
    }
}

fn standard_rows(lp: &LinearProgram) -> Vec<Row> {
    let n = lp.num_variables();
    let mut rows = Vec::with_capacity(lp.num_constraints() + n);
    for c in lp.constraints() {
        let mut coefs = vec![0.0; n];
        for (var, a) in c.terms() {
            coefs[var.index()] += a;
        }
        rows.push(Row {
            coefs,
            relation: c.relation(),
            rhs: c.rhs(),
        });
    }
    for (j, var) in lp.variables().iter().enumerate() {
        if let Some(upper) = var.upper {
            let mut coefs = vec![0.0; n];
            coefs[j] = 1.0;
            rows.push(Row {
                coefs,
                relation: Relation::Le,
                rhs: upper,
            });
        }
    }
    for row in &mut rows {
        if row.rhs < 0.0 {
            row.coefs.iter_mut().for_each(|a| *a = -*a);
            row.rhs = -row.rhs;
            row.relation = match row.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }
    rows
}

pub(super) fn solve(lp: &LinearProgram) -> LpSolution {
    let n = lp.num_variables();
    let rows = standard_rows(lp);
    let m = rows.len();
    let slacks = rows.iter().filter(|r| r.relation != Relation::Eq).count();
    let artificials = rows.iter().filter(|r| r.relation != Relation::Le).count();
    let art_start = n + slacks;
    let width = art_start + artificials + 1;

    let mut cells = vec![0.0; m * width];
    let mut basis = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (n, art_start);
    for (r, row) in rows.iter().enumerate() {
        let line = &mut cells[r * width..(r + 1) * width];
        line[..n].copy_from_slice(&row.coefs);
        line[width - 1] = row.rhs;
        match row.relation {
            Relation::Le => {
                line[next_slack] = 1.0;
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                line[next_slack] = -1.0;
                next_slack += 1;
                line[next_art] = 1.0;
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                line[next_art] = 1.0;
                basis.push(next_art);
                next_art += 1;
            }
        }
    }

    let mut tableau = Tableau {
        rows: m,
        width,
        cells,
        basis,
        costs: Vec::with_capacity(width),
    };
    let limit = 200 * (m + width).max(10);
    let mut iterations = 0;

    if artificials > 0 {
        let mut phase_one = vec![0.0; width];
        phase_one[art_start..width - 1].iter_mut().for_each(|c| *c = 1.0);
        tableau.price(&phase_one);
        match tableau.run(width - 1, &mut iterations, limit) {
            PhaseEnd::Optimal => {}
            // phase one is bounded below by zero
            PhaseEnd::Unbounded | PhaseEnd::IterationLimit => {
                return LpSolution::without_point(LpStatus::NumericalFailure)
            }
        }
        let infeasibility = -tableau.costs[width - 1];
        let scale = rows.iter().map(|r| r.rhs).fold(1.0, f64::max);
        if infeasibility > PHASE_ONE_TOLERANCE * scale {
            return LpSolution::without_point(LpStatus::Infeasible);
        }
        // drive zero-valued artificials out of the basis
        let mut r = 0;
        while r < tableau.rows {
            if tableau.basis[r] < art_start {
                r += 1;
                continue;
            }
            match (0..art_start).find(|&j| tableau.at(r, j).abs() > PIVOT_TOLERANCE) {
                Some(col) => {
                    tableau.pivot(r, col);
                    r += 1;
                }
                None => tableau.remove_row(r),
            }
        }
    }

    let mut costs = vec![0.0; width];
    for (j, c) in lp.objective().iter().enumerate() {
        costs[j] = match lp.sense() {
            Sense::Minimize => *c,
            Sense::Maximize => -*c,
        };
    }
    tableau.price(&costs);
    match tableau.run(art_start, &mut iterations, limit) {
        PhaseEnd::Optimal => {}
        PhaseEnd::Unbounded => return LpSolution::without_point(LpStatus::Unbounded),
        PhaseEnd::IterationLimit => return LpSolution::without_point(LpStatus::NumericalFailure),
    }

    let mut values = vec![0.0; n];
    for (r, &b) in tableau.basis.iter().enumerate() {
        if b < n {
            values[b] = tableau.at(r, width - 1);
        }
    }
    for v in &mut values {
        if *v < 0.0 && *v > -PIVOT_TOLERANCE {
            *v = 0.0;
        }
    }
    match lp.check_feasible(&values) {
        Ok(check) if check.feasible => LpSolution {
            status: LpStatus::Optimal,
            objective: lp.evaluate_objective(&values),
            values,
        },
        _ => LpSolution::without_point(LpStatus::NumericalFailure),
    }
}
