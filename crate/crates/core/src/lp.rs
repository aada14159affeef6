//! Dense two-phase primal simplex.
//!
//! Problems are stored with sparse rows and general variable bounds; the
//! solver converts them to standard form (nonnegative columns, nonnegative
//! right-hand sides), finds a feasible basis with artificial variables and
//! then optimizes the real objective on the same tableau.
//!
//! Entering columns are chosen by most negative reduced cost; after a run of
//! degenerate pivots the solver switches to Bland's rule until the objective
//! moves again, so it cannot cycle. Both rules are deterministic.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-7;
const DEGENERATE_STREAK: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    /// `(variable, coefficient)` pairs, at most one per variable.
    pub coeffs: Vec<(usize, f64)>,
    pub sense: RowSense,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// Amount by which `x` violates the row (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs = self.activity(x);
        match self.sense {
            RowSense::Le => (lhs - self.rhs).max(0.0),
            RowSense::Ge => (self.rhs - lhs).max(0.0),
            RowSense::Eq => (lhs - self.rhs).abs(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem {
    num_vars: usize,
    objective: Vec<f64>,
    sense: Objective,
    constraints: Vec<Constraint>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    names: Option<Vec<String>>,
}

impl LpProblem {
    /// A problem with `num_vars` variables bounded to `[0, inf)` and a zero
    /// objective.
    pub fn new(num_vars: usize, sense: Objective) -> Self {
        LpProblem {
            num_vars,
            objective: vec![0.0; num_vars],
            sense,
            constraints: Vec::new(),
            lower: vec![0.0; num_vars],
            upper: vec![f64::INFINITY; num_vars],
            names: None,
        }
    }

    /// Appends a variable and returns its index.
    pub fn add_var(&mut self, cost: f64, lower: f64, upper: f64) -> usize {
        self.num_vars += 1;
        self.objective.push(cost);
        self.lower.push(lower);
        self.upper.push(upper);
        if let Some(n) = self.names.as_mut() {
            n.push(format!("x{}", self.num_vars - 1));
        }
        self.num_vars - 1
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn sense(&self) -> Objective {
        self.sense
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn set_cost(&mut self, var: usize, cost: f64) {
        self.objective[var] = cost;
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Adds a row; repeated variables are merged and zero entries dropped.
    pub fn add_constraint(&mut self, coeffs: &[(usize, f64)], sense: RowSense, rhs: f64) {
        let mut merged: Vec<(usize, f64)> = coeffs.to_vec();
        merged.sort_by_key(|&(j, _)| j);
        let mut out: Vec<(usize, f64)> = Vec::with_capacity(merged.len());
        for (j, a) in merged {
            assert!(j < self.num_vars, "variable {j} out of range");
            match out.last_mut() {
                Some(last) if last.0 == j => last.1 += a,
                _ => out.push((j, a)),
            }
        }
        out.retain(|&(_, a)| a != 0.0);
        self.constraints.push(Constraint {
            coeffs: out,
            sense,
            rhs,
        });
    }

    pub fn bounds(&self, var: usize) -> (f64, f64) {
        (self.lower[var], self.upper[var])
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }

    pub fn set_name(&mut self, var: usize, name: impl Into<String>) {
        let n = self.num_vars;
        let names = self
            .names
            .get_or_insert_with(|| (0..n).map(|j| format!("x{j}")).collect());
        names[var] = name.into();
    }

    pub fn name(&self, var: usize) -> String {
        match &self.names {
            Some(n) => n[var].clone(),
            None => format!("x{var}"),
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Same problem with the rows in a different order.
    pub fn with_rows_permuted(&self, order: &[usize]) -> LpProblem {
        let mut p = self.clone();
        p.constraints = order.iter().map(|&r| self.constraints[r].clone()).collect();
        p
    }

    /// CPLEX LP text.
    pub fn to_cplex_lp(&self, title: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "\\Problem name: {title}");
        let _ = writeln!(
            s,
            "{}",
            match self.sense {
                Objective::Minimize => "Minimize",
                Objective::Maximize => "Maximize",
            }
        );
        let terms: Vec<(usize, f64)> = self
            .objective
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(j, &c)| (j, c))
            .collect();
        let _ = writeln!(s, " obj: {}", self.linear_expr(&terms));
        let _ = writeln!(s, "Subject To");
        for (r, c) in self.constraints.iter().enumerate() {
            let op = match c.sense {
                RowSense::Le => "<=",
                RowSense::Eq => "=",
                RowSense::Ge => ">=",
            };
            let _ = writeln!(s, " c{r}: {} {op} {}", self.linear_expr(&c.coeffs), fmt_num(c.rhs));
        }
        let _ = writeln!(s, "Bounds");
        for j in 0..self.num_vars {
            let (lo, hi) = (self.lower[j], self.upper[j]);
            let name = self.name(j);
            if lo == 0.0 && hi == f64::INFINITY {
                continue;
            }
            if lo == f64::NEG_INFINITY && hi == f64::INFINITY {
                let _ = writeln!(s, " {name} free");
            } else {
                let l = if lo == f64::NEG_INFINITY {
                    String::from("-inf")
                } else {
                    fmt_num(lo)
                };
                let h = if hi == f64::INFINITY {
                    String::from("+inf")
                } else {
                    fmt_num(hi)
                };
                let _ = writeln!(s, " {l} <= {name} <= {h}");
            }
        }
        let _ = writeln!(s, "End");
        s
    }

    fn linear_expr(&self, terms: &[(usize, f64)]) -> String {
        if terms.is_empty() {
            return String::from("0 x0");
        }
        let mut s = String::new();
        for (n, &(j, a)) in terms.iter().enumerate() {
            let sign = if a < 0.0 { "-" } else { "+" };
            if n == 0 && a >= 0.0 {
                let _ = write!(s, "{} {}", fmt_num(a), self.name(j));
            } else {
                let _ = write!(s, " {sign} {} {}", fmt_num(a.abs()), self.name(j));
            }
        }
        s
    }
}

fn fmt_num(v: f64) -> String {
    format!("{v:?}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective_value: f64,
    pub values: Vec<f64>,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyReport {
    pub max_residual: f64,
    pub max_bound_violation: f64,
}

impl VerifyReport {
    pub fn within(&self, residual_tol: f64, bound_tol: f64) -> bool {
        self.max_residual <= residual_tol && self.max_bound_violation <= bound_tol
    }
}

pub fn verify_solution(p: &LpProblem, s: &LpSolution) -> VerifyReport {
    let max_residual = p
        .constraints
        .iter()
        .map(|c| c.violation(&s.values))
        .fold(0.0, f64::max);
    let max_bound_violation = (0..p.num_vars)
        .map(|j| {
            let v = s.values[j];
            (p.lower[j] - v).max(v - p.upper[j]).max(0.0)
        })
        .fold(0.0, f64::max);
    VerifyReport {
        max_residual,
        max_bound_violation,
    }
}

// How an original variable is expressed through standard-form columns.
#[derive(Clone, Copy)]
enum VarMap {
    Shift { col: usize, lower: f64 },
    Mirror { col: usize, upper: f64 },
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: usize,
    cols: usize,
    // rows * (cols + 1), rhs in the last column
    data: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cols + 1
    }

    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.width() + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.data[r * self.width() + self.cols]
    }

    fn pivot(&mut self, pr: usize, pc: usize, cost: &mut [f64], obj: &mut f64) {
        let w = self.width();
        let inv = 1.0 / self.data[pr * w + pc];
        for v in &mut self.data[pr * w..(pr + 1) * w] {
            *v *= inv;
        }
        self.data[pr * w + pc] = 1.0;
        let pivot_row: Vec<(usize, f64)> = self.data[pr * w..(pr + 1) * w]
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(c, &v)| (c, v))
            .collect();
        for r in 0..self.rows {
            if r == pr {
                continue;
            }
            let f = self.data[r * w + pc];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.data[r * w..(r + 1) * w];
            for &(c, v) in &pivot_row {
                row[c] -= f * v;
            }
            row[pc] = 0.0;
        }
        let f = cost[pc];
        if f != 0.0 {
            for &(c, v) in &pivot_row {
                if c < self.cols {
                    cost[c] -= f * v;
                } else {
                    *obj -= f * v;
                }
            }
            cost[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }
}

enum Outcome {
    Optimal,
    Unbounded,
    Limit,
}

// Minimizes `cost . x` over the current tableau; `obj` tracks `-z`.
fn optimize(
    t: &mut Tableau,
    cost: &mut [f64],
    obj: &mut f64,
    allowed: &[bool],
    iterations: &mut usize,
    max_iterations: usize,
) -> Outcome {
    let mut bland = false;
    let mut streak = 0usize;
    loop {
        let entering = if bland {
            (0..t.cols).find(|&c| allowed[c] && cost[c] < -COST_TOL)
        } else {
            let mut best = None;
            let mut best_val = -COST_TOL;
            for c in 0..t.cols {
                if allowed[c] && cost[c] < best_val {
                    best_val = cost[c];
                    best = Some(c);
                }
            }
            best
        };
        let Some(pc) = entering else {
            return Outcome::Optimal;
        };
        if *iterations >= max_iterations {
            return Outcome::Limit;
        }
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..t.rows {
            let a = t.at(r, pc);
            if a > PIVOT_TOL {
                let ratio = t.rhs(r).max(0.0) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((br, bv)) => {
                        if ratio < bv - 1e-12
                            || (ratio <= bv + 1e-12 && t.basis[r] < t.basis[br])
                        {
                            Some((r, ratio))
                        } else {
                            Some((br, bv))
                        }
                    }
                };
            }
        }
        let Some((pr, ratio)) = leave else {
            return Outcome::Unbounded;
        };
        if ratio <= 1e-12 {
            streak += 1;
            if streak >= DEGENERATE_STREAK {
                bland = true;
            }
        } else {
            streak = 0;
            bland = false;
        }
        t.pivot(pr, pc, cost, obj);
        *iterations += 1;
    }
}

/// Solves `p` with at most `max_iterations` pivots over both phases.
pub fn solve_lp(p: &LpProblem, max_iterations: usize) -> LpSolution {
    let n = p.num_vars;
    let failed = |status, iterations| LpSolution {
        status,
        objective_value: f64::NAN,
        values: vec![f64::NAN; n],
        iterations,
    };

    // Column layout for the original variables.
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0usize;
    // rows (col, coeff) <= bound for doubly bounded variables
    let mut extra_rows: Vec<(usize, f64)> = Vec::new();
    for j in 0..n {
        let (lo, hi) = (p.lower[j], p.upper[j]);
        if lo > hi {
            return failed(LpStatus::Infeasible, 0);
        }
        if lo.is_finite() {
            maps.push(VarMap::Shift {
                col: ncols,
                lower: lo,
            });
            if hi.is_finite() {
                extra_rows.push((ncols, hi - lo));
            }
            ncols += 1;
        } else if hi.is_finite() {
            maps.push(VarMap::Mirror {
                col: ncols,
                upper: hi,
            });
            ncols += 1;
        } else {
            maps.push(VarMap::Split {
                pos: ncols,
                neg: ncols + 1,
            });
            ncols += 2;
        }
    }

    // Standard-form rows: coefficients over structural columns, sense, rhs.
    struct Row {
        coeffs: Vec<(usize, f64)>,
        sense: RowSense,
        rhs: f64,
    }
    let mut rows: Vec<Row> = Vec::with_capacity(p.constraints.len() + extra_rows.len());
    for c in &p.constraints {
        let mut coeffs = Vec::with_capacity(c.coeffs.len() + 1);
        let mut rhs = c.rhs;
        for &(j, a) in &c.coeffs {
            match maps[j] {
                VarMap::Shift { col, lower } => {
                    coeffs.push((col, a));
                    rhs -= a * lower;
                }
                VarMap::Mirror { col, upper } => {
                    coeffs.push((col, -a));
                    rhs -= a * upper;
                }
                VarMap::Split { pos, neg } => {
                    coeffs.push((pos, a));
                    coeffs.push((neg, -a));
                }
            }
        }
        rows.push(Row {
            coeffs,
            sense: c.sense,
            rhs,
        });
    }
    for &(col, ub) in &extra_rows {
        rows.push(Row {
            coeffs: vec![(col, 1.0)],
            sense: RowSense::Le,
            rhs: ub,
        });
    }
    for row in &mut rows {
        if row.rhs < 0.0 {
            row.rhs = -row.rhs;
            for c in &mut row.coeffs {
                c.1 = -c.1;
            }
            row.sense = match row.sense {
                RowSense::Le => RowSense::Ge,
                RowSense::Ge => RowSense::Le,
                RowSense::Eq => RowSense::Eq,
            };
        }
    }

    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.sense != RowSense::Eq).count();
    let n_art = rows.iter().filter(|r| r.sense != RowSense::Le).count();
    let slack0 = ncols;
    let art0 = ncols + n_slack;
    let total = art0 + n_art;
    let mut t = Tableau {
        rows: m,
        cols: total,
        data: vec![0.0; m * (total + 1)],
        basis: vec![0; m],
    };
    let w = total + 1;
    let mut is_art = vec![false; total];
    let (mut s_idx, mut a_idx) = (slack0, art0);
    for (r, row) in rows.iter().enumerate() {
        for &(c, a) in &row.coeffs {
            t.data[r * w + c] += a;
        }
        t.data[r * w + total] = row.rhs;
        match row.sense {
            RowSense::Le => {
                t.data[r * w + s_idx] = 1.0;
                t.basis[r] = s_idx;
                s_idx += 1;
            }
            RowSense::Ge => {
                t.data[r * w + s_idx] = -1.0;
                s_idx += 1;
                t.data[r * w + a_idx] = 1.0;
                t.basis[r] = a_idx;
                is_art[a_idx] = true;
                a_idx += 1;
            }
            RowSense::Eq => {
                t.data[r * w + a_idx] = 1.0;
                t.basis[r] = a_idx;
                is_art[a_idx] = true;
                a_idx += 1;
            }
        }
    }

    let mut iterations = 0usize;

    // Phase 1: minimize the sum of artificials.
    if n_art > 0 {
        let mut cost = vec![0.0; total];
        let mut obj = 0.0;
        for c in art0..total {
            cost[c] = 1.0;
        }
        for r in 0..m {
            if is_art[t.basis[r]] {
                for c in 0..total {
                    cost[c] -= t.data[r * w + c];
                }
                obj -= t.rhs(r);
            }
        }
        let allowed = vec![true; total];
        match optimize(&mut t, &mut cost, &mut obj, &allowed, &mut iterations, max_iterations) {
            Outcome::Limit => return failed(LpStatus::IterationLimit, iterations),
            Outcome::Unbounded => unreachable!("phase 1 is bounded below by zero"),
            Outcome::Optimal => {}
        }
        let scale = rows.iter().map(|r| r.rhs).fold(1.0, f64::max);
        if -obj > FEAS_TOL * scale {
            return failed(LpStatus::Infeasible, iterations);
        }
        // Drive remaining artificials out of the basis where possible.
        for r in 0..m {
            if !is_art[t.basis[r]] {
                continue;
            }
            if let Some(c) = (0..art0).find(|&c| t.at(r, c).abs() > PIVOT_TOL) {
                let mut dummy = vec![0.0; total];
                let mut d = 0.0;
                t.pivot(r, c, &mut dummy, &mut d);
            }
        }
    }

    // Phase 2 on structural and slack columns.
    let sign = match p.sense {
        Objective::Minimize => 1.0,
        Objective::Maximize => -1.0,
    };
    let mut cost = vec![0.0; total];
    for j in 0..n {
        let c = sign * p.objective[j];
        match maps[j] {
            VarMap::Shift { col, .. } => cost[col] += c,
            VarMap::Mirror { col, .. } => cost[col] -= c,
            VarMap::Split { pos, neg } => {
                cost[pos] += c;
                cost[neg] -= c;
            }
        }
    }
    let mut obj = 0.0;
    for r in 0..m {
        let b = t.basis[r];
        let cb = cost[b];
        if cb != 0.0 {
            for c in 0..total {
                cost[c] -= cb * t.data[r * w + c];
            }
            obj -= cb * t.rhs(r);
        }
    }
    let allowed: Vec<bool> = (0..total).map(|c| !is_art[c]).collect();
    match optimize(&mut t, &mut cost, &mut obj, &allowed, &mut iterations, max_iterations) {
        Outcome::Limit => return failed(LpStatus::IterationLimit, iterations),
        Outcome::Unbounded => return failed(LpStatus::Unbounded, iterations),
        Outcome::Optimal => {}
    }

    let mut col_val = vec![0.0; total];
    for r in 0..m {
        col_val[t.basis[r]] = t.rhs(r).max(0.0);
    }
    let values: Vec<f64> = maps
        .iter()
        .map(|mp| match *mp {
            VarMap::Shift { col, lower } => lower + col_val[col],
            VarMap::Mirror { col, upper } => upper - col_val[col],
            VarMap::Split { pos, neg } => col_val[pos] - col_val[neg],
        })
        .collect();
    LpSolution {
        status: LpStatus::Optimal,
        objective_value: p.evaluate(&values),
        values,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const ITERS: usize = 100_000;

    #[test]
    fn single_variable() {
        let mut p = LpProblem::new(1, Objective::Minimize);
        p.set_cost(0, 1.0);
        p.add_constraint(&[(0, 1.0)], RowSense::Ge, 3.0);
        let s = solve_lp(&p, ITERS);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 3.0).abs() < 1e-12);
        assert!((s.values[0] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_pair() {
        let mut p = LpProblem::new(2, Objective::Minimize);
        p.set_cost(0, 1.0);
        p.set_cost(1, 1.0);
        p.add_constraint(&[(0, 1.0), (1, 1.0)], RowSense::Ge, 1.0);
        p.add_constraint(&[(0, 1.0), (1, -1.0)], RowSense::Eq, 0.0);
        let s = solve_lp(&p, ITERS);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 1.0).abs() < 1e-12);
        assert!((s.values[0] - 0.5).abs() < 1e-12);
        assert!((s.values[1] - 0.5).abs() < 1e-12);
        assert!(verify_solution(&p, &s).within(1e-7, 1e-9));
    }

    #[test]
    fn statuses() {
        let mut p = LpProblem::new(1, Objective::Minimize);
        p.set_cost(0, 1.0);
        p.add_constraint(&[(0, 1.0)], RowSense::Le, -1.0);
        assert_eq!(solve_lp(&p, ITERS).status, LpStatus::Infeasible);

        let mut p = LpProblem::new(1, Objective::Maximize);
        p.set_cost(0, 1.0);
        p.add_constraint(&[(0, 1.0)], RowSense::Ge, 1.0);
        assert_eq!(solve_lp(&p, ITERS).status, LpStatus::Unbounded);

        let mut p = LpProblem::new(2, Objective::Maximize);
        p.set_cost(0, 1.0);
        p.set_cost(1, 1.0);
        p.add_constraint(&[(0, 1.0), (1, 2.0)], RowSense::Le, 4.0);
        p.add_constraint(&[(0, 3.0), (1, 1.0)], RowSense::Le, 6.0);
        assert_eq!(solve_lp(&p, 0).status, LpStatus::IterationLimit);
        let s = solve_lp(&p, ITERS);
        assert!((s.objective_value - 2.8).abs() < 1e-12);
    }

    #[test]
    fn general_bounds() {
        // free, mirrored and boxed variables
        let mut p = LpProblem::new(3, Objective::Minimize);
        p.set_bounds(0, f64::NEG_INFINITY, f64::INFINITY);
        p.set_bounds(1, f64::NEG_INFINITY, 2.0);
        p.set_bounds(2, -1.0, 1.0);
        p.set_cost(0, 1.0);
        p.set_cost(1, -1.0);
        p.set_cost(2, 1.0);
        p.add_constraint(&[(0, 1.0), (1, -1.0)], RowSense::Ge, -5.0);
        let s = solve_lp(&p, ITERS);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - (-6.0)).abs() < 1e-9, "{s:?}");
        assert!(verify_solution(&p, &s).within(1e-9, 1e-9));
    }

    #[test]
    fn verify_reports_perturbation() {
        let mut p = LpProblem::new(2, Objective::Minimize);
        p.set_cost(0, 1.0);
        p.set_cost(1, 1.0);
        p.add_constraint(&[(0, 1.0), (1, 1.0)], RowSense::Ge, 1.0);
        p.add_constraint(&[(0, 1.0), (1, -1.0)], RowSense::Eq, 0.0);
        let mut s = solve_lp(&p, ITERS);
        s.values[0] += 1.0;
        let rep = verify_solution(&p, &s);
        assert!(rep.max_residual >= 1.0 - 1e-12);
    }

    #[test]
    fn redundant_equalities() {
        let mut p = LpProblem::new(2, Objective::Minimize);
        p.set_cost(0, 1.0);
        p.set_cost(1, 2.0);
        p.add_constraint(&[(0, 1.0), (1, 1.0)], RowSense::Eq, 1.0);
        p.add_constraint(&[(0, 2.0), (1, 2.0)], RowSense::Eq, 2.0);
        let s = solve_lp(&p, ITERS);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cplex_export() {
        let mut p = LpProblem::new(2, Objective::Minimize);
        p.set_cost(0, 1.0);
        p.set_cost(1, -2.5);
        p.set_name(1, "tau");
        p.set_bounds(0, f64::NEG_INFINITY, f64::INFINITY);
        p.add_constraint(&[(0, 1.0), (1, -1.0)], RowSense::Le, 3.0);
        let text = p.to_cplex_lp("demo");
        assert!(text.starts_with("\\Problem name: demo\nMinimize\n obj: 1.0 x0 - 2.5 tau\n"));
        assert!(text.contains("Subject To\n c0: 1.0 x0 - 1.0 tau <= 3.0\n"));
        assert!(text.contains("Bounds\n x0 free\n"));
        assert!(text.ends_with("End\n"));
    }

    // Exhaustive vertex enumeration for small problems with box bounds.
    fn vertex_oracle(p: &LpProblem) -> Option<f64> {
        let n = p.num_vars();
        let mut planes: Vec<(Vec<f64>, f64)> = Vec::new();
        for c in p.constraints() {
            let mut a = vec![0.0; n];
            for &(j, v) in &c.coeffs {
                a[j] = v;
            }
            planes.push((a, c.rhs));
        }
        for j in 0..n {
            let (lo, hi) = p.bounds(j);
            for b in [lo, hi] {
                if b.is_finite() {
                    let mut a = vec![0.0; n];
                    a[j] = 1.0;
                    planes.push((a, b));
                }
            }
        }
        let mut best: Option<f64> = None;
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            if let Some(x) = solve_square(&idx.iter().map(|&i| planes[i].clone()).collect::<Vec<_>>()) {
                let feasible = p.constraints().iter().all(|c| c.violation(&x) <= 1e-9)
                    && (0..n).all(|j| {
                        let (lo, hi) = p.bounds(j);
                        x[j] >= lo - 1e-9 && x[j] <= hi + 1e-9
                    });
                if feasible {
                    let v = p.evaluate(&x);
                    let better = match (best, p.sense()) {
                        (None, _) => true,
                        (Some(b), Objective::Minimize) => v < b,
                        (Some(b), Objective::Maximize) => v > b,
                    };
                    if better {
                        best = Some(v);
                    }
                }
            }
            // next combination
            let mut i = n;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if idx[i] < planes.len() - n + i {
                    idx[i] += 1;
                    for t in i + 1..n {
                        idx[t] = idx[t - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn solve_square(rows: &[(Vec<f64>, f64)]) -> Option<Vec<f64>> {
        let n = rows.len();
        let mut a: Vec<Vec<f64>> = rows
            .iter()
            .map(|(r, b)| {
                let mut v = r.clone();
                v.push(*b);
                v
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap())?;
            if a[piv][col].abs() < 1e-10 {
                return None;
            }
            a.swap(col, piv);
            for r in 0..n {
                if r != col {
                    let f = a[r][col] / a[col][col];
                    for c in col..=n {
                        a[r][c] -= f * a[col][c];
                    }
                }
            }
        }
        Some((0..n).map(|i| a[i][n] / a[i][i]).collect())
    }

    fn random_lp(rng: &mut ChaCha8Rng) -> LpProblem {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=5);
        let sense = if rng.gen_bool(0.5) {
            Objective::Minimize
        } else {
            Objective::Maximize
        };
        let mut p = LpProblem::new(n, sense);
        for j in 0..n {
            p.set_cost(j, rng.gen_range(-3..=3) as f64);
            p.set_bounds(j, rng.gen_range(-2..=0) as f64, rng.gen_range(1..=4) as f64);
        }
        for _ in 0..m {
            let coeffs: Vec<(usize, f64)> =
                (0..n).map(|j| (j, rng.gen_range(-3..=3) as f64)).collect();
            let s = match rng.gen_range(0..3) {
                0 => RowSense::Le,
                1 => RowSense::Ge,
                _ => RowSense::Eq,
            };
            p.add_constraint(&coeffs, s, rng.gen_range(-3..=3) as f64);
        }
        p
    }

    #[test]
    fn matches_vertex_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut optimal = 0;
        for _ in 0..300 {
            let p = random_lp(&mut rng);
            let s = solve_lp(&p, ITERS);
            let oracle = vertex_oracle(&p);
            match (s.status, oracle) {
                (LpStatus::Optimal, Some(v)) => {
                    optimal += 1;
                    assert!((s.objective_value - v).abs() < 1e-6, "{p:?}\n{s:?}\n{v}");
                    assert!(verify_solution(&p, &s).within(1e-7, 1e-9));
                    let mut order: Vec<usize> = (0..p.constraints().len()).collect();
                    order.reverse();
                    let q = solve_lp(&p.with_rows_permuted(&order), ITERS);
                    assert!((q.objective_value - s.objective_value).abs() < 1e-7);
                }
                (LpStatus::Infeasible, None) => {}
                other => panic!("mismatch {other:?} on {p:?}"),
            }
        }
        assert!(optimal > 50);
    }
}
