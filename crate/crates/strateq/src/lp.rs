//! Exact linear programming over the rationals.
//!
//! A dense two-phase simplex using Bland's smallest-index pivoting
//! rule throughout. Bland's rule never cycles, so with exact rational
//! arithmetic the solver terminates on every input, including
//! degenerate programs that loop forever under largest-coefficient
//! pivoting. Optima are exact, never approximate.
//!
//! The module also exposes [`zero_sum_value`], the minimax value and
//! optimal strategies of a two-player zero-sum game, computed by a
//! primal/dual LP pair and cross-checked for strong duality, and
//! [`solve_linear_system`], exact Gaussian elimination shared by the
//! equilibrium-enumeration code.

use crate::error::{Error, Result};
use crate::game::Game;
use crate::rational::Rational;
use num_traits::{One, Zero};

/// Direction of optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Comparison operator of a linear constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One linear constraint `coeffs . x  (<= | = | >=)  rhs`.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Per-variable bounds; `None` is unbounded on that side.
#[derive(Debug, Clone)]
pub struct VarBounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl VarBounds {
    pub fn nonnegative() -> Self {
        VarBounds {
            lower: Some(Rational::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        VarBounds {
            lower: None,
            upper: None,
        }
    }
}

/// A linear program in natural form: arbitrary bounds, mixed
/// constraint relations, either optimization sense.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<VarBounds>,
}

impl LinearProgram {
    /// Maximization over nonnegative variables by default.
    pub fn maximize(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense: Sense::Maximize,
            objective,
            constraints: Vec::new(),
            bounds: vec![VarBounds::nonnegative(); n],
        }
    }

    /// Minimization over nonnegative variables by default.
    pub fn minimize(objective: Vec<Rational>) -> Self {
        let mut lp = LinearProgram::maximize(objective);
        lp.sense = Sense::Minimize;
        lp
    }

    pub fn constrain(mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    /// Make one variable free (unbounded both ways).
    pub fn free_var(mut self, var: usize) -> Self {
        self.bounds[var] = VarBounds::free();
        self
    }

    pub fn bound_var(
        mut self,
        var: usize,
        lower: Option<Rational>,
        upper: Option<Rational>,
    ) -> Self {
        self.bounds[var] = VarBounds { lower, upper };
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Solve exactly. `Err` only for malformed input; infeasibility and
    /// unboundedness are ordinary outcomes.
    pub fn solve(&self) -> Result<LpOutcome> {
        solve(self)
    }
}

/// Exact outcome of solving a [`LinearProgram`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        /// Values of the original variables.
        values: Vec<Rational>,
        /// Objective value in the original sense.
        value: Rational,
    },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<(Vec<Rational>, Rational)> {
        match self {
            LpOutcome::Optimal { values, value } => Some((values, value)),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            LpOutcome::Optimal { .. } => "optimal",
            LpOutcome::Infeasible => "infeasible",
            LpOutcome::Unbounded => "unbounded",
        }
    }
}

/// How one original variable is represented in the presolved program.
enum VarRepr {
    /// `x = offset + t[col]`
    Shifted { col: usize, offset: Rational },
    /// `x = offset - t[col]`
    Mirrored { col: usize, offset: Rational },
    /// `x = t[pos] - t[neg]`
    Split { pos: usize, neg: usize },
}

pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    let n = lp.num_vars();
    if n == 0 {
        return Err(Error::MalformedProgram("program has no variables".into()));
    }
    if lp.bounds.len() != n {
        return Err(Error::MalformedProgram(format!(
            "{} bounds for {} variables",
            lp.bounds.len(),
            n
        )));
    }
    for (idx, c) in lp.constraints.iter().enumerate() {
        if c.coeffs.len() != n {
            return Err(Error::MalformedProgram(format!(
                "constraint {idx} has {} coefficients for {} variables",
                c.coeffs.len(),
                n
            )));
        }
    }

    // Work in maximization form.
    let max_obj: Vec<Rational> = match lp.sense {
        Sense::Maximize => lp.objective.clone(),
        Sense::Minimize => lp.objective.iter().map(|c| -c).collect(),
    };

    // Substitute every variable by nonnegative presolved variables.
    let mut repr = Vec::with_capacity(n);
    let mut cols = 0usize;
    let mut pres_obj: Vec<Rational> = Vec::new();
    let mut obj_const = Rational::zero();
    // rows `t[col] <= cap` coming from doubly bounded variables
    let mut cap_rows: Vec<(usize, Rational)> = Vec::new();
    for (var, b) in lp.bounds.iter().enumerate() {
        let c = &max_obj[var];
        match (&b.lower, &b.upper) {
            (Some(l), up) => {
                if let Some(u) = up {
                    if u < l {
                        return Ok(LpOutcome::Infeasible);
                    }
                    cap_rows.push((cols, u - l));
                }
                repr.push(VarRepr::Shifted {
                    col: cols,
                    offset: l.clone(),
                });
                pres_obj.push(c.clone());
                obj_const += c * l;
                cols += 1;
            }
            (None, Some(u)) => {
                repr.push(VarRepr::Mirrored {
                    col: cols,
                    offset: u.clone(),
                });
                pres_obj.push(-c);
                obj_const += c * u;
                cols += 1;
            }
            (None, None) => {
                repr.push(VarRepr::Split {
                    pos: cols,
                    neg: cols + 1,
                });
                pres_obj.push(c.clone());
                pres_obj.push(-c);
                cols += 2;
            }
        }
    }

    // Rewrite constraints over presolved variables, as `<=` or `=`.
    struct Row {
        coeffs: Vec<Rational>,
        rhs: Rational,
        equality: bool,
    }
    let mut pres_rows: Vec<Row> = Vec::new();
    for c in &lp.constraints {
        let mut coeffs = vec![Rational::zero(); cols];
        let mut rhs = c.rhs.clone();
        for (var, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match &repr[var] {
                VarRepr::Shifted { col, offset } => {
                    coeffs[*col] += a;
                    rhs -= a * offset;
                }
                VarRepr::Mirrored { col, offset } => {
                    coeffs[*col] -= a;
                    rhs -= a * offset;
                }
                VarRepr::Split { pos, neg } => {
                    coeffs[*pos] += a;
                    coeffs[*neg] -= a;
                }
            }
        }
        let (coeffs, rhs, equality) = match c.relation {
            Relation::Le => (coeffs, rhs, false),
            Relation::Ge => (coeffs.iter().map(|a| -a).collect(), -rhs, false),
            Relation::Eq => (coeffs, rhs, true),
        };
        pres_rows.push(Row {
            coeffs,
            rhs,
            equality,
        });
    }
    for (col, cap) in cap_rows {
        let mut coeffs = vec![Rational::zero(); cols];
        coeffs[col] = Rational::one();
        pres_rows.push(Row {
            coeffs,
            rhs: cap,
            equality: false,
        });
    }

    // Standard form: append one slack per inequality, normalize every
    // rhs to be nonnegative, then add artificials for rows whose slack
    // cannot start in the basis.
    let m = pres_rows.len();
    let n_slack = pres_rows.iter().filter(|r| !r.equality).count();
    let width = cols + n_slack;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    let mut basis_candidate: Vec<Option<usize>> = Vec::with_capacity(m);
    let mut next_slack = cols;
    for r in pres_rows {
        let mut coeffs = r.coeffs;
        coeffs.resize(width, Rational::zero());
        let mut b = r.rhs;
        let slack = if r.equality {
            None
        } else {
            let s = next_slack;
            next_slack += 1;
            coeffs[s] = Rational::one();
            Some(s)
        };
        let negated = b < Rational::zero();
        if negated {
            for a in coeffs.iter_mut() {
                *a = -&*a;
            }
            b = -b;
        }
        rows.push(coeffs);
        rhs.push(b);
        basis_candidate.push(match slack {
            Some(s) if !negated => Some(s),
            _ => None,
        });
    }

    let art_start = width;
    let n_art = basis_candidate.iter().filter(|c| c.is_none()).count();
    let total = width + n_art;
    let mut basis = Vec::with_capacity(m);
    let mut next_art = art_start;
    for (i, cand) in basis_candidate.iter().enumerate() {
        match cand {
            Some(s) => basis.push(*s),
            None => {
                for row in rows.iter_mut() {
                    row.resize(total, Rational::zero());
                }
                rows[i].resize(total, Rational::zero());
                rows[i][next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
    }
    for row in rows.iter_mut() {
        row.resize(total, Rational::zero());
    }

    let mut t = Tableau {
        rows,
        rhs,
        basis,
        obj: vec![Rational::zero(); total],
        value: Rational::zero(),
    };

    // Phase 1: maximize minus the sum of artificials.
    if n_art > 0 {
        let mut phase1 = vec![Rational::zero(); total];
        for c in phase1.iter_mut().skip(art_start) {
            *c = -Rational::one();
        }
        t.install_objective(&phase1);
        match t.run_simplex(total) {
            SimplexEnd::Optimal => {}
            SimplexEnd::Unbounded => {
                unreachable!("phase-1 objective is bounded above by zero")
            }
        }
        if !t.value.is_zero() {
            return Ok(LpOutcome::Infeasible);
        }
        // Pivot leftover artificials out of the basis; a row with no
        // structural coefficient left is redundant and dropped.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art_start {
                match (0..width).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in t.rows.iter_mut() {
            row.truncate(width);
        }
        t.obj.truncate(width);
    }

    // Phase 2: the real objective over the surviving basis.
    let mut phase2 = pres_obj.clone();
    phase2.resize(width, Rational::zero());
    t.install_objective(&phase2);
    match t.run_simplex(width) {
        SimplexEnd::Optimal => {}
        SimplexEnd::Unbounded => return Ok(LpOutcome::Unbounded),
    }

    // Read the presolved solution off the basis, then undo the
    // substitutions.
    let mut pres_values = vec![Rational::zero(); cols];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < cols {
            pres_values[b] = t.rhs[i].clone();
        }
    }
    let values: Vec<Rational> = repr
        .iter()
        .map(|r| match r {
            VarRepr::Shifted { col, offset } => offset + &pres_values[*col],
            VarRepr::Mirrored { col, offset } => offset - &pres_values[*col],
            VarRepr::Split { pos, neg } => &pres_values[*pos] - &pres_values[*neg],
        })
        .collect();
    let max_value = t.value + obj_const;
    let value = match lp.sense {
        Sense::Maximize => max_value,
        Sense::Minimize => -max_value,
    };
    Ok(LpOutcome::Optimal { values, value })
}

enum SimplexEnd {
    Optimal,
    Unbounded,
}

/// Dense simplex tableau in canonical form: basis columns are unit
/// vectors, `rhs` stays nonnegative, `obj` holds reduced costs of a
/// maximization and `value` the current objective.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    obj: Vec<Rational>,
    value: Rational,
}

impl Tableau {
    /// Load cost vector `c` and price out the current basis so reduced
    /// costs of basic columns are zero.
    fn install_objective(&mut self, c: &[Rational]) {
        self.obj = c.to_vec();
        self.value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let f = c[b].clone();
            if f.is_zero() {
                continue;
            }
            for (o, a) in self.obj.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *o -= &f * a;
                }
            }
            self.value += f * &self.rhs[i];
        }
    }

    /// Dantzig's largest-coefficient rule while the objective moves,
    /// with a permanent switch to Bland's smallest-index rule after a
    /// long degenerate stall. Dantzig can only cycle through degenerate
    /// pivots, the stall counter catches any such streak, and Bland's
    /// rule terminates from every tableau, so the hybrid always
    /// finishes. The leaving row minimizes the ratio with ties broken
    /// by the smallest basic variable index, as Bland requires.
    fn run_simplex(&mut self, allowed_cols: usize) -> SimplexEnd {
        let stall_cap = self.rows.len() + allowed_cols;
        let mut stalled = 0usize;
        let mut bland = false;
        loop {
            let entering = if bland {
                (0..allowed_cols).find(|&j| self.obj[j] > Rational::zero())
            } else {
                let mut best: Option<usize> = None;
                for j in 0..allowed_cols {
                    if self.obj[j] > Rational::zero()
                        && best.map_or(true, |b| self.obj[j] > self.obj[b])
                    {
                        best = Some(j);
                    }
                }
                best
            };
            let entering = match entering {
                Some(j) => j,
                None => return SimplexEnd::Optimal,
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][entering];
                if a <= &Rational::zero() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leaving {
                    None => true,
                    Some((prev, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*prev])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((row, ratio)) => {
                    if ratio.is_zero() {
                        stalled += 1;
                        if stalled > stall_cap {
                            bland = true;
                        }
                    } else {
                        stalled = 0;
                    }
                    self.pivot(row, entering);
                }
                None => return SimplexEnd::Unbounded,
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        debug_assert!(!p.is_zero());
        if !p.is_one() {
            for a in self.rows[row].iter_mut() {
                if !a.is_zero() {
                    *a /= &p;
                }
            }
            self.rhs[row] /= &p;
        }
        // The pivot row is mostly zeros; skipping them avoids a
        // multiply and a reallocation per entry.
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let f = self.rows[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.rows[i].len() {
                if self.rows[row][j].is_zero() {
                    continue;
                }
                let d = &f * &self.rows[row][j];
                self.rows[i][j] -= d;
            }
            if !self.rhs[row].is_zero() {
                let d = &f * &self.rhs[row];
                self.rhs[i] -= d;
            }
        }
        let f = self.obj[col].clone();
        if !f.is_zero() {
            for j in 0..self.obj.len() {
                if self.rows[row][j].is_zero() {
                    continue;
                }
                let d = &f * &self.rows[row][j];
                self.obj[j] -= d;
            }
            self.value += f * &self.rhs[row];
        }
        self.basis[row] = col;
    }
}

/// Outcome of exact Gaussian elimination on `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// Exactly one solution.
    Unique(Vec<Rational>),
    /// Consistent but rank-deficient; carries one particular solution
    /// with all free variables set to zero.
    Underdetermined(Vec<Rational>),
    Inconsistent,
}

/// Solve `A x = b` exactly by Gaussian elimination. `a` is row-major
/// and may be any shape; `b.len()` must equal the row count.
pub fn solve_linear_system(a: &[Vec<Rational>], b: &[Rational]) -> LinearSolution {
    let m = a.len();
    let n = a.first().map(Vec::len).unwrap_or(0);
    debug_assert_eq!(b.len(), m);
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v /= &inv;
        }
        for i in 0..m {
            if i == rank || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in 0..=n {
                let d = &f * &rows[rank][j];
                rows[i][j] -= d;
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
        if rank == m {
            break;
        }
    }

    for row in rows.iter().skip(rank) {
        if !row[n].is_zero() {
            return LinearSolution::Inconsistent;
        }
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &col) in pivot_col_of_row.iter().enumerate() {
        x[col] = rows[i][n].clone();
    }
    if rank == n {
        LinearSolution::Unique(x)
    } else {
        LinearSolution::Underdetermined(x)
    }
}

/// Value and exact optimal strategies of a two-player zero-sum game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumSolution {
    /// The game's value to player 1.
    pub value: Rational,
    /// An optimal mixed strategy for player 1.
    pub row_strategy: Vec<Rational>,
    /// An optimal mixed strategy for player 2.
    pub col_strategy: Vec<Rational>,
}

/// Minimax value of a two-player zero-sum game via the classic primal
/// and dual LPs, cross-checked three ways: strong duality (the two
/// optima agree), player 1's strategy guarantees the value against
/// every column, and player 2's caps it against every row.
pub fn zero_sum_value(game: &Game) -> Result<ZeroSumSolution> {
    if game.num_players() != 2 {
        return Err(Error::UnsupportedPlayerCount {
            required: 2,
            found: game.num_players(),
        });
    }
    for idx in 0..game.num_profiles() {
        let total = &game.payoff_tensor(0)[idx] + &game.payoff_tensor(1)[idx];
        if !total.is_zero() {
            return Err(Error::PreconditionNotMet(
                "zero-sum analysis requires payoffs that sum to zero at every profile".into(),
            ));
        }
    }
    let m = game.action_counts()[0];
    let k = game.action_counts()[1];
    let u = |a: usize, b: usize| game.payoff(0, &[a, b]).clone();

    // Row player: maximize v subject to the mix earning at least v
    // against every column, over the simplex.
    let mut row_lp = LinearProgram::maximize(
        (0..=m)
            .map(|j| {
                if j == m {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect(),
    )
    .free_var(m);
    for b in 0..k {
        let mut coeffs: Vec<Rational> = (0..m).map(|a| u(a, b)).collect();
        coeffs.push(-Rational::one());
        row_lp = row_lp.constrain(coeffs, Relation::Ge, Rational::zero());
    }
    let mut simplex = vec![Rational::one(); m];
    simplex.push(Rational::zero());
    row_lp = row_lp.constrain(simplex, Relation::Eq, Rational::one());
    let (row_values, row_value) = row_lp
        .solve()?
        .optimal()
        .expect("the minimax program is feasible and bounded");
    let row_strategy = row_values[..m].to_vec();

    // Column player: minimize w subject to every row earning at most w
    // against the mix.
    let mut col_lp = LinearProgram::minimize(
        (0..=k)
            .map(|j| {
                if j == k {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect(),
    )
    .free_var(k);
    for a in 0..m {
        let mut coeffs: Vec<Rational> = (0..k).map(|b| u(a, b)).collect();
        coeffs.push(-Rational::one());
        col_lp = col_lp.constrain(coeffs, Relation::Le, Rational::zero());
    }
    let mut simplex = vec![Rational::one(); k];
    simplex.push(Rational::zero());
    col_lp = col_lp.constrain(simplex, Relation::Eq, Rational::one());
    let (col_values, col_value) = col_lp
        .solve()?
        .optimal()
        .expect("the minimax program is feasible and bounded");
    let col_strategy = col_values[..k].to_vec();

    assert_eq!(
        row_value, col_value,
        "strong duality must hold exactly for a zero-sum game"
    );
    for b in 0..k {
        let earned: Rational = (0..m).map(|a| &row_strategy[a] * u(a, b)).sum();
        assert!(
            earned >= row_value,
            "row strategy must guarantee the value against every column"
        );
    }
    for a in 0..m {
        let conceded: Rational = (0..k).map(|b| &col_strategy[b] * u(a, b)).sum();
        assert!(
            conceded <= col_value,
            "column strategy must cap the value against every row"
        );
    }

    Ok(ZeroSumSolution {
        value: row_value,
        row_strategy,
        col_strategy,
    })
}
