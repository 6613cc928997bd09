//! Dense linear programs over non-negative variables and a two-phase simplex
//! solver using Bland's rule.
//!
//! The programs generated by this crate are tiny (tens of variables and
//! constraints) and are solved thousands of times, so the solver works on a
//! dense tableau and favours determinism over speed: identical programs give
//! bit-identical solutions.

mod simplex;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Feasibility tolerance, relative to the magnitude of each row.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-9;
/// Reduced-cost tolerance for optimality.
pub const OPTIMALITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

// variables are numbered densely in creation order
pub(crate) fn var_id(index: usize) -> VarId {
    VarId(index)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub name: String,
    pub upper: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    terms: Vec<(VarId, f64)>,
    relation: Relation,
    rhs: f64,
}

impl Constraint {
    pub fn terms(&self) -> &[(VarId, f64)] {
        &self.terms
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn rhs(&self) -> f64 {
        self.rhs
    }

    fn activity(&self, values: &[f64]) -> f64 {
        self.terms.iter().map(|(v, a)| a * values[v.0]).sum()
    }
}

/// A linear program over variables `x >= 0` with optional upper bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    sense: Sense,
    variables: Vec<Variable>,
    objective: Vec<f64>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// Iteration limit hit or the final basis failed the residual check.
    NumericalFailure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective in the program's own sense; NaN unless optimal.
    pub objective: f64,
    /// One value per variable; empty unless optimal.
    pub values: Vec<f64>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    fn without_point(status: LpStatus) -> Self {
        Self {
            status,
            objective: f64::NAN,
            values: Vec::new(),
        }
    }
}

/// Outcome of [`LinearProgram::check_feasible`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feasibility {
    pub feasible: bool,
    /// Largest absolute violation over all constraints and bounds.
    pub max_residual: f64,
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        Self {
            sense,
            variables: Vec::new(),
            objective: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn add_variable(&mut self, name: impl Into<String>) -> VarId {
        self.variables.push(Variable {
            name: name.into(),
            upper: None,
        });
        self.objective.push(0.0);
        VarId(self.variables.len() - 1)
    }

    pub fn set_upper_bound(&mut self, var: VarId, upper: f64) -> Result<()> {
        self.check_var(var)?;
        if !upper.is_finite() {
            return Err(Error::NonFiniteCoefficient("upper bound"));
        }
        self.variables[var.0].upper = Some(upper);
        Ok(())
    }

    /// Replaces the objective. Variables not mentioned get coefficient 0.
    pub fn set_objective(&mut self, sense: Sense, terms: &[(VarId, f64)]) -> Result<()> {
        for (var, coef) in terms {
            self.check_var(*var)?;
            if !coef.is_finite() {
                return Err(Error::NonFiniteCoefficient("objective"));
            }
        }
        self.sense = sense;
        self.objective.iter_mut().for_each(|c| *c = 0.0);
        for (var, coef) in terms {
            self.objective[var.0] += coef;
        }
        Ok(())
    }

    /// Adds `Σ terms (relation) rhs` and returns the constraint index.
    pub fn add_constraint(
        &mut self,
        terms: &[(VarId, f64)],
        relation: Relation,
        rhs: f64,
    ) -> Result<usize> {
        for (var, coef) in terms {
            self.check_var(*var)?;
            if !coef.is_finite() {
                return Err(Error::NonFiniteCoefficient("constraint row"));
            }
        }
        if !rhs.is_finite() {
            return Err(Error::NonFiniteCoefficient("right-hand side"));
        }
        self.constraints.push(Constraint {
            terms: terms.to_vec(),
            relation,
            rhs,
        });
        Ok(self.constraints.len() - 1)
    }

    fn check_var(&self, var: VarId) -> Result<()> {
        if var.0 < self.variables.len() {
            Ok(())
        } else {
            Err(Error::UnknownVariable(alloc::format!("#{}", var.0)))
        }
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.variables.iter().position(|v| v.name == name).map(VarId)
    }

    pub fn evaluate_objective(&self, values: &[f64]) -> f64 {
        self.objective.iter().zip(values).map(|(c, x)| c * x).sum()
    }

    /// Dense assignment from `(name, value)` pairs; unnamed variables are 0.
    pub fn assignment_from_pairs(&self, pairs: &[(&str, f64)]) -> Result<Vec<f64>> {
        let mut values = alloc::vec![0.0; self.variables.len()];
        for (name, value) in pairs {
            let var = self
                .var_by_name(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            values[var.0] = *value;
        }
        Ok(values)
    }

    /// Checks bounds and constraints within [`FEASIBILITY_TOLERANCE`] scaled
    /// by the row magnitude.
    pub fn check_feasible(&self, values: &[f64]) -> Result<Feasibility> {
        self.check_feasible_with(values, FEASIBILITY_TOLERANCE)
    }

    pub fn check_feasible_with(&self, values: &[f64], tolerance: f64) -> Result<Feasibility> {
        if values.len() != self.variables.len() {
            return Err(Error::DimensionMismatch {
                what: "assignment",
                expected: self.variables.len(),
                got: values.len(),
            });
        }
        let mut feasible = true;
        let mut max_residual: f64 = 0.0;
        let mut record = |violation: f64, scale: f64| {
            let violation = violation.max(0.0);
            max_residual = max_residual.max(violation);
            if violation.is_nan() || violation > tolerance * scale {
                feasible = false;
            }
        };
        for (x, var) in values.iter().zip(&self.variables) {
            record(-x, 1.0);
            if let Some(upper) = var.upper {
                record(x - upper, 1.0f64.max(upper.abs()));
            }
        }
        for row in &self.constraints {
            let activity = row.activity(values);
            let scale = row
                .terms
                .iter()
                .map(|(v, a)| (a * values[v.0]).abs())
                .fold(1.0f64.max(row.rhs.abs()), f64::max);
            let violation = match row.relation {
                Relation::Le => activity - row.rhs,
                Relation::Ge => row.rhs - activity,
                Relation::Eq => (activity - row.rhs).abs(),
            };
            record(violation, scale);
        }
        Ok(Feasibility {
            feasible,
            max_residual,
        })
    }

    pub fn solve(&self) -> LpSolution {
        simplex::solve(self)
    }

    /// The same listing as `Display`, with variables named `x0, x1, …`.
    pub fn anonymous_listing(&self) -> String {
        let mut out = String::new();
        self.write_listing(&mut out, false)
            .expect("writing to a String cannot fail");
        out
    }

    fn write_listing(&self, out: &mut impl fmt::Write, named: bool) -> fmt::Result {
        let name = |v: usize| -> String {
            if named {
                self.variables[v].name.clone()
            } else {
                alloc::format!("x{v}")
            }
        };
        let write_terms = |out: &mut dyn fmt::Write, terms: &mut dyn Iterator<Item = (usize, f64)>| {
            let mut first = true;
            for (v, coef) in terms {
                if coef == 0.0 {
                    continue;
                }
                let sign = if coef < 0.0 { "-" } else if first { "" } else { "+" };
                if !first || coef < 0.0 {
                    write!(out, " {sign} ")?;
                }
                write!(out, "{} {}", coef.abs(), name(v))?;
                first = false;
            }
            if first {
                out.write_str("0")?;
            }
            Ok::<(), fmt::Error>(())
        };
        let sense = match self.sense {
            Sense::Minimize => "minimize",
            Sense::Maximize => "maximize",
        };
        write!(out, "{sense}\n  ")?;
        write_terms(out, &mut self.objective.iter().copied().enumerate())?;
        out.write_str("\nsubject to\n")?;
        for (r, row) in self.constraints.iter().enumerate() {
            write!(out, "  r{r}: ")?;
            write_terms(out, &mut row.terms.iter().map(|(v, a)| (v.0, *a)))?;
            writeln!(out, " {} {}", row.relation.symbol(), row.rhs)?;
        }
        out.write_str("bounds\n")?;
        for (v, var) in self.variables.iter().enumerate() {
            match var.upper {
                Some(upper) => writeln!(out, "  0 <= {} <= {upper}", name(v))?,
                None => writeln!(out, "  {} >= 0", name(v))?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_listing(f, true)
    }
}
