//! Worst-case linear programs for `|D3|` and their exact solution.
//!
//! For residual cap `I`, the variables are `d_i` (normalized `|Δ_i|`) and
//! `r_i` (normalized `|R_i|`) for `i = 1..=I`. With edge density `ρ` of the
//! class the program is
//!
//! ```text
//! maximize   Σ d_i
//! (A)  r_i ≥ Σ_{j ≤ i} d_j                      i = 1..=I
//! (B)  r_i ≤ i + 1                              i = 1..=I
//! (C)  d_i ≤ ρ r_i / (i − 2ρ)                   i = low..=I
//! (D)  r_i ≤ r_{i+1} − ((i + 1 − 2ρ) / ρ) d_{i+1}   i = 1..I
//! ```

mod simplex;

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::class::GraphClass;

pub use simplex::simplex_solve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// Row label, e.g. `A3`.
    pub label: String,
    pub coeffs: Vec<(usize, BigRational)>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    fn lhs_at(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().map(|(j, a)| a * &x[*j]).sum()
    }

    pub fn holds_at(&self, x: &[BigRational]) -> bool {
        let lhs = self.lhs_at(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// `maximize c·x` subject to the constraints and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    pub variables: Vec<String>,
    pub objective: Vec<BigRational>,
    pub constraints: Vec<Constraint>,
}

impl LpModel {
    pub fn new(variables: Vec<String>) -> Self {
        let objective = vec![BigRational::zero(); variables.len()];
        LpModel {
            variables,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn variable(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn constrain(
        &mut self,
        label: impl Into<String>,
        coeffs: Vec<(usize, BigRational)>,
        relation: Relation,
        rhs: BigRational,
    ) {
        let coeffs = coeffs.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        self.constraints.push(Constraint {
            label: label.into(),
            coeffs,
            relation,
            rhs,
        });
    }

    /// Constraints whose label starts with `family`.
    pub fn family(&self, family: char) -> impl Iterator<Item = &Constraint> {
        self.constraints
            .iter()
            .filter(move |c| c.label.starts_with(family) && c.label[1..].chars().all(|ch| ch.is_ascii_digit()))
    }

    /// Plain-text export: one objective line, then one constraint per line.
    pub fn export(&self) -> String {
        self.to_string()
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, vars: &[String], terms: &[(usize, BigRational)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (k, (j, a)) in terms.iter().enumerate() {
        let sign = if a.is_negative() {
            "-"
        } else if k > 0 {
            "+"
        } else {
            ""
        };
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{sign}{} {}", a.abs(), vars[*j])?;
    }
    Ok(())
}

impl fmt::Display for LpModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let objective: Vec<(usize, BigRational)> = self
            .objective
            .iter()
            .cloned()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        f.write_str("maximize: ")?;
        write_terms(f, &self.variables, &objective)?;
        writeln!(f)?;
        for c in &self.constraints {
            write!(f, "{}: ", c.label)?;
            write_terms(f, &self.variables, &c.coeffs)?;
            writeln!(f, " {} {}", c.relation, c.rhs)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: BigRational,
    /// Primal values, indexed like [`LpModel::variables`].
    pub assignment: Vec<BigRational>,
    /// Dual values, indexed like [`LpModel::constraints`].
    pub duals: Vec<BigRational>,
}

impl LpSolution {
    /// Checks primal feasibility and the dual certificate, exactly.
    pub fn verify(&self, model: &LpModel) -> Result<(), String> {
        if self.status != LpStatus::Optimal {
            return Err(format!("status {:?}", self.status));
        }
        if let Some(j) = self.assignment.iter().position(|x| x.is_negative()) {
            return Err(format!("{} is negative", model.variables[j]));
        }
        for c in &model.constraints {
            if !c.holds_at(&self.assignment) {
                return Err(format!("primal row {} violated", c.label));
            }
        }
        let value: BigRational = model.objective.iter().zip(&self.assignment).map(|(c, x)| c * x).sum();
        if value != self.objective {
            return Err("objective does not match assignment".into());
        }
        for (c, y) in model.constraints.iter().zip(&self.duals) {
            let bad = match c.relation {
                Relation::Le => y.is_negative(),
                Relation::Ge => y.is_positive(),
                Relation::Eq => false,
            };
            if bad {
                return Err(format!("dual of {} has the wrong sign", c.label));
            }
        }
        let mut reduced = model.objective.clone();
        for (c, y) in model.constraints.iter().zip(&self.duals) {
            for (j, a) in &c.coeffs {
                reduced[*j] -= a * y;
            }
        }
        if let Some(j) = reduced.iter().position(|r| r.is_positive()) {
            return Err(format!("dual row for {} violated", model.variables[j]));
        }
        let dual_value: BigRational = model.constraints.iter().zip(&self.duals).map(|(c, y)| &c.rhs * y).sum();
        if dual_value != self.objective {
            return Err(format!("duality gap: primal {} dual {}", self.objective, dual_value));
        }
        Ok(())
    }

    pub fn value(&self, model: &LpModel, name: &str) -> Option<&BigRational> {
        model.variable(name).map(|j| &self.assignment[j])
    }
}

pub(crate) fn big(r: Ratio<i64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn int(i: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

/// The class's worst-case program. Variable `j < I` is `d_{j+1}`, variable
/// `I + j` is `r_{j+1}`.
pub fn build_lp(class: GraphClass) -> LpModel {
    let params = class.params();
    let cap = params.residual_cap;
    let rho = big(params.density());
    let two_rho = &rho * int(2);
    let d = |i: usize| i - 1;
    let r = |i: usize| cap + i - 1;

    let variables = (1..=cap)
        .map(|i| format!("d{i}"))
        .chain((1..=cap).map(|i| format!("r{i}")))
        .collect();
    let mut m = LpModel::new(variables);
    for i in 1..=cap {
        m.objective[d(i)] = BigRational::one();
    }
    let one = BigRational::one;
    for i in 1..=cap {
        let mut coeffs = vec![(r(i), one())];
        coeffs.extend((1..=i).map(|j| (d(j), -one())));
        m.constrain(format!("A{i}"), coeffs, Relation::Ge, BigRational::zero());
    }
    for i in 1..=cap {
        m.constrain(format!("B{i}"), vec![(r(i), one())], Relation::Le, int(i + 1));
    }
    for i in params.lp_low_index..=cap {
        let coeff = &rho / (int(i) - &two_rho);
        m.constrain(
            format!("C{i}"),
            vec![(d(i), one()), (r(i), -coeff)],
            Relation::Le,
            BigRational::zero(),
        );
    }
    for i in 1..cap {
        let coeff = (int(i + 1) - &two_rho) / &rho;
        m.constrain(
            format!("D{i}"),
            vec![(r(i), one()), (r(i + 1), -one()), (d(i + 1), coeff)],
            Relation::Le,
            BigRational::zero(),
        );
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub class: GraphClass,
    pub phase12_constant: i64,
    pub lp_optimum: BigRational,
    /// `phase12_constant + lp_optimum`.
    pub total: BigRational,
    pub published_factor: i64,
    pub lp_claimed_bound: BigRational,
    pub claimed_total: BigRational,
}

impl FactorReport {
    pub fn within_published(&self) -> bool {
        self.total <= BigRational::from_integer(BigInt::from(self.published_factor))
    }

    pub fn lp_within_claim(&self) -> bool {
        self.lp_optimum <= self.lp_claimed_bound
    }

    pub fn total_within_claim(&self) -> bool {
        self.total <= self.claimed_total
    }
}

impl fmt::Display for FactorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let approx = |r: &BigRational| to_f64(r);
        writeln!(f, "class: {}", self.class)?;
        writeln!(f, "lp_optimum: {} (~{:.6})", self.lp_optimum, approx(&self.lp_optimum))?;
        writeln!(f, "lp_claimed_bound: {}", self.lp_claimed_bound)?;
        writeln!(f, "phase12_constant: {}", self.phase12_constant)?;
        writeln!(f, "total: {} (~{:.6})", self.total, approx(&self.total))?;
        writeln!(f, "claimed_total: {}", self.claimed_total)?;
        writeln!(f, "published_factor: {}", self.published_factor)?;
        writeln!(f, "lp_within_claim: {}", self.lp_within_claim())?;
        writeln!(f, "total_within_claim: {}", self.total_within_claim())?;
        write!(f, "within_published: {}", self.within_published())
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Solves the class program and composes it with the phase 1–2 constant.
pub fn factor_report(class: GraphClass) -> FactorReport {
    let params = class.params();
    let model = build_lp(class);
    let solution = simplex_solve(&model);
    debug_assert_eq!(solution.status, LpStatus::Optimal);
    let constant = BigRational::from_integer(BigInt::from(params.phase12_constant));
    FactorReport {
        class,
        phase12_constant: params.phase12_constant,
        total: &constant + &solution.objective,
        lp_optimum: solution.objective,
        published_factor: params.published_factor,
        lp_claimed_bound: big(params.lp_claimed_bound),
        claimed_total: big(params.claimed_total),
    }
}
