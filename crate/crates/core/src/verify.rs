//! Checks of the computed classes against the interpolation axioms and the
//! identities every equivariant CSM class satisfies.
//!
//! Failures are reports rather than errors; each failing report carries a
//! witness polynomial (remainder, difference or offending value) in canonical
//! text form.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{divide_exact, Polynomial};
use crate::error::AlgebraError;
use crate::error::{Error, Result};
use crate::flag::{IndexTuple, Shape};
use crate::weight::{check_budget, restriction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `κ_I|_{x_J}` is divisible by `c(T_{x_J}Ω_J)`.
    Divisibility,
    /// `κ_I|_{x_I} = c(T_{x_I}Ω_I) · e(N_{x_I}Ω_I)`.
    Diagonal,
    /// `deg κ_I|_{x_J} < dim Fl` for `I ≠ J`.
    Degree,
    /// `κ_I|_{x_J} = 0` unless `J ≤ I`.
    Vanishing,
    /// `Σ_I κ_I|_{x_J} = c(T Fl)|_{x_J}`.
    SumRule,
    /// The top-degree part of `κ_I|_{x_I}` is `e(T_{x_I} Fl)`.
    EulerTop,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Divisibility => "divisibility",
            Check::Diagonal => "diagonal",
            Check::Degree => "degree",
            Check::Vanishing => "vanishing",
            Check::SumRule => "sum_rule",
            Check::EulerTop => "euler_top",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of one check. `i` is `None` for the sum rule, which ranges over
/// every `I` at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub shape: Shape,
    pub check: Check,
    pub i: Option<IndexTuple>,
    pub j: Option<IndexTuple>,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

#[derive(Serialize)]
struct ReportRecord {
    shape: String,
    check: Check,
    #[serde(rename = "I")]
    i: String,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    j: Option<String>,
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

impl AxiomReport {
    fn new(shape: Shape, check: Check, i: Option<&IndexTuple>, j: Option<&IndexTuple>) -> Self {
        AxiomReport {
            shape,
            check,
            i: i.cloned(),
            j: j.cloned(),
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    fn fail(mut self, witness: impl Into<String>) -> Self {
        self.verdict = Verdict::Fail;
        self.witness = Some(witness.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One JSON object, no trailing newline. The sum rule reports `"I": "*"`.
    pub fn to_json_line(&self) -> String {
        let record = ReportRecord {
            shape: self.shape.to_string(),
            check: self.check,
            i: self
                .i
                .as_ref()
                .map_or_else(|| "*".to_string(), ToString::to_string),
            j: self.j.as_ref().map(ToString::to_string),
            verdict: self.verdict,
            witness: self.witness.clone(),
        };
        serde_json::to_string(&record).expect("report serializes")
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} [{}]", self.verdict, self.check, self.shape)?;
        match &self.i {
            Some(i) => write!(f, " I={i}")?,
            None => write!(f, " I=*")?,
        }
        if let Some(j) = &self.j {
            write!(f, " J={j}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

/// Axiom (I) on a precomputed restriction. At `J = I` the quotient must also
/// equal `e(N_{x_I}Ω_I)`.
pub fn divisibility(i: &IndexTuple, j: &IndexTuple, value: &Polynomial) -> AxiomReport {
    let report = AxiomReport::new(j.shape(), Check::Divisibility, Some(i), Some(j));
    let mut quotient = value.clone();
    for form in j.tangent_weights().chern_forms() {
        match divide_exact(&quotient, &form) {
            Ok(q) => quotient = q,
            Err(AlgebraError::NotDivisible { divisor, remainder }) => {
                return report.fail(format!("remainder {remainder} mod {divisor}"));
            }
            Err(e) => return report.fail(e.to_string()),
        }
    }
    if i == j {
        let euler = i.local_euler();
        if quotient != euler {
            return report.fail(format!(
                "quotient minus normal Euler class: {}",
                &quotient - &euler
            ));
        }
    }
    report
}

/// Axiom (II): the diagonal restriction.
pub fn diagonal(i: &IndexTuple, value: &Polynomial) -> AxiomReport {
    let report = AxiomReport::new(i.shape(), Check::Diagonal, Some(i), Some(i));
    let diff = value - &(&i.local_chern() * &i.local_euler());
    if diff.is_zero() {
        report
    } else {
        report.fail(diff.to_string())
    }
}

/// Axiom (III). The zero polynomial has degree −∞ and passes.
pub fn degree(i: &IndexTuple, j: &IndexTuple, value: &Polynomial) -> Result<AxiomReport> {
    if i == j {
        return Err(Error::NotApplicable {
            check: "degree",
            reason: format!("I = J = {i}"),
        });
    }
    let shape = i.shape();
    let bound = shape.dim();
    let report = AxiomReport::new(shape, Check::Degree, Some(i), Some(j));
    Ok(match value.degree() {
        Some(d) if d as usize >= bound => report.fail(format!("degree {d} >= {bound}")),
        _ => report,
    })
}

pub fn vanishing(i: &IndexTuple, j: &IndexTuple, value: &Polynomial) -> AxiomReport {
    let report = AxiomReport::new(i.shape(), Check::Vanishing, Some(i), Some(j));
    if j.bruhat_leq(i) || value.is_zero() {
        report
    } else {
        report.fail(value.to_string())
    }
}

/// Sum rule at `x_J`; `column` holds `κ_I|_{x_J}` for every `I`.
pub fn sum_rule<'a>(
    j: &IndexTuple,
    column: impl IntoIterator<Item = &'a Polynomial>,
) -> AxiomReport {
    let report = AxiomReport::new(j.shape(), Check::SumRule, None, Some(j));
    let total: Polynomial = column
        .into_iter()
        .fold(Polynomial::zero(), |acc, p| &acc + p);
    let diff = &total - &j.all_weights().chern();
    if diff.is_zero() {
        report
    } else {
        report.fail(diff.to_string())
    }
}

/// Leading term: the degree `dim Fl` part of `κ_I|_{x_I}` is the full tangent
/// Euler class at `x_I`.
pub fn euler_top(i: &IndexTuple, value: &Polynomial) -> AxiomReport {
    let shape = i.shape();
    let top = value.homogeneous_part(shape.dim() as u32);
    let report = AxiomReport::new(shape, Check::EulerTop, Some(i), Some(i));
    let diff = &top - &i.all_weights().euler();
    if diff.is_zero() {
        report
    } else {
        report.fail(diff.to_string())
    }
}

pub fn check_divisibility(i: &IndexTuple, j: &IndexTuple, budget: u64) -> Result<AxiomReport> {
    Ok(divisibility(i, j, &restriction(i, j, budget)?))
}

pub fn check_diagonal(i: &IndexTuple, budget: u64) -> Result<AxiomReport> {
    Ok(diagonal(i, &restriction(i, i, budget)?))
}

pub fn check_degree(i: &IndexTuple, j: &IndexTuple, budget: u64) -> Result<AxiomReport> {
    if i == j {
        return degree(i, j, &Polynomial::zero());
    }
    degree(i, j, &restriction(i, j, budget)?)
}

pub fn check_vanishing(i: &IndexTuple, j: &IndexTuple, budget: u64) -> Result<AxiomReport> {
    Ok(vanishing(i, j, &restriction(i, j, budget)?))
}

pub fn check_sum_rule(j: &IndexTuple, budget: u64) -> Result<AxiomReport> {
    let column = j
        .shape()
        .index_tuples()
        .iter()
        .map(|i| restriction(i, j, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(sum_rule(j, &column))
}

pub fn check_euler_top(i: &IndexTuple, budget: u64) -> Result<AxiomReport> {
    Ok(euler_top(i, &restriction(i, i, budget)?))
}

/// Every restriction `κ_I|_{x_J}` of a shape, indexed in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionMatrix {
    shape: Shape,
    tuples: Vec<IndexTuple>,
    values: Vec<Polynomial>,
}

impl RestrictionMatrix {
    pub fn compute(shape: &Shape, budget: u64) -> Result<Self> {
        Self::compute_with(shape, budget, |i, j| restriction(i, j, budget))
    }

    /// Fills the matrix from `source`, in parallel over pairs. The result does
    /// not depend on scheduling.
    pub fn compute_with<F>(shape: &Shape, budget: u64, source: F) -> Result<Self>
    where
        F: Fn(&IndexTuple, &IndexTuple) -> Result<Polynomial> + Sync,
    {
        check_budget(shape, budget)?;
        let tuples = shape.index_tuples();
        let m = tuples.len();
        let values = (0..m * m)
            .into_par_iter()
            .map(|idx| source(&tuples[idx / m], &tuples[idx % m]))
            .collect::<Result<Vec<_>>>()?;
        Ok(RestrictionMatrix {
            shape: shape.clone(),
            tuples,
            values,
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn tuples(&self) -> &[IndexTuple] {
        &self.tuples
    }

    /// `κ_I|_{x_J}` by canonical positions of `I` and `J`.
    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.values[i * self.tuples.len() + j]
    }

    pub fn get(&self, i: &IndexTuple, j: &IndexTuple) -> Option<&Polynomial> {
        let a = self.tuples.iter().position(|t| t == i)?;
        let b = self.tuples.iter().position(|t| t == j)?;
        Some(self.at(a, b))
    }

    /// All reports for the shape. Per `I` in canonical order: diagonal, euler
    /// top, then divisibility, degree and vanishing for each `J`; finally the
    /// sum rule at every fixed point.
    pub fn verify(&self) -> Vec<AxiomReport> {
        let m = self.tuples.len();
        let mut reports: Vec<AxiomReport> = (0..m)
            .into_par_iter()
            .flat_map_iter(|a| {
                let i = &self.tuples[a];
                let diag = self.at(a, a);
                let mut out = vec![diagonal(i, diag), euler_top(i, diag)];
                for (b, j) in self.tuples.iter().enumerate() {
                    let value = self.at(a, b);
                    out.push(divisibility(i, j, value));
                    if a != b {
                        out.push(degree(i, j, value).expect("off-diagonal"));
                    }
                    out.push(vanishing(i, j, value));
                }
                out
            })
            .collect();
        reports.extend(
            self.tuples
                .iter()
                .enumerate()
                .map(|(b, j)| sum_rule(j, (0..m).map(|a| self.at(a, b)))),
        );
        reports
    }
}

/// Runs every check over every fixed point and pair of `sh`.
pub fn verify_all(shape: &Shape, budget: u64) -> Result<Vec<AxiomReport>> {
    Ok(RestrictionMatrix::compute(shape, budget)?.verify())
}
