//! Determined-lift machinery shared by the vector, 1-form and tensor lifts.
//!
//! A lift is recovered as the unique solution of its defining equation: the
//! unknown object gets polynomial components with fresh unknown
//! coefficients, the equation is imposed on every member of a solving
//! family, and the result is re-checked on a disjoint holdout family.

use std::collections::BTreeMap;
use std::fmt;

use crate::charts::ChartSpec;
use crate::error::{Error, Result};
use crate::symkernel::{solve_linear, Atom, CoordId, Expr, Monomial, SolveError, UnknownId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Extra degree allowed in the ansatz beyond the input's degree.
    pub degree_slack: u32,
    /// How many holdout members to verify.
    pub holdout_limit: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            degree_slack: 0,
            holdout_limit: 4,
        }
    }
}

/// Evidence that a solved lift is the unique ansatz solution and that it
/// satisfies the defining equation beyond the family used to find it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub unknowns: usize,
    pub ansatz_degree: u32,
    pub family: Vec<String>,
    pub holdout: Vec<String>,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} unknowns (degree <= {}), solved on [{}], holdout [{}] residual 0",
            self.unknowns,
            self.ansatz_degree,
            self.family.join("; "),
            self.holdout.join("; ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solved<T> {
    pub value: T,
    pub certificate: Certificate,
}

/// Every monomial of total degree at most `max_degree` in `coords`.
pub fn monomials_upto(coords: &[CoordId], max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![(Monomial::one(), 0usize)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for (m, start) in &frontier {
            for (n, c) in coords.iter().enumerate().skip(*start) {
                let grown = m.mul(&Monomial::atom(Atom::Coord(*c)));
                next.push((grown.clone(), n));
                out.push(grown);
            }
        }
        frontier = next;
    }
    out
}

/// Fresh unknown coefficients, remembered with a readable label each.
#[derive(Default)]
pub(crate) struct Ansatz {
    labels: Vec<String>,
}

impl Ansatz {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Σ u_μ μ` over `monos`, one fresh unknown per monomial.
    pub fn poly(&mut self, label: &str, monos: &[Monomial]) -> Expr {
        let mut out = Expr::zero();
        for m in monos {
            let id = UnknownId(self.labels.len() as u32);
            self.labels.push(format!("{label}[{}]", Expr::term(1.into(), m.clone())));
            out = out + Expr::term(1.into(), m.mul(&Monomial::atom(Atom::Unknown(id))));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Solve the labelled equation groups; errors name the family member or
    /// the free ansatz slots.
    pub fn solve(&self, groups: &[(String, Vec<Expr>)]) -> Result<BTreeMap<UnknownId, Expr>> {
        let mut eqs = Vec::new();
        let mut owner = Vec::new();
        for (n, (_, g)) in groups.iter().enumerate() {
            for e in g {
                eqs.push(e.clone());
                owner.push(n);
            }
        }
        let ids: Vec<UnknownId> = (0..self.labels.len() as u32).map(UnknownId).collect();
        solve_linear(&eqs, &ids).map_err(|source| {
            let detail = match &source {
                SolveError::Inconsistent { equation, monomial } => format!(
                    "no solution: defining equation fails for {} at monomial {monomial}",
                    groups[owner[*equation]].0
                ),
                SolveError::Underdetermined(free) => format!(
                    "free unknowns: {}",
                    free.iter()
                        .take(6)
                        .map(|u| self.labels[u.0 as usize].clone())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                other => other.to_string(),
            };
            Error::Solver { detail, source }
        })
    }
}

/// Level-0 coordinates of a base chart, without time.
pub(crate) fn base_coords(chart: &ChartSpec) -> Vec<CoordId> {
    chart
        .base()
        .coordinates()
        .into_iter()
        .filter(|c| !c.is_time())
        .collect()
}

/// Products of exactly `degree` coordinates drawn from `coords`.
pub(crate) fn products(coords: &[CoordId], degree: u32) -> Vec<Expr> {
    monomials_upto(coords, degree)
        .into_iter()
        .filter(|m| m.degree() == degree)
        .map(|m| Expr::term(1.into(), m))
        .collect()
}

/// Test functions for vector lifts: level-0 coordinates, their degree-2
/// products and powers up to `k+1`; holdout is degree-3 non-powers.
pub(crate) fn function_family(chart: &ChartSpec, k: u32, with_time: bool) -> (Vec<Expr>, Vec<Expr>) {
    let xs = base_coords(chart);
    let mut solving = Vec::new();
    if with_time && chart.has_time() {
        solving.push(Expr::time());
    }
    solving.extend(products(&xs, 1));
    solving.extend(products(&xs, 2));
    for d in 3..=k + 1 {
        for x in &xs {
            solving.push(Expr::coord(*x).pow(d as i64).expect("positive power"));
        }
    }
    let holdout = products(&xs, 3)
        .into_iter()
        .filter(|e| e.terms().all(|(m, _)| m.factors().len() > 1))
        .collect();
    (solving, holdout)
}
