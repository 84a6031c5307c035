//! Exact solver for linear systems whose coefficients are coordinate
//! polynomials.
//!
//! Every input equation `E = 0` is linear in the unknowns. Matching the
//! coefficient of each coordinate monomial turns it into scalar equations
//! over the Gaussian rationals, which are reduced incrementally to reduced
//! row echelon form.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::expr::{Atom, Expr, Monomial, UnknownId};
use super::gaussian::GaussianRational;
use super::SolveError;

#[derive(Clone, Debug)]
struct Row {
    coeffs: BTreeMap<usize, GaussianRational>,
    rhs: GaussianRational,
}

impl Row {
    /// `self -= factor * other`
    fn sub_scaled(&mut self, factor: &GaussianRational, other: &Row) {
        for (v, c) in &other.coeffs {
            let delta = factor * c;
            let entry = self.coeffs.entry(*v).or_insert_with(GaussianRational::zero);
            *entry -= &delta;
            if entry.is_zero() {
                self.coeffs.remove(v);
            }
        }
        self.rhs -= &(factor * &other.rhs);
    }
}

/// Where a scalar row came from, for diagnostics.
#[derive(Clone, Debug)]
struct Origin {
    equation: usize,
    monomial: Monomial,
}

/// Incremental Gauss–Jordan elimination. Pivot rows never contain another
/// pivot variable, so reducing a new row takes a single pass.
#[derive(Default)]
pub(crate) struct Echelon {
    pivots: HashMap<usize, Row>,
    occurs: HashMap<usize, BTreeSet<usize>>,
}

impl Echelon {
    /// Returns `Err(())` when the row reduces to `0 = c` with `c ≠ 0`.
    fn add(&mut self, mut row: Row) -> Result<(), ()> {
        let hits: Vec<usize> = row
            .coeffs
            .keys()
            .filter(|v| self.pivots.contains_key(v))
            .copied()
            .collect();
        for v in hits {
            if let Some(f) = row.coeffs.get(&v).cloned() {
                row.sub_scaled(&f, &self.pivots[&v]);
            }
        }
        let Some((&p, lead)) = row
            .coeffs
            .iter()
            .min_by_key(|(v, _)| self.occurs.get(v).map_or(0, BTreeSet::len))
        else {
            return if row.rhs.is_zero() { Ok(()) } else { Err(()) };
        };
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero pivot");
            for c in row.coeffs.values_mut() {
                *c = &*c * &inv;
            }
            row.rhs = &row.rhs * &inv;
        }
        // Eliminate p from every pivot row that mentions it.
        let users = self.occurs.remove(&p).unwrap_or_default();
        for q in users {
            let target = self.pivots.get_mut(&q).expect("occurrence index");
            let Some(f) = target.coeffs.get(&p).cloned() else {
                continue;
            };
            let before: BTreeSet<usize> = target.coeffs.keys().copied().collect();
            target.sub_scaled(&f, &row);
            for v in row.coeffs.keys().filter(|&&v| v != p) {
                let now = target.coeffs.contains_key(v);
                let was = before.contains(v);
                if now && !was {
                    self.occurs.entry(*v).or_default().insert(q);
                } else if !now && was {
                    if let Some(s) = self.occurs.get_mut(v) {
                        s.remove(&q);
                    }
                }
            }
        }
        for v in row.coeffs.keys().filter(|&&v| v != p) {
            self.occurs.entry(*v).or_default().insert(p);
        }
        self.pivots.insert(p, row);
        Ok(())
    }
}

fn linear_rows(
    eq: &Expr,
    index_of: &BTreeMap<UnknownId, usize>,
) -> Result<BTreeMap<Monomial, Row>, SolveError> {
    let mut rows: BTreeMap<Monomial, Row> = BTreeMap::new();
    for (m, c) in eq.terms() {
        let (u, coord) = m.split_unknowns();
        let row = rows.entry(coord).or_insert_with(|| Row {
            coeffs: BTreeMap::new(),
            rhs: GaussianRational::zero(),
        });
        match u.factors() {
            [] => row.rhs -= c,
            [(Atom::Unknown(id), 1)] => {
                let Some(&ix) = index_of.get(id) else {
                    return Err(SolveError::UnlistedUnknown(*id));
                };
                let e = row.coeffs.entry(ix).or_insert_with(GaussianRational::zero);
                *e += c;
                if e.is_zero() {
                    row.coeffs.remove(&ix);
                }
            }
            _ => return Err(SolveError::Nonlinear(u.to_string())),
        }
    }
    Ok(rows)
}

/// Solve `equations[n] = 0` for `unknowns`, matching coefficients of every
/// coordinate monomial. Returns the unique assignment.
pub fn solve_linear(
    equations: &[Expr],
    unknowns: &[UnknownId],
) -> Result<BTreeMap<UnknownId, Expr>, SolveError> {
    let index_of: BTreeMap<UnknownId, usize> = unknowns
        .iter()
        .enumerate()
        .map(|(n, u)| (*u, n))
        .collect();
    let mut ech = Echelon::default();
    for (n, eq) in equations.iter().enumerate() {
        for (monomial, row) in linear_rows(eq, &index_of)? {
            let origin = Origin {
                equation: n,
                monomial,
            };
            if ech.add(row).is_err() {
                return Err(SolveError::Inconsistent {
                    equation: origin.equation,
                    monomial: origin.monomial.to_string(),
                });
            }
        }
    }
    let free: Vec<UnknownId> = unknowns
        .iter()
        .enumerate()
        .filter(|(n, _)| !ech.pivots.contains_key(n))
        .map(|(_, u)| *u)
        .collect();
    if !free.is_empty() {
        return Err(SolveError::Underdetermined(free));
    }
    Ok(unknowns
        .iter()
        .enumerate()
        .map(|(n, u)| (*u, Expr::constant(ech.pivots[&n].rhs.clone())))
        .collect())
}
