//! Lifts of (1,1) and (0,2) tensors, solved from their defining equations
//! against complete lifts of a spanning family of vector fields.

use std::fmt;

use crate::charts::ChartSpec;
use crate::error::{Error, Result};
use crate::fields::{endo_apply, form_pullback, Bilinear, EndoField, OneForm, VectorField};
use crate::symkernel::{Expr, Monomial};

use super::functions::complete_expr;
use super::oneforms::of_lift_solve;
use super::solver::{base_coords, monomials_upto, Ansatz, Certificate, SolveOptions, Solved};
use super::vectors::{require_base, vf_lift_solve};
use super::LiftKind;

/// Outcome of the 1-form clause `η^L(φ^L) = (ηφ)^L`, checked after solving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClauseStatus {
    Holds,
    Conflict { witness: String },
    Unavailable { reason: String },
}

impl fmt::Display for ClauseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClauseStatus::Holds => f.write_str("holds"),
            ClauseStatus::Conflict { witness } => write!(f, "conflict at {witness}"),
            ClauseStatus::Unavailable { reason } => write!(f, "not checked: {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLift {
    pub value: EndoField,
    pub certificate: Certificate,
    pub oneform_clause: ClauseStatus,
}

/// Which lift the right-hand side of the complete (1,1) equation carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndoRhs {
    /// `φ^{c^k}(ξ^{c^k}) = (φξ)^{c^k}`.
    Complete,
    /// The printed `φ^{c^k}(ξ^{c^k}) = (φξ)^{v^k}`, kept for comparison.
    PaperLiteral,
}

type Lifted = Vec<(VectorField, VectorField)>;

fn require_vertical_or_complete(kind: LiftKind) -> Result<()> {
    match kind {
        LiftKind::Vertical | LiftKind::Complete => Ok(()),
        other => Err(Error::Domain(format!(
            "tensor lifts are defined for vertical and complete kinds, not {other}"
        ))),
    }
}

/// `p ∂/∂x` for level-0 monomials `p` of degree at most `degree` (at least 1),
/// plus `∂/∂t` on time charts. The holdout uses multipliers one degree higher.
fn tensor_family(base: &ChartSpec, degree: u32, opts: &SolveOptions) -> (Vec<VectorField>, Vec<VectorField>) {
    let xs = base_coords(base);
    let d = degree.max(1);
    let build = |ps: &[Monomial]| -> Vec<VectorField> {
        let mut out = Vec::new();
        for p in ps {
            for x in &xs {
                let coeff = Expr::term(1.into(), p.clone());
                out.push(VectorField::from_pairs(*base, &[(*x, coeff)]).expect("base chart"));
            }
        }
        out
    };
    let mut solving = Vec::new();
    if base.has_time() {
        solving.push(VectorField::basis(*base, crate::symkernel::CoordId::TIME).expect("time chart"));
    }
    solving.extend(build(&monomials_upto(&xs, d)));
    let next: Vec<_> = monomials_upto(&xs, d + 1)
        .into_iter()
        .filter(|p| p.degree() == d + 1)
        .collect();
    let holdout = build(&next).into_iter().take(opts.holdout_limit).collect();
    (solving, holdout)
}

fn lift_all(fields: Vec<VectorField>, k: u32, opts: &SolveOptions) -> Result<Lifted> {
    fields
        .into_iter()
        .map(|x| {
            let up = vf_lift_solve(&x, LiftKind::Complete, k, opts)?.value;
            Ok((x, up))
        })
        .collect()
}

fn matrix_ansatz(ansatz: &mut Ansatz, chart: &ChartSpec, name: &str, degree: u32) -> Vec<Vec<Expr>> {
    let coords = chart.coordinates();
    let monos = monomials_upto(&coords, degree);
    coords
        .iter()
        .map(|a| {
            coords
                .iter()
                .map(|b| ansatz.poly(&format!("{name}[{a},{b}]"), &monos))
                .collect()
        })
        .collect()
}

fn matrix_apply(m: &[Vec<Expr>], x: &[Expr]) -> Vec<Expr> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect()
}

fn substituted(m: &[Vec<Expr>], sol: &std::collections::BTreeMap<crate::symkernel::UnknownId, Expr>) -> Vec<Vec<Expr>> {
    m.iter()
        .map(|row| row.iter().map(|e| e.substitute_unknowns(sol)).collect())
        .collect()
}

/// Definitional lift of a (1,1) tensor:
/// `φ^{v^k}(ξ^{c^k}) = (φξ)^{v^k}` or `φ^{c^k}(ξ^{c^k}) = (φξ)^{c^k}`.
pub fn t11_lift_solve(
    phi: &EndoField,
    kind: LiftKind,
    k: u32,
    opts: &SolveOptions,
) -> Result<TensorLift> {
    t11_lift_solve_with(phi, kind, k, opts, EndoRhs::Complete)
}

pub fn t11_lift_solve_with(
    phi: &EndoField,
    kind: LiftKind,
    k: u32,
    opts: &SolveOptions,
    rhs_mode: EndoRhs,
) -> Result<TensorLift> {
    let base = *require_base(phi.chart(), phi.chart())?;
    require_vertical_or_complete(kind)?;
    let rhs_kind = match (kind, rhs_mode) {
        (LiftKind::Complete, EndoRhs::Complete) => LiftKind::Complete,
        _ => LiftKind::Vertical,
    };
    let target = base.with_order(k);
    let degree = phi.degree() + opts.degree_slack;
    let (solving, holdout) = tensor_family(&base, degree, opts);
    let solving = lift_all(solving, k, opts)?;
    let holdout = lift_all(holdout, k, opts)?;

    let mut ansatz = Ansatz::new();
    let unknown = matrix_ansatz(&mut ansatz, &target, "phi", degree);
    let residual = |m: &[Vec<Expr>], x: &VectorField, xc: &VectorField| -> Result<Vec<Expr>> {
        let image = vf_lift_solve(&endo_apply(phi, x)?, rhs_kind, k, opts)?.value;
        Ok(matrix_apply(m, xc.components())
            .into_iter()
            .zip(image.components())
            .map(|(l, r)| l - r.clone())
            .collect())
    };
    let mut groups = Vec::new();
    for (x, xc) in &solving {
        groups.push((format!("xi = {x}"), residual(&unknown, x, xc)?));
    }
    let sol = ansatz.solve(&groups)?;
    let solved = substituted(&unknown, &sol);
    for (x, xc) in &holdout {
        if residual(&solved, x, xc)?.iter().any(|e| !e.is_zero()) {
            return Err(Error::Holdout {
                witness: format!("xi = {x}"),
            });
        }
    }
    let value = EndoField::new(target, solved)?;
    let oneform_clause = oneform_clause(phi, &value, kind, k, opts)?;
    Ok(TensorLift {
        value,
        certificate: Certificate {
            unknowns: ansatz.len(),
            ansatz_degree: degree,
            family: solving.iter().map(|(x, _)| format!("xi = {x}")).collect(),
            holdout: holdout.iter().map(|(x, _)| format!("xi = {x}")).collect(),
        },
        oneform_clause,
    })
}

/// `η^L(φ^L) = (ηφ)^L` for the coordinate cobasis `η = dz^{0i}`, `dz̄^{0i}`.
fn oneform_clause(
    phi: &EndoField,
    lifted: &EndoField,
    kind: LiftKind,
    k: u32,
    opts: &SolveOptions,
) -> Result<ClauseStatus> {
    let base = *phi.chart();
    for x in base_coords(&base) {
        let eta = OneForm::basis(base, x)?;
        let eta_phi = form_pullback(&eta, phi)?;
        if kind == LiftKind::Complete && !eta_phi.t_comp().is_zero() {
            return Ok(ClauseStatus::Unavailable {
                reason: format!("eta phi has a dt component for eta = d{x}"),
            });
        }
        let lhs = form_pullback(&of_lift_solve(&eta, kind, k, opts)?.value, lifted)?;
        let rhs = of_lift_solve(&eta_phi, kind, k, opts)?.value;
        if lhs != rhs {
            return Ok(ClauseStatus::Conflict {
                witness: format!("eta = d{x}: {lhs} vs {rhs}"),
            });
        }
    }
    Ok(ClauseStatus::Holds)
}

/// Definitional lift of a (0,2) tensor:
/// `G^L(X^{c^k}, Y^{c^k}) = (G(X, Y))^L` over ordered pairs of family fields.
pub fn t02_lift_solve(
    g: &Bilinear,
    kind: LiftKind,
    k: u32,
    opts: &SolveOptions,
) -> Result<Solved<Bilinear>> {
    let base = *require_base(g.chart(), g.chart())?;
    require_vertical_or_complete(kind)?;
    let steps = if kind == LiftKind::Complete { k } else { 0 };
    let target = base.with_order(k);
    let degree = g.degree() + opts.degree_slack;
    let (solving, holdout) = tensor_family(&base, degree, opts);
    let solving = lift_all(solving, k, opts)?;
    let holdout = lift_all(holdout, k, opts)?;

    let mut ansatz = Ansatz::new();
    let unknown = matrix_ansatz(&mut ansatz, &target, "G", degree);
    let residual = |m: &[Vec<Expr>], (x, xc): &(VectorField, VectorField), (y, yc): &(VectorField, VectorField)| -> Result<Expr> {
        let gy = matrix_apply(m, yc.components());
        let lhs: Expr = xc
            .components()
            .iter()
            .zip(&gy)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum();
        Ok(lhs - complete_expr(&g.eval(x, y)?, steps))
    };
    let mut groups = Vec::new();
    for a in &solving {
        for b in &solving {
            groups.push((format!("X = {}, Y = {}", a.0, b.0), vec![residual(&unknown, a, b)?]));
        }
    }
    let sol = ansatz.solve(&groups)?;
    let solved = substituted(&unknown, &sol);
    let mut checked = Vec::new();
    for h in &holdout {
        for other in solving.iter().take(2) {
            for (a, b) in [(h, other), (other, h)] {
                if !residual(&solved, a, b)?.is_zero() {
                    return Err(Error::Holdout {
                        witness: format!("X = {}, Y = {}", a.0, b.0),
                    });
                }
            }
        }
        checked.push(format!("X = {}", h.0));
    }
    Ok(Solved {
        value: Bilinear::new(target, solved)?,
        certificate: Certificate {
            unknowns: ansatz.len(),
            ansatz_degree: degree,
            family: solving.iter().map(|(x, _)| format!("X = {x}")).collect(),
            holdout: checked,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::{CoordId, Expr};

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    fn j0(m: u32) -> EndoField {
        let c = ChartSpec::new(m, 0, false).unwrap();
        let diag = c
            .coordinates()
            .iter()
            .map(|x| match x.kind() {
                crate::symkernel::CoordKind::Holo => Expr::i(),
                _ => -Expr::i(),
            })
            .collect();
        EndoField::diagonal(c, diag).unwrap()
    }

    #[test]
    fn identity_lifts_completely_to_identity() {
        for k in 1..=2 {
            let id = EndoField::identity(ChartSpec::new(1, 0, false).unwrap());
            let up = t11_lift_solve(&id, LiftKind::Complete, k, &opts()).unwrap();
            assert_eq!(up.value, EndoField::identity(ChartSpec::new(1, k, false).unwrap()));
            assert_eq!(up.oneform_clause, ClauseStatus::Holds);
        }
    }

    #[test]
    fn identity_lifts_vertically_to_nilpotent() {
        let id = EndoField::identity(ChartSpec::new(1, 0, false).unwrap());
        let up = t11_lift_solve(&id, LiftKind::Vertical, 1, &opts()).unwrap();
        let c = ChartSpec::new(1, 1, false).unwrap();
        let mut expected = EndoField::zero(c);
        expected.set_entry(c.holo(1, 1), c.holo(0, 1), Expr::one()).unwrap();
        expected.set_entry(c.anti(1, 1), c.anti(0, 1), Expr::one()).unwrap();
        assert_eq!(up.value, expected);
        assert!(matches!(up.oneform_clause, ClauseStatus::Conflict { .. }));
    }

    #[test]
    fn complex_structure_complete_lift() {
        let up = t11_lift_solve(&j0(1), LiftKind::Complete, 1, &opts()).unwrap();
        let c = ChartSpec::new(1, 1, false).unwrap();
        let i = Expr::i();
        let expected = EndoField::diagonal(c, vec![i.clone(), i.clone(), -i.clone(), -i]).unwrap();
        assert_eq!(up.value, expected);
    }

    #[test]
    fn literal_rhs_differs_for_complete() {
        let id = EndoField::identity(ChartSpec::new(1, 0, false).unwrap());
        let literal =
            t11_lift_solve_with(&id, LiftKind::Complete, 1, &opts(), EndoRhs::PaperLiteral).unwrap();
        let vertical = t11_lift_solve(&id, LiftKind::Vertical, 1, &opts()).unwrap();
        assert_eq!(literal.value, vertical.value);
    }

    #[test]
    fn time_chart_identity() {
        let id = EndoField::identity(ChartSpec::new(1, 0, true).unwrap());
        let up = t11_lift_solve(&id, LiftKind::Complete, 1, &opts()).unwrap();
        assert_eq!(up.value, EndoField::identity(ChartSpec::new(1, 1, true).unwrap()));
    }

    fn flat_metric() -> Bilinear {
        let c = ChartSpec::new(1, 0, false).unwrap();
        let mut g = Bilinear::zero(c);
        g.set_entry(c.holo(0, 1), c.anti(0, 1), Expr::one()).unwrap();
        g.set_entry(c.anti(0, 1), c.holo(0, 1), Expr::one()).unwrap();
        g
    }

    #[test]
    fn metric_lifts() {
        let c = ChartSpec::new(1, 1, false).unwrap();
        let v = t02_lift_solve(&flat_metric(), LiftKind::Vertical, 1, &opts()).unwrap().value;
        let mut expected = Bilinear::zero(c);
        expected.set_entry(c.holo(0, 1), c.anti(0, 1), Expr::one()).unwrap();
        expected.set_entry(c.anti(0, 1), c.holo(0, 1), Expr::one()).unwrap();
        assert_eq!(v, expected);

        let cl = t02_lift_solve(&flat_metric(), LiftKind::Complete, 1, &opts()).unwrap().value;
        let mut expected = Bilinear::zero(c);
        for (a, b) in [(c.holo(0, 1), c.anti(1, 1)), (c.holo(1, 1), c.anti(0, 1))] {
            expected.set_entry(a, b, Expr::one()).unwrap();
            expected.set_entry(b, a, Expr::one()).unwrap();
        }
        assert_eq!(cl, expected);
        assert!(cl.is_symmetric());

        let zero = Bilinear::zero(ChartSpec::new(1, 0, false).unwrap());
        assert!(t02_lift_solve(&zero, LiftKind::Complete, 2, &opts())
            .unwrap()
            .value
            .matrix()
            .iter()
            .flatten()
            .all(Expr::is_zero));
    }

    #[test]
    fn horizontal_kind_is_rejected() {
        let id = EndoField::identity(ChartSpec::new(1, 0, false).unwrap());
        assert!(t11_lift_solve(&id, LiftKind::Horizontal, 1, &opts()).is_err());
        let _ = CoordId::TIME;
    }
}
