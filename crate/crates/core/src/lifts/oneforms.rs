//! 1-form lifts from a base chart to its order-`k` extension.

use crate::charts::ChartSpec;
use crate::error::{Error, Result};
use crate::fields::{pair, OneForm, VectorField};
use crate::symkernel::{binomial, CoordId, Expr, GaussianRational};

use super::functions::{complete_expr, cv_expr};
use super::solver::{base_coords, monomials_upto, Ansatz, Certificate, SolveOptions, Solved};
use super::vectors::{require_base, require_constant_time, vf_lift_solve};
use super::LiftKind;

/// Closed-form vertical lift: same components, cobasis stays at level 0.
pub fn of_vertical_closed(w: &OneForm, k: u32) -> Result<OneForm> {
    let base = *require_base(w.chart(), w.chart())?;
    w.embed(base.with_order(k))
}

/// Complete lift as printed: `(ω_{0i})^{c^{k−r}v^r}` on `dz^{ri}`.
pub fn of_complete_paper(w: &OneForm, k: u32) -> Result<OneForm> {
    let base = *require_base(w.chart(), w.chart())?;
    require_constant_time(&w.t_comp(), "the complete lift")?;
    let target = base.with_order(k);
    let mut out = OneForm::zero(target);
    if base.has_time() {
        out.set(CoordId::TIME, w.t_comp())?;
    }
    for r in 0..=k {
        for i in 1..=base.m() {
            out.set(target.holo(r, i), complete_expr(&w.comp(0, i), k - r))?;
            out.set(target.anti(r, i), complete_expr(&w.compbar(0, i), k - r))?;
        }
    }
    Ok(out)
}

/// Complete-vertical lift as printed: level `l` carries
/// `(C_l^r / C_l^k) (ω_{0i})^{v^{s+l}c^{r−l}}`, zero when `l > r`.
pub fn of_cv_paper(w: &OneForm, r: u32, s: u32) -> Result<OneForm> {
    let base = *require_base(w.chart(), w.chart())?;
    let k = r + s;
    let target = base.with_order(k);
    let mut out = OneForm::zero(target);
    if base.has_time() {
        out.set(CoordId::TIME, w.t_comp())?;
    }
    for l in 0..=r {
        let ratio = GaussianRational::from_ratio(
            binomial(r, l)? as i64,
            binomial(k, l)? as i64,
        );
        for i in 1..=base.m() {
            out.set(target.holo(l, i), complete_expr(&w.comp(0, i), r - l).scale(&ratio))?;
            out.set(target.anti(l, i), complete_expr(&w.compbar(0, i), r - l).scale(&ratio))?;
        }
    }
    Ok(out)
}

/// Smallest multiplier degree whose monomial count reaches `k + 1`.
fn multiplier_degree(m: u32, k: u32) -> u32 {
    let n = 2 * m;
    let mut d = 0;
    while binomial(n + d, d).expect("d <= n + d") < (k + 1) as u64 {
        d += 1;
    }
    d
}

/// Test vector fields `p ∂/∂x` (plus `∂/∂t` on time charts) for 1-form
/// lifts, and a holdout with higher-degree multipliers.
pub(crate) fn vector_family(base: &ChartSpec, k: u32) -> (Vec<VectorField>, Vec<VectorField>) {
    let xs = base_coords(base);
    let d = multiplier_degree(base.m(), k);
    let build = |ps: &[crate::symkernel::Monomial]| -> Vec<VectorField> {
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
        solving.push(VectorField::basis(*base, CoordId::TIME).expect("time chart"));
    }
    solving.extend(build(&monomials_upto(&xs, d)));
    let next: Vec<_> = monomials_upto(&xs, d + 1)
        .into_iter()
        .filter(|p| p.degree() == d + 1)
        .collect();
    (solving, build(&next))
}

/// Complete lifts of the 1-form test family, computed by the vector solver.
pub(crate) fn lifted_vector_family(
    base: &ChartSpec,
    k: u32,
    opts: &SolveOptions,
) -> Result<(Vec<(VectorField, VectorField)>, Vec<(VectorField, VectorField)>)> {
    let (solving, holdout) = vector_family(base, k);
    let lift = |fields: Vec<VectorField>| -> Result<Vec<(VectorField, VectorField)>> {
        fields
            .into_iter()
            .map(|w| {
                let up = vf_lift_solve(&w, LiftKind::Complete, k, opts)?.value;
                Ok((w, up))
            })
            .collect()
    };
    let holdout: Vec<_> = holdout.into_iter().take(opts.holdout_limit).collect();
    Ok((lift(solving)?, lift(holdout)?))
}

/// Definitional lift: the unique 1-form `α` on `^kN` with
/// `α(Z^{c^k}) = (ωZ)^{c^r v^s}` for every test field `Z`.
pub fn of_lift_solve(
    w: &OneForm,
    kind: LiftKind,
    k: u32,
    opts: &SolveOptions,
) -> Result<Solved<OneForm>> {
    let base = *require_base(w.chart(), w.chart())?;
    let (r, s) = kind.orders(k)?;
    if r >= 1 && !w.t_comp().is_zero() {
        return Err(Error::Domain(format!(
            "{kind} lift of a 1-form needs a zero dt component, got {}",
            w.t_comp()
        )));
    }
    let family = lifted_vector_family(&base, k, opts)?;
    of_lift_solve_with(w, r, s, k, opts, &family)
}

pub(crate) fn of_lift_solve_with(
    w: &OneForm,
    r: u32,
    s: u32,
    k: u32,
    opts: &SolveOptions,
    family: &(Vec<(VectorField, VectorField)>, Vec<(VectorField, VectorField)>),
) -> Result<Solved<OneForm>> {
    let target = w.chart().with_order(k);
    let coords = target.coordinates();
    let degree = w.degree() + opts.degree_slack;
    let monos = monomials_upto(&coords, degree);
    let mut ansatz = Ansatz::new();
    let comps: Vec<Expr> = coords
        .iter()
        .map(|c| ansatz.poly(&format!("d{c}"), &monos))
        .collect();
    let residual = |comps: &[Expr], base_field: &VectorField, lifted: &VectorField| -> Result<Expr> {
        let lhs: Expr = comps
            .iter()
            .zip(lifted.components())
            .filter(|(_, y)| !y.is_zero())
            .map(|(a, y)| a * y)
            .sum();
        let rhs = pair(w, base_field)?.into_value();
        Ok(lhs - cv_expr(&rhs, r, s))
    };
    let (solving, holdout) = family;
    let mut groups = Vec::new();
    for (z, up) in solving {
        groups.push((format!("Z = {z}"), vec![residual(&comps, z, up)?]));
    }
    let sol = ansatz.solve(&groups)?;
    let solved: Vec<Expr> = comps.iter().map(|e| e.substitute_unknowns(&sol)).collect();
    for (z, up) in holdout {
        if !residual(&solved, z, up)?.is_zero() {
            return Err(Error::Holdout {
                witness: format!("Z = {z}"),
            });
        }
    }
    Ok(Solved {
        value: OneForm::new(target, solved)?,
        certificate: Certificate {
            unknowns: ansatz.len(),
            ansatz_degree: degree,
            family: solving.iter().map(|(z, _)| format!("Z = {z}")).collect(),
            holdout: holdout.iter().map(|(z, _)| format!("Z = {z}")).collect(),
        },
    })
}
