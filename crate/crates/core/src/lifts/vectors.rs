//! Vector-field lifts from a base chart to its order-`k` extension.

use crate::error::{Error, Result};
use crate::fields::VectorField;
use crate::symkernel::{binomial, Expr};

use super::functions::{complete_expr, cv_expr};
use super::solver::{function_family, monomials_upto, Ansatz, Certificate, SolveOptions, Solved};
use super::LiftKind;

pub(crate) fn require_base<T>(chart: &crate::charts::ChartSpec, value: T) -> Result<T> {
    if chart.k() != 0 {
        return Err(Error::NotBase);
    }
    Ok(value)
}

pub(crate) fn require_constant_time(t: &Expr, what: &str) -> Result<()> {
    if t.is_constant() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} needs a constant d/dt component, got {t}"
        )))
    }
}

fn binom_or_zero(r: u32, j: i64) -> i64 {
    if j < 0 || j as u32 > r {
        0
    } else {
        binomial(r, j as u32).expect("checked range") as i64
    }
}

/// Closed-form vertical lift: every `Z^{0i}` moves to `∂/∂z^{ki}`.
pub fn vf_vertical_closed(z: &VectorField, k: u32) -> Result<VectorField> {
    let base = *require_base(z.chart(), z.chart())?;
    let target = base.with_order(k);
    let mut out = VectorField::zero(target);
    if base.has_time() {
        out.set(crate::symkernel::CoordId::TIME, z.t_comp())?;
    }
    for i in 1..=base.m() {
        out.set(target.holo(k, i), z.comp(0, i))?;
        out.set(target.anti(k, i), z.compbar(0, i))?;
    }
    Ok(out)
}

/// Complete lift as printed: level `r` carries `C_r^k (Z^{0i})^{v^{k−r}c^r}`.
pub fn vf_complete_paper(z: &VectorField, k: u32) -> Result<VectorField> {
    let base = *require_base(z.chart(), z.chart())?;
    require_constant_time(&z.t_comp(), "the complete lift")?;
    let target = base.with_order(k);
    let mut out = VectorField::zero(target);
    if base.has_time() {
        out.set(crate::symkernel::CoordId::TIME, z.t_comp())?;
    }
    for r in 0..=k {
        let w = binom_or_zero(k, r as i64);
        for i in 1..=base.m() {
            out.set(target.holo(r, i), complete_expr(&z.comp(0, i), r).scale_int(w))?;
            out.set(target.anti(r, i), complete_expr(&z.compbar(0, i), r).scale_int(w))?;
        }
    }
    Ok(out)
}

/// Complete-vertical lift as printed: level `l` carries
/// `C_{k−1}^r (Z^{0i})^{v^{s+k−l}c^{l−s}}`, zero when `l < s`. The weight is
/// read as `binom(k−1, r)`, which vanishes at `r = k`.
pub fn vf_cv_paper(z: &VectorField, r: u32, s: u32) -> Result<VectorField> {
    let base = *require_base(z.chart(), z.chart())?;
    let k = r + s;
    if k == 0 {
        return Err(Error::NeedsPositiveOrder);
    }
    let target = base.with_order(k);
    let mut out = VectorField::zero(target);
    if base.has_time() {
        out.set(crate::symkernel::CoordId::TIME, z.t_comp())?;
    }
    let w = binom_or_zero(k - 1, r as i64);
    for l in s..=k {
        for i in 1..=base.m() {
            out.set(target.holo(l, i), complete_expr(&z.comp(0, i), l - s).scale_int(w))?;
            out.set(target.anti(l, i), complete_expr(&z.compbar(0, i), l - s).scale_int(w))?;
        }
    }
    Ok(out)
}

/// Definitional lift: the unique vector field `Y` on `^kN` with
/// `Y(f^{c^k}) = (Zf)^{c^r v^s}` for every test function `f`.
///
/// For `r ≥ 1` the `∂/∂t` component is carried over (it must be constant)
/// and `f = t` is left out of the family, since `1^{c^r} = 0` would make the
/// equation for `t` unsatisfiable.
pub fn vf_lift_solve(
    z: &VectorField,
    kind: LiftKind,
    k: u32,
    opts: &SolveOptions,
) -> Result<Solved<VectorField>> {
    let base = *require_base(z.chart(), z.chart())?;
    let (r, s) = kind.orders(k)?;
    let fixed_time = r >= 1 && base.has_time();
    if fixed_time {
        require_constant_time(&z.t_comp(), "this lift")?;
    }
    let target = base.with_order(k);
    let coords = target.coordinates();
    let degree = z.degree() + opts.degree_slack;
    let monos = monomials_upto(&coords, degree);

    let mut ansatz = Ansatz::new();
    let mut comps = Vec::with_capacity(coords.len());
    for c in &coords {
        if c.is_time() && fixed_time {
            comps.push(z.t_comp());
        } else {
            comps.push(ansatz.poly(&format!("d/d{c}"), &monos));
        }
    }
    let residual = |comps: &[Expr], f: &Expr| -> Expr {
        let lifted = complete_expr(f, k);
        let lhs: Expr = coords
            .iter()
            .zip(comps)
            .map(|(c, y)| {
                let d = lifted.diff(*c);
                if d.is_zero() {
                    Expr::zero()
                } else {
                    y * &d
                }
            })
            .sum();
        lhs - cv_expr(&z.act(f), r, s)
    };

    let (solving, holdout) = function_family(&base, k, !fixed_time);
    let groups: Vec<(String, Vec<Expr>)> = solving
        .iter()
        .map(|f| (format!("f = {f}"), vec![residual(&comps, f)]))
        .collect();
    let sol = ansatz.solve(&groups)?;
    let solved: Vec<Expr> = comps.iter().map(|e| e.substitute_unknowns(&sol)).collect();

    let holdout: Vec<Expr> = holdout.into_iter().take(opts.holdout_limit).collect();
    for f in &holdout {
        if !residual(&solved, f).is_zero() {
            return Err(Error::Holdout {
                witness: format!("f = {f}"),
            });
        }
    }
    Ok(Solved {
        value: VectorField::new(target, solved)?,
        certificate: Certificate {
            unknowns: ansatz.len(),
            ansatz_degree: degree,
            family: solving.iter().map(|f| format!("f = {f}")).collect(),
            holdout: holdout.iter().map(|f| format!("f = {f}")).collect(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::ChartSpec;
    use crate::symkernel::{parse, parse_coord};

    fn vf(m: u32, k: u32, t: bool, pairs: &[(&str, &str)]) -> VectorField {
        let c = ChartSpec::new(m, k, t).unwrap();
        let pairs: Vec<_> = pairs
            .iter()
            .map(|(x, e)| (parse_coord(x).unwrap(), parse(e).unwrap()))
            .collect();
        VectorField::from_pairs(c, &pairs).unwrap()
    }

    fn opts() -> SolveOptions {
        SolveOptions::default()
    }

    #[test]
    fn vertical_closed_form() {
        let z = vf(1, 0, true, &[("t", "1"), ("z0_1", "z0_1"), ("zb0_1", "zb0_1")]);
        let v = vf_vertical_closed(&z, 2).unwrap();
        assert_eq!(v, vf(1, 2, true, &[("t", "1"), ("z2_1", "z0_1"), ("zb2_1", "zb0_1")]));
        for r in 1..=3 {
            let d = vf(1, 0, false, &[("z0_1", "1")]);
            let name = format!("z{r}_1");
            assert_eq!(
                vf_vertical_closed(&d, r).unwrap(),
                vf(1, r, false, &[(name.as_str(), "1")])
            );
        }
        assert!(vf_vertical_closed(&VectorField::zero(ChartSpec::new(1, 0, true).unwrap()), 2)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn complete_closed_form_weights() {
        let z = vf(1, 0, true, &[("t", "1"), ("z0_1", "z0_1")]);
        assert_eq!(
            vf_complete_paper(&z, 1).unwrap(),
            vf(1, 1, true, &[("t", "1"), ("z0_1", "z0_1"), ("z1_1", "z1_1")])
        );
        let z = vf(1, 0, true, &[("z0_1", "z0_1")]);
        assert_eq!(
            vf_complete_paper(&z, 2).unwrap(),
            vf(1, 2, true, &[("z0_1", "z0_1"), ("z1_1", "2*z1_1"), ("z2_1", "z2_1")])
        );
        let d = vf(1, 0, true, &[("z0_1", "1")]);
        assert_eq!(vf_complete_paper(&d, 3).unwrap(), vf(1, 3, true, &[("z0_1", "1")]));
        let bad = vf(1, 0, true, &[("t", "t")]);
        assert!(vf_complete_paper(&bad, 1).is_err());
    }

    #[test]
    fn cv_closed_form_conventions() {
        let d = vf(1, 0, false, &[("z0_1", "1")]);
        assert_eq!(vf_cv_paper(&d, 0, 1).unwrap(), vf(1, 1, false, &[("z1_1", "1")]));
        assert_eq!(vf_cv_paper(&d, 0, 3).unwrap(), vf(1, 3, false, &[("z3_1", "1")]));
        let z = vf(1, 0, false, &[("z0_1", "z0_1")]);
        assert_eq!(
            vf_cv_paper(&z, 1, 2).unwrap(),
            vf(1, 3, false, &[("z2_1", "2*z0_1"), ("z3_1", "2*z1_1")])
        );
        assert!(vf_cv_paper(&d, 2, 0).unwrap().is_zero());
        assert!(vf_cv_paper(&VectorField::zero(ChartSpec::new(1, 0, false).unwrap()), 1, 1)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn solver_matches_vertical_closed_form() {
        let z = vf(1, 0, true, &[("t", "1"), ("z0_1", "z0_1"), ("zb0_1", "zb0_1")]);
        let solved = vf_lift_solve(&z, LiftKind::Vertical, 1, &opts()).unwrap();
        assert_eq!(solved.value, vf_vertical_closed(&z, 1).unwrap());
        assert!(!solved.certificate.holdout.is_empty());
    }

    #[test]
    fn solver_complete_has_unit_weights() {
        let z = vf(1, 0, true, &[("z0_1", "z0_1")]);
        let solved = vf_lift_solve(&z, LiftKind::Complete, 2, &opts()).unwrap();
        assert_eq!(
            solved.value,
            vf(1, 2, true, &[("z0_1", "z0_1"), ("z1_1", "z1_1"), ("z2_1", "z2_1")])
        );
        let z = vf(1, 0, true, &[("t", "1"), ("z0_1", "z0_1")]);
        let solved = vf_lift_solve(&z, LiftKind::Complete, 1, &opts()).unwrap();
        assert_eq!(
            solved.value,
            vf(1, 1, true, &[("t", "1"), ("z0_1", "z0_1"), ("z1_1", "z1_1")])
        );
    }

    #[test]
    fn solver_complete_vertical_weights() {
        // Level l ≥ s carries C_{k−l}^r / C_l^k times Z^{c^{l−s}}.
        let z = vf(1, 0, false, &[("z0_1", "z0_1^2")]);
        let solved = vf_lift_solve(&z, LiftKind::CompleteVertical { r: 1, s: 1 }, 2, &opts())
            .unwrap()
            .value;
        let c1 = complete_expr(&parse("z0_1^2").unwrap(), 1);
        assert_eq!(solved.comp(0, 1), Expr::zero());
        assert_eq!(solved.comp(1, 1), parse("1/2*z0_1^2").unwrap());
        assert_eq!(solved.comp(2, 1), c1);
    }

    #[test]
    fn slack_does_not_change_the_answer() {
        let z = vf(1, 0, true, &[("t", "1"), ("z0_1", "z0_1*zb0_1"), ("zb0_1", "2")]);
        for kind in [LiftKind::Vertical, LiftKind::Complete] {
            let tight = vf_lift_solve(&z, kind, 1, &opts()).unwrap().value;
            let loose = vf_lift_solve(
                &z,
                kind,
                1,
                &SolveOptions {
                    degree_slack: 1,
                    ..opts()
                },
            )
            .unwrap()
            .value;
            assert_eq!(tight, loose);
        }
    }

    #[test]
    fn non_constant_time_is_rejected_for_complete() {
        let z = vf(1, 0, true, &[("t", "z0_1")]);
        assert!(vf_lift_solve(&z, LiftKind::Complete, 1, &opts()).is_err());
        assert!(vf_lift_solve(&z, LiftKind::Vertical, 1, &opts()).is_ok());
    }
}
