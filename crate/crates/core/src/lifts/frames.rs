//! Frames adapted to a connection and the horizontal lifts built on them.
//!
//! Index convention: `D_{ri} = ∂/∂z^{ri} − Σ_j Γ^j_{(r)i} ∂/∂z^{(r+1)j}` and
//! `η^{ri} = dz^{(r+1)i} + Σ_j Γ^i_{(r)j} dz^{rj}`, which makes `η^{ri}(D_{rj})`
//! vanish identically.

use crate::charts::ChartSpec;
use crate::error::{Error, Result};
use crate::fields::{pair, ConnectionCoeffs, OneForm, VectorField};
use crate::symkernel::CoordId;

use super::vectors::{require_base, require_constant_time};

/// `[r][i-1]` tables for `0 ≤ r ≤ k−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedFrame {
    pub chart: ChartSpec,
    pub d: Vec<Vec<VectorField>>,
    pub dbar: Vec<Vec<VectorField>>,
    pub v: Vec<Vec<VectorField>>,
    pub vbar: Vec<Vec<VectorField>>,
    pub theta: Vec<Vec<OneForm>>,
    pub thetabar: Vec<Vec<OneForm>>,
    pub eta: Vec<Vec<OneForm>>,
    pub etabar: Vec<Vec<OneForm>>,
}

pub fn adapted_frame(gamma: &ConnectionCoeffs) -> Result<AdaptedFrame> {
    let chart = *gamma.chart();
    let k = chart.k();
    if k == 0 {
        return Err(Error::NeedsPositiveOrder);
    }
    let m = chart.m();
    let mut frame = AdaptedFrame {
        chart,
        d: Vec::new(),
        dbar: Vec::new(),
        v: Vec::new(),
        vbar: Vec::new(),
        theta: Vec::new(),
        thetabar: Vec::new(),
        eta: Vec::new(),
        etabar: Vec::new(),
    };
    for r in 0..k {
        let (mut d, mut dbar, mut v, mut vbar) = (vec![], vec![], vec![], vec![]);
        let (mut th, mut thbar, mut eta, mut etabar) = (vec![], vec![], vec![], vec![]);
        for i in 1..=m {
            let mut di = VectorField::basis(chart, chart.holo(r, i))?;
            let mut dbi = VectorField::basis(chart, chart.anti(r, i))?;
            let mut ei = OneForm::basis(chart, chart.holo(r + 1, i))?;
            let mut ebi = OneForm::basis(chart, chart.anti(r + 1, i))?;
            for j in 1..=m {
                di.set(chart.holo(r + 1, j), -gamma.gamma(r, j, i))?;
                dbi.set(chart.anti(r + 1, j), -gamma.gammabar(r, j, i))?;
                ei.set(chart.holo(r, j), gamma.gamma(r, i, j).clone())?;
                ebi.set(chart.anti(r, j), gamma.gammabar(r, i, j).clone())?;
            }
            d.push(di);
            dbar.push(dbi);
            v.push(VectorField::basis(chart, chart.holo(r + 1, i))?);
            vbar.push(VectorField::basis(chart, chart.anti(r + 1, i))?);
            th.push(OneForm::basis(chart, chart.holo(r, i))?);
            thbar.push(OneForm::basis(chart, chart.anti(r, i))?);
            eta.push(ei);
            etabar.push(ebi);
        }
        frame.d.push(d);
        frame.dbar.push(dbar);
        frame.v.push(v);
        frame.vbar.push(vbar);
        frame.theta.push(th);
        frame.thetabar.push(thbar);
        frame.eta.push(eta);
        frame.etabar.push(etabar);
    }
    Ok(frame)
}

fn check_base_against(base: &ChartSpec, gamma: &ConnectionCoeffs) -> Result<()> {
    let target = gamma.chart();
    if base.m() != target.m() || base.has_time() != target.has_time() {
        return Err(Error::ChartMismatch {
            left: base.to_string(),
            right: target.to_string(),
        });
    }
    Ok(())
}

/// `Z^{H^k} = (Z^t) ∂/∂t + Σ (Z^{0i})^{v^k} D_{0i} + conjugates`.
pub fn vf_horizontal(z: &VectorField, gamma: &ConnectionCoeffs) -> Result<VectorField> {
    let base = *require_base(z.chart(), z.chart())?;
    check_base_against(&base, gamma)?;
    require_constant_time(&z.t_comp(), "the horizontal lift")?;
    let frame = adapted_frame(gamma)?;
    let mut out = VectorField::zero(frame.chart);
    if base.has_time() {
        out.set(CoordId::TIME, z.t_comp())?;
    }
    for i in 1..=base.m() as usize {
        out = out.add(&frame.d[0][i - 1].scale(&z.comp(0, i as u32)))?;
        out = out.add(&frame.dbar[0][i - 1].scale(&z.compbar(0, i as u32)))?;
    }
    Ok(out)
}

/// `ω^{H^k} = Σ (ω_{0i})^{v^k} η̂^{(k−1)i} + conjugates`, where `η̂` is `η`
/// with its values on the `D_{0j}`, `D̄_{0j}` removed along `θ^{0j}`, `θ̄^{0j}`.
/// For `k ≠ 2` the correction vanishes and `η̂ = η`.
pub fn of_horizontal(w: &OneForm, gamma: &ConnectionCoeffs) -> Result<OneForm> {
    let base = *require_base(w.chart(), w.chart())?;
    check_base_against(&base, gamma)?;
    if !w.t_comp().is_zero() {
        return Err(Error::Domain(format!(
            "the horizontal lift of a 1-form needs a zero dt component (got {}): \
             a dt term cannot vanish on the horizontal lift of d/dt",
            w.t_comp()
        )));
    }
    let frame = adapted_frame(gamma)?;
    let top = frame.chart.k() as usize - 1;
    let m = base.m() as usize;
    let corrected = |eta: &OneForm| -> Result<OneForm> {
        let mut out = eta.clone();
        for j in 0..m {
            for (dv, th) in [
                (&frame.d[0][j], &frame.theta[0][j]),
                (&frame.dbar[0][j], &frame.thetabar[0][j]),
            ] {
                let val = pair(eta, dv)?.into_value();
                if !val.is_zero() {
                    out = out.sub(&th.scale(&val))?;
                }
            }
        }
        Ok(out)
    };
    let mut out = OneForm::zero(frame.chart);
    for i in 0..m {
        let wi = w.comp(0, i as u32 + 1);
        let wbi = w.compbar(0, i as u32 + 1);
        if !wi.is_zero() {
            out = out.add(&corrected(&frame.eta[top][i])?.scale(&wi))?;
        }
        if !wbi.is_zero() {
            out = out.add(&corrected(&frame.etabar[top][i])?.scale(&wbi))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifts::vectors::vf_vertical_closed;
    use crate::symkernel::{parse, Expr};

    fn flat(m: u32, k: u32) -> ConnectionCoeffs {
        ConnectionCoeffs::zero(ChartSpec::new(m, k, true).unwrap())
    }

    fn generic(m: u32, k: u32) -> ConnectionCoeffs {
        let mut g = flat(m, k);
        for r in 0..k {
            for i in 1..=m {
                for j in 1..=m {
                    let e = parse(&format!("{}*z0_{i} + {j}*zb0_{j} + {}", r + 1, i * j)).unwrap();
                    g.set_gamma(r, i, j, e.clone()).unwrap();
                    g.set_gammabar(r, i, j, e.conjugate().unwrap()).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn flat_frame_is_coordinate_frame() {
        let f = adapted_frame(&flat(1, 1)).unwrap();
        let c = f.chart;
        assert_eq!(f.d[0][0], VectorField::basis(c, c.holo(0, 1)).unwrap());
        assert_eq!(f.eta[0][0], OneForm::basis(c, c.holo(1, 1)).unwrap());
        assert!(adapted_frame(&flat(1, 0)).is_err());
    }

    #[test]
    fn frame_with_simple_connection() {
        let mut g = flat(1, 1);
        g.set_gamma(0, 1, 1, Expr::holo(0, 1)).unwrap();
        let f = adapted_frame(&g).unwrap();
        assert_eq!(f.d[0][0].to_string(), "d/dz0_1 -> 1, d/dz1_1 -> -z0_1");
    }

    #[test]
    fn duality_for_generic_connection() {
        for (m, k) in [(1, 1), (2, 2), (2, 3)] {
            let f = adapted_frame(&generic(m, k)).unwrap();
            for r in 0..k as usize {
                for i in 0..m as usize {
                    for j in 0..m as usize {
                        let delta = if i == j { Expr::one() } else { Expr::zero() };
                        assert!(pair(&f.eta[r][i], &f.d[r][j]).unwrap().value().is_zero());
                        assert!(pair(&f.etabar[r][i], &f.dbar[r][j]).unwrap().value().is_zero());
                        assert_eq!(pair(&f.eta[r][i], &f.v[r][j]).unwrap().into_value(), delta);
                        assert_eq!(pair(&f.theta[r][i], &f.d[r][j]).unwrap().into_value(), delta);
                    }
                }
            }
        }
    }

    #[test]
    fn horizontal_vector_lifts() {
        let base = ChartSpec::new(1, 0, true).unwrap();
        let dt = VectorField::basis(base, CoordId::TIME).unwrap();
        let g = generic(1, 2);
        let up = vf_horizontal(&dt, &g).unwrap();
        assert_eq!(up, VectorField::basis(*g.chart(), CoordId::TIME).unwrap());
        let dz = VectorField::basis(base, base.holo(0, 1)).unwrap();
        assert_eq!(vf_horizontal(&dz, &g).unwrap(), adapted_frame(&g).unwrap().d[0][0]);
        let z = VectorField::from_pairs(base, &[(base.holo(0, 1), Expr::holo(0, 1))]).unwrap();
        let flat_up = vf_horizontal(&z, &flat(1, 1)).unwrap();
        assert_eq!(flat_up, z.embed(ChartSpec::new(1, 1, true).unwrap()).unwrap());
    }

    #[test]
    fn horizontal_oneform_clauses() {
        let base = ChartSpec::new(2, 0, true).unwrap();
        let w = OneForm::from_pairs(
            base,
            &[
                (base.holo(0, 1), parse("z0_1*zb0_2").unwrap()),
                (base.anti(0, 2), parse("3 + z0_2").unwrap()),
            ],
        )
        .unwrap();
        let z = VectorField::from_pairs(
            base,
            &[
                (CoordId::TIME, Expr::one()),
                (base.holo(0, 2), parse("zb0_1^2").unwrap()),
                (base.anti(0, 1), parse("z0_1 - i").unwrap()),
            ],
        )
        .unwrap();
        for k in 1..=3 {
            let g = generic(2, k);
            let wh = of_horizontal(&w, &g).unwrap();
            let zh = vf_horizontal(&z, &g).unwrap();
            assert!(pair(&wh, &zh).unwrap().value().is_zero(), "k={k}");
            let zv = vf_vertical_closed(&z, k).unwrap();
            assert_eq!(
                pair(&wh, &zv).unwrap().into_value(),
                pair(&w, &z).unwrap().into_value()
            );
        }
    }

    #[test]
    fn flat_horizontal_oneform() {
        let base = ChartSpec::new(1, 0, true).unwrap();
        let w = OneForm::from_pairs(base, &[(base.holo(0, 1), Expr::holo(0, 1))]).unwrap();
        let up = of_horizontal(&w, &flat(1, 1)).unwrap();
        assert_eq!(up.to_string(), "dz1_1 -> z0_1");
        let dt = OneForm::basis(base, CoordId::TIME).unwrap();
        assert!(of_horizontal(&dt, &flat(1, 1)).is_err());
    }
}
