//! Almost complex structures on extension charts, Hermitian metrics and
//! their Kaehler forms. Time-free charts only.

use crate::charts::ChartSpec;
use crate::error::{Error, Result};
use crate::fields::{AltForm, Bilinear, EndoField, OneForm};
use crate::lifts::{t11_lift_solve, LiftKind, SolveOptions, TensorLift};
use crate::symkernel::{CoordKind, Expr, GaussianRational};

fn require_time_free(chart: &ChartSpec) -> Result<()> {
    if chart.has_time() {
        Err(Error::NeedsTimeFree)
    } else {
        Ok(())
    }
}

fn plus_minus_i(chart: &ChartSpec) -> Vec<Expr> {
    chart
        .coordinates()
        .iter()
        .map(|c| match c.kind() {
            CoordKind::Holo => Expr::i(),
            _ => -Expr::i(),
        })
        .collect()
}

/// `J_k(∂/∂z^{ri}) = i ∂/∂z^{ri}`, `J_k(∂/∂z̄^{ri}) = −i ∂/∂z̄^{ri}`.
pub fn build_jk(chart: &ChartSpec) -> Result<EndoField> {
    require_time_free(chart)?;
    EndoField::diagonal(*chart, plus_minus_i(chart))
}

/// An endomorphism of the cotangent spaces:
/// `ψ(dx^b) = Σ_a matrix[a][b] dx^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoEndo {
    inner: EndoField,
}

impl CoEndo {
    pub fn chart(&self) -> &ChartSpec {
        self.inner.chart()
    }

    pub fn matrix(&self) -> &[Vec<Expr>] {
        self.inner.matrix()
    }

    pub fn apply(&self, w: &OneForm) -> Result<OneForm> {
        let n = self.chart().dim();
        let m = self.matrix();
        let comps = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| !m[a][b].is_zero() && !w.components()[b].is_zero())
                    .map(|b| &m[a][b] * &w.components()[b])
                    .sum()
            })
            .collect();
        OneForm::new(*self.chart(), comps)
    }

    pub fn compose(&self, other: &CoEndo) -> Result<CoEndo> {
        Ok(CoEndo {
            inner: self.inner.compose(&other.inner)?,
        })
    }

    pub fn is_minus_identity(&self) -> bool {
        self.inner == EndoField::identity(*self.chart()).neg()
    }
}

/// `J_k*(dz^{ri}) = i dz^{ri}`, `J_k*(dz̄^{ri}) = −i dz̄^{ri}`.
pub fn build_jk_star(chart: &ChartSpec) -> Result<CoEndo> {
    Ok(CoEndo {
        inner: build_jk(chart)?,
    })
}

/// `J_0^{v^k}` or `J_0^{c^k}` from the (1,1) lift solver.
pub fn lift_j0(kind: LiftKind, k: u32, m: u32, opts: &SolveOptions) -> Result<TensorLift> {
    let base = ChartSpec::new(m, 0, false)?;
    t11_lift_solve(&build_jk(&base)?, kind, k, opts)
}

pub fn is_minus_identity(j: &EndoField) -> Result<bool> {
    Ok(j.compose(j)? == EndoField::identity(*j.chart()).neg())
}

/// `g(JX, JY) = g(X, Y)` on every pair of coordinate basis fields.
pub fn hermitian_check(g: &Bilinear, j: &EndoField) -> Result<bool> {
    if g.chart() != j.chart() {
        return Err(Error::ChartMismatch {
            left: g.chart().to_string(),
            right: j.chart().to_string(),
        });
    }
    let n = g.chart().dim();
    let (gm, jm) = (g.matrix(), j.matrix());
    for a in 0..n {
        for b in 0..n {
            let mut acc = Expr::zero();
            for c in (0..n).filter(|&c| !jm[c][a].is_zero()) {
                for d in (0..n).filter(|&d| !jm[d][b].is_zero() && !gm[c][d].is_zero()) {
                    acc = acc + &(&jm[c][a] * &gm[c][d]) * &jm[d][b];
                }
            }
            if acc != gm[a][b] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Φ_{ab} = ½ (g(e_a, J e_b) − g(e_b, J e_a))`, so `Φ(X, Y) = g(X, JY)`
/// for Hermitian `g`.
pub fn kaehler_form(g: &Bilinear, j: &EndoField) -> Result<AltForm> {
    if !hermitian_check(g, j)? {
        return Err(Error::NotHermitian);
    }
    let chart = *g.chart();
    let coords = chart.coordinates();
    let n = chart.dim();
    let (gm, jm) = (g.matrix(), j.matrix());
    let g_j = |a: usize, b: usize| -> Expr {
        (0..n)
            .filter(|&c| !gm[a][c].is_zero() && !jm[c][b].is_zero())
            .map(|c| &gm[a][c] * &jm[c][b])
            .sum()
    };
    let half = GaussianRational::from_ratio(1, 2);
    let mut out = AltForm::zero(chart, 2)?;
    for a in 0..n {
        for b in a + 1..n {
            let e = (g_j(a, b) - g_j(b, a)).scale(&half);
            if !e.is_zero() {
                out = out.add(&AltForm::monomial(chart, &[coords[a], coords[b]], e)?)?;
            }
        }
    }
    Ok(out)
}

pub fn kaehler_closed(phi: &AltForm) -> Result<bool> {
    if phi.degree() != 2 {
        return Err(Error::Domain(format!(
            "closedness is checked on 2-forms, got degree {}",
            phi.degree()
        )));
    }
    Ok(phi.exterior_derivative()?.is_zero())
}

/// A time-free chart with a complex structure and a metric Hermitian for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianPackage {
    chart: ChartSpec,
    g: Bilinear,
    j: EndoField,
}

impl HermitianPackage {
    pub fn new(g: Bilinear, j: EndoField) -> Result<Self> {
        require_time_free(g.chart())?;
        if !is_minus_identity(&j)? {
            return Err(Error::Domain("J does not square to -I".into()));
        }
        if !hermitian_check(&g, &j)? {
            return Err(Error::NotHermitian);
        }
        Ok(Self {
            chart: *g.chart(),
            g,
            j,
        })
    }

    /// `g = Σ_i (dz^{0i} ⊗ dz̄^{0i} + dz̄^{0i} ⊗ dz^{0i})` with `J_0`.
    pub fn flat(m: u32) -> Result<Self> {
        let chart = ChartSpec::new(m, 0, false)?;
        let mut g = Bilinear::zero(chart);
        for i in 1..=m {
            g.set_entry(chart.holo(0, i), chart.anti(0, i), Expr::one())?;
            g.set_entry(chart.anti(0, i), chart.holo(0, i), Expr::one())?;
        }
        Self::new(g, build_jk(&chart)?)
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn metric(&self) -> &Bilinear {
        &self.g
    }

    pub fn structure(&self) -> &EndoField {
        &self.j
    }

    pub fn kaehler_form(&self) -> Result<AltForm> {
        kaehler_form(&self.g, &self.j)
    }
}
