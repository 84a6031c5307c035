//! Fields over a chart's natural frames and the base calculus on them.
//!
//! Vector fields and 1-forms store one component per chart coordinate, in
//! [`ChartSpec::coordinates`] order.

use std::collections::BTreeMap;
use std::fmt;

use crate::charts::ChartSpec;
use crate::error::{Error, Result};
use crate::symkernel::{CoordId, Expr};

fn same_chart(a: &ChartSpec, b: &ChartSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ChartMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarField {
    chart: ChartSpec,
    value: Expr,
}

impl ScalarField {
    pub fn new(chart: ChartSpec, value: Expr) -> Result<Self> {
        chart.check(&value)?;
        Ok(Self { chart, value })
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn value(&self) -> &Expr {
        &self.value
    }

    pub fn into_value(self) -> Expr {
        self.value
    }
}

fn component_list(chart: &ChartSpec, comps: &[Expr], prefix: &str) -> String {
    let parts: Vec<String> = chart
        .coordinates()
        .iter()
        .zip(comps)
        .filter(|(_, e)| !e.is_zero())
        .map(|(c, e)| format!("{prefix}{c} -> {e}"))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(", ")
    }
}

macro_rules! frame_field {
    ($name:ident, $prefix:expr) => {
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name {
            chart: ChartSpec,
            comps: Vec<Expr>,
        }

        impl $name {
            pub fn new(chart: ChartSpec, comps: Vec<Expr>) -> Result<Self> {
                if comps.len() != chart.dim() {
                    return Err(Error::Domain(format!(
                        "expected {} components, got {}",
                        chart.dim(),
                        comps.len()
                    )));
                }
                for e in &comps {
                    chart.check(e)?;
                }
                Ok(Self { chart, comps })
            }

            pub fn zero(chart: ChartSpec) -> Self {
                Self {
                    chart,
                    comps: vec![Expr::zero(); chart.dim()],
                }
            }

            /// Built from `(coordinate, component)` pairs; unspecified ones are 0.
            pub fn from_pairs(chart: ChartSpec, pairs: &[(CoordId, Expr)]) -> Result<Self> {
                let mut out = Self::zero(chart);
                for (c, e) in pairs {
                    out.set(*c, e.clone())?;
                }
                Ok(out)
            }

            /// The natural basis element dual to coordinate `c`.
            pub fn basis(chart: ChartSpec, c: CoordId) -> Result<Self> {
                Self::from_pairs(chart, &[(c, Expr::one())])
            }

            pub fn chart(&self) -> &ChartSpec {
                &self.chart
            }

            pub fn components(&self) -> &[Expr] {
                &self.comps
            }

            pub fn get(&self, c: CoordId) -> Expr {
                self.chart
                    .position(c)
                    .map_or_else(Expr::zero, |p| self.comps[p].clone())
            }

            pub fn set(&mut self, c: CoordId, e: Expr) -> Result<()> {
                let p = self.chart.position(c).ok_or_else(|| Error::NotInChart {
                    coord: c.to_string(),
                    chart: self.chart.to_string(),
                })?;
                self.chart.check(&e)?;
                self.comps[p] = e;
                Ok(())
            }

            pub fn t_comp(&self) -> Expr {
                self.get(CoordId::TIME)
            }

            pub fn comp(&self, r: u32, i: u32) -> Expr {
                self.get(self.chart.holo(r, i))
            }

            pub fn compbar(&self, r: u32, i: u32) -> Expr {
                self.get(self.chart.anti(r, i))
            }

            pub fn is_zero(&self) -> bool {
                self.comps.iter().all(Expr::is_zero)
            }

            /// Largest total degree among the components (0 for the zero field).
            pub fn degree(&self) -> u32 {
                self.comps.iter().map(Expr::degree).max().unwrap_or(0)
            }

            /// Nonzero components with their coordinates.
            pub fn terms(&self) -> Vec<(CoordId, &Expr)> {
                self.chart
                    .coordinates()
                    .into_iter()
                    .zip(&self.comps)
                    .filter(|(_, e)| !e.is_zero())
                    .collect()
            }

            /// Same components, re-indexed on a chart containing every
            /// coordinate of this one.
            pub fn embed(&self, target: ChartSpec) -> Result<Self> {
                let mut out = Self::zero(target);
                for (c, e) in self.terms() {
                    out.set(c, e.clone())?;
                }
                Ok(out)
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                same_chart(&self.chart, &other.chart)?;
                Ok(Self {
                    chart: self.chart,
                    comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
                })
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                same_chart(&self.chart, &other.chart)?;
                Ok(Self {
                    chart: self.chart,
                    comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
                })
            }

            pub fn scale(&self, f: &Expr) -> Self {
                Self {
                    chart: self.chart,
                    comps: self.comps.iter().map(|a| f * a).collect(),
                }
            }

            pub fn map(&self, mut op: impl FnMut(&Expr) -> Expr) -> Self {
                Self {
                    chart: self.chart,
                    comps: self.comps.iter().map(|a| op(a)).collect(),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&component_list(&self.chart, &self.comps, $prefix))
            }
        }
    };
}

frame_field!(VectorField, "d/d");
frame_field!(OneForm, "d");

impl VectorField {
    /// Derivation action `Z(f)` on a bare expression.
    pub fn act(&self, f: &Expr) -> Expr {
        self.terms()
            .into_iter()
            .map(|(c, z)| z * &f.diff(c))
            .sum()
    }
}

pub fn apply(z: &VectorField, f: &ScalarField) -> Result<ScalarField> {
    same_chart(z.chart(), f.chart())?;
    Ok(ScalarField {
        chart: f.chart,
        value: z.act(f.value()),
    })
}

pub fn pair(w: &OneForm, z: &VectorField) -> Result<ScalarField> {
    same_chart(w.chart(), z.chart())?;
    let value = w
        .components()
        .iter()
        .zip(z.components())
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| a * b)
        .sum();
    Ok(ScalarField {
        chart: *w.chart(),
        value,
    })
}

pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    same_chart(x.chart(), y.chart())?;
    let comps = x
        .components()
        .iter()
        .zip(y.components())
        .map(|(xa, ya)| &x.act(ya) - &y.act(xa))
        .collect();
    Ok(VectorField {
        chart: *x.chart(),
        comps,
    })
}

/// A (1,1) tensor: `φ(∂_b) = Σ_a matrix[a][b] ∂_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoField {
    chart: ChartSpec,
    matrix: Vec<Vec<Expr>>,
}

impl EndoField {
    pub fn new(chart: ChartSpec, matrix: Vec<Vec<Expr>>) -> Result<Self> {
        let n = chart.dim();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Domain(format!("expected a {n}x{n} matrix")));
        }
        for e in matrix.iter().flatten() {
            chart.check(e)?;
        }
        Ok(Self { chart, matrix })
    }

    pub fn zero(chart: ChartSpec) -> Self {
        let n = chart.dim();
        Self {
            chart,
            matrix: vec![vec![Expr::zero(); n]; n],
        }
    }

    pub fn identity(chart: ChartSpec) -> Self {
        let mut out = Self::zero(chart);
        for a in 0..chart.dim() {
            out.matrix[a][a] = Expr::one();
        }
        out
    }

    pub fn diagonal(chart: ChartSpec, diag: Vec<Expr>) -> Result<Self> {
        let mut out = Self::zero(chart);
        if diag.len() != chart.dim() {
            return Err(Error::Domain("diagonal has the wrong length".into()));
        }
        for (a, e) in diag.into_iter().enumerate() {
            out.matrix[a][a] = e;
        }
        Ok(out)
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn matrix(&self) -> &[Vec<Expr>] {
        &self.matrix
    }

    /// Coefficient of `∂/∂out` in `φ(∂/∂input)`.
    pub fn entry(&self, out: CoordId, input: CoordId) -> Expr {
        match (self.chart.position(out), self.chart.position(input)) {
            (Some(a), Some(b)) => self.matrix[a][b].clone(),
            _ => Expr::zero(),
        }
    }

    pub fn set_entry(&mut self, out: CoordId, input: CoordId, e: Expr) -> Result<()> {
        let a = self.chart.position(out);
        let b = self.chart.position(input);
        match (a, b) {
            (Some(a), Some(b)) => {
                self.chart.check(&e)?;
                self.matrix[a][b] = e;
                Ok(())
            }
            _ => Err(Error::NotInChart {
                coord: format!("{out}/{input}"),
                chart: self.chart.to_string(),
            }),
        }
    }

    pub fn degree(&self) -> u32 {
        self.matrix.iter().flatten().map(Expr::degree).max().unwrap_or(0)
    }

    pub fn compose(&self, other: &EndoField) -> Result<EndoField> {
        same_chart(&self.chart, &other.chart)?;
        let n = self.chart.dim();
        let mut out = Self::zero(self.chart);
        for a in 0..n {
            for b in 0..n {
                out.matrix[a][b] = (0..n)
                    .filter(|&c| !self.matrix[a][c].is_zero() && !other.matrix[c][b].is_zero())
                    .map(|c| &self.matrix[a][c] * &other.matrix[c][b])
                    .sum();
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> EndoField {
        Self {
            chart: self.chart,
            matrix: self
                .matrix
                .iter()
                .map(|row| row.iter().map(|e| -e).collect())
                .collect(),
        }
    }

    pub fn embed(&self, target: ChartSpec) -> Result<EndoField> {
        let coords = self.chart.coordinates();
        let mut out = Self::zero(target);
        for (a, ca) in coords.iter().enumerate() {
            for (b, cb) in coords.iter().enumerate() {
                if !self.matrix[a][b].is_zero() {
                    out.set_entry(*ca, *cb, self.matrix[a][b].clone())?;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for EndoField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = self.chart.coordinates();
        let mut parts = Vec::new();
        for (b, cb) in coords.iter().enumerate() {
            for (a, ca) in coords.iter().enumerate() {
                let e = &self.matrix[a][b];
                if !e.is_zero() {
                    parts.push(format!("d/d{cb} => d/d{ca}: {e}"));
                }
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

pub fn endo_apply(phi: &EndoField, z: &VectorField) -> Result<VectorField> {
    same_chart(phi.chart(), z.chart())?;
    let comps = phi
        .matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(z.components())
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect();
    VectorField::new(*z.chart(), comps)
}

/// `(ηφ)(X) = η(φX)`.
pub fn form_pullback(eta: &OneForm, phi: &EndoField) -> Result<OneForm> {
    same_chart(phi.chart(), eta.chart())?;
    let n = phi.chart.dim();
    let comps = (0..n)
        .map(|b| {
            (0..n)
                .filter(|&a| !eta.components()[a].is_zero() && !phi.matrix[a][b].is_zero())
                .map(|a| &eta.components()[a] * &phi.matrix[a][b])
                .sum()
        })
        .collect();
    OneForm::new(*eta.chart(), comps)
}

/// A (0,2) tensor: `G(X, Y) = Σ X^a matrix[a][b] Y^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    chart: ChartSpec,
    matrix: Vec<Vec<Expr>>,
}

impl Bilinear {
    pub fn new(chart: ChartSpec, matrix: Vec<Vec<Expr>>) -> Result<Self> {
        let e = EndoField::new(chart, matrix)?;
        Ok(Self {
            chart,
            matrix: e.matrix,
        })
    }

    pub fn zero(chart: ChartSpec) -> Self {
        let n = chart.dim();
        Self {
            chart,
            matrix: vec![vec![Expr::zero(); n]; n],
        }
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn matrix(&self) -> &[Vec<Expr>] {
        &self.matrix
    }

    pub fn entry(&self, a: CoordId, b: CoordId) -> Expr {
        match (self.chart.position(a), self.chart.position(b)) {
            (Some(a), Some(b)) => self.matrix[a][b].clone(),
            _ => Expr::zero(),
        }
    }

    pub fn set_entry(&mut self, a: CoordId, b: CoordId, e: Expr) -> Result<()> {
        match (self.chart.position(a), self.chart.position(b)) {
            (Some(x), Some(y)) => {
                self.chart.check(&e)?;
                self.matrix[x][y] = e;
                Ok(())
            }
            _ => Err(Error::NotInChart {
                coord: format!("{a}/{b}"),
                chart: self.chart.to_string(),
            }),
        }
    }

    pub fn degree(&self) -> u32 {
        self.matrix.iter().flatten().map(Expr::degree).max().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.chart.dim();
        (0..n).all(|a| (0..a).all(|b| self.matrix[a][b] == self.matrix[b][a]))
    }

    pub fn eval(&self, x: &VectorField, y: &VectorField) -> Result<Expr> {
        same_chart(&self.chart, x.chart())?;
        same_chart(&self.chart, y.chart())?;
        let n = self.chart.dim();
        let mut acc = Expr::zero();
        for a in 0..n {
            let xa = &x.components()[a];
            if xa.is_zero() {
                continue;
            }
            for b in 0..n {
                let yb = &y.components()[b];
                if yb.is_zero() || self.matrix[a][b].is_zero() {
                    continue;
                }
                acc = acc + &(xa * &self.matrix[a][b]) * yb;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Bilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = self.chart.coordinates();
        let mut parts = Vec::new();
        for (a, ca) in coords.iter().enumerate() {
            for (b, cb) in coords.iter().enumerate() {
                let e = &self.matrix[a][b];
                if !e.is_zero() {
                    parts.push(format!("d{ca}*d{cb} -> {e}"));
                }
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

/// A differential form of degree at most 3, stored on strictly increasing
/// index tuples into the chart's coordinate list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltForm {
    chart: ChartSpec,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Expr>,
}

pub const MAX_FORM_DEGREE: usize = 3;

/// Sort `idx` in place; returns the permutation sign, or `None` on a repeat.
fn sort_with_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for a in 0..idx.len() {
        for b in 0..idx.len() - 1 - a {
            if idx[b] == idx[b + 1] {
                return None;
            }
            if idx[b] > idx[b + 1] {
                idx.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

impl AltForm {
    pub fn zero(chart: ChartSpec, degree: usize) -> Result<Self> {
        if degree > MAX_FORM_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        Ok(Self {
            chart,
            degree,
            comps: BTreeMap::new(),
        })
    }

    pub fn scalar(chart: ChartSpec, e: Expr) -> Result<Self> {
        chart.check(&e)?;
        let mut out = Self::zero(chart, 0)?;
        out.add_component(vec![], e);
        Ok(out)
    }

    pub fn from_oneform(w: &OneForm) -> Self {
        let mut out = Self::zero(*w.chart(), 1).expect("degree 1");
        for (a, e) in w.components().iter().enumerate() {
            out.add_component(vec![a], e.clone());
        }
        out
    }

    /// `dx^{c_1} ∧ … ∧ dx^{c_p}` scaled by `coeff`.
    pub fn monomial(chart: ChartSpec, coords: &[CoordId], coeff: Expr) -> Result<Self> {
        let mut out = Self::zero(chart, coords.len())?;
        let idx = coords
            .iter()
            .map(|c| {
                chart.position(*c).ok_or_else(|| Error::NotInChart {
                    coord: c.to_string(),
                    chart: chart.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        chart.check(&coeff)?;
        out.add_component(idx, coeff);
        Ok(out)
    }

    fn add_component(&mut self, mut idx: Vec<usize>, e: Expr) {
        if e.is_zero() {
            return;
        }
        let Some(sign) = sort_with_sign(&mut idx) else {
            return;
        };
        let e = e.scale_int(sign);
        let slot = self.comps.entry(idx.clone()).or_insert_with(Expr::zero);
        *slot = &*slot + &e;
        if slot.is_zero() {
            self.comps.remove(&idx);
        }
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Component on an arbitrary index tuple, with the antisymmetry sign.
    pub fn component(&self, idx: &[usize]) -> Expr {
        let mut idx = idx.to_vec();
        match sort_with_sign(&mut idx) {
            Some(sign) => self
                .comps
                .get(&idx)
                .map_or_else(Expr::zero, |e| e.scale_int(sign)),
            None => Expr::zero(),
        }
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, Expr> {
        &self.comps
    }

    pub fn add(&self, other: &AltForm) -> Result<AltForm> {
        same_chart(&self.chart, &other.chart)?;
        if self.degree != other.degree {
            return Err(Error::Domain("adding forms of different degree".into()));
        }
        let mut out = self.clone();
        for (idx, e) in &other.comps {
            out.add_component(idx.clone(), e.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, f: &Expr) -> AltForm {
        let mut out = Self::zero(self.chart, self.degree).expect("same degree");
        for (idx, e) in &self.comps {
            out.add_component(idx.clone(), f * e);
        }
        out
    }

    /// Value on a list of basis directions given by coordinate positions.
    pub fn eval_basis(&self, dirs: &[usize]) -> Expr {
        self.component(dirs)
    }

    pub fn exterior_derivative(&self) -> Result<AltForm> {
        if self.degree >= MAX_FORM_DEGREE {
            return Err(Error::UnsupportedDegree(self.degree + 1));
        }
        let coords = self.chart.coordinates();
        let mut out = Self::zero(self.chart, self.degree + 1)?;
        for (idx, e) in &self.comps {
            for (a, c) in coords.iter().enumerate() {
                let de = e.diff(*c);
                if de.is_zero() {
                    continue;
                }
                let mut full = vec![a];
                full.extend_from_slice(idx);
                out.add_component(full, de);
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &AltForm) -> Result<AltForm> {
        same_chart(&self.chart, &other.chart)?;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(self.chart, degree)?;
        for (ia, ea) in &self.comps {
            for (ib, eb) in &other.comps {
                let mut full = ia.clone();
                full.extend_from_slice(ib);
                out.add_component(full, ea * eb);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for AltForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return f.write_str("0");
        }
        let coords = self.chart.coordinates();
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(idx, e)| {
                if idx.is_empty() {
                    return e.to_string();
                }
                let basis: Vec<String> = idx.iter().map(|&a| format!("d{}", coords[a])).collect();
                format!("{} -> {e}", basis.join("^"))
            })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Connection coefficients on an order-`k` chart. `gamma(r, j, i)` is
/// `Γ^j_{(r)i}`: the coefficient of `∂/∂z^{(r+1)j}` removed from `D_{ri}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionCoeffs {
    chart: ChartSpec,
    gamma: Vec<Vec<Vec<Expr>>>,
    gammabar: Vec<Vec<Vec<Expr>>>,
}

impl ConnectionCoeffs {
    pub fn zero(chart: ChartSpec) -> Self {
        let m = chart.m() as usize;
        let table = vec![vec![vec![Expr::zero(); m]; m]; chart.k() as usize];
        Self {
            chart,
            gamma: table.clone(),
            gammabar: table,
        }
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn gamma(&self, r: u32, upper: u32, lower: u32) -> &Expr {
        &self.gamma[r as usize][upper as usize - 1][lower as usize - 1]
    }

    pub fn gammabar(&self, r: u32, upper: u32, lower: u32) -> &Expr {
        &self.gammabar[r as usize][upper as usize - 1][lower as usize - 1]
    }

    fn check_slot(&self, r: u32, upper: u32, lower: u32, e: &Expr) -> Result<()> {
        let m = self.chart.m();
        if r >= self.chart.k() || upper == 0 || lower == 0 || upper > m || lower > m {
            return Err(Error::Domain(format!(
                "connection slot ({r},{upper},{lower}) out of range"
            )));
        }
        self.chart.check(e)
    }

    pub fn set_gamma(&mut self, r: u32, upper: u32, lower: u32, e: Expr) -> Result<()> {
        self.check_slot(r, upper, lower, &e)?;
        self.gamma[r as usize][upper as usize - 1][lower as usize - 1] = e;
        Ok(())
    }

    pub fn set_gammabar(&mut self, r: u32, upper: u32, lower: u32, e: Expr) -> Result<()> {
        self.check_slot(r, upper, lower, &e)?;
        self.gammabar[r as usize][upper as usize - 1][lower as usize - 1] = e;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::parse;

    fn chart(m: u32, k: u32, t: bool) -> ChartSpec {
        ChartSpec::new(m, k, t).unwrap()
    }

    fn vf(c: ChartSpec, pairs: &[(&str, &str)]) -> VectorField {
        let pairs: Vec<_> = pairs
            .iter()
            .map(|(x, e)| {
                (
                    crate::symkernel::parse_coord(x).unwrap(),
                    parse(e).unwrap(),
                )
            })
            .collect();
        VectorField::from_pairs(c, &pairs).unwrap()
    }

    #[test]
    fn derivation_action() {
        let c = chart(1, 1, true);
        let dt = vf(c, &[("t", "1")]);
        assert_eq!(dt.act(&Expr::time()), Expr::one());
        let euler = vf(c, &[("z0_1", "z0_1")]);
        assert_eq!(euler.act(&parse("z0_1^2").unwrap()), parse("2*z0_1^2").unwrap());
        let d1 = vf(c, &[("z1_1", "1")]);
        let f = ScalarField::new(c, Expr::holo(0, 1)).unwrap();
        assert!(apply(&d1, &f).unwrap().value().is_zero());
    }

    #[test]
    fn pairing() {
        let c = chart(1, 1, true);
        let dt = OneForm::basis(c, CoordId::TIME).unwrap();
        let w = OneForm::from_pairs(
            c,
            &[(CoordId::TIME, Expr::one()), (c.holo(0, 1), Expr::holo(0, 1))],
        )
        .unwrap();
        let z = vf(c, &[("t", "1"), ("z0_1", "1")]);
        assert_eq!(pair(&dt, &vf(c, &[("t", "1")])).unwrap().into_value(), Expr::one());
        let dz0 = OneForm::basis(c, c.holo(0, 1)).unwrap();
        assert!(pair(&dz0, &vf(c, &[("z1_1", "1")])).unwrap().value().is_zero());
        assert_eq!(pair(&w, &z).unwrap().into_value(), parse("1 + z0_1").unwrap());
        assert!(pair(&w, &VectorField::zero(chart(1, 0, true))).is_err());
    }

    #[test]
    fn endomorphisms() {
        let c = chart(1, 0, false);
        let z = vf(c, &[("z0_1", "z0_1 + 1"), ("zb0_1", "2")]);
        assert_eq!(endo_apply(&EndoField::identity(c), &z).unwrap(), z);
        let j0 = EndoField::diagonal(c, vec![Expr::i(), -Expr::i()]).unwrap();
        let dz = vf(c, &[("z0_1", "1")]);
        assert_eq!(endo_apply(&j0, &dz).unwrap(), vf(c, &[("z0_1", "i")]));
        let w = OneForm::basis(c, c.holo(0, 1)).unwrap();
        let pulled = form_pullback(&w, &j0).unwrap();
        assert_eq!(pulled.get(c.holo(0, 1)), Expr::i());
        assert!(pulled.get(c.anti(0, 1)).is_zero());
        assert_eq!(j0.compose(&j0).unwrap(), EndoField::identity(c).neg());
    }

    #[test]
    fn brackets() {
        let c = chart(1, 1, false);
        let d = vf(c, &[("z0_1", "1")]);
        let e = vf(c, &[("z0_1", "z0_1")]);
        assert_eq!(lie_bracket(&d, &e).unwrap(), d);
        assert!(lie_bracket(&e, &e).unwrap().is_zero());
        let d1 = vf(c, &[("z1_1", "1")]);
        let db = vf(c, &[("zb0_1", "1")]);
        assert!(lie_bracket(&d1, &db).unwrap().is_zero());
    }

    #[test]
    fn exterior_calculus() {
        let c = chart(1, 0, false);
        let z = c.holo(0, 1);
        let zb = c.anti(0, 1);
        let a = AltForm::monomial(c, &[zb], Expr::holo(0, 1)).unwrap();
        let da = a.exterior_derivative().unwrap();
        assert_eq!(da, AltForm::monomial(c, &[z, zb], Expr::one()).unwrap());
        let f = AltForm::scalar(c, parse("z0_1^2*zb0_1").unwrap()).unwrap();
        let ddf = f.exterior_derivative().unwrap().exterior_derivative().unwrap();
        assert!(ddf.is_zero());
        let df = AltForm::scalar(c, Expr::holo(0, 1))
            .unwrap()
            .exterior_derivative()
            .unwrap();
        assert_eq!(df, AltForm::monomial(c, &[z], Expr::one()).unwrap());
        let three = AltForm::zero(c, 3).unwrap();
        assert!(three.exterior_derivative().is_err());
    }

    #[test]
    fn wedge_products() {
        let c = chart(1, 0, false);
        let dz = AltForm::monomial(c, &[c.holo(0, 1)], Expr::one()).unwrap();
        let dzb = AltForm::monomial(c, &[c.anti(0, 1)], Expr::one()).unwrap();
        assert!(dz.wedge(&dz).unwrap().is_zero());
        let ab = dz.wedge(&dzb).unwrap();
        let ba = dzb.wedge(&dz).unwrap();
        assert_eq!(ab, ba.scale(&Expr::int(-1)));
        let one = AltForm::scalar(c, Expr::one()).unwrap();
        assert_eq!(one.wedge(&dz).unwrap(), dz);
        let two = dz.wedge(&dzb).unwrap();
        assert_eq!(two.wedge(&two), Err(Error::UnsupportedDegree(4)));
    }

    #[test]
    fn display_lists_nonzero_components() {
        let c = chart(1, 1, true);
        assert_eq!(vf(c, &[("t", "1"), ("z1_1", "z0_1")]).to_string(), "d/dt -> 1, d/dz1_1 -> z0_1");
        assert_eq!(VectorField::zero(c).to_string(), "0");
    }
}
