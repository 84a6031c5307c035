//! Seeded random corpora: polynomials with small Gaussian-rational
//! coefficients, and fields, connections and metrics built from them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charts::ChartSpec;
use crate::fields::{Bilinear, ConnectionCoeffs, EndoField, OneForm, VectorField};
use crate::symkernel::{Atom, CoordId, Expr, GaussianRational, Monomial};

/// Largest numerator and denominator magnitude of generated coefficients.
pub const COEFF_BOUND: i64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldGen {
    pub seed: u64,
    pub max_degree: u32,
    pub t_free: bool,
}

impl FieldGen {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            max_degree: 2,
            t_free: true,
        }
    }

    pub fn with_time(mut self) -> Self {
        self.t_free = false;
        self
    }

    pub fn rng(&self) -> Draw {
        Draw {
            rng: ChaCha8Rng::seed_from_u64(self.seed),
            max_degree: self.max_degree,
            t_free: self.t_free,
        }
    }
}

/// A stream of random objects; the same `FieldGen` always yields the same
/// stream.
pub struct Draw {
    rng: ChaCha8Rng,
    max_degree: u32,
    t_free: bool,
}

impl Draw {
    pub fn coefficient(&mut self) -> GaussianRational {
        let part = |rng: &mut ChaCha8Rng| {
            let p = rng.gen_range(1..=COEFF_BOUND) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let q = rng.gen_range(1..=COEFF_BOUND);
            GaussianRational::from_ratio(p, q)
        };
        let re = part(&mut self.rng);
        if self.rng.gen_bool(0.3) {
            let im = part(&mut self.rng);
            re + im * GaussianRational::i()
        } else {
            re
        }
    }

    /// Atoms a polynomial may use: level-0 coordinates, plus `t` when the
    /// corpus is time-dependent and the chart has time.
    fn atoms(&self, chart: &ChartSpec) -> Vec<CoordId> {
        chart
            .base()
            .coordinates()
            .into_iter()
            .filter(|c| !c.is_time() || !self.t_free)
            .collect()
    }

    /// A polynomial with 1 to 3 terms of degree at most `max_degree`.
    pub fn poly(&mut self, chart: &ChartSpec) -> Expr {
        self.poly_upto(chart, self.max_degree)
    }

    pub fn poly_upto(&mut self, chart: &ChartSpec, max_degree: u32) -> Expr {
        let atoms = self.atoms(chart);
        let terms = self.rng.gen_range(1..=3);
        let mut out = Expr::zero();
        for _ in 0..terms {
            let degree = self.rng.gen_range(0..=max_degree);
            let mut m = Monomial::one();
            for _ in 0..degree {
                let c = *atoms.choose(&mut self.rng).expect("charts have coordinates");
                m = m.mul(&Monomial::atom(Atom::Coord(c)));
            }
            out = out + Expr::term(self.coefficient(), m);
        }
        if out.is_zero() {
            Expr::one()
        } else {
            out
        }
    }

    fn sparse(&mut self, chart: &ChartSpec) -> Expr {
        if self.rng.gen_bool(0.6) {
            self.poly(chart)
        } else {
            Expr::zero()
        }
    }

    /// Base vector field with the given constant `∂/∂t` component and random
    /// level-0 components (at least one nonzero).
    pub fn vector(&mut self, chart: &ChartSpec, t_comp: i64) -> VectorField {
        let base = chart.base();
        let mut z = VectorField::zero(base);
        if base.has_time() {
            z.set(CoordId::TIME, Expr::int(t_comp)).expect("time chart");
        }
        let xs: Vec<_> = base.coordinates().into_iter().filter(|c| !c.is_time()).collect();
        for x in &xs {
            z.set(*x, self.sparse(chart)).expect("base coordinate");
        }
        if xs.iter().all(|x| z.get(*x).is_zero()) {
            let x = *xs.choose(&mut self.rng).expect("m >= 1");
            z.set(x, self.poly(chart)).expect("base coordinate");
        }
        z
    }

    /// Base 1-form with zero `dt` component.
    pub fn oneform(&mut self, chart: &ChartSpec) -> OneForm {
        let base = chart.base();
        let mut w = OneForm::zero(base);
        let xs: Vec<_> = base.coordinates().into_iter().filter(|c| !c.is_time()).collect();
        for x in &xs {
            w.set(*x, self.sparse(chart)).expect("base coordinate");
        }
        if xs.iter().all(|x| w.get(*x).is_zero()) {
            let x = *xs.choose(&mut self.rng).expect("m >= 1");
            w.set(x, self.poly(chart)).expect("base coordinate");
        }
        w
    }

    /// Connection on the order-`k` chart with affine level-0 coefficients;
    /// `Γ̄` is the conjugate of `Γ`.
    pub fn connection(&mut self, chart: &ChartSpec) -> ConnectionCoeffs {
        let mut g = ConnectionCoeffs::zero(*chart);
        let m = chart.m();
        for r in 0..chart.k() {
            for i in 1..=m {
                for j in 1..=m {
                    let e = if self.rng.gen_bool(0.7) {
                        self.poly_upto(chart, 1)
                    } else {
                        Expr::zero()
                    };
                    let bar = e.conjugate().expect("no unknowns");
                    g.set_gamma(r, i, j, e).expect("in range");
                    g.set_gammabar(r, i, j, bar).expect("in range");
                }
            }
        }
        g
    }

    /// Base (1,1) tensor with entries of degree at most 1.
    pub fn endo(&mut self, chart: &ChartSpec) -> EndoField {
        let base = chart.base();
        let coords = base.coordinates();
        let mut phi = EndoField::zero(base);
        for a in &coords {
            for b in &coords {
                if self.rng.gen_bool(0.4) {
                    let e = self.poly_upto(chart, 1);
                    phi.set_entry(*a, *b, e).expect("base coordinates");
                }
            }
        }
        phi
    }

    /// Symmetric (0,2) tensor with sparse entries of degree at most 1.
    pub fn symmetric(&mut self, chart: &ChartSpec) -> Bilinear {
        let base = chart.base();
        let coords = base.coordinates();
        let mut g = Bilinear::zero(base);
        for (n, a) in coords.iter().enumerate() {
            for b in &coords[n..] {
                if self.rng.gen_bool(0.4) {
                    let e = self.poly_upto(chart, 1);
                    g.set_entry(*a, *b, e.clone()).expect("base coordinates");
                    g.set_entry(*b, *a, e).expect("base coordinates");
                }
            }
        }
        g
    }

    /// Constant Hermitian metric `Σ h_{ij} (dz^i ⊗ dz̄^j + dz̄^j ⊗ dz^i)` with
    /// `h` a Hermitian matrix.
    pub fn hermitian_metric(&mut self, chart: &ChartSpec) -> Bilinear {
        let base = chart.base();
        let m = base.m();
        let mut g = Bilinear::zero(base);
        for i in 1..=m {
            for j in i..=m {
                let h = if i == j {
                    Expr::constant(GaussianRational::from_int(self.rng.gen_range(1..=COEFF_BOUND)))
                } else {
                    Expr::constant(self.coefficient())
                };
                let hbar = h.conjugate().expect("constant");
                g.set_entry(base.holo(0, i), base.anti(0, j), h.clone()).expect("base");
                g.set_entry(base.anti(0, j), base.holo(0, i), h).expect("base");
                g.set_entry(base.holo(0, j), base.anti(0, i), hbar.clone()).expect("base");
                g.set_entry(base.anti(0, i), base.holo(0, j), hbar).expect("base");
            }
        }
        g
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
