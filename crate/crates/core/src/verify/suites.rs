//! Clause lists for each suite. Loci name the itemized property list a
//! clause comes from (`functions:ii` is item ii of the function list).

use std::cell::RefCell;
use std::collections::HashMap;

use crate::charts::ChartSpec;
use crate::error::{Error, Result};
use crate::fields::{
    endo_apply, form_pullback, lie_bracket, pair, Bilinear, ConnectionCoeffs, EndoField, OneForm,
    ScalarField, VectorField,
};
use crate::lifts::functions::{complete_expr, gamma_gradient_expr};
use crate::lifts::{
    adapted_frame, fn_complete, fn_horizontal, fn_vertical, of_horizontal, of_lift_solve,
    t02_lift_solve, t11_lift_solve, vf_horizontal, vf_lift_solve, LiftKind, SolveOptions,
};
use crate::structures::{build_jk, build_jk_star, hermitian_check, is_minus_identity, kaehler_closed, kaehler_form};
use crate::symkernel::{binomial, CoordId, Expr, GaussianRational};

use super::gen::{Draw, FieldGen};
use super::{CheckReport, ClauseResult, Status, SuiteId};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Exact,
    /// Fails only on t-dependent corpora, through the documented mismatch
    /// between the time terms of the complete lift and the γ-gradient.
    TimeSensitive,
    /// A clause whose printed form conflicts with the defining equations.
    Documented,
}

enum Outcome {
    Holds,
    Fails(String),
}

type Check<'a, S> = Box<dyn Fn(&S, &Lifts) -> Result<Outcome> + 'a>;

struct Clause<'a, S> {
    id: &'static str,
    locus: &'static str,
    statement: &'static str,
    kind: Kind,
    check: Check<'a, S>,
}

fn clause<'a, S>(
    id: &'static str,
    locus: &'static str,
    statement: &'static str,
    kind: Kind,
    check: impl Fn(&S, &Lifts) -> Result<Outcome> + 'a,
) -> Clause<'a, S> {
    Clause {
        id,
        locus,
        statement,
        kind,
        check: Box::new(check),
    }
}

/// Return a failure with both sides unless they agree.
macro_rules! ensure {
    ($lhs:expr, $rhs:expr, $($inputs:tt)*) => {{
        let (l, r) = (&$lhs, &$rhs);
        if l != r {
            return Ok(Outcome::Fails(format!("{}: {} vs {}", format!($($inputs)*), l, r)));
        }
    }};
}

/// Solver results shared between clauses, keyed by input text.
struct Lifts {
    opts: SolveOptions,
    vf: RefCell<HashMap<String, VectorField>>,
    of: RefCell<HashMap<String, OneForm>>,
    t11: RefCell<HashMap<String, EndoField>>,
    t02: RefCell<HashMap<String, Bilinear>>,
}

impl Lifts {
    fn new() -> Self {
        Self {
            opts: SolveOptions::default(),
            vf: RefCell::default(),
            of: RefCell::default(),
            t11: RefCell::default(),
            t02: RefCell::default(),
        }
    }

    fn vf(&self, z: &VectorField, kind: LiftKind, k: u32) -> Result<VectorField> {
        let key = format!("{kind}|{k}|{}|{z}", z.chart());
        if let Some(v) = self.vf.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = vf_lift_solve(z, kind, k, &self.opts)?.value;
        self.vf.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    fn of(&self, w: &OneForm, kind: LiftKind, k: u32) -> Result<OneForm> {
        let key = format!("{kind}|{k}|{}|{w}", w.chart());
        if let Some(v) = self.of.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = of_lift_solve(w, kind, k, &self.opts)?.value;
        self.of.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    fn t11(&self, phi: &EndoField, kind: LiftKind, k: u32) -> Result<EndoField> {
        let key = format!("{kind}|{k}|{}|{phi}", phi.chart());
        if let Some(v) = self.t11.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = t11_lift_solve(phi, kind, k, &self.opts)?.value;
        self.t11.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    fn t02(&self, g: &Bilinear, kind: LiftKind, k: u32) -> Result<Bilinear> {
        let key = format!("{kind}|{k}|{}|{g}", g.chart());
        if let Some(v) = self.t02.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = t02_lift_solve(g, kind, k, &self.opts)?.value;
        self.t02.borrow_mut().insert(key, v.clone());
        Ok(v)
    }
}

fn evaluate<S>(clauses: Vec<Clause<'_, S>>, samples: &[S], t_free: bool, lifts: &Lifts) -> Vec<ClauseResult> {
    clauses
        .into_iter()
        .map(|c| {
            let mut passed = 0;
            let mut witness = None;
            for (n, s) in samples.iter().enumerate() {
                match (c.check)(s, lifts) {
                    Ok(Outcome::Holds) => passed += 1,
                    Ok(Outcome::Fails(w)) => {
                        witness.get_or_insert(w);
                    }
                    Err(e) => {
                        witness.get_or_insert_with(|| format!("sample {}: {e}", n + 1));
                    }
                }
            }
            let status = if passed == samples.len() {
                Status::Pass
            } else {
                match c.kind {
                    Kind::Documented => Status::Conflict,
                    Kind::TimeSensitive if !t_free => Status::Conflict,
                    _ => Status::Fail,
                }
            };
            ClauseResult {
                id: c.id.to_string(),
                locus: c.locus.to_string(),
                statement: c.statement.to_string(),
                status,
                passed,
                samples: samples.len(),
                witness,
            }
        })
        .collect()
}

/// `(r, s)` with `r + s = k`, `r` ascending.
fn splits(k: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=k).map(move |r| (r, k - r))
}

fn binom(r: u32, j: u32) -> Result<Expr> {
    Ok(Expr::constant(GaussianRational::from_int(binomial(r, j)? as i64)))
}

fn cv(r: u32, s: u32) -> LiftKind {
    LiftKind::CompleteVertical { r, s }
}

fn level0(base: &ChartSpec) -> Vec<CoordId> {
    base.coordinates().into_iter().filter(|c| !c.is_time()).collect()
}

struct Sample {
    f: Expr,
    g: Expr,
    /// Zero `∂/∂t` component.
    z: VectorField,
    /// Unit `∂/∂t` component on time charts.
    w: VectorField,
    omega: OneForm,
    lambda: OneForm,
    gamma: ConnectionCoeffs,
}

impl Sample {
    fn draw(d: &mut Draw, base: &ChartSpec, k: u32) -> Self {
        Self {
            f: d.poly(base),
            g: d.poly(base),
            z: d.vector(base, 0),
            w: d.vector(base, 1),
            omega: d.oneform(base),
            lambda: d.oneform(base),
            gamma: d.connection(&base.with_order(k)),
        }
    }
}

fn corpus(gen: &FieldGen, base: &ChartSpec, k: u32, samples: usize) -> Vec<Sample> {
    let mut d = gen.rng();
    let mut out: Vec<Sample> = (0..samples).map(|_| Sample::draw(&mut d, base, k)).collect();
    if !gen.t_free && base.has_time() {
        let probes = [Expr::time(), Expr::time() * Expr::holo(0, 1)];
        for (s, p) in out.iter_mut().zip(probes) {
            s.f = p;
        }
    }
    out
}

fn function_clauses<'a>(base: ChartSpec, k: u32) -> Vec<Clause<'a, Sample>> {
    use Kind::*;
    vec![
        clause("F01", "functions:i", "(f+g)^{v^r} = f^{v^r} + g^{v^r}", Exact, move |s: &Sample, _: &Lifts| {
            for r in 1..=k {
                let sum = ScalarField::new(base, &s.f + &s.g)?;
                let lhs = fn_vertical(&sum, r).into_value();
                let rhs = fn_vertical(&ScalarField::new(base, s.f.clone())?, r).into_value()
                    + fn_vertical(&ScalarField::new(base, s.g.clone())?, r).into_value();
                ensure!(lhs, rhs, "f = {}, g = {}, r = {r}", s.f, s.g);
            }
            Ok(Outcome::Holds)
        }),
        clause("F02", "functions:i", "(f+g)^{c^r} = f^{c^r} + g^{c^r}", Exact, move |s: &Sample, _: &Lifts| {
            for r in 1..=k {
                let lhs = complete_expr(&(&s.f + &s.g), r);
                let rhs = complete_expr(&s.f, r) + complete_expr(&s.g, r);
                ensure!(lhs, rhs, "f = {}, g = {}, r = {r}", s.f, s.g);
            }
            Ok(Outcome::Holds)
        }),
        clause("F03", "functions:i", "(f+g)^{H^k} = 0", TimeSensitive, move |s: &Sample, _: &Lifts| {
            let h = fn_horizontal(&ScalarField::new(base, &s.f + &s.g)?, k)?.into_value();
            ensure!(h, Expr::zero(), "f + g = {}", &s.f + &s.g);
            Ok(Outcome::Holds)
        }),
        clause("F04", "functions:ii", "(f.g)^{v^r} = f^{v^r}.g^{v^r}", Exact, move |s: &Sample, _: &Lifts| {
            for r in 1..=k {
                let lhs = fn_vertical(&ScalarField::new(base, &s.f * &s.g)?, r).into_value();
                ensure!(lhs, &s.f * &s.g, "f = {}, g = {}, r = {r}", s.f, s.g);
            }
            Ok(Outcome::Holds)
        }),
        clause(
            "F05",
            "functions:ii",
            "(f.g)^{c^r} = sum_j C(r,j) f^{c^{r-j}v^j}.g^{c^j v^{r-j}}",
            Exact,
            move |s: &Sample, _: &Lifts| {
                for r in 1..=k {
                    let lhs = complete_expr(&(&s.f * &s.g), r);
                    let mut rhs = Expr::zero();
                    for j in 0..=r {
                        let term = &complete_expr(&s.f, r - j) * &complete_expr(&s.g, j);
                        rhs = rhs + &binom(r, j)? * &term;
                    }
                    ensure!(lhs, rhs, "f = {}, g = {}, r = {r}", s.f, s.g);
                }
                Ok(Outcome::Holds)
            },
        ),
        clause("F06", "functions:ii", "(f.g)^{H^k} = 0", TimeSensitive, move |s: &Sample, _: &Lifts| {
            let h = fn_horizontal(&ScalarField::new(base, &s.f * &s.g)?, k)?.into_value();
            ensure!(h, Expr::zero(), "f.g = {}", &s.f * &s.g);
            Ok(Outcome::Holds)
        }),
        clause(
            "F07",
            "functions:iii",
            "(df/dz0_i)^{v^r} = df^{c^r}/dzr_i, conjugates alike",
            Exact,
            move |s: &Sample, _: &Lifts| {
                for r in 1..=k {
                    let fc = complete_expr(&s.f, r);
                    for x in level0(&base) {
                        ensure!(s.f.diff(x), fc.diff(x.at_level(r)), "f = {}, r = {r}, x = {x}", s.f);
                    }
                }
                Ok(Outcome::Holds)
            },
        ),
        clause("F08", "functions:iii", "(df/dt)^{v^r} = df^{c^r}/dt", TimeSensitive, move |s: &Sample, _: &Lifts| {
            for r in 1..=k {
                let lhs = s.f.diff(CoordId::TIME);
                let rhs = complete_expr(&s.f, r).diff(CoordId::TIME);
                ensure!(lhs, rhs, "f = {}, r = {r}", s.f);
            }
            Ok(Outcome::Holds)
        }),
        clause(
            "F09",
            "functions:iv",
            "(df/dz0_i)^{c^r} = df^{c^r}/dz0_i, conjugates alike",
            Exact,
            move |s: &Sample, _: &Lifts| {
                for r in 1..=k {
                    let fc = complete_expr(&s.f, r);
                    for x in level0(&base) {
                        ensure!(complete_expr(&s.f.diff(x), r), fc.diff(x), "f = {}, r = {r}, x = {x}", s.f);
                    }
                }
                Ok(Outcome::Holds)
            },
        ),
        clause("F10", "functions:iv", "(df/dt)^{c^r} = df^{c^r}/dt", TimeSensitive, move |s: &Sample, _: &Lifts| {
            for r in 1..=k {
                let lhs = complete_expr(&s.f.diff(CoordId::TIME), r);
                let rhs = complete_expr(&s.f, r).diff(CoordId::TIME);
                ensure!(lhs, rhs, "f = {}, r = {r}", s.f);
            }
            Ok(Outcome::Holds)
        }),
        clause("F11", "functions:cv", "f^{c^r v^s} = f^{v^s c^r}, r+s = k", Exact, move |s: &Sample, _: &Lifts| {
            for (r, sv) in splits(k) {
                let f = ScalarField::new(base, s.f.clone())?;
                let c_then_v = fn_vertical(&fn_complete(&f, r), sv).into_value();
                let v_then_c = fn_complete(&fn_vertical(&f, sv), r).into_value();
                ensure!(c_then_v, v_then_c, "f = {}, (r,s) = ({r},{sv})", s.f);
            }
            Ok(Outcome::Holds)
        }),
        clause("F12", "functions:h", "f^{H^k} = f^{c^k} - gamma(grad f^{c^{k-1}}) = 0", TimeSensitive, move |s: &Sample, _: &Lifts| {
            let fc = complete_expr(&s.f, k);
            let h = &fc - &gamma_gradient_expr(&complete_expr(&s.f, k - 1));
            ensure!(h, Expr::zero(), "f = {}", s.f);
            Ok(Outcome::Holds)
        }),
    ]
}

fn vector_clauses<'a>(base: ChartSpec, k: u32) -> Vec<Clause<'a, Sample>> {
    use Kind::*;
    use LiftKind::{Complete, Vertical};
    vec![
        clause("V01", "vectors:i", "(Z+W)^{v^k} = Z^{v^k} + W^{v^k}", Exact, move |s: &Sample, l: &Lifts| {
            let lhs = l.vf(&s.z.add(&s.w)?, Vertical, k)?;
            let rhs = l.vf(&s.z, Vertical, k)?.add(&l.vf(&s.w, Vertical, k)?)?;
            ensure!(lhs, rhs, "Z = {}, W = {}", s.z, s.w);
            Ok(Outcome::Holds)
        }),
        clause("V02", "vectors:i", "(Z+W)^{c^k} = Z^{c^k} + W^{c^k}", Exact, move |s: &Sample, l: &Lifts| {
            let lhs = l.vf(&s.z.add(&s.w)?, Complete, k)?;
            let rhs = l.vf(&s.z, Complete, k)?.add(&l.vf(&s.w, Complete, k)?)?;
            ensure!(lhs, rhs, "Z = {}, W = {}", s.z, s.w);
            Ok(Outcome::Holds)
        }),
        clause("V03", "vectors:i", "(Z+W)^{H^k} = Z^{H^k} + W^{H^k}", Exact, move |s: &Sample, _: &Lifts| {
            let lhs = vf_horizontal(&s.z.add(&s.w)?, &s.gamma)?;
            let rhs = vf_horizontal(&s.z, &s.gamma)?.add(&vf_horizontal(&s.w, &s.gamma)?)?;
            ensure!(lhs, rhs, "Z = {}, W = {}", s.z, s.w);
            Ok(Outcome::Holds)
        }),
        clause("V04", "vectors:ii", "(fZ)^{v^r} = f^{v^r} Z^{v^r}", Exact, move |s: &Sample, l: &Lifts| {
            for r in 1..=k {
                let lhs = l.vf(&s.z.scale(&s.f), Vertical, r)?;
                let rhs = l.vf(&s.z, Vertical, r)?.scale(&s.f);
                ensure!(lhs, rhs, "f = {}, Z = {}, r = {r}", s.f, s.z);
            }
            Ok(Outcome::Holds)
        }),
        clause(
            "V05",
            "vectors:ii",
            "(fZ)^{c^r} = sum_j C(r,j) f^{c^{r-j}v^j} Z^{c^j v^{r-j}}",
            Exact,
            move |s: &Sample, l: &Lifts| {
                for r in 1..=k {
                    let lhs = l.vf(&s.z.scale(&s.f), Complete, r)?;
                    let mut rhs = VectorField::zero(base.with_order(r));
                    for j in 0..=r {
                        let coeff = &binom(r, j)? * &complete_expr(&s.f, r - j);
                        rhs = rhs.add(&l.vf(&s.z, cv(j, r - j), r)?.scale(&coeff))?;
                    }
                    ensure!(lhs, rhs, "f = {}, Z = {}, r = {r}", s.f, s.z);
                }
                Ok(Outcome::Holds)
            },
        ),
        clause("V06", "vectors:iii", "Z^{v^k}(f^{v^k}) = 0", TimeSensitive, move |s: &Sample, l: &Lifts| {
            let lhs = l.vf(&s.w, Vertical, k)?.act(&s.f);
            ensure!(lhs, Expr::zero(), "Z = {}, f = {}", s.w, s.f);
            Ok(Outcome::Holds)
        }),
        clause("V07", "vectors:iii", "Z^{c^k}(f^{v^k}) = (Zf)^{v^k}", TimeSensitive, move |s: &Sample, l: &Lifts| {
            let lhs = l.vf(&s.w, Complete, k)?.act(&s.f);
            ensure!(lhs, s.w.act(&s.f), "Z = {}, f = {}", s.w, s.f);
            Ok(Outcome::Holds)
        }),
        clause("V08", "vectors:iii", "Z^{v^k}(f^{c^k}) = (Zf)^{v^k}", TimeSensitive, move |s: &Sample, l: &Lifts| {
            let lhs = l.vf(&s.w, Vertical, k)?.act(&complete_expr(&s.f, k));
            ensure!(lhs, s.w.act(&s.f), "Z = {}, f = {}", s.w, s.f);
            Ok(Outcome::Holds)
        }),
        clause("V09", "vectors:iii", "Z^{c^k}(f^{c^k}) = (Zf)^{c^k}", TimeSensitive, move |s: &Sample, l: &Lifts| {
            let lhs = l.vf(&s.w, Complete, k)?.act(&complete_expr(&s.f, k));
            ensure!(lhs, complete_expr(&s.w.act(&s.f), k), "Z = {}, f = {}", s.w, s.f);
            Ok(Outcome::Holds)
        }),
        clause("V10", "vectors:iii", "Z^{H^k}(f^{v^k}) = (Zf)^{v^k}", TimeSensitive, move |s: &Sample, _: &Lifts| {
            let lhs = vf_horizontal(&s.w, &s.gamma)?.act(&s.f);
            ensure!(lhs, s.w.act(&s.f), "Z = {}, f = {}", s.w, s.f);
            Ok(Outcome::Holds)
        }),
        clause(
            "V11",
            "vectors:iv",
            "(d/dz0_i)^{c^r} = d/dz0_i, (d/dz0_i)^{v^r} = d/dzr_i, (d/dt)^{c^r} = (d/dt)^{v^r} = d/dt",
            Exact,
            move |_: &Sample, l: &Lifts| {
                for r in 1..=k {
                    let up = base.with_order(r);
                    for x in base.coordinates() {
                        let e = VectorField::basis(base, x)?;
                        let vx = if x.is_time() { x } else { x.at_level(r) };
                        ensure!(l.vf(&e, Complete, r)?, VectorField::basis(up, x)?, "x = {x}, r = {r}, complete");
                        ensure!(l.vf(&e, Vertical, r)?, VectorField::basis(up, vx)?, "x = {x}, r = {r}, vertical");
                    }
                }
                Ok(Outcome::Holds)
            },
        ),
        clause(
            "V12",
            "vectors:iv",
            "(d/dt)^{H^k} = d/dt, (d/dz0_i)^{H^k} = D_0i",
            Exact,
            move |s: &Sample, _: &Lifts| {
                let frame = adapted_frame(&s.gamma)?;
                let up = base.with_order(k);
                if base.has_time() {
                    let dt = VectorField::basis(base, CoordId::TIME)?;
                    ensure!(vf_horizontal(&dt, &s.gamma)?, VectorField::basis(up, CoordId::TIME)?, "x = t");
                }
                for i in 1..=base.m() {
                    let dz = VectorField::basis(base, base.holo(0, i))?;
                    let dzb = VectorField::basis(base, base.anti(0, i))?;
                    let n = i as usize - 1;
                    ensure!(vf_horizontal(&dz, &s.gamma)?, frame.d[0][n], "x = z0_{i}");
                    ensure!(vf_horizontal(&dzb, &s.gamma)?, frame.dbar[0][n], "x = zb0_{i}");
                }
                Ok(Outcome::Holds)
            },
        ),
        clause(
            "V13",
            "vectors:cv",
            "Z^{c^r v^s}(f^{c^k}) = (Zf)^{v^s c^r}, r+s = k",
            TimeSensitive,
            move |s: &Sample, l: &Lifts| {
                for (r, sv) in splits(k) {
                    let lhs = l.vf(&s.z, cv(r, sv), k)?.act(&complete_expr(&s.f, k));
                    let rhs = complete_expr(&s.z.act(&s.f), r);
                    ensure!(lhs, rhs, "Z = {}, f = {}, (r,s) = ({r},{sv})", s.z, s.f);
                }
                Ok(Outcome::Holds)
            },
        ),
        clause(
            "V14",
            "vectors:cv",
            "(fZ)^{c^r v^s} = sum_h C(r,h) f^{c^{r-h}v^{s+h}} Z^{c^h v^{k-h}}",
            Exact,
            move |s: &Sample, l: &Lifts| {
                for (r, sv) in splits(k) {
                    let lhs = l.vf(&s.z.scale(&s.f), cv(r, sv), k)?;
                    let mut rhs = VectorField::zero(base.with_order(k));
                    for h in 0..=r {
                        let coeff = &binom(r, h)? * &complete_expr(&s.f, r - h);
                        rhs = rhs.add(&l.vf(&s.z, cv(h, k - h), k)?.scale(&coeff))?;
                    }
                    ensure!(lhs, rhs, "f = {}, Z = {}, (r,s) = ({r},{sv})", s.f, s.z);
                }
                Ok(Outcome::Holds)
            },
        ),
    ]
}

fn oneform_clauses<'a>(base: ChartSpec, k: u32) -> Vec<Clause<'a, Sample>> {
    use Kind::*;
    use LiftKind::{Complete, Vertical};
    vec![
        clause("O01", "oneforms:i", "(w+l)^{v^k} = w^{v^k} + l^{v^k}", Exact, move |s: &Sample, l: &Lifts| {
            let lhs = l.of(&s.omega.add(&s.lambda)?, Vertical, k)?;
            let rhs = l.of(&s.omega, Vertical, k)?.add(&l.of(&s.lambda, Vertical, k)?)?;
            ensure!(lhs, rhs, "w = {}, l = {}", s.omega, s.lambda);
            Ok(Outcome::Holds)
        }),
        clause("O02", "oneforms:i", "(w+l)^{c^k} = w^{c^k} + l^{c^k}", Exact, move |s: &Sample, l: &Lifts| {
            let lhs = l.of(&s.omega.add(&s.lambda)?, Complete, k)?;
            let rhs = l.of(&s.omega, Complete, k)?.add(&l.of(&s.lambda, Complete, k)?)?;
            ensure!(lhs, rhs, "w = {}, l = {}", s.omega, s.lambda);
            Ok(Outcome::Holds)
        }),
        clause("O03", "oneforms:i", "(w+l)^{H^k} = w^{H^k} + l^{H^k}", Exact, move |s: &Sample, _: &Lifts| {
            let lhs = of_horizontal(&s.omega.add(&s.lambda)?, &s.gamma)?;
            let rhs = of_horizontal(&s.omega, &s.gamma)?.add(&of_horizontal(&s.lambda, &s.gamma)?)?;
            ensure!(lhs, rhs, "w = {}, l = {}", s.omega, s.lambda);
            Ok(Outcome::Holds)
        }),
        clause("O04", "oneforms:ii", "(fw)^{v^r} = f^{v^r} w^{v^r}", Exact, move |s: &Sample, l: &Lifts| {
            for r in 1..=k {
                let lhs = l.of(&s.omega.scale(&s.f), Vertical, r)?;
                let rhs = l.of(&s.omega, Vertical, r)?.scale(&s.f);
                ensure!(lhs, rhs, "f = {}, w = {}, r = {r}", s.f, s.omega);
            }
            Ok(Outcome::Holds)
        }),
        clause(
            "O05",
            "oneforms:ii",
            "(fw)^{c^r} = sum_j C(r,j) f^{c^{r-j}v^j} w^{c^j v^{r-j}}",
            Exact,
            move |s: &Sample, l: &Lifts| {
                for r in 1..=k {
                    let lhs = l.of(&s.omega.scale(&s.f), Complete, r)?;
                    let mut rhs = OneForm::zero(base.with_order(r));
                    for j in 0..=r {
                        let coeff = &binom(r, j)? * &complete_expr(&s.f, r - j);
                        rhs = rhs.add(&l.of(&s.omega, cv(j, r - j), r)?.scale(&coeff))?;
                    }
                    ensure!(lhs, rhs, "f = {}, w = {}, r = {r}", s.f, s.omega);
                }
                Ok(Outcome::Holds)
            },
        ),
        clause("O06", "oneforms:ii", "w^{H^k}(Z^{H^k}) = 0", Exact, move |s: &Sample, _: &Lifts| {
            let wh = of_horizontal(&s.omega, &s.gamma)?;
            let zh = vf_horizontal(&s.w, &s.gamma)?;
            ensure!(pair(&wh, &zh)?.into_value(), Expr::zero(), "w = {}, Z = {}", s.omega, s.w);
            Ok(Outcome::Holds)
        }),
        clause("O07", "oneforms:ii", "w^{H^k}(Z^{v^k}) = (wZ)^{v^k}", Exact, move |s: &Sample, l: &Lifts| {
            let wh = of_horizontal(&s.omega, &s.gamma)?;
            let zv = l.vf(&s.w, Vertical, k)?;
            let rhs = pair(&s.omega, &s.w)?.into_value();
            ensure!(pair(&wh, &zv)?.into_value(), rhs, "w = {}, Z = {}", s.omega, s.w);
            Ok(Outcome::Holds)
        }),
        clause(
            "O08",
            "oneforms:iii",
            "(dz0_i)^{v^r} = dz0_i, (dt)^{v^r} = dt, (dz0_i)^{c^r} = dzr_i",
            Exact,
            move |_: &Sample, l: &Lifts| {
                for r in 1..=k {
                    let up = base.with_order(r);
                    for x in base.coordinates() {
                        let e = OneForm::basis(base, x)?;
                        ensure!(l.of(&e, Vertical, r)?, OneForm::basis(up, x)?, "x = {x}, r = {r}, vertical");
                        if !x.is_time() {
                            let c = OneForm::basis(up, x.at_level(r))?;
                            ensure!(l.of(&e, Complete, r)?, c, "x = {x}, r = {r}, complete");
                        }
                    }
                }
                Ok(Outcome::Holds)
            },
        ),
        clause("O09", "oneforms:iii", "(dt)^{c^r} = dt", Documented, move |_: &Sample, l: &Lifts| {
            if !base.has_time() {
                return Ok(Outcome::Holds);
            }
            let dt = OneForm::basis(base, CoordId::TIME)?;
            for r in 1..=k {
                match l.of(&dt, Complete, r) {
                    Ok(up) => ensure!(up, OneForm::basis(base.with_order(r), CoordId::TIME)?, "r = {r}"),
                    Err(e) => return Ok(Outcome::Fails(format!("r = {r}: {e}"))),
                }
            }
            Ok(Outcome::Holds)
        }),
        clause("O10", "oneforms:iii", "(dt)^{H^k} = dt", Documented, move |s: &Sample, _: &Lifts| {
            if !base.has_time() {
                return Ok(Outcome::Holds);
            }
            let dt = OneForm::basis(base, CoordId::TIME)?;
            match of_horizontal(&dt, &s.gamma) {
                Ok(up) => ensure!(up, OneForm::basis(base.with_order(k), CoordId::TIME)?, "k = {k}"),
                Err(e) => return Ok(Outcome::Fails(format!("k = {k}: {e}"))),
            }
            Ok(Outcome::Holds)
        }),
        clause("O11", "oneforms:iii", "(dz0_i)^{H^k} = eta^{0i}", Documented, move |s: &Sample, _: &Lifts| {
            let frame = adapted_frame(&s.gamma)?;
            for i in 1..=base.m() {
                let n = i as usize - 1;
                let dz = OneForm::basis(base, base.holo(0, i))?;
                let dzb = OneForm::basis(base, base.anti(0, i))?;
                ensure!(of_horizontal(&dz, &s.gamma)?, frame.eta[0][n], "k = {k}, x = z0_{i}");
                ensure!(of_horizontal(&dzb, &s.gamma)?, frame.etabar[0][n], "k = {k}, x = zb0_{i}");
            }
            Ok(Outcome::Holds)
        }),
        clause(
            "O12",
            "oneforms:cv",
            "w^{c^r v^s}(Z^{c^k}) = (wZ)^{v^s c^r}, r+s = k",
            TimeSensitive,
            move |s: &Sample, l: &Lifts| {
                for (r, sv) in splits(k) {
                    let up = l.of(&s.omega, cv(r, sv), k)?;
                    let lhs = pair(&up, &l.vf(&s.z, Complete, k)?)?.into_value();
                    let rhs = complete_expr(pair(&s.omega, &s.z)?.value(), r);
                    ensure!(lhs, rhs, "w = {}, Z = {}, (r,s) = ({r},{sv})", s.omega, s.z);
                }
                Ok(Outcome::Holds)
            },
        ),
        clause(
            "O13",
            "oneforms:cv",
            "(fw)^{c^r v^s} = sum_h C(r,h) f^{c^{r-h}v^{s+h}} w^{c^h v^{k-h}}",
            Exact,
            move |s: &Sample, l: &Lifts| {
                for (r, sv) in splits(k) {
                    let lhs = l.of(&s.omega.scale(&s.f), cv(r, sv), k)?;
                    let mut rhs = OneForm::zero(base.with_order(k));
                    for h in 0..=r {
                        let coeff = &binom(r, h)? * &complete_expr(&s.f, r - h);
                        rhs = rhs.add(&l.of(&s.omega, cv(h, k - h), k)?.scale(&coeff))?;
                    }
                    ensure!(lhs, rhs, "f = {}, w = {}, (r,s) = ({r},{sv})", s.f, s.omega);
                }
                Ok(Outcome::Holds)
            },
        ),
        clause(
            "O14",
            "oneforms:def",
            "w^{v^k}(Z^{c^k}) = (wZ)^{v^k}, w^{c^k}(Z^{c^k}) = (wZ)^{c^k}",
            TimeSensitive,
            move |s: &Sample, l: &Lifts| {
                let zc = l.vf(&s.z, Complete, k)?;
                let wz = pair(&s.omega, &s.z)?.into_value();
                let v = pair(&l.of(&s.omega, Vertical, k)?, &zc)?.into_value();
                ensure!(v, wz, "w = {}, Z = {}, vertical", s.omega, s.z);
                let c = pair(&l.of(&s.omega, Complete, k)?, &zc)?.into_value();
                ensure!(c, complete_expr(&wz, k), "w = {}, Z = {}, complete", s.omega, s.z);
                Ok(Outcome::Holds)
            },
        ),
    ]
}

fn bracket_clauses<'a>(k: u32) -> Vec<Clause<'a, Sample>> {
    use Kind::*;
    use LiftKind::{Complete, Vertical};
    vec![
        clause("B01", "brackets:iv", "[X^{v^k}, Y^{v^k}] = 0", Exact, move |s: &Sample, l: &Lifts| {
            let lhs = lie_bracket(&l.vf(&s.z, Vertical, k)?, &l.vf(&s.w, Vertical, k)?)?;
            ensure!(lhs.to_string(), "0".to_string(), "X = {}, Y = {}", s.z, s.w);
            Ok(Outcome::Holds)
        }),
        clause("B02", "brackets:iv", "[X^{c^k}, Y^{c^k}] = [X,Y]^{c^k}", Exact, move |s: &Sample, l: &Lifts| {
            let lhs = lie_bracket(&l.vf(&s.z, Complete, k)?, &l.vf(&s.w, Complete, k)?)?;
            let rhs = l.vf(&lie_bracket(&s.z, &s.w)?, Complete, k)?;
            ensure!(lhs, rhs, "X = {}, Y = {}", s.z, s.w);
            Ok(Outcome::Holds)
        }),
        clause("B03", "brackets:iv", "[X^{v^k}, Y^{c^k}] = [X,Y]^{v^k}", Exact, move |s: &Sample, l: &Lifts| {
            let lhs = lie_bracket(&l.vf(&s.z, Vertical, k)?, &l.vf(&s.w, Complete, k)?)?;
            let rhs = l.vf(&lie_bracket(&s.z, &s.w)?, Vertical, k)?;
            ensure!(lhs, rhs, "X = {}, Y = {}", s.z, s.w);
            Ok(Outcome::Holds)
        }),
        clause("B04", "brackets:iv", "[X^{c^k}, Y^{v^k}] = [X,Y]^{v^k}", Exact, move |s: &Sample, l: &Lifts| {
            let lhs = lie_bracket(&l.vf(&s.z, Complete, k)?, &l.vf(&s.w, Vertical, k)?)?;
            let rhs = l.vf(&lie_bracket(&s.z, &s.w)?, Vertical, k)?;
            ensure!(lhs, rhs, "X = {}, Y = {}", s.z, s.w);
            Ok(Outcome::Holds)
        }),
    ]
}

fn frame_clauses<'a>(base: ChartSpec, k: u32) -> Vec<Clause<'a, Sample>> {
    use Kind::*;
    let m = base.m() as usize;
    let delta = |i: usize, j: usize| if i == j { Expr::one() } else { Expr::zero() };
    vec![
        clause("R01", "frames:dual", "eta^{ri}(D_rj) = 0, conjugates alike", Exact, move |s: &Sample, _: &Lifts| {
            let f = adapted_frame(&s.gamma)?;
            for r in 0..k as usize {
                for i in 0..m {
                    for j in 0..m {
                        ensure!(pair(&f.eta[r][i], &f.d[r][j])?.into_value(), Expr::zero(), "r = {r}, i = {}, j = {}", i + 1, j + 1);
                        ensure!(pair(&f.etabar[r][i], &f.dbar[r][j])?.into_value(), Expr::zero(), "r = {r}, i = {}, j = {}, conjugate", i + 1, j + 1);
                    }
                }
            }
            Ok(Outcome::Holds)
        }),
        clause("R02", "frames:dual", "theta^{ri}(D_rj) = delta_ij", Exact, move |s: &Sample, _: &Lifts| {
            let f = adapted_frame(&s.gamma)?;
            for r in 0..k as usize {
                for i in 0..m {
                    for j in 0..m {
                        ensure!(pair(&f.theta[r][i], &f.d[r][j])?.into_value(), delta(i, j), "r = {r}, i = {}, j = {}", i + 1, j + 1);
                        ensure!(pair(&f.thetabar[r][i], &f.dbar[r][j])?.into_value(), delta(i, j), "r = {r}, i = {}, j = {}, conjugate", i + 1, j + 1);
                    }
                }
            }
            Ok(Outcome::Holds)
        }),
        clause("R03", "frames:dual", "eta^{ri}(V_rj) = delta_ij", Exact, move |s: &Sample, _: &Lifts| {
            let f = adapted_frame(&s.gamma)?;
            for r in 0..k as usize {
                for i in 0..m {
                    for j in 0..m {
                        ensure!(pair(&f.eta[r][i], &f.v[r][j])?.into_value(), delta(i, j), "r = {r}, i = {}, j = {}", i + 1, j + 1);
                        ensure!(pair(&f.etabar[r][i], &f.vbar[r][j])?.into_value(), delta(i, j), "r = {r}, i = {}, j = {}, conjugate", i + 1, j + 1);
                    }
                }
            }
            Ok(Outcome::Holds)
        }),
        clause("R04", "frames:dual", "theta^{ri}(V_rj) = 0", Exact, move |s: &Sample, _: &Lifts| {
            let f = adapted_frame(&s.gamma)?;
            for r in 0..k as usize {
                for i in 0..m {
                    for j in 0..m {
                        ensure!(pair(&f.theta[r][i], &f.v[r][j])?.into_value(), Expr::zero(), "r = {r}, i = {}, j = {}", i + 1, j + 1);
                    }
                }
            }
            Ok(Outcome::Holds)
        }),
        clause("R05", "frames:lift", "Z^{H^k}(f^{v^k}) = (Zf)^{v^k}", TimeSensitive, move |s: &Sample, _: &Lifts| {
            let lhs = vf_horizontal(&s.w, &s.gamma)?.act(&s.f);
            ensure!(lhs, s.w.act(&s.f), "Z = {}, f = {}", s.w, s.f);
            Ok(Outcome::Holds)
        }),
        clause("R06", "frames:lift", "w^{H^k}(Z^{H^k}) = 0", Exact, move |s: &Sample, _: &Lifts| {
            let wh = of_horizontal(&s.omega, &s.gamma)?;
            let zh = vf_horizontal(&s.w, &s.gamma)?;
            ensure!(pair(&wh, &zh)?.into_value(), Expr::zero(), "w = {}, Z = {}", s.omega, s.w);
            Ok(Outcome::Holds)
        }),
        clause("R07", "frames:lift", "w^{H^k}(Z^{v^k}) = (wZ)^{v^k}", Exact, move |s: &Sample, l: &Lifts| {
            let wh = of_horizontal(&s.omega, &s.gamma)?;
            let zv = l.vf(&s.w, LiftKind::Vertical, k)?;
            ensure!(pair(&wh, &zv)?.into_value(), pair(&s.omega, &s.w)?.into_value(), "w = {}, Z = {}", s.omega, s.w);
            Ok(Outcome::Holds)
        }),
    ]
}

struct TensorSample {
    phi: EndoField,
    xi: VectorField,
    eta: OneForm,
    g: Bilinear,
    x: VectorField,
    y: VectorField,
}

fn tensor_corpus(gen: &FieldGen, base: &ChartSpec, samples: usize) -> Vec<TensorSample> {
    let mut d = gen.rng();
    (0..samples)
        .map(|_| TensorSample {
            phi: d.endo(base),
            xi: d.vector(base, 0),
            eta: d.oneform(base),
            g: d.symmetric(base),
            x: d.vector(base, 0),
            y: d.vector(base, 0),
        })
        .collect()
}

fn tensor_clauses<'a>(k: u32) -> Vec<Clause<'a, TensorSample>> {
    use Kind::*;
    use LiftKind::{Complete, Vertical};
    vec![
        clause("T01", "tensors:vertical", "phi^{v^k}(xi^{c^k}) = (phi xi)^{v^k}", Exact, move |s: &TensorSample, l: &Lifts| {
            let lhs = endo_apply(&l.t11(&s.phi, Vertical, k)?, &l.vf(&s.xi, Complete, k)?)?;
            let rhs = l.vf(&endo_apply(&s.phi, &s.xi)?, Vertical, k)?;
            ensure!(lhs, rhs, "phi = {}, xi = {}", s.phi, s.xi);
            Ok(Outcome::Holds)
        }),
        clause("T02", "tensors:vertical", "eta^{v^k}(phi^{v^k}) = (eta phi)^{v^k}", Documented, move |s: &TensorSample, l: &Lifts| {
            let lhs = form_pullback(&l.of(&s.eta, Vertical, k)?, &l.t11(&s.phi, Vertical, k)?)?;
            let rhs = l.of(&form_pullback(&s.eta, &s.phi)?, Vertical, k)?;
            ensure!(lhs, rhs, "phi = {}, eta = {}", s.phi, s.eta);
            Ok(Outcome::Holds)
        }),
        clause("T03", "tensors:complete", "phi^{c^k}(xi^{c^k}) = (phi xi)^{c^k}", Exact, move |s: &TensorSample, l: &Lifts| {
            let lhs = endo_apply(&l.t11(&s.phi, Complete, k)?, &l.vf(&s.xi, Complete, k)?)?;
            let rhs = l.vf(&endo_apply(&s.phi, &s.xi)?, Complete, k)?;
            ensure!(lhs, rhs, "phi = {}, xi = {}", s.phi, s.xi);
            Ok(Outcome::Holds)
        }),
        clause("T04", "tensors:complete", "phi^{c^k}(xi^{c^k}) = (phi xi)^{v^k} as printed", Documented, move |s: &TensorSample, l: &Lifts| {
            let lhs = endo_apply(&l.t11(&s.phi, Complete, k)?, &l.vf(&s.xi, Complete, k)?)?;
            let rhs = l.vf(&endo_apply(&s.phi, &s.xi)?, Vertical, k)?;
            ensure!(lhs, rhs, "phi = {}, xi = {}", s.phi, s.xi);
            Ok(Outcome::Holds)
        }),
        clause("T05", "tensors:complete", "eta^{c^k}(phi^{c^k}) = (eta phi)^{c^k}", Exact, move |s: &TensorSample, l: &Lifts| {
            let lhs = form_pullback(&l.of(&s.eta, Complete, k)?, &l.t11(&s.phi, Complete, k)?)?;
            let rhs = l.of(&form_pullback(&s.eta, &s.phi)?, Complete, k)?;
            ensure!(lhs, rhs, "phi = {}, eta = {}", s.phi, s.eta);
            Ok(Outcome::Holds)
        }),
        clause("T06", "tensors:metric", "G^{v^k}(X^{c^k}, Y^{c^k}) = (G(X,Y))^{v^k}", Exact, move |s: &TensorSample, l: &Lifts| {
            let gv = l.t02(&s.g, Vertical, k)?;
            let lhs = gv.eval(&l.vf(&s.x, Complete, k)?, &l.vf(&s.y, Complete, k)?)?;
            ensure!(lhs, s.g.eval(&s.x, &s.y)?, "G = {}, X = {}, Y = {}", s.g, s.x, s.y);
            Ok(Outcome::Holds)
        }),
        clause("T07", "tensors:metric", "G^{c^k}(X^{c^k}, Y^{c^k}) = (G(X,Y))^{c^k}", Exact, move |s: &TensorSample, l: &Lifts| {
            let gc = l.t02(&s.g, Complete, k)?;
            let lhs = gc.eval(&l.vf(&s.x, Complete, k)?, &l.vf(&s.y, Complete, k)?)?;
            ensure!(lhs, complete_expr(&s.g.eval(&s.x, &s.y)?, k), "G = {}, X = {}, Y = {}", s.g, s.x, s.y);
            Ok(Outcome::Holds)
        }),
    ]
}

fn structure_clauses<'a>(base: ChartSpec, k: u32) -> Vec<Clause<'a, Bilinear>> {
    use Kind::*;
    use LiftKind::{Complete, Vertical};
    let m = base.m();
    let j0c = move |l: &Lifts| -> Result<EndoField> { l.t11(&build_jk(&base)?, Complete, k) };
    vec![
        clause("S01", "structures:J", "J_k^2 = -I, J_k*^2 = -I", Exact, move |_: &Bilinear, _: &Lifts| {
            let up = base.with_order(k);
            ensure!(is_minus_identity(&build_jk(&up)?)?, true, "k = {k}, J_k");
            let s = build_jk_star(&up)?;
            ensure!(s.compose(&s)?.is_minus_identity(), true, "k = {k}, J_k*");
            Ok(Outcome::Holds)
        }),
        clause("S02", "structures:J", "(J_0^{c^k})^2 = -I", Exact, move |_: &Bilinear, l: &Lifts| {
            ensure!(is_minus_identity(&j0c(l)?)?, true, "k = {k}, m = {m}");
            Ok(Outcome::Holds)
        }),
        clause("S03", "structures:J", "J_0^{c^k} = J_k", Exact, move |_: &Bilinear, l: &Lifts| {
            ensure!(j0c(l)?, build_jk(&base.with_order(k))?, "k = {k}, m = {m}");
            Ok(Outcome::Holds)
        }),
        clause("S04", "structures:hermitian", "g^{v^k}(JX, JY) = g^{v^k}(X, Y), J = J_0^{c^k}", Exact, move |g: &Bilinear, l: &Lifts| {
            let gv = l.t02(g, Vertical, k)?;
            ensure!(hermitian_check(&gv, &j0c(l)?)?, true, "g = {g}");
            Ok(Outcome::Holds)
        }),
        clause("S05", "structures:hermitian", "g^{c^k}(JX, JY) = g^{c^k}(X, Y), J = J_0^{c^k}", Exact, move |g: &Bilinear, l: &Lifts| {
            let gc = l.t02(g, Complete, k)?;
            ensure!(hermitian_check(&gc, &j0c(l)?)?, true, "g = {g}");
            Ok(Outcome::Holds)
        }),
        clause("S06", "structures:kaehler", "d Phi^{v^k} = 0", Exact, move |g: &Bilinear, l: &Lifts| {
            let phi = kaehler_form(&l.t02(g, Vertical, k)?, &j0c(l)?)?;
            ensure!(kaehler_closed(&phi)?, true, "g = {g}, Phi = {phi}");
            Ok(Outcome::Holds)
        }),
        clause("S07", "structures:kaehler", "d Phi^{c^k} = 0", Exact, move |g: &Bilinear, l: &Lifts| {
            let phi = kaehler_form(&l.t02(g, Complete, k)?, &j0c(l)?)?;
            ensure!(kaehler_closed(&phi)?, true, "g = {g}, Phi = {phi}");
            Ok(Outcome::Holds)
        }),
    ]
}

fn suite_results(
    suite: SuiteId,
    m: u32,
    k: u32,
    gen: &FieldGen,
    samples: usize,
    lifts: &Lifts,
) -> Result<Vec<ClauseResult>> {
    let timed = ChartSpec::new(m, 0, true)?;
    let plain = ChartSpec::new(m, 0, false)?;
    Ok(match suite {
        SuiteId::Functions => {
            let c = corpus(gen, &timed, k, samples);
            evaluate(function_clauses(timed, k), &c, gen.t_free, lifts)
        }
        SuiteId::Vectors => {
            let c = corpus(gen, &timed, k, samples);
            evaluate(vector_clauses(timed, k), &c, gen.t_free, lifts)
        }
        SuiteId::Oneforms => {
            let c = corpus(gen, &timed, k, samples);
            evaluate(oneform_clauses(timed, k), &c, gen.t_free, lifts)
        }
        SuiteId::Brackets => {
            let c = corpus(&FieldGen { t_free: true, ..*gen }, &plain, k, samples);
            evaluate(bracket_clauses(k), &c, true, lifts)
        }
        SuiteId::Frames => {
            let c = corpus(gen, &timed, k, samples);
            evaluate(frame_clauses(timed, k), &c, gen.t_free, lifts)
        }
        SuiteId::Tensors => {
            let c = tensor_corpus(gen, &plain, samples);
            evaluate(tensor_clauses(k), &c, true, lifts)
        }
        SuiteId::Structures => {
            let mut d = gen.rng();
            let c: Vec<Bilinear> = (0..samples).map(|_| d.hermitian_metric(&plain)).collect();
            evaluate(structure_clauses(plain, k), &c, true, lifts)
        }
        SuiteId::All => {
            let mut out = Vec::new();
            for s in SuiteId::EACH {
                out.extend(suite_results(s, m, k, gen, samples, lifts)?);
            }
            out
        }
    })
}

/// Evaluate every clause of `suite` on `samples` seeded corpora. Failing
/// clauses are report content; only invalid parameters are errors.
pub fn run_suite(suite: SuiteId, m: u32, k: u32, gen: &FieldGen, samples: usize) -> Result<CheckReport> {
    if k == 0 {
        return Err(Error::NeedsPositiveOrder);
    }
    if samples == 0 {
        return Err(Error::Domain("at least one sample is needed".into()));
    }
    let lifts = Lifts::new();
    let results = suite_results(suite, m, k, gen, samples, &lifts)?;
    let corpus = if gen.t_free { "t-free" } else { "t-dependent" };
    Ok(CheckReport {
        header: format!(
            "suite={suite} m={m} k={k} seed={} samples={samples} corpus={corpus}",
            gen.seed
        ),
        results,
    })
}
