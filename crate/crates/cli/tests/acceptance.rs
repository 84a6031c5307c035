//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines show up in plain `cargo test` output.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use extlift::charts::ChartSpec;
use extlift::fields::{endo_apply, pair, Bilinear, ConnectionCoeffs, EndoField, OneForm, ScalarField, VectorField};
use extlift::lifts::functions::complete_expr;
use extlift::lifts::{
    fn_horizontal, of_complete_paper, of_lift_solve, t02_lift_solve, t11_lift_solve, vf_horizontal, vf_lift_solve,
    LiftKind, SolveOptions,
};
use extlift::structures::{build_jk, build_jk_star, hermitian_check, is_minus_identity, kaehler_closed, kaehler_form, HermitianPackage};
use extlift::symkernel::{binomial, parse, Atom, CoordId, Expr, GaussianRational, Monomial, UnknownId};
use extlift::verify::{compare_proposition, run_suite, FieldGen, Proposition, Status, SuiteId};

type Outcome = Result<String, String>;

fn chart(m: u32, k: u32, time: bool) -> ChartSpec {
    ChartSpec::new(m, k, time).expect("valid chart")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `D^k f` via `k! [ε^k] f(Σ_l z_l ε^l / l!)`, where `D` raises every
/// coordinate one level.
fn complete_oracle(f: &Expr, base: &ChartSpec, k: u32) -> Expr {
    let eps = Expr::unknown(UnknownId(0));
    let mut bindings = BTreeMap::new();
    for x in base.coordinates().into_iter().filter(|c| !c.is_time()) {
        let mut series = Expr::zero();
        let mut power = Expr::one();
        let mut fact = 1i64;
        for l in 0..=k {
            if l > 0 {
                power = &power * &eps;
                fact *= l as i64;
            }
            let term = &Expr::coord(x.at_level(l)) * &power;
            series = series + term.scale(&GaussianRational::from_ratio(1, fact));
        }
        bindings.insert(x, series);
    }
    let expanded = f.substitute(&bindings);
    let mut out = Expr::zero();
    let kfact: i64 = (1..=k as i64).product();
    for (mono, c) in expanded.terms() {
        if mono.exponent(Atom::Unknown(UnknownId(0))) == k {
            let rest = Monomial::from_factors(mono.factors().iter().copied().filter(|(a, _)| !matches!(a, Atom::Unknown(_))));
            out = out + Expr::term(c.clone(), rest);
        }
    }
    out.scale(&GaussianRational::from_int(kfact))
}

fn c1_leibniz() -> Outcome {
    let mut n = 0;
    for m in 1..=2 {
        let base = chart(m, 0, false);
        let mut d = FieldGen::new(100 + m as u64).rng();
        for _ in 0..25 {
            let (f, g) = (d.poly(&base), d.poly(&base));
            for k in 1..=3 {
                let lhs = complete_expr(&(&f * &g), k);
                let oracle = complete_oracle(&(&f * &g), &base, k);
                check(lhs == oracle, || format!("oracle disagrees at f.g = {}, k = {k}", &f * &g))?;
                let mut rhs = Expr::zero();
                for j in 0..=k {
                    let c = Expr::int(binomial(k, j).unwrap() as i64);
                    rhs = rhs + &c * &(&complete_expr(&f, k - j) * &complete_expr(&g, j));
                }
                check(lhs == rhs, || format!("f = {f}, g = {g}, k = {k}: {lhs} vs {rhs}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (pair, k) cases, m in {{1,2}}, k <= 3"))
}

fn c2_horizontal_functions() -> Outcome {
    let mut n = 0;
    for m in 1..=2 {
        let base = chart(m, 0, true);
        let mut d = FieldGen::new(200 + m as u64).rng();
        for _ in 0..25 {
            let f = ScalarField::new(base, d.poly(&base)).unwrap();
            for k in 1..=2 {
                let h = fn_horizontal(&f, k).map_err(|e| e.to_string())?;
                check(h.value().is_zero(), || format!("f = {}: f^H = {}", f.value(), h.value()))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} cases, k in {{1,2}}"))
}

fn c3_basis_tables() -> Outcome {
    let opts = SolveOptions::default();
    let mut n = 0;
    for m in 1..=2 {
        let base = chart(m, 0, true);
        for r in 1..=3 {
            let up = base.with_order(r);
            for x in base.coordinates().into_iter().filter(|c| !c.is_time()) {
                let e = VectorField::basis(base, x).unwrap();
                let v = vf_lift_solve(&e, LiftKind::Vertical, r, &opts).unwrap().value;
                check(v == VectorField::basis(up, x.at_level(r)).unwrap(), || format!("(d/d{x})^v^{r} = {v}"))?;
                let c = vf_lift_solve(&e, LiftKind::Complete, r, &opts).unwrap().value;
                check(c == VectorField::basis(up, x).unwrap(), || format!("(d/d{x})^c^{r} = {c}"))?;
                let w = OneForm::basis(base, x).unwrap();
                let wc = of_lift_solve(&w, LiftKind::Complete, r, &opts).unwrap().value;
                check(wc == OneForm::basis(up, x.at_level(r)).unwrap(), || format!("(d{x})^c^{r} = {wc}"))?;
                let wv = of_lift_solve(&w, LiftKind::Vertical, r, &opts).unwrap().value;
                check(wv == OneForm::basis(up, x).unwrap(), || format!("(d{x})^v^{r} = {wv}"))?;
                n += 4;
            }
            // No dt lift satisfies the defining equations; the printed table
            // entry is the closed form.
            let dt = OneForm::basis(base, CoordId::TIME).unwrap();
            check(of_lift_solve(&dt, LiftKind::Complete, r, &opts).is_err(), || "dt has a definitional lift".into())?;
            let printed = of_complete_paper(&dt, r).unwrap();
            check(printed == OneForm::basis(up, CoordId::TIME).unwrap(), || format!("(dt)^c^{r} = {printed}"))?;
            let mut d = FieldGen::new(300 + r as u64).rng();
            let gamma: ConnectionCoeffs = d.connection(&up);
            let h = vf_horizontal(&VectorField::basis(base, CoordId::TIME).unwrap(), &gamma).unwrap();
            check(h == VectorField::basis(up, CoordId::TIME).unwrap(), || format!("(d/dt)^H^{r} = {h}"))?;
            n += 2;
        }
    }
    Ok(format!("{n} table entries, r <= 3, m <= 2 (dt^c from the printed form)"))
}

fn c4_vertical_propositions() -> Outcome {
    let mut n = 0;
    for prop in [Proposition::P321, Proposition::P331] {
        for m in 1..=2 {
            for k in 1..=3 {
                let samples = if m == 2 && k == 3 { 1 } else { 3 };
                let report = compare_proposition(prop, m, k, &FieldGen::new(400 + k as u64), samples)
                    .map_err(|e| e.to_string())?;
                check(report.matched(), || format!("{prop} m={m} k={k}: {}", report.first_mismatch().unwrap()))?;
                n += report.lines.len();
            }
        }
    }
    Ok(format!("{n} componentwise MATCH lines for P321 and P331"))
}

fn c5_complete_mismatch() -> Outcome {
    let report = compare_proposition(Proposition::P322, 1, 2, &FieldGen::new(1), 0).map_err(|e| e.to_string())?;
    let line = report.first_mismatch().ok_or("no mismatch reported")?;
    check(line.input == "Z = d/dz0_1 -> z0_1", || line.input.clone())?;
    let witness = line.mismatch.clone().unwrap_or_default();
    check(witness == "d/dz1_1: solver z1_1 vs paper 2*z1_1", || witness.clone())?;
    Ok(format!("MISMATCH, {witness}"))
}

fn c6_brackets() -> Outcome {
    for m in 1..=2 {
        for k in 1..=2 {
            let report = run_suite(SuiteId::Brackets, m, k, &FieldGen::new(600), 10).map_err(|e| e.to_string())?;
            for r in &report.results {
                check(r.status == Status::Pass, || format!("m={m} k={k}: {r}"))?;
            }
        }
    }
    Ok("B01-B04 pass on 10 pairs for each k <= 2, m <= 2".into())
}

fn c7_structures() -> Outcome {
    let opts = SolveOptions::default();
    for m in 1..=2 {
        for k in 0..=3 {
            let c = chart(m, k, false);
            check(is_minus_identity(&build_jk(&c).unwrap()).unwrap(), || format!("J_{k}^2, m={m}"))?;
            let s = build_jk_star(&c).unwrap();
            check(s.compose(&s).unwrap().is_minus_identity(), || format!("J_{k}*^2, m={m}"))?;
        }
        for k in 1..=2 {
            let j = t11_lift_solve(&build_jk(&chart(m, 0, false)).unwrap(), LiftKind::Complete, k, &opts)
                .map_err(|e| e.to_string())?
                .value;
            check(is_minus_identity(&j).unwrap(), || format!("(J_0^c^{k})^2, m={m}"))?;
        }
    }
    Ok("J_k^2 = J_k*^2 = -I for k <= 3; (J_0^{c^k})^2 = -I for k <= 2".into())
}

fn c8_kaehler() -> Outcome {
    let opts = SolveOptions::default();
    for m in 1..=2 {
        let flat = HermitianPackage::flat(m).unwrap();
        for k in 1..=2 {
            let j = t11_lift_solve(flat.structure(), LiftKind::Complete, k, &opts).map_err(|e| e.to_string())?.value;
            for kind in [LiftKind::Vertical, LiftKind::Complete] {
                let g = t02_lift_solve(flat.metric(), kind, k, &opts).map_err(|e| e.to_string())?.value;
                check(hermitian_check(&g, &j).unwrap(), || format!("g^{kind} not Hermitian, m={m} k={k}"))?;
                let phi = kaehler_form(&g, &j).map_err(|e| e.to_string())?;
                check(kaehler_closed(&phi).unwrap(), || format!("dPhi != 0 for {kind}, m={m} k={k}"))?;
            }
        }
    }
    Ok("g^{v^k}, g^{c^k} Hermitian with closed Kaehler forms, m <= 2, k <= 2".into())
}

/// Degree-3 test objects, outside every solving family used above.
fn holdout_functions(base: &ChartSpec) -> Vec<Expr> {
    let z = Expr::holo(0, 1);
    let zb = Expr::anti(0, 1);
    let mut out = vec![&(&z * &z) * &z, &(&z * &z) * &zb, &(&z * &zb) * &zb];
    if base.m() >= 2 {
        out.push(&(&z * &Expr::holo(0, 2)) * &Expr::anti(0, 2));
    }
    out
}

fn holdout_vectors(base: &ChartSpec) -> Vec<VectorField> {
    let mut out = Vec::new();
    for f in holdout_functions(base) {
        for x in base.coordinates().into_iter().filter(|c| !c.is_time()) {
            out.push(VectorField::basis(*base, x).unwrap().scale(&f));
        }
    }
    out
}

fn c9_certificates() -> Outcome {
    let opts = SolveOptions::default();
    let mut n = 0;
    // Criterion 4 lifts on their own defining equations.
    for m in 1..=2 {
        let base = chart(m, 0, true);
        let mut d = FieldGen::new(900 + m as u64).rng();
        for k in 1..=2 {
            for _ in 0..2 {
                let z = d.vector(&base, 0);
                for kind in [LiftKind::Vertical, LiftKind::Complete] {
                    let solved = vf_lift_solve(&z, kind, k, &opts).map_err(|e| e.to_string())?;
                    check(!solved.certificate.holdout.is_empty(), || "empty holdout".into())?;
                    for f in holdout_functions(&base) {
                        let lhs = solved.value.act(&complete_expr(&f, k));
                        let zf = z.act(&f);
                        let rhs = if kind == LiftKind::Vertical { zf } else { complete_expr(&zf, k) };
                        check(lhs == rhs, || format!("Z = {z}, {kind}, f = {f}"))?;
                        n += 1;
                    }
                }
                let w = d.oneform(&base);
                for kind in [LiftKind::Vertical, LiftKind::Complete] {
                    let solved = of_lift_solve(&w, kind, k, &opts).map_err(|e| e.to_string())?;
                    check(!solved.certificate.holdout.is_empty(), || "empty holdout".into())?;
                    for x in holdout_vectors(&base) {
                        let xc = vf_lift_solve(&x, LiftKind::Complete, k, &opts).map_err(|e| e.to_string())?.value;
                        let lhs = pair(&solved.value, &xc).unwrap().into_value();
                        let wx = pair(&w, &x).unwrap().into_value();
                        let rhs = if kind == LiftKind::Vertical { wx } else { complete_expr(&wx, k) };
                        check(lhs == rhs, || format!("w = {w}, {kind}, X = {x}"))?;
                        n += 1;
                    }
                }
            }
        }
    }
    // Criterion 7 and 8 lifts.
    for m in 1..=2 {
        let base = chart(m, 0, false);
        let flat = HermitianPackage::flat(m).unwrap();
        for k in 1..=2 {
            let j: EndoField = t11_lift_solve(flat.structure(), LiftKind::Complete, k, &opts).map_err(|e| e.to_string())?.value;
            let xs = holdout_vectors(&base);
            for x in &xs {
                let xc = vf_lift_solve(x, LiftKind::Complete, k, &opts).map_err(|e| e.to_string())?.value;
                let jx = vf_lift_solve(&endo_apply(flat.structure(), x).unwrap(), LiftKind::Complete, k, &opts)
                    .map_err(|e| e.to_string())?
                    .value;
                check(endo_apply(&j, &xc).unwrap() == jx, || format!("J^c, X = {x}"))?;
                n += 1;
            }
            for kind in [LiftKind::Vertical, LiftKind::Complete] {
                let g: Bilinear = t02_lift_solve(flat.metric(), kind, k, &opts).map_err(|e| e.to_string())?.value;
                for (x, y) in xs.iter().zip(xs.iter().rev()) {
                    let xc = vf_lift_solve(x, LiftKind::Complete, k, &opts).map_err(|e| e.to_string())?.value;
                    let yc = vf_lift_solve(y, LiftKind::Complete, k, &opts).map_err(|e| e.to_string())?.value;
                    let gxy = flat.metric().eval(x, y).unwrap();
                    let rhs = if kind == LiftKind::Vertical { gxy } else { complete_expr(&gxy, k) };
                    check(g.eval(&xc, &yc).unwrap() == rhs, || format!("g^{kind}, X = {x}, Y = {y}"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} degree-3 holdout residuals vanish"))
}

fn c10_kernel() -> Outcome {
    let base = chart(2, 0, true);
    let mut d = FieldGen::new(1000).with_time().rng();
    let coords = base.coordinates();
    for n in 0..1000 {
        let (a, b, c) = (d.poly(&base), d.poly(&base), d.poly(&base));
        let ring = &a + &b == &b + &a
            && &a * &b == &b * &a
            && &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a - &a == Expr::zero()
            && &a * &Expr::one() == a;
        check(ring, || format!("ring axioms, triple {n}: {a} | {b} | {c}"))?;
        let x = coords[d.below(coords.len())];
        let y = coords[d.below(coords.len())];
        check(a.diff(x).diff(y) == a.diff(y).diff(x), || format!("mixed partials of {a}"))?;
        check((&a * &b).diff(x) == &a.diff(x) * &b + &a * &b.diff(x), || format!("Leibniz on {a}, {b}"))?;
        check(a.conjugate().unwrap().conjugate().unwrap() == a, || format!("conjugation of {a}"))?;
        check(parse(&a.to_string()).ok().as_ref() == Some(&a), || format!("round trip of {a}"))?;
    }
    Ok("1000 triples: ring axioms, mixed partials, Leibniz, conjugation, parse(format)".into())
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_extlift"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .map_err(|e| e.to_string())?;
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn c11_determinism() -> Outcome {
    let cases: [(&str, &[&str]); 3] = [
        ("check_functions", &["check", "functions", "-m", "1", "-k", "2", "--seed", "7", "--samples", "25"]),
        ("check_functions_time", &["check", "functions", "-m", "1", "-k", "1", "--seed", "7", "--with-time"]),
        ("compare_p322", &["compare", "P322", "-m", "1", "-k", "2", "--samples", "2"]),
    ];
    for (golden, args) in cases {
        let first = run_cli(args)?;
        let second = run_cli(args)?;
        check(first == second, || format!("{golden}: runs differ"))?;
        let path = format!("{}/tests/golden/{golden}.txt", env!("CARGO_MANIFEST_DIR"));
        let expected = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
        check(first == expected, || format!("{golden}: differs from golden file"))?;
    }
    Ok("check and compare reports byte-identical across runs and to golden files".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Leibniz-binomial identity for complete lifts", c1_leibniz),
        ("horizontal lifts of t-free functions vanish", c2_horizontal_functions),
        ("basis lift tables", c3_basis_tables),
        ("solver matches closed-form vertical lifts", c4_vertical_propositions),
        ("complete vector lift comparator verdict", c5_complete_mismatch),
        ("bracket identities", c6_brackets),
        ("almost complex structures square to -I", c7_structures),
        ("flat Kaehler package lifts", c8_kaehler),
        ("solver certificates hold on holdout objects", c9_certificates),
        ("kernel properties", c10_kernel),
        ("report determinism", c11_determinism),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", n + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
