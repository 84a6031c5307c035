//! Command bodies. Each returns the text for stdout and an exit status;
//! errors carry their own status.

use std::fmt;

use extlift::charts::ChartSpec;
use extlift::fields::{ConnectionCoeffs, OneForm, VectorField};
use extlift::lifts::{
    adapted_frame, fn_complete, fn_complete_vertical, fn_horizontal, fn_vertical, of_complete_paper,
    of_cv_paper, of_horizontal, of_lift_solve, of_vertical_closed, t02_lift_solve, t11_lift_solve_with,
    vf_complete_paper, vf_cv_paper, vf_horizontal, vf_lift_solve, vf_vertical_closed, EndoRhs, LiftKind,
    SolveOptions,
};
use extlift::symkernel::{CoordId, KernelError};
use extlift::verify::{compare_proposition, run_suite, FieldGen, Proposition, SuiteId};
use extlift::Error;

use crate::manifest::{parse_manifest, Manifest, ManifestError, Object};
use crate::render;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Solver(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Solver(m) => write!(f, "solver error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match &e {
            Error::Kernel(KernelError::Parse { .. } | KernelError::OutOfChart { .. }) => {
                CliError::Parse(e.to_string())
            }
            Error::Solver { .. } | Error::Holdout { .. } => CliError::Solver(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ManifestError> for CliError {
    fn from(e: ManifestError) -> Self {
        CliError::Parse(e.to_string())
    }
}

pub struct Output {
    pub stdout: String,
    /// Warning for stderr; does not change the exit status.
    pub warning: Option<String>,
    pub status: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            warning: None,
            status: 0,
        }
    }
}

pub fn load_manifest(path: &str) -> Result<Manifest, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    parse_manifest(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    V,
    C,
    Cv,
    H,
}

pub struct LiftRequest<'a> {
    pub name: &'a str,
    pub kind: KindArg,
    pub k: Option<u32>,
    pub r: Option<u32>,
    pub s: Option<u32>,
    pub paper_literal: bool,
    pub certificate: bool,
}

fn resolve_kind(req: &LiftRequest) -> Result<(LiftKind, u32), CliError> {
    let need_k = || req.k.ok_or_else(|| CliError::Usage("--k is required".into()));
    let k = match req.kind {
        KindArg::V => (LiftKind::Vertical, need_k()?),
        KindArg::C => (LiftKind::Complete, need_k()?),
        KindArg::H => (LiftKind::Horizontal, need_k()?),
        KindArg::Cv => {
            let (r, s) = match (req.r, req.s, req.k) {
                (Some(r), Some(s), _) => (r, s),
                (Some(r), None, Some(k)) if r <= k => (r, k - r),
                (None, Some(s), Some(k)) if s <= k => (k - s, s),
                _ => return Err(CliError::Usage("cv lifts need --r and --s (or one of them with --k)".into())),
            };
            if let Some(k) = req.k {
                if r + s != k {
                    return Err(CliError::Usage(format!("--r {r} --s {s} does not add up to --k {k}")));
                }
            }
            (LiftKind::CompleteVertical { r, s }, r + s)
        }
    };
    if k.1 == 0 {
        return Err(CliError::Usage("lift order must be at least 1".into()));
    }
    Ok(k)
}

fn connection(manifest: &Manifest, k: u32) -> Result<ConnectionCoeffs, CliError> {
    manifest
        .connection(k)?
        .ok_or_else(|| CliError::Usage("horizontal lifts need a `connection` block in the manifest".into()))
}

pub fn cmd_lift(manifest: &Manifest, req: &LiftRequest) -> Result<Output, CliError> {
    let obj = manifest
        .get(req.name)
        .ok_or_else(|| CliError::Usage(format!("no object named `{}` in the manifest", req.name)))?;
    let (kind, k) = resolve_kind(req)?;
    let title = format!("{}^{{{}}}", req.name, kind.superscript(k));
    let opts = SolveOptions::default();
    let literal = req.paper_literal;
    let mut notes = Vec::new();
    let body = match obj {
        Object::Scalar(f) => {
            let value = match kind {
                LiftKind::Vertical => fn_vertical(f, k),
                LiftKind::Complete => fn_complete(f, k),
                LiftKind::CompleteVertical { r, s } => fn_complete_vertical(f, r, s),
                LiftKind::Horizontal => fn_horizontal(f, k)?,
            };
            format!("{title} = {}\n", value.value())
        }
        Object::Vector(z) => {
            let value = match (kind, literal) {
                (LiftKind::Horizontal, _) => vf_horizontal(z, &connection(manifest, k)?)?,
                (LiftKind::Vertical, true) => vf_vertical_closed(z, k)?,
                (LiftKind::Complete, true) => vf_complete_paper(z, k)?,
                (LiftKind::CompleteVertical { r, s }, true) => vf_cv_paper(z, r, s)?,
                _ => {
                    let solved = vf_lift_solve(z, kind, k, &opts)?;
                    notes.push(format!("certificate: {}", solved.certificate));
                    solved.value
                }
            };
            render::vector_block(&title, &value)
        }
        Object::OneForm(w) => {
            let value = match (kind, literal) {
                (LiftKind::Horizontal, _) => of_horizontal(w, &connection(manifest, k)?)?,
                (LiftKind::Vertical, true) => of_vertical_closed(w, k)?,
                (LiftKind::Complete, true) => of_complete_paper(w, k)?,
                (LiftKind::CompleteVertical { r, s }, true) => of_cv_paper(w, r, s)?,
                _ => {
                    let solved = of_lift_solve(w, kind, k, &opts)?;
                    notes.push(format!("certificate: {}", solved.certificate));
                    solved.value
                }
            };
            render::oneform_block(&title, &value)
        }
        Object::Endo(phi) => {
            let rhs = if literal { EndoRhs::PaperLiteral } else { EndoRhs::Complete };
            let lift = t11_lift_solve_with(phi, kind, k, &opts, rhs)?;
            notes.push(format!("certificate: {}", lift.certificate));
            notes.push(format!("1-form clause: {}", lift.oneform_clause));
            render::endo_block(&title, &lift.value)
        }
        Object::Bilinear(g) => {
            if literal {
                return Err(CliError::Usage("bilinear lifts have no closed form; drop --paper-literal".into()));
            }
            let solved = t02_lift_solve(g, kind, k, &opts)?;
            notes.push(format!("certificate: {}", solved.certificate));
            render::bilinear_block(&title, &solved.value)
        }
    };
    let mut out = body;
    if req.certificate {
        for n in notes {
            out.push_str(&format!("# {n}\n"));
        }
    }
    Ok(Output::ok(out))
}

pub struct CheckRequest {
    pub suite: String,
    pub m: u32,
    pub k: u32,
    pub seed: u64,
    pub samples: usize,
    pub with_time: bool,
}

pub fn cmd_check(req: &CheckRequest) -> Result<Output, CliError> {
    let suite: SuiteId = req.suite.parse().map_err(CliError::Usage)?;
    let mut gen = FieldGen::new(req.seed);
    if req.with_time {
        gen = gen.with_time();
    }
    let report = run_suite(suite, req.m, req.k, &gen, req.samples)?;
    let conflicts = report.results.iter().filter(|r| r.status == extlift::verify::Status::Conflict).count();
    Ok(Output {
        stdout: report.render(),
        warning: (conflicts > 0).then(|| {
            format!("warning: {conflicts} clause(s) conflict with their printed statements (documented, not failures)")
        }),
        status: if report.has_failures() { 1 } else { 0 },
    })
}

pub fn cmd_compare(prop: &str, m: u32, k: u32, seed: u64, samples: usize) -> Result<Output, CliError> {
    let prop: Proposition = prop.parse().map_err(CliError::Usage)?;
    if k > 3 {
        return Err(CliError::Usage("compare supports k <= 3".into()));
    }
    let report = compare_proposition(prop, m, k, &FieldGen::new(seed), samples)?;
    Ok(Output::ok(report.to_string()))
}

pub fn cmd_frame(manifest: &Manifest, k: u32) -> Result<Output, CliError> {
    if k == 0 {
        return Err(CliError::Usage("frames need k >= 1".into()));
    }
    let gamma = connection(manifest, k)?;
    let f = adapted_frame(&gamma)?;
    let mut out = format!("# adapted frame m={} k={k}\n", manifest.base.m());
    let v = |z: &VectorField| render::vector_combination(z);
    let w = |x: &OneForm| render::oneform_combination(x);
    for r in 0..k as usize {
        for i in 0..manifest.base.m() as usize {
            let ix = format!("{r},{}", i + 1);
            out.push_str(&format!("D_{{{ix}}} = {}\n", v(&f.d[r][i])));
            out.push_str(&format!("Db_{{{ix}}} = {}\n", v(&f.dbar[r][i])));
            out.push_str(&format!("V_{{{ix}}} = {}\n", v(&f.v[r][i])));
            out.push_str(&format!("Vb_{{{ix}}} = {}\n", v(&f.vbar[r][i])));
            out.push_str(&format!("theta^{{{ix}}} = {}\n", w(&f.theta[r][i])));
            out.push_str(&format!("thetab^{{{ix}}} = {}\n", w(&f.thetabar[r][i])));
            out.push_str(&format!("eta^{{{ix}}} = {}\n", w(&f.eta[r][i])));
            out.push_str(&format!("etab^{{{ix}}} = {}\n", w(&f.etabar[r][i])));
        }
    }
    Ok(Output::ok(out))
}

/// Lift tables of the coordinate (co)bases, computed from the defining
/// equations. Entries with no definitional lift show the printed value and
/// say so.
pub fn cmd_table(m: u32, k: u32, product: bool) -> Result<Output, CliError> {
    if k == 0 {
        return Err(CliError::Usage("tables need k >= 1".into()));
    }
    let base = ChartSpec::new(m, 0, product)?;
    let opts = SolveOptions::default();
    let mut out = format!(
        "# lift tables m={m} k={k} chart={}\n",
        if product { "product" } else { "time-free" }
    );
    let coords = base.coordinates();
    for kind in [LiftKind::Vertical, LiftKind::Complete] {
        for &x in &coords {
            let up = vf_lift_solve(&VectorField::basis(base, x)?, kind, k, &opts)?.value;
            out.push_str(&format!(
                "(d/d{x})^{{{}}} = {}\n",
                kind.superscript(k),
                render::vector_combination(&up)
            ));
        }
    }
    if product {
        let dt = VectorField::basis(base, CoordId::TIME)?;
        let h = vf_horizontal(&dt, &ConnectionCoeffs::zero(base.with_order(k)))?;
        out.push_str(&format!("(d/dt)^{{H^{k}}} = {}\n", render::vector_combination(&h)));
    }
    for kind in [LiftKind::Vertical, LiftKind::Complete] {
        for &x in &coords {
            let e = OneForm::basis(base, x)?;
            let line = match of_lift_solve(&e, kind, k, &opts) {
                Ok(up) => render::oneform_combination(&up.value),
                Err(Error::Domain(_)) => format!(
                    "{}  # printed value; the defining equations admit no lift of dt",
                    render::oneform_combination(&of_complete_paper(&e, k)?)
                ),
                Err(e) => return Err(e.into()),
            };
            out.push_str(&format!("(d{x})^{{{}}} = {line}\n", kind.superscript(k)));
        }
    }
    Ok(Output::ok(out))
}
