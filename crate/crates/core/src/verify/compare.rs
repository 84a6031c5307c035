//! Closed-form lift propositions against the solver's definitional lifts.

use std::fmt;
use std::str::FromStr;

use crate::charts::ChartSpec;
use crate::error::{Error, Result};
use crate::fields::{OneForm, VectorField};
use crate::lifts::{
    of_complete_paper, of_cv_paper, of_lift_solve, of_vertical_closed, vf_complete_paper,
    vf_cv_paper, vf_lift_solve, vf_vertical_closed, LiftKind, SolveOptions,
};
use crate::symkernel::{CoordId, Expr};

use super::gen::FieldGen;

/// Closed-form propositions, numbered by the order they are stated in:
/// `P32x` are vector-field lifts, `P33x` 1-form lifts; `x` = 1 vertical,
/// 2 complete, 3 complete-vertical.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Proposition {
    P321,
    P322,
    P323,
    P331,
    P332,
    P333,
}

impl Proposition {
    pub const ALL: [Proposition; 6] = [
        Proposition::P321,
        Proposition::P322,
        Proposition::P323,
        Proposition::P331,
        Proposition::P332,
        Proposition::P333,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Proposition::P321 => "P321",
            Proposition::P322 => "P322",
            Proposition::P323 => "P323",
            Proposition::P331 => "P331",
            Proposition::P332 => "P332",
            Proposition::P333 => "P333",
        }
    }

    fn on_vectors(&self) -> bool {
        matches!(self, Proposition::P321 | Proposition::P322 | Proposition::P323)
    }

    /// Lift kinds the proposition covers at order `k`.
    fn kinds(&self, k: u32) -> Vec<LiftKind> {
        match self {
            Proposition::P321 | Proposition::P331 => vec![LiftKind::Vertical],
            Proposition::P322 | Proposition::P332 => vec![LiftKind::Complete],
            Proposition::P323 | Proposition::P333 => (0..=k)
                .map(|r| LiftKind::CompleteVertical { r, s: k - r })
                .collect(),
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Proposition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key = s.trim().to_ascii_uppercase().replace('.', "");
        let key = key.strip_prefix('P').unwrap_or(&key);
        Proposition::ALL
            .iter()
            .find(|p| &p.id()[1..] == key)
            .copied()
            .ok_or_else(|| format!("unknown proposition `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareLine {
    pub input: String,
    pub kind: LiftKind,
    /// First differing component, `None` on a match.
    pub mismatch: Option<String>,
}

impl CompareLine {
    pub fn matched(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for CompareLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(f, "MATCH     {:<8} {}", self.kind.to_string(), self.input),
            Some(d) => write!(f, "MISMATCH  {:<8} {} | {d}", self.kind.to_string(), self.input),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub header: String,
    pub lines: Vec<CompareLine>,
}

impl CompareReport {
    pub fn matched(&self) -> bool {
        self.lines.iter().all(CompareLine::matched)
    }

    pub fn first_mismatch(&self) -> Option<&CompareLine> {
        self.lines.iter().find(|l| !l.matched())
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.header)?;
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        let failed = self.lines.iter().filter(|l| !l.matched()).count();
        if failed == 0 {
            writeln!(f, "# verdict: MATCH ({} inputs)", self.lines.len())
        } else {
            writeln!(f, "# verdict: MISMATCH ({failed} of {} inputs)", self.lines.len())
        }
    }
}

fn first_difference(
    chart: &ChartSpec,
    solver: &[Expr],
    paper: &[Expr],
    prefix: &str,
) -> Option<String> {
    let coords: Vec<CoordId> = chart.coordinates();
    coords
        .iter()
        .zip(solver.iter().zip(paper))
        .find(|(_, (a, b))| a != b)
        .map(|(c, (a, b))| format!("{prefix}{c}: solver {a} vs paper {b}"))
}

fn vector_probe(base: &ChartSpec, prop: Proposition) -> Result<VectorField> {
    let z0 = base.holo(0, 1);
    let zb0 = base.anti(0, 1);
    let mut pairs = vec![(z0, Expr::coord(z0))];
    if prop == Proposition::P321 {
        pairs.push((zb0, Expr::coord(zb0)));
        if base.has_time() {
            pairs.push((CoordId::TIME, Expr::one()));
        }
    }
    VectorField::from_pairs(*base, &pairs)
}

fn oneform_probe(base: &ChartSpec) -> Result<OneForm> {
    let z0 = base.holo(0, 1);
    OneForm::from_pairs(*base, &[(z0, Expr::coord(z0))])
}

fn closed_vector(prop: Proposition, z: &VectorField, kind: LiftKind, k: u32) -> Result<VectorField> {
    match (prop, kind) {
        (Proposition::P321, _) => vf_vertical_closed(z, k),
        (Proposition::P322, _) => vf_complete_paper(z, k),
        (_, LiftKind::CompleteVertical { r, s }) => vf_cv_paper(z, r, s),
        _ => unreachable!("kinds() pairs propositions with kinds"),
    }
}

fn closed_oneform(prop: Proposition, w: &OneForm, kind: LiftKind, k: u32) -> Result<OneForm> {
    match (prop, kind) {
        (Proposition::P331, _) => of_vertical_closed(w, k),
        (Proposition::P332, _) => of_complete_paper(w, k),
        (_, LiftKind::CompleteVertical { r, s }) => of_cv_paper(w, r, s),
        _ => unreachable!("kinds() pairs propositions with kinds"),
    }
}

/// Compare the closed form of `prop` with the solver on a fixed probe
/// followed by `samples` random inputs, all on the time chart of dimension
/// `m`. Solver failures are errors; disagreements are report content.
pub fn compare_proposition(
    prop: Proposition,
    m: u32,
    k: u32,
    gen: &FieldGen,
    samples: usize,
) -> Result<CompareReport> {
    if k == 0 {
        return Err(Error::NeedsPositiveOrder);
    }
    let base = ChartSpec::new(m, 0, true)?;
    let target = base.with_order(k);
    let opts = SolveOptions::default();
    let mut d = gen.rng();
    let mut lines = Vec::new();
    if prop.on_vectors() {
        let mut inputs = vec![vector_probe(&base, prop)?];
        inputs.extend((0..samples).map(|_| d.vector(&base, 0)));
        for z in &inputs {
            for kind in prop.kinds(k) {
                let solver = vf_lift_solve(z, kind, k, &opts)?.value;
                let paper = closed_vector(prop, z, kind, k)?;
                lines.push(CompareLine {
                    input: format!("Z = {z}"),
                    kind,
                    mismatch: first_difference(&target, solver.components(), paper.components(), "d/d"),
                });
            }
        }
    } else {
        let mut inputs = vec![oneform_probe(&base)?];
        inputs.extend((0..samples).map(|_| d.oneform(&base)));
        for w in &inputs {
            for kind in prop.kinds(k) {
                let solver = of_lift_solve(w, kind, k, &opts)?.value;
                let paper = closed_oneform(prop, w, kind, k)?;
                lines.push(CompareLine {
                    input: format!("w = {w}"),
                    kind,
                    mismatch: first_difference(&target, solver.components(), paper.components(), "d"),
                });
            }
        }
    }
    Ok(CompareReport {
        header: format!(
            "proposition={prop} m={m} k={k} seed={} samples={samples}",
            gen.seed
        ),
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ids() {
        assert_eq!("P322".parse::<Proposition>(), Ok(Proposition::P322));
        assert_eq!("3.3.1".parse::<Proposition>(), Ok(Proposition::P331));
        assert!("P324".parse::<Proposition>().is_err());
    }

    #[test]
    fn vertical_propositions_match() {
        let gen = FieldGen::new(7);
        assert!(compare_proposition(Proposition::P321, 1, 2, &gen, 2).unwrap().matched());
        assert!(compare_proposition(Proposition::P331, 1, 2, &gen, 2).unwrap().matched());
    }

    #[test]
    fn complete_vector_proposition_mismatch() {
        let report = compare_proposition(Proposition::P322, 1, 2, &FieldGen::new(7), 0).unwrap();
        let line = report.first_mismatch().unwrap();
        assert_eq!(line.input, "Z = d/dz0_1 -> z0_1");
        assert_eq!(line.mismatch.as_deref(), Some("d/dz1_1: solver z1_1 vs paper 2*z1_1"));
        assert!(report.to_string().ends_with("# verdict: MISMATCH (1 of 1 inputs)\n"));
    }

    #[test]
    fn k_zero_rejected() {
        let r = compare_proposition(Proposition::P321, 1, 0, &FieldGen::new(1), 1);
        assert_eq!(r.unwrap_err(), Error::NeedsPositiveOrder);
    }
}
