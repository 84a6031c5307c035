//! Extension charts `^kM` (time-free) and `^kN = R × ^kM` (with time).

use std::fmt;

use crate::error::{Error, Result};
use crate::symkernel::{CoordId, CoordKind, Expr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChartSpec {
    m: u32,
    k: u32,
    has_time: bool,
}

impl ChartSpec {
    pub fn new(m: u32, k: u32, has_time: bool) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { m, k, has_time })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn has_time(&self) -> bool {
        self.has_time
    }

    pub fn dim(&self) -> usize {
        (2 * self.m * (self.k + 1)) as usize + usize::from(self.has_time)
    }

    /// The same base at order `k`.
    pub fn with_order(&self, k: u32) -> Self {
        Self { k, ..*self }
    }

    pub fn base(&self) -> Self {
        self.with_order(0)
    }

    /// t first, then holo by (level, index), then anti by (level, index).
    pub fn coordinates(&self) -> Vec<CoordId> {
        let mut out = Vec::with_capacity(self.dim());
        if self.has_time {
            out.push(CoordId::TIME);
        }
        for kind in [CoordKind::Holo, CoordKind::Anti] {
            for r in 0..=self.k {
                for i in 1..=self.m {
                    out.push(CoordId::raw(kind, r, i));
                }
            }
        }
        out
    }

    pub fn contains(&self, c: CoordId) -> bool {
        match c.kind() {
            CoordKind::Time => self.has_time,
            _ => c.level() <= self.k && c.index() >= 1 && c.index() <= self.m,
        }
    }

    /// Position of `c` in [`coordinates`](Self::coordinates).
    pub fn position(&self, c: CoordId) -> Option<usize> {
        if !self.contains(c) {
            return None;
        }
        let t = usize::from(self.has_time);
        let per_kind = (self.m * (self.k + 1)) as usize;
        if c.is_time() {
            return Some(0);
        }
        let within = (c.level() * self.m + c.index() - 1) as usize;
        if c.kind() == CoordKind::Holo {
            Some(t + within)
        } else {
            Some(t + per_kind + within)
        }
    }

    pub fn holo(&self, level: u32, index: u32) -> CoordId {
        CoordId::raw(CoordKind::Holo, level, index)
    }

    pub fn anti(&self, level: u32, index: u32) -> CoordId {
        CoordId::raw(CoordKind::Anti, level, index)
    }

    /// The chart of `τ: ^kN → ^{k-1}N`.
    pub fn project(&self) -> Result<Self> {
        if self.k == 0 {
            return Err(Error::NoProjection);
        }
        Ok(self.with_order(self.k - 1))
    }

    pub fn in_chart(&self, e: &Expr) -> bool {
        e.coords().into_iter().all(|c| self.contains(c))
    }

    pub(crate) fn check(&self, e: &Expr) -> Result<()> {
        match e.coords().into_iter().find(|c| !self.contains(*c)) {
            Some(c) => Err(Error::NotInChart {
                coord: c.to_string(),
                chart: self.to_string(),
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for ChartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(m={},k={},{})",
            self.m,
            self.k,
            if self.has_time { "time" } else { "no time" }
        )
    }
}

/// The identification `ż^{ri} = z^{(r+1)i}` on `target`.
pub fn dot(x: CoordId, target: &ChartSpec) -> Result<CoordId> {
    if x.is_time() || x.level() >= target.k() || !target.contains(x) {
        return Err(Error::NoDot(x));
    }
    Ok(x.at_level(x.level() + 1))
}
