//! Canonical sparse polynomials over Gaussian rationals.
//!
//! An [`Expr`] is a map from [`Monomial`] to nonzero coefficient. Monomials
//! are products of [`Atom`]s: chart coordinates (`t`, `z{r}_{i}`,
//! `zb{r}_{i}`) and solver unknowns. Because zero coefficients are never
//! stored and monomials are kept sorted, two expressions are equal as
//! polynomials exactly when their term maps are equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::gaussian::GaussianRational;
use super::KernelError;

/// Which family a coordinate belongs to. Declaration order is the canonical
/// atom order: time, then holomorphic, then antiholomorphic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoordKind {
    Time,
    Holo,
    Anti,
}

/// A chart coordinate: `t`, `z^{ri}` or `z̄^{ri}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordId {
    kind: CoordKind,
    level: u32,
    index: u32,
}

impl CoordId {
    pub const TIME: CoordId = CoordId {
        kind: CoordKind::Time,
        level: 0,
        index: 0,
    };

    /// `z^{level, index}`; `index` is 1-based.
    pub fn holo(level: u32, index: u32) -> Result<Self, KernelError> {
        Self::new(CoordKind::Holo, level, index)
    }

    /// `z̄^{level, index}`; `index` is 1-based.
    pub fn anti(level: u32, index: u32) -> Result<Self, KernelError> {
        Self::new(CoordKind::Anti, level, index)
    }

    pub fn new(kind: CoordKind, level: u32, index: u32) -> Result<Self, KernelError> {
        match kind {
            CoordKind::Time => Ok(Self::TIME),
            _ if index == 0 => Err(KernelError::ZeroIndex),
            _ => Ok(CoordId { kind, level, index }),
        }
    }

    /// Unchecked constructor for call sites that already know `index >= 1`.
    pub(crate) fn raw(kind: CoordKind, level: u32, index: u32) -> Self {
        debug_assert!(kind == CoordKind::Time || index >= 1);
        if kind == CoordKind::Time {
            Self::TIME
        } else {
            CoordId { kind, level, index }
        }
    }

    pub fn kind(&self) -> CoordKind {
        self.kind
    }
    pub fn level(&self) -> u32 {
        self.level
    }
    pub fn index(&self) -> u32 {
        self.index
    }
    pub fn is_time(&self) -> bool {
        self.kind == CoordKind::Time
    }

    /// Holomorphic ↔ antiholomorphic; `t` is fixed.
    pub fn conjugate(&self) -> Self {
        let kind = match self.kind {
            CoordKind::Time => CoordKind::Time,
            CoordKind::Holo => CoordKind::Anti,
            CoordKind::Anti => CoordKind::Holo,
        };
        CoordId { kind, ..*self }
    }

    /// Same kind and index at another level.
    pub fn at_level(&self, level: u32) -> Self {
        if self.is_time() {
            *self
        } else {
            CoordId { level, ..*self }
        }
    }
}

impl fmt::Display for CoordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CoordKind::Time => write!(f, "t"),
            CoordKind::Holo => write!(f, "z{}_{}", self.level, self.index),
            CoordKind::Anti => write!(f, "zb{}_{}", self.level, self.index),
        }
    }
}

/// Opaque solver unknown. Lives in its own namespace, after every coordinate
/// in the atom order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnknownId(pub u32);

impl fmt::Display for UnknownId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Coord(CoordId),
    Unknown(UnknownId),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Coord(c) => c.fmt(f),
            Atom::Unknown(u) => u.fmt(f),
        }
    }
}

/// Product of atoms with positive exponents, sorted by atom.
///
/// The `Ord` impl is the print order: higher total degree first, then
/// lexicographic with larger exponents on earlier atoms first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Atom, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(a: Atom) -> Self {
        Monomial(vec![(a, 1)])
    }

    /// Build from arbitrary (possibly repeated, unsorted) factors.
    pub fn from_factors<I: IntoIterator<Item = (Atom, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<Atom, u32> = BTreeMap::new();
        for (a, e) in factors {
            if e > 0 {
                *map.entry(a).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, a: Atom) -> u32 {
        self.0
            .binary_search_by(|(b, _)| b.cmp(&a))
            .map(|pos| self.0[pos].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `∂/∂a` of the monomial: `(exponent, monomial / a)`, or `None` when
    /// `a` does not occur.
    fn diff(&self, a: Atom) -> Option<(u32, Monomial)> {
        let pos = self.0.iter().position(|(b, _)| *b == a)?;
        let e = self.0[pos].1;
        let mut rest = self.0.clone();
        if e == 1 {
            rest.remove(pos);
        } else {
            rest[pos].1 -= 1;
        }
        Some((e, Monomial(rest)))
    }

    /// Split into the unknown part and the coordinate part.
    pub fn split_unknowns(&self) -> (Monomial, Monomial) {
        let (u, c): (Vec<_>, Vec<_>) = self
            .0
            .iter()
            .partition(|(a, _)| matches!(a, Atom::Unknown(_)));
        (Monomial(u), Monomial(c))
    }

    pub fn coords(&self) -> impl Iterator<Item = CoordId> + '_ {
        self.0.iter().filter_map(|(a, _)| match a {
            Atom::Coord(c) => Some(*c),
            Atom::Unknown(_) => None,
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            for (x, y) in self.0.iter().zip(other.0.iter()) {
                let ord = x.0.cmp(&y.0).then_with(|| y.1.cmp(&x.1));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            // Same degree and a common prefix means the lists are equal.
            other.0.len().cmp(&self.0.len())
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (a, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial in normal form. Cheap to compare; clone is a deep copy.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Expr {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Expr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Expr { terms }
    }

    pub fn coord(c: CoordId) -> Self {
        Self::term(GaussianRational::one(), Monomial::atom(Atom::Coord(c)))
    }

    pub fn unknown(u: UnknownId) -> Self {
        Self::term(GaussianRational::one(), Monomial::atom(Atom::Unknown(u)))
    }

    pub fn time() -> Self {
        Self::coord(CoordId::TIME)
    }

    pub fn holo(level: u32, index: u32) -> Self {
        Self::coord(CoordId::raw(CoordKind::Holo, level, index))
    }

    pub fn anti(level: u32, index: u32) -> Self {
        Self::coord(CoordId::raw(CoordKind::Anti, level, index))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (print) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// The value when the expression is a constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Total degree; zero for constants (including the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coords(&self) -> BTreeSet<CoordId> {
        self.terms.keys().flat_map(|m| m.coords()).collect()
    }

    pub fn unknowns(&self) -> BTreeSet<UnknownId> {
        self.terms
            .keys()
            .flat_map(|m| {
                m.factors().iter().filter_map(|(a, _)| match a {
                    Atom::Unknown(u) => Some(*u),
                    Atom::Coord(_) => None,
                })
            })
            .collect()
    }

    pub fn has_unknowns(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.factors().iter().any(|(a, _)| matches!(a, Atom::Unknown(_))))
    }

    pub fn depends_on(&self, c: CoordId) -> bool {
        self.terms
            .keys()
            .any(|m| m.exponent(Atom::Coord(c)) > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Expr {
        self.scale(&GaussianRational::from_int(n))
    }

    /// Non-negative integer power. Negative exponents are not representable
    /// in the polynomial ring and are rejected.
    pub fn pow(&self, exp: i64) -> Result<Expr, KernelError> {
        if exp < 0 {
            return Err(KernelError::NegativePower(exp));
        }
        let mut acc = Expr::one();
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to a coordinate.
    pub fn diff(&self, x: CoordId) -> Expr {
        self.diff_atom(Atom::Coord(x))
    }

    pub(crate) fn diff_atom(&self, a: Atom) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.diff(a) {
                out.add_term(rest, &(c * &GaussianRational::from_int(e as i64)));
            }
        }
        out
    }

    /// Swap holomorphic and antiholomorphic atoms and conjugate every
    /// coefficient. Only defined for expressions without unknowns.
    pub fn conjugate(&self) -> Result<Expr, KernelError> {
        if self.has_unknowns() {
            return Err(KernelError::ConjugateUnknown);
        }
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let m2 = Monomial::from_factors(m.factors().iter().map(|(a, e)| match a {
                Atom::Coord(x) => (Atom::Coord(x.conjugate()), *e),
                Atom::Unknown(_) => unreachable!(),
            }));
            out.add_term(m2, &c.conj());
        }
        Ok(out)
    }

    /// Simultaneous substitution of coordinates. Coordinates without a
    /// binding are left alone.
    pub fn substitute(&self, bindings: &BTreeMap<CoordId, Expr>) -> Expr {
        self.substitute_atoms(&|a| match a {
            Atom::Coord(c) => bindings.get(&c).cloned(),
            Atom::Unknown(_) => None,
        })
    }

    /// Substitute solver unknowns.
    pub fn substitute_unknowns(&self, bindings: &BTreeMap<UnknownId, Expr>) -> Expr {
        self.substitute_atoms(&|a| match a {
            Atom::Unknown(u) => bindings.get(&u).cloned(),
            Atom::Coord(_) => None,
        })
    }

    fn substitute_atoms(&self, lookup: &dyn Fn(Atom) -> Option<Expr>) -> Expr {
        let mut out = Expr::zero();
        let mut cache: BTreeMap<(Atom, u32), Expr> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Expr::one();
            for &(a, e) in m.factors() {
                match lookup(a) {
                    Some(val) => {
                        let p = cache
                            .entry((a, e))
                            .or_insert_with(|| val.pow(e as i64).expect("non-negative"));
                        factor = &factor * p;
                    }
                    None => kept.push((a, e)),
                }
            }
            let base = Expr::term(c.clone(), Monomial(kept));
            for (m2, c2) in (&base * &factor).terms {
                out.add_term(m2, &c2);
            }
        }
        out
    }

    /// Canonical text: terms in monomial order joined by ` + ` / ` - `.
    pub fn format(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            // A leading minus is pulled out for purely real or purely
            // imaginary coefficients; mixed ones print parenthesized.
            let negative = (c.im().is_zero() && c.re().is_negative())
                || (c.re().is_zero() && c.im().is_negative());
            let mag = if negative { -c.clone() } else { c.clone() };
            if n == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn add(self, rhs: &'a Expr) -> Expr {
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        let (mut big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (m, c) in small.terms {
            big.add_term(m, &c);
        }
        big
    }
}

impl<'a> Sub<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn sub(self, rhs: &'a Expr) -> Expr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn mul(self, rhs: &'a Expr) -> Expr {
        let mut out = Expr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        &self * &rhs
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -self.clone()
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |a, b| a + b)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl From<CoordId> for Expr {
    fn from(c: CoordId) -> Self {
        Expr::coord(c)
    }
}

impl From<GaussianRational> for Expr {
    fn from(c: GaussianRational) -> Self {
        Expr::constant(c)
    }
}
