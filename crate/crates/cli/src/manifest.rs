//! Manifest files: chart parameters and named base-chart objects.
//!
//! ```text
//! # comments run to the end of the line
//! m = 1
//! product = true          # chart carries t (default false)
//!
//! scalar f {
//!     value = t*z0_1
//! }
//! vector Z {
//!     t = 1
//!     z0_1 = z0_1^2
//! }
//! oneform w { z0_1 = zb0_1 }
//! endo phi {
//!     z0_1 z0_1 = i       # output coordinate, then input coordinate
//! }
//! bilinear g {
//!     z0_1 zb0_1 = 1
//!     zb0_1 z0_1 = 1
//! }
//! connection {
//!     gamma 0 1 1 = z0_1      # Γ^1_{(0)1}; gammabar defaults to the conjugate
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt;

use extlift::charts::ChartSpec;
use extlift::fields::{Bilinear, ConnectionCoeffs, EndoField, OneForm, ScalarField, VectorField};
use extlift::symkernel::{parse, parse_checked, parse_coord, CoordId, Expr, KernelError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ManifestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ManifestError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Scalar(ScalarField),
    Vector(VectorField),
    OneForm(OneForm),
    Endo(EndoField),
    Bilinear(Bilinear),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct GammaEntry {
    line: usize,
    col: usize,
    bar: bool,
    r: u32,
    upper: u32,
    lower: u32,
    text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub base: ChartSpec,
    pub objects: BTreeMap<String, Object>,
    connection: Option<Vec<GammaEntry>>,
}

impl Manifest {
    /// Γ on the order-`k` chart. Unlisted coefficients are zero; an unlisted
    /// `Γ̄` is the conjugate of the matching `Γ`.
    pub fn connection(&self, k: u32) -> Result<Option<ConnectionCoeffs>, ManifestError> {
        let Some(entries) = &self.connection else {
            return Ok(None);
        };
        let chart = self.base.with_order(k);
        let mut g = ConnectionCoeffs::zero(chart);
        for bar in [false, true] {
            for e in entries.iter().filter(|e| e.bar == bar) {
                let err = |message: String| ManifestError {
                    line: e.line,
                    col: e.col,
                    message,
                };
                if e.r >= k {
                    return Err(err(format!("level {} is out of range for k = {k}", e.r)));
                }
                let m = self.base.m();
                if !(1..=m).contains(&e.upper) || !(1..=m).contains(&e.lower) {
                    return Err(err(format!("index out of range 1..={m}")));
                }
                let value = parse_checked(&e.text, &|c| chart.contains(c))
                    .map_err(|k| expr_error(e.line, e.col, &k))?;
                if bar {
                    g.set_gammabar(e.r, e.upper, e.lower, value)
                } else {
                    let conj = value.conjugate().map_err(|k| expr_error(e.line, e.col, &k))?;
                    g.set_gamma(e.r, e.upper, e.lower, value)
                        .and_then(|_| g.set_gammabar(e.r, e.upper, e.lower, conj))
                }
                .map_err(|x| err(x.to_string()))?;
            }
        }
        Ok(Some(g))
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }
}

fn expr_error(line: usize, col: usize, e: &KernelError) -> ManifestError {
    let offset = match e {
        KernelError::Parse { pos, .. } | KernelError::OutOfChart { pos, .. } => *pos,
        _ => 0,
    };
    ManifestError {
        line,
        col: col + offset,
        message: e.to_string(),
    }
}

/// One logical line: text with its 1-based line number and the column of
/// its first character.
struct Line<'a> {
    no: usize,
    col: usize,
    text: &'a str,
}

fn logical_lines(src: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (n, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let col = body.len() - trimmed.len() + 1;
        let text = trimmed.trim_end();
        if !text.is_empty() {
            out.push(Line { no: n + 1, col, text });
        }
    }
    out
}

struct Entry<'a> {
    line: usize,
    /// Column of the key and of the value.
    key_col: usize,
    value_col: usize,
    key: &'a str,
    value: &'a str,
}

fn split_entry<'a>(no: usize, col: usize, text: &'a str) -> Result<Entry<'a>, ManifestError> {
    let Some(eq) = text.find('=') else {
        return Err(ManifestError {
            line: no,
            col,
            message: "expected `key = value`".into(),
        });
    };
    let key = text[..eq].trim();
    let after = &text[eq + 1..];
    let value = after.trim_start();
    let value_col = col + eq + 1 + (after.len() - value.len());
    if key.is_empty() || value.is_empty() {
        return Err(ManifestError {
            line: no,
            col,
            message: "expected `key = value`".into(),
        });
    }
    Ok(Entry {
        line: no,
        key_col: col,
        value_col,
        key,
        value: value.trim_end(),
    })
}

struct Block<'a> {
    line: usize,
    col: usize,
    kind: &'a str,
    name: Option<&'a str>,
    entries: Vec<Entry<'a>>,
}

pub fn parse_manifest(src: &str) -> Result<Manifest, ManifestError> {
    let lines = logical_lines(src);
    let mut settings: Vec<Entry> = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();
    let mut open: Option<Block> = None;
    for l in &lines {
        let err = |message: &str| ManifestError {
            line: l.no,
            col: l.col,
            message: message.to_string(),
        };
        let mut text = l.text;
        if let Some(b) = open.as_mut() {
            let closes = text.ends_with('}');
            if closes {
                text = text[..text.len() - 1].trim_end();
            }
            if !text.is_empty() {
                b.entries.push(split_entry(l.no, l.col, text)?);
            }
            if closes {
                blocks.push(open.take().expect("open block"));
            }
            continue;
        }
        if let Some(brace) = text.find('{') {
            let head: Vec<&str> = text[..brace].split_whitespace().collect();
            let (kind, name) = match head.as_slice() {
                ["connection"] => ("connection", None),
                [kind, name] => (*kind, Some(*name)),
                _ => return Err(err("expected `<type> <name> {` or `connection {`")),
            };
            if !matches!(kind, "scalar" | "vector" | "oneform" | "endo" | "bilinear" | "connection") {
                return Err(err(&format!("unknown object type `{kind}`")));
            }
            let mut block = Block {
                line: l.no,
                col: l.col,
                kind,
                name,
                entries: Vec::new(),
            };
            let rest = text[brace + 1..].trim();
            let rest_col = l.col + brace + 1 + (text[brace + 1..].len() - text[brace + 1..].trim_start().len());
            let closes = rest.ends_with('}');
            let inner = if closes { rest[..rest.len() - 1].trim_end() } else { rest };
            if !inner.is_empty() {
                block.entries.push(split_entry(l.no, rest_col, inner)?);
            }
            if closes {
                blocks.push(block);
            } else {
                open = Some(block);
            }
            continue;
        }
        if text == "}" {
            return Err(err("unmatched `}`"));
        }
        settings.push(split_entry(l.no, l.col, text)?);
    }
    if let Some(b) = open {
        return Err(ManifestError {
            line: b.line,
            col: b.col,
            message: "block is never closed".into(),
        });
    }

    let mut m = None;
    let mut product = false;
    for e in &settings {
        let err = |message: String| ManifestError {
            line: e.line,
            col: e.value_col,
            message,
        };
        match e.key {
            "m" => {
                let v: u32 = e.value.parse().map_err(|_| err(format!("`{}` is not a natural number", e.value)))?;
                if v == 0 {
                    return Err(err("m must be at least 1".into()));
                }
                m = Some(v);
            }
            "product" => {
                product = match e.value {
                    "true" => true,
                    "false" => false,
                    v => return Err(err(format!("expected true or false, got `{v}`"))),
                }
            }
            k => {
                return Err(ManifestError {
                    line: e.line,
                    col: e.key_col,
                    message: format!("unknown setting `{k}`"),
                })
            }
        }
    }
    let Some(m) = m else {
        return Err(ManifestError {
            line: 1,
            col: 1,
            message: "missing setting `m`".into(),
        });
    };
    let base = ChartSpec::new(m, 0, product).map_err(|e| ManifestError {
        line: 1,
        col: 1,
        message: e.to_string(),
    })?;

    let mut objects = BTreeMap::new();
    let mut connection = None;
    for b in blocks {
        if b.kind == "connection" {
            if connection.is_some() {
                return Err(ManifestError {
                    line: b.line,
                    col: b.col,
                    message: "duplicate connection block".into(),
                });
            }
            connection = Some(gamma_entries(&b)?);
            continue;
        }
        let name = b.name.expect("named block");
        let obj = build_object(&base, &b)?;
        if objects.insert(name.to_string(), obj).is_some() {
            return Err(ManifestError {
                line: b.line,
                col: b.col,
                message: format!("duplicate object `{name}`"),
            });
        }
    }
    Ok(Manifest {
        base,
        objects,
        connection,
    })
}

fn coord_key(base: &ChartSpec, e: &Entry, word: &str, offset: usize) -> Result<CoordId, ManifestError> {
    match parse_coord(word) {
        Some(c) if base.contains(c) => Ok(c),
        _ => Err(ManifestError {
            line: e.line,
            col: e.key_col + offset,
            message: format!("`{word}` is not a coordinate of the base chart {base}"),
        }),
    }
}

fn two_keys(base: &ChartSpec, e: &Entry) -> Result<(CoordId, CoordId), ManifestError> {
    let words: Vec<&str> = e.key.split_whitespace().collect();
    if words.len() != 2 {
        return Err(ManifestError {
            line: e.line,
            col: e.key_col,
            message: "expected two coordinates before `=`".into(),
        });
    }
    let second = e.key.rfind(words[1]).unwrap_or(0);
    Ok((coord_key(base, e, words[0], 0)?, coord_key(base, e, words[1], second)?))
}

fn build_object(base: &ChartSpec, b: &Block) -> Result<Object, ManifestError> {
    let value = |e: &Entry| -> Result<Expr, ManifestError> {
        parse_checked(e.value, &|c| base.contains(c)).map_err(|k| expr_error(e.line, e.value_col, &k))
    };
    let wrap = |e: &Entry, r: extlift::Result<()>| {
        r.map_err(|x| ManifestError {
            line: e.line,
            col: e.key_col,
            message: x.to_string(),
        })
    };
    Ok(match b.kind {
        "scalar" => {
            let mut out = Expr::zero();
            for e in &b.entries {
                if e.key != "value" {
                    return Err(ManifestError {
                        line: e.line,
                        col: e.key_col,
                        message: "scalar blocks take a single `value = ...`".into(),
                    });
                }
                out = value(e)?;
            }
            Object::Scalar(ScalarField::new(*base, out).map_err(|x| ManifestError {
                line: b.line,
                col: b.col,
                message: x.to_string(),
            })?)
        }
        "vector" => {
            let mut z = VectorField::zero(*base);
            for e in &b.entries {
                let c = coord_key(base, e, e.key, 0)?;
                wrap(e, z.set(c, value(e)?))?;
            }
            Object::Vector(z)
        }
        "oneform" => {
            let mut w = OneForm::zero(*base);
            for e in &b.entries {
                let c = coord_key(base, e, e.key, 0)?;
                wrap(e, w.set(c, value(e)?))?;
            }
            Object::OneForm(w)
        }
        "endo" => {
            let mut phi = EndoField::zero(*base);
            for e in &b.entries {
                let (out, input) = two_keys(base, e)?;
                wrap(e, phi.set_entry(out, input, value(e)?))?;
            }
            Object::Endo(phi)
        }
        "bilinear" => {
            let mut g = Bilinear::zero(*base);
            for e in &b.entries {
                let (x, y) = two_keys(base, e)?;
                wrap(e, g.set_entry(x, y, value(e)?))?;
            }
            Object::Bilinear(g)
        }
        other => unreachable!("block type {other} checked while reading"),
    })
}

fn gamma_entries(b: &Block) -> Result<Vec<GammaEntry>, ManifestError> {
    let mut out = Vec::new();
    for e in &b.entries {
        let words: Vec<&str> = e.key.split_whitespace().collect();
        let bad = || ManifestError {
            line: e.line,
            col: e.key_col,
            message: "expected `gamma <r> <upper> <lower> = ...` or `gammabar ...`".into(),
        };
        let [head, r, upper, lower] = words.as_slice() else {
            return Err(bad());
        };
        let bar = match *head {
            "gamma" => false,
            "gammabar" => true,
            _ => return Err(bad()),
        };
        let num = |w: &str| w.parse::<u32>().map_err(|_| bad());
        // Syntax is checked now; chart membership once k is known.
        parse(e.value).map_err(|k| expr_error(e.line, e.value_col, &k))?;
        out.push(GammaEntry {
            line: e.line,
            col: e.value_col,
            bar,
            r: num(r)?,
            upper: num(upper)?,
            lower: num(lower)?,
            text: e.value.to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# sample
m = 1
product = true

scalar f {
    value = t*z0_1
}
vector Z {
    t = 1
    z0_1 = z0_1^2   # trailing comment
}
oneform w { zb0_1 = z0_1 }
endo phi {
    z0_1 z0_1 = i
    zb0_1 zb0_1 = -i
}
bilinear g {
    z0_1 zb0_1 = 1
    zb0_1 z0_1 = 1
}
connection {
    gamma 0 1 1 = z0_1
}
";

    #[test]
    fn reads_every_block() {
        let m = parse_manifest(SAMPLE).unwrap();
        assert_eq!(m.base, ChartSpec::new(1, 0, true).unwrap());
        assert_eq!(m.objects.len(), 5);
        let Object::Vector(z) = m.get("Z").unwrap() else { panic!() };
        assert_eq!(z.to_string(), "d/dt -> 1, d/dz0_1 -> z0_1^2");
        let Object::OneForm(w) = m.get("w").unwrap() else { panic!() };
        assert_eq!(w.to_string(), "dzb0_1 -> z0_1");
        let Object::Endo(phi) = m.get("phi").unwrap() else { panic!() };
        assert_eq!(phi.entry(CoordId::holo(0, 1).unwrap(), CoordId::holo(0, 1).unwrap()), Expr::i());
        let Object::Bilinear(g) = m.get("g").unwrap() else { panic!() };
        assert!(g.is_symmetric());
        let gamma = m.connection(1).unwrap().unwrap();
        assert_eq!(gamma.gamma(0, 1, 1), &Expr::holo(0, 1));
        assert_eq!(gamma.gammabar(0, 1, 1), &Expr::anti(0, 1));
    }

    #[test]
    fn positions_in_errors() {
        let e = parse_manifest("m = 1\nscalar f {\n    value = z0_1 +\n}\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 19));
        let e = parse_manifest("m = 1\nvector Z { z1_1 = 1 }\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 12));
        let e = parse_manifest("m = 1\nscalar f { value = z1_1 }\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 20));
        assert!(e.message.contains("not in the chart"));
        let e = parse_manifest("m = 1\nvector Z {\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_manifest("product = true\n").unwrap_err();
        assert!(e.message.contains("missing setting"));
        let e = parse_manifest("m = 1\nscalar f { value = t }\n").unwrap_err();
        assert!(e.message.contains("not in the chart"));
    }

    #[test]
    fn connection_range_checked_against_k() {
        let m = parse_manifest("m = 1\nconnection {\n  gamma 1 1 1 = z0_1\n}\n").unwrap();
        assert!(m.connection(1).is_err());
        assert!(m.connection(2).unwrap().is_some());
        let none = parse_manifest("m = 1\n").unwrap();
        assert_eq!(none.connection(1), Ok(None));
    }
}
