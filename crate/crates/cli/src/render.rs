//! Text rendering of lifted objects, one basis element per line.

use extlift::fields::{Bilinear, EndoField, OneForm, VectorField};
use extlift::symkernel::{CoordId, Expr};

/// `e*b` with the coefficient parenthesized unless it is a single factor.
fn scaled(e: &Expr, basis: &str) -> String {
    let text = e.to_string();
    if e == &Expr::one() {
        basis.to_string()
    } else if e.len() == 1 && !text.starts_with('-') && !text.contains(' ') {
        format!("{text}*{basis}")
    } else {
        format!("({text})*{basis}")
    }
}

/// A field as a linear combination, such as `d/dz0_1 + (-z0_1)*d/dz1_1`.
pub fn combination(coords: &[CoordId], comps: &[Expr], prefix: &str) -> String {
    let parts: Vec<String> = coords
        .iter()
        .zip(comps)
        .filter(|(_, e)| !e.is_zero())
        .map(|(c, e)| scaled(e, &format!("{prefix}{c}")))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn vector_combination(z: &VectorField) -> String {
    combination(&z.chart().coordinates(), z.components(), "d/d")
}

pub fn oneform_combination(w: &OneForm) -> String {
    combination(&w.chart().coordinates(), w.components(), "d")
}

fn block(title: &str, rows: Vec<String>) -> String {
    if rows.is_empty() {
        return format!("{title} = 0\n");
    }
    let mut out = format!("{title}:\n");
    for r in rows {
        out.push_str("  ");
        out.push_str(&r);
        out.push('\n');
    }
    out
}

pub fn vector_block(title: &str, z: &VectorField) -> String {
    let rows = z.terms().into_iter().map(|(c, e)| format!("d/d{c} = {e}")).collect();
    block(title, rows)
}

pub fn oneform_block(title: &str, w: &OneForm) -> String {
    let rows = w.terms().into_iter().map(|(c, e)| format!("d{c} = {e}")).collect();
    block(title, rows)
}

/// Rows `d/d<out> (x) d<in> = entry`.
pub fn endo_block(title: &str, phi: &EndoField) -> String {
    let coords = phi.chart().coordinates();
    let mut rows = Vec::new();
    for (a, ca) in coords.iter().enumerate() {
        for (b, cb) in coords.iter().enumerate() {
            let e = &phi.matrix()[a][b];
            if !e.is_zero() {
                rows.push(format!("d/d{ca} (x) d{cb} = {e}"));
            }
        }
    }
    block(title, rows)
}

pub fn bilinear_block(title: &str, g: &Bilinear) -> String {
    let coords = g.chart().coordinates();
    let mut rows = Vec::new();
    for (a, ca) in coords.iter().enumerate() {
        for (b, cb) in coords.iter().enumerate() {
            let e = &g.matrix()[a][b];
            if !e.is_zero() {
                rows.push(format!("d{ca} (x) d{cb} = {e}"));
            }
        }
    }
    block(title, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use extlift::charts::ChartSpec;
    use extlift::symkernel::parse;

    #[test]
    fn combinations() {
        let c = ChartSpec::new(1, 1, false).unwrap();
        let coords = c.coordinates();
        let comps = vec![Expr::one(), parse("-z0_1").unwrap(), Expr::zero(), parse("2*zb0_1").unwrap()];
        assert_eq!(combination(&coords, &comps, "d/d"), "d/dz0_1 + (-z0_1)*d/dz1_1 + 2*zb0_1*d/dzb1_1");
        assert_eq!(combination(&coords, &vec![Expr::zero(); 4], "d"), "0");
        let sum = vec![parse("z0_1 + 1").unwrap(), Expr::zero(), Expr::zero(), Expr::zero()];
        assert_eq!(combination(&coords, &sum, "d"), "(z0_1 + 1)*dz0_1");
    }

    #[test]
    fn blocks() {
        let c = ChartSpec::new(1, 0, false).unwrap();
        let z = VectorField::basis(c, c.holo(0, 1)).unwrap();
        assert_eq!(vector_block("Z", &z), "Z:\n  d/dz0_1 = 1\n");
        assert_eq!(vector_block("Z", &VectorField::zero(c)), "Z = 0\n");
    }
}
