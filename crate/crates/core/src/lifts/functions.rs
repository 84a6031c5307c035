//! Vertical, complete, complete-vertical and horizontal lifts of functions.
//!
//! The expression-level helpers work on bare [`Expr`]s: a complete step only
//! needs the coordinates that actually occur, each of which moves up one
//! level under `ż^{ri} = z^{(r+1)i}`.

use crate::charts::ChartSpec;
use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::symkernel::{CoordId, Expr};

/// One complete step: `t ∂e/∂t + Σ ż^{ri} ∂e/∂z^{ri} + Σ ż̄^{ri} ∂e/∂z̄^{ri}`.
pub fn complete_step_expr(e: &Expr) -> Expr {
    let mut out = Expr::zero();
    for c in e.coords() {
        let de = e.diff(c);
        out = if c.is_time() {
            out + &Expr::time() * &de
        } else {
            out + &Expr::coord(c.at_level(c.level() + 1)) * &de
        };
    }
    out
}

pub fn complete_expr(e: &Expr, steps: u32) -> Expr {
    let mut out = e.clone();
    for _ in 0..steps {
        if out.is_zero() {
            break;
        }
        out = complete_step_expr(&out);
    }
    out
}

/// `c^r` followed by `v^s`. Vertical steps leave the expression unchanged.
pub fn cv_expr(e: &Expr, r: u32, _s: u32) -> Expr {
    complete_expr(e, r)
}

/// `(∂e/∂t)^v + Σ ż^{ri} (∂e/∂z^{ri})^v + conjugates`, the γ-gradient term.
pub fn gamma_gradient_expr(e: &Expr) -> Expr {
    let mut out = Expr::zero();
    for c in e.coords() {
        let de = e.diff(c);
        out = if c.is_time() {
            out + de
        } else {
            out + &Expr::coord(c.at_level(c.level() + 1)) * &de
        };
    }
    out
}

fn raised(f: &ScalarField, steps: u32) -> ChartSpec {
    f.chart().with_order(f.chart().k() + steps)
}

pub fn fn_vertical(f: &ScalarField, steps: u32) -> ScalarField {
    ScalarField::new(raised(f, steps), f.value().clone()).expect("pullback stays in chart")
}

pub fn fn_complete_step(f: &ScalarField) -> ScalarField {
    fn_complete(f, 1)
}

pub fn fn_complete(f: &ScalarField, k: u32) -> ScalarField {
    ScalarField::new(raised(f, k), complete_expr(f.value(), k)).expect("levels rise by k")
}

pub fn fn_complete_vertical(f: &ScalarField, r: u32, s: u32) -> ScalarField {
    fn_vertical(&fn_complete(f, r), s)
}

/// The γ-gradient of `f` on `^{k-1}N`, as a function on `^kN`.
pub fn gamma_gradient(f: &ScalarField) -> Result<ScalarField> {
    if !f.chart().has_time() {
        return Err(Error::NeedsTime);
    }
    ScalarField::new(raised(f, 1), gamma_gradient_expr(f.value()))
}

/// `f^{H^k} = f^{c^k} − ∇_γ f^{c^{k-1}}`.
pub fn fn_horizontal(f: &ScalarField, k: u32) -> Result<ScalarField> {
    if !f.chart().has_time() {
        return Err(Error::NeedsTime);
    }
    if k == 0 {
        return Err(Error::NeedsPositiveOrder);
    }
    let full = fn_complete(f, k);
    let below = gamma_gradient(&fn_complete(f, k - 1))?;
    ScalarField::new(*full.chart(), full.value() - below.value())
}

/// `∂f/∂x` for a coordinate `x`, as a scalar field on the same chart.
pub fn partial(f: &ScalarField, x: CoordId) -> ScalarField {
    ScalarField::new(*f.chart(), f.value().diff(x)).expect("derivative stays in chart")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::parse;

    fn sf(m: u32, k: u32, t: bool, text: &str) -> ScalarField {
        ScalarField::new(ChartSpec::new(m, k, t).unwrap(), parse(text).unwrap()).unwrap()
    }

    fn text(f: &ScalarField) -> String {
        f.value().to_string()
    }

    #[test]
    fn vertical_is_pullback() {
        let f = sf(1, 0, true, "z0_1^2");
        let v = fn_vertical(&f, 2);
        assert_eq!(v.chart().k(), 2);
        assert_eq!(text(&v), "z0_1^2");
        assert_eq!(fn_vertical(&fn_vertical(&f, 1), 1), v);
        assert_eq!(text(&fn_vertical(&sf(1, 0, true, "t"), 3)), "t");
    }

    #[test]
    fn complete_steps() {
        assert_eq!(text(&fn_complete_step(&sf(1, 0, true, "z0_1"))), "z1_1");
        assert_eq!(text(&fn_complete_step(&sf(1, 0, true, "t"))), "t");
        assert_eq!(text(&fn_complete_step(&sf(1, 0, true, "5"))), "0");
        assert_eq!(
            text(&fn_complete_step(&sf(1, 0, false, "z0_1*zb0_1"))),
            "z0_1*zb1_1 + z1_1*zb0_1"
        );
    }

    #[test]
    fn iterated_complete() {
        assert_eq!(text(&fn_complete(&sf(1, 0, true, "z0_1"), 2)), "z2_1");
        assert_eq!(
            fn_complete(&sf(1, 0, true, "z0_1^2"), 2).into_value(),
            parse("2*z1_1^2 + 2*z0_1*z2_1").unwrap()
        );
        assert_eq!(text(&fn_complete(&sf(1, 0, true, "t"), 3)), "t");
    }

    #[test]
    fn complete_vertical() {
        let f = sf(1, 0, true, "z0_1");
        let cv = fn_complete_vertical(&f, 1, 1);
        assert_eq!(cv.chart().k(), 2);
        assert_eq!(text(&cv), "z1_1");
        assert_eq!(text(&fn_complete_vertical(&f, 0, 3)), "z0_1");
        let vc = fn_complete(&fn_vertical(&f, 1), 1);
        assert_eq!(vc.value(), cv.value());
    }

    #[test]
    fn gamma_gradient_display() {
        assert_eq!(text(&gamma_gradient(&sf(1, 0, true, "z0_1")).unwrap()), "z1_1");
        assert_eq!(text(&gamma_gradient(&sf(1, 0, true, "t")).unwrap()), "1");
        assert_eq!(text(&gamma_gradient(&sf(1, 0, true, "3/2")).unwrap()), "0");
        assert!(gamma_gradient(&sf(1, 0, false, "z0_1")).is_err());
    }

    #[test]
    fn horizontal_function_lift() {
        assert_eq!(text(&fn_horizontal(&sf(1, 0, true, "z0_1"), 1).unwrap()), "0");
        assert_eq!(
            text(&fn_horizontal(&sf(1, 0, true, "z0_1*zb0_1"), 2).unwrap()),
            "0"
        );
        assert_eq!(text(&fn_horizontal(&sf(1, 0, true, "t"), 1).unwrap()), "t - 1");
        assert!(fn_horizontal(&sf(1, 0, true, "t"), 0).is_err());
    }
}
