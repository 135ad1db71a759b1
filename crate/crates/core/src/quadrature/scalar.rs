//! Bracketed scalar root finding and bounded minimization.

use crate::error::{Error, Result};

const GOLDEN: f64 = 0.381_966_011_250_105_1; // (3 - sqrt 5) / 2

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

fn checked<F: FnMut(f64) -> f64>(f: &mut F, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(x))
    }
}

/// Local minimizer of `f` on `[a, b]` by golden-section search with
/// parabolic refinement (Brent). For unimodal `f` the returned point is
/// within `tol` of the true minimizer; boundary minima are approached to
/// within `tol` of the endpoint and then snapped onto it if that is lower.
pub fn minimize_scalar<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Minimum>
where
    F: FnMut(f64) -> f64,
{
    if !(a < b) {
        return Err(Error::InvalidInput(format!("need a < b, got [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let (mut lo, mut hi) = (a, b);
    let mut x = lo + GOLDEN * (hi - lo);
    let (mut w, mut v) = (x, x);
    let mut fx = checked(&mut f, x)?;
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    let mut iterations = 0;

    loop {
        let mid = 0.5 * (lo + hi);
        let tol1 = 1e-3 * tol + f64::EPSILON.sqrt() * 1e-4 * x.abs();
        let tol1 = tol1.max(1e-300);
        let tol2 = 2.0 * tol1;
        if (x - mid).abs() <= tol2 - 0.5 * (hi - lo) || iterations >= 500 {
            break;
        }
        iterations += 1;

        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            e = d;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (lo - x) && p < q * (hi - x) {
                d = p / q;
                let u = x + d;
                if u - lo < tol2 || hi - u < tol2 {
                    d = if mid >= x { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= mid { lo - x } else { hi - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = checked(&mut f, u)?;
        if fu <= fx {
            if u >= x {
                lo = x;
            } else {
                hi = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                lo = u;
            } else {
                hi = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }

    // The iteration never evaluates the endpoints themselves.
    for edge in [a, b] {
        if (x - edge).abs() <= 4.0 * tol {
            let fe = checked(&mut f, edge)?;
            if fe <= fx {
                x = edge;
                fx = fe;
            }
        }
    }
    Ok(Minimum { x, fx, iterations })
}

/// Root of `f` inside a sign-changing bracket `[a, b]` (Brent-Dekker:
/// bisection safeguarding secant and inverse quadratic steps). Stops once
/// the bracket is narrower than `tol` or an exact zero is hit.
pub fn find_root_bracketed<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let (mut a, mut b) = (a, b);
    let mut fa = checked(&mut f, a)?;
    let mut fb = checked(&mut f, b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { a, b, fa, fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..1000 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else if m > 0.0 {
            tol1
        } else {
            -tol1
        };
        fb = checked(&mut f, b)?;
    }
    Err(Error::Numerical("root finder did not converge in 1000 steps".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn minimize_examples() {
        let m = minimize_scalar(|x| (x - 0.3) * (x - 0.3), -1.0, 1.0, 1e-10).unwrap();
        assert_abs_diff_eq!(m.x, 0.3, epsilon = 1e-9);
        let m = minimize_scalar(f64::cos, 0.0, 2.0 * PI, 1e-10).unwrap();
        assert_abs_diff_eq!(m.x, PI, epsilon = 1e-8);
    }

    #[test]
    fn minimize_boundary_minimum() {
        let m = minimize_scalar(|x| x, 0.0, 1.0, 1e-10).unwrap();
        assert_eq!(m.x, 0.0);
        let m = minimize_scalar(|x| -x * x, -1.0, 0.5, 1e-10).unwrap();
        assert_eq!(m.x, -1.0);
    }

    #[test]
    fn minimize_rejects_nan() {
        let err = minimize_scalar(|x| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, 1e-8)
            .unwrap_err();
        assert!(matches!(err, Error::NonFinite(_)));
    }

    #[test]
    fn root_examples() {
        let r = find_root_bracketed(|x| x * x - 2.0, 1.0, 2.0, 1e-14).unwrap();
        assert_abs_diff_eq!(r, 2f64.sqrt(), epsilon = 1e-13);
        let r = find_root_bracketed(f64::cos, 1.0, 2.0, 1e-14).unwrap();
        assert_abs_diff_eq!(r, PI / 2.0, epsilon = 1e-13);
    }

    #[test]
    fn root_requires_sign_change() {
        let err = find_root_bracketed(|x| x * x + 1.0, -1.0, 1.0, 1e-10).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
    }
}
