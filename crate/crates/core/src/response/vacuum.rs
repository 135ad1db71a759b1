//! Vacuum part of the response kernel.
//!
//! `T_vac(p) = (2π)³V″(φ) + T_sing(p) + T_reg(p)` with the two momentum
//! dependent pieces given as integrals over the Feynman parameter `u`.
//! [`brute_force_t_vac`] integrates the underlying spinor-trace integrand
//! over `(ω, q)` directly and is independent of those closed forms.

use std::cell::Cell;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::potential::{d2v, FieldValue};
use crate::quadrature::{integrate_finite, integrate_with_breakpoints, IntegrationResult, QuadratureSpec};

const TWO_PI_CUBED: f64 = 8.0 * PI * PI * PI;

fn check_momentum(p: f64) -> Result<()> {
    if p >= 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("momentum must be finite and >= 0, got {p}")))
    }
}

fn u_spec() -> QuadratureSpec {
    QuadratureSpec::new(1e-15, 1e-12, 2000).expect("valid constant")
}

/// `2πp² ∫₀¹ u(1−u) log[(1 + u(1−u)p²) / ((1+φ)² + u(1−u)p²)] du`.
pub fn t_sing(p: f64, phi: FieldValue) -> Result<f64> {
    check_momentum(p)?;
    if p == 0.0 || phi.get() == 0.0 {
        return Ok(0.0);
    }
    let m2 = phi.mass().powi(2);
    let p2 = p * p;
    let r = integrate_finite(
        |u| {
            let w = u * (1.0 - u);
            let x = w * p2;
            // log(1 + x) − log(m² + x) without losing the small difference
            w * ((1.0 - m2) / (m2 + x)).ln_1p()
        },
        0.0,
        1.0,
        &u_spec(),
    )?;
    Ok(2.0 * PI * p2 * r.value)
}

/// Integrand of [`t_reg`] without the `2πp²` prefactor.
pub fn t_reg_integrand(u: f64, p: f64, phi: f64) -> f64 {
    let p2 = p * p;
    let w = u * (1.0 - u);
    let den = 1.0 + w * p2;
    let u2 = u * u;
    let u3 = u2 * u;
    let lin = 2.0 - 6.0 * u + 2.0 * u * p2 - 8.0 * u2 * p2 + 6.0 * u3 * p2;
    let quad = 1.0 + 2.0 * u * p2 - 7.0 * u2 * p2 + 10.0 * u3 * p2 - 5.0 * u3 * u * p2;
    phi * w / (den * den) * (lin + phi * quad)
}

/// The rational `u`-integral collecting the remaining finite terms.
pub fn t_reg(p: f64, phi: FieldValue) -> Result<f64> {
    check_momentum(p)?;
    let x = phi.get();
    if p == 0.0 || x == 0.0 {
        return Ok(0.0);
    }
    let r = integrate_finite(|u| t_reg_integrand(u, p, x), 0.0, 1.0, &u_spec())?;
    Ok(2.0 * PI * p * p * r.value)
}

/// The three pieces of `T_vac`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumResponse {
    pub t_vac0: f64,
    pub t_sing: f64,
    pub t_reg: f64,
}

impl VacuumResponse {
    pub fn total(&self) -> f64 {
        self.t_vac0 + self.t_sing + self.t_reg
    }
}

pub fn t_vac_parts(p: f64, phi: FieldValue) -> Result<VacuumResponse> {
    Ok(VacuumResponse {
        t_vac0: TWO_PI_CUBED * d2v(phi),
        t_sing: t_sing(p, phi)?,
        t_reg: t_reg(p, phi)?,
    })
}

pub fn t_vac(p: f64, phi: FieldValue) -> Result<f64> {
    t_vac_parts(p, phi).map(|r| r.total())
}

/// The trace integral of [`brute_force_t_vac`] in closed form.
///
/// In four-momentum notation the massive trace is `4(m² − Q·K)/(AB)`, and
/// Feynman parameters give the cutoff-independent part
/// `Π(m) = −2π[(2m² + p²/2)∫₀¹ log(m² + u(1−u)p²) du + m² log m²]`.
/// All divergent parts are quadratic in `φ`, so the result is the
/// remainder of `Π(1 + φ)` after its second-order Taylor polynomial.
/// Same normalization as the brute-force integral: at `p → 0` it tends to
/// `(2π)³V″(φ)/2`.
pub fn t_vac_bubble(p: f64, phi: FieldValue) -> Result<f64> {
    check_momentum(p)?;
    let x = phi.get();
    if x == 0.0 {
        return Ok(0.0);
    }
    let m2 = phi.mass().powi(2);
    let p2 = p * p;
    let c1 = 2.0 + p2 / 2.0;
    let integrand = |u: f64| {
        let s = u * (1.0 - u) * p2;
        let l1 = s.ln_1p();
        let d = 1.0 + s;
        let f = (2.0 * m2 + p2 / 2.0) * (m2 + s).ln() - c1 * l1;
        let f1 = 4.0 * l1 + 2.0 * c1 / d;
        let f2 = 4.0 * l1 + 16.0 / d + c1 * (2.0 / d - 4.0 / (d * d));
        f - x * f1 - 0.5 * x * x * f2
    };
    let r = integrate_finite(integrand, 0.0, 1.0, &u_spec())?;
    let local = m2 * m2.ln() - 2.0 * x - 3.0 * x * x;
    Ok(-2.0 * PI * (r.value + local))
}

// Numerators of Tr[(βf(q))^{1+j} (βf(q−p))^{1+k}] with f(q) = (α·q + β + iω)⁻¹,
// written in ω², p·q, q² and p².

pub fn theta_10(w2: f64, pq: f64, q2: f64) -> f64 {
    4.0 + 8.0 * pq - 12.0 * q2 - 12.0 * w2
}

pub fn theta_20(w2: f64, pq: f64, q2: f64) -> f64 {
    4.0 + 12.0 * pq - 24.0 * q2 - 4.0 * pq * q2 + 4.0 * q2 * q2 - 24.0 * w2
        - 4.0 * pq * w2
        + 8.0 * q2 * w2
        + 4.0 * w2 * w2
}

pub fn theta_11(w2: f64, pq: f64, q2: f64, p2: f64) -> f64 {
    4.0 - 4.0 * p2 + 24.0 * pq - 24.0 * q2 + 4.0 * p2 * q2 - 8.0 * pq * q2 + 4.0 * q2 * q2
        - 24.0 * w2
        + 4.0 * p2 * w2
        - 8.0 * pq * w2
        + 8.0 * q2 * w2
        + 4.0 * w2 * w2
}

/// `Tr[βg(q) βg(q−p)]` for mass `m`, with `g(q) = (α·q + βm + iω)⁻¹`.
pub fn mass_trace(m2: f64, w2: f64, pq: f64, q2: f64, k2: f64) -> f64 {
    4.0 * (m2 - w2 + pq - q2) / ((q2 + m2 + w2) * (k2 + m2 + w2))
}

/// Regularised trace integrand at `(ω, |q|, cos θ)` with `p` along the polar axis.
///
/// The first- and second-order counterterms are split evenly between
/// `q` and `p − q`; the two halves integrate to the same value, and the
/// split makes the integrand a pointwise third-order Taylor remainder in φ.
pub fn brute_force_integrand(w: f64, q: f64, c: f64, p: f64, phi: f64) -> f64 {
    let w2 = w * w;
    let q2 = q * q;
    let p2 = p * p;
    let pq = q * p * c;
    let k2 = (q2 - 2.0 * pq + p2).max(0.0);
    // p·q and |q|² as seen from k = q − p with momentum −p
    let pk = p2 - pq;
    let m2 = (1.0 + phi).powi(2);

    let a = q2 + 1.0 + w2;
    let b = k2 + 1.0 + w2;
    let tr_m = mass_trace(m2, w2, pq, q2, k2);
    let tr_1 = mass_trace(1.0, w2, pq, q2, k2);
    let first = theta_10(w2, pq, q2) / (a * a * b) + theta_10(w2, pk, k2) / (a * b * b);
    let second = theta_11(w2, pq, q2, p2) / (a * a * b * b)
        + theta_20(w2, pq, q2) / (a * a * a * b)
        + theta_20(w2, pk, k2) / (a * b * b * b);
    tr_m - tr_1 + phi * first - phi * phi * second
}

/// Momentum and frequency cutoff of the brute-force integral. Beyond it
/// the integrand falls like `80|φ|³/Q⁶`, so the neglected tail is of order
/// `40π|φ|³/R²`.
pub const BRUTE_FORCE_CUTOFF: f64 = 2000.0;

/// Absolute accuracy reachable by the momentum integrals: near the cutoff
/// the integrand is a 1e−7 remainder of terms of size 1/Q⁴, and their
/// rounding sums to about 1e−12.
const ROUNDING_FLOOR: f64 = 1e-11;

/// `(1/2π) ∫dω ∫d³q` of [`brute_force_integrand`] by nested adaptive quadrature.
pub fn brute_force_t_vac(p: f64, phi: FieldValue, spec: &QuadratureSpec) -> Result<f64> {
    check_momentum(p)?;
    spec.validate()?;
    let x = phi.get();
    if x == 0.0 {
        return Ok(0.0);
    }
    let r = BRUTE_FORCE_CUTOFF;
    let mut q_points = vec![0.0];
    for bp in [p.min(r), 1.0, 4.0, 16.0, 64.0, 256.0, r] {
        if bp > *q_points.last().unwrap() {
            q_points.push(bp);
        }
    }
    let w_points = [0.0, 1.0, 4.0, 16.0, 64.0, 256.0, r];
    let angular = QuadratureSpec { abs_tol: spec.abs_tol * 1e-6, ..*spec };
    let radial = QuadratureSpec { abs_tol: spec.abs_tol.max(ROUNDING_FLOOR), ..*spec };
    let missed = Cell::new(false);
    // Inner failures keep their best estimate; the flag turns them into an error at the end.
    let best = |res: Result<IntegrationResult>| match res {
        Ok(v) => v.value,
        Err(Error::QuadratureFailed { value, .. }) => {
            missed.set(true);
            value
        }
        Err(_) => f64::NAN,
    };

    let omega_integrand = |w: f64| {
        let q_integrand = |q: f64| {
            q * q * best(integrate_finite(|c| brute_force_integrand(w, q, c, p, x), -1.0, 1.0, &angular))
        };
        best(integrate_with_breakpoints(q_integrand, &q_points, &radial))
    };
    let value = integrate_with_breakpoints(omega_integrand, &w_points, spec)?.value;
    if missed.get() || !value.is_finite() {
        return Err(Error::QuadratureFailed {
            value: 2.0 * value,
            error_estimate: f64::NAN,
            evaluations: 0,
        });
    }
    // (1/2π)·2 (ω even)·2π (azimuth)
    Ok(2.0 * value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::composite_simpson;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use num_complex::Complex64 as C;

    fn f(x: f64) -> FieldValue {
        FieldValue::new(x).unwrap()
    }

    type Mat = [[C; 4]; 4];

    fn zero() -> Mat {
        [[C::new(0.0, 0.0); 4]; 4]
    }

    fn mul(a: &Mat, b: &Mat) -> Mat {
        let mut r = zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    r[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        r
    }

    fn trace(a: &Mat) -> C {
        (0..4).map(|i| a[i][i]).sum()
    }

    /// Dirac representation: β = diag(1, 1, −1, −1), αⱼ = offdiag(σⱼ, σⱼ).
    fn dirac() -> (Mat, [Mat; 3]) {
        let o = C::new(0.0, 0.0);
        let one = C::new(1.0, 0.0);
        let i = C::new(0.0, 1.0);
        let sigma = [
            [[o, one], [one, o]],
            [[o, -i], [i, o]],
            [[one, o], [o, -one]],
        ];
        let mut beta = zero();
        beta[0][0] = one;
        beta[1][1] = one;
        beta[2][2] = -one;
        beta[3][3] = -one;
        let mut alpha = [zero(), zero(), zero()];
        for (n, s) in sigma.iter().enumerate() {
            for r in 0..2 {
                for c in 0..2 {
                    alpha[n][r][c + 2] = s[r][c];
                    alpha[n][r + 2][c] = s[r][c];
                }
            }
        }
        (beta, alpha)
    }

    /// `β (α·q + βm + iω)⁻¹`, using `(α·q + βm + iω)(α·q + βm − iω) = q² + m² + ω²`.
    fn beta_resolvent(q: [f64; 3], m: f64, w: f64) -> Mat {
        let (beta, alpha) = dirac();
        let den = q.iter().map(|x| x * x).sum::<f64>() + m * m + w * w;
        let mut g = zero();
        for r in 0..4 {
            for c in 0..4 {
                let mut v = beta[r][c] * m;
                for n in 0..3 {
                    v += alpha[n][r][c] * q[n];
                }
                if r == c {
                    v -= C::new(0.0, w);
                }
                g[r][c] = v / den;
            }
        }
        mul(&beta, &g)
    }

    fn sample_points() -> Vec<([f64; 3], [f64; 3], f64)> {
        vec![
            ([0.3, -0.2, 0.7], [0.1, 0.5, -0.4], 0.6),
            ([1.2, 0.4, -0.9], [-0.7, 0.2, 0.3], 1.7),
            ([0.0, 0.0, 0.5], [0.0, 0.0, 1.0], 0.0),
        ]
    }

    #[test]
    fn printed_traces_match_explicit_dirac_matrices() {
        for (q, p, w) in sample_points() {
            let k = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
            let q2: f64 = q.iter().map(|x| x * x).sum();
            let k2: f64 = k.iter().map(|x| x * x).sum();
            let p2: f64 = p.iter().map(|x| x * x).sum();
            let pq: f64 = (0..3).map(|i| p[i] * q[i]).sum();
            let w2 = w * w;
            let a = q2 + 1.0 + w2;
            let b = k2 + 1.0 + w2;
            let x = beta_resolvent(q, 1.0, w);
            let y = beta_resolvent(k, 1.0, w);

            let t10 = trace(&mul(&mul(&x, &x), &y));
            assert_abs_diff_eq!(t10.re, theta_10(w2, pq, q2) / (a * a * b), epsilon = 1e-13);
            assert_abs_diff_eq!(t10.im, 0.0, epsilon = 1e-13);

            let t20 = trace(&mul(&mul(&mul(&x, &x), &x), &y));
            assert_abs_diff_eq!(t20.re, theta_20(w2, pq, q2) / (a * a * a * b), epsilon = 1e-13);

            let t11 = trace(&mul(&mul(&mul(&x, &x), &y), &y));
            assert_abs_diff_eq!(t11.re, theta_11(w2, pq, q2, p2) / (a * a * b * b), epsilon = 1e-13);

            for m in [1.0, 0.7] {
                let xm = beta_resolvent(q, m, w);
                let ym = beta_resolvent(k, m, w);
                let t = trace(&mul(&xm, &ym));
                assert_abs_diff_eq!(t.re, mass_trace(m * m, w2, pq, q2, k2), epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn mirrored_traces_match_explicit_dirac_matrices() {
        for (q, p, w) in sample_points() {
            let k = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
            let k2: f64 = k.iter().map(|x| x * x).sum();
            let q2: f64 = q.iter().map(|x| x * x).sum();
            let p2: f64 = p.iter().map(|x| x * x).sum();
            let pq: f64 = (0..3).map(|i| p[i] * q[i]).sum();
            let pk = p2 - pq;
            let w2 = w * w;
            let a = q2 + 1.0 + w2;
            let b = k2 + 1.0 + w2;
            let x = beta_resolvent(q, 1.0, w);
            let y = beta_resolvent(k, 1.0, w);
            let t01 = trace(&mul(&mul(&x, &y), &y));
            assert_abs_diff_eq!(t01.re, theta_10(w2, pk, k2) / (a * b * b), epsilon = 1e-13);
            let t02 = trace(&mul(&mul(&mul(&x, &y), &y), &y));
            assert_abs_diff_eq!(t02.re, theta_20(w2, pk, k2) / (a * b * b * b), epsilon = 1e-13);
        }
    }

    #[test]
    fn integrand_is_third_order_in_field() {
        // halving φ divides the remainder by about 8
        let r1 = brute_force_integrand(0.4, 0.8, 0.3, 1.0, -0.02);
        let r2 = brute_force_integrand(0.4, 0.8, 0.3, 1.0, -0.01);
        assert_relative_eq!(r1 / r2, 8.0, max_relative = 0.05);
    }

    #[test]
    fn singular_piece_examples() {
        assert_eq!(t_sing(0.0, f(-0.3)).unwrap(), 0.0);
        assert_eq!(t_sing(1.0, f(0.0)).unwrap(), 0.0);
        let m2: f64 = 0.64;
        let oracle = composite_simpson(
            |u| {
                let w = u * (1.0 - u);
                w * ((1.0 + w) / (m2 + w)).ln()
            },
            0.0,
            1.0,
            10_000,
        );
        assert_abs_diff_eq!(t_sing(1.0, f(-0.2)).unwrap(), 2.0 * PI * oracle, epsilon = 1e-9);
    }

    #[test]
    fn regular_piece_examples() {
        for p in [0.01, 1.0, 10.0] {
            assert_eq!(t_reg(p, f(0.0)).unwrap(), 0.0);
        }
        assert_eq!(t_reg(0.0, f(-0.2)).unwrap(), 0.0);
        let oracle = composite_simpson(|u| t_reg_integrand(u, 1.0, -0.2), 0.0, 1.0, 10_000);
        assert_abs_diff_eq!(t_reg(1.0, f(-0.2)).unwrap(), 2.0 * PI * oracle, epsilon = 1e-9);
    }

    #[test]
    fn zero_momentum_limit() {
        for x in [-0.1, -0.3, -0.5] {
            let lim = TWO_PI_CUBED * d2v(f(x));
            assert_abs_diff_eq!(t_vac(1e-8, f(x)).unwrap(), lim, epsilon = 1e-12);
        }
    }

    #[test]
    fn vanishes_without_field() {
        for p in [0.01, 0.1, 1.0, 10.0] {
            assert_eq!(t_vac(p, f(0.0)).unwrap(), 0.0);
        }
    }

    #[test]
    fn bubble_limit_is_half_the_curvature() {
        for x in [-0.1, -0.4] {
            let lim = 0.5 * TWO_PI_CUBED * d2v(f(x));
            assert_relative_eq!(t_vac_bubble(1e-6, f(x)).unwrap(), lim, max_relative = 1e-9);
        }
    }

    #[test]
    fn brute_force_matches_bubble() {
        let spec = QuadratureSpec::new(1e-10, 1e-7, 2000).unwrap();
        for (p, x) in [(1.0, -0.2), (0.5, -0.4), (3.0, -0.6)] {
            let brute = brute_force_t_vac(p, f(x), &spec).unwrap();
            let bubble = t_vac_bubble(p, f(x)).unwrap();
            assert_relative_eq!(brute, bubble, max_relative = 1e-4);
        }
    }
}
