//! Deterministic one-dimensional numerical kernels.
//!
//! Everything here is re-entrant and free of hidden state: the adaptive
//! integrator always bisects the interval with the largest error estimate
//! (ties broken by insertion order), so identical inputs give bit-identical
//! outputs.

mod kronrod;
mod scalar;

pub use scalar::{find_root_bracketed, minimize_scalar, Minimum};

use crate::error::{Error, Result};
use kronrod::{gk21, RULE_EVALUATIONS};

/// Tolerances and subdivision budget for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidInput(format!(
                "quadrature tolerances must be positive (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidInput(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Adaptive integral of `f` over `[a, b]`.
///
/// Endpoints are never evaluated, so integrable endpoint singularities are fine.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<IntegrationResult>
where
    F: FnMut(f64) -> f64,
{
    integrate_with_breakpoints(f, &[a, b], spec)
}

/// Like [`integrate_finite`], but seeds the subdivision with the given
/// (sorted) breakpoints. Kinks and jumps of the integrand belong here.
pub fn integrate_with_breakpoints<F>(
    mut f: F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegrationResult>
where
    F: FnMut(f64) -> f64,
{
    spec.validate()?;
    if points.len() < 2 {
        return Err(Error::InvalidInput("need at least two breakpoints".into()));
    }
    for w in points.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "breakpoints must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }

    let mut segments: Vec<Segment> = Vec::with_capacity(spec.max_subdivisions + points.len());
    let mut evaluations = 0;
    for w in points.windows(2) {
        let est = gk21(&mut f, w[0], w[1]);
        evaluations += RULE_EVALUATIONS;
        segments.push(Segment {
            a: w[0],
            b: w[1],
            value: est.value,
            error: est.error,
        });
    }

    let total = |segs: &[Segment]| -> (f64, f64) {
        segs.iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
    };

    let mut bisections = 0;
    loop {
        let (value, error) = total(&segments);
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::QuadratureFailed {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        let target = spec.abs_tol.max(spec.rel_tol * value.abs());
        if error <= target {
            return Ok(IntegrationResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        if bisections >= spec.max_subdivisions {
            return Err(Error::QuadratureFailed {
                value,
                error_estimate: error,
                evaluations,
            });
        }

        let worst = segments
            .iter()
            .enumerate()
            .fold(0, |best, (i, s)| if s.error > segments[best].error { i } else { best });
        let seg = segments[worst];
        let mid = 0.5 * (seg.a + seg.b);
        if !(seg.a < mid && mid < seg.b) {
            // interval exhausted at machine resolution
            return Err(Error::QuadratureFailed {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        let left = gk21(&mut f, seg.a, mid);
        let right = gk21(&mut f, mid, seg.b);
        evaluations += 2 * RULE_EVALUATIONS;
        bisections += 1;
        segments[worst] = Segment {
            a: seg.a,
            b: mid,
            value: left.value,
            error: left.error,
        };
        segments.push(Segment {
            a: mid,
            b: seg.b,
            value: right.value,
            error: right.error,
        });
    }
}

/// Integral of `f` over `[0, ∞)` via the map `x = t / (1 - t)`.
pub fn integrate_semi_infinite<F>(f: F, spec: &QuadratureSpec) -> Result<IntegrationResult>
where
    F: FnMut(f64) -> f64,
{
    integrate_from(f, 0.0, spec)
}

/// Integral of `f` over `[a, ∞)`.
pub fn integrate_from<F>(mut f: F, a: f64, spec: &QuadratureSpec) -> Result<IntegrationResult>
where
    F: FnMut(f64) -> f64,
{
    let mapped = |t: f64| {
        let s = 1.0 - t;
        let x = a + t / s;
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v / (s * s)
        }
    };
    integrate_finite(mapped, 0.0, 1.0, spec)
}

/// Cauchy principal value of `∫_a^b f` with a simple pole at `c ∈ (a, b)`.
///
/// The symmetric neighbourhood `c ± t` is folded onto `[0, d]` so the pole
/// cancels pointwise; the leftover one-sided piece is integrated normally.
pub fn principal_value<F>(
    mut f: F,
    c: f64,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult>
where
    F: FnMut(f64) -> f64,
{
    if !(a < c && c < b) {
        return Err(Error::InvalidInput(format!(
            "pole {c} must lie strictly inside ({a}, {b})"
        )));
    }
    let d = (c - a).min(b - c);
    // Offsets below this no longer move `c` by a resolvable amount.
    let floor = 1e3 * f64::EPSILON * c.abs().max(f64::MIN_POSITIVE);

    // A pole of higher order leaves t * |f(c+t) + f(c-t)| comparable to
    // t * |f(c+t)|, and neither decays as t -> 0.
    let probe = |f: &mut F, t: f64| {
        let up = f(c + t);
        let down = f(c - t);
        (t * up.abs(), t * (up + down).abs())
    };
    let t_small = (d * 1e-9).max(floor);
    let t_large = (t_small * 1e3).min(0.5 * d);
    if t_large > t_small {
        let (r1, _) = probe(&mut f, t_large);
        let (r2, s2) = probe(&mut f, t_small);
        if !(r1.is_finite() && r2.is_finite() && s2.is_finite()) {
            return Err(Error::DivergentPrincipalValue(c));
        }
        if r2 > 0.5 * r1 && r2 > 0.0 && s2 > 0.5 * r2 {
            return Err(Error::DivergentPrincipalValue(c));
        }
    }

    // The symmetric sliver around a pole this close to an endpoint
    // contributes O(d·f'), far below any tolerance.
    let folded = if d > floor {
        integrate_finite(|t| f(c + t) + f(c - t), 0.0, d, spec)?
    } else {
        IntegrationResult { value: 0.0, error_estimate: 0.0, evaluations: 0 }
    };

    let rest = if c - a > b - c {
        if c - d > a {
            Some(integrate_finite(&mut f, a, c - d, spec)?)
        } else {
            None
        }
    } else if c + d < b {
        Some(integrate_finite(&mut f, c + d, b, spec)?)
    } else {
        None
    };

    Ok(match rest {
        Some(r) => IntegrationResult {
            value: folded.value + r.value,
            error_estimate: folded.error_estimate + r.error_estimate,
            evaluations: folded.evaluations + r.evaluations + 4,
        },
        None => IntegrationResult {
            evaluations: folded.evaluations + 4,
            ..folded
        },
    })
}

/// Fixed composite Simpson rule on `n` (even) panels. Used as an
/// independent reference in tests and cross-checks.
pub fn composite_simpson<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 1 { n + 1 } else { n.max(2) };
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * x * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (x * p0 - p1) / (x * x - 1.0);
            let dx = p0 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
