//! One-dimensional lattice check of the semiclassical limit.
//!
//! On a periodic box of length `L` with `N` sites the operator is
//! `D_s = εP σ₁ + (1 + sφ) σ₃`, where `P` is the exact Fourier multiplier
//! `p_k = 2πk/L`, `k ∈ [−N/2, N/2)`. Rotating `σ₃` into `σ₂` makes it
//! off-diagonal with blocks `A_s = εP + i(1 + sφ)`, so its eigenvalues are
//! `±σᵢ(A_s)` and `−½Σ|λ| = −Σσᵢ`. The squared singular values are the
//! eigenvalues of the Hermitian `N × N` matrix `A_s†A_s`.

use std::f64::consts::PI;

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{self, ComputeEigenvectors};
use faer::diag::Diag;
use faer::{c64, Mat, Par};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{effective_potential_1d, FieldValue};
use crate::quadrature::{integrate_finite, QuadratureSpec};

/// Lower bound on the lattice momentum cutoff `επN/L`.
pub const MIN_CUTOFF: f64 = 20.0;

/// How the Taylor counterterms `E(0), E′(0), E″(0)` are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum CountertermMethod {
    /// Closed-form perturbation theory around the free operator.
    #[default]
    Exact,
    /// Five-point differences in `s` with one Richardson step.
    FiniteDifference,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeConfig {
    pub n_sites: usize,
    pub box_length: f64,
    pub epsilon: f64,
    /// `φ` at the sites `x_j = −L/2 + jL/N`.
    pub field: Vec<f64>,
    pub fd_step: f64,
    pub counterterms: CountertermMethod,
    /// Add the local contribution of momenta beyond the lattice cutoff.
    pub uv_tail: bool,
}

impl LatticeConfig {
    /// Sample `profile` on the sites of a box and validate.
    pub fn sampled<F: Fn(f64) -> f64>(n_sites: usize, box_length: f64, epsilon: f64, profile: F) -> Result<Self> {
        let field = (0..n_sites).map(|j| profile(site(j, n_sites, box_length))).collect();
        let config = Self {
            n_sites,
            box_length,
            epsilon,
            field,
            fd_step: 1e-2,
            counterterms: CountertermMethod::default(),
            uv_tail: true,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_sites;
        if n < 64 || n % 2 == 1 {
            return Err(Error::InvalidInput(format!("n_sites must be even and >= 64, got {n}")));
        }
        if self.field.len() != n {
            return Err(Error::InvalidInput(format!("field has {} samples for {n} sites", self.field.len())));
        }
        if !(self.box_length > 0.0 && self.box_length.is_finite()) {
            return Err(Error::InvalidInput(format!("box length must be positive, got {}", self.box_length)));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::InvalidInput(format!("epsilon must lie in (0, 1], got {}", self.epsilon)));
        }
        if let Some(x) = self.field.iter().find(|x| !(x.abs() < 1.0)) {
            return Err(Error::InvalidInput(format!("field sample {x} violates |phi| < 1")));
        }
        if self.cutoff() < MIN_CUTOFF {
            return Err(Error::InvalidInput(format!(
                "momentum cutoff {} is below {MIN_CUTOFF}; raise n_sites or epsilon",
                self.cutoff()
            )));
        }
        if !(self.fd_step > 0.0 && self.fd_step < 0.25) {
            return Err(Error::InvalidInput(format!("fd_step must lie in (0, 0.25), got {}", self.fd_step)));
        }
        Ok(())
    }

    /// Largest scaled momentum `επN/L`.
    pub fn cutoff(&self) -> f64 {
        self.epsilon * PI * self.n_sites as f64 / self.box_length
    }

    fn momenta(&self) -> Vec<f64> {
        let n = self.n_sites as i64;
        (-n / 2..n / 2)
            .map(|k| self.epsilon * 2.0 * PI * k as f64 / self.box_length)
            .collect()
    }
}

fn site(j: usize, n: usize, box_length: f64) -> f64 {
    -0.5 * box_length + j as f64 * box_length / n as f64
}

/// `e^{2πi m/N}` for `m ∈ 0..N`.
fn roots(n: usize) -> Vec<c64> {
    (0..n)
        .map(|m| {
            let (s, c) = (2.0 * PI * m as f64 / n as f64).sin_cos();
            c64::new(c, s)
        })
        .collect()
}

/// Index of `k` (possibly negative) modulo `n`.
fn wrap(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

/// First column of the circulant `f(εP)` for the symbol values `sym[k + N/2]`.
fn circulant(sym: &[f64], roots: &[c64]) -> Vec<c64> {
    let n = sym.len();
    let half = (n / 2) as i64;
    let mut col = vec![c64::new(0.0, 0.0); n];
    for d in 0..=n / 2 {
        let mut acc = c64::new(0.0, 0.0);
        for (i, s) in sym.iter().enumerate() {
            let k = i as i64 - half;
            acc += *s * roots[wrap(k * d as i64, n)];
        }
        acc /= n as f64;
        if d == 0 || d == n / 2 {
            acc.im = 0.0;
        }
        col[d] = acc;
        // Hermitian: c(−d) = c(d)*
        col[(n - d) % n] = acc.conj();
    }
    col
}

/// The `2N × 2N` matrix `D_s = εPσ₁ + (1 + sφ)σ₃`, spinor-major blocks.
pub fn build_dirac_1d(config: &LatticeConfig, s: f64) -> Mat<c64> {
    let n = config.n_sites;
    let kin = circulant(&config.momenta(), &roots(n));
    let mass: Vec<f64> = config.field.iter().map(|x| 1.0 + s * x).collect();
    Mat::from_fn(2 * n, 2 * n, |a, b| {
        let (sa, j) = (a / n, a % n);
        let (sb, l) = (b / n, b % n);
        if sa == sb {
            if j == l {
                let m = mass[j];
                c64::new(if sa == 0 { m } else { -m }, 0.0)
            } else {
                c64::new(0.0, 0.0)
            }
        } else {
            kin[wrap(j as i64 - l as i64, n)]
        }
    })
}

/// Symbols `εp_k` and `(εp_k)²` as circulant columns.
struct Kinetic {
    first: Vec<c64>,
    second: Vec<c64>,
}

impl Kinetic {
    fn new(config: &LatticeConfig) -> Self {
        let p = config.momenta();
        let sq: Vec<f64> = p.iter().map(|x| x * x).collect();
        let r = roots(config.n_sites);
        Self {
            first: circulant(&p, &r),
            second: circulant(&sq, &r),
        }
    }
}

/// `A†A = (εP)² + m² + i[εP, m]` for `A = εP + im`.
fn gram(kin: &Kinetic, mass: &[f64]) -> Mat<c64> {
    let n = mass.len();
    Mat::from_fn(n, n, |j, l| {
        let d = wrap(j as i64 - l as i64, n);
        let mut v = kin.second[d] + c64::new(0.0, mass[l] - mass[j]) * kin.first[d];
        if j == l {
            v += mass[j] * mass[j];
        }
        v
    })
}

fn eigenvalues_hermitian(a: &Mat<c64>) -> Result<Vec<f64>> {
    let n = a.nrows();
    let mut s = Diag::<c64>::zeros(n);
    let par = Par::Seq;
    let scratch = evd::self_adjoint_evd_scratch::<c64>(n, ComputeEigenvectors::No, par, Default::default());
    evd::self_adjoint_evd(
        a.as_ref(),
        s.as_mut(),
        None,
        par,
        MemStack::new(&mut MemBuffer::new(scratch)),
        Default::default(),
    )
    .map_err(|e| Error::Eigen(format!("{e:?}")))?;
    Ok(s.column_vector().iter().map(|x| x.re).collect())
}

/// Neumaier-compensated sum.
fn compensated_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for x in it {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
        sum = t;
    }
    sum + comp
}

/// Singular values of `A_s`, ascending.
fn singular_values(config: &LatticeConfig, kin: &Kinetic, s: f64) -> Result<Vec<f64>> {
    let mass: Vec<f64> = config.field.iter().map(|x| 1.0 + s * x).collect();
    let ev = eigenvalues_hermitian(&gram(kin, &mass))?;
    Ok(ev.into_iter().map(|x| x.max(0.0).sqrt()).collect())
}

/// `E(s) = −½ Σ|λ(D_s)|`.
pub fn half_abs_trace(config: &LatticeConfig, s: f64) -> Result<f64> {
    let kin = Kinetic::new(config);
    Ok(-compensated_sum(singular_values(config, &kin, s)?))
}

/// `E(0)`, `E′(0)`, `E″(0)` from perturbation theory around `D_0`.
///
/// With `E_k = √((εp_k)² + 1)` and `φ̂` the discrete Fourier transform,
/// `E(0) = −Σ E_k`, `E′(0) = −φ̄ Σ 1/E_k` and
/// `E″(0) = −2 Σ_{k,k′} |φ̂(k−k′)|² T(k,k′)/(E_k + E_k′)` with the
/// interband weight `T = ½[1 − (1 − ε²p_k p_k′)/(E_k E_k′)]`.
pub fn exact_counterterms(config: &LatticeConfig) -> [f64; 3] {
    let n = config.n_sites;
    let p = config.momenta();
    let e: Vec<f64> = p.iter().map(|x| x.hypot(1.0)).collect();
    let r = roots(n);
    let spectrum: Vec<f64> = (0..n)
        .map(|m| {
            let mut acc = c64::new(0.0, 0.0);
            for (j, x) in config.field.iter().enumerate() {
                acc += *x * r[wrap(-((m * j) as i64), n)];
            }
            (acc / n as f64).norm_sqr()
        })
        .collect();
    let mean = compensated_sum(config.field.iter().copied()) / n as f64;
    let e0 = -compensated_sum(e.iter().copied());
    let e1 = -mean * compensated_sum(e.iter().map(|x| 1.0 / x));
    let half = (n / 2) as i64;
    let e2 = -2.0
        * compensated_sum((0..n).flat_map(|a| {
            let (p, e, spectrum) = (&p, &e, &spectrum);
            (0..n).map(move |b| {
                let w = spectrum[wrap((a as i64 - half) - (b as i64 - half), n)];
                if w == 0.0 {
                    return 0.0;
                }
                let t = 0.5 * (1.0 - (1.0 - p[a] * p[b]) / (e[a] * e[b]));
                w * t / (e[a] + e[b])
            })
        }));
    [e0, e1, e2]
}

/// Energies at `s ∈ {0, ±h/2, ±h, ±2h}` and the Richardson-refined
/// derivatives. Returns the counterterms and the gap between the two
/// step sizes.
fn finite_difference_counterterms(config: &LatticeConfig, kin: &Kinetic) -> Result<([f64; 3], f64)> {
    let h = config.fd_step;
    let steps = [-2.0 * h, -h, -0.5 * h, 0.0, 0.5 * h, h, 2.0 * h];
    let energies: Vec<f64> = steps
        .par_iter()
        .map(|&s| singular_values(config, kin, s).map(|v| -compensated_sum(v)))
        .collect::<Result<_>>()?;
    let e = |i: usize| energies[i];
    // indices: -2h 0, -h 1, -h/2 2, 0 3, h/2 4, h 5, 2h 6
    let d1 = |m2: f64, m1: f64, p1: f64, p2: f64, step: f64| (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * step);
    let d2 = |m2: f64, m1: f64, c: f64, p1: f64, p2: f64, step: f64| {
        (-p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - m2) / (12.0 * step * step)
    };
    let first_h = d1(e(0), e(1), e(5), e(6), h);
    let first_half = d1(e(1), e(2), e(4), e(5), 0.5 * h);
    let second_h = d2(e(0), e(1), e(3), e(5), e(6), h);
    let second_half = d2(e(1), e(2), e(3), e(4), e(5), 0.5 * h);
    let first = first_half + (first_half - first_h) / 15.0;
    let second = second_half + (second_half - second_h) / 15.0;
    let gap = ((first_half - first_h).abs() / first.abs().max(1e-300))
        .max((second_half - second_h).abs() / second.abs().max(1e-300));
    Ok(([e(3), first, second], gap))
}

/// `∫_Λ^∞ rem₂(q, φ) dq` from the large-`q` expansion
/// `rem₂ = Σ_{k≥2} C(½,k) q^{1−2k} Σ_{j≥3} C(2k,j) φʲ`, valid for `Λ > 1 + |φ|`.
fn tail_integral(phi: f64, cutoff: f64) -> f64 {
    let ratio = 1.0 / (cutoff * cutoff);
    let mut binom_half = 0.5; // C(½, 1)
    let mut power = 1.0; // Λ^{2−2k}
    let mut sum = 0.0;
    for k in 2..=60usize {
        binom_half *= (0.5 - (k - 1) as f64) / k as f64;
        power *= ratio;
        // Σ_{j=3}^{2k} C(2k, j) φʲ
        let n = 2 * k;
        let mut c = (n * (n - 1) * (n - 2)) as f64 / 6.0;
        let mut phi_j = phi * phi * phi;
        let mut inner = 0.0;
        for j in 3..=n {
            inner += c * phi_j;
            c *= (n - j) as f64 / (j + 1) as f64;
            phi_j *= phi;
        }
        let term = binom_half * inner * power / (n - 2) as f64;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Contribution of momenta beyond the cutoff, from the constant-field
/// density at each site: `(L/N ε) Σ_j (−1/π) ∫_Λ^∞ rem₂(q, φ_j) dq`.
pub fn uv_tail(config: &LatticeConfig) -> f64 {
    let cutoff = config.cutoff();
    let parts = config.field.iter().map(|&x| -tail_integral(x, cutoff) / PI);
    compensated_sum(parts) * config.box_length / (config.n_sites as f64 * config.epsilon)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeRun {
    /// Eigenvalues of `D_1`, ascending.
    pub spectrum: Vec<f64>,
    pub e_vac: f64,
    /// `E(0)`, `E′(0)`, `E″(0)`.
    pub counterterm_values: [f64; 3],
    /// `E(1)`.
    pub full_energy: f64,
    pub uv_tail: f64,
    /// Relative gap between the two finite-difference step sizes, when used.
    pub fd_gap: Option<f64>,
}

/// Above this relative gap the finite-difference counterterms are rejected.
pub const FD_GAP_LIMIT: f64 = 1e-4;

/// `E(1) − E(0) − E′(0) − ½E″(0)`, plus the cutoff tail when enabled.
pub fn regularized_vacuum_energy_1d(config: &LatticeConfig) -> Result<LatticeRun> {
    config.validate()?;
    let kin = Kinetic::new(config);
    let sigma = singular_values(config, &kin, 1.0)?;
    let full_energy = -compensated_sum(sigma.iter().copied());
    let (ct, fd_gap) = match config.counterterms {
        CountertermMethod::Exact => (exact_counterterms(config), None),
        CountertermMethod::FiniteDifference => {
            let (ct, gap) = finite_difference_counterterms(config, &kin)?;
            if gap > FD_GAP_LIMIT {
                return Err(Error::Numerical(format!(
                    "finite-difference counterterms disagree between steps by {gap:e}; reduce fd_step"
                )));
            }
            (ct, Some(gap))
        }
    };
    let tail = if config.uv_tail { uv_tail(config) } else { 0.0 };
    let e_vac = full_energy - ct[0] - ct[1] - 0.5 * ct[2] + tail;
    let mut spectrum: Vec<f64> = sigma.iter().map(|s| -s).chain(sigma.iter().copied()).collect();
    spectrum.sort_by(f64::total_cmp);
    Ok(LatticeRun {
        spectrum,
        e_vac,
        counterterm_values: ct,
        full_energy,
        uv_tail: tail,
        fd_gap,
    })
}

/// Box, cutoff and counterterm choices shared by every `ε` of a scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanTemplate {
    pub box_length: f64,
    /// Minimal `επN/L`; `N` is the smallest power of two reaching it.
    pub cutoff: f64,
    pub max_sites: usize,
    pub fd_step: f64,
    pub counterterms: CountertermMethod,
    pub uv_tail: bool,
}

impl Default for ScanTemplate {
    fn default() -> Self {
        Self {
            box_length: 16.0,
            cutoff: MIN_CUTOFF,
            max_sites: 4096,
            fd_step: 1e-2,
            counterterms: CountertermMethod::Exact,
            uv_tail: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub epsilon: f64,
    pub n_sites: usize,
    pub e_vac: f64,
    /// `ε·E_vac`.
    pub scaled: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// `∫V₁D(φ(x)) dx` over the box.
    pub reference: f64,
    pub points: Vec<ScanPoint>,
    /// Least-squares slope of `log error` against `log ε`.
    pub exponent: Option<f64>,
    pub strictly_decreasing: bool,
}

/// Compare `ε·E_vac(φ(ε·))` with `∫V₁D(φ)` for each `ε`.
pub fn semiclassical_check<F>(profile: F, epsilons: &[f64], template: &ScanTemplate) -> Result<ConvergenceReport>
where
    F: Fn(f64) -> f64 + Sync,
{
    let l = template.box_length;
    let spec = QuadratureSpec::new(1e-14, 1e-12, 4000)?;
    let reference = integrate_finite(
        |x| FieldValue::new(profile(x)).map(effective_potential_1d).unwrap_or(f64::NAN),
        -0.5 * l,
        0.5 * l,
        &spec,
    )?
    .value;
    if !reference.is_finite() {
        return Err(Error::InvalidInput("profile leaves the domain |phi| < 1".into()));
    }

    let mut points = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let needed = (template.cutoff * l / (PI * eps)).ceil() as usize;
        let n_sites = needed.max(64).next_power_of_two();
        if n_sites > template.max_sites {
            return Err(Error::InvalidInput(format!(
                "epsilon {eps} needs {n_sites} sites, above the limit {}",
                template.max_sites
            )));
        }
        let mut config = LatticeConfig::sampled(n_sites, l, eps, &profile)?;
        config.fd_step = template.fd_step;
        config.counterterms = template.counterterms;
        config.uv_tail = template.uv_tail;
        let run = regularized_vacuum_energy_1d(&config)?;
        let scaled = eps * run.e_vac;
        points.push(ScanPoint {
            epsilon: eps,
            n_sites,
            e_vac: run.e_vac,
            scaled,
            error: (scaled - reference).abs(),
        });
    }

    let strictly_decreasing = points.windows(2).all(|w| w[1].error < w[0].error);
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.error > 0.0)
        .map(|p| (p.epsilon.ln(), p.error.ln()))
        .collect();
    let exponent = (usable.len() >= 2).then(|| {
        let n = usable.len() as f64;
        let mx = usable.iter().map(|p| p.0).sum::<f64>() / n;
        let my = usable.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = usable.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = usable.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    });
    Ok(ConvergenceReport {
        reference,
        points,
        exponent,
        strictly_decreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn constant(n: usize, l: f64, eps: f64, x: f64) -> LatticeConfig {
        LatticeConfig::sampled(n, l, eps, |_| x).unwrap()
    }

    fn bump(n: usize, l: f64, eps: f64) -> LatticeConfig {
        LatticeConfig::sampled(n, l, eps, |x| 0.4 * (-0.5 * x * x).exp()).unwrap()
    }

    fn full_eigenvalues(config: &LatticeConfig, s: f64) -> Vec<f64> {
        eigenvalues_hermitian(&build_dirac_1d(config, s)).unwrap()
    }

    #[test]
    fn dirac_matrix_is_hermitian() {
        let d = build_dirac_1d(&bump(64, 10.0, 1.0), 1.0);
        for a in 0..128 {
            for b in 0..128 {
                assert_eq!(d[(a, b)], d[(b, a)].conj());
            }
        }
    }

    #[test]
    fn free_spectrum() {
        let c = constant(64, 8.0, 1.0, 0.0);
        let mut want: Vec<f64> = c.momenta().iter().flat_map(|p| [p.hypot(1.0), -p.hypot(1.0)]).collect();
        want.sort_by(f64::total_cmp);
        for (got, want) in full_eigenvalues(&c, 1.0).iter().zip(&want) {
            assert!((got - want).abs() < 1e-11);
        }
    }

    #[test]
    fn constant_mass_spectrum() {
        let c = constant(64, 8.0, 1.0, 0.3);
        let mut want: Vec<f64> = c.momenta().iter().flat_map(|p| [p.hypot(1.3), -p.hypot(1.3)]).collect();
        want.sort_by(f64::total_cmp);
        let got = regularized_vacuum_energy_1d(&c).unwrap().spectrum;
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-11);
        }
        // symmetric about zero
        for (a, b) in got.iter().zip(got.iter().rev()) {
            assert!((a + b).abs() < 1e-10);
        }
    }

    #[test]
    fn chiral_reduction_matches_full_matrix() {
        let c = bump(64, 10.0, 1.0);
        let full: f64 = full_eigenvalues(&c, 0.7).iter().map(|x| x.abs()).sum();
        assert_relative_eq!(-0.5 * full, half_abs_trace(&c, 0.7).unwrap(), max_relative = 1e-13);
    }

    #[test]
    fn tail_expansion_matches_quadrature() {
        use crate::oracle::dispersion_remainder;
        use crate::quadrature::integrate_from;
        let spec = QuadratureSpec::new(1e-18, 1e-12, 2000).unwrap();
        for (x, cutoff) in [(0.3, 20.0), (-0.7, 25.0), (0.95, 40.0), (1e-3, 20.0)] {
            let phi = FieldValue::new(x).unwrap();
            let want = integrate_from(|q| dispersion_remainder(q, phi, 2).unwrap(), cutoff, &spec)
                .unwrap()
                .value;
            assert_relative_eq!(tail_integral(x, cutoff), want, max_relative = 1e-9);
        }
    }

    #[test]
    fn zero_field_has_zero_energy() {
        let run = regularized_vacuum_energy_1d(&constant(64, 8.0, 1.0, 0.0)).unwrap();
        assert_eq!(run.uv_tail, 0.0);
        assert!(run.e_vac.abs() < 1e-10, "{}", run.e_vac);
    }

    #[test]
    fn constant_field_matches_density() {
        let (l, eps) = (8.0, 0.5);
        let run = regularized_vacuum_energy_1d(&constant(128, l, eps, 0.3)).unwrap();
        let want = l * effective_potential_1d(FieldValue::new(0.3).unwrap()) / eps;
        assert_relative_eq!(run.e_vac, want, max_relative = 1e-4);
    }

    #[test]
    fn exact_counterterms_match_differences() {
        let mut c = bump(128, 10.0, 0.5);
        let exact = exact_counterterms(&c);
        c.counterterms = CountertermMethod::FiniteDifference;
        let kin = Kinetic::new(&c);
        let (fd, gap) = finite_difference_counterterms(&c, &kin).unwrap();
        assert!(gap < FD_GAP_LIMIT);
        assert_relative_eq!(exact[0], fd[0], max_relative = 1e-14);
        assert_relative_eq!(exact[1], fd[1], max_relative = 1e-8);
        assert_relative_eq!(exact[2], fd[2], max_relative = 1e-6);
    }

    #[test]
    fn fd_step_robustness() {
        let mut c = bump(128, 10.0, 0.5);
        c.counterterms = CountertermMethod::FiniteDifference;
        let a = regularized_vacuum_energy_1d(&c).unwrap();
        c.fd_step *= 0.5;
        let b = regularized_vacuum_energy_1d(&c).unwrap();
        assert_relative_eq!(a.counterterm_values[2], b.counterterm_values[2], max_relative = 1e-6);
    }

    #[test]
    fn field_reversal_flips_only_linear_term() {
        let c = bump(128, 10.0, 0.5);
        let mut r = c.clone();
        r.field.iter_mut().for_each(|x| *x = -*x);
        let a = exact_counterterms(&c);
        let b = exact_counterterms(&r);
        assert_eq!(a[0], b[0]);
        assert_eq!(a[1], -b[1]);
        assert_relative_eq!(a[2], b[2], max_relative = 1e-14);
    }

    #[test]
    fn translation_and_reflection_invariance() {
        let c = bump(128, 10.0, 0.5);
        let base = regularized_vacuum_energy_1d(&c).unwrap().e_vac;
        let mut shifted = c.clone();
        shifted.field.rotate_left(17);
        let mut reflected = c.clone();
        // x_j → −x_j maps site j to N − j
        reflected.field = (0..c.n_sites).map(|j| c.field[(c.n_sites - j) % c.n_sites]).collect();
        for other in [shifted, reflected] {
            let e = regularized_vacuum_energy_1d(&other).unwrap().e_vac;
            assert_relative_eq!(e, base, max_relative = 1e-10);
        }
    }

    #[test]
    fn cutoff_stability() {
        let a = regularized_vacuum_energy_1d(&bump(1024, 10.0, 0.5)).unwrap().e_vac;
        let b = regularized_vacuum_energy_1d(&bump(2048, 10.0, 0.5)).unwrap().e_vac;
        assert_relative_eq!(a, b, max_relative = 1e-6);
    }

    #[test]
    fn rejects_invalid_configs() {
        assert!(LatticeConfig::sampled(62, 8.0, 1.0, |_| 0.1).is_err());
        assert!(LatticeConfig::sampled(64, 8.0, 1.0, |_| 1.0).is_err());
        assert!(LatticeConfig::sampled(64, 64.0, 1.0, |_| 0.1).is_err());
    }

    #[test]
    fn zero_amplitude_scan() {
        let t = ScanTemplate { box_length: 8.0, ..ScanTemplate::default() };
        let r = semiclassical_check(|_| 0.0, &[1.0, 0.5], &t).unwrap();
        assert_eq!(r.reference, 0.0);
        assert!(r.points.iter().all(|p| p.error < 1e-10));
    }
}
