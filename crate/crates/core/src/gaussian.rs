//! The Gaussian channel in standard form:
//!
//! ```text
//! Y1 = X1 + a·X2 + Z1
//! Y2 = |b|·X1 + X2 + Z2,     Z1, Z2 ~ CN(0, 1),  E|Xi|² ≤ Pi
//! ```
//!
//! Mutual informations are in bits; the inputs and noise are complex
//! circularly symmetric, so `I = log2 det(...)` without a factor ½.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::region::{contains, max_gap, max_ratio, union_hull, Halfspace, RateRegion, NESTING_TOL};

/// Default number of points on the α and τ grids.
pub const DEFAULT_STEPS: usize = 1001;

/// Multiples of the Costa scaling swept by [`inner_region_swept`].
pub const DEFAULT_LAMBDA_SCALES: [f64; 11] = [0.0, 0.5, 0.8, 0.9, 0.95, 1.0, 1.05, 1.1, 1.2, 1.5, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianChannelParams {
    #[serde(deserialize_with = "gain")]
    pub a: Complex64,
    #[serde(deserialize_with = "gain")]
    pub b: Complex64,
    pub p1: f64,
    pub p2: f64,
}

/// A gain is either a real number or a `[re, im]` pair.
#[derive(Deserialize)]
#[serde(untagged)]
enum GainRepr {
    Real(f64),
    Complex([f64; 2]),
}

impl From<GainRepr> for Complex64 {
    fn from(g: GainRepr) -> Self {
        match g {
            GainRepr::Real(x) => Complex64::new(x, 0.0),
            GainRepr::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

fn gain<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Complex64, D::Error> {
    GainRepr::deserialize(d).map(Into::into)
}

fn gains<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Complex64>, D::Error> {
    Vec::<GainRepr>::deserialize(d).map(|v| v.into_iter().map(Into::into).collect())
}

impl GaussianChannelParams {
    pub fn new(a: Complex64, b: Complex64, p1: f64, p2: f64) -> Result<Self> {
        let p = Self { a, b, p1, p2 };
        p.validate()?;
        Ok(p)
    }

    pub fn real(a: f64, b: f64, p1: f64, p2: f64) -> Result<Self> {
        Self::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0), p1, p2)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.a.re, self.a.im, self.b.re, self.b.im].iter().all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("channel gains must be finite".into()));
        }
        for (name, p) in [("p1", self.p1), ("p2", self.p2)] {
            if !(p >= 0.0) || !p.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be a finite nonnegative power, got {p}")));
            }
        }
        Ok(())
    }

    pub fn b_abs(&self) -> f64 {
        self.b.norm()
    }
}

impl fmt::Display for GaussianChannelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={} P1={} P2={}", self.a, self.b, self.p1, self.p2)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    Ok(())
}

fn check_steps(name: &str, steps: usize) -> Result<()> {
    if steps < 2 {
        return Err(Error::InvalidParameter(format!("{name} must be at least 2, got {steps}")));
    }
    Ok(())
}

/// `k/(n-1)` for `k = 0..n`, with both endpoints exact.
fn unit_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| if k + 1 == n { 1.0 } else { k as f64 / (n - 1) as f64 }).collect()
}

/// `log2(1 + x)`
pub fn cap(x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::NegativeArgument(x));
    }
    Ok(x.ln_1p() / std::f64::consts::LN_2)
}

/// `cap` for arguments that are nonnegative up to rounding.
fn c(x: f64) -> f64 {
    x.max(0.0).ln_1p() / std::f64::consts::LN_2
}

/// `(R1 bound, sum-rate bound)` of the outer bound at power split `alpha`.
pub fn outer_bounds(params: &GaussianChannelParams, alpha: f64) -> Result<(f64, f64)> {
    params.validate()?;
    check_alpha(alpha)?;
    let b2 = params.b_abs().powi(2);
    let abar = 1.0 - alpha;
    let r1 = c(alpha * b2.min(1.0) * params.p1);
    let sum = c(params.p2 + b2 * params.p1 + 2.0 * (abar * b2 * params.p1 * params.p2).sqrt());
    Ok((r1, sum))
}

pub fn outer_region(params: &GaussianChannelParams, alpha_steps: usize) -> Result<RateRegion> {
    check_steps("alpha_steps", alpha_steps)?;
    let regions = unit_grid(alpha_steps)
        .into_iter()
        .map(|al| outer_bounds(params, al).map(|(r1, s)| RateRegion::r1_sum(r1, s)))
        .collect::<Result<Vec<_>>>()?;
    union_hull(&regions)
}

/// `αP1·h / (αP1 + σ²)`
pub fn lambda_costa(h: Complex64, sigma2: f64, alpha: f64, p1: f64) -> Result<Complex64> {
    if !(sigma2 > 0.0) {
        return Err(Error::InvalidParameter(format!("noise variance must be positive, got {sigma2}")));
    }
    let q = alpha * p1;
    Ok(h * (q / (q + sigma2)))
}

/// `κ / λ_Costa(h, σ²)`, with `0/0` read as 0.
fn precoding_ratio(kappa: Complex64, costa: Complex64) -> Result<Complex64> {
    if kappa == Complex64::new(0.0, 0.0) {
        Ok(Complex64::new(0.0, 0.0))
    } else if costa == Complex64::new(0.0, 0.0) {
        Err(Error::PrecodingRatioUndefined)
    } else {
        Ok(kappa / costa)
    }
}

/// Dirty-paper rate `I(Y; U) − I(U; S)` for `Y = X̂ + h·S + Z`, `U = X̂ + κ·S`,
/// with `X̂ ~ CN(0, αP1)`, `S ~ CN(0, P2)`, `Z ~ CN(0, σ²)`:
///
/// ```text
/// log2 (σ² + αP1) / (σ² + αP1·|h|²·P2·|κ/λ_Costa − 1|² / (αP1 + σ² + |h|²P2))
/// ```
///
/// See [`f_term_printed`] for the variant with the unsquared modulus.
pub fn f_term(h: Complex64, sigma2: f64, kappa: Complex64, alpha: f64, params: &GaussianChannelParams) -> Result<f64> {
    check_alpha(alpha)?;
    let costa = lambda_costa(h, sigma2, alpha, params.p1)?;
    let ratio = precoding_ratio(kappa, costa)?;
    let q = alpha * params.p1;
    let h2p2 = h.norm_sqr() * params.p2;
    let penalty = q * h2p2 * (ratio - 1.0).norm_sqr() / (q + sigma2 + h2p2);
    Ok(((sigma2 + q) / (sigma2 + penalty)).log2())
}

/// The same quantity with the penalty weight `αP1|h|²P2 / (αP1|h|²P2 + σ²)` and
/// the modulus `|κ/λ_Costa − 1|` unsquared. It agrees with [`f_term`] at
/// `κ = λ_Costa` and nowhere else in general.
pub fn f_term_printed(
    h: Complex64,
    sigma2: f64,
    kappa: Complex64,
    alpha: f64,
    params: &GaussianChannelParams,
) -> Result<f64> {
    check_alpha(alpha)?;
    let costa = lambda_costa(h, sigma2, alpha, params.p1)?;
    let ratio = precoding_ratio(kappa, costa)?;
    let w = alpha * params.p1 * h.norm_sqr() * params.p2;
    let weight = if w == 0.0 { 0.0 } else { w / (w + sigma2) };
    Ok(((sigma2 + alpha * params.p1) / (sigma2 + weight * (ratio - 1.0).norm())).log2())
}

/// Power split and dirty-paper scaling for scheme E:
/// `X1 = X̂1 + g·X2`, `U1c = X̂1 + λ·h1·X2` with `h1 = a + g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeEAssignment {
    pub alpha: f64,
    pub lambda: f64,
    /// `g = sqrt(ᾱP1/P2)`, or 0 when `P2 = 0`.
    pub superposition_gain: f64,
}

impl SchemeEAssignment {
    pub fn new(params: &GaussianChannelParams, alpha: f64, lambda: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !lambda.is_finite() {
            return Err(Error::InvalidParameter("lambda must be finite".into()));
        }
        let g = if params.p2 > 0.0 { ((1.0 - alpha) * params.p1 / params.p2).sqrt() } else { 0.0 };
        Ok(Self { alpha, lambda, superposition_gain: g })
    }

    /// The Costa choice `λ = αP1 / (αP1 + 1)`.
    pub fn costa(params: &GaussianChannelParams, alpha: f64) -> Result<Self> {
        let q = alpha * params.p1;
        Self::new(params, alpha, q / (q + 1.0))
    }

    pub fn validate(&self, params: &GaussianChannelParams) -> Result<()> {
        check_alpha(self.alpha)?;
        if params.p2 > 0.0 {
            let want = (1.0 - self.alpha) * params.p1;
            let got = self.superposition_gain.powi(2) * params.p2;
            if (got - want).abs() > 1e-12 * want.max(1.0) {
                return Err(Error::InvalidParameter(format!("superposition gain spends {got} of the {want} available")));
            }
        } else if self.superposition_gain != 0.0 {
            return Err(Error::InvalidParameter("superposition gain must be 0 when P2 = 0".into()));
        }
        Ok(())
    }

    /// Total `X2` coefficient seen at receiver 1.
    pub fn h1(&self, params: &GaussianChannelParams) -> Complex64 {
        params.a + self.superposition_gain
    }

    /// Coefficient of `X2` in `U1c`.
    pub fn kappa(&self, params: &GaussianChannelParams) -> Complex64 {
        self.h1(params) * self.lambda
    }
}

/// Right-hand sides of the scheme-E region
/// `{R1 ≤ min(r1_binned, r1_y2), R1 + R2 ≤ min(sum_a, sum_b)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeEBounds {
    /// `I(Y1; U1c) − I(U1c; X2)`
    pub r1_binned: f64,
    /// `I(Y2; X1 | X2)`
    pub r1_y2: f64,
    /// `I(Y1; U1c) + I(Y2; X2 | U1c)`
    pub sum_a: f64,
    /// `I(Y2; X1, X2)`
    pub sum_b: f64,
}

impl SchemeEBounds {
    pub fn r1(&self) -> f64 {
        self.r1_binned.min(self.r1_y2)
    }

    pub fn sum(&self) -> f64 {
        self.sum_a.min(self.sum_b)
    }

    /// `{origin}` when the binning rate is negative (the scheme is infeasible).
    pub fn region(&self) -> RateRegion {
        let (r1, s) = (self.r1(), self.sum());
        if !(r1 >= 0.0 && s >= 0.0) || !r1.is_finite() || !s.is_finite() {
            return RateRegion::origin();
        }
        RateRegion::r1_sum(r1, s)
    }
}

/// Closed-form scheme-E bounds via [`f_term`].
pub fn inner_bounds_scheme_e(params: &GaussianChannelParams, asg: &SchemeEAssignment) -> Result<SchemeEBounds> {
    params.validate()?;
    asg.validate(params)?;
    let alpha = asg.alpha;
    let b = params.b_abs();
    let q = alpha * params.p1;
    let kappa = asg.kappa(params);
    let (_, sum_b) = outer_bounds(params, alpha)?;
    let f1 = f_term(asg.h1(params), 1.0, kappa, alpha, params)?;
    // I(Y2; U1c) − I(U1c; X2), from Y2/|b| = X̂1 + (1/|b| + g)·X2 + Z2/|b|
    let f2 = if b > 0.0 {
        let h2 = Complex64::new(1.0 / b + asg.superposition_gain, 0.0);
        f_term(h2, 1.0 / (b * b), kappa, alpha, params)?
    } else if kappa.norm_sqr() == 0.0 {
        0.0
    } else if q == 0.0 {
        return Err(Error::PrecodingRatioUndefined);
    } else {
        -c(kappa.norm_sqr() * params.p2 / (q * (params.p2 + 1.0)))
    };
    Ok(SchemeEBounds { r1_binned: f1, r1_y2: c(q * b * b), sum_a: sum_b + f1 - f2, sum_b })
}

/// Zero-mean jointly Gaussian vectors that are linear maps of `N` independent
/// circularly symmetric sources with the given variances.
#[derive(Debug, Clone, Copy)]
pub struct LinearGaussian<const N: usize> {
    variances: [f64; N],
}

/// A linear combination of the sources.
pub type Row<const N: usize> = [Complex64; N];

const MAX_ROWS: usize = 8;
const RANK_TOL: f64 = 1e-12;

impl<const N: usize> LinearGaussian<N> {
    pub fn new(variances: [f64; N]) -> Result<Self> {
        if variances.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidParameter("source variances must be finite and nonnegative".into()));
        }
        Ok(Self { variances })
    }

    /// `(log2 pdet Σ, rank Σ)` for the covariance of the stacked rows, by
    /// diagonally pivoted LDLᴴ.
    fn log2_pdet(&self, groups: &[&[Row<N>]]) -> Result<(f64, usize)> {
        let rows: Vec<&Row<N>> = groups.iter().flat_map(|g| g.iter()).collect();
        let n = rows.len();
        if n > MAX_ROWS {
            return Err(Error::DimensionMismatch(format!("at most {MAX_ROWS} rows, got {n}")));
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut m = [[zero; MAX_ROWS]; MAX_ROWS];
        for i in 0..n {
            for j in 0..=i {
                let mut s = zero;
                for k in 0..N {
                    s += rows[i][k] * rows[j][k].conj() * self.variances[k];
                }
                m[i][j] = s;
                m[j][i] = s.conj();
            }
        }
        let original = m;
        let scale = (0..n).map(|i| m[i][i].re).fold(0.0, f64::max);
        let tol = RANK_TOL * scale;
        let mut acc = 0.0;
        for k in 0..n {
            let (p, d) = (k..n).map(|i| (i, m[i][i].re)).fold((k, f64::NEG_INFINITY), |x, y| if y.1 > x.1 { y } else { x });
            if d <= tol {
                let least = (k..n).map(|i| m[i][i].re).fold(f64::INFINITY, f64::min);
                if least < -tol {
                    return Err(Error::NotPositiveSemidefinite { eigenvalue: min_eigenvalue(&original, n) });
                }
                return Ok((acc, k));
            }
            m.swap(p, k);
            for row in m.iter_mut().take(n) {
                row.swap(p, k);
            }
            acc += d.log2();
            for i in k + 1..n {
                let li = m[i][k] / d;
                for j in k + 1..n {
                    let mjk = m[j][k].conj();
                    m[i][j] -= li * mjk;
                }
            }
        }
        Ok((acc, n))
    }

    /// `I(A; B | C)` in bits; infinite when `A` and `B` share a noiseless
    /// component given `C`.
    pub fn cond_mi(&self, a: &[Row<N>], b: &[Row<N>], c: &[Row<N>]) -> Result<f64> {
        let (l_ac, r_ac) = self.log2_pdet(&[a, c])?;
        let (l_bc, r_bc) = self.log2_pdet(&[b, c])?;
        let (l_abc, r_abc) = self.log2_pdet(&[a, b, c])?;
        let (l_c, r_c) = self.log2_pdet(&[c])?;
        if r_ac + r_bc > r_abc + r_c {
            return Ok(f64::INFINITY);
        }
        Ok((l_ac + l_bc - l_abc - l_c).max(0.0))
    }

    pub fn mi(&self, a: &[Row<N>], b: &[Row<N>]) -> Result<f64> {
        self.cond_mi(a, b, &[])
    }
}

fn min_eigenvalue(m: &[[Complex64; MAX_ROWS]; MAX_ROWS], n: usize) -> f64 {
    let dm = DMatrix::from_fn(n, n, |i, j| m[i][j]);
    SymmetricEigen::new(dm).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Rows over the sources `(X̂1, X2, Z1, Z2)` for one power split.
struct Signals {
    model: LinearGaussian<4>,
    x1: Row<4>,
    x2: Row<4>,
    y1: Row<4>,
    y2: Row<4>,
}

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl Signals {
    fn new(params: &GaussianChannelParams, alpha: f64, g: f64) -> Result<Self> {
        let z = cx(0.0);
        let b = params.b_abs();
        Ok(Self {
            model: LinearGaussian::new([alpha * params.p1, params.p2, 1.0, 1.0])?,
            x1: [cx(1.0), cx(g), z, z],
            x2: [z, cx(1.0), z, z],
            y1: [cx(1.0), params.a + g, cx(1.0), z],
            y2: [cx(b), cx(b * g + 1.0), z, cx(1.0)],
        })
    }
}

/// Scheme-E bounds from the joint covariance of `(X̂1, X2, U1c, X1, Y1, Y2)`.
pub fn gaussian_mi_oracle(params: &GaussianChannelParams, asg: &SchemeEAssignment) -> Result<SchemeEBounds> {
    params.validate()?;
    asg.validate(params)?;
    let s = Signals::new(params, asg.alpha, asg.superposition_gain)?;
    let z = cx(0.0);
    let u = [cx(1.0), asg.kappa(params), z, z];
    let m = &s.model;
    let y1_u = m.mi(&[s.y1], &[u])?;
    Ok(SchemeEBounds {
        r1_binned: y1_u - m.mi(&[u], &[s.x2])?,
        r1_y2: m.cond_mi(&[s.y2], &[s.x1], &[s.x2])?,
        sum_a: y1_u + m.cond_mi(&[s.y2], &[s.x2], &[u])?,
        sum_b: m.mi(&[s.y2], &[s.x1, s.x2])?,
    })
}

/// Bounds of the scheme in which both receivers decode both messages
/// (`U1c = X1`, `U2c = X2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeDBounds {
    /// `min(I(Y1; X1 | X2), I(Y2; X1 | X2))`
    pub r1: f64,
    /// `min(I(Y1; X1, X2), I(Y2; X1, X2))`
    pub sum: f64,
    /// `I(Y1; X1, X2) + I(Y2; X1 | X2)`
    pub two_r1_plus_r2: f64,
}

impl SchemeDBounds {
    pub fn region(&self) -> RateRegion {
        RateRegion::new(vec![
            Halfspace::r1(self.r1),
            Halfspace::sum(self.sum),
            Halfspace { c1: 2.0, c2: 1.0, bound: self.two_r1_plus_r2 },
        ])
        .expect("finite bounds")
    }
}

pub fn scheme_d_bounds(params: &GaussianChannelParams, alpha: f64) -> Result<SchemeDBounds> {
    let asg = SchemeEAssignment::new(params, alpha, 0.0)?;
    let s = Signals::new(params, alpha, asg.superposition_gain)?;
    let m = &s.model;
    let y1_x1 = m.cond_mi(&[s.y1], &[s.x1], &[s.x2])?;
    let y2_x1 = m.cond_mi(&[s.y2], &[s.x1], &[s.x2])?;
    let y1_all = m.mi(&[s.y1], &[s.x1, s.x2])?;
    let y2_all = m.mi(&[s.y2], &[s.x1, s.x2])?;
    Ok(SchemeDBounds { r1: y1_x1.min(y2_x1), sum: y1_all.min(y2_all), two_r1_plus_r2: y1_all + y2_x1 })
}

fn hull_over_alpha(
    params: &GaussianChannelParams,
    alpha_steps: usize,
    region_at: impl Fn(f64) -> Result<RateRegion>,
) -> Result<RateRegion> {
    check_steps("alpha_steps", alpha_steps)?;
    params.validate()?;
    let regions = unit_grid(alpha_steps).into_iter().map(region_at).collect::<Result<Vec<_>>>()?;
    union_hull(&regions)
}

/// Scheme E with the Costa scaling, evaluated by the oracle, over the α grid.
pub fn inner_region(params: &GaussianChannelParams, alpha_steps: usize) -> Result<RateRegion> {
    hull_over_alpha(params, alpha_steps, |al| {
        Ok(gaussian_mi_oracle(params, &SchemeEAssignment::costa(params, al)?)?.region())
    })
}

/// Scheme E with `λ = s·λ_Costa` for each scale `s`, over the α grid.
pub fn inner_region_swept(params: &GaussianChannelParams, alpha_steps: usize, scales: &[f64]) -> Result<RateRegion> {
    if scales.is_empty() {
        return Err(Error::EmptyInput("at least one lambda scale"));
    }
    hull_over_alpha(params, alpha_steps, |al| {
        let costa = SchemeEAssignment::costa(params, al)?;
        let regions = scales
            .iter()
            .map(|s| {
                let asg = SchemeEAssignment::new(params, al, costa.lambda * s)?;
                Ok(gaussian_mi_oracle(params, &asg)?.region())
            })
            .collect::<Result<Vec<_>>>()?;
        union_hull(&regions)
    })
}

pub fn scheme_d_region(params: &GaussianChannelParams, alpha_steps: usize) -> Result<RateRegion> {
    hull_over_alpha(params, alpha_steps, |al| Ok(scheme_d_bounds(params, al)?.region()))
}

/// Rate pair when user 1 transmits a fraction `tau` of the time at power `P1/τ`
/// and user 2 the rest at power `P2/(1−τ)`.
pub fn time_division_point(params: &GaussianChannelParams, tau: f64) -> Result<(f64, f64)> {
    params.validate()?;
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidParameter(format!("tau must lie in [0, 1], got {tau}")));
    }
    let m = params.b_abs().powi(2).min(1.0);
    let r1 = if tau == 0.0 { 0.0 } else { tau * c(m * params.p1 / tau) };
    let r2 = if tau == 1.0 { 0.0 } else { (1.0 - tau) * c(params.p2 / (1.0 - tau)) };
    Ok((r1, r2))
}

pub fn time_division_region(params: &GaussianChannelParams, tau_steps: usize) -> Result<RateRegion> {
    check_steps("tau_steps", tau_steps)?;
    let regions = unit_grid(tau_steps)
        .into_iter()
        .map(|t| time_division_point(params, t).map(|(r1, r2)| RateRegion::rectangle(r1, r2)))
        .collect::<Result<Vec<_>>>()?;
    union_hull(&regions)
}

/// Grid settings for the composite inner bound used by the gap measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnerOptions {
    pub alpha_steps: usize,
    pub tau_steps: usize,
    pub lambda_scales: Vec<f64>,
}

impl Default for InnerOptions {
    fn default() -> Self {
        Self { alpha_steps: DEFAULT_STEPS, tau_steps: DEFAULT_STEPS, lambda_scales: DEFAULT_LAMBDA_SCALES.to_vec() }
    }
}

/// Hull of scheme E over the λ sweep, scheme D, and time division.
pub fn best_inner_region(params: &GaussianChannelParams, opts: &InnerOptions) -> Result<RateRegion> {
    union_hull(&[
        inner_region_swept(params, opts.alpha_steps, &opts.lambda_scales)?,
        scheme_d_region(params, opts.alpha_steps)?,
        time_division_region(params, opts.tau_steps)?,
    ])
}

/// `(|a|²−1)P2 − (|b|²−1)P1 − 2|a − |b||·sqrt(P1P2)`; very strong interference
/// holds when this is nonnegative.
pub fn very_strong_margin(params: &GaussianChannelParams) -> f64 {
    let b = params.b_abs();
    (params.a.norm_sqr() - 1.0) * params.p2
        - (b * b - 1.0) * params.p1
        - 2.0 * (params.a - b).norm() * (params.p1 * params.p2).sqrt()
}

pub fn is_very_strong(params: &GaussianChannelParams) -> bool {
    very_strong_margin(params) >= 0.0
}

pub fn is_pdc(params: &GaussianChannelParams) -> bool {
    let (p1, p2) = (params.p1, params.p2);
    let b = params.b_abs();
    let d = (1.0 - params.a * b).norm_sqr();
    let a2 = params.a.norm_sqr();
    let lhs = p2 * d;
    let first = lhs >= (b * b - 1.0) * (1.0 + p1 + a2 * p2) - p1 * p2 * d;
    let second = lhs >= (b * b - 1.0) * (1.0 + p1 + a2 * p2 + 2.0 * params.a.re * (p1 * p2).sqrt());
    first && second
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RegimeLabel {
    VeryStrong,
    Pdc,
    Both,
    GapOnly,
}

impl RegimeLabel {
    pub fn from_predicates(vsi: bool, pdc: bool) -> Self {
        match (vsi, pdc) {
            (true, true) => Self::Both,
            (true, false) => Self::VeryStrong,
            (false, true) => Self::Pdc,
            (false, false) => Self::GapOnly,
        }
    }

    pub fn is_very_strong(self) -> bool {
        matches!(self, Self::VeryStrong | Self::Both)
    }

    pub fn is_pdc(self) -> bool {
        matches!(self, Self::Pdc | Self::Both)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::VeryStrong => "VERY_STRONG",
            Self::Pdc => "PDC",
            Self::Both => "BOTH",
            Self::GapOnly => "GAP_ONLY",
        }
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn regime_classify(params: &GaussianChannelParams) -> RegimeLabel {
    RegimeLabel::from_predicates(is_very_strong(params), is_pdc(params))
}

/// A map over real `a ∈ [0, a_max]` (columns) and `b ∈ [0, b_max]` (rows).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeMapSpec {
    pub a_max: f64,
    pub b_max: f64,
    pub cells: usize,
    pub p1: f64,
    pub p2: f64,
    /// Each cell is labelled by majority vote of each predicate over a
    /// `subsamples × subsamples` lattice of points inside it.
    pub subsamples: usize,
}

impl RegimeMapSpec {
    pub fn new(a_max: f64, b_max: f64, cells: usize, p1: f64, p2: f64) -> Self {
        Self { a_max, b_max, cells, p1, p2, subsamples: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeMap {
    pub spec: RegimeMapSpec,
    /// Row-major: `labels[row * cells + col]`, row indexing `b`, column `a`.
    pub labels: Vec<RegimeLabel>,
}

impl RegimeMap {
    pub fn label(&self, row: usize, col: usize) -> RegimeLabel {
        self.labels[row * self.spec.cells + col]
    }

    pub fn a_range(&self, col: usize) -> (f64, f64) {
        let d = self.spec.a_max / self.spec.cells as f64;
        (col as f64 * d, (col + 1) as f64 * d)
    }

    pub fn b_range(&self, row: usize) -> (f64, f64) {
        let d = self.spec.b_max / self.spec.cells as f64;
        (row as f64 * d, (row + 1) as f64 * d)
    }
}

pub fn regime_map(spec: &RegimeMapSpec) -> Result<RegimeMap> {
    if spec.cells == 0 || spec.subsamples == 0 {
        return Err(Error::InvalidParameter("cells and subsamples must be positive".into()));
    }
    for (name, v) in [("a_max", spec.a_max), ("b_max", spec.b_max)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
        }
    }
    GaussianChannelParams::real(0.0, 0.0, spec.p1, spec.p2)?;
    let n = spec.cells;
    let k = spec.subsamples;
    let (da, db) = (spec.a_max / n as f64, spec.b_max / n as f64);
    let offsets: Vec<f64> = (0..k).map(|s| (s as f64 + 0.5) / k as f64).collect();
    let labels = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (row, col) = (idx / n, idx % n);
            let (mut vsi, mut pdc) = (0usize, 0usize);
            for ob in &offsets {
                for oa in &offsets {
                    let a = (col as f64 + oa) * da;
                    let b = (row as f64 + ob) * db;
                    let p = GaussianChannelParams { a: cx(a), b: cx(b), p1: spec.p1, p2: spec.p2 };
                    vsi += is_very_strong(&p) as usize;
                    pdc += is_pdc(&p) as usize;
                }
            }
            RegimeLabel::from_predicates(2 * vsi > k * k, 2 * pdc > k * k)
        })
        .collect();
    Ok(RegimeMap { spec: spec.clone(), labels })
}

/// Cartesian parameter grid for gap and ratio sweeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    #[serde(deserialize_with = "gains")]
    pub a: Vec<Complex64>,
    #[serde(deserialize_with = "gains")]
    pub b: Vec<Complex64>,
    pub p1: Vec<f64>,
    pub p2: Vec<f64>,
    #[serde(default)]
    pub inner: InnerOptions,
}

impl Default for SweepGrid {
    fn default() -> Self {
        let re = |v: &[f64]| v.iter().map(|&x| cx(x)).collect();
        let powers = vec![1.0, 10.0, 100.0, 1000.0];
        Self {
            a: re(&[0.0, 0.5, 1.0, 2.0, 5.0, 10.0]),
            b: re(&[1.1, 1.5, 2.0, 5.0, 10.0]),
            p1: powers.clone(),
            p2: powers,
            inner: InnerOptions::default(),
        }
    }
}

impl SweepGrid {
    pub fn points(&self) -> Result<Vec<GaussianChannelParams>> {
        check_steps("alpha_steps", self.inner.alpha_steps)?;
        check_steps("tau_steps", self.inner.tau_steps)?;
        let mut out = Vec::with_capacity(self.a.len() * self.b.len() * self.p1.len() * self.p2.len());
        for &a in &self.a {
            for &b in &self.b {
                for &p1 in &self.p1 {
                    for &p2 in &self.p2 {
                        out.push(GaussianChannelParams::new(a, b, p1, p2)?);
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::EmptyInput("sweep grid has no points"));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub params: GaussianChannelParams,
    /// Per-user additive gap between the outer bound and the composite inner bound.
    pub gap_bits: f64,
    /// Multiplicative factor between the outer bound and scheme E ∪ time division.
    pub ratio: f64,
    /// Both inner bounds lie inside the outer bound.
    pub contained: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub rows: Vec<SweepRow>,
    pub max_gap: f64,
    pub max_gap_at: GaussianChannelParams,
    pub max_ratio: f64,
    pub max_ratio_at: GaussianChannelParams,
    pub all_contained: bool,
}

pub fn sweep_point(params: &GaussianChannelParams, opts: &InnerOptions) -> Result<SweepRow> {
    let outer = outer_region(params, opts.alpha_steps)?;
    let scheme_e = inner_region(params, opts.alpha_steps)?;
    let td = time_division_region(params, opts.tau_steps)?;
    let best = best_inner_region(params, opts)?;
    let simple = union_hull(&[scheme_e.clone(), td])?;
    let contained = [&scheme_e, &best, &simple].iter().all(|r| contains(&outer, r, NESTING_TOL));
    if !contained {
        return Ok(SweepRow { params: *params, gap_bits: f64::NAN, ratio: f64::NAN, contained });
    }
    Ok(SweepRow { params: *params, gap_bits: max_gap(&outer, &best)?, ratio: max_ratio(&outer, &simple)?, contained })
}

/// Gap and ratio at every grid point, with the worst cases and where they occur.
/// A row whose inner bound escapes the outer bound carries NaN metrics and
/// counts as the worst case.
pub fn gap_sweep(grid: &SweepGrid) -> Result<SweepSummary> {
    let points = grid.points()?;
    let rows = points.par_iter().map(|p| sweep_point(p, &grid.inner)).collect::<Result<Vec<_>>>()?;
    let worst = |metric: fn(&SweepRow) -> f64| {
        rows.iter()
            .fold(None::<&SweepRow>, |best, r| match best {
                Some(b) if !(metric(r) > metric(b)) && !metric(r).is_nan() => Some(b),
                Some(b) if metric(b).is_nan() => Some(b),
                _ => Some(r),
            })
            .expect("nonempty")
    };
    let g = worst(|r| r.gap_bits);
    let q = worst(|r| r.ratio);
    Ok(SweepSummary {
        max_gap: g.gap_bits,
        max_gap_at: g.params,
        max_ratio: q.ratio,
        max_ratio_at: q.params,
        all_contained: rows.iter().all(|r| r.contained),
        rows,
    })
}
