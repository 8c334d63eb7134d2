//! Wigner functions in the convention `c = (q + i p)/√2`, normalized so that
//! `∫∫ W dq dp = 1` and the vacuum is `e^{−(q²+p²)}/π`.
//!
//! Two independent routes are provided: closed forms for the photon-added
//! families, and [`ParityWigner`], which evaluates any truncated density
//! matrix through the displaced-parity identity.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::ops::{Div, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::DensityOp;
use crate::states::{Family, StateSpec};

/// Target cell size of the default figure grids.
pub const DEFAULT_SPACING: f64 = 0.05;
/// Half-width of the `|2c−α|² = 1` band skipped by the negativity report.
pub const BOUNDARY_BAND: f64 = 0.02;

/// `L_k(z)` by the three-term recurrence
/// `(j+1) L_{j+1} = (2j+1−z) L_j − j L_{j−1}`.
pub fn laguerre<T>(k: usize, z: T) -> T
where
    T: Copy + From<f64> + Sub<Output = T> + Mul<Output = T> + Mul<f64, Output = T> + Div<f64, Output = T>,
{
    let one = T::from(1.0);
    if k == 0 {
        return one;
    }
    let mut prev = one;
    let mut cur = one - z;
    for j in 1..k {
        let jf = j as f64;
        let next = ((T::from(2.0 * jf + 1.0) - z) * cur - prev * jf) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Closed-form Wigner functions, parameterized by the Laguerre evaluator so
/// that a validation harness can swap in a faulty one.
#[derive(Clone, Copy)]
pub struct ClosedForms {
    pub laguerre: fn(usize, f64) -> f64,
}

impl Default for ClosedForms {
    fn default() -> Self {
        ClosedForms { laguerre: laguerre::<f64> }
    }
}

impl ClosedForms {
    /// m-PACS: `(−1)ᵐ L_m(|2c−α|²) / (π L_m(−|α|²)) · e^{−2|c−α|²}`.
    pub fn pacs(&self, alpha: C64, m: u32, q: f64, p: f64) -> f64 {
        let c = C64::new(q, p) * FRAC_1_SQRT_2;
        let m = m as usize;
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        let num = (self.laguerre)(m, (c * 2.0 - alpha).norm_sqr());
        let den = (self.laguerre)(m, -alpha.norm_sqr());
        sign * num / (PI * den) * (-2.0 * (c - alpha).norm_sqr()).exp()
    }

    pub fn thermal(&self, x: f64, q: f64, p: f64) -> Result<f64> {
        let b = thermal_b(x)?;
        Ok(b / PI * (-b * (q * q + p * p)).exp())
    }

    pub fn pa_thermal(&self, x: f64, q: f64, p: f64) -> Result<f64> {
        let b = thermal_b(x)?;
        let r2 = q * q + p * p;
        Ok(b * b / PI * (2.0 * r2 / (1.0 + x) - 1.0) * (-b * r2).exp())
    }
}

fn thermal_b(x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!("x must lie in [0, 1), got {x}")));
    }
    Ok((1.0 - x) / (1.0 + x))
}

pub fn wigner_pacs_closed(alpha: C64, m: u32, q: f64, p: f64) -> f64 {
    ClosedForms::default().pacs(alpha, m, q, p)
}

pub fn wigner_thermal_closed(x: f64, q: f64, p: f64) -> Result<f64> {
    ClosedForms::default().thermal(x, q, p)
}

pub fn wigner_pa_thermal_closed(x: f64, q: f64, p: f64) -> Result<f64> {
    ClosedForms::default().pa_thermal(x, q, p)
}

/// Numerical Wigner evaluator for a fixed density matrix.
///
/// Uses `W(c) = (1/π) Tr[ρ D(c) Π D†(c)] = (1/π) Tr[ρ D(2c) Π]` with the
/// parity `Π = (−1)^{a†a}`. Only the `dim × dim` block of `D(2c)` enters, and
/// its entries are generated exactly along each diagonal from
/// `⟨n+k|D(β)|n⟩ = √(n!/(n+k)!) βᵏ e^{−|β|²/2} L_n^{(k)}(|β|²)`, so there is
/// no truncation error beyond the one already in `ρ`.
#[derive(Clone, Debug)]
pub struct ParityWigner {
    dim: usize,
    /// Offsets `k` with a nonzero band, holding `(ρ_{n,n+k}, ρ_{n+k,n})`.
    bands: Vec<(usize, Vec<C64>, Vec<C64>)>,
    ln_fact: Vec<f64>,
}

const RESCALE: f64 = 1e150;

impl ParityWigner {
    pub fn new(rho: &DensityOp) -> Self {
        let dim = rho.space().dim();
        let m = rho.matrix();
        let mut bands = Vec::new();
        for k in 0..dim {
            let upper: Vec<C64> = (0..dim - k).map(|n| m[(n, n + k)]).collect();
            let lower: Vec<C64> = (0..dim - k).map(|n| m[(n + k, n)]).collect();
            if upper.iter().chain(&lower).any(|z| z.norm() > 0.0) {
                bands.push((k, upper, lower));
            }
        }
        let mut ln_fact = vec![0.0; dim + 1];
        for i in 1..=dim {
            ln_fact[i] = ln_fact[i - 1] + (i as f64).ln();
        }
        ParityWigner { dim, bands, ln_fact }
    }

    pub fn eval(&self, q: f64, p: f64) -> f64 {
        let beta = C64::new(q, p) * SQRT_2;
        let x = beta.norm_sqr();
        let theta = beta.arg();
        let ln_abs = if x > 0.0 { 0.5 * x.ln() } else { f64::NEG_INFINITY };
        let mut total = C64::new(0.0, 0.0);

        for (k, upper, lower) in &self.bands {
            let k = *k;
            if k > 0 && x == 0.0 {
                continue;
            }
            let kf = k as f64;
            // r_n = √(n!/(n+k)!) |β|ᵏ e^{−x/2} L_n^{(k)}(x) = g_n · e^{s}
            let mut s = if k > 0 { kf * ln_abs } else { 0.0 } - 0.5 * x - 0.5 * self.ln_fact[k];
            let mut scale = s.exp();
            let (mut g_prev, mut g) = (0.0f64, 1.0f64);
            let mut band = C64::new(0.0, 0.0);
            for n in 0..self.dim - k {
                let r = g * scale;
                let term = upper[n] + if k > 0 { lower[n] * C64::from_polar(1.0, -2.0 * kf * theta) } else { C64::new(0.0, 0.0) };
                if n % 2 == 0 {
                    band += term * r;
                } else {
                    band -= term * r;
                }
                let nf = n as f64;
                let next = ((2.0 * nf + kf + 1.0 - x) * g - (nf * (nf + kf)).sqrt() * g_prev)
                    / ((nf + 1.0) * (nf + 1.0 + kf)).sqrt();
                g_prev = g;
                g = next;
                if g.abs() > RESCALE {
                    g /= RESCALE;
                    g_prev /= RESCALE;
                    s += RESCALE.ln();
                    scale = s.exp();
                }
            }
            total += band * C64::from_polar(1.0, kf * theta);
        }
        debug_assert!(total.im.abs() < 1e-10 * PI, "Wigner value has imaginary part {}", total.im);
        total.re / PI
    }
}

/// Displaced-parity Wigner function of `rho` at one phase-space point.
pub fn wigner_numeric(rho: &DensityOp, q: f64, p: f64) -> f64 {
    ParityWigner::new(rho).eval(q, p)
}

/// Uniform lattice including both endpoints on each axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseGrid {
    pub q_min: f64,
    pub q_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub nq: usize,
    pub np: usize,
}

impl PhaseGrid {
    pub fn new(q_min: f64, q_max: f64, nq: usize, p_min: f64, p_max: f64, np: usize) -> Result<Self> {
        let ok = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && lo < hi;
        if !ok(q_min, q_max) || !ok(p_min, p_max) {
            return Err(Error::Domain("grid bounds must be finite with min < max".into()));
        }
        if nq < 2 || np < 2 {
            return Err(Error::Domain("grid needs at least 2 samples per axis".into()));
        }
        Ok(PhaseGrid { q_min, q_max, p_min, p_max, nq, np })
    }

    /// `[−h, h]²` with `n` samples per axis.
    pub fn square(half_width: f64, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n, -half_width, half_width, n)
    }

    /// Bounds with the sample count chosen for [`DEFAULT_SPACING`].
    pub fn with_spacing(q_min: f64, q_max: f64, p_min: f64, p_max: f64) -> Result<Self> {
        let count = |lo: f64, hi: f64| ((hi - lo) / DEFAULT_SPACING).round() as usize + 1;
        Self::new(q_min, q_max, count(q_min, q_max), p_min, p_max, count(p_min, p_max))
    }

    pub fn dq(&self) -> f64 {
        (self.q_max - self.q_min) / (self.nq - 1) as f64
    }

    pub fn dp(&self) -> f64 {
        (self.p_max - self.p_min) / (self.np - 1) as f64
    }

    pub fn q(&self, i: usize) -> f64 {
        self.q_min + i as f64 * self.dq()
    }

    pub fn p(&self, j: usize) -> f64 {
        self.p_min + j as f64 * self.dp()
    }

    pub fn len(&self) -> usize {
        self.nq * self.np
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in q-major order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.nq).flat_map(move |i| (0..self.np).map(move |j| (self.q(i), self.p(j))))
    }
}

/// Default figure grid for a state: `[−4,4]²` for the coherent families and
/// `[−6,6]²` for the thermal ones, widened where the state reaches further.
pub fn default_grid(spec: &StateSpec) -> Result<PhaseGrid> {
    let (center, radius, min_half) = match spec.family {
        Family::Fock { n } => (C64::new(0.0, 0.0), fock_radius(n), 4.0),
        Family::Coherent { alpha } => (alpha * SQRT_2, fock_radius(0), 4.0),
        Family::Pacs { alpha, m } => (alpha * SQRT_2, fock_radius(m as usize), 4.0),
        Family::PaThermalLowT { .. } => (C64::new(0.0, 0.0), fock_radius(3), 6.0),
        Family::Thermal { x } | Family::PaThermal { x } => {
            let b = thermal_b(x)?;
            (C64::new(0.0, 0.0), (16.0 / b).sqrt(), 6.0)
        }
    };
    let snap_out = |v: f64, up: bool| if up { (v * 2.0).ceil() / 2.0 } else { (v * 2.0).floor() / 2.0 };
    let span = |mid: f64| {
        let lo = mid - radius;
        let hi = mid + radius;
        (if lo < -min_half { snap_out(lo, false) } else { -min_half }, if hi > min_half { snap_out(hi, true) } else { min_half })
    };
    let (q_lo, q_hi) = span(center.re);
    let (p_lo, p_hi) = span(center.im);
    PhaseGrid::with_spacing(q_lo, q_hi, p_lo, p_hi)
}

// Radius outside which a state with at most n photons (about its center)
// keeps less than 1e-5 of its phase-space weight.
fn fock_radius(n: usize) -> f64 {
    let tail = |r: f64| {
        let r2 = r * r;
        let mut term = (-r2).exp();
        let mut sum = term;
        for j in 1..=n {
            term *= r2 / j as f64;
            sum += term;
        }
        sum
    };
    let mut r = 1.0f64;
    while tail(r) >= 1e-5 {
        r += 0.01;
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluator {
    Closed,
    Numeric,
}

impl Evaluator {
    pub fn name(self) -> &'static str {
        match self {
            Evaluator::Closed => "closed",
            Evaluator::Numeric => "numeric",
        }
    }
}

/// Sampled Wigner function; `values[i·np + j]` is `W(q_i, p_j)`.
#[derive(Clone, Debug)]
pub struct WignerField {
    pub grid: PhaseGrid,
    pub values: Vec<f64>,
    pub label: String,
    pub evaluator: Evaluator,
}

impl WignerField {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.np + j]
    }

    pub fn max_abs_diff(&self, other: &WignerField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::Domain("fields live on different grids".into()));
        }
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// Minimum value and its `(q, p)`.
    pub fn min(&self) -> (f64, (f64, f64)) {
        let (k, v) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |best, (k, &v)| if v < best.1 { (k, v) } else { best });
        (v, (self.grid.q(k / self.grid.np), self.grid.p(k % self.grid.np)))
    }
}

pub fn has_closed_form(spec: &StateSpec) -> bool {
    matches!(spec.family, Family::Pacs { .. } | Family::Thermal { .. } | Family::PaThermal { .. })
}

pub fn evaluate_field(spec: &StateSpec, grid: &PhaseGrid, evaluator: Evaluator) -> Result<WignerField> {
    evaluate_field_with(spec, grid, evaluator, &ClosedForms::default())
}

pub fn evaluate_field_with(
    spec: &StateSpec,
    grid: &PhaseGrid,
    evaluator: Evaluator,
    forms: &ClosedForms,
) -> Result<WignerField> {
    let values = match evaluator {
        Evaluator::Numeric => {
            let w = ParityWigner::new(&spec.density()?);
            grid.points().map(|(q, p)| w.eval(q, p)).collect()
        }
        Evaluator::Closed => match spec.family {
            Family::Pacs { alpha, m } => grid.points().map(|(q, p)| forms.pacs(alpha, m, q, p)).collect(),
            Family::Thermal { x } => grid.points().map(|(q, p)| forms.thermal(x, q, p)).collect::<Result<_>>()?,
            Family::PaThermal { x } => grid.points().map(|(q, p)| forms.pa_thermal(x, q, p)).collect::<Result<_>>()?,
            _ => return Err(Error::UnsupportedClosedForm(spec.kind().to_string())),
        },
    };
    Ok(WignerField { grid: *grid, values, label: spec.to_string(), evaluator })
}

/// Numerical field of an arbitrary density matrix.
pub fn evaluate_density(rho: &DensityOp, grid: &PhaseGrid, label: impl Into<String>) -> WignerField {
    let w = ParityWigner::new(rho);
    WignerField {
        grid: *grid,
        values: grid.points().map(|(q, p)| w.eval(q, p)).collect(),
        label: label.into(),
        evaluator: Evaluator::Numeric,
    }
}

/// Midpoint rule for `∫∫ W dq dp`, each node standing for one `dq × dp` cell.
pub fn integrate_field(field: &WignerField) -> f64 {
    field.values.iter().sum::<f64>() * field.grid.dq() * field.grid.dp()
}

/// Agreement between the sign of a SPACS field and `|2c−α|² < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct NegativityReport {
    /// Points outside the boundary band.
    pub checked: usize,
    pub agreeing: usize,
    pub in_band: usize,
    pub min_value: f64,
    pub min_at: (f64, f64),
}

impl NegativityReport {
    pub fn agreement(&self) -> f64 {
        if self.checked == 0 {
            1.0
        } else {
            self.agreeing as f64 / self.checked as f64
        }
    }
}

pub fn negativity_region_report(alpha: C64, field: &WignerField) -> NegativityReport {
    let mut checked = 0;
    let mut agreeing = 0;
    let mut in_band = 0;
    for (k, (q, p)) in field.grid.points().enumerate() {
        let c = C64::new(q, p) * FRAC_1_SQRT_2;
        let z = (c * 2.0 - alpha).norm_sqr();
        if (z - 1.0).abs() < BOUNDARY_BAND {
            in_band += 1;
            continue;
        }
        checked += 1;
        if (field.values[k] < 0.0) == (z < 1.0) {
            agreeing += 1;
        }
    }
    let (min_value, min_at) = field.min();
    NegativityReport { checked, agreeing, in_band, min_value, min_at }
}
