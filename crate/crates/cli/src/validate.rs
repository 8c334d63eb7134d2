//! The `validate` command: every acceptance check as one report row.

use std::f64::consts::{PI, SQRT_2};

use nonclassical::entpot::{
    ep_spacs_closed, entanglement_potential, hermitian_spectrum, partial_transpose, rho0_fixture, schmidt_ep_pure,
    split_on_beam_splitter,
};
use nonclassical::fock::FockSpace;
use nonclassical::states::{fock_state, low_t_trace_defect, pa_thermal, pa_thermal_low_t, Family, LowTOrder, StateSpec};
use nonclassical::wigner::{
    default_grid, evaluate_field, evaluate_field_with, integrate_field, negativity_region_report, wigner_numeric,
    ClosedForms, Evaluator, PhaseGrid,
};
use nonclassical::Result;
use num_complex::Complex64 as C64;

use crate::output::{num, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `|actual − target| ≤ tolerance`
    Within,
    /// `actual < target`
    Below,
    /// `actual > target`
    Above,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub target: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub relation: Relation,
}

impl Check {
    fn within(name: impl Into<String>, target: f64, actual: f64, tolerance: f64) -> Self {
        Check { name: name.into(), target, actual, tolerance, relation: Relation::Within }
    }

    fn below(name: impl Into<String>, bound: f64, actual: f64) -> Self {
        Check { name: format!("{}_below", name.into()), target: bound, actual, tolerance: 0.0, relation: Relation::Below }
    }

    fn above(name: impl Into<String>, bound: f64, actual: f64) -> Self {
        Check { name: format!("{}_above", name.into()), target: bound, actual, tolerance: 0.0, relation: Relation::Above }
    }

    pub fn pass(&self) -> bool {
        match self.relation {
            Relation::Within => (self.actual - self.target).abs() <= self.tolerance,
            Relation::Below => self.actual < self.target,
            Relation::Above => self.actual > self.target,
        }
    }
}

pub fn report(checks: &[Check]) -> Vec<u8> {
    let mut t = Table::new(&["name", "target", "actual", "tolerance", "pass"]).expect("in-memory writer");
    for c in checks {
        let pass = if c.pass() { "true" } else { "false" };
        t.row([c.name.clone(), num(c.target), num(c.actual), num(c.tolerance), pass.to_string()])
            .expect("in-memory writer");
    }
    t.into_bytes()
}

fn real(a: f64) -> C64 {
    C64::new(a, 0.0)
}

fn spec(family: Family) -> Result<StateSpec> {
    StateSpec::new(family)
}

fn ep(family: Family) -> Result<f64> {
    Ok(entanglement_potential(&spec(family)?.density()?)?.ep_bits)
}

/// Default figure box resampled to 81 × 81.
pub fn grid81(s: &StateSpec) -> Result<PhaseGrid> {
    let g = default_grid(s)?;
    PhaseGrid::new(g.q_min, g.q_max, 81, g.p_min, g.p_max, 81)
}

/// Closed-form against displaced-parity fields.
pub fn wigner_checks(forms: &ClosedForms) -> Result<Vec<Check>> {
    let mut families = Vec::new();
    for m in [1, 2] {
        for a in [0.1, 0.9, 3.0] {
            families.push(Family::Pacs { alpha: real(a), m });
        }
    }
    for x in [0.1, 0.5, 0.9] {
        families.push(Family::Thermal { x });
        families.push(Family::PaThermal { x });
    }
    families
        .into_iter()
        .map(|f| {
            let s = spec(f)?;
            let grid = grid81(&s)?;
            let closed = evaluate_field_with(&s, &grid, Evaluator::Closed, forms)?;
            let numeric = evaluate_field(&s, &grid, Evaluator::Numeric)?;
            Ok(Check::within(format!("wigner_closed_vs_numeric[{s}]"), 0.0, closed.max_abs_diff(&numeric)?, 1e-8))
        })
        .collect()
}

pub fn run_checks(forms: &ClosedForms) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    // SPACS EP against the closed form; the 61-point sweep doubles as the monotonicity data
    let alphas: Vec<f64> = (0..=60).map(|k| 0.05 * k as f64).collect();
    let sweep: Vec<f64> = alphas.iter().map(|&a| ep(Family::Pacs { alpha: real(a), m: 1 })).collect::<Result<_>>()?;
    for (k, (&a, &v)) in alphas.iter().zip(&sweep).enumerate() {
        if k % 5 == 0 {
            checks.push(Check::within(format!("ep_spacs_alpha_{a}"), ep_spacs_closed(real(a)), v, 1e-6));
        }
    }
    checks.push(Check::within("ep_spacs_alpha_0_exact", 1.0, sweep[0], 1e-9));

    // PT spectrum of the displaced-frame fixture
    let s3 = 3f64.sqrt();
    let lambdas = [(2.0 + s3) / 4.0, 0.25, (2.0 - s3) / 4.0, -0.25];
    let spectrum = hermitian_spectrum(&partial_transpose(&rho0_fixture(real(1.0), 3)?))?;
    for (k, &want) in lambdas.iter().enumerate() {
        let got = spectrum.eigenvalues.iter().copied().min_by(|a, b| (a - want).abs().total_cmp(&(b - want).abs()));
        checks.push(Check::within(format!("rho0_pt_eigenvalue_{}", k + 1), want, got.unwrap_or(f64::NAN), 1e-10));
    }
    for a in [C64::new(0.0, 0.0), real(0.5), real(1.0), real(2.0), real(3.0), C64::new(0.6, -0.8)] {
        let s = hermitian_spectrum(&partial_transpose(&rho0_fixture(a, 3)?))?;
        let label = nonclassical::states::format_complex(a);
        checks.push(Check::within(format!("rho0_negative_count_alpha_{label}"), 1.0, s.negative_count() as f64, 0.0));
    }

    checks.extend(wigner_checks(forms)?);

    // sign of W against |2c − α|² < 1
    for a in [0.1, 0.9, 3.0] {
        let s = spec(Family::Pacs { alpha: real(a), m: 1 })?;
        let field = evaluate_field_with(&s, &default_grid(&s)?, Evaluator::Closed, forms)?;
        let r = negativity_region_report(real(a), &field);
        checks.push(Check::within(format!("spacs_sign_agreement_alpha_{a}"), 1.0, r.agreement(), 0.0));
    }

    for x in [0.1, 0.5, 0.9] {
        let b = (1.0 - x) / (1.0 + x);
        let rho = spec(Family::PaThermal { x })?.density()?;
        checks.push(Check::within(format!("pa_thermal_origin_x_{x}"), -b * b / PI, wigner_numeric(&rho, 0.0, 0.0), 1e-10));
    }

    let families = [
        Family::Fock { n: 1 },
        Family::Fock { n: 3 },
        Family::Coherent { alpha: real(1.0) },
        Family::Coherent { alpha: real(3.0) },
        Family::Pacs { alpha: real(0.1), m: 1 },
        Family::Pacs { alpha: real(3.0), m: 1 },
        Family::Pacs { alpha: real(0.9), m: 2 },
        Family::Pacs { alpha: real(3.0), m: 3 },
        Family::Thermal { x: 0.1 },
        Family::Thermal { x: 0.9 },
        Family::PaThermal { x: 0.1 },
        Family::PaThermal { x: 0.9 },
        Family::PaThermalLowT { x: 0.1, order: LowTOrder::First },
        Family::PaThermalLowT { x: 0.1, order: LowTOrder::Second },
    ];
    for f in families {
        let s = spec(f)?;
        let total = integrate_field(&evaluate_field(&s, &default_grid(&s)?, Evaluator::Numeric)?);
        checks.push(Check::within(format!("normalization[{s}]"), 1.0, total, 1e-3));
    }

    let min_step = |v: &[f64]| v.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
    checks.push(Check::above("ep_spacs_min_step_over_alpha_0_to_3", 0.0, min_step(&sweep)));
    let at_low = |m| ep(Family::Pacs { alpha: real(0.2), m });
    let (m1, m2, m3) = (at_low(1)?, at_low(2)?, at_low(3)?);
    checks.push(Check::above("ep_pacs_m2_minus_m1_alpha_0.2", 0.0, m2 - m1));
    checks.push(Check::above("ep_pacs_m3_minus_m2_alpha_0.2", 0.0, m3 - m2));
    let gap = ep(Family::Pacs { alpha: real(3.0), m: 3 })? - ep(Family::Pacs { alpha: real(3.0), m: 1 })?;
    checks.push(Check::below("ep_pacs_abs_m3_minus_m1_alpha_3", 0.05, gap.abs()));
    let thermal_ep: Vec<f64> = (0..=25).map(|k| ep(Family::PaThermal { x: 0.01 * k as f64 })).collect::<Result<_>>()?;
    checks.push(Check::above("ep_pa_thermal_min_step_over_x_0_to_0.25", 0.0, min_step(&thermal_ep)));

    for a in [0.0, 0.5, 1.0, 2.0, 3.0] {
        checks.push(Check::within(format!("ep_coherent_alpha_{a}"), 0.0, ep(Family::Coherent { alpha: real(a) })?, 1e-9));
    }
    for x in [0.1, 0.3, 0.5] {
        checks.push(Check::within(format!("ep_thermal_x_{x}"), 0.0, ep(Family::Thermal { x })?, 1e-9));
    }

    checks.push(Check::within("ep_fock_1", 1.0, ep(Family::Fock { n: 1 })?, 1e-9));
    let fock2 = ep(Family::Fock { n: 2 })?;
    checks.push(Check::within("ep_fock_2", ((6.0 + 4.0 * SQRT_2) / 4.0).log2(), fock2, 1e-8));
    let schmidt = schmidt_ep_pure(&split_on_beam_splitter(&fock_state(FockSpace::new(6)?, 2)?))?;
    checks.push(Check::within("ep_fock_2_vs_schmidt_oracle", schmidt, fock2, 1e-8));

    let (s1, s2) = low_t_slopes()?;
    checks.push(Check::within("low_t_trace_distance_slope_order_1", 2.0, s1, 0.3));
    checks.push(Check::within("low_t_trace_distance_slope_order_2", 3.0, s2, 0.3));
    checks.push(Check::within("low_t_trace_defect_order_1_x_0.1", 0.0, low_t_trace_defect(0.1, LowTOrder::First), 1e-15));
    checks.push(Check::within("low_t_trace_defect_order_2_x_0.1", 0.0, low_t_trace_defect(0.1, LowTOrder::Second), 1e-15));

    Ok(checks)
}

/// Log-log slopes of the trace distance between the exact photon-added
/// thermal state and each approximant over x = 0.02, 0.04, …, 0.2.
pub fn low_t_slopes() -> Result<(f64, f64)> {
    let xs: Vec<f64> = (1..=10).map(|k| 0.02 * k as f64).collect();
    let space = FockSpace::new(64)?;
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for &x in &xs {
        let exact = pa_thermal(space, x)?;
        d1.push(exact.trace_distance(&pa_thermal_low_t(space, x, LowTOrder::First)?)?);
        d2.push(exact.trace_distance(&pa_thermal_low_t(space, x, LowTOrder::Second)?)?);
    }
    Ok((loglog_slope(&xs, &d1), loglog_slope(&xs, &d2)))
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    cov / var
}
