//! State families: Fock, coherent, photon-added coherent (m-PACS), thermal,
//! photon-added thermal and its low-temperature approximants.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{
    apply_creation_sandwich, creation_matrix, geometric_cutoff, poisson_cutoff, poisson_tail, DensityOp,
    FockSpace, Ket, BOUNDARY_TAIL_LIMIT,
};

/// Tail population left outside the space for pure states. Amplitude error
/// scales as the square root of this.
pub const PURE_TAIL_TOL: f64 = 1e-24;
/// Tail population left outside the space for diagonal mixed states.
pub const MIXED_TAIL_TOL: f64 = 1e-12;
/// Extra levels kept above the input state's support.
pub const HEADROOM: usize = 4;
/// Largest `x` for which the low-temperature approximants are trusted.
pub const LOW_T_VALIDITY_MAX: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LowTOrder {
    First,
    Second,
}

impl LowTOrder {
    pub fn as_u32(self) -> u32 {
        match self {
            LowTOrder::First => 1,
            LowTOrder::Second => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    Fock { n: usize },
    Coherent { alpha: C64 },
    Pacs { alpha: C64, m: u32 },
    Thermal { x: f64 },
    PaThermal { x: f64 },
    PaThermalLowT { x: f64, order: LowTOrder },
}

/// Which scalar a sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    Alpha,
    X,
    M,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Alpha => "alpha",
            SweepParam::X => "x",
            SweepParam::M => "m",
        }
    }
}

/// A state family plus an optional truncation override.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateSpec {
    pub family: Family,
    pub dim: Option<usize>,
}

impl StateSpec {
    pub fn new(family: Family) -> Result<Self> {
        let spec = StateSpec { family, dim: None };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_dim(mut self, dim: Option<usize>) -> Result<Self> {
        if let Some(d) = dim {
            FockSpace::new(d)?;
        }
        self.dim = dim;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::Pacs { m, .. } if m < 1 => Err(Error::Domain("pacs needs m >= 1".into())),
            Family::Coherent { alpha } | Family::Pacs { alpha, .. } if !(alpha.re.is_finite() && alpha.im.is_finite()) => {
                Err(Error::Domain("alpha must be finite".into()))
            }
            Family::Thermal { x } | Family::PaThermal { x } => check_x(x),
            Family::PaThermalLowT { x, .. } => check_low_t_x(x),
            _ => Ok(()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.family {
            Family::Fock { .. } => "fock",
            Family::Coherent { .. } => "coherent",
            Family::Pacs { .. } => "pacs",
            Family::Thermal { .. } => "thermal",
            Family::PaThermal { .. } => "pa_thermal",
            Family::PaThermalLowT { order: LowTOrder::First, .. } => "pa_thermal_o1",
            Family::PaThermalLowT { order: LowTOrder::Second, .. } => "pa_thermal_o2",
        }
    }

    pub fn alpha(&self) -> Option<C64> {
        match self.family {
            Family::Coherent { alpha } | Family::Pacs { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    pub fn x(&self) -> Option<f64> {
        match self.family {
            Family::Thermal { x } | Family::PaThermal { x } | Family::PaThermalLowT { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.family, Family::Fock { .. } | Family::Coherent { .. } | Family::Pacs { .. })
    }

    /// Adaptive truncation unless overridden.
    pub fn space(&self) -> Result<FockSpace> {
        if let Some(d) = self.dim {
            return FockSpace::new(d);
        }
        let dim = match self.family {
            Family::Fock { n } => n + 1 + HEADROOM,
            Family::Coherent { alpha } => poisson_cutoff(alpha.norm_sqr(), PURE_TAIL_TOL) + HEADROOM,
            Family::Pacs { alpha, m } => poisson_cutoff(alpha.norm_sqr(), PURE_TAIL_TOL) + m as usize + HEADROOM,
            Family::Thermal { x } => geometric_cutoff(x, MIXED_TAIL_TOL) + HEADROOM,
            Family::PaThermal { x } => geometric_cutoff(x, MIXED_TAIL_TOL) + 1 + HEADROOM,
            Family::PaThermalLowT { .. } => 4 + HEADROOM,
        };
        FockSpace::new(dim.max(2))
    }

    /// The state vector, for the pure families.
    pub fn ket(&self) -> Option<Result<Ket>> {
        let space = match self.space() {
            Ok(s) => s,
            Err(e) => return Some(Err(e)),
        };
        match self.family {
            Family::Fock { n } => Some(fock_state(space, n)),
            Family::Coherent { alpha } => Some(coherent_state(space, alpha)),
            Family::Pacs { alpha, m } => Some(pacs(space, alpha, m)),
            _ => None,
        }
    }

    pub fn density(&self) -> Result<DensityOp> {
        if let Some(ket) = self.ket() {
            return Ok(ket?.projector());
        }
        let space = self.space()?;
        match self.family {
            Family::Thermal { x } => thermal_state(space, x),
            Family::PaThermal { x } => pa_thermal(space, x),
            Family::PaThermalLowT { x, order } => pa_thermal_low_t(space, x, order),
            _ => unreachable!("pure families handled above"),
        }
    }

    /// Copy of the spec with one parameter replaced.
    pub fn with_param(&self, param: SweepParam, value: f64) -> Result<StateSpec> {
        let family = match (self.family, param) {
            (Family::Coherent { .. }, SweepParam::Alpha) => Family::Coherent { alpha: C64::new(value, 0.0) },
            (Family::Pacs { m, .. }, SweepParam::Alpha) => Family::Pacs { alpha: C64::new(value, 0.0), m },
            (Family::Pacs { alpha, .. }, SweepParam::M) => Family::Pacs { alpha, m: as_count(value)? as u32 },
            (Family::Fock { .. }, SweepParam::M) => Family::Fock { n: as_count(value)? },
            (Family::Thermal { .. }, SweepParam::X) => Family::Thermal { x: value },
            (Family::PaThermal { .. }, SweepParam::X) => Family::PaThermal { x: value },
            (Family::PaThermalLowT { order, .. }, SweepParam::X) => Family::PaThermalLowT { x: value, order },
            _ => {
                return Err(Error::Domain(format!("{} has no parameter '{}'", self.kind(), param.name())));
            }
        };
        let spec = StateSpec { family, dim: self.dim };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind())?;
        match self.family {
            Family::Fock { n } => write!(f, "n={n}")?,
            Family::Coherent { alpha } => write!(f, "alpha={}", format_complex(alpha))?,
            Family::Pacs { alpha, m } => write!(f, "alpha={},m={m}", format_complex(alpha))?,
            Family::Thermal { x } | Family::PaThermal { x } | Family::PaThermalLowT { x, .. } => write!(f, "x={x}")?,
        }
        if let Some(d) = self.dim {
            write!(f, ",dim={d}")?;
        }
        Ok(())
    }
}

/// `re`, or `re+imi` / `re-imi` when the imaginary part is nonzero.
pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn as_count(value: f64) -> Result<usize> {
    if value < 0.0 || value.fract() != 0.0 || !value.is_finite() {
        return Err(Error::Domain(format!("expected a non-negative integer, got {value}")));
    }
    Ok(value as usize)
}

fn check_x(x: f64) -> Result<()> {
    if (0.0..1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("x must lie in [0, 1), got {x}")))
    }
}

fn check_low_t_x(x: f64) -> Result<()> {
    check_x(x)?;
    if x > 0.5 {
        return Err(Error::Domain(format!("low-temperature approximant has negative weights for x > 0.5, got {x}")));
    }
    Ok(())
}

pub fn fock_state(space: FockSpace, n: usize) -> Result<Ket> {
    if n >= space.dim() {
        return Err(Error::IndexOutOfSpace { n, dim: space.dim() });
    }
    let mut amps = vec![C64::new(0.0, 0.0); space.dim()];
    amps[n] = C64::new(1.0, 0.0);
    Ket::new(space, amps)
}

/// `|α⟩` truncated to the space and renormalized.
pub fn coherent_state(space: FockSpace, alpha: C64) -> Result<Ket> {
    let tail = poisson_tail(alpha.norm_sqr(), space.dim());
    if tail > BOUNDARY_TAIL_LIMIT {
        return Err(Error::Truncation { what: "coherent state", tail, limit: BOUNDARY_TAIL_LIMIT, dim: space.dim() });
    }
    let mut amps = Vec::with_capacity(space.dim());
    let mut c = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..space.dim() {
        amps.push(c);
        c = c * alpha / ((n + 1) as f64).sqrt();
    }
    Ket::new(space, amps)?.normalized()
}

/// Unnormalized `a†ᵐ |ψ⟩`.
pub fn add_photons(ket: &Ket, m: u32) -> Result<Ket> {
    let space = ket.space();
    let d = space.dim();
    let lost: f64 = ket.populations()[d.saturating_sub(m as usize)..].iter().sum();
    if lost > BOUNDARY_TAIL_LIMIT {
        return Err(Error::Truncation {
            what: "population pushed past the top level by photon addition",
            tail: lost,
            limit: BOUNDARY_TAIL_LIMIT,
            dim: d,
        });
    }
    let create = creation_matrix(space);
    let mut out = ket.clone();
    for _ in 0..m {
        out = out.apply(&create)?;
    }
    Ok(out)
}

/// Normalized m-photon-added coherent state `a†ᵐ|α⟩ / ‖a†ᵐ|α⟩‖`.
pub fn pacs(space: FockSpace, alpha: C64, m: u32) -> Result<Ket> {
    if m < 1 {
        return Err(Error::Domain("pacs needs m >= 1".into()));
    }
    let base = coherent_state(space, alpha)?;
    add_photons(&base, m)?.normalized()
}

/// `(1−x) Σ xⁿ |n⟩⟨n|`, truncated and renormalized.
pub fn thermal_state(space: FockSpace, x: f64) -> Result<DensityOp> {
    check_x(x)?;
    let pops: Vec<f64> = (0..space.dim()).map(|n| (1.0 - x) * x.powi(n as i32)).collect();
    DensityOp::diagonal(space, &pops)?.normalized()
}

/// Normalized `a† ρ_th a`.
pub fn pa_thermal(space: FockSpace, x: f64) -> Result<DensityOp> {
    apply_creation_sandwich(&thermal_state(space, x)?)?.normalized()
}

/// Populations of levels 0..=3 of the low-temperature approximant, exactly
/// as the truncated expansion gives them (before renormalization).
pub fn low_t_literal_populations(x: f64, order: LowTOrder) -> [f64; 4] {
    match order {
        LowTOrder::First => [0.0, 1.0 - 2.0 * x, 2.0 * x, 0.0],
        LowTOrder::Second => {
            let s = 1.0 / (1.0 - x * x);
            [0.0, (1.0 - 2.0 * x) * s, 2.0 * x * (1.0 - 2.0 * x) * s, 3.0 * x * x * s]
        }
    }
}

/// Trace of the literal approximant minus one.
pub fn low_t_trace_defect(x: f64, order: LowTOrder) -> f64 {
    low_t_literal_populations(x, order).iter().sum::<f64>() - 1.0
}

/// Low-temperature approximant of the photon-added thermal state, kept to
/// first or second order in `x` and renormalized to unit trace.
pub fn pa_thermal_low_t(space: FockSpace, x: f64, order: LowTOrder) -> Result<DensityOp> {
    check_low_t_x(x)?;
    let lit = low_t_literal_populations(x, order);
    let needed = match order {
        LowTOrder::First => 3,
        LowTOrder::Second => 4,
    };
    if space.dim() < needed {
        return Err(Error::IndexOutOfSpace { n: needed - 1, dim: space.dim() });
    }
    let mut pops = vec![0.0; space.dim()];
    pops[..4.min(space.dim())].copy_from_slice(&lit[..4.min(space.dim())]);
    DensityOp::diagonal(space, &pops)?.normalized()
}
