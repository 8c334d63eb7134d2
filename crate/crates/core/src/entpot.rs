//! Entanglement potential: mix a single-mode state with vacuum on a 50:50
//! beam splitter, partially transpose, and take the logarithmic negativity.

use std::f64::consts::{FRAC_PI_4, SQRT_2};

use faer::{Mat, Side};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{hermiticity_defect, matrix_exponential, max_abs, CMatrix, DensityOp, FockSpace, Ket, TwoModeDensityOp};
use crate::states::{SweepParam, StateSpec};

/// PT eigenvalues in `(−threshold, 0)` count as zero.
pub const NEGATIVE_EIGEN_THRESHOLD: f64 = 1e-10;
/// Hermiticity tolerance accepted by [`hermitian_spectrum`].
pub const SPECTRUM_HERMITIAN_TOL: f64 = 1e-10;
/// Output-mode population dropped before the partial transpose.
pub const MODE_TAIL_TOL: f64 = 1e-16;
/// Largest two-mode dimension handed to the dense eigensolver.
pub const MAX_TWO_MODE_DIM: usize = 2500;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Eigenvalues, descending.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Spectrum { eigenvalues }
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// `Σ |λ|` over eigenvalues below `−NEGATIVE_EIGEN_THRESHOLD`.
    pub fn negativity(&self) -> f64 {
        let total: f64 = self.eigenvalues.iter().filter(|&&v| v < -NEGATIVE_EIGEN_THRESHOLD).map(|v| -v).sum();
        // an empty float sum is −0.0
        total + 0.0
    }

    pub fn negative_count(&self) -> usize {
        self.eigenvalues.iter().filter(|&&v| v < -NEGATIVE_EIGEN_THRESHOLD).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EPResult {
    pub negativity: f64,
    /// `1 + 2·negativity`.
    pub trace_norm: f64,
    pub ep_bits: f64,
}

impl EPResult {
    pub fn from_spectrum(spectrum: &Spectrum) -> Self {
        let negativity = spectrum.negativity();
        let trace_norm = 1.0 + 2.0 * negativity;
        EPResult { negativity, trace_norm, ep_bits: trace_norm.log2() }
    }
}

/// 50:50 beam splitter on two modes of equal dimension, stored as one
/// unitary block per total photon number.
///
/// The generator `θ(a b† − a† b)`, `θ = π/4`, conserves `n_a + n_b`, so each
/// block is exponentiated on its own. It acts as
/// `U a† U† = (a† + b†)/√2`, `U b† U† = (b† − a†)/√2`.
#[derive(Clone, Debug)]
pub struct BeamSplitter {
    dim: usize,
    sectors: Vec<CMatrix>,
}

impl BeamSplitter {
    pub fn new(space: FockSpace) -> Self {
        let dim = space.dim();
        let sectors = (0..2 * dim - 1)
            .map(|n| {
                let lo = n.saturating_sub(dim - 1);
                let hi = n.min(dim - 1);
                let size = hi - lo + 1;
                // basis |i, n−i⟩ for i = lo..=hi, local index t = i − lo
                let mut g = Mat::zeros(size, size);
                for t in 1..size {
                    let i = (lo + t) as f64;
                    let j = (n - lo - t) as f64;
                    // a b† |i, j⟩ = √i √(j+1) |i−1, j+1⟩
                    let amp = FRAC_PI_4 * (i * (j + 1.0)).sqrt();
                    g[(t - 1, t)] = C64::new(amp, 0.0);
                    g[(t, t - 1)] = C64::new(-amp, 0.0);
                }
                matrix_exponential(&g)
            })
            .collect();
        BeamSplitter { dim, sectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Amplitudes of `U|n, 0⟩` on `|i, n−i⟩`, indexed by `i`.
    pub fn split_fock(&self, n: usize) -> Vec<C64> {
        assert!(n < self.dim, "level {n} outside dim {}", self.dim);
        let block = &self.sectors[n];
        (0..=n).map(|i| block[(i, n)]).collect()
    }

    /// Dense `dim² × dim²` matrix.
    pub fn unitary(&self) -> CMatrix {
        let d = self.dim;
        let mut u = Mat::zeros(d * d, d * d);
        for (n, block) in self.sectors.iter().enumerate() {
            let lo = n.saturating_sub(d - 1);
            let idx = |t: usize| (lo + t) * d + (n - lo - t);
            for s in 0..block.nrows() {
                for t in 0..block.ncols() {
                    u[(idx(s), idx(t))] = block[(s, t)];
                }
            }
        }
        u
    }
}

pub fn beam_splitter_unitary(space_a: FockSpace, space_b: FockSpace) -> Result<CMatrix> {
    if space_a != space_b {
        return Err(Error::DimensionMismatch(space_a.dim(), space_b.dim()));
    }
    Ok(BeamSplitter::new(space_a).unitary())
}

/// `U|n, 0⟩ = (a† + b†)ⁿ/√(2ⁿ n!) |0, 0⟩ = Σᵢ √(C(n, i)/2ⁿ) |i, n−i⟩`,
/// amplitudes indexed by `i`.
pub fn vacuum_split(n: usize) -> Vec<f64> {
    // ln C(n, i) accumulated term by term over the first half, then mirrored
    let half = -(n as f64) * std::f64::consts::LN_2;
    let mut u = vec![0.0; n + 1];
    let mut ln_c = 0.0;
    for i in 0..=n / 2 {
        if i > 0 {
            ln_c += ((n - i + 1) as f64).ln() - (i as f64).ln();
        }
        u[i] = (0.5 * (ln_c + half)).exp();
        u[n - i] = u[i];
    }
    u
}

/// `U (σ ⊗ |0⟩⟨0|) U†` with both output modes at σ's dimension.
pub fn mix_with_vacuum(sigma: &DensityOp) -> Result<TwoModeDensityOp> {
    mix_into(sigma, sigma.space().dim())
}

// Fills only the output levels below `out_dim`. Since U|n,0⟩ lies in the
// total-number-n sector, ρ_out[(i,j),(i',j')] = σ[i+j, i'+j'] u_{i+j}[i] u_{i'+j'}[i'].
fn mix_into(sigma: &DensityOp, out_dim: usize) -> Result<TwoModeDensityOp> {
    let n_in = sigma.space().dim();
    let s = sigma.matrix();
    let d = out_dim;
    let mut cells = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let n = i + j;
            if n < n_in {
                cells.push((i * d + j, n, vacuum_split(n)[i]));
            }
        }
    }
    let mut out = Mat::zeros(d * d, d * d);
    for &(c, n2, u2) in &cells {
        for &(r, n, u) in &cells {
            out[(r, c)] = s[(n, n2)] * (u * u2);
        }
    }
    let space = FockSpace::new(d)?;
    TwoModeDensityOp::new(space, space, out)
}

// Output-mode cutoff. Both output modes carry the same populations
// Σₙ σₙₙ C(n, i)/2ⁿ; levels past the last one reaching MODE_TAIL_TOL go.
fn output_mode_dim(sigma: &DensityOp) -> usize {
    let pops = sigma.populations();
    let mut mode = vec![0.0; pops.len()];
    for (n, &p) in pops.iter().enumerate() {
        for (i, u) in vacuum_split(n).iter().enumerate() {
            mode[i] += p * u * u;
        }
    }
    (mode.iter().rposition(|&p| p >= MODE_TAIL_TOL).unwrap_or(0) + 1).max(2)
}

/// Partial transpose on mode b.
pub fn partial_transpose(rho: &TwoModeDensityOp) -> CMatrix {
    let db = rho.space_b().dim();
    let m = rho.matrix();
    let n = m.nrows();
    Mat::from_fn(n, n, |r, c| {
        let (na, mb) = (r / db, r % db);
        let (na2, mb2) = (c / db, c % db);
        m[(na * db + mb2, na2 * db + mb)]
    })
}

fn check_hermitian(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(m.nrows(), m.ncols()));
    }
    let dev = hermiticity_defect(m);
    if dev > SPECTRUM_HERMITIAN_TOL * max_abs(m).max(1.0) {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

pub fn hermitian_spectrum(m: &CMatrix) -> Result<Spectrum> {
    check_hermitian(m)?;
    let ev = m.self_adjoint_eigenvalues(Side::Lower).map_err(|_| Error::Eigen)?;
    Ok(Spectrum::new(ev))
}

/// Eigenvalues (descending) with eigenvectors in matching columns.
pub fn hermitian_eigen(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    check_hermitian(m)?;
    let evd = m.self_adjoint_eigen(Side::Lower).map_err(|_| Error::Eigen)?;
    let n = m.nrows();
    let vals: Vec<f64> = (0..n).map(|i| evd.S().column_vector()[i].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
    let u = evd.U();
    let vecs = Mat::from_fn(n, n, |i, j| u[(i, order[j])]);
    Ok((order.iter().map(|&k| vals[k]).collect(), vecs))
}

/// Spectrum of a Hermitian matrix, diagonalizing each connected block of
/// its sparsity pattern separately. Exact zeros decouple the blocks.
/// Blocks with no imaginary part go through the real symmetric solver.
pub fn block_spectrum(m: &CMatrix) -> Result<Spectrum> {
    check_hermitian(m)?;
    let n = m.nrows();
    let mut component = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut members = vec![start];
        component[start] = id;
        let mut head = 0;
        while head < members.len() {
            let r = members[head];
            head += 1;
            for c in 0..n {
                if component[c] == usize::MAX && m[(r, c)] != ZERO {
                    component[c] = id;
                    members.push(c);
                }
            }
        }
        members.sort_unstable();
        blocks.push(members);
    }
    let mut eigenvalues = Vec::with_capacity(n);
    for members in &blocks {
        if members.len() == 1 {
            eigenvalues.push(m[(members[0], members[0])].re);
            continue;
        }
        let k = members.len();
        let sub = Mat::from_fn(k, k, |i, j| m[(members[i], members[j])]);
        let ev = if (0..k).all(|j| (0..k).all(|i| sub[(i, j)].im == 0.0)) {
            // real symmetric blocks (real α, diagonal inputs) take the cheaper real solver
            Mat::<f64>::from_fn(k, k, |i, j| sub[(i, j)].re).self_adjoint_eigenvalues(Side::Lower)
        } else {
            sub.self_adjoint_eigenvalues(Side::Lower)
        };
        eigenvalues.extend(ev.map_err(|_| Error::Eigen)?);
    }
    Ok(Spectrum::new(eigenvalues))
}

/// PT spectrum of the beam-splitter output for input `sigma`.
///
/// Output levels whose population stays below [`MODE_TAIL_TOL`] in both
/// modes are dropped before transposing.
pub fn pt_spectrum(sigma: &DensityOp) -> Result<Spectrum> {
    let d = output_mode_dim(sigma);
    if d * d > MAX_TWO_MODE_DIM {
        return Err(Error::TooLarge { dim: d * d, limit: MAX_TWO_MODE_DIM });
    }
    let mixed = mix_into(sigma, d)?;
    block_spectrum(&partial_transpose(&mixed))
}

pub fn entanglement_potential(sigma: &DensityOp) -> Result<EPResult> {
    Ok(EPResult::from_spectrum(&pt_spectrum(sigma)?))
}

/// `log₂((2 + |α|²)/(1 + |α|²))`.
pub fn ep_spacs_closed(alpha: C64) -> f64 {
    let a2 = alpha.norm_sqr();
    ((2.0 + a2) / (1.0 + a2)).log2()
}

/// `ϱ₀`: the beam-split SPACS with the local displacements removed, nonzero
/// on `{|00⟩, |10⟩, |01⟩}`.
pub fn rho0_fixture(alpha: C64, dim: usize) -> Result<TwoModeDensityOp> {
    let space = FockSpace::new(dim)?;
    let norm = 1.0 / (2.0 * (1.0 + alpha.norm_sqr()));
    // amplitudes of |10⟩ + |01⟩ + √2 α* |00⟩
    let support = [(0usize, alpha.conj() * SQRT_2), (dim, C64::new(1.0, 0.0)), (1, C64::new(1.0, 0.0))];
    let mut m = Mat::zeros(dim * dim, dim * dim);
    for &(r, a) in &support {
        for &(c, b) in &support {
            m[(r, c)] = a * b.conj() * norm;
        }
    }
    TwoModeDensityOp::new(space, space, m)
}

/// Pure two-mode state, amplitude index `n_a·dim_b + m_b`.
#[derive(Clone, Debug)]
pub struct TwoModeKet {
    pub space_a: FockSpace,
    pub space_b: FockSpace,
    pub amplitudes: Vec<C64>,
}

impl TwoModeKet {
    pub fn projector(&self) -> Result<TwoModeDensityOp> {
        let n = self.amplitudes.len();
        let m = Mat::from_fn(n, n, |i, j| self.amplitudes[i] * self.amplitudes[j].conj());
        TwoModeDensityOp::new(self.space_a, self.space_b, m)
    }
}

/// `U(|ψ⟩ ⊗ |0⟩)`.
pub fn split_on_beam_splitter(ket: &Ket) -> TwoModeKet {
    let d = ket.space().dim();
    let mut amps = vec![ZERO; d * d];
    for (n, &c) in ket.amplitudes().iter().enumerate() {
        for (i, u) in vacuum_split(n).into_iter().enumerate() {
            if i < d && n - i < d {
                amps[i * d + (n - i)] += c * u;
            }
        }
    }
    TwoModeKet { space_a: ket.space(), space_b: ket.space(), amplitudes: amps }
}

/// EP of a pure bipartite state from its Schmidt coefficients:
/// `‖ψ^PT‖₁ = (Σ sᵢ)²` with `sᵢ` the singular values of the amplitude matrix.
pub fn schmidt_ep_pure(psi: &TwoModeKet) -> Result<f64> {
    let (da, db) = (psi.space_a.dim(), psi.space_b.dim());
    if psi.amplitudes.len() != da * db {
        return Err(Error::DimensionMismatch(psi.amplitudes.len(), da * db));
    }
    let a = Mat::from_fn(da, db, |i, j| psi.amplitudes[i * db + j]);
    let sv = a.singular_values().map_err(|_| Error::Eigen)?;
    let norm2: f64 = sv.iter().map(|s| s * s).sum();
    let sum: f64 = sv.iter().sum();
    Ok((sum * sum / norm2).log2())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub result: EPResult,
}

/// EP over a list of parameter values, one row per value in input order.
pub fn ep_sweep(template: &StateSpec, param: SweepParam, values: &[f64]) -> Result<Vec<SweepRow>> {
    values
        .iter()
        .map(|&v| {
            let spec = template.with_param(param, v)?;
            let result = entanglement_potential(&spec.density()?)?;
            Ok(SweepRow { param: v, result })
        })
        .collect()
}
