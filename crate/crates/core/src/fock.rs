//! Truncated single-mode Fock space: ladder operators, displacement,
//! tensor products and density-operator bookkeeping.
//!
//! Every operator is a dense `dim × dim` complex matrix in the basis
//! `|0⟩ … |dim−1⟩`. Two-mode operators use the row index `n_a·dim_b + m_b`.

use faer::linalg::solvers::Solve;
use faer::{Mat, Side};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type CMatrix = Mat<C64>;

/// Hermiticity tolerance for stored density operators.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Smallest trace that can be normalized away.
pub const MIN_TRACE: f64 = 1e-14;
/// Population allowed on the top retained level before a creation
/// operator is applied.
pub const BOUNDARY_TAIL_LIMIT: f64 = 1e-10;

const ZERO: C64 = C64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FockSpace {
    dim: usize,
}

impl FockSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Domain(format!("Fock space needs dim >= 2, got {dim}")));
        }
        Ok(FockSpace { dim })
    }

    pub fn dim(self) -> usize {
        self.dim
    }
}

/// `P(K ≥ n)` for a Poisson variable of the given mean.
pub fn poisson_tail(mean: f64, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if mean <= 0.0 {
        return 0.0;
    }
    let ln_mean = mean.ln();
    let ln_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    let mut ln_term = -mean + n as f64 * ln_mean - ln_fact;
    let mut sum = 0.0;
    let mut k = n;
    loop {
        let term = ln_term.exp();
        sum += term;
        if (k as f64) > mean && term <= sum * 1e-18 {
            break;
        }
        k += 1;
        ln_term += ln_mean - (k as f64).ln();
        if k > n + 100_000 {
            break;
        }
    }
    sum.min(1.0)
}

/// Smallest dimension whose Poisson tail (mean `mean`) is below `tol`.
pub fn poisson_cutoff(mean: f64, tol: f64) -> usize {
    let mut n = 1;
    while poisson_tail(mean, n) >= tol {
        n += 1;
    }
    n
}

/// Smallest dimension whose geometric tail `xᴺ` is below `tol`.
pub fn geometric_cutoff(x: f64, tol: f64) -> usize {
    if x <= 0.0 {
        return 1;
    }
    let mut n = (tol.ln() / x.ln()).ceil().max(1.0) as usize;
    while x.powi(n as i32) >= tol {
        n += 1;
    }
    n
}

/// Pure single-mode state.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    space: FockSpace,
    amplitudes: Vec<C64>,
}

impl Ket {
    pub fn new(space: FockSpace, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimensionMismatch(amplitudes.len(), space.dim()));
        }
        Ok(Ket { space, amplitudes })
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Ket> {
        let n2 = self.norm_sqr();
        if n2 <= MIN_TRACE {
            return Err(Error::ZeroTrace(n2));
        }
        let s = 1.0 / n2.sqrt();
        Ok(Ket {
            space: self.space,
            amplitudes: self.amplitudes.iter().map(|a| a * s).collect(),
        })
    }

    /// Matrix-vector product `op |ψ⟩`.
    pub fn apply(&self, op: &CMatrix) -> Result<Ket> {
        let d = self.space.dim();
        if op.nrows() != d || op.ncols() != d {
            return Err(Error::DimensionMismatch(op.nrows(), d));
        }
        let amplitudes = (0..d)
            .map(|i| (0..d).map(|j| op[(i, j)] * self.amplitudes[j]).sum())
            .collect();
        Ok(Ket { space: self.space, amplitudes })
    }

    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.populations().iter().enumerate().map(|(n, p)| n as f64 * p).sum::<f64>() / self.norm_sqr()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Ket) -> C64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn projector(&self) -> DensityOp {
        let d = self.space.dim();
        let m = Mat::from_fn(d, d, |i, j| self.amplitudes[i] * self.amplitudes[j].conj());
        DensityOp { space: self.space, matrix: hermitize(m) }
    }
}

/// Hermitian single-mode operator, usually a density matrix.
///
/// Construction checks Hermiticity to [`HERMITIAN_TOL`] and then stores the
/// exactly Hermitian part; trace and positivity are not enforced here.
#[derive(Clone, Debug)]
pub struct DensityOp {
    space: FockSpace,
    matrix: CMatrix,
}

impl DensityOp {
    pub fn new(space: FockSpace, matrix: CMatrix) -> Result<Self> {
        check_square(&matrix, space.dim())?;
        let dev = hermiticity_defect(&matrix);
        if dev > HERMITIAN_TOL * max_abs(&matrix).max(1.0) {
            return Err(Error::NotHermitian(dev));
        }
        Ok(DensityOp { space, matrix: hermitize(matrix) })
    }

    pub fn diagonal(space: FockSpace, populations: &[f64]) -> Result<Self> {
        if populations.len() != space.dim() {
            return Err(Error::DimensionMismatch(populations.len(), space.dim()));
        }
        let d = space.dim();
        let matrix = Mat::from_fn(d, d, |i, j| if i == j { C64::new(populations[i], 0.0) } else { ZERO });
        Ok(DensityOp { space, matrix })
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        (0..self.space.dim()).map(|i| self.matrix[(i, i)].re).sum()
    }

    /// `ρ / Tr ρ`.
    pub fn normalized(&self) -> Result<DensityOp> {
        let t = self.trace();
        if t <= MIN_TRACE {
            return Err(Error::ZeroTrace(t));
        }
        let d = self.space.dim();
        Ok(DensityOp {
            space: self.space,
            matrix: Mat::from_fn(d, d, |i, j| self.matrix[(i, j)] / t),
        })
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.space.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.populations().iter().enumerate().map(|(n, p)| n as f64 * p).sum::<f64>() / self.trace()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        let d = self.space.dim();
        (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| self.matrix[(i, j)].norm_sqr()).sum()
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.space.dim();
        (0..d).all(|i| (0..d).all(|j| i == j || self.matrix[(i, j)] == ZERO))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.matrix.self_adjoint_eigenvalues(Side::Lower).map_err(|_| Error::Eigen)
    }

    /// Zero-pads the operator into a larger space.
    pub fn embed(&self, space: FockSpace) -> Result<DensityOp> {
        let (old, new) = (self.space.dim(), space.dim());
        if new < old {
            return Err(Error::DimensionMismatch(new, old));
        }
        let matrix = Mat::from_fn(new, new, |i, j| if i < old && j < old { self.matrix[(i, j)] } else { ZERO });
        Ok(DensityOp { space, matrix })
    }

    /// `½‖ρ − σ‖₁`, after zero-padding the smaller operand.
    pub fn trace_distance(&self, other: &DensityOp) -> Result<f64> {
        let d = self.space.dim().max(other.space.dim());
        let space = FockSpace::new(d)?;
        let (a, b) = (self.embed(space)?, other.embed(space)?);
        let diff = Mat::from_fn(d, d, |i, j| a.matrix[(i, j)] - b.matrix[(i, j)]);
        let ev = diff.self_adjoint_eigenvalues(Side::Lower).map_err(|_| Error::Eigen)?;
        Ok(0.5 * ev.iter().map(|v| v.abs()).sum::<f64>())
    }
}

/// Density operator on `A ⊗ B`, row index `n_a·dim_b + m_b`.
#[derive(Clone, Debug)]
pub struct TwoModeDensityOp {
    space_a: FockSpace,
    space_b: FockSpace,
    matrix: CMatrix,
}

impl TwoModeDensityOp {
    pub fn new(space_a: FockSpace, space_b: FockSpace, matrix: CMatrix) -> Result<Self> {
        check_square(&matrix, space_a.dim() * space_b.dim())?;
        let dev = hermiticity_defect(&matrix);
        if dev > HERMITIAN_TOL * max_abs(&matrix).max(1.0) {
            return Err(Error::NotHermitian(dev));
        }
        Ok(TwoModeDensityOp { space_a, space_b, matrix: hermitize(matrix) })
    }

    pub fn space_a(&self) -> FockSpace {
        self.space_a
    }

    pub fn space_b(&self) -> FockSpace {
        self.space_b
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn index(&self, n_a: usize, m_b: usize) -> usize {
        n_a * self.space_b.dim() + m_b
    }

    pub fn trace(&self) -> f64 {
        (0..self.matrix.nrows()).map(|i| self.matrix[(i, i)].re).sum()
    }

    pub fn populations_a(&self) -> Vec<f64> {
        let (da, db) = (self.space_a.dim(), self.space_b.dim());
        (0..da).map(|n| (0..db).map(|m| self.matrix[(n * db + m, n * db + m)].re).sum()).collect()
    }

    pub fn populations_b(&self) -> Vec<f64> {
        let (da, db) = (self.space_a.dim(), self.space_b.dim());
        (0..db).map(|m| (0..da).map(|n| self.matrix[(n * db + m, n * db + m)].re).sum()).collect()
    }
}

/// `a` with `a|n⟩ = √n |n−1⟩`.
pub fn annihilation_matrix(space: FockSpace) -> CMatrix {
    let d = space.dim();
    Mat::from_fn(d, d, |i, j| if j == i + 1 { C64::new((j as f64).sqrt(), 0.0) } else { ZERO })
}

/// `a†`; the truncated matrix sends `|dim−1⟩` to zero.
pub fn creation_matrix(space: FockSpace) -> CMatrix {
    annihilation_matrix(space).adjoint().to_owned()
}

// Padé(13,13) numerator coefficients, Higham (2005).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// `exp(G)` by scaling and squaring with a Padé(13) approximant.
pub fn matrix_exponential(g: &CMatrix) -> CMatrix {
    let n = g.nrows();
    assert_eq!(n, g.ncols(), "matrix_exponential needs a square matrix");
    if n == 0 {
        return Mat::zeros(0, 0);
    }
    let norm = one_norm(g);
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let scale = 0.5f64.powi(s);
    let a = Mat::from_fn(n, n, |i, j| g[(i, j)] * scale);

    let id: CMatrix = Mat::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let b = &PADE13;

    let u_inner = combine(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)]);
    let u_inner = &(&a6 * &u_inner) + &combine(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &id)]);
    let u = &a * &u_inner;
    let v = combine(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)]);
    let v = &(&a6 * &v) + &combine(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &id)]);

    let num = &v + &u;
    let den = &v - &u;
    let mut e = den.partial_piv_lu().solve(&num);
    for _ in 0..s {
        e = &e * &e;
    }
    e
}

/// `D(α) = exp(α a† − α* a)` on the truncated space.
///
/// Fails when the exact coherent state `D(α)|0⟩` leaves more than
/// [`BOUNDARY_TAIL_LIMIT`] of its population outside the space.
pub fn displacement_operator(space: FockSpace, alpha: C64) -> Result<CMatrix> {
    let tail = poisson_tail(alpha.norm_sqr(), space.dim());
    if tail > BOUNDARY_TAIL_LIMIT {
        return Err(Error::Truncation {
            what: "displacement vacuum column",
            tail,
            limit: BOUNDARY_TAIL_LIMIT,
            dim: space.dim(),
        });
    }
    let a = annihilation_matrix(space);
    let d = space.dim();
    let g = Mat::from_fn(d, d, |i, j| alpha * a[(j, i)].conj() - alpha.conj() * a[(i, j)]);
    Ok(matrix_exponential(&g))
}

/// Kronecker product `A ⊗ B`, row index `i_a·rows(B) + i_b`.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac, br, bc) = (a.nrows(), a.ncols(), b.nrows(), b.ncols());
    Mat::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

/// Unnormalized photon addition `a† ρ a`.
pub fn apply_creation_sandwich(rho: &DensityOp) -> Result<DensityOp> {
    let space = rho.space();
    let top = rho.matrix[(space.dim() - 1, space.dim() - 1)].re;
    if top > BOUNDARY_TAIL_LIMIT {
        return Err(Error::Truncation {
            what: "population on the top level before photon addition",
            tail: top,
            limit: BOUNDARY_TAIL_LIMIT,
            dim: space.dim(),
        });
    }
    let c = creation_matrix(space);
    let out = &(&c * &rho.matrix) * c.adjoint();
    Ok(DensityOp { space, matrix: hermitize(out) })
}

pub(crate) fn one_norm(m: &CMatrix) -> f64 {
    (0..m.ncols()).map(|j| (0..m.nrows()).map(|i| m[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
}

pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    let mut best = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            best = best.max(m[(i, j)].norm());
        }
    }
    best
}

/// `max |M − M†|`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for j in 0..n {
        for i in 0..=j {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

pub(crate) fn hermitize(m: CMatrix) -> CMatrix {
    let n = m.nrows();
    Mat::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()))
}

fn check_square(m: &CMatrix, dim: usize) -> Result<()> {
    if m.nrows() != dim {
        return Err(Error::DimensionMismatch(m.nrows(), dim));
    }
    if m.ncols() != dim {
        return Err(Error::DimensionMismatch(m.ncols(), dim));
    }
    Ok(())
}

fn combine(terms: &[(f64, &CMatrix)]) -> CMatrix {
    let n = terms[0].1.nrows();
    Mat::from_fn(n, n, |i, j| terms.iter().map(|(c, m)| m[(i, j)] * *c).sum())
}
