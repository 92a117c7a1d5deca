//! Independent brute-force verifiers.
//!
//! Nothing in this module consults the closed forms of the `capacity`
//! module: entropies come from eigendecompositions, the Walsh transform is
//! the naive double loop, complete positivity is read off the Choi spectrum,
//! and the capacity is estimated by maximizing the mutual information over
//! states with a seeded derivative-free search.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::MultiplierChannel;
use crate::error::{Error, Result};
use crate::hypercube::{walsh_value, HypercubeFunction, MultiplierSymbol};
use crate::linalg::{hermitian_eigenvalues, max_abs_diff, trace, CMatrix};
use crate::parallel;

/// A validated density operator: Hermitian, positive semidefinite, trace 1.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    dim: usize,
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let dim = matrix.nrows();
        if matrix.ncols() != dim {
            return Err(Error::InvalidDensityOperator("matrix is not square".into()));
        }
        let herm_dev = max_abs_diff(&matrix, &matrix.adjoint());
        if herm_dev > 1e-12 {
            return Err(Error::InvalidDensityOperator(format!(
                "not Hermitian (deviation {herm_dev:.3e})"
            )));
        }
        let tr = trace(&matrix);
        if (tr - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(Error::InvalidDensityOperator(format!(
                "trace {} differs from 1",
                tr.re
            )));
        }
        let evs = hermitian_eigenvalues(&matrix);
        if evs.first().copied().unwrap_or(0.0) < -1e-10 {
            return Err(Error::InvalidDensityOperator(format!(
                "negative eigenvalue {:.3e}",
                evs[0]
            )));
        }
        Ok(Self { dim, matrix })
    }

    /// `I/N`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            dim,
            matrix: CMatrix::identity(dim, dim) / Complex64::new(dim as f64, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

/// Settings for the seeded multi-restart searches.
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub seed: u64,
    pub restarts: usize,
    pub max_iters: usize,
    pub step_tolerance: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: 32,
            max_iters: 400,
            step_tolerance: 1e-7,
        }
    }
}

fn spectrum_entropy(evs: &[f64]) -> f64 {
    let mut h = 0.0;
    for &l in evs {
        if l > 0.0 {
            h -= l * l.log2();
        }
    }
    h
}

/// Von Neumann entropy `-tr(rho log2 rho)`, in `[0, log2 N]`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    let evs = hermitian_eigenvalues(rho.matrix());
    spectrum_entropy(&evs).max(0.0)
}

/// Reference Walsh synthesis by the `O(4^n)` double loop over subsets and points.
pub fn naive_walsh(symbol: &MultiplierSymbol) -> Result<HypercubeFunction> {
    let n = symbol.n();
    if n > 14 {
        return Err(Error::DimensionOutOfRange(n, 2, 14));
    }
    let coeffs = symbol.coeffs();
    let size = 1usize << n;
    let values = parallel::map_indexed(size, |point| {
        let mut acc = Complex64::default();
        for (subset, c) in coeffs.iter().enumerate() {
            acc += c * walsh_value(subset, point);
        }
        acc
    });
    HypercubeFunction::new(n, values)
}

/// Outcome of comparing the Choi spectrum against the symbol-function values.
#[derive(Debug, Clone)]
pub struct SpectrumCheckReport {
    pub pass: bool,
    pub max_deviation: f64,
}

/// Sorts the Choi eigenvalues and the multiset `{f(eps)/N}` and compares them.
pub fn choi_spectrum_check(ch: &MultiplierChannel, tol: f64) -> Result<SpectrumCheckReport> {
    let dim = ch.dim().ok_or(Error::MissingMatrixRealization)?;
    let choi = ch.choi_matrix()?;
    let evs = hermitian_eigenvalues(&choi);
    let mut expected: Vec<f64> = ch
        .f()
        .values()
        .iter()
        .map(|v| v.re / dim as f64)
        .collect();
    expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let max_deviation = evs
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(SpectrumCheckReport {
        pass: max_deviation <= tol,
        max_deviation,
    })
}

/// `true` iff the smallest Choi eigenvalue is `>= -tol`.
pub fn cp_check_choi(ch: &MultiplierChannel, tol: f64) -> Result<bool> {
    let choi = ch.choi_matrix()?;
    let evs = hermitian_eigenvalues(&choi);
    Ok(evs.first().copied().unwrap_or(0.0) >= -tol)
}

/// Purification of `rho`: eigenvectors sorted by descending eigenvalue, each
/// phase fixed so its first nonzero component is real positive, then
/// `|psi> = sum_i sqrt(l_i) |e_i> (x) |i>` (system factor first).
fn purify(rho: &CMatrix) -> DVector<Complex64> {
    let herm = (rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let dim = rho.nrows();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let mut psi = DVector::from_element(dim * dim, Complex64::default());
    for (slot, &idx) in order.iter().enumerate() {
        let lambda = eig.eigenvalues[idx].max(0.0);
        if lambda == 0.0 {
            continue;
        }
        let col = eig.eigenvectors.column(idx);
        let pivot = col.iter().find(|v| v.norm() > 1e-12);
        let phase = match pivot {
            Some(p) => p.conj() / p.norm(),
            None => Complex64::new(1.0, 0.0),
        };
        let w = lambda.sqrt();
        for i in 0..dim {
            psi[i * dim + slot] = col[i] * phase * w;
        }
    }
    psi
}

/// Applies `ch (x) Id` to an operator on `C^N (x) C^N` (first factor major).
fn apply_channel_tensor_id(ch: &MultiplierChannel, big: &CMatrix) -> Result<CMatrix> {
    let dim = ch.dim().ok_or(Error::MissingMatrixRealization)?;
    let mut out = CMatrix::zeros(dim * dim, dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let block = CMatrix::from_fn(dim, dim, |i, j| big[(i * dim + a, j * dim + b)]);
            let image = ch.apply(&block)?;
            for i in 0..dim {
                for j in 0..dim {
                    out[(i * dim + a, j * dim + b)] = image[(i, j)];
                }
            }
        }
    }
    Ok(out)
}

fn mutual_information_inner(ch: &MultiplierChannel, rho: &CMatrix) -> Result<f64> {
    let psi = purify(rho);
    let pure = &psi * psi.adjoint();
    let evolved = apply_channel_tensor_id(ch, &pure)?;
    let h_in = spectrum_entropy(&hermitian_eigenvalues(rho));
    let h_out = spectrum_entropy(&hermitian_eigenvalues(&ch.apply(rho)?));
    let h_joint = spectrum_entropy(&hermitian_eigenvalues(&evolved));
    Ok(h_in + h_out - h_joint)
}

/// The mutual-information quantity `H(rho) + H(T(rho)) - H((T (x) Id)(psi))`
/// whose maximum over states is the entanglement-assisted capacity.
/// All entropies use the non-normalized matrix trace.
pub fn bsst_mutual_information(ch: &MultiplierChannel, rho: &DensityOperator) -> Result<f64> {
    if !ch.is_quantum_channel() {
        return Err(Error::NotQuantumChannel);
    }
    let dim = ch.dim().ok_or(Error::MissingMatrixRealization)?;
    if rho.dim() != dim {
        return Err(Error::MatrixSizeMismatch {
            expected: dim,
            rows: rho.dim(),
            cols: rho.dim(),
        });
    }
    mutual_information_inner(ch, rho.matrix())
}

/// Deterministic maximization of a function of a real parameter vector by
/// compass search: probe `+-step` along each coordinate, move to the best
/// improvement, halve the step on failure.
fn compass_maximize<F>(objective: &F, start: &[f64], cfg: &OptimizerConfig) -> (f64, Vec<f64>)
where
    F: Fn(&[f64]) -> f64,
{
    let mut x = start.to_vec();
    let mut best = objective(&x);
    let mut step = 0.25;
    for _ in 0..cfg.max_iters {
        let mut improved = false;
        for i in 0..x.len() {
            for sign in [1.0, -1.0] {
                let saved = x[i];
                x[i] = saved + sign * step;
                let v = objective(&x);
                if v > best + 1e-14 {
                    best = v;
                    improved = true;
                } else {
                    x[i] = saved;
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < cfg.step_tolerance {
                break;
            }
        }
    }
    (best, x)
}

fn density_from_params(params: &[f64], dim: usize) -> CMatrix {
    let a = CMatrix::from_fn(dim, dim, |i, j| {
        let idx = 2 * (i * dim + j);
        Complex64::new(params[idx], params[idx + 1])
    });
    let aa = &a * a.adjoint();
    let tr = trace(&aa).re;
    if tr <= 0.0 {
        return CMatrix::identity(dim, dim) / Complex64::new(dim as f64, 0.0);
    }
    aa / Complex64::new(tr, 0.0)
}

/// Restart starting points: the maximally mixed state first, then seeded
/// random factor matrices.
fn restart_starts(cfg: &OptimizerConfig, len: usize, identity_like: &[f64]) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut starts = Vec::with_capacity(cfg.restarts.max(1));
    starts.push(identity_like.to_vec());
    for _ in 1..cfg.restarts.max(1) {
        starts.push((0..len).map(|_| rng.gen_range(-1.0..1.0)).collect());
    }
    starts
}

fn run_restarts<F>(starts: Vec<Vec<f64>>, objective: F, cfg: &OptimizerConfig) -> (f64, Vec<f64>)
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    let results = parallel::map_indexed(starts.len(), |r| {
        compass_maximize(&objective, &starts[r], cfg)
    });
    // best value wins; ties go to the lowest restart index
    let mut best = results[0].clone();
    for r in results.into_iter().skip(1) {
        if r.0 > best.0 {
            best = r;
        }
    }
    best
}

/// Maximizes [`bsst_mutual_information`] over density operators parametrized
/// as `A A^* / tr(A A^*)`. Deterministic given `cfg.seed`; the returned value
/// is always at least the value at the maximally mixed state.
pub fn bsst_maximize(
    ch: &MultiplierChannel,
    cfg: &OptimizerConfig,
) -> Result<(f64, DensityOperator)> {
    if !ch.is_quantum_channel() {
        return Err(Error::NotQuantumChannel);
    }
    let dim = ch.dim().ok_or(Error::MissingMatrixRealization)?;
    if dim > 16 {
        return Err(Error::DimensionOutOfRange(ch.n(), 2, 8));
    }
    let len = 2 * dim * dim;
    let mut identity_like = vec![0.0; len];
    for i in 0..dim {
        identity_like[2 * (i * dim + i)] = 1.0;
    }
    let objective = |params: &[f64]| -> f64 {
        let rho = density_from_params(params, dim);
        mutual_information_inner(ch, &rho).unwrap_or(f64::NEG_INFINITY)
    };
    let starts = restart_starts(cfg, len, &identity_like);
    let (value, params) = run_restarts(starts, objective, cfg);

    let mixed = DensityOperator::maximally_mixed(dim);
    let at_mixed = mutual_information_inner(ch, mixed.matrix())?;
    if at_mixed >= value {
        return Ok((at_mixed, mixed));
    }
    let rho = DensityOperator::new(density_from_params(&params, dim))?;
    Ok((value, rho))
}

fn pure_state_from_params(params: &[f64], dim: usize) -> Option<CMatrix> {
    let v = DVector::from_fn(dim, |i, _| Complex64::new(params[2 * i], params[2 * i + 1]));
    let norm = v.norm();
    if norm < 1e-9 {
        return None;
    }
    let v = v / Complex64::new(norm, 0.0);
    Some(&v * v.adjoint())
}

/// Minimum output entropy over pure input states (entropy is concave, so the
/// minimum over all states is attained at pure ones). Non-normalized trace.
pub fn min_output_entropy_numeric(ch: &MultiplierChannel, cfg: &OptimizerConfig) -> Result<f64> {
    if !ch.is_quantum_channel() {
        return Err(Error::NotQuantumChannel);
    }
    let dim = ch.dim().ok_or(Error::MissingMatrixRealization)?;
    if dim > 16 {
        return Err(Error::DimensionOutOfRange(ch.n(), 2, 8));
    }
    let len = 2 * dim;
    let output_entropy = |state: &CMatrix| -> f64 {
        match ch.apply(state) {
            Ok(out) => spectrum_entropy(&hermitian_eigenvalues(&out)),
            Err(_) => f64::INFINITY,
        }
    };
    let objective = |params: &[f64]| -> f64 {
        match pure_state_from_params(params, dim) {
            Some(state) => -output_entropy(&state),
            None => f64::NEG_INFINITY,
        }
    };
    let mut e0 = vec![0.0; len];
    e0[0] = 1.0;
    let starts = restart_starts(cfg, len, &e0);
    let (neg_best, _) = run_restarts(starts, objective, cfg);
    let mut best = -neg_best;
    // computational basis states are cheap candidates
    for i in 0..dim {
        let mut state = CMatrix::zeros(dim, dim);
        state[(i, i)] = Complex64::new(1.0, 0.0);
        best = best.min(output_entropy(&state));
    }
    Ok(best)
}
