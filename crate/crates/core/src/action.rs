//! The hypercube action on the fermion algebra and its verifiers.
//!
//! `L^inf(Omega_n)` is realized as diagonal matrices in point-bitmask order,
//! which turns every identity of the action calculus into a finite matrix
//! equation:
//!
//! ```text
//! alpha(s_A) = s_A (x) diag(w_A)      beta(s_A) = diag(w_A) (x) s_A
//! eta(w_A)   = s_A (x) s_A            Delta(diag(w_A)) = diag(w_A) (x) diag(w_A)
//! ```
//!
//! The `verify_*` functions check each identity on every basis element. They
//! are built on image-parameterized internals so that tests can inject sign
//! mutations and confirm the checks actually discriminate.

use num_complex::Complex64;

use crate::channel::MultiplierChannel;
use crate::clifford::FermionRep;
use crate::error::{Error, Result};
use crate::hypercube::{walsh_analyze, walsh_value, HypercubeFunction, MultiplierSymbol};
use crate::linalg::{kron, max_abs_diff, CMatrix};

pub const IDENTITY_TOL: f64 = 1e-12;

/// Diagonal-matrix realization of functions on the hypercube.
#[derive(Debug, Clone)]
pub struct DiagonalFunctionRep {
    n: usize,
}

impl DiagonalFunctionRep {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `diag(f(eps))` in point-bitmask order.
    pub fn diagonal(&self, f: &HypercubeFunction) -> Result<CMatrix> {
        if f.n() != self.n {
            return Err(Error::DimensionMismatch {
                n: self.n,
                expected: 1 << self.n,
                got: f.values().len(),
            });
        }
        let size = 1usize << self.n;
        let mut m = CMatrix::zeros(size, size);
        for (i, v) in f.values().iter().enumerate() {
            m[(i, i)] = *v;
        }
        Ok(m)
    }

    /// `diag(w_A)`.
    pub fn walsh_diagonal(&self, subset: usize) -> CMatrix {
        CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            1 << self.n,
            (0..1usize << self.n).map(|p| Complex64::new(walsh_value(subset, p), 0.0)),
        ))
    }
}

fn walsh_values(n: usize, subset: usize) -> Vec<Complex64> {
    (0..1usize << n)
        .map(|p| Complex64::new(walsh_value(subset, p), 0.0))
        .collect()
}

/// `alpha(x) = sum_A lambda_A (s_A (x) diag(w_A))` for `x = sum_A lambda_A s_A`.
pub fn alpha(rep: &FermionRep, x: &CMatrix) -> Result<CMatrix> {
    let coeffs = rep.expand(x)?;
    let diag = DiagonalFunctionRep::new(rep.n());
    let size = rep.dim() << rep.n();
    let mut out = CMatrix::zeros(size, size);
    for (mask, lambda) in coeffs.iter().enumerate() {
        if lambda.norm_sqr() == 0.0 {
            continue;
        }
        out += kron(&rep.basis_element(mask)?, &diag.walsh_diagonal(mask)) * *lambda;
    }
    Ok(out)
}

/// `beta(x) = sum_A lambda_A (diag(w_A) (x) s_A)`; the flip of `alpha`.
pub fn beta(rep: &FermionRep, x: &CMatrix) -> Result<CMatrix> {
    let coeffs = rep.expand(x)?;
    let diag = DiagonalFunctionRep::new(rep.n());
    let size = rep.dim() << rep.n();
    let mut out = CMatrix::zeros(size, size);
    for (mask, lambda) in coeffs.iter().enumerate() {
        if lambda.norm_sqr() == 0.0 {
            continue;
        }
        out += kron(&diag.walsh_diagonal(mask), &rep.basis_element(mask)?) * *lambda;
    }
    Ok(out)
}

/// `eta(f) = sum_A c_A (s_A (x) s_A)` with `c = walsh_analyze(f)`.
pub fn eta(rep: &FermionRep, f: &HypercubeFunction) -> Result<CMatrix> {
    if f.n() != rep.n() {
        return Err(Error::DimensionMismatch {
            n: rep.n(),
            expected: 1 << rep.n(),
            got: f.values().len(),
        });
    }
    let coeffs = walsh_analyze(f);
    let dim = rep.dim();
    let mut out = CMatrix::zeros(dim * dim, dim * dim);
    for (mask, c) in coeffs.coeffs().iter().enumerate() {
        if c.norm_sqr() == 0.0 {
            continue;
        }
        let s = rep.basis_element(mask)?;
        out += kron(&s, &s) * *c;
    }
    Ok(out)
}

/// One basis image of the action, kept in factored form
/// `left (x) diag(diag_values)` so large `n` stays cheap.
#[derive(Debug, Clone)]
pub struct ActionImage {
    pub left: CMatrix,
    pub diag: Vec<Complex64>,
}

impl ActionImage {
    pub fn to_dense(&self) -> CMatrix {
        let q = self.diag.len();
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            q,
            self.diag.iter().copied(),
        ));
        kron(&self.left, &d)
    }
}

/// The images `alpha(s_A) = s_A (x) diag(w_A)` for every subset.
pub fn alpha_basis_images(rep: &FermionRep) -> Result<Vec<ActionImage>> {
    (0..1usize << rep.n())
        .map(|mask| {
            Ok(ActionImage {
                left: rep.basis_element(mask)?,
                diag: walsh_values(rep.n(), mask),
            })
        })
        .collect()
}

/// Normalized trace inner product of two factored images:
/// `tau(u^* v) = tau(u.left^* v.left) * mean(conj(u.diag) v.diag)`.
fn image_inner(rep: &FermionRep, u: &ActionImage, v: &ActionImage) -> Complex64 {
    let left = (u.left.adjoint() * &v.left).diagonal().iter().sum::<Complex64>()
        / rep.dim() as f64;
    let diag = u
        .diag
        .iter()
        .zip(&v.diag)
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        / u.diag.len() as f64;
    left * diag
}

/// Dimension of the fixed-point space `{x : action(x) = x (x) 1}` for the
/// action defined by the given basis images, via the Gram matrix of the
/// deficits `image_A - s_A (x) 1`.
pub fn fixed_point_dimension(rep: &FermionRep, images: &[ActionImage]) -> Result<usize> {
    let count = images.len();
    let trivial: Vec<ActionImage> = (0..count)
        .map(|mask| {
            Ok(ActionImage {
                left: rep.basis_element(mask)?,
                diag: vec![Complex64::new(1.0, 0.0); 1 << rep.n()],
            })
        })
        .collect::<Result<_>>()?;
    let mut gram = CMatrix::zeros(count, count);
    for a in 0..count {
        for b in a..count {
            let v = image_inner(rep, &images[a], &images[b])
                - image_inner(rep, &images[a], &trivial[b])
                - image_inner(rep, &trivial[a], &images[b])
                + image_inner(rep, &trivial[a], &trivial[b]);
            gram[(a, b)] = v;
            gram[(b, a)] = v.conj();
        }
    }
    let evs = crate::linalg::hermitian_eigenvalues(&gram);
    Ok(evs.iter().filter(|&&l| l.abs() <= 1e-9).count())
}

/// Max deviation of `(action (x) Id) . action = (Id (x) Delta) . action`
/// over all basis elements, for the action defined by the given images.
/// Both sides are assembled as dense triple tensors, so this is limited to
/// small `n`.
pub fn coassociativity_deviation(rep: &FermionRep, images: &[ActionImage]) -> Result<f64> {
    let n = rep.n();
    if n > 4 {
        return Err(Error::DimensionOutOfRange(n, 2, 4));
    }
    let q = 1usize << n;
    let diag = DiagonalFunctionRep::new(n);
    let mut worst = 0.0f64;
    for image in images {
        // first leg of the image, then action again on it by linearity
        let coeffs = rep.expand(&image.left)?;
        let size = rep.dim() * q;
        let mut again = CMatrix::zeros(size, size);
        for (b, lambda) in coeffs.iter().enumerate() {
            if lambda.norm_sqr() > 0.0 {
                again += images[b].to_dense() * *lambda;
            }
        }
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            q,
            image.diag.iter().copied(),
        ));
        let lhs = kron(&again, &d);

        // (Id (x) Delta) side: Delta(diag f) = sum_B fhat(B) w_B (x) w_B
        let fhat = walsh_analyze(&HypercubeFunction::new(n, image.diag.clone())?);
        let mut delta_d = CMatrix::zeros(q * q, q * q);
        for (b, c) in fhat.coeffs().iter().enumerate() {
            if c.norm_sqr() > 0.0 {
                let wb = diag.walsh_diagonal(b);
                delta_d += kron(&wb, &wb) * *c;
            }
        }
        let rhs = kron(&image.left, &delta_d);
        worst = worst.max(max_abs_diff(&lhs, &rhs));
    }
    Ok(worst)
}

/// Coassociativity of the hypercube action, `n` in `{2, 4}`.
pub fn verify_coassociativity(rep: &FermionRep) -> Result<bool> {
    let images = alpha_basis_images(rep)?;
    Ok(coassociativity_deviation(rep, &images)? <= IDENTITY_TOL)
}

/// Ergodicity: the fixed-point space of the action is exactly the scalars.
pub fn verify_ergodicity(rep: &FermionRep) -> Result<bool> {
    let images = alpha_basis_images(rep)?;
    Ok(fixed_point_dimension(rep, &images)? == 1)
}

/// Max deviation across the three intertwining identities
/// `beta R = (Id (x) R) beta`, `alpha R = (Id (x) T) alpha`,
/// `(Id (x) R) eta = eta T`, computed by genuinely applying each side.
/// `left_symbol` drives the multiplier inside `beta`/`alpha`/`eta` on the
/// left-hand sides; `right_symbol` drives the second-factor applications on
/// the right-hand sides. Passing the same symbol twice checks the clean
/// identity; passing a mutated copy on one side injects a fault.
pub fn intertwining_deviation(
    rep: &FermionRep,
    left_symbol: &MultiplierSymbol,
    right_symbol: &MultiplierSymbol,
) -> Result<f64> {
    let n = rep.n();
    let q = 1usize << n;
    let dim = rep.dim();
    let left_ch = MultiplierChannel::from_symbol(left_symbol.clone())?;
    let right_ch = MultiplierChannel::from_symbol(right_symbol.clone())?;
    let mut worst = 0.0f64;
    for mask in 0..q {
        let sa = rep.basis_element(mask)?;
        let r_sa = left_ch.apply(&sa)?;

        // beta R_phi(s_A) vs (Id (x) R_phi) beta(s_A)
        let lhs = beta(rep, &r_sa)?;
        let b = beta(rep, &sa)?;
        let mut rhs = CMatrix::zeros(q * dim, q * dim);
        for e1 in 0..q {
            for e2 in 0..q {
                let block = CMatrix::from_fn(dim, dim, |i, j| b[(e1 * dim + i, e2 * dim + j)]);
                let image = right_ch.apply(&block)?;
                for i in 0..dim {
                    for j in 0..dim {
                        rhs[(e1 * dim + i, e2 * dim + j)] = image[(i, j)];
                    }
                }
            }
        }
        worst = worst.max(max_abs_diff(&lhs, &rhs));

        // alpha R_phi(s_A) vs (Id (x) T_phi) alpha(s_A)
        let lhs = alpha(rep, &r_sa)?;
        let a = alpha(rep, &sa)?;
        let mut rhs = CMatrix::zeros(dim * q, dim * q);
        for i in 0..dim {
            for j in 0..dim {
                // diagonal block: a function on the hypercube, acted on by T_phi
                let block = HypercubeFunction::new(
                    n,
                    (0..q).map(|e| a[(i * q + e, j * q + e)]).collect(),
                )?;
                let mut coeffs = walsh_analyze(&block).coeffs().to_vec();
                for (c, m) in coeffs.iter_mut().zip(right_symbol.coeffs()) {
                    *c *= m;
                }
                let image = crate::hypercube::walsh_synthesize(
                    &MultiplierSymbol::from_coeffs(n, coeffs)?,
                );
                for e in 0..q {
                    rhs[(i * q + e, j * q + e)] = image.value(e);
                }
            }
        }
        worst = worst.max(max_abs_diff(&lhs, &rhs));

        // (Id (x) R_phi) eta(w_A) vs eta(T_phi(w_A))
        let wa = HypercubeFunction::new(n, walsh_values(n, mask))?;
        let e_wa = eta(rep, &wa)?;
        let mut lhs = CMatrix::zeros(dim * dim, dim * dim);
        for a2 in 0..dim {
            for b2 in 0..dim {
                let block =
                    CMatrix::from_fn(dim, dim, |i, j| e_wa[(a2 * dim + i, b2 * dim + j)]);
                let image = right_ch.apply(&block)?;
                for i in 0..dim {
                    for j in 0..dim {
                        lhs[(a2 * dim + i, b2 * dim + j)] = image[(i, j)];
                    }
                }
            }
        }
        let t_wa = HypercubeFunction::new(
            n,
            wa.values()
                .iter()
                .map(|v| v * left_symbol.coeffs()[mask])
                .collect(),
        )?;
        let rhs = eta(rep, &t_wa)?;
        worst = worst.max(max_abs_diff(&lhs, &rhs));
    }
    Ok(worst)
}

/// All three intertwining identities for the channel's symbol, `n` in `{2, 4}`.
pub fn verify_intertwining(ch: &MultiplierChannel) -> Result<bool> {
    let rep = ch.rep().ok_or(Error::MissingMatrixRealization)?;
    Ok(intertwining_deviation(rep, ch.symbol(), ch.symbol())? <= IDENTITY_TOL)
}

/// Max deviation of the normalized traces of `alpha(s_A)`, `beta(s_A)` and
/// `eta(w_A)` from `delta_{A,emptyset}`, for the given alpha images (beta is
/// its flip, eta pairs the left legs).
pub fn trace_preservation_deviation(rep: &FermionRep, images: &[ActionImage]) -> Result<f64> {
    let dim = rep.dim();
    let mut worst = 0.0f64;
    for (mask, image) in images.iter().enumerate() {
        let expect = Complex64::new(if mask == 0 { 1.0 } else { 0.0 }, 0.0);
        let tr_left = image.left.diagonal().iter().sum::<Complex64>() / dim as f64;
        let tr_diag = image.diag.iter().sum::<Complex64>() / image.diag.len() as f64;
        // alpha and beta images have the same trace (tensor factors commute
        // under the trace)
        worst = worst.max((tr_left * tr_diag - expect).norm());
        // eta(w_A) = s_A (x) s_A pairs the left leg with itself
        worst = worst.max((tr_left * tr_left - expect).norm());
    }
    Ok(worst)
}

/// Trace preservation of `alpha`, `beta` and `eta` on every basis element.
pub fn verify_trace_preservation(rep: &FermionRep) -> Result<bool> {
    let images = alpha_basis_images(rep)?;
    Ok(trace_preservation_deviation(rep, &images)? <= IDENTITY_TOL)
}
