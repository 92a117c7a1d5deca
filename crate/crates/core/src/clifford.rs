//! Finite-dimensional fermion algebra in its Jordan-Wigner matrix form.
//!
//! For even `n = 2k` the algebra generated by `n` selfadjoint anticommuting
//! unitaries is the full matrix algebra `M_N` with `N = 2^k`. We fix the
//! Jordan-Wigner ladder
//!
//! ```text
//! s_{2m-1} = Z^(m-1) (x) X (x) I^(k-m)
//! s_{2m}   = Z^(m-1) (x) Y (x) I^(k-m)
//! ```
//!
//! which reproduces `s_1 = X`, `s_2 = Y` at `n = 2`. Ordered products `s_A`
//! are tracked internally as signed Pauli strings: a string is determined by
//! a bit-flip mask, a phase mask and a scalar phase, so traces and basis
//! expansions cost `O(N)` per subset instead of a dense matrix product.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{singular_values, CMatrix};
use crate::parallel;

/// Largest supported number of generators (matrix size `N <= 64`).
pub const MAX_FERMION_DIM: usize = 12;

/// A signed Pauli string `phase * P` with `P |x> = (-1)^popcount(z & x) |x ^ flip>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparsePauli {
    pub flip: usize,
    pub z: usize,
    pub phase: Complex64,
}

impl SparsePauli {
    pub const IDENTITY: Self = Self {
        flip: 0,
        z: 0,
        phase: Complex64::new(1.0, 0.0),
    };

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        let sign = if (self.z & other.flip).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        Self {
            flip: self.flip ^ other.flip,
            z: self.z ^ other.z,
            phase: self.phase * other.phase * sign,
        }
    }

    /// Entry at `(row, col)`, zero unless `row == col ^ flip`.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        if row != col ^ self.flip {
            return Complex64::default();
        }
        if (self.z & col).count_ones() % 2 == 0 {
            self.phase
        } else {
            -self.phase
        }
    }

    /// Dense `N x N` matrix.
    pub fn to_dense(&self, dim: usize) -> CMatrix {
        let mut m = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            m[(col ^ self.flip, col)] = self.entry(col ^ self.flip, col);
        }
        m
    }
}

/// Jordan-Wigner representation of the fermion algebra on `n = 2k` generators.
#[derive(Debug, Clone)]
pub struct FermionRep {
    n: usize,
    dim: usize,
    generators: Vec<CMatrix>,
    strings: Vec<SparsePauli>,
}

impl FermionRep {
    /// Builds the generators for even `2 <= n <= 12`.
    pub fn build_generators(n: usize) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::OddDimension(n));
        }
        if n < 2 || n > MAX_FERMION_DIM {
            return Err(Error::DimensionOutOfRange(n, 2, MAX_FERMION_DIM));
        }
        let k = n / 2;
        let dim = 1usize << k;
        let mut gen_strings = Vec::with_capacity(n);
        for m in 1..=k {
            // qubit m sits at bit (k - m): first tensor factor most significant
            let site = 1usize << (k - m);
            let z_prefix = (((1usize << (m - 1)) - 1) << (k - m + 1)) & (dim - 1);
            gen_strings.push(SparsePauli {
                flip: site,
                z: z_prefix,
                phase: Complex64::new(1.0, 0.0),
            });
            gen_strings.push(SparsePauli {
                flip: site,
                z: z_prefix | site,
                phase: Complex64::new(0.0, 1.0),
            });
        }
        // all ordered products s_A, lowest generator index leftmost
        let mut strings = vec![SparsePauli::IDENTITY; 1 << n];
        for mask in 1..(1usize << n) {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            strings[mask] = gen_strings[low].mul(&strings[rest]);
        }
        let generators = gen_strings.iter().map(|p| p.to_dense(dim)).collect();
        Ok(Self { n, dim, generators, strings })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix size `N = 2^(n/2)`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    /// Generator `s_i`, `i` in `1..=n`.
    pub fn generator(&self, i: usize) -> Result<&CMatrix> {
        self.generators
            .get(i.checked_sub(1).ok_or(Error::SubsetOutOfRange { mask: 0, n: self.n })?)
            .ok_or(Error::SubsetOutOfRange { mask: 1 << (i - 1), n: self.n })
    }

    fn check_mask(&self, mask: usize) -> Result<()> {
        if mask >= 1 << self.n {
            return Err(Error::SubsetOutOfRange { mask, n: self.n });
        }
        Ok(())
    }

    fn check_size(&self, x: &CMatrix) -> Result<()> {
        if x.nrows() != self.dim || x.ncols() != self.dim {
            return Err(Error::MatrixSizeMismatch {
                expected: self.dim,
                rows: x.nrows(),
                cols: x.ncols(),
            });
        }
        Ok(())
    }

    /// Signed Pauli string of the ordered product `s_A`.
    pub fn string(&self, mask: usize) -> Result<&SparsePauli> {
        self.check_mask(mask)?;
        Ok(&self.strings[mask])
    }

    /// Ordered product `s_A` (ascending indices) as a dense matrix; `s_empty = I`.
    pub fn basis_element(&self, mask: usize) -> Result<CMatrix> {
        self.check_mask(mask)?;
        Ok(self.strings[mask].to_dense(self.dim))
    }

    /// Coefficients `lambda_A = (1/N) tr(s_A^* x)` of `x = sum_A lambda_A s_A`.
    pub fn expand(&self, x: &CMatrix) -> Result<Vec<Complex64>> {
        self.check_size(x)?;
        let dim = self.dim;
        let scale = 1.0 / dim as f64;
        let coeffs = parallel::map_indexed(1 << self.n, |mask| {
            let s = &self.strings[mask];
            let mut acc = Complex64::default();
            for col in 0..dim {
                let row = col ^ s.flip;
                acc += s.entry(row, col).conj() * x[(row, col)];
            }
            acc * scale
        });
        Ok(coeffs)
    }

    /// `sum_A lambda_A s_A`.
    pub fn reconstruct(&self, coeffs: &[Complex64]) -> Result<CMatrix> {
        if coeffs.len() != 1 << self.n {
            return Err(Error::DimensionMismatch {
                n: self.n,
                expected: 1 << self.n,
                got: coeffs.len(),
            });
        }
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (mask, lambda) in coeffs.iter().enumerate() {
            if lambda.norm_sqr() == 0.0 {
                continue;
            }
            let s = &self.strings[mask];
            for col in 0..self.dim {
                let row = col ^ s.flip;
                out[(row, col)] += lambda * s.entry(row, col);
            }
        }
        Ok(out)
    }

    /// Normalized trace `tau(x) = tr(x) / N`.
    pub fn normalized_trace(&self, x: &CMatrix) -> Result<Complex64> {
        self.check_size(x)?;
        Ok(x.diagonal().iter().sum::<Complex64>() / self.dim as f64)
    }

    /// Schatten-type norm with respect to the normalized trace:
    /// `((1/N) sum sigma_i^p)^(1/p)`; `p = inf` is the operator norm.
    pub fn lp_norm_tau(&self, x: &CMatrix, p: f64) -> Result<f64> {
        self.check_size(x)?;
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        let sv = singular_values(x);
        if p.is_infinite() {
            return Ok(sv.first().copied().unwrap_or(0.0));
        }
        let mean: f64 = sv.iter().map(|s| s.powf(p)).sum::<f64>() / self.dim as f64;
        Ok(mean.powf(1.0 / p))
    }
}

/// `(-1)^m(A,B)` with `m(A,B) = #{(a,b) in A x B : a > b}`, so that
/// `s_A s_B = product_sign(A,B) * s_{A xor B}`.
pub fn product_sign(a: usize, b: usize) -> i32 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros() as usize;
        swaps += (a >> (bit + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^(|A|(|A|-1)/2)`, so that `(s_A)^* = adjoint_sign(A) * s_A`.
pub fn adjoint_sign(a: usize) -> i32 {
    let k = a.count_ones() as usize;
    if (k * (k.saturating_sub(1)) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}
