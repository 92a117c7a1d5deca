//! Walsh-Fourier analysis on the discrete hypercube `{-1,1}^n`.
//!
//! Subsets `A` of `{1..n}` are encoded as bitmasks with bit `j-1` standing
//! for element `j`. A point of the hypercube is encoded as a bitmask where a
//! set bit means the coordinate is `-1`. With this encoding the Walsh
//! character is `w_A(eps) = (-1)^popcount(A & eps)` and synthesis of
//! `f = sum_A c_A w_A` is the textbook unnormalized Walsh-Hadamard
//! transform; analysis carries the `1/2^n` normalization.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::parallel;

/// Largest `n` for hypercube-level operations (memory-bound at `2^n` values).
pub const MAX_HYPERCUBE_DIM: usize = 24;

/// Tolerance for accepting a value as nonnegative in positivity checks.
pub const POSITIVITY_TOL: f64 = 1e-9;

/// Tolerance on `mean(f) = 1` for quantum-channel symbols.
pub const MEAN_ONE_TOL: f64 = 1e-9;

/// Per-subset multiplier coefficients `c_A`, indexed by subset bitmask.
///
/// In the radial case `c_A = phi(|A|)` and the originating values
/// `phi(0..n)` are retained in `radial_origin`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierSymbol {
    n: usize,
    coeffs: Vec<Complex64>,
    radial_origin: Option<Vec<Complex64>>,
}

impl MultiplierSymbol {
    /// Builds a general (per-subset, "diagonal") symbol from `2^n` coefficients.
    pub fn from_coeffs(n: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        check_dim(n)?;
        if coeffs.len() != 1 << n {
            return Err(Error::DimensionMismatch { n, expected: 1 << n, got: coeffs.len() });
        }
        Ok(Self { n, coeffs, radial_origin: None })
    }

    /// Builds a radial symbol: `c_A = phi(|A|)` from the `n+1` values `phi(0..n)`.
    pub fn radial(n: usize, phi: &[Complex64]) -> Result<Self> {
        check_dim(n)?;
        if phi.len() != n + 1 {
            return Err(Error::DimensionMismatch { n, expected: n + 1, got: phi.len() });
        }
        let coeffs = (0..1usize << n)
            .map(|mask| phi[mask.count_ones() as usize])
            .collect();
        Ok(Self { n, coeffs, radial_origin: Some(phi.to_vec()) })
    }

    /// Radial symbol from real values.
    pub fn radial_real(n: usize, phi: &[f64]) -> Result<Self> {
        let phi: Vec<Complex64> = phi.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Self::radial(n, &phi)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of the subset with the given bitmask.
    pub fn coeff(&self, mask: usize) -> Result<Complex64> {
        self.coeffs
            .get(mask)
            .copied()
            .ok_or(Error::SubsetOutOfRange { mask, n: self.n })
    }

    /// The values `phi(0..n)` when the symbol was constructed radially.
    pub fn radial_origin(&self) -> Option<&[Complex64]> {
        self.radial_origin.as_deref()
    }

    pub fn is_radial(&self) -> bool {
        self.radial_origin.is_some()
    }

    /// Pointwise product of two symbols on the same hypercube
    /// (the symbol of the composition of the two multipliers).
    pub fn pointwise_product(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                n: self.n,
                expected: self.coeffs.len(),
                got: other.coeffs.len(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .collect();
        let radial_origin = match (&self.radial_origin, &other.radial_origin) {
            (Some(p), Some(q)) => Some(p.iter().zip(q).map(|(a, b)| a * b).collect()),
            _ => None,
        };
        Ok(Self { n: self.n, coeffs, radial_origin })
    }
}

/// Values of a function on the hypercube, in point-bitmask order.
#[derive(Debug, Clone, PartialEq)]
pub struct HypercubeFunction {
    n: usize,
    values: Vec<Complex64>,
}

impl HypercubeFunction {
    pub fn new(n: usize, values: Vec<Complex64>) -> Result<Self> {
        check_dim(n)?;
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch { n, expected: 1 << n, got: values.len() });
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, point: usize) -> Complex64 {
        self.values[point]
    }

    /// Mean against the normalized Haar measure, `(1/2^n) sum f`.
    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / (self.values.len() as f64)
    }

    /// Largest absolute imaginary part over all values.
    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// Real parts, once `max_imag` has been checked against a tolerance.
    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 || n > MAX_HYPERCUBE_DIM {
        return Err(Error::DimensionOutOfRange(n, 2, MAX_HYPERCUBE_DIM));
    }
    Ok(())
}

/// In-place unnormalized Walsh-Hadamard transform, `O(n 2^n)`.
///
/// Butterfly stages run over disjoint chunks, so the stage loop can fan out
/// over threads without changing the result.
pub fn fwht_in_place(data: &mut [Complex64]) {
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut half = 1;
    while half < len {
        let block = half * 2;
        parallel::for_each_chunk_mut(data, block, |chunk| {
            let (lo, hi) = chunk.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        });
        half = block;
    }
}

/// Synthesis `f(eps) = sum_A c_A w_A(eps)` via the fast transform.
pub fn walsh_synthesize(symbol: &MultiplierSymbol) -> HypercubeFunction {
    let mut values = symbol.coeffs.clone();
    fwht_in_place(&mut values);
    HypercubeFunction { n: symbol.n, values }
}

/// Analysis `c_A = (1/2^n) sum_eps w_A(eps) f(eps)`, inverse of synthesis.
pub fn walsh_analyze(f: &HypercubeFunction) -> MultiplierSymbol {
    let mut coeffs = f.values.clone();
    fwht_in_place(&mut coeffs);
    let scale = 1.0 / (coeffs.len() as f64);
    for c in &mut coeffs {
        *c *= scale;
    }
    MultiplierSymbol { n: f.n, coeffs, radial_origin: None }
}

/// `((1/2^n) sum |f|^p)^(1/p)` against the normalized measure; `p = inf`
/// gives `max |f|`. Rejects `p < 1`.
pub fn lp_norm(f: &HypercubeFunction, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    Ok(power_mean(f, p))
}

/// The same expression as [`lp_norm`] without the `p >= 1` gate; used by the
/// derivative-at-`p=1` oracle which needs values slightly below 1.
pub fn power_mean(f: &HypercubeFunction, p: f64) -> f64 {
    if p.is_infinite() {
        return f.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    }
    let mean: f64 = f.values.iter().map(|v| v.norm().powf(p)).sum::<f64>() / (f.values.len() as f64);
    mean.powf(1.0 / p)
}

/// Segal entropy `H(f) = -(1/2^n) sum f log2 f` for a probability density
/// on the hypercube (`f >= 0`, mean 1). Convention `0 log 0 = 0`.
pub fn segal_entropy(f: &HypercubeFunction) -> Result<f64> {
    let im = f.max_imag();
    if im > POSITIVITY_TOL {
        return Err(Error::NotRealValued(im));
    }
    let mean = f.mean();
    if (mean.re - 1.0).abs() > MEAN_ONE_TOL {
        return Err(Error::NotChannelSymbol(format!(
            "mean(f) = {} differs from 1",
            mean.re
        )));
    }
    let mut acc = 0.0;
    for v in &f.values {
        let x = v.re;
        if x < -POSITIVITY_TOL {
            return Err(Error::NotChannelSymbol(format!(
                "f takes the negative value {x}"
            )));
        }
        if x > 0.0 {
            acc += x * x.log2();
        }
    }
    Ok(-acc / (f.values.len() as f64))
}

/// Minimum of a real-valued hypercube function.
pub fn min_value(f: &HypercubeFunction) -> Result<f64> {
    let im = f.max_imag();
    if im > 1e-12 {
        return Err(Error::NotRealValued(im));
    }
    Ok(f.values.iter().map(|v| v.re).fold(f64::INFINITY, f64::min))
}

/// Walsh character value `w_A(eps) = (-1)^popcount(A & eps)`.
pub fn walsh_value(subset: usize, point: usize) -> f64 {
    if (subset & point).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}
