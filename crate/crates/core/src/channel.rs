//! Radial and diagonal multipliers as concrete quantum channels on `M_N`.

use num_complex::Complex64;

use crate::clifford::{FermionRep, MAX_FERMION_DIM};
use crate::error::{Error, Result};
use crate::hypercube::{
    min_value, walsh_synthesize, HypercubeFunction, MultiplierSymbol, POSITIVITY_TOL,
};
use crate::linalg::CMatrix;

/// Tolerance on `c_emptyset = 1` for the unital / trace-preserving check.
pub const UNITAL_TOL: f64 = 1e-12;

/// Tolerance on realness of the symbol function in the CP check.
pub const CP_REAL_TOL: f64 = 1e-12;

/// A multiplier channel: its per-subset symbol, the cached symbol function
/// `f = sum_A c_A w_A`, and (for even `n` within the matrix cap) the
/// Jordan-Wigner realization on `M_N`.
#[derive(Debug, Clone)]
pub struct MultiplierChannel {
    symbol: MultiplierSymbol,
    rep: Option<FermionRep>,
    f: HypercubeFunction,
}

impl MultiplierChannel {
    /// Wraps a symbol, attaching the matrix realization when `n` is even and
    /// small enough to realize.
    pub fn from_symbol(symbol: MultiplierSymbol) -> Result<Self> {
        let n = symbol.n();
        let rep = if n % 2 == 0 && n <= MAX_FERMION_DIM {
            Some(FermionRep::build_generators(n)?)
        } else {
            None
        };
        let f = walsh_synthesize(&symbol);
        Ok(Self { symbol, rep, f })
    }

    /// Radial channel with `c_A = phi(|A|)`.
    pub fn radial(n: usize, phi: &[Complex64]) -> Result<Self> {
        Self::from_symbol(MultiplierSymbol::radial(n, phi)?)
    }

    /// Radial channel from real symbol values.
    pub fn radial_real(n: usize, phi: &[f64]) -> Result<Self> {
        Self::from_symbol(MultiplierSymbol::radial_real(n, phi)?)
    }

    /// The qubit dephasing channel `x -> (1-t) x + t Z x Z`, realized as the
    /// `n = 2` radial multiplier with `phi = (1, 1-2t, 1)`.
    pub fn dephasing(t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter(format!(
                "dephasing parameter t = {t} outside [0, 1]"
            )));
        }
        Self::radial_real(2, &[1.0, 1.0 - 2.0 * t, 1.0])
    }

    /// Fermionic Ornstein-Uhlenbeck semigroup element, `phi(k) = exp(-t k)`.
    pub fn ou_semigroup(n: usize, t: f64) -> Result<Self> {
        if !(t >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "semigroup parameter t = {t} must be >= 0"
            )));
        }
        let phi: Vec<f64> = (0..=n).map(|k| (-t * k as f64).exp()).collect();
        Self::radial_real(n, &phi)
    }

    pub fn symbol(&self) -> &MultiplierSymbol {
        &self.symbol
    }

    /// The cached symbol function `f_phi`.
    pub fn f(&self) -> &HypercubeFunction {
        &self.f
    }

    pub fn rep(&self) -> Option<&FermionRep> {
        self.rep.as_ref()
    }

    fn rep_required(&self) -> Result<&FermionRep> {
        self.rep.as_ref().ok_or(Error::MissingMatrixRealization)
    }

    pub fn n(&self) -> usize {
        self.symbol.n()
    }

    /// Matrix size `N` when a realization is attached.
    pub fn dim(&self) -> Option<usize> {
        self.rep.as_ref().map(|r| r.dim())
    }

    /// Applies the channel: expand in the `s_A` basis, scale coefficient `A`
    /// by `c_A`, reconstruct.
    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        let rep = self.rep_required()?;
        let mut coeffs = rep.expand(x)?;
        for (lambda, c) in coeffs.iter_mut().zip(self.symbol.coeffs()) {
            *lambda *= c;
        }
        rep.reconstruct(&coeffs)
    }

    /// Matrix of `apply` in the matrix-unit basis, column-stacking convention:
    /// column `c*N + r` holds `vec(apply(E_rc))`.
    pub fn superoperator_matrix(&self) -> Result<CMatrix> {
        let rep = self.rep_required()?;
        let dim = rep.dim();
        let mut sup = CMatrix::zeros(dim * dim, dim * dim);
        for col in 0..dim {
            for row in 0..dim {
                let mut unit = CMatrix::zeros(dim, dim);
                unit[(row, col)] = Complex64::new(1.0, 0.0);
                let image = self.apply(&unit)?;
                for c2 in 0..dim {
                    for r2 in 0..dim {
                        sup[(c2 * dim + r2, col * dim + row)] = image[(r2, c2)];
                    }
                }
            }
        }
        Ok(sup)
    }

    /// Choi matrix `J = sum_ij E_ij (x) apply(E_ij)`; `tr J = N` for
    /// trace-preserving channels.
    pub fn choi_matrix(&self) -> Result<CMatrix> {
        let rep = self.rep_required()?;
        let dim = rep.dim();
        let mut choi = CMatrix::zeros(dim * dim, dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut unit = CMatrix::zeros(dim, dim);
                unit[(i, j)] = Complex64::new(1.0, 0.0);
                let image = self.apply(&unit)?;
                for k in 0..dim {
                    for l in 0..dim {
                        choi[(i * dim + k, j * dim + l)] = image[(k, l)];
                    }
                }
            }
        }
        Ok(choi)
    }

    /// `true` iff `c_emptyset = 1`, which for these multipliers is equivalent
    /// to unital and to trace-preserving. With a matrix realization attached,
    /// both are additionally confirmed numerically.
    pub fn is_unital_trace_preserving(&self) -> bool {
        let c0 = self.symbol.coeffs()[0];
        if (c0 - Complex64::new(1.0, 0.0)).norm() > UNITAL_TOL {
            return false;
        }
        if let Some(rep) = &self.rep {
            let dim = rep.dim();
            let id = CMatrix::identity(dim, dim);
            match self.apply(&id) {
                Ok(image) => {
                    if crate::linalg::max_abs_diff(&image, &id) > 1e-10 {
                        return false;
                    }
                }
                Err(_) => return false,
            }
            for i in 0..dim {
                for j in 0..dim {
                    let mut unit = CMatrix::zeros(dim, dim);
                    unit[(i, j)] = Complex64::new(1.0, 0.0);
                    let image = match self.apply(&unit) {
                        Ok(m) => m,
                        Err(_) => return false,
                    };
                    let tr = crate::linalg::trace(&image);
                    let expect = if i == j { 1.0 } else { 0.0 };
                    if (tr - Complex64::new(expect, 0.0)).norm() > 1e-10 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `true` iff the symbol function is real and pointwise nonnegative
    /// (within tolerance), which characterizes complete positivity.
    pub fn is_completely_positive(&self) -> bool {
        if self.f.max_imag() > CP_REAL_TOL {
            return false;
        }
        match min_value(&self.f) {
            Ok(m) => m >= -POSITIVITY_TOL,
            Err(_) => false,
        }
    }

    /// Both CP and trace-preserving.
    pub fn is_quantum_channel(&self) -> bool {
        self.is_completely_positive() && self.is_unital_trace_preserving()
    }

    /// Tensor product on `n1 + n2` generators. The combined symbol is
    /// per-subset (generally non-radial): `c_{A u (B+n1)} = c1_A c2_B`.
    pub fn tensor(ch1: &Self, ch2: &Self) -> Result<Self> {
        let (n1, n2) = (ch1.n(), ch2.n());
        let n = n1 + n2;
        let (c1, c2) = (ch1.symbol.coeffs(), ch2.symbol.coeffs());
        let mut coeffs = vec![Complex64::default(); 1 << n];
        for (b, cb) in c2.iter().enumerate() {
            for (a, ca) in c1.iter().enumerate() {
                coeffs[a | (b << n1)] = ca * cb;
            }
        }
        Self::from_symbol(MultiplierSymbol::from_coeffs(n, coeffs)?)
    }
}
