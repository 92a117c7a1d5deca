//! Closed-form information quantities computed from the symbol function alone.
//!
//! For a multiplier channel with symbol function `f`:
//! the cb norm `L^1 -> L^p` equals `||f||_p`, the completely bounded minimum
//! output entropy (normalized trace) equals the Segal entropy `H(f)`, the
//! entanglement-assisted classical capacity equals `-H(f)`, and with the
//! matrix trace the cb entropy shifts by `log2 N`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::channel::MultiplierChannel;
use crate::error::{Error, Result};
use crate::hypercube::{lp_norm, segal_entropy};

/// Cb norm `L^1 -> L^p` of the multiplier, `= ||f||_p`. Requires `p > 1`.
pub fn cb_norm_1_to_p(ch: &MultiplierChannel, p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::ExponentNotAboveOne(p));
    }
    lp_norm(ch.f(), p)
}

fn require_channel(ch: &MultiplierChannel) -> Result<()> {
    if !ch.is_quantum_channel() {
        return Err(Error::NotQuantumChannel);
    }
    Ok(())
}

fn require_even(ch: &MultiplierChannel) -> Result<usize> {
    if ch.n() % 2 != 0 {
        return Err(Error::OddDimension(ch.n()));
    }
    Ok(ch.n() / 2)
}

/// Cb minimum output entropy with respect to the normalized trace: `H(f)`.
pub fn hcb_min_normalized(ch: &MultiplierChannel) -> Result<f64> {
    require_channel(ch)?;
    segal_entropy(ch.f())
}

/// Cb minimum output entropy with respect to the matrix trace:
/// `H(f) + log2 N`, `N = 2^(n/2)`. Even `n` only.
pub fn hcb_min_matrix_trace(ch: &MultiplierChannel) -> Result<f64> {
    require_channel(ch)?;
    let k = require_even(ch)?;
    Ok(segal_entropy(ch.f())? + k as f64)
}

/// Entanglement-assisted classical capacity `-H(f)`, in `[0, n]` bits.
pub fn c_ea(ch: &MultiplierChannel) -> Result<f64> {
    require_channel(ch)?;
    Ok(-segal_entropy(ch.f())?)
}

/// Lower bound on the channel coherent information:
/// `max(-log2 N - H(f), 0)`. Even `n` only.
pub fn q1_lower_bound(ch: &MultiplierChannel) -> Result<f64> {
    require_channel(ch)?;
    let k = require_even(ch)?;
    Ok((-(k as f64) - segal_entropy(ch.f())?).max(0.0))
}

/// Aggregate report; channel-gated fields stay `None` when the symbol does
/// not define a quantum channel, and matrix-trace fields stay `None` for odd `n`.
#[derive(Debug, Clone, Serialize)]
pub struct CapacityReport {
    pub n: usize,
    #[serde(rename = "N")]
    pub matrix_dim: Option<usize>,
    pub cp: bool,
    pub tp: bool,
    pub symbol_kind: String,
    pub segal_entropy_f: Option<f64>,
    pub c_ea: Option<f64>,
    pub hcb_min_normalized: Option<f64>,
    pub hcb_min_matrix_trace: Option<f64>,
    pub q1_lower_bound: Option<f64>,
    pub lp_norms: BTreeMap<String, f64>,
}

/// Formats an exponent as a stable map key (`"2"`, `"2.5"`, `"inf"`).
pub fn p_key(p: f64) -> String {
    if p.is_infinite() {
        "inf".to_string()
    } else if p == p.trunc() {
        format!("{}", p as i64)
    } else {
        format!("{p}")
    }
}

/// Computes the full report; `p_list` selects which cb norms to include.
pub fn capacity_report(ch: &MultiplierChannel, p_list: &[f64]) -> Result<CapacityReport> {
    let cp = ch.is_completely_positive();
    let tp = ch.is_unital_trace_preserving();
    let is_channel = cp && tp;
    let even = ch.n() % 2 == 0;

    let mut lp_norms = BTreeMap::new();
    for &p in p_list {
        lp_norms.insert(p_key(p), cb_norm_1_to_p(ch, p)?);
    }

    let entropy = if is_channel {
        Some(segal_entropy(ch.f())?)
    } else {
        None
    };

    Ok(CapacityReport {
        n: ch.n(),
        matrix_dim: even.then(|| 1usize << (ch.n() / 2)),
        cp,
        tp,
        symbol_kind: if ch.symbol().is_radial() {
            "radial".to_string()
        } else {
            "diagonal (non-radial)".to_string()
        },
        segal_entropy_f: entropy,
        c_ea: entropy.map(|h| -h),
        hcb_min_normalized: entropy,
        hcb_min_matrix_trace: entropy.filter(|_| even).map(|h| h + (ch.n() / 2) as f64),
        q1_lower_bound: entropy
            .filter(|_| even)
            .map(|h| (-((ch.n() / 2) as f64) - h).max(0.0)),
        lp_norms,
    })
}

/// The closed-form dephasing capacity `2 + t log2 t + (1-t) log2(1-t)`.
pub fn dephasing_c_ea_closed_form(t: f64) -> f64 {
    let mut v = 2.0;
    if t > 0.0 {
        v += t * t.log2();
    }
    if t < 1.0 {
        v += (1.0 - t) * (1.0 - t).log2();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::MultiplierChannel;
    use approx::assert_abs_diff_eq;

    #[test]
    fn dephasing_closed_forms() {
        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let ch = MultiplierChannel::dephasing(t).unwrap();
            let cap = c_ea(&ch).unwrap();
            assert_abs_diff_eq!(cap, dephasing_c_ea_closed_form(t), epsilon = 1e-12);
            assert_abs_diff_eq!(
                hcb_min_matrix_trace(&ch).unwrap(),
                -(dephasing_c_ea_closed_form(t) - 1.0),
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                q1_lower_bound(&ch).unwrap(),
                (dephasing_c_ea_closed_form(t) - 1.0).max(0.0),
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(cap, -hcb_min_normalized(&ch).unwrap(), epsilon = 1e-14);
        }
    }

    #[test]
    fn extreme_channels() {
        for k in 1..=3usize {
            let n = 2 * k;
            let id = MultiplierChannel::radial_real(n, &vec![1.0; n + 1]).unwrap();
            assert_abs_diff_eq!(c_ea(&id).unwrap(), n as f64, epsilon = 1e-12);
            assert_abs_diff_eq!(
                hcb_min_matrix_trace(&id).unwrap(),
                -(k as f64),
                epsilon = 1e-12
            );
            let mut phi = vec![0.0; n + 1];
            phi[0] = 1.0;
            let noisy = MultiplierChannel::radial_real(n, &phi).unwrap();
            assert_abs_diff_eq!(c_ea(&noisy).unwrap(), 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(
                hcb_min_matrix_trace(&noisy).unwrap(),
                k as f64,
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(q1_lower_bound(&noisy).unwrap(), 0.0, epsilon = 1e-14);
        }
        // identity n=2: q1 bound is -(-2) - 1 = 1
        let id2 = MultiplierChannel::radial_real(2, &[1.0; 3]).unwrap();
        assert_abs_diff_eq!(q1_lower_bound(&id2).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn cb_norm_examples() {
        let noisy = MultiplierChannel::radial_real(2, &[1.0, 0.0, 0.0]).unwrap();
        for p in [1.5, 2.0, 10.0, f64::INFINITY] {
            assert_abs_diff_eq!(cb_norm_1_to_p(&noisy, p).unwrap(), 1.0, epsilon = 1e-14);
        }
        let deph = MultiplierChannel::dephasing(0.25).unwrap();
        assert_abs_diff_eq!(cb_norm_1_to_p(&deph, 2.0).unwrap(), 2.5f64.sqrt(), epsilon = 1e-12);
        assert!(cb_norm_1_to_p(&deph, 1.0).is_err());

        // identity symbol at p = inf: max of f = 2^n
        let id = MultiplierChannel::radial_real(4, &[1.0; 5]).unwrap();
        assert_abs_diff_eq!(cb_norm_1_to_p(&id, f64::INFINITY).unwrap(), 16.0, epsilon = 1e-10);
    }

    #[test]
    fn non_channels_are_gated() {
        let bad = MultiplierChannel::radial_real(2, &[1.0, -2.0, 1.0]).unwrap();
        assert!(c_ea(&bad).is_err());
        assert!(hcb_min_normalized(&bad).is_err());
        let report = capacity_report(&bad, &[2.0]).unwrap();
        assert!(!report.cp);
        assert!(report.tp);
        assert!(report.c_ea.is_none());
        assert!(report.hcb_min_matrix_trace.is_none());
        assert_eq!(report.lp_norms.len(), 1);
    }

    #[test]
    fn report_for_dephasing_half() {
        let ch = MultiplierChannel::dephasing(0.5).unwrap();
        let r = capacity_report(&ch, &[2.0, f64::INFINITY]).unwrap();
        assert!(r.cp && r.tp);
        assert_eq!(r.matrix_dim, Some(2));
        assert_abs_diff_eq!(r.c_ea.unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.hcb_min_matrix_trace.unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.q1_lower_bound.unwrap(), 0.0, epsilon = 1e-12);
        assert_eq!(r.symbol_kind, "radial");
        assert!(r.lp_norms.contains_key("inf"));
    }

    #[test]
    fn additivity_under_tensor() {
        let a = MultiplierChannel::dephasing(0.2).unwrap();
        let b = MultiplierChannel::ou_semigroup(2, 0.7).unwrap();
        let ab = MultiplierChannel::tensor(&a, &b).unwrap();
        let sum = c_ea(&a).unwrap() + c_ea(&b).unwrap();
        assert_abs_diff_eq!(c_ea(&ab).unwrap(), sum, epsilon = 1e-11);
        let r = capacity_report(&ab, &[]).unwrap();
        assert_eq!(r.symbol_kind, "diagonal (non-radial)");
    }
}
