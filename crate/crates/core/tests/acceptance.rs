//! End-to-end acceptance suite. Each numbered criterion prints one pass/fail
//! line (visible with `--nocapture`); the test fails if any criterion fails.

use std::time::Instant;

use fermion_channels::capacity::{
    c_ea, dephasing_c_ea_closed_form, hcb_min_matrix_trace, q1_lower_bound,
};
use fermion_channels::hypercube::{
    power_mean, segal_entropy, walsh_analyze, walsh_synthesize, HypercubeFunction,
    MultiplierSymbol,
};
use fermion_channels::oracle::{
    bsst_maximize, bsst_mutual_information, choi_spectrum_check, cp_check_choi,
    min_output_entropy_numeric, naive_walsh, DensityOperator,
};
use fermion_channels::{FermionRep, MultiplierChannel, OptimizerConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn random_real_symbol(rng: &mut ChaCha8Rng, n: usize) -> MultiplierSymbol {
    MultiplierSymbol::from_coeffs(n, (0..1usize << n).map(|_| c(rng.gen_range(-1.0..1.0))).collect())
        .unwrap()
}

fn random_complex_symbol(rng: &mut ChaCha8Rng, n: usize) -> MultiplierSymbol {
    MultiplierSymbol::from_coeffs(
        n,
        (0..1usize << n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .unwrap()
}

/// A random strictly positive symbol function with mean one, pulled back to
/// its (quantum channel) symbol.
fn random_positive_channel(rng: &mut ChaCha8Rng, n: usize) -> MultiplierChannel {
    let mut values: Vec<f64> = (0..1usize << n).map(|_| rng.gen_range(0.05..2.0)).collect();
    let mean: f64 = values.iter().sum::<f64>() / values.len() as f64;
    for v in &mut values {
        *v /= mean;
    }
    let f = HypercubeFunction::new(n, values.into_iter().map(c).collect()).unwrap();
    MultiplierChannel::from_symbol(walsh_analyze(&f)).unwrap()
}

fn dephasing_grid() -> Vec<f64> {
    (0..=20).map(|i| i as f64 * 0.05).collect()
}

fn ou_grid() -> Vec<f64> {
    vec![0.1, 0.5, 1.0, 2.0, 5.0]
}

/// Closed-form Segal entropy of the n=2 Ornstein-Uhlenbeck symbol function.
fn ou_n2_entropy(t: f64) -> f64 {
    let s = (-t).exp();
    -0.5 * ((1.0 - s).powi(2) * (1.0 - s).log2()
        + (1.0 - s * s) * (1.0 - s * s).log2()
        + (1.0 + s).powi(2) * (1.0 + s).log2())
}

fn criterion_1() -> Result<(), String> {
    for t in dephasing_grid() {
        let ch = MultiplierChannel::dephasing(t).map_err(|e| e.to_string())?;
        let got = c_ea(&ch).map_err(|e| e.to_string())?;
        let want = dephasing_c_ea_closed_form(t);
        if (got - want).abs() > 1e-10 {
            return Err(format!("t={t}: c_ea {got} vs closed form {want}"));
        }
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    for t in dephasing_grid() {
        let ch = MultiplierChannel::dephasing(t).map_err(|e| e.to_string())?;
        let got = hcb_min_matrix_trace(&ch).map_err(|e| e.to_string())?;
        let want = -(dephasing_c_ea_closed_form(t) - 1.0);
        if (got - want).abs() > 1e-10 {
            return Err(format!("t={t}: hcb {got} vs closed form {want}"));
        }
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    for t in ou_grid() {
        let ch = MultiplierChannel::ou_semigroup(2, t).map_err(|e| e.to_string())?;
        let got = segal_entropy(ch.f()).map_err(|e| e.to_string())?;
        let want = ou_n2_entropy(t);
        if (got - want).abs() > 1e-10 {
            return Err(format!("t={t}: entropy {got} vs closed form {want}"));
        }
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    for n in [2usize, 4, 6, 8] {
        for trial in 0..100 {
            let ch = MultiplierChannel::from_symbol(random_real_symbol(&mut rng, n))
                .map_err(|e| e.to_string())?;
            let report = choi_spectrum_check(&ch, 1e-8).map_err(|e| e.to_string())?;
            if !report.pass {
                return Err(format!(
                    "n={n} trial={trial}: spectrum deviation {}",
                    report.max_deviation
                ));
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    for n in [2usize, 4, 6] {
        for trial in 0..200 {
            let symbol = if trial % 5 == 4 {
                // engineered to sit just on one side of zero: shift the mean
                // coefficient so min f lands exactly at +-delta
                let base = random_real_symbol(&mut rng, n);
                let f = walsh_synthesize(&base);
                let min = f
                    .values()
                    .iter()
                    .map(|v| v.re)
                    .fold(f64::INFINITY, f64::min);
                let delta = *[1e-5, -1e-5, 0.2, -0.2]
                    .iter()
                    .nth((trial / 5) % 4)
                    .unwrap();
                let mut coeffs = base.coeffs().to_vec();
                coeffs[0] += c(delta - min);
                MultiplierSymbol::from_coeffs(n, coeffs).unwrap()
            } else {
                random_real_symbol(&mut rng, n)
            };
            let ch = MultiplierChannel::from_symbol(symbol).map_err(|e| e.to_string())?;
            let fast = ch.is_completely_positive();
            let slow = cp_check_choi(&ch, 1e-8).map_err(|e| e.to_string())?;
            if fast != slow {
                return Err(format!("n={n} trial={trial}: symbol {fast} vs Choi {slow}"));
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    let cfg = OptimizerConfig {
        seed: 601,
        restarts: 32,
        ..OptimizerConfig::default()
    };
    let mut channels: Vec<MultiplierChannel> = (1..=9)
        .map(|i| MultiplierChannel::dephasing(i as f64 * 0.1).unwrap())
        .collect();
    channels.push(MultiplierChannel::ou_semigroup(4, 0.3).unwrap());
    channels.push(MultiplierChannel::ou_semigroup(4, 1.0).unwrap());
    for ch in &channels {
        let cap = c_ea(ch).map_err(|e| e.to_string())?;
        let mixed = DensityOperator::maximally_mixed(ch.dim().unwrap());
        let at_mixed = bsst_mutual_information(ch, &mixed).map_err(|e| e.to_string())?;
        if (at_mixed - cap).abs() > 1e-8 {
            return Err(format!("I(I/N)={at_mixed} vs c_ea={cap}"));
        }
        let (best, _) = bsst_maximize(ch, &cfg).map_err(|e| e.to_string())?;
        if best > cap + 1e-6 {
            return Err(format!("maximum {best} exceeds c_ea {cap}"));
        }
        if best < cap - 1e-4 {
            return Err(format!("maximum {best} misses c_ea {cap}"));
        }
    }
    Ok(())
}

fn criterion_7() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    for trial in 0..50 {
        let n = 2 + (trial % 7);
        let ch = random_positive_channel(&mut rng, n);
        let h = segal_entropy(ch.f()).map_err(|e| e.to_string())?;
        let step = 1e-5;
        let deriv =
            (power_mean(ch.f(), 1.0 + step) - power_mean(ch.f(), 1.0 - step)) / (2.0 * step);
        let numeric = -deriv / std::f64::consts::LN_2;
        if (numeric - h).abs() > 1e-6 {
            return Err(format!("trial={trial} n={n}: derivative {numeric} vs entropy {h}"));
        }
    }
    Ok(())
}

fn criterion_8() -> Result<(), String> {
    use fermion_channels::action::{
        alpha_basis_images, coassociativity_deviation, fixed_point_dimension,
        intertwining_deviation, trace_preservation_deviation, verify_coassociativity,
        verify_ergodicity, verify_intertwining, verify_trace_preservation, ActionImage,
        IDENTITY_TOL,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    for n in [2usize, 4] {
        let rep = FermionRep::build_generators(n).map_err(|e| e.to_string())?;
        if !verify_coassociativity(&rep).map_err(|e| e.to_string())? {
            return Err(format!("coassociativity n={n}"));
        }
        if !verify_ergodicity(&rep).map_err(|e| e.to_string())? {
            return Err(format!("ergodicity n={n}"));
        }
        if !verify_trace_preservation(&rep).map_err(|e| e.to_string())? {
            return Err(format!("trace preservation n={n}"));
        }
        let mut symbols = vec![
            MultiplierChannel::dephasing(0.3).unwrap().symbol().clone(),
            MultiplierChannel::ou_semigroup(n, 0.7).unwrap().symbol().clone(),
        ];
        for _ in 0..20 {
            symbols.push(random_real_symbol(&mut rng, n));
        }
        for s in symbols {
            if s.n() != n {
                continue;
            }
            let ch = MultiplierChannel::from_symbol(s).map_err(|e| e.to_string())?;
            if !verify_intertwining(&ch).map_err(|e| e.to_string())? {
                return Err(format!("intertwining n={n}"));
            }
        }

        // each verifier must reject a single-sign mutation
        let mut images = alpha_basis_images(&rep).map_err(|e| e.to_string())?;
        images[1].left *= c(-1.0);
        if coassociativity_deviation(&rep, &images).map_err(|e| e.to_string())? <= IDENTITY_TOL {
            return Err(format!("coassociativity blind to mutation, n={n}"));
        }
        let flat: Vec<ActionImage> = (0..1usize << n)
            .map(|mask| ActionImage {
                left: rep.basis_element(mask).unwrap(),
                diag: vec![c(1.0); 1 << n],
            })
            .collect();
        if fixed_point_dimension(&rep, &flat).map_err(|e| e.to_string())? == 1 {
            return Err(format!("ergodicity blind to mutation, n={n}"));
        }
        let mut images = alpha_basis_images(&rep).map_err(|e| e.to_string())?;
        images[0].diag[0] = -images[0].diag[0];
        if trace_preservation_deviation(&rep, &images).map_err(|e| e.to_string())? <= IDENTITY_TOL
        {
            return Err(format!("trace preservation blind to mutation, n={n}"));
        }
        let clean = MultiplierChannel::dephasing(0.3).unwrap().symbol().clone();
        let rep2 = FermionRep::build_generators(2).map_err(|e| e.to_string())?;
        let mut coeffs = clean.coeffs().to_vec();
        coeffs[1] = -coeffs[1];
        let mutated = MultiplierSymbol::from_coeffs(2, coeffs).unwrap();
        if intertwining_deviation(&rep2, &clean, &mutated).map_err(|e| e.to_string())?
            <= IDENTITY_TOL
        {
            return Err("intertwining blind to mutation".to_string());
        }
    }
    Ok(())
}

fn criterion_9() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    for n in 2..=12usize {
        for trial in 0..50 {
            let symbol = random_complex_symbol(&mut rng, n);
            let fast = walsh_synthesize(&symbol);
            let slow = naive_walsh(&symbol).map_err(|e| e.to_string())?;
            let dev = fast
                .values()
                .iter()
                .zip(slow.values())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if dev > 1e-12 {
                return Err(format!("n={n} trial={trial}: FWHT vs naive deviation {dev}"));
            }
            let round = walsh_analyze(&fast);
            let dev = round
                .coeffs()
                .iter()
                .zip(symbol.coeffs())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if dev > 1e-12 {
                return Err(format!("n={n} trial={trial}: round-trip deviation {dev}"));
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Result<(), String> {
    for k in 1..=4usize {
        let n = 2 * k;
        let id = MultiplierChannel::radial_real(n, &vec![1.0; n + 1]).map_err(|e| e.to_string())?;
        if (c_ea(&id).unwrap() - n as f64).abs() > 1e-12 {
            return Err(format!("identity n={n}: c_ea"));
        }
        if (hcb_min_matrix_trace(&id).unwrap() + k as f64).abs() > 1e-12 {
            return Err(format!("identity n={n}: hcb"));
        }
        let mut phi = vec![0.0; n + 1];
        phi[0] = 1.0;
        let noisy = MultiplierChannel::radial_real(n, &phi).map_err(|e| e.to_string())?;
        if c_ea(&noisy).unwrap().abs() > 1e-12 {
            return Err(format!("noisy n={n}: c_ea"));
        }
        if (hcb_min_matrix_trace(&noisy).unwrap() - k as f64).abs() > 1e-12 {
            return Err(format!("noisy n={n}: hcb"));
        }
    }
    Ok(())
}

fn criterion_11() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1101);
    for trial in 0..20 {
        let a = random_positive_channel(&mut rng, 2);
        let b = random_positive_channel(&mut rng, 2);
        let ab = MultiplierChannel::tensor(&a, &b).map_err(|e| e.to_string())?;
        let sum = c_ea(&a).unwrap() + c_ea(&b).unwrap();
        let got = c_ea(&ab).map_err(|e| e.to_string())?;
        if (got - sum).abs() > 1e-10 {
            return Err(format!("trial={trial}: {got} vs {sum}"));
        }
    }
    Ok(())
}

fn criterion_12() -> Result<(), String> {
    let cfg = OptimizerConfig {
        seed: 1201,
        restarts: 8,
        ..OptimizerConfig::default()
    };
    let mut channels: Vec<MultiplierChannel> = dephasing_grid()
        .into_iter()
        .map(|t| MultiplierChannel::dephasing(t).unwrap())
        .collect();
    channels.extend(
        ou_grid()
            .into_iter()
            .map(|t| MultiplierChannel::ou_semigroup(2, t).unwrap()),
    );
    for ch in &channels {
        let hcb = hcb_min_matrix_trace(ch).map_err(|e| e.to_string())?;
        let hmin = min_output_entropy_numeric(ch, &cfg).map_err(|e| e.to_string())?;
        if hcb > hmin + 1e-6 {
            return Err(format!("hcb {hcb} exceeds numeric minimum {hmin}"));
        }
        let q1 = q1_lower_bound(ch).unwrap();
        let cap = c_ea(ch).unwrap();
        if q1 > cap + 1e-10 {
            return Err(format!("q1 {q1} exceeds c_ea {cap}"));
        }
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("dephasing capacity closed form", criterion_1),
        ("dephasing cb entropy closed form", criterion_2),
        ("ornstein-uhlenbeck n=2 entropy", criterion_3),
        ("choi spectrum law", criterion_4),
        ("cp equivalence symbol vs choi", criterion_5),
        ("bsst oracle reaches capacity", criterion_6),
        ("entropy-derivative consistency", criterion_7),
        ("action identities and mutations", criterion_8),
        ("fwht vs naive and round trip", criterion_9),
        ("extreme channels", criterion_10),
        ("tensor additivity", criterion_11),
        ("bound ordering", criterion_12),
    ];
    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:2}: pass  ({elapsed:7.2}s)  {name}", i + 1),
            Err(msg) => {
                println!("criterion {:2}: FAIL  ({elapsed:7.2}s)  {name}: {msg}", i + 1);
                failures.push(format!("{}: {msg}", i + 1));
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
