//! The `verify` subcommand: every closed form gets an independent check.

use fermion_channels::action;
use fermion_channels::capacity;
use fermion_channels::oracle;
use fermion_channels::{MultiplierChannel, OptimizerConfig};

use crate::output::fmt_sig12;
use crate::spec::ChannelSpec;

struct Report {
    lines: Vec<String>,
    all_pass: bool,
}

impl Report {
    fn new() -> Self {
        Self {
            lines: Vec::new(),
            all_pass: true,
        }
    }

    fn check(&mut self, name: &str, pass: bool, detail: String) {
        self.all_pass &= pass;
        let status = if pass { "pass" } else { "FAIL" };
        self.lines
            .push(format!("{name:<24} {status}  {detail}"));
    }

    fn skip(&mut self, name: &str, reason: &str) {
        self.lines.push(format!("{name:<24} skip  {reason}"));
    }
}

/// Runs every applicable check, returning the rendered report and whether all
/// checks passed. Checks that do not apply at the channel's size are skipped,
/// never silently dropped.
pub fn run_checks(
    spec: &ChannelSpec,
    ch: &MultiplierChannel,
    cfg: &OptimizerConfig,
) -> fermion_channels::Result<(String, bool)> {
    let n = ch.n();
    let mut r = Report::new();
    r.lines.push(format!("channel {spec}  (n={n})"));

    let cp = ch.is_completely_positive();
    let tp = ch.is_unital_trace_preserving();
    let is_channel = cp && tp;

    if n <= 8 {
        let sc = oracle::choi_spectrum_check(ch, 1e-8)?;
        r.check(
            "choi_spectrum",
            sc.pass,
            format!("max deviation {}", fmt_sig12(sc.max_deviation)),
        );
        let choi_cp = oracle::cp_check_choi(ch, 1e-8)?;
        r.check(
            "cp_agreement",
            cp == choi_cp,
            format!("symbol says {cp}, Choi says {choi_cp}"),
        );
    } else {
        r.skip("choi_spectrum", "n > 8");
        r.skip("cp_agreement", "n > 8");
    }

    if !is_channel {
        r.skip(
            "capacity checks",
            &format!("not a quantum channel (cp={cp}, tp={tp})"),
        );
    } else if n > 8 {
        r.skip("capacity checks", "n > 8");
    } else {
        let c_ea = capacity::c_ea(ch)?;
        let dim = ch.dim().expect("even n");
        let mixed = oracle::DensityOperator::maximally_mixed(dim);
        let at_mixed = oracle::bsst_mutual_information(ch, &mixed)?;
        r.check(
            "bsst_at_mixed",
            (at_mixed - c_ea).abs() <= 1e-8,
            format!("|I(I/N) - c_ea| = {}", fmt_sig12((at_mixed - c_ea).abs())),
        );
        let (best, _) = oracle::bsst_maximize(ch, cfg)?;
        r.check(
            "bsst_maximize",
            best <= c_ea + 1e-6 && best >= c_ea - 1e-4,
            format!("max I = {}, c_ea = {}", fmt_sig12(best), fmt_sig12(c_ea)),
        );
        let hmin = oracle::min_output_entropy_numeric(ch, cfg)?;
        let hcb = capacity::hcb_min_matrix_trace(ch)?;
        r.check(
            "hcb_lower_bounds_hmin",
            hcb <= hmin + 1e-6,
            format!("hcb_min = {}, hmin = {}", fmt_sig12(hcb), fmt_sig12(hmin)),
        );
        let q1 = capacity::q1_lower_bound(ch)?;
        r.check(
            "q1_below_c_ea",
            q1 <= c_ea + 1e-10,
            format!("q1_lb = {}, c_ea = {}", fmt_sig12(q1), fmt_sig12(c_ea)),
        );
    }

    let rep = ch.rep();
    match rep {
        Some(rep) if n <= 4 => {
            r.check(
                "coassociativity",
                action::verify_coassociativity(rep)?,
                String::new(),
            );
            r.check(
                "intertwining",
                action::verify_intertwining(ch)?,
                String::new(),
            );
        }
        _ => {
            r.skip("coassociativity", "n > 4");
            r.skip("intertwining", "n > 4");
        }
    }
    match rep {
        Some(rep) if n <= 6 => {
            r.check("ergodicity", action::verify_ergodicity(rep)?, String::new());
            r.check(
                "trace_preservation",
                action::verify_trace_preservation(rep)?,
                String::new(),
            );
        }
        _ => {
            r.skip("ergodicity", "n > 6");
            r.skip("trace_preservation", "n > 6");
        }
    }

    r.lines.push(format!(
        "result: {}",
        if r.all_pass { "all checks passed" } else { "FAILED" }
    ));
    Ok((r.lines.join("\n") + "\n", r.all_pass))
}
