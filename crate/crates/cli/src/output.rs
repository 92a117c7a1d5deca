//! Report rendering: stable-schema JSON and aligned text tables.

use fermion_channels::capacity::CapacityReport;

/// 12 significant digits, plain decimal where reasonable.
pub fn fmt_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let s = format!("{v:.11e}");
    // expand small exponents back to plain notation for readability
    if let Some((mantissa, exp)) = s.split_once('e') {
        if let Ok(exp) = exp.parse::<i32>() {
            if (-4..12).contains(&exp) {
                let decimals = (11 - exp).max(0) as usize;
                return format!("{v:.decimals$}");
            }
        }
        return format!("{mantissa}e{exp}");
    }
    s
}

pub fn render_json(report: &CapacityReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(fmt_sig12).unwrap_or_else(|| "-".to_string())
}

pub fn render_table(report: &CapacityReport, fields: Option<&[String]>) -> String {
    let mut rows: Vec<(String, String)> = vec![
        ("n".into(), report.n.to_string()),
        (
            "N".into(),
            report
                .matrix_dim
                .map(|d| d.to_string())
                .unwrap_or_else(|| "-".to_string()),
        ),
        ("cp".into(), report.cp.to_string()),
        ("tp".into(), report.tp.to_string()),
        ("symbol_kind".into(), report.symbol_kind.clone()),
        ("segal_entropy_f".into(), opt_f64(report.segal_entropy_f)),
        ("c_ea".into(), opt_f64(report.c_ea)),
        ("hcb_min_normalized".into(), opt_f64(report.hcb_min_normalized)),
        (
            "hcb_min_matrix_trace".into(),
            opt_f64(report.hcb_min_matrix_trace),
        ),
        ("q1_lower_bound".into(), opt_f64(report.q1_lower_bound)),
    ];
    for (p, v) in &report.lp_norms {
        rows.push((format!("lp_norm[{p}]"), fmt_sig12(*v)));
    }
    if let Some(fields) = fields {
        rows.retain(|(k, _)| {
            fields.iter().any(|f| {
                f == k || (f == "lp_norms" && k.starts_with("lp_norm[")) || (f == "N" && k == "N")
            })
        });
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}
