//! Channel descriptions as small printable expressions:
//! `dephasing(0.25)`, `ou(4,0.5)`, `radial(2;1,0,0)`,
//! `tensor(dephasing(0.1),ou(2,0.3))`. Parsing and printing round trip.

use std::fmt;
use std::str::FromStr;

use fermion_channels::MultiplierChannel;

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSpec {
    Radial { n: usize, phi: Vec<f64> },
    Dephasing { t: f64 },
    Ou { n: usize, t: f64 },
    Tensor(Box<ChannelSpec>, Box<ChannelSpec>),
}

impl ChannelSpec {
    pub fn n(&self) -> usize {
        match self {
            ChannelSpec::Radial { n, .. } | ChannelSpec::Ou { n, .. } => *n,
            ChannelSpec::Dephasing { .. } => 2,
            ChannelSpec::Tensor(a, b) => a.n() + b.n(),
        }
    }

    pub fn build(&self) -> fermion_channels::Result<MultiplierChannel> {
        match self {
            ChannelSpec::Radial { n, phi } => MultiplierChannel::radial_real(*n, phi),
            ChannelSpec::Dephasing { t } => MultiplierChannel::dephasing(*t),
            ChannelSpec::Ou { n, t } => MultiplierChannel::ou_semigroup(*n, *t),
            ChannelSpec::Tensor(a, b) => MultiplierChannel::tensor(&a.build()?, &b.build()?),
        }
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelSpec::Radial { n, phi } => {
                let phi: Vec<String> = phi.iter().map(|v| v.to_string()).collect();
                write!(f, "radial({n};{})", phi.join(","))
            }
            ChannelSpec::Dephasing { t } => write!(f, "dephasing({t})"),
            ChannelSpec::Ou { n, t } => write!(f, "ou({n},{t})"),
            ChannelSpec::Tensor(a, b) => write!(f, "tensor({a},{b})"),
        }
    }
}

fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

impl FromStr for ChannelSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| format!("expected kind(...): {s}"))?;
        if !s.ends_with(')') {
            return Err(format!("unbalanced parentheses: {s}"));
        }
        let kind = &s[..open];
        let args = &s[open + 1..s.len() - 1];
        match kind {
            "dephasing" => {
                let t: f64 = args.trim().parse().map_err(|e| format!("bad t: {e}"))?;
                Ok(ChannelSpec::Dephasing { t })
            }
            "ou" => {
                let (n, t) = args
                    .split_once(',')
                    .ok_or_else(|| format!("ou expects (n,t): {args}"))?;
                Ok(ChannelSpec::Ou {
                    n: n.trim().parse().map_err(|e| format!("bad n: {e}"))?,
                    t: t.trim().parse().map_err(|e| format!("bad t: {e}"))?,
                })
            }
            "radial" => {
                let (n, phi) = args
                    .split_once(';')
                    .ok_or_else(|| format!("radial expects (n;phi0,phi1,...): {args}"))?;
                let phi: Vec<f64> = phi
                    .split(',')
                    .map(|v| v.trim().parse().map_err(|e| format!("bad phi value: {e}")))
                    .collect::<Result<_, String>>()?;
                Ok(ChannelSpec::Radial {
                    n: n.trim().parse().map_err(|e| format!("bad n: {e}"))?,
                    phi,
                })
            }
            "tensor" => {
                let (a, b) = split_top_level_comma(args)
                    .ok_or_else(|| format!("tensor expects (spec,spec): {args}"))?;
                Ok(ChannelSpec::Tensor(
                    Box::new(a.parse()?),
                    Box::new(b.parse()?),
                ))
            }
            other => Err(format!("unknown channel kind: {other}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_print_round_trips() {
        for s in [
            "dephasing(0.25)",
            "ou(4,0.5)",
            "radial(2;1,0,0)",
            "radial(4;1,0.5,0.25,0.125,0.0625)",
            "tensor(dephasing(0.1),ou(2,0.3))",
            "tensor(tensor(dephasing(0.1),dephasing(0.2)),radial(2;1,0,0))",
        ] {
            let spec: ChannelSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            let again: ChannelSpec = spec.to_string().parse().unwrap();
            assert_eq!(again, spec);
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!("dephasing".parse::<ChannelSpec>().is_err());
        assert!("dephasing(a)".parse::<ChannelSpec>().is_err());
        assert!("ou(4)".parse::<ChannelSpec>().is_err());
        assert!("blur(1)".parse::<ChannelSpec>().is_err());
        assert!("tensor(dephasing(0.1))".parse::<ChannelSpec>().is_err());
    }

    #[test]
    fn tensor_dimension_adds() {
        let spec: ChannelSpec = "tensor(dephasing(0.1),ou(4,0.3))".parse().unwrap();
        assert_eq!(spec.n(), 6);
        assert_eq!(spec.build().unwrap().n(), 6);
    }
}
