//! Number formatting for tables and reports.

use std::fmt;
use std::str::FromStr;

/// How many significant figures to print.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Significant(usize),
    /// Shortest representation that parses back to the same value.
    Full,
}

impl Default for Precision {
    fn default() -> Self {
        Precision::Significant(6)
    }
}

impl FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "full" {
            return Ok(Precision::Full);
        }
        match s.parse::<usize>() {
            Ok(n @ 1..=17) => Ok(Precision::Significant(n)),
            _ => Err(format!("expected 1-17 or `full`, got `{s}`")),
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Significant(n) => write!(f, "{n}"),
            Precision::Full => write!(f, "full"),
        }
    }
}

/// `%g`-style formatting: fixed notation for moderate exponents, scientific
/// otherwise, trailing zeros removed.
pub fn format_g(v: f64, precision: Precision) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sig = match precision {
        Precision::Full => return format!("{v}"),
        Precision::Significant(n) => n,
    };
    let sci = format!("{:.*e}", sig - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp < -4 || exp >= sig as i32 {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Formats an eigenvalue, printing values below `cutoff` in magnitude as 0.
pub fn format_eigenvalue(v: f64, cutoff: f64, precision: Precision) -> String {
    if v.abs() < cutoff {
        "0".into()
    } else {
        format_g(v, precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_style() {
        let six = Precision::default();
        assert_eq!(format_g(0.3819660112501055, six), "0.381966");
        assert_eq!(format_g(6.000000000000001, six), "6");
        assert_eq!(format_g(9.114907541476756, six), "9.11491");
        assert_eq!(format_g(1234567.0, six), "1.23457e+06");
        assert_eq!(format_g(0.00001234, six), "1.234e-05");
        assert_eq!(format_g(-2.5, six), "-2.5");
        assert_eq!(format_g(100.0, Precision::Significant(3)), "100");
        assert_eq!(format_g(0.1, Precision::Full), "0.1");
    }

    #[test]
    fn eigenvalue_snapping() {
        assert_eq!(format_eigenvalue(3.6e-17, 1e-8, Precision::default()), "0");
        assert_eq!(format_eigenvalue(-9.4e-17, 1e-8, Precision::default()), "0");
    }

    #[test]
    fn parse_precision() {
        assert_eq!("full".parse::<Precision>(), Ok(Precision::Full));
        assert_eq!("9".parse::<Precision>(), Ok(Precision::Significant(9)));
        assert!("0".parse::<Precision>().is_err());
    }
}
