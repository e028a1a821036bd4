/// `x` with 10 significant digits, trailing zeros dropped; plain notation
/// for magnitudes in `[1e-5, 1e10)`, exponent notation otherwise.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // Round first so that e.g. 9.99999999996 is classified by its rounded exponent.
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::format_number as f;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(f(0.5), "0.5");
        assert_eq!(f(1.0), "1");
        assert_eq!(f(1.0 - (-1f64).exp()), "0.6321205588");
        assert_eq!(f(-1234.56789012345), "-1234.56789");
        assert_eq!(f(9.99999999996), "10");
        assert_eq!(f(1.5e-7), "1.5e-7");
        assert_eq!(f(-2.0e12), "-2e12");
        assert_eq!(f(123456789.0), "123456789");
        assert_eq!(f(0.0), "0");
        assert_eq!(f(f64::INFINITY), "inf");
    }
}
