//! Stable text formatting for numeric output.

/// Formats `v` with 12 significant digits, in the style of C's `%.12g`.
pub fn sig12(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", v);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v))
    } else {
        let m = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0');
    t.trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::sig12;

    #[test]
    fn matches_printf_g() {
        assert_eq!(sig12(2.0), "2");
        assert_eq!(sig12(0.306852819440054), "0.30685281944");
        assert_eq!(sig12(-1.5e-7), "-1.5e-07");
        assert_eq!(sig12(123456789012345.0), "1.23456789012e+14");
        assert_eq!(sig12(1e-5), "1e-05");
        assert_eq!(sig12(0.0001), "0.0001");
        assert_eq!(sig12(3.414868085), "3.414868085");
        assert_eq!(sig12(999999999999.7), "1e+12");
    }
}
