//! Deterministic numeric formatting and CSV emission.
//!
//! Every number in a CSV or report is rendered with exactly six significant
//! digits so reruns are byte-identical.

use std::fs;
use std::io;
use std::path::Path;

/// Renders `x` with six significant digits, positionally where readable and
/// falling back to scientific notation for extreme magnitudes.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let neg = x < 0.0;
    let sci = format!("{:.5e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 6);

    let body = if (-4..=8).contains(&exp) {
        let point = exp + 1; // digit count left of the decimal point
        if point <= 0 {
            format!("0.{}{}", "0".repeat(-point as usize), digits)
        } else if point as usize >= digits.len() {
            format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
        } else {
            format!(
                "{}.{}",
                &digits[..point as usize],
                &digits[point as usize..]
            )
        }
    } else {
        format!("{mantissa}e{exp}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Writes a header plus rows of already-formatted cells to `path`.
pub fn write_csv(path: &Path, header: &str, rows: &[Vec<String>]) -> io::Result<()> {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(1286.4821916450203), "1286.48");
        assert_eq!(sig6(0.13160571), "0.131606");
        assert_eq!(sig6(518200.0), "518200");
        assert_eq!(sig6(94.5), "94.5000");
        assert_eq!(sig6(-42.26086956), "-42.2609");
        assert_eq!(sig6(6.033333e-6), "6.03333e-6");
        assert_eq!(sig6(0.0), "0.00000");
        assert_eq!(sig6(9.9999999), "10.0000");
    }
}
