/// Shortest decimal that round-trips to the same `f64`, never in scientific
/// notation. Integral values print without a fractional part and `-0` prints as
/// `0`.
pub fn format_number(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    format!("{value}")
}
