/// Renders a float with 17 significant digits in scientific notation, the
/// round-trip precision of `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}
