use quadsum_core::SampledField2D;

/// `∬|f| log⁺|f|` as a cell-measure sum.
pub fn llogl_norm(f: &SampledField2D) -> f64 {
    let sum: f64 = f
        .values()
        .iter()
        .map(|v| {
            let a = v.abs();
            if a > 1.0 {
                a * a.ln()
            } else {
                0.0
            }
        })
        .sum();
    sum * f.cell_measure()
}
