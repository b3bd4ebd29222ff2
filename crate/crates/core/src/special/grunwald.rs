/// Grunwald-Letnikov weights `w_j = (-1)^j binom(alpha, j)` for `j = 0..=n`,
/// from the recurrence `w_j = w_{j-1} (j - 1 - alpha) / j`.
pub fn gl_weights(alpha: f64, n: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(n + 1);
    w.push(1.0);
    for j in 1..=n {
        let prev = w[j - 1];
        w.push(prev * (j as f64 - 1.0 - alpha) / j as f64);
    }
    w
}
