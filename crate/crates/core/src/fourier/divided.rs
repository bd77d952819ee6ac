//! Divided differences of the exponential at purely imaginary nodes.
//!
//! The transform of a simplex is a divided difference of `exp` over the
//! phases of its vertices. The textbook recurrence divides by node gaps and
//! cancels catastrophically when two phases nearly agree, which happens on
//! exactly the frequencies where transforms vanish. Nodes here all lie on the
//! imaginary axis, so after sorting, any contiguous run of nodes has its
//! diameter at the ends: runs narrower than [`SERIES_RADIUS`] are summed as a
//! power series around their midpoint, wider runs use the recurrence, whose
//! divisor is then bounded below.

use num_complex::Complex64;

/// Runs of nodes with diameter below this are evaluated by series.
pub const SERIES_RADIUS: f64 = 1.0;

const SERIES_TOL: f64 = 1e-17;
const SERIES_MAX_TERMS: usize = 200;

/// `exp[i t_0, ..., i t_n]`, the divided difference of `z ↦ e^z` at `z_j = i t_j`.
pub fn exp_divided_difference(phases: &[f64]) -> Complex64 {
    assert!(!phases.is_empty(), "divided difference needs at least one node");
    let mut t = phases.to_vec();
    t.sort_by(f64::total_cmp);
    let n = t.len();
    // table[a][k] holds the divided difference over nodes a..=a+k
    let mut table: Vec<Vec<Complex64>> = vec![Vec::with_capacity(n); n];
    for (a, row) in table.iter_mut().enumerate() {
        row.push(Complex64::new(0.0, t[a]).exp());
    }
    for k in 1..n {
        for a in 0..n - k {
            let b = a + k;
            let width = t[b] - t[a];
            let value = if width < SERIES_RADIUS {
                series(&t[a..=b])
            } else {
                (table[a + 1][k - 1] - table[a][k - 1]) / Complex64::new(0.0, width)
            };
            table[a].push(value);
        }
    }
    table[0][n - 1]
}

/// `e^{ic} Σ_m h_m(w) / (m + n)!` with `w_j = i (t_j − c)`, where `h_m` is the
/// complete homogeneous symmetric polynomial; this is the divided difference of
/// the exponential series term by term.
fn series(t: &[f64]) -> Complex64 {
    let n = t.len() - 1;
    let center = 0.5 * (t[0] + t[n]);
    let w: Vec<Complex64> = t.iter().map(|&tj| Complex64::new(0.0, tj - center)).collect();
    let mut inv_fact = 1.0;
    for k in 1..=n {
        inv_fact /= k as f64;
    }
    let radius = w.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    let n_fact_inv = inv_fact;
    // |h_m(w)| / (m+n)! ≤ C(m+n, n) r^m / (m+n)! = r^m / (m! n!)
    let mut bound = n_fact_inv;
    // h[k] = h_m(w_0..w_k) for the current degree m
    let mut h = vec![Complex64::new(1.0, 0.0); n + 1];
    let mut sum = h[n] * inv_fact;
    for m in 1..SERIES_MAX_TERMS {
        h[0] *= w[0];
        for k in 1..=n {
            h[k] = h[k - 1] + w[k] * h[k];
        }
        inv_fact /= (m + n) as f64;
        sum += h[n] * inv_fact;
        bound *= radius / m as f64;
        if bound <= SERIES_TOL * sum.norm().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Complex64::new(0.0, center).exp() * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct recurrence; only trustworthy for well-separated nodes.
    fn naive(t: &[f64]) -> Complex64 {
        if t.len() == 1 {
            return Complex64::new(0.0, t[0]).exp();
        }
        let n = t.len() - 1;
        (naive(&t[1..]) - naive(&t[..n])) / Complex64::new(0.0, t[n] - t[0])
    }

    #[test]
    fn single_node_is_exponential() {
        let v = exp_divided_difference(&[0.7]);
        assert!((v - Complex64::new(0.0, 0.7).exp()).norm() < 1e-15);
    }

    #[test]
    fn matches_recurrence_for_separated_nodes() {
        let t = [-3.0, 0.5, 4.25, 9.0];
        for k in 1..=t.len() {
            let a = exp_divided_difference(&t[..k]);
            let b = naive(&t[..k]);
            assert!((a - b).norm() < 1e-13, "k={k}: {a} vs {b}");
        }
    }

    #[test]
    fn coincident_nodes_give_scaled_exponential() {
        // exp[z, z, z] = e^z / 2
        let v = exp_divided_difference(&[1.3, 1.3, 1.3]);
        let expected = Complex64::new(0.0, 1.3).exp() / 2.0;
        assert!((v - expected).norm() < 1e-15);
    }

    #[test]
    fn continuous_across_the_series_switch() {
        let below = exp_divided_difference(&[0.0, 0.999_999_999]);
        let above = exp_divided_difference(&[0.0, 1.000_000_001]);
        assert!((below - above).norm() < 1e-8, "{below} vs {above}");
    }

    #[test]
    fn nearly_coincident_pair_is_accurate() {
        // exp[0, ε] = (e^{iε} − 1)/(iε); compare with its own Taylor expansion.
        let eps = 1e-9;
        let v = exp_divided_difference(&[0.0, eps]);
        let expected = Complex64::new(1.0 - eps * eps / 6.0, eps / 2.0);
        assert!((v - expected).norm() < 1e-16);
    }

    #[test]
    fn order_does_not_matter() {
        let a = exp_divided_difference(&[2.0, -1.0, 0.3]);
        let b = exp_divided_difference(&[0.3, 2.0, -1.0]);
        assert!((a - b).norm() < 1e-15);
    }
}
