//! Gaussian quadrature for integrands of the form polynomial × `e^{-x²}`.
//!
//! Rules store Gauss-stripped weights `w̃_i = w_i e^{x_i²}`, so that
//! `∫ f(x) dx ≈ Σ w̃_i f(x_i)` for `f` that already carries its Gaussian
//! (products of oscillator functions). The weights come from the
//! Christoffel function evaluated with a log-scaled recurrence and stay
//! relatively accurate at the outermost nodes.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes of the reference rules unless a higher polynomial degree demands
/// more.
pub const REFERENCE_NODES: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub scaled_weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w̃_i f(x_i)`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.scaled_weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Nodes needed to integrate a polynomial of the given degree times
/// `e^{-x²}` exactly, never fewer than [`REFERENCE_NODES`].
pub fn rule_size_for_degree(degree: usize) -> usize {
    REFERENCE_NODES.max(degree / 2 + 1)
}

/// Recurrence of the orthonormal polynomials,
/// `√β_{k+1} p_{k+1} = (x - α_k) p_k - √β_k p_{k-1}`, with `β_0 = μ₀ = ∫ w`.
struct Recurrence {
    alpha: Vec<f64>,
    beta: Vec<f64>,
    mu0: f64,
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `a` and
/// off-diagonal `b`, ascending, by Sturm-sequence bisection.
fn tridiagonal_eigenvalues(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { b[i - 1].abs() } else { 0.0 } + if i + 1 < n { b[i].abs() } else { 0.0 };
        lo = lo.min(a[i] - r);
        hi = hi.max(a[i] + r);
    }
    let below = |lambda: f64| -> usize {
        let mut count = 0;
        let mut d = 1.0f64;
        for i in 0..n {
            let off = if i > 0 { b[i - 1] * b[i - 1] } else { 0.0 };
            d = a[i] - lambda - if i > 0 { off / d } else { 0.0 };
            if d == 0.0 {
                d = -f64::EPSILON * (lambda.abs() + 1.0);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    (0..n)
        .map(|k| {
            let (mut l, mut h) = (lo, hi);
            loop {
                let mid = 0.5 * (l + h);
                if mid <= l || mid >= h {
                    break mid;
                }
                if below(mid) > k {
                    h = mid;
                } else {
                    l = mid;
                }
            }
        })
        .collect()
}

/// `ln Σ_{k<n} p_k(x)²` for the orthonormal polynomials of `rec`, carried in
/// a rescaled recurrence.
fn ln_christoffel_sum(x: f64, rec: &Recurrence, n: usize) -> f64 {
    const BIG: f64 = 1e150;
    let mut ln_scale = -0.5 * rec.mu0.ln();
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    let mut sum = 0.0f64;
    for k in 0..n {
        sum += cur * cur;
        if k + 1 == n {
            break;
        }
        let sb_next = rec.beta[k + 1].sqrt();
        let sb = if k > 0 { rec.beta[k].sqrt() } else { 0.0 };
        let next = ((x - rec.alpha[k]) * cur - sb * prev) / sb_next;
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            cur /= BIG;
            prev /= BIG;
            sum /= BIG * BIG;
            ln_scale += BIG.ln();
        }
    }
    sum.ln() + 2.0 * ln_scale
}

fn build_rule(rec: &Recurrence, n: usize) -> GaussRule {
    let offdiag: Vec<f64> = rec.beta[1..n].iter().map(|b| b.sqrt()).collect();
    let nodes = tridiagonal_eigenvalues(&rec.alpha[..n], &offdiag);
    let scaled_weights = nodes.iter().map(|&x| (x * x - ln_christoffel_sum(x, rec, n)).exp()).collect();
    GaussRule { nodes, scaled_weights }
}

fn hermite_recurrence(n: usize) -> Recurrence {
    Recurrence { alpha: vec![0.0; n], beta: (0..=n).map(|k| k as f64 / 2.0).collect(), mu0: PI.sqrt() }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Recurrence for the weight `e^{-x²}` on `[0, ∞)` by the discretized
/// Stieltjes procedure on a composite Gauss–Legendre measure.
///
/// Each discrete point carries its own log scale: the square-root weights
/// `√w_j e^{-x_j²/2}` underflow far out while the polynomial values that
/// multiply them grow, and the product is what matters for high degree.
fn half_range_recurrence(n: usize) -> Recurrence {
    const PANEL_NODES: usize = 32;
    const BIG: f64 = 1e100;
    // degree-2n integrands oscillate with local frequency up to ~4√n; keep
    // a few half-periods per 32-point panel
    let panel = 0.25f64.min(1.5 / (n.max(1) as f64).sqrt());
    let panels = (((4.0 * n as f64).sqrt() + 12.0) / panel).ceil() as usize;
    let (gx, gw) = gauss_legendre(PANEL_NODES);
    let mut xs = Vec::with_capacity(panels * PANEL_NODES);
    let mut ln_scale = Vec::with_capacity(panels * PANEL_NODES);
    for p in 0..panels {
        let left = p as f64 * panel;
        for (&u, &w) in gx.iter().zip(&gw) {
            let x = left + 0.5 * panel * (u + 1.0);
            xs.push(x);
            ln_scale.push(0.5 * (0.5 * panel * w).ln() - 0.5 * x * x);
        }
    }
    let mut factor: Vec<f64> = ln_scale.iter().map(|l| l.exp()).collect();
    let mu0: f64 = factor.iter().map(|f| f * f).sum();
    let mut alpha = Vec::with_capacity(n);
    let mut beta = vec![mu0];
    let mut prev = vec![0.0; xs.len()];
    let mut cur = vec![1.0 / mu0.sqrt(); xs.len()];
    let mut next = vec![0.0; xs.len()];
    for k in 0..n {
        let a: f64 = (0..xs.len()).map(|j| xs[j] * (cur[j] * factor[j]).powi(2)).sum();
        alpha.push(a);
        let sb = if k > 0 { beta[k].sqrt() } else { 0.0 };
        let mut norm2 = 0.0;
        for j in 0..xs.len() {
            next[j] = (xs[j] - a) * cur[j] - sb * prev[j];
            norm2 += (next[j] * factor[j]).powi(2);
        }
        beta.push(norm2);
        let inv = 1.0 / norm2.sqrt();
        for j in 0..xs.len() {
            prev[j] = cur[j];
            cur[j] = next[j] * inv;
            if cur[j].abs() > BIG {
                cur[j] /= BIG;
                prev[j] /= BIG;
                ln_scale[j] += BIG.ln();
                factor[j] = ln_scale[j].exp();
            }
        }
    }
    Recurrence { alpha, beta, mu0 }
}

type RuleCache = Mutex<HashMap<usize, Arc<GaussRule>>>;

fn cached(cache: &'static OnceLock<RuleCache>, n: usize, build: impl FnOnce() -> GaussRule) -> Arc<GaussRule> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = map.lock().unwrap().get(&n) {
        return Arc::clone(rule);
    }
    // built outside the lock; a concurrent duplicate build is harmless
    let rule = Arc::new(build());
    Arc::clone(map.lock().unwrap().entry(n).or_insert(rule))
}

/// `n`-point Gauss–Hermite rule on the full line.
pub fn gauss_hermite(n: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    cached(&CACHE, n, || build_rule(&hermite_recurrence(n), n))
}

/// `n`-point Gauss rule for `e^{-x²}` on `[0, ∞)`.
pub fn half_range_hermite(n: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    cached(&CACHE, n, || build_rule(&half_range_recurrence(n), n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::hermite_functions;
    use statrs::function::gamma::gamma;

    #[test]
    fn legendre_low_order() {
        let (x, w) = gauss_legendre(3);
        assert!((x[2] - 0.6f64.sqrt()).abs() < 1e-15);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(32);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((s - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn hermite_moments() {
        let rule = gauss_hermite(20);
        for k in (0..40).step_by(2) {
            let got = rule.integrate(|x| x.powi(k as i32) * (-x * x).exp());
            let want = gamma((k as f64 + 1.0) / 2.0);
            assert!((got / want - 1.0).abs() < 1e-12, "k = {k}");
        }
        let w: f64 = rule.nodes.iter().zip(&rule.scaled_weights).map(|(x, w)| w * (-x * x).exp()).sum();
        assert!((w - PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn half_range_moments() {
        let rule = half_range_hermite(30);
        assert!(rule.nodes.iter().all(|&x| x > 0.0));
        for k in 0..60 {
            let got = rule.integrate(|x| x.powi(k as i32) * (-x * x).exp());
            let want = 0.5 * gamma((k as f64 + 1.0) / 2.0);
            assert!((got / want - 1.0).abs() < 1e-11, "k = {k}");
        }
    }

    #[test]
    fn oscillator_gram_matrix() {
        let rule = gauss_hermite(REFERENCE_NODES);
        let table: Vec<Vec<f64>> = rule.nodes.iter().map(|&x| hermite_functions(150, x)).collect();
        for a in (0..=150).step_by(7) {
            for b in (0..=150).step_by(11) {
                let g: f64 = table.iter().zip(&rule.scaled_weights).map(|(p, w)| w * p[a] * p[b]).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-12, "({a}, {b}): {g}");
            }
        }
    }

    #[test]
    fn half_range_high_degree() {
        // 2∫_0^∞ ψ_a² = 1 for every a, exact for a < n
        let n = 1000;
        let rule = half_range_hermite(n);
        for a in [0usize, 1, 101, 250, 399, 700, 999] {
            let s = 2.0 * rule.integrate(|x| hermite_functions(a, x)[a].powi(2));
            assert!((s - 1.0).abs() < 1e-11, "a = {a}: {s}");
        }
    }
}
