//! Divided-difference kernels with confluent-node handling.

use alloc::vec::Vec;

#[allow(unused_imports)] // method resolution for f64 under no_std
use num_traits::Float;

use crate::quad::Fn1D;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMode {
    Analytic,
    CentralDifference,
}

#[derive(Debug, Clone, Copy)]
pub struct DDConfig {
    /// Relative confluence threshold, scaled by max(1, |node|).
    pub delta: f64,
    pub derivative: DerivativeMode,
}

impl Default for DDConfig {
    fn default() -> Self {
        DDConfig { delta: 1e-6, derivative: DerivativeMode::Analytic }
    }
}

impl DDConfig {
    pub fn with_delta(delta: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(Error::Domain("confluence threshold must be positive".into()));
        }
        Ok(DDConfig { delta, ..Default::default() })
    }
}

#[inline]
fn value(f: &Fn1D, x: f64) -> Result<f64> {
    let v = f.eval(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { x })
    }
}

fn derivative(f: &Fn1D, x: f64, h: f64, cfg: &DDConfig) -> Result<f64> {
    if cfg.derivative == DerivativeMode::Analytic {
        if let Some(df) = f.derivative() {
            let v = df(x);
            return if v.is_finite() { Ok(v) } else { Err(Error::NonFinite { x }) };
        }
    }
    let (f1, f2) = (value(f, x + h)?, value(f, x - h)?);
    let (g1, g2) = (value(f, x + 2.0 * h)?, value(f, x - 2.0 * h)?);
    Ok((8.0 * (f1 - f2) - (g1 - g2)) / (12.0 * h))
}

/// (F(u) − F(v))/(u − v), falling back to F′ at the midpoint when u ≈ v.
/// Near a finite endpoint of F's domain the confluence threshold shrinks with
/// the distance to it, so endpoint singularities keep relative accuracy.
pub fn divided_difference2(f: &Fn1D, u: f64, v: f64, cfg: &DDConfig) -> Result<f64> {
    let m = 0.5 * (u + v);
    let mut scale = 1f64.max(u.abs()).max(v.abs());
    if f.a.is_finite() {
        scale = scale.min(m - f.a);
    }
    if f.b.is_finite() {
        scale = scale.min(f.b - m);
    }
    let h = cfg.delta * scale.max(f64::MIN_POSITIVE);
    if (u - v).abs() >= h {
        Ok((value(f, u)? - value(f, v)?) / (u - v))
    } else {
        derivative(f, m, h, cfg)
    }
}

fn newton_table(g: &Fn1D, xs: &[f64]) -> Result<f64> {
    let n = xs.len();
    let mut c: Vec<f64> = Vec::with_capacity(n);
    for &x in xs {
        c.push(value(g, x)?);
    }
    for k in 1..n {
        for i in (k..n).rev() {
            c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - k]);
        }
    }
    Ok(c[n - 1])
}

// Spacing used for a cluster of m nodes: delta for pairs, delta^(2/m) beyond,
// which balances the O(s^2) spreading bias against the eps/s^(m-1) round-off.
fn spread(m: usize, delta: f64) -> f64 {
    if m <= 2 {
        delta
    } else {
        delta.powf(2.0 / m as f64)
    }
}

/// Groups of consecutive sorted nodes that must be treated as confluent.
fn clusters(xs: &[f64], delta: f64, scale: f64) -> Vec<(usize, usize)> {
    let mut groups: Vec<(usize, usize)> = (0..xs.len()).map(|i| (i, i + 1)).collect();
    loop {
        let mut merged = false;
        let mut i = 0;
        while i + 1 < groups.len() {
            let (lo, _) = groups[i];
            let (_, hi) = groups[i + 1];
            let m = hi - lo;
            let span = xs[hi - 1] - xs[lo];
            if span < (m - 1) as f64 * spread(m, delta) * scale {
                groups[i] = (lo, hi);
                groups.remove(i + 1);
                merged = true;
            } else {
                i += 1;
            }
        }
        if !merged {
            return groups;
        }
    }
}

/// Divided difference g[x₁, …, xₙ] of order n − 1.
pub fn newton_dd(g: &Fn1D, nodes: &[f64], cfg: &DDConfig) -> Result<f64> {
    if nodes.is_empty() {
        return Err(Error::Domain("divided difference needs at least one node".into()));
    }
    let mut xs: Vec<f64> = nodes.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let scale = xs.iter().fold(1f64, |s, x| s.max(x.abs()));
    let groups = clusters(&xs, cfg.delta, scale);
    if groups.len() == xs.len() {
        return newton_table(g, &xs);
    }
    let spread_nodes = |factor: f64| -> Vec<f64> {
        let mut out = Vec::with_capacity(xs.len());
        for &(lo, hi) in &groups {
            let m = hi - lo;
            if m == 1 {
                out.push(xs[lo]);
                continue;
            }
            let s = factor * spread(m, cfg.delta) * scale;
            let half = 0.5 * s * (m - 1) as f64;
            let mut c = xs[lo..hi].iter().sum::<f64>() / m as f64;
            // keep the spread cluster strictly inside the domain of g
            if g.a.is_finite() && c - half < g.a + s {
                c = g.a + half + s;
            }
            if g.b.is_finite() && c + half > g.b - s {
                c = g.b - half - s;
            }
            for j in 0..m {
                out.push(c + s * (j as f64 - 0.5 * (m - 1) as f64));
            }
        }
        out
    };
    let d1 = newton_table(g, &spread_nodes(1.0))?;
    let d2 = newton_table(g, &spread_nodes(0.5))?;
    // the spread table is even in the spacing, so its error starts at s^2
    Ok((4.0 * d2 - d1) / 3.0)
}

/// Symmetric Stieltjes kernel Σᵢ xᵢ^{n−1} f̂(xᵢ)/Π_{j≠i}(xᵢ − xⱼ).
pub fn stieltjes_kernel(fhat: &Fn1D, nodes: &[f64], cfg: &DDConfig) -> Result<f64> {
    let n = nodes.len();
    if n < 2 {
        return Err(Error::Domain("Stieltjes kernel needs n >= 2 nodes".into()));
    }
    let p = (n - 1) as i32;
    let g = |x: f64| x.powi(p) * fhat.eval(x);
    let gf = Fn1D::new(&g, fhat.a, fhat.b);
    newton_dd(&gf, nodes, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::LN_2;

    fn cfg() -> DDConfig {
        DDConfig::default()
    }

    #[test]
    fn dd2_examples() {
        let sq = |x: f64| x * x;
        assert_eq!(divided_difference2(&Fn1D::new(&sq, -9.0, 9.0), 1.0, 3.0, &cfg()).unwrap(), 4.0);
        let e = |x: f64| x.exp();
        let f = Fn1D::new(&e, -1.0, 1.0);
        assert!((divided_difference2(&f, 0.0, 0.0, &cfg()).unwrap() - 1.0).abs() < 1e-9);
        let f = Fn1D::new(&e, -1.0, 1.0).with_derivative(&e);
        assert_eq!(divided_difference2(&f, 0.0, 0.0, &cfg()).unwrap(), 1.0);
        let l = |x: f64| x.ln_1p();
        let f = Fn1D::new(&l, 0.0, 1.0);
        assert!((divided_difference2(&f, 0.0, 1.0, &cfg()).unwrap() - LN_2).abs() < 1e-15);
    }

    #[test]
    fn newton_examples() {
        let sq = |x: f64| x * x;
        let id = |x: f64| x;
        let cube = |x: f64| x * x * x;
        let nodes = [0.0, 1.0, 2.0];
        assert_eq!(newton_dd(&Fn1D::new(&sq, 0.0, 2.0), &nodes, &cfg()).unwrap(), 1.0);
        assert_eq!(newton_dd(&Fn1D::new(&id, 0.0, 2.0), &nodes, &cfg()).unwrap(), 0.0);
        let v = newton_dd(&Fn1D::new(&cube, 0.0, 2.0), &[1.0, 1.0, 1.0], &cfg()).unwrap();
        assert!((v - 3.0).abs() < 1e-7, "{v}");
        assert!(newton_dd(&Fn1D::new(&cube, 0.0, 2.0), &[], &cfg()).is_err());
    }

    #[test]
    fn confluent_pair_matches_derivative() {
        let l = |x: f64| x.ln_1p();
        let f = Fn1D::new(&l, 0.0, 1.0);
        let v = newton_dd(&f, &[0.3, 0.3], &cfg()).unwrap();
        assert!((v - 1.0 / 1.3).abs() < 1e-9);
        let v = newton_dd(&f, &[0.2, 0.7, 0.7], &cfg()).unwrap();
        let exact = (1.0 / 1.7 - (1.7f64.ln() - 1.2f64.ln()) / 0.5) / 0.5;
        assert!((v - exact).abs() < 1e-8, "{v} {exact}");
    }

    #[test]
    fn kernel_examples() {
        let fh = |x: f64| if x == 0.0 { 1.0 } else { x.ln_1p() / x };
        let f = Fn1D::new(&fh, 0.0, 1.0);
        assert!((stieltjes_kernel(&f, &[0.0, 1.0], &cfg()).unwrap() - LN_2).abs() < 1e-15);
        let c = |_x: f64| 2.5;
        let f = Fn1D::new(&c, -3.0, 3.0);
        let v = stieltjes_kernel(&f, &[-1.0, 0.4, 2.0], &cfg()).unwrap();
        assert!((v - 2.5).abs() < 1e-14);
        // partial-fraction oracle at separated nodes
        let fa = |x: f64| x.acos() / (1.0 - x * x).sqrt();
        let f = Fn1D::new(&fa, -1.0, 1.0);
        let (t1, t2) = (0.3f64, 1.1f64);
        let (x1, x2) = (t1.cos(), t2.cos());
        let direct = x1 * fa(x1) / (x1 - x2) + x2 * fa(x2) / (x2 - x1);
        let v = stieltjes_kernel(&f, &[x1, x2], &cfg()).unwrap();
        assert!((v - direct).abs() < 1e-12);
        assert!(stieltjes_kernel(&f, &[0.5], &cfg()).is_err());
    }
}
