//! Hadamard products as circle averages, and the single-integral form of
//! ∫∫ (F(zH(θ₁)) − F(zH(θ₂)))/(H(θ₁) − H(θ₂)) dθ₁dθ₂.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // method resolution for f64 under no_std
use num_traits::Float;

use crate::quad::{integrate_adaptive, integrate_periodic, Fn1D, QuadResult};
use crate::specfun::complex_arccos;
use crate::{Error, Result};

const IMAG_GUARD: f64 = 1e-8;
const START_POINTS: usize = 64;
const GUARD_SAMPLES: usize = 512;

/// F(w) = Σ ℱₙ wⁿ.
pub struct PowerSeriesFn {
    coeff: Box<dyn Fn(usize) -> f64 + Send + Sync>,
    eval: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
}

impl PowerSeriesFn {
    pub fn new(
        coeff: impl Fn(usize) -> f64 + Send + Sync + 'static,
        eval: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        PowerSeriesFn { coeff: Box::new(coeff), eval: Box::new(eval) }
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        let c2 = coeffs.clone();
        PowerSeriesFn::new(
            move |n| coeffs.get(n).copied().unwrap_or(0.0),
            move |w| c2.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c),
        )
    }

    /// log(1 + w)
    pub fn log1p() -> Self {
        PowerSeriesFn::new(
            |n| if n == 0 { 0.0 } else if n % 2 == 1 { 1.0 / n as f64 } else { -1.0 / n as f64 },
            |w| (w + 1.0).ln(),
        )
    }

    /// 1/(1 − r w)
    pub fn geometric(r: f64) -> Self {
        PowerSeriesFn::new(move |n| r.powi(n as i32), move |w| (Complex64::new(1.0, 0.0) - w * r).inv())
    }

    pub fn coefficient(&self, n: usize) -> f64 {
        (self.coeff)(n)
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        (self.eval)(w)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        (self.eval)(Complex64::new(x, 0.0)).re
    }
}

/// G(ω) = (∫_α^β dθ/(1 − ωH(θ)))² = Σ ℬₙ ωⁿ.
pub struct GeneratingFn {
    eval: Box<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync>,
    coeff: Option<Box<dyn Fn(usize) -> f64 + Send + Sync>>,
    pub g0: f64,
}

/// Wallis integrals ∫₀^{π/2} cosᵏθ dθ for k < n.
pub fn wallis(n: usize) -> Vec<f64> {
    let mut a = Vec::with_capacity(n);
    for k in 0..n {
        let v = match k {
            0 => PI / 2.0,
            1 => 1.0,
            _ => a[k - 2] * (k - 1) as f64 / k as f64,
        };
        a.push(v);
    }
    a
}

fn cauchy_square(a: &[f64], n: usize) -> f64 {
    (0..=n).map(|k| a[k] * a[n - k]).sum()
}

/// (arccos(−ω)/√(1−ω²))², the square of Σ ωᵏ ∫₀^{π/2} cosᵏ.
pub fn arccos_gf(w: Complex64) -> Result<Complex64> {
    if !(w.norm() < 1.0) {
        return Err(Error::Domain(alloc::format!("arccos generating function needs |w| < 1, got {}", w.norm())));
    }
    if w.norm() < 1e-4 {
        // (π/2 + w + π/4 w² + 2/3 w³)²
        let s = w * (w * (w * (2.0 / 3.0) + PI / 4.0) + 1.0) + PI / 2.0;
        return Ok(s * s);
    }
    let one = Complex64::new(1.0, 0.0);
    let r = complex_arccos(-w) / (one - w * w).sqrt();
    Ok(r * r)
}

/// arccos²(√(1−ω²))/(1−ω²), the kernel exactly as it appears in the
/// printed contour formula.
pub fn printed_kernel(w: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let s = one - w * w;
    if s.norm() == 0.0 {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    let a = complex_arccos(s.sqrt());
    a * a / s
}

impl GeneratingFn {
    pub fn new(
        eval: impl Fn(Complex64) -> Result<Complex64> + Send + Sync + 'static,
        coeff: Option<Box<dyn Fn(usize) -> f64 + Send + Sync>>,
        g0: f64,
    ) -> Self {
        GeneratingFn { eval: Box::new(eval), coeff, g0 }
    }

    /// H = cos on [0, π/2].
    pub fn cos_quarter() -> Self {
        let coeff = |n: usize| cauchy_square(&wallis(n + 1), n);
        GeneratingFn::new(arccos_gf, Some(Box::new(coeff)), PI * PI / 4.0)
    }

    /// Finite coefficient list ℬ₀..ℬ_m.
    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        let g0 = coeffs.first().copied().unwrap_or(0.0);
        let c2 = coeffs.clone();
        GeneratingFn::new(
            move |w| Ok(c2.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)),
            Some(Box::new(move |n| coeffs.get(n).copied().unwrap_or(0.0))),
            g0,
        )
    }

    /// G built from a bounded H on [α, β] by quadrature; requires |ω|·sup|H| < 1.
    pub fn from_h(h: fn(f64) -> f64, alpha: f64, beta: f64) -> Self {
        let inner = move |w: Complex64| -> Result<Complex64> {
            let re = |t: f64| {
                let d = Complex64::new(1.0, 0.0) - w * h(t);
                d.inv().re
            };
            let im = |t: f64| {
                let d = Complex64::new(1.0, 0.0) - w * h(t);
                d.inv().im
            };
            let a = integrate_adaptive(&Fn1D::new(&re, alpha, beta), 1e-13)?.value;
            let b = integrate_adaptive(&Fn1D::new(&im, alpha, beta), 1e-13)?.value;
            let s = Complex64::new(a, b);
            Ok(s * s)
        };
        let len = beta - alpha;
        GeneratingFn::new(inner, None, len * len)
    }

    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        (self.eval)(w)
    }

    /// ℬₙ from the known series, else by contour extraction on |ω| = 1/2.
    pub fn coefficient(&self, n: usize) -> Result<f64> {
        match &self.coeff {
            Some(c) => Ok(c(n)),
            None => self.coefficient_by_contour(n, 0.5),
        }
    }

    /// (1/2π)∮ G(r e^{iθ}) r^{−n} e^{−inθ} dθ.
    pub fn coefficient_by_contour(&self, n: usize, radius: f64) -> Result<f64> {
        let failure = core::cell::RefCell::new(None);
        let g = |t: f64| {
            let w = Complex64::from_polar(radius, t);
            match self.eval(w) {
                Ok(v) => v * Complex64::from_polar(radius.powi(-(n as i32)), -(n as f64) * t),
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        };
        let r = integrate_periodic(&g, 32, 1e-13)?;
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        Ok(r.value.re / (2.0 * PI))
    }
}

/// Which form of the θ-dependence to use inside the generating function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignVariant {
    /// G(e^{−iθ}√z)
    Statement,
    /// G(e^{+iθ}√z)
    Derivation,
    /// the printed arccos²(√(1−ω²))/(1−ω²) kernel at ω = e^{−iθ}√z
    PrintedKernel,
}

#[derive(Debug, Clone, Copy)]
pub struct ContourResult {
    pub value: f64,
    pub imag: f64,
    /// set when |Im| exceeded the guard; the imaginary part is still discarded
    pub imag_warning: bool,
    pub err_est: f64,
    pub n_evals: usize,
    pub converged: bool,
}

fn check_branch_jumps(g: &dyn Fn(f64) -> Complex64) -> Result<()> {
    let m = GUARD_SAMPLES;
    let vals: Vec<Complex64> = (0..=m).map(|j| g(2.0 * PI * j as f64 / m as f64)).collect();
    let diffs: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let scale = vals.iter().fold(0.0f64, |s, v| s.max(v.norm())).max(1e-300);
    for k in 0..m {
        let prev = diffs[(k + m - 1) % m];
        let next = diffs[(k + 1) % m];
        if diffs[k] > 1e-10 * scale && diffs[k] > 10.0 * prev.max(next) {
            let t = 2.0 * PI * k as f64 / m as f64;
            return Err(Error::Contract(alloc::format!("branch jump in contour integrand near theta = {t:.4}")));
        }
    }
    Ok(())
}

fn circle_average(g: &dyn Fn(f64) -> Complex64) -> Result<ContourResult> {
    check_branch_jumps(g)?;
    let r: QuadResult<Complex64> = integrate_periodic(g, START_POINTS, 1e-14)?;
    let v = r.value / (2.0 * PI);
    Ok(ContourResult {
        value: v.re,
        imag: v.im,
        imag_warning: v.im.abs() > IMAG_GUARD,
        err_est: r.err_est / (2.0 * PI),
        n_evals: r.n_evals + GUARD_SAMPLES + 1,
        converged: r.converged,
    })
}

fn check_z(z: f64) -> Result<()> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain(alloc::format!("z must lie in [0, 1), got {z}")));
    }
    Ok(())
}

/// Σ ℱₙ ℬₙ₋₁ zⁿ = (1/2π)∫ F(e^{iθ}√z) e^{−iθ}√z G(e^{−iθ}√z) dθ.
pub fn hadamard_product(f: &PowerSeriesFn, g: &GeneratingFn, z: f64) -> Result<ContourResult> {
    check_z(z)?;
    if z == 0.0 {
        return Ok(ContourResult { value: 0.0, imag: 0.0, imag_warning: false, err_est: 0.0, n_evals: 0, converged: true });
    }
    let s = z.sqrt();
    let failure = core::cell::RefCell::new(None);
    let integrand = |t: f64| {
        let w = Complex64::from_polar(s, -t);
        match g.eval(w) {
            Ok(gv) => f.eval(w.conj()) * w * gv,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let r = circle_average(&integrand)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r)
}

/// Single-integral form of ∫∫_{[0,π/2]²} (F(z cos θ₁) − F(z cos θ₂))/(cos θ₁ − cos θ₂).
pub fn double_integral_via_contour(f: &PowerSeriesFn, z: f64, variant: SignVariant) -> Result<ContourResult> {
    check_z(z)?;
    let s = z.sqrt();
    let failure = core::cell::RefCell::new(None);
    let integrand = |t: f64| {
        let fw = f.eval(Complex64::from_polar(s, t));
        let down = Complex64::from_polar(s, -t);
        let kernel = match variant {
            SignVariant::Statement => arccos_gf(down),
            SignVariant::Derivation => arccos_gf(down.conj()),
            SignVariant::PrintedKernel => Ok(printed_kernel(down)),
        };
        match kernel {
            Ok(k) => fw * down * k,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let r = circle_average(&integrand)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r)
}

/// Σ_{n=1}^{N} ℱₙ ℬₙ₋₁ zⁿ, the coefficient-side oracle.
pub fn hadamard_series(f: &PowerSeriesFn, g: &GeneratingFn, z: f64, n_max: usize) -> Result<f64> {
    let mut s = 0.0;
    let mut zn = 1.0;
    for n in 1..=n_max {
        zn *= z;
        s += f.coefficient(n) * g.coefficient(n - 1)? * zn;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arccos_gf_at_zero_and_series() {
        let v = arccos_gf(Complex64::new(0.0, 0.0)).unwrap();
        assert!((v.re - PI * PI / 4.0).abs() < 1e-15);
        let g = GeneratingFn::cos_quarter();
        for n in 0..6 {
            let c = g.coefficient(n).unwrap();
            let e = g.coefficient_by_contour(n, 0.5).unwrap();
            assert!((c - e).abs() < 1e-10, "n={n}: {c} vs {e}");
        }
        let w = Complex64::new(0.5, 0.0);
        let direct = arccos_gf(w).unwrap();
        let a = wallis(80);
        let s: f64 = a.iter().enumerate().map(|(k, &ak)| ak * 0.5f64.powi(k as i32)).sum();
        assert!(direct.im.abs() < 1e-15 && direct.re > 0.0);
        assert!((direct.re - s * s).abs() < 1e-12);
        assert!(arccos_gf(Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn hadamard_examples() {
        let f = PowerSeriesFn::polynomial(alloc::vec![0.0, 0.0, 1.0]);
        let g = GeneratingFn::polynomial(alloc::vec![0.0, 1.0]);
        let r = hadamard_product(&f, &g, 0.6).unwrap();
        assert!((r.value - 0.36).abs() < 1e-14);
        assert_eq!(hadamard_product(&f, &g, 0.0).unwrap().value, 0.0);
        // 1/(1-aw) against 1/(1-bw): Σ a^n b^{n-1} z^n = az/(1-abz)
        let (a, b, z) = (0.7, 0.4, 0.5);
        let f = PowerSeriesFn::geometric(a);
        let g = GeneratingFn::new(move |w| Ok((Complex64::new(1.0, 0.0) - w * b).inv()), None, 1.0);
        let r = hadamard_product(&f, &g, z).unwrap();
        assert!((r.value - a * z / (1.0 - a * b * z)).abs() < 1e-13);
    }

    #[test]
    fn contour_monomial() {
        let f = PowerSeriesFn::polynomial(alloc::vec![0.0, 1.0]);
        let r = double_integral_via_contour(&f, 0.3, SignVariant::Statement).unwrap();
        assert!((r.value - PI * PI / 4.0 * 0.3).abs() < 1e-13);
    }

    #[test]
    fn generic_h_matches_cos_quarter() {
        let g = GeneratingFn::from_h(libm_cos, 0.0, PI / 2.0);
        let w = Complex64::new(0.3, 0.2);
        let a = g.eval(w).unwrap();
        let b = arccos_gf(w).unwrap();
        assert!((a - b).norm() < 1e-11);
    }

    fn libm_cos(t: f64) -> f64 {
        t.cos()
    }
}
