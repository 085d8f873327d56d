//! Weight/hat-transform pairs and the n-variate ↔ univariate duality
//! ∫ K(f̂ₙ₊₁; x₁..xₙ) Π fᵢ(xᵢ) dxᵢ = ∫ fₙ₊₁(x) Π f̂ᵢ(x) dx.

use alloc::vec::Vec;
use core::cell::RefCell;
use core::f64::consts::PI;

#[allow(unused_imports)] // method resolution for f64 under no_std
use num_traits::Float;

use crate::kernels::{stieltjes_kernel, DDConfig};
use crate::multiquad::{integrate_box, BoxSpec};
use crate::quad::{integrate_adaptive, integrate_de, Fn1D, QuadResult};
use crate::specfun::acos_ratio;
use crate::{Error, Result};

/// How a weight's domain is reached from a finite parameter interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamMap {
    /// x = u on [a, b]; mass f(x)
    Identity,
    /// x = cos θ, θ ∈ [0, θ_max]; f(x)dx = dθ
    Cos(f64),
    /// x = tan θ, θ ∈ [0, π/2); f(x)dx = dθ
    Tan,
    /// x = cosh(u/(1−u)), u ∈ [0, 1); f(x)dx = du/(1−u)²
    CoshRational,
}

#[derive(Clone, Copy)]
pub struct StieltjesPair {
    pub name: &'static str,
    weight: fn(f64) -> f64,
    pub domain: (f64, f64),
    fhat: Option<fn(f64) -> f64>,
    /// f̂(z) from (z, 1 + z, 1 − z) with both sides accurate, for hats
    /// singular at z = ±1
    fhat_edge: Option<fn(f64, f64, f64) -> f64>,
    pub map: ParamMap,
    pub notes: &'static str,
}

fn arcsine_weight(x: f64) -> f64 {
    1.0 / ((1.0 - x) * (1.0 + x)).sqrt()
}
fn sec_weight(x: f64) -> f64 {
    1.0 / ((x - 1.0) * (x + 1.0)).sqrt()
}
fn cauchy_weight(x: f64) -> f64 {
    1.0 / (1.0 + x * x)
}
fn unit_weight(_x: f64) -> f64 {
    1.0
}

fn arcsine01_hat(z: f64) -> f64 {
    acos_ratio(z)
}
fn arcsine_full_hat(z: f64) -> f64 {
    PI / ((1.0 - z) * (1.0 + z)).sqrt()
}
fn arcsine_full_hat_edge(_z: f64, opz: f64, omz: f64) -> f64 {
    PI / (opz * omz).sqrt()
}
fn arcsine01_hat_edge(z: f64, opz: f64, omz: f64) -> f64 {
    if opz < 0.5 {
        2.0 * omz.sqrt().atan2(opz.sqrt()) / (opz * omz).sqrt()
    } else {
        acos_ratio(z)
    }
}
fn uniform_hat_edge(z: f64, opz: f64, _omz: f64) -> f64 {
    if opz < 0.5 {
        opz.ln() / z
    } else {
        uniform_hat(z)
    }
}
fn sec_hat(z: f64) -> f64 {
    // arcsec z/√(z²−1), i.e. f̂_arcsine01(1/z)/z
    acos_ratio(1.0 / z) / z
}
fn cauchy_hat(z: f64) -> f64 {
    if z == 0.0 {
        return PI / 2.0;
    }
    (PI / 2.0 + z * z.ln()) / (1.0 + z * z)
}
/// log(1+z)/z
pub fn uniform_hat(z: f64) -> f64 {
    if z.abs() < 1e-8 {
        return 1.0 - z / 2.0 + z * z / 3.0;
    }
    z.ln_1p() / z
}

pub const ARCSINE01: StieltjesPair = StieltjesPair {
    name: "arcsine01",
    weight: arcsine_weight,
    domain: (0.0, 1.0),
    fhat: Some(arcsine01_hat),
    fhat_edge: Some(arcsine01_hat_edge),
    map: ParamMap::Cos(PI / 2.0),
    notes: "1/sqrt(1-x^2) on [0,1]; hat arccos z/sqrt(1-z^2)",
};
pub const ARCSINE_FULL: StieltjesPair = StieltjesPair {
    name: "arcsine_full",
    weight: arcsine_weight,
    domain: (-1.0, 1.0),
    fhat: Some(arcsine_full_hat),
    fhat_edge: Some(arcsine_full_hat_edge),
    map: ParamMap::Cos(PI),
    notes: "1/sqrt(1-x^2) on [-1,1]; hat pi/sqrt(1-z^2)",
};
pub const SEC_BRANCH: StieltjesPair = StieltjesPair {
    name: "sec_branch",
    weight: sec_weight,
    domain: (1.0, f64::INFINITY),
    fhat: Some(sec_hat),
    fhat_edge: None,
    map: ParamMap::CoshRational,
    notes: "1/sqrt(x^2-1) on [1,inf); hat arcsec z/sqrt(z^2-1)",
};
pub const CAUCHY: StieltjesPair = StieltjesPair {
    name: "cauchy",
    weight: cauchy_weight,
    domain: (0.0, f64::INFINITY),
    fhat: Some(cauchy_hat),
    fhat_edge: None,
    map: ParamMap::Tan,
    notes: "1/(1+x^2) on [0,inf); hat (pi/2 + z log z)/(1+z^2)",
};
pub const UNIFORM01: StieltjesPair = StieltjesPair {
    name: "uniform01",
    weight: unit_weight,
    domain: (0.0, 1.0),
    fhat: Some(uniform_hat),
    fhat_edge: Some(uniform_hat_edge),
    map: ParamMap::Identity,
    notes: "1 on [0,1]; hat log(1+z)/z",
};

pub fn pair_catalog() -> [StieltjesPair; 5] {
    [ARCSINE01, ARCSINE_FULL, SEC_BRANCH, CAUCHY, UNIFORM01]
}

pub fn pair_by_name(name: &str) -> Option<StieltjesPair> {
    pair_catalog().into_iter().find(|p| p.name == name)
}

impl StieltjesPair {
    /// A weight given only numerically, integrated directly over a finite domain.
    pub fn custom(name: &'static str, weight: fn(f64) -> f64, a: f64, b: f64) -> Self {
        StieltjesPair { name, weight, domain: (a, b), fhat: None, fhat_edge: None, map: ParamMap::Identity, notes: "" }
    }

    pub fn with_hat(mut self, fhat: fn(f64) -> f64) -> Self {
        self.fhat = Some(fhat);
        self
    }

    pub fn weight(&self, x: f64) -> f64 {
        (self.weight)(x)
    }

    pub fn has_closed_hat(&self) -> bool {
        self.fhat.is_some()
    }

    pub fn fhat_closed(&self, z: f64) -> Option<f64> {
        self.fhat.map(|h| h(z))
    }

    /// Hat transform, closed form when available.
    pub fn fhat(&self, z: f64) -> Result<f64> {
        match self.fhat {
            Some(h) => Ok(h(z)),
            None => hat_transform_numeric(self, z).map(|r| r.value),
        }
    }

    /// Hat transform at z with 1 ± z supplied separately, so hats that blow
    /// up at z = ±1 keep full relative accuracy there.
    pub fn fhat_sides(&self, z: f64, opz: f64, omz: f64) -> Result<f64> {
        match self.fhat_edge {
            Some(h) => Ok(h(z, opz, omz)),
            None => self.fhat(z),
        }
    }

    /// Interval of z on which 1 + xz stays positive over the whole domain.
    pub fn hat_domain(&self) -> (f64, f64) {
        let (lo, hi) = self.domain;
        let a = if hi.is_finite() && hi > 0.0 { -1.0 / hi } else { 0.0 };
        let b = if lo < 0.0 { -1.0 / lo } else { f64::INFINITY };
        (a, b)
    }

    pub fn param_interval(&self) -> (f64, f64) {
        match self.map {
            ParamMap::Identity => self.domain,
            ParamMap::Cos(t) => (0.0, t),
            ParamMap::Tan => (0.0, PI / 2.0),
            ParamMap::CoshRational => (0.0, 1.0),
        }
    }

    /// Node x(u) and mass f(x(u))·x′(u); `None` where the contribution underflows.
    pub fn node_mass(&self, u: f64) -> Option<(f64, f64)> {
        match self.map {
            ParamMap::Identity => Some((u, (self.weight)(u))),
            ParamMap::Cos(_) => Some((u.cos(), 1.0)),
            ParamMap::Tan => Some((u.tan(), 1.0)),
            ParamMap::CoshRational => {
                let t = u / (1.0 - u);
                if t > 700.0 {
                    return None;
                }
                Some((t.cosh(), 1.0 / ((1.0 - u) * (1.0 - u))))
            }
        }
    }

    /// As [`node_mass`](Self::node_mass), adding accurate 1 + x and 1 − x.
    /// `dr` is the exact distance from u to the upper end of the parameter
    /// interval when the caller has it.
    pub fn node_sides(&self, u: f64, dr: f64) -> Option<(f64, f64, f64, f64)> {
        let (x, m) = self.node_mass(u)?;
        let (opx, omx) = match self.map {
            ParamMap::Cos(_) => (2.0 * (0.5 * u).cos().powi(2), 2.0 * (0.5 * u).sin().powi(2)),
            ParamMap::Identity if self.domain.1 == 1.0 => (1.0 + x, dr),
            _ => (1.0 + x, 1.0 - x),
        };
        Some((x, m, opx, omx))
    }

    pub fn f(&self) -> Fn1D<'_> {
        let (a, b) = self.domain;
        Fn1D::new(&self.weight, a, b).singular_at(true, true)
    }
}

/// f̂(z) = ∫ f(x)/(1 + xz) dx by quadrature.
pub fn hat_transform_numeric(p: &StieltjesPair, z: f64) -> Result<QuadResult> {
    let (lo, hi) = p.domain;
    if z < 0.0 {
        let pole = -1.0 / z;
        if pole >= lo && pole <= hi {
            return Err(Error::Domain(alloc::format!("1 + xz vanishes at x = {pole} inside the domain")));
        }
    }
    let (a, b) = p.param_interval();
    let g = |u: f64| match p.node_mass(u) {
        Some((x, m)) => m / (1.0 + x * z),
        None => 0.0,
    };
    let r = integrate_adaptive(&Fn1D::new(&g, a, b), 1e-11)?;
    if matches!(p.map, ParamMap::Identity) && !r.converged {
        // endpoint singularities of a raw weight: retry with the DE rule
        let f = Fn1D::new(&g, a, b).singular_at(true, true);
        return integrate_de(&f, 1e-11);
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy)]
pub struct DualityCheck {
    pub lhs: QuadResult,
    pub rhs: QuadResult,
    pub abs_diff: f64,
}

impl DualityCheck {
    pub fn pass(&self, tol: f64) -> bool {
        self.abs_diff <= tol
    }
}

pub const LHS_BUDGET: usize = 4_000_000;

/// n-variate side: ∫ K(f̂ₙ₊₁; x) Π fᵢ(xᵢ) dxᵢ.
pub fn duality_lhs(pairs: &[StieltjesPair], n: usize, tol: f64) -> Result<QuadResult> {
    duality_lhs_with_budget(pairs, n, tol, LHS_BUDGET)
}

pub fn duality_lhs_with_budget(pairs: &[StieltjesPair], n: usize, tol: f64, budget: usize) -> Result<QuadResult> {
    if !(n == 2 || n == 3) || pairs.len() != n + 1 {
        return Err(Error::Domain("duality needs n in {2,3} and n+1 pairs".into()));
    }
    let last = pairs[n];
    let (ha, hb) = last.hat_domain();
    let on_edge = |x: f64| {
        let near = |e: f64| e.is_finite() && (x - e).abs() <= 1e-13 * e.abs().max(1.0);
        near(ha) || near(hb)
    };
    let cfg = DDConfig::default();
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |u: &[f64]| -> f64 {
        let mut nodes = [0.0; 3];
        let mut sides = [(0.0, 0.0); 3];
        let mut mass = 1.0;
        for i in 0..n {
            let (_, b) = pairs[i].param_interval();
            match pairs[i].node_sides(u[i], b - u[i]) {
                Some((x, m, opx, omx)) => {
                    nodes[i] = x;
                    sides[i] = (opx, omx);
                    mass *= m;
                }
                None => return 0.0,
            }
        }
        // f̂ at an unspread node uses that node's accurate 1 ± x
        let fh = |x: f64| {
            let hit = (0..n).find(|&i| nodes[i].to_bits() == x.to_bits());
            let v = match hit {
                Some(i) => last.fhat_sides(x, sides[i].0, sides[i].1),
                None => last.fhat(x),
            };
            v.unwrap_or(f64::NAN)
        };
        let fhat = Fn1D::new(&fh, ha, hb);
        match stieltjes_kernel(&fhat, &nodes[..n], &cfg) {
            Ok(k) => k * mass,
            // a node rounded onto a singular edge of f̂: a null set, skipped
            Err(Error::NonFinite { .. }) if nodes[..n].iter().any(|&x| on_edge(x)) => 0.0,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let axes: Vec<(f64, f64)> = pairs[..n].iter().map(|p| p.param_interval()).collect();
    let spec = BoxSpec::new(&axes).with_budget(budget);
    let r = integrate_box(&integrand, &spec, tol)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r)
}

/// Univariate side: ∫ fₙ₊₁(x) Π f̂ᵢ(x) dx.
pub fn duality_rhs(pairs: &[StieltjesPair], n: usize, tol: f64) -> Result<QuadResult> {
    if pairs.len() != n + 1 {
        return Err(Error::Domain("duality needs n+1 pairs".into()));
    }
    let last = pairs[n];
    let (a, b) = last.param_interval();
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let eval = |u: f64, dr: f64| -> f64 {
        let Some((x, m, opx, omx)) = last.node_sides(u, dr) else { return 0.0 };
        let mut prod = m;
        for p in &pairs[..n] {
            match p.fhat_sides(x, opx, omx) {
                Ok(v) => prod *= v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    return 0.0;
                }
            }
        }
        prod
    };
    let g = |u: f64| eval(u, b - u);
    let near = |u: f64, _dl: f64, dr: f64| eval(u, dr);
    let f = Fn1D::new(&g, a, b).singular_at(true, true);
    let f = if b.is_finite() { f.with_complement(&near) } else { f };
    let r = integrate_de(&f, tol)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r)
}

pub fn verify_duality(pairs: &[StieltjesPair], n: usize, tol: f64) -> Result<DualityCheck> {
    let lhs = duality_lhs(pairs, n, 0.1 * tol)?;
    let rhs = duality_rhs(pairs, n, 0.01 * tol)?;
    Ok(DualityCheck { lhs, rhs, abs_diff: (lhs.value - rhs.value).abs() })
}

/// ∫_{[0,π/2]ⁿ} K(x^{n−2} log(1+x); cos θ₁, …, cos θₙ) dθ.
pub fn multivariate_lhs_cos(n: usize, tol: f64) -> Result<QuadResult> {
    let sel: Vec<StieltjesPair> = core::iter::repeat_n(ARCSINE01, n).chain(core::iter::once(UNIFORM01)).collect();
    duality_lhs(&sel, n, tol)
}

/// Jₙ = ∫₀^{π/2} zⁿ/sin^{n−1} z dz.
pub fn j_n(n: u32) -> Result<QuadResult> {
    if n < 1 {
        return Err(Error::Domain("J_n needs n >= 1".into()));
    }
    let g = move |z: f64| {
        if z == 0.0 {
            return 0.0;
        }
        z * (z / z.sin()).powi(n as i32 - 1)
    };
    integrate_de(&Fn1D::new(&g, 0.0, PI / 2.0), 1e-13)
}

#[derive(Debug, Clone, Copy)]
pub struct TanDuality {
    pub lhs: QuadResult,
    pub rhs: QuadResult,
}

/// Both sides of the tan-kernel identity: the n-variate integral over
/// [0,π/2)ⁿ at nodes tan θ and ∫₀¹ (π/2 + z log z)ⁿ/(1+z²)ⁿ dz.
pub fn multivariate_lhs_tan(n: usize, tol: f64) -> Result<TanDuality> {
    let sel: Vec<StieltjesPair> = core::iter::repeat_n(CAUCHY, n).chain(core::iter::once(UNIFORM01)).collect();
    let lhs = duality_lhs(&sel, n, tol)?;
    let rhs = duality_rhs(&sel, n, 0.01 * tol)?;
    Ok(TanDuality { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{CATALAN, ZETA3};

    #[test]
    fn closed_hats_match_numeric() {
        for p in pair_catalog() {
            for k in 1..=9 {
                let z = k as f64 / 10.0;
                let num = hat_transform_numeric(&p, z).unwrap().value;
                let closed = p.fhat_closed(z).unwrap();
                assert!((num - closed).abs() < 1e-8, "{} z={z}: {num} vs {closed}", p.name);
            }
        }
    }

    #[test]
    fn hat_examples() {
        let r = hat_transform_numeric(&ARCSINE01, 0.0).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-10);
        let r = hat_transform_numeric(&UNIFORM01, 0.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(hat_transform_numeric(&UNIFORM01, -2.0).is_err());
    }

    #[test]
    fn j_n_values() {
        assert!((j_n(1).unwrap().value - PI * PI / 8.0).abs() < 1e-12);
        assert!((j_n(2).unwrap().value - (2.0 * PI * CATALAN - 3.5 * ZETA3)).abs() < 1e-12);
        let j3 = 3.0 * PI * PI / 8.0 * 4f64.ln() - 21.0 / 8.0 * ZETA3;
        assert!((j_n(3).unwrap().value - j3).abs() < 1e-12);
    }

    #[test]
    fn uniform_duality_n2() {
        let c = verify_duality(&[UNIFORM01, UNIFORM01, UNIFORM01], 2, 1e-8).unwrap();
        assert!(c.pass(1e-8), "{c:?}");
    }

    #[test]
    fn tan_rhs_endpoint() {
        let v = (PI / 2.0 + 1.0 * 1f64.ln()).powi(3) / 8.0;
        assert!((v - (PI / 2.0).powi(3) / 8.0).abs() < 1e-15);
    }
}
