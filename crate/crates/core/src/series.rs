//! Alternating-series acceleration and the nested sums built on it: the MZV
//! tail, the depth-2 Catalan sum, the alternating triple t-value, the E_k
//! closed forms and Fourier-coefficient evaluation of double integrals.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // method resolution for f64 under no_std
use num_traits::Float;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    /// |first omitted term| for alternating outer series.
    pub tail_bound: f64,
    /// Estimated error of the accelerated value.
    pub err_est: f64,
    pub terms_used: usize,
    pub converged: bool,
}

const DEPTH: usize = 8;
const FIRST_N: usize = 32;
pub const MAX_TERMS: usize = 1 << 22;
const SAME_SIGN_LIMIT: usize = 50;
const RICHARDSON_COLS: usize = 6;

/// Σ_{i≥0} term(i). `term` is called exactly once for each index, in
/// increasing order, so it may carry running state.
pub fn alternating_sum(term: impl FnMut(usize) -> f64, tol: f64) -> Result<SeriesResult> {
    alternating_sum_capped(term, tol, MAX_TERMS)
}

/// As [`alternating_sum`] but never consumes more than `max_terms` terms.
pub fn alternating_sum_capped(
    mut term: impl FnMut(usize) -> f64,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesResult> {
    let mut partial: Vec<f64> = Vec::new();
    let mut acc = 0.0;
    let mut run = 0usize;
    let mut last_sign = 0i8;
    let mut next = f64::NAN; // the term just past the consumed prefix
    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut n = FIRST_N;
    let mut prev_diff = f64::INFINITY;
    loop {
        let target = n.min(max_terms.max(DEPTH + 1));
        while partial.len() < target + 1 {
            let i = partial.len();
            let t = term(i);
            if !t.is_finite() {
                return Err(Error::NonFinite { x: i as f64 });
            }
            let s = if t > 0.0 { 1 } else if t < 0.0 { -1 } else { 0 };
            if s != 0 {
                if s == last_sign {
                    run += 1;
                    if run >= SAME_SIGN_LIMIT {
                        return Err(Error::Contract(alloc::format!(
                            "series is not alternating: {SAME_SIGN_LIMIT} terms of equal sign ending at index {i}"
                        )));
                    }
                } else {
                    run = 1;
                    last_sign = s;
                }
            }
            acc += t;
            partial.push(acc);
            next = t;
        }
        // partial[target] includes the extra look-ahead term
        let used = &partial[..target];
        let mut w = [0.0; DEPTH + 1];
        w.copy_from_slice(&used[target - DEPTH - 1..target]);
        for d in 0..DEPTH {
            for j in 0..DEPTH - d {
                w[j] = 0.5 * (w[j] + w[j + 1]);
            }
        }
        let mut row = Vec::with_capacity(RICHARDSON_COLS);
        row.push(w[0]);
        if let Some(prev) = table.last() {
            for k in 1..RICHARDSON_COLS.min(table.len() + 1) {
                let p = 2f64.powi(k as i32);
                let v = row[k - 1] + (row[k - 1] - prev[k - 1]) / (p - 1.0);
                row.push(v);
            }
        }
        let best = *row.last().unwrap();
        let diff = match table.last() {
            Some(prev) => (best - prev.last().copied().unwrap()).abs(),
            None => f64::INFINITY,
        };
        table.push(row);
        let scale = used.iter().fold(0f64, |m, p| m.max(p.abs()));
        let noise = 64.0 * f64::EPSILON * scale;
        let done = table.len() >= 3 && diff.max(prev_diff) <= tol.max(noise);
        let capped = target >= max_terms;
        if done || capped {
            return Ok(SeriesResult {
                value: best,
                tail_bound: next.abs(),
                err_est: diff.max(prev_diff) + noise,
                terms_used: target,
                converged: done,
            });
        }
        prev_diff = diff;
        n *= 2;
    }
}

/// Σ_{k≥1} (−1)^{k−1}/k · Σ_{n<k} (−1)ⁿ/(2n+1), which equals Catalan's constant.
pub fn mzv11(tol: f64) -> Result<SeriesResult> {
    let mut s = 0.0;
    alternating_sum(
        |i| {
            let k = i + 1;
            let n = i;
            s += if n % 2 == 0 { 1.0 } else { -1.0 } / (2 * n + 1) as f64;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * s / k as f64
        },
        tol,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MzvWeight {
    /// inner weight (−1)^{l+1}/(2l)
    Half,
    /// inner weight (−1)^{l+1}/l
    Full,
}

/// Σ_{k≥1} T_k/(2k+1), T_k = Σ_{l>k} (−1)^{l+1} O_l/(2l), O_l = Σ_{m<l} 1/(2m+1).
pub fn mzv_tail_triple(k_outer: usize, weight: MzvWeight, tol: f64) -> Result<SeriesResult> {
    if k_outer < 1000 {
        return Err(Error::Domain("mzv_tail_triple needs K_outer >= 1000".into()));
    }
    let w = match weight {
        MzvWeight::Half => 0.5,
        MzvWeight::Full => 1.0,
    };
    let mut o = 0.0;
    let t0 = alternating_sum(
        |i| {
            let l = i + 1;
            o += 1.0 / (2 * l - 1) as f64;
            let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
            sign * w * o / l as f64
        },
        0.01 * tol,
    )?;
    let mut t = t0.value;
    let mut o = 0.0;
    let outer = alternating_sum_capped(
        |i| {
            let k = i + 1;
            o += 1.0 / (2 * k - 1) as f64;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            t -= sign * w * o / k as f64;
            t / (2 * k + 1) as f64
        },
        tol,
        k_outer,
    )?;
    // error in T_0 is carried by every T_k: Σ_{k≤K} 1/(2k+1) ≤ log K
    let carried = t0.err_est * (outer.terms_used as f64).ln();
    Ok(SeriesResult { err_est: outer.err_est + carried, ..outer })
}

/// Σ_{k,l,m≥0} (−1)^{l+m}/((2k+1)(2k+2l+2)(2k+2l+2m+3)), regrouped by s = k + l.
pub fn t_value_triple(tol: f64) -> Result<SeriesResult> {
    let mut c = 0.0;
    let mut inner_err = 0f64;
    let mut fail: Option<Error> = None;
    let outer = alternating_sum(
        |s| {
            c = 1.0 / (2 * s + 1) as f64 - c;
            let inner = alternating_sum(
                |m| {
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    sign / (2 * s + 2 * m + 3) as f64
                },
                1e-3 * tol,
            );
            match inner {
                Ok(r) => {
                    inner_err = inner_err.max(r.err_est);
                    r.value * c / (2 * s + 2) as f64
                }
                Err(e) => {
                    fail.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        tol,
    );
    if let Some(e) = fail {
        return Err(e);
    }
    outer
}

/// Partial sum of Σ_{0<k<l<m ≤ m_max} (−1)^{(k+m)/2}/(klm) over odd k, m and
/// even l (or odd l when `l_even` is false).
pub fn t_value_odd_form(m_max: usize, l_even: bool) -> f64 {
    // running sums over the two inner indices
    let mut inner_k = 0.0; // Σ_{k<l, k odd} (−1)^{(k−1)/2}/k
    let mut mid = 0.0; // Σ_{l<m} [l has the right parity] inner_k(l)/l
    let mut total = 0.0;
    for j in 1..=m_max {
        if j % 2 == 1 {
            // j is a candidate for m, then for k
            let m = j as f64;
            let sm = if (j - 1) / 2 % 2 == 0 { 1.0 } else { -1.0 };
            total += sm * mid / m;
            if !l_even {
                mid += inner_k / m;
            }
            inner_k += sm / m;
        } else if l_even {
            mid += inner_k / j as f64;
        }
    }
    // (−1)^{(k+m)/2} = −(−1)^{(k−1)/2}(−1)^{(m−1)/2}
    -total
}

pub fn e_even(k: usize) -> f64 {
    let mut s = 0.0;
    for l in (0..k).rev() {
        s += if l % 2 == 0 { 1.0 } else { -1.0 } / (2 * l + 1) as f64;
    }
    2.0 * PI * s
}

pub fn e_odd(n: usize) -> f64 {
    let mut o = 0.0;
    let mut s = 0.0;
    for k in 1..=n {
        o += 1.0 / (2 * k - 1) as f64;
        s += if k % 2 == 1 { 1.0 } else { -1.0 } * o / k as f64;
    }
    PI * PI / 4.0 + 4.0 * s
}

/// The even-frequency formula with the sum starting at l = 1.
pub fn e_even_alt(k: usize) -> f64 {
    e_even(k) - 2.0 * PI * if k >= 1 { 1.0 } else { 0.0 }
}

/// The odd-frequency formula with the inner harmonic sum cut at n − 1.
pub fn e_odd_alt(n: usize) -> f64 {
    let o: f64 = (0..n).map(|m| 1.0 / (2 * m + 1) as f64).sum();
    let s: f64 = (1..=n).map(|k| if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64).sum();
    PI * PI / 4.0 + 4.0 * s * o
}

/// ∫∫_{[0,π/2]²} (cos kx − cos kz)/(cos x − cos z) dx dz.
pub fn e_k(k: usize) -> f64 {
    match k {
        0 => 0.0,
        k if k % 2 == 0 => e_even(k / 2),
        k => e_odd((k - 1) / 2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayClass {
    Geometric,
    Harmonic,
}

pub struct FourierCoefficients {
    pub alpha: Box<dyn Fn(usize) -> f64 + Send + Sync>,
    pub truncation: usize,
    pub decay: DecayClass,
}

impl FourierCoefficients {
    pub fn new(alpha: impl Fn(usize) -> f64 + Send + Sync + 'static, truncation: usize, decay: DecayClass) -> Self {
        FourierCoefficients { alpha: Box::new(alpha), truncation, decay }
    }
}

/// Running E_k for k = 1, 2, 3, …
struct EkStream {
    k: usize,
    leibniz: f64,
    harmonic_odd: f64,
    odd_acc: f64,
}

impl EkStream {
    fn new() -> Self {
        EkStream { k: 0, leibniz: 0.0, harmonic_odd: 0.0, odd_acc: 0.0 }
    }
    fn next(&mut self) -> f64 {
        self.k += 1;
        let k = self.k;
        if k.is_multiple_of(2) {
            let l = k / 2 - 1;
            self.leibniz += (if l.is_multiple_of(2) { 1.0 } else { -1.0 }) / (2 * l + 1) as f64;
            2.0 * PI * self.leibniz
        } else {
            let n = (k - 1) / 2;
            if n >= 1 {
                self.harmonic_odd += 1.0 / (2 * n - 1) as f64;
                self.odd_acc += if n % 2 == 1 { 1.0 } else { -1.0 } * self.harmonic_odd / n as f64;
            }
            PI * PI / 4.0 + 4.0 * self.odd_acc
        }
    }
}

const E_SUP: f64 = PI * PI / 4.0 + 4.0;

/// Σ_k α_k E_k, i.e. the double integral of (F(x) − F(z))/(cos x − cos z)
/// over [0,π/2]² for F(θ) = Σ α_k cos kθ.
pub fn fourier_double_integral(c: &FourierCoefficients, tol: f64) -> Result<SeriesResult> {
    match c.decay {
        DecayClass::Geometric => {
            let mut e = EkStream::new();
            let mut sum = 0.0;
            let mut prev_abs = 0.0f64;
            let mut ratio = 0.0f64;
            let mut k = 0;
            let mut last = 0.0;
            let mut quiet = 0;
            while k < c.truncation.max(1) {
                k += 1;
                let a = (c.alpha)(k);
                let ek = e.next();
                let t = a * ek;
                if !t.is_finite() {
                    return Err(Error::NonFinite { x: k as f64 });
                }
                sum += t;
                if prev_abs > 0.0 && a != 0.0 {
                    ratio = (a.abs() / prev_abs).max(ratio * 0.5);
                }
                if a != 0.0 {
                    prev_abs = a.abs();
                }
                last = a.abs();
                if k > 16 && ratio >= 1.0 {
                    return Err(Error::Contract("Fourier coefficients do not decay: partial sums unbounded".into()));
                }
                quiet = if last * E_SUP < 1e-3 * tol { quiet + 1 } else { 0 };
                if quiet >= 8 {
                    break;
                }
            }
            let tail = if ratio < 1.0 { last * E_SUP * ratio / (1.0 - ratio) } else { f64::INFINITY };
            Ok(SeriesResult {
                value: sum,
                tail_bound: tail,
                err_est: tail + 16.0 * f64::EPSILON * k as f64 * sum.abs().max(1.0),
                terms_used: k,
                converged: tail <= tol,
            })
        }
        DecayClass::Harmonic => {
            if c.truncation < 10_000 {
                return Err(Error::Domain("harmonic decay needs truncation K >= 10^4".into()));
            }
            let odd_vanish = (0..32).all(|j| (c.alpha)(2 * j + 1) == 0.0);
            let even_vanish = (1..32).all(|j| (c.alpha)(2 * j) == 0.0);
            let mut e = EkStream::new();
            let mut k = 0usize;
            let mut peak = 0f64;
            let mut step = || {
                k += 1;
                let t = (c.alpha)(k) * e.next();
                peak = peak.max(t.abs());
                t
            };
            let r = if odd_vanish || even_vanish {
                alternating_sum_capped(|_| step() + step(), tol, c.truncation / 2)?
            } else {
                alternating_sum_capped(|_| step(), tol, c.truncation)?
            };
            if r.tail_bound > 1e-3 * peak {
                return Err(Error::Contract("Fourier series terms do not decay: partial sums unbounded".into()));
            }
            Ok(r)
        }
    }
}
