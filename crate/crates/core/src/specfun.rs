//! Constants and special functions: Catalan, zeta, polylogarithms,
//! pentagamma and principal-branch complex arccos.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // method resolution for f64 under no_std
use num_traits::Float;

use crate::{Error, Result};

pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;
pub const ZETA2: f64 = 1.644_934_066_848_226_436_472_415_166_646_025_189_219;
pub const ZETA3: f64 = 1.202_056_903_159_594_285_399_738_161_511_449_990_765;
pub const ZETA4: f64 = 1.082_323_233_711_138_191_516_003_696_541_167_902_775;
pub const ZETA5: f64 = 1.036_927_755_143_369_926_331_365_486_457_034_168_057;
pub const LN2: f64 = core::f64::consts::LN_2;
/// (√5 − 1)/2
pub const GOLDEN_SMALL: f64 = 0.618_033_988_749_894_848_204_586_834_365_638_118;
/// (1 + √5)/2
pub const GOLDEN: f64 = 1.618_033_988_749_894_848_204_586_834_365_638_118;

pub fn catalan() -> f64 {
    CATALAN
}

// B_2 .. B_16
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Euler–Maclaurin evaluation of Σ k^{-s}, summing the first nine terms directly.
pub(crate) fn zeta_em(s: f64) -> f64 {
    let n = 10.0f64;
    let mut head = 0.0;
    for k in (1..10).rev() {
        head += (k as f64).powf(-s);
    }
    let mut tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // rising factorial s(s+1)...(s+2j-2) / (2j)!
    let mut fac = s / 2.0;
    let mut npow = n.powf(-s - 1.0);
    for (j, b) in BERNOULLI.iter().enumerate() {
        let j = j + 1;
        tail += b * fac * npow;
        let a = 2.0 * j as f64;
        fac *= (s + a - 1.0) * (s + a) / ((a + 1.0) * (a + 2.0));
        npow /= n * n;
    }
    head + tail
}

pub fn zeta(n: i32) -> Result<f64> {
    Ok(match n {
        i32::MIN..=1 => return Err(Error::Domain(alloc::format!("zeta({n}) requires n >= 2"))),
        2 => ZETA2,
        3 => ZETA3,
        4 => ZETA4,
        5 => ZETA5,
        6..=19 => zeta_em(n as f64),
        _ => {
            let mut s = 0.0;
            for k in (2..=8).rev() {
                s += (k as f64).powi(-n);
            }
            1.0 + s
        }
    })
}

fn harmonic(n: i32) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

/// Σ z^k/k^n for |z| ≤ 1/2.
fn li_series_c(n: i32, z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zk = z;
    for k in 1..200 {
        let t = zk / (k as f64).powi(n);
        sum += t;
        if t.norm() <= 1e-17 * sum.norm() {
            break;
        }
        zk *= z;
    }
    sum
}

fn li_series_r(n: i32, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut xk = x;
    for k in 1..200 {
        let t = xk / (k as f64).powi(n);
        sum += t;
        if t.abs() <= 1e-17 * sum.abs() {
            break;
        }
        xk *= x;
    }
    sum
}

// Expansion of Li_n around z = 1 in mu = log z, valid for |mu| < 2*pi:
// sum_{k != n-1} zeta(n-k) mu^k/k! + mu^{n-1}/(n-1)! (H_{n-1} - log(-mu)).
// zeta at 1-2j is rewritten through zeta(2j) so nothing overflows.
fn li_crandall_c(n: i32, mu: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mk = Complex64::new(1.0, 0.0); // mu^k / k!
    for k in 0..=n - 2 {
        sum += mk * zeta(n - k).unwrap();
        mk = mk * mu / (k + 1) as f64;
    }
    // mk = mu^{n-1}/(n-1)!
    sum += mk * (Complex64::new(harmonic(n - 1), 0.0) - (-mu).ln());
    let mn = mk * mu / n as f64;
    sum -= mn * 0.5;
    let w = mu / (2.0 * PI);
    let w2 = w * w;
    let nf = n as f64;
    // r_1 = mu^{n+1}/(n+1)! / (2pi)^2
    let mut r = mn * mu / (nf + 1.0) / (4.0 * PI * PI);
    for j in 1..80 {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let t = r * (sign * 2.0 * zeta(2 * j).unwrap());
        sum += t;
        if t.norm() <= 1e-18 * (1.0 + sum.norm()) {
            break;
        }
        let jf = j as f64;
        r = r * w2 * ((2.0 * jf + 1.0) * (2.0 * jf) / ((nf + 2.0 * jf) * (nf + 2.0 * jf + 1.0)));
    }
    sum
}

fn li_crandall_r(n: i32, mu: f64) -> f64 {
    let mut sum = 0.0;
    let mut mk = 1.0;
    for k in 0..=n - 2 {
        sum += mk * zeta(n - k).unwrap();
        mk = mk * mu / (k + 1) as f64;
    }
    sum += mk * (harmonic(n - 1) - (-mu).ln());
    let mn = mk * mu / n as f64;
    sum -= 0.5 * mn;
    let w2 = (mu / (2.0 * PI)).powi(2);
    let nf = n as f64;
    let mut r = mn * mu / (nf + 1.0) / (4.0 * PI * PI);
    for j in 1..80 {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let t = sign * 2.0 * zeta(2 * j).unwrap() * r;
        sum += t;
        if t.abs() <= 1e-18 * (1.0 + sum.abs()) {
            break;
        }
        let jf = j as f64;
        r *= w2 * (2.0 * jf + 1.0) * (2.0 * jf) / ((nf + 2.0 * jf) * (nf + 2.0 * jf + 1.0));
    }
    sum
}

/// Polylogarithm Li_n(z) on the closed unit disk.
pub fn polylog(n: i32, z: Complex64) -> Result<Complex64> {
    if n < 1 {
        return Err(Error::Domain(alloc::format!("polylog order {n} < 1")));
    }
    let r = z.norm();
    if !(r <= 1.0 + 1e-12) {
        return Err(Error::Domain(alloc::format!("polylog argument |z| = {r} > 1")));
    }
    let one = Complex64::new(1.0, 0.0);
    if n == 1 {
        if z == one {
            return Err(Error::Domain("Li_1 has a pole at z = 1".into()));
        }
        return Ok(-(one - z).ln());
    }
    if z == one {
        return Ok(Complex64::new(zeta(n)?, 0.0));
    }
    if r <= 0.5 {
        return Ok(li_series_c(n, z));
    }
    Ok(li_crandall_c(n, z.ln()))
}

/// Real polylogarithm for x ∈ [−1, 1].
pub fn polylog_real(n: i32, x: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain(alloc::format!("polylog order {n} < 1")));
    }
    if !(x.abs() <= 1.0 + 1e-12) {
        return Err(Error::Domain(alloc::format!("polylog argument {x} outside [-1, 1]")));
    }
    if n == 1 {
        if x == 1.0 {
            return Err(Error::Domain("Li_1 has a pole at x = 1".into()));
        }
        return Ok(-(-x).ln_1p());
    }
    if x == 1.0 {
        return zeta(n);
    }
    if x.abs() <= 0.5 {
        return Ok(li_series_r(n, x));
    }
    if x > 0.0 {
        return Ok(li_crandall_r(n, x.ln()));
    }
    // duplication: Li_n(x) + Li_n(-x) = 2^{1-n} Li_n(x^2)
    Ok(2f64.powi(1 - n) * polylog_real(n, x * x)? - polylog_real(n, -x)?)
}

/// d/dx Li_n(x) = Li_{n-1}(x)/x.
pub fn polylog_real_derivative(n: i32, x: f64) -> Result<f64> {
    if n == 1 {
        return Ok(1.0 / (1.0 - x));
    }
    if x.abs() < 1e-8 {
        return Ok(1.0 + x * 2f64.powi(-n) * 2.0);
    }
    Ok(polylog_real(n - 1, x)? / x)
}

/// ψ⁽³⁾(x) = 6 Σ_{k≥0} (x+k)^{-4}.
pub fn polygamma3(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(alloc::format!("polygamma3({x}) requires x > 0")));
    }
    const K: usize = 100_000;
    let mut s = 0.0;
    for k in (0..K).rev() {
        s += (x + k as f64).powi(-4);
    }
    let y = x + K as f64;
    Ok(6.0 * s + 2.0 / y.powi(3) + 3.0 / y.powi(4) + 2.0 / y.powi(5))
}

/// Dirichlet β(4) from the pentagamma difference.
pub fn dirichlet_beta4() -> f64 {
    (polygamma3(0.25).unwrap() - polygamma3(0.75).unwrap()) / 1536.0
}

/// Principal arccos, −i·log(w + i·√(1−w²)).
pub fn complex_arccos(w: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    -i * (w + i * (one - w * w).sqrt()).ln()
}

/// arccos(w)/√(1−w²), continued analytically to w ≥ 1 as arccosh(w)/√(w²−1).
pub fn acos_ratio(w: f64) -> f64 {
    let d = 1.0 - w;
    if d.abs() < 1e-5 {
        return 1.0 + d / 3.0 + 2.0 * d * d / 15.0;
    }
    if w < 1.0 {
        w.acos() / (d * (1.0 + w)).sqrt()
    } else {
        w.acosh() / ((w - 1.0) * (w + 1.0)).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeta_literals_match_euler_maclaurin() {
        for (n, lit) in [(2, ZETA2), (3, ZETA3), (4, ZETA4), (5, ZETA5)] {
            assert!((zeta_em(n as f64) - lit).abs() < 1e-15, "n={n}");
        }
        assert!((ZETA2 - PI * PI / 6.0).abs() < 1e-15);
        assert!((ZETA4 - PI.powi(4) / 90.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_brute_force_oracle() {
        // 10^6 terms plus the integral tail and half the last term
        for n in [3, 5, 7] {
            let m = 1_000_000u64;
            let mut s = 0.0;
            for k in (1..=m).rev() {
                s += (k as f64).powi(-n);
            }
            let mf = m as f64;
            s += mf.powi(1 - n) / (n - 1) as f64 - 0.5 * mf.powi(-n);
            assert!((zeta(n).unwrap() - s).abs() < 1e-14, "n={n}");
        }
        assert!((zeta(3).unwrap() - 1.202056903159594).abs() < 1e-14);
        assert!((zeta(5).unwrap() - 1.036_927_755_143_37).abs() < 1e-14);
    }

    #[test]
    fn zeta_monotone_to_one() {
        let mut prev = f64::INFINITY;
        for n in 2..80 {
            let z = zeta(n).unwrap();
            assert!(z <= prev && z >= 1.0);
            prev = z;
        }
        assert!((zeta(60).unwrap() - 1.0).abs() < 1e-17);
        assert!(zeta(1).is_err());
    }

    #[test]
    fn catalan_partial_sums_bracket() {
        let s1 = 1.0;
        let s2 = 1.0 - 1.0 / 9.0;
        assert!(s2 < catalan() && catalan() < s1);
    }

    #[test]
    fn polylog_at_i() {
        let v = polylog(2, c(0.0, 1.0)).unwrap();
        assert!((v.re + PI * PI / 48.0).abs() < 1e-14);
        assert!((v.im - CATALAN).abs() < 1e-14);
        let d = polylog(3, c(0.0, 1.0)).unwrap() - polylog(3, c(0.0, -1.0)).unwrap();
        assert!(d.re.abs() < 1e-14);
        assert!((d.im - PI.powi(3) / 16.0).abs() < 1e-14);
    }

    #[test]
    fn polylog_at_one_is_zeta() {
        for n in 2..=4 {
            let v = polylog(n, c(1.0, 0.0)).unwrap();
            assert_eq!(v.re, zeta(n).unwrap());
            // approaching along the circle
            let near = polylog(n, Complex64::from_polar(1.0, 1e-9)).unwrap();
            assert!((near.re - zeta(n).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn dilog_golden_values() {
        let lp = GOLDEN.ln();
        let pos = polylog_real(2, GOLDEN_SMALL).unwrap();
        assert!((pos - (PI * PI / 10.0 - lp * lp)).abs() < 1e-14);
        // the standard evaluation, not the alternative ½log²ϕ − π²/10
        let neg = polylog_real(2, -GOLDEN_SMALL).unwrap();
        assert!((neg - (-PI * PI / 15.0 + 0.5 * lp * lp)).abs() < 1e-14);
        assert!((neg - (0.5 * lp * lp - PI * PI / 10.0)).abs() > 0.3);
    }

    #[test]
    fn real_and_complex_paths_agree() {
        for n in 1..=5 {
            for i in 0..=40 {
                let x = -1.0 + i as f64 * 0.05;
                if n == 1 && x >= 1.0 {
                    continue;
                }
                let r = polylog_real(n, x).unwrap();
                let z = polylog(n, c(x, 0.0)).unwrap();
                assert!((r - z.re).abs() < 1e-14, "n={n} x={x}: {r} vs {}", z.re);
                assert!(z.im.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn series_matches_crandall_across_the_switch() {
        // on |z| = 0.6 the direct series still converges, so it is an independent oracle
        for n in 2..=4 {
            for k in 0..12 {
                let z = Complex64::from_polar(0.6, k as f64 * 0.5);
                let a = li_series_c(n, z);
                let b = li_crandall_c(n, z.ln());
                assert!((a - b).norm() < 1e-14, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn polylog_domain() {
        assert!(polylog(2, c(1.1, 0.0)).is_err());
        assert!(polylog(1, c(1.0, 0.0)).is_err());
        assert!(polylog(0, c(0.1, 0.0)).is_err());
        let v = polylog(1, c(-1.0, 0.0)).unwrap();
        assert!((v.re + LN2).abs() < 1e-15);
    }

    #[test]
    fn polygamma3_values() {
        let p1 = polygamma3(1.0).unwrap();
        assert!((p1 / (PI.powi(4) / 15.0) - 1.0).abs() < 1e-12);
        let p2 = polygamma3(2.0).unwrap();
        assert!(((p2 - (PI.powi(4) / 15.0 - 6.0)) / p2).abs() < 1e-10);
        assert!(polygamma3(0.0).is_err());
        assert!((dirichlet_beta4() - 0.988944551741105).abs() < 1e-13);
    }

    #[test]
    fn arccos_examples() {
        assert!(complex_arccos(c(1.0, 0.0)).norm() < 1e-15);
        assert!((complex_arccos(c(0.0, 0.0)) - c(PI / 2.0, 0.0)).norm() < 1e-15);
        let a = complex_arccos(c(2.0, 0.0));
        assert!(a.re.abs() < 1e-15);
        assert!((a.im.abs() - (2.0 + 3f64.sqrt()).ln()).abs() < 1e-14);
        for i in 1..100 {
            let t = PI * i as f64 / 100.0;
            let w = complex_arccos(c(t.cos(), 0.0));
            assert!((w.re - t).abs() < 1e-12 && w.im.abs() < 1e-12);
        }
    }

    #[test]
    fn acos_ratio_is_smooth_through_one() {
        for i in -50..=50 {
            let w = 1.0 + i as f64 * 1e-6;
            let direct = if w < 1.0 {
                w.acos() / (1.0 - w * w).sqrt()
            } else if w > 1.0 {
                w.acosh() / (w * w - 1.0).sqrt()
            } else {
                1.0
            };
            assert!((acos_ratio(w) - direct).abs() < 1e-9);
        }
        assert!((acos_ratio(0.0) - PI / 2.0).abs() < 1e-15);
    }
}
