//! Clausen and Lobachevsky functions, the closed-form pieces of the
//! per-triangle conformal energy.

use std::f64::consts::PI;

/// ζ(2n) for n = 1..=25. The series for Cl₂ needs them up to the point where
/// (θ/2π)^{2n+1} underflows double precision on the reduced range θ ≤ π.
const ZETA_EVEN: [f64; 25] = [
    1.6449340668482264,
    1.0823232337111382,
    1.0173430619844491,
    1.0040773561979443,
    1.0009945751278181,
    1.0002460865533080,
    1.0000612481350587,
    1.0000152822594087,
    1.0000038172932650,
    1.0000009539620339,
    1.0000002384505027,
    1.0000000596081891,
    1.0000000149015548,
    1.0000000037253340,
    1.0000000009313274,
    1.0000000002328312,
    1.0000000000582077,
    1.0000000000145519,
    1.0000000000036380,
    1.0000000000009095,
    1.0000000000002274,
    1.0000000000000568,
    1.0000000000000142,
    1.0000000000000036,
    1.0000000000000009,
];

/// Clausen function Cl₂(θ) = −∫₀^θ ln|2 sin(t/2)| dt.
///
/// Power series around 0 after range reduction to [0, π]; the reduction uses
/// 2π-periodicity, oddness, and Cl₂(2π − θ) = −Cl₂(θ).
pub fn clausen(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut x = theta % two_pi;
    if x < 0.0 {
        x += two_pi;
    }
    let (x, sign) = if x > PI { (two_pi - x, -1.0) } else { (x, 1.0) };
    if x == 0.0 {
        return 0.0;
    }
    let mut sum = x * (1.0 - x.ln());
    let ratio = (x / two_pi) * (x / two_pi);
    let mut pow = x * ratio;
    for (n, zeta) in ZETA_EVEN.iter().enumerate() {
        let n = (n + 1) as f64;
        let term = zeta / (n * (2.0 * n + 1.0)) * pow;
        sum += term;
        if term < 1e-17 * sum.abs() {
            break;
        }
        pow *= ratio;
    }
    sign * sum
}

/// Lobachevsky function Л(θ) = ½ Cl₂(2θ).
pub fn lobachevsky(theta: f64) -> f64 {
    0.5 * clausen(2.0 * theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Adaptive Simpson quadrature of −ln|2 sin(t/2)| as an independent check.
    fn clausen_by_quadrature(theta: f64) -> f64 {
        fn f(t: f64) -> f64 {
            -(2.0 * (t / 2.0).sin()).abs().ln()
        }
        fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
            (b - a) / 6.0 * (fa + 4.0 * fm + fb)
        }
        fn rec(a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
            let (flm, frm) = (f(lm), f(rm));
            let left = simpson(a, m, fa, flm, fm);
            let right = simpson(m, b, fm, frm, fb);
            if depth == 0 || (left + right - whole).abs() < 1e-14 {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(a, m, fa, flm, fm, left, depth - 1) + rec(m, b, fm, frm, fb, right, depth - 1)
            }
        }
        // start slightly inside to dodge the log singularity at 0, then add a
        // series tail for [0, a]: ∫₀^a −ln(t) − ln(1 − t²/24…) dt ≈ a(1 − ln a) + a³/72
        let a = 1e-5f64;
        let head = a * (1.0 - a.ln()) + a * a * a / 72.0;
        let m = 0.5 * (a + theta);
        head + rec(a, theta, f(a), f(m), f(theta), simpson(a, theta, f(a), f(m), f(theta)), 40)
    }

    #[test]
    fn clausen_matches_quadrature() {
        for &theta in &[0.1, 0.5, 1.0, PI / 2.0, 2.0, PI - 0.01, 3.5, 5.0, 6.0] {
            let series = clausen(theta);
            let quad = clausen_by_quadrature(theta);
            assert!(
                (series - quad).abs() < 5e-11,
                "theta = {theta}: series {series} vs quadrature {quad}"
            );
        }
    }

    #[test]
    fn clausen_special_values() {
        // Catalan's constant
        assert!((clausen(PI / 2.0) - 0.915_965_594_177_219).abs() < 1e-14);
        // the maximum of Cl₂
        assert!((clausen(PI / 3.0) - 1.014_941_606_409_653_6).abs() < 1e-14);
        assert_eq!(clausen(0.0), 0.0);
        assert!(clausen(PI).abs() < 1e-14);
        // oddness and the reflection identity
        for &t in &[0.3, 1.2, 2.9] {
            assert!((clausen(-t) + clausen(t)).abs() < 1e-14);
            assert!((clausen(2.0 * PI - t) + clausen(t)).abs() < 1e-13);
        }
        // duplication: Cl₂(2θ) = 2 Cl₂(θ) − 2 Cl₂(π − θ)
        for &t in &[0.2, 0.7, 1.4] {
            let lhs = clausen(2.0 * t);
            let rhs = 2.0 * clausen(t) - 2.0 * clausen(PI - t);
            assert!((lhs - rhs).abs() < 1e-13, "t = {t}");
        }
    }
}
