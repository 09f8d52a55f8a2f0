//! Bessel functions needed by the coupling and modulation formulas.
//!
//! `bessel_k` covers the modified Bessel functions of the second kind K₀ and
//! K₁ appearing in the Coulomb near-field of the passing electron.
//! `bessel_j` covers the ordinary Bessel functions J_n that weight the PINEM
//! energy sidebands.

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Chebyshev coefficients for sqrt(x) e^x K_n(x) on x in [2, inf), evaluated
// in u = 4/x - 1. Fitted at 50-digit precision; max relative error ~7e-19.
const K0_LARGE: [f64; 26] = [
    1.2201515410329777273,
    -0.031448101311964500543,
    0.0015698838857300533749,
    -0.00012849549581627802638,
    1.3949813718876499364e-5,
    -1.8317555227191194848e-6,
    2.7668136394450150761e-7,
    -4.6604898976879476656e-8,
    8.5740340174142260858e-9,
    -1.6975345093890615156e-9,
    3.5773972814003284472e-10,
    -7.9574892444773970377e-11,
    1.855949114954926555e-11,
    -4.5145978833745191751e-12,
    1.1403405882073442347e-12,
    -2.9800969231481783548e-13,
    8.0328907750683743694e-14,
    -2.2275133267462963604e-14,
    6.3400764762766459661e-15,
    -1.8485933779209071694e-15,
    5.5120559994043333649e-16,
    -1.6782311257549006383e-16,
    5.2103917776435541125e-17,
    -1.6475805939842632815e-17,
    5.300433771177335771e-18,
    -1.7331712005821000278e-18,
];

const K1_LARGE: [f64; 26] = [
    1.3603130952422213347,
    0.10392373657681723844,
    -0.0028578168596227793868,
    0.00019521551847135163111,
    -1.93619797416608296e-5,
    2.4064849478372171171e-6,
    -3.5019606030878125421e-7,
    5.7410841254500492923e-8,
    -1.0345762465678097027e-8,
    2.0150497551970346161e-9,
    -4.1903547593419255842e-10,
    9.2183151876053141258e-11,
    -2.1299678384277910216e-11,
    5.1396396734823435404e-12,
    -1.2891739609498229352e-12,
    3.3484196660522431201e-13,
    -8.9767051820101460692e-14,
    2.4771544242195986813e-14,
    -7.0198370892147688513e-15,
    2.0387031662398608799e-15,
    -6.0570472706430178228e-16,
    1.8380935752430454256e-16,
    -5.6894628491936483743e-17,
    1.7940510478863572914e-17,
    -5.7567444820733024503e-18,
    1.8778651901623267401e-18,
];

fn chebyshev(coeffs: &[f64], u: f64) -> f64 {
    let mut b0 = 0.0;
    let mut b1 = 0.0;
    for &c in coeffs[1..].iter().rev() {
        let t = 2.0 * u * b0 - b1 + c;
        b1 = b0;
        b0 = t;
    }
    u * b0 - b1 + coeffs[0]
}

/// Modified Bessel function of the second kind, order 0 or 1.
///
/// Relative accuracy is better than 1e-13 for x in [1e-4, 50].
pub fn bessel_k(order: u8, x: f64) -> Result<f64> {
    if !(order == 0 || order == 1) {
        return Err(Error::domain(format!("bessel_k: unsupported order {order}")));
    }
    if !(x > 0.0) {
        return Err(Error::domain(format!("bessel_k: argument must be positive, got {x}")));
    }
    if x <= 2.0 {
        Ok(if order == 0 { k0_series(x) } else { k1_series(x) })
    } else {
        let u = 4.0 / x - 1.0;
        let coeffs = if order == 0 { &K0_LARGE } else { &K1_LARGE };
        Ok(chebyshev(coeffs, u) * (-x).exp() / x.sqrt())
    }
}

// Ascending series, DLMF 10.31: K0 = -(ln(x/2) + γ) I0 + Σ H_k y^k/(k!)²,
// with y = x²/4 and H_k the k-th harmonic number.
fn k0_series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let lg = (0.5 * x).ln() + EULER_GAMMA;
    let mut term = 1.0; // y^k / (k!)²
    let mut i0 = 1.0;
    let mut sum = 0.0;
    let mut h = 0.0;
    for k in 1..200 {
        term *= y / ((k * k) as f64);
        h += 1.0 / k as f64;
        i0 += term;
        sum += term * h;
        if term < 1e-18 * i0 {
            break;
        }
    }
    -lg * i0 + sum
}

// K1 = ln(x/2) I1 + 1/x - (x/4) Σ (ψ(k+1)+ψ(k+2)) y^k / (k!(k+1)!).
fn k1_series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let half = 0.5 * x;
    let mut term = 1.0; // y^k / (k!(k+1)!)
    let mut i1 = 1.0; // I1/(x/2)
    let mut psi_sum = -2.0 * EULER_GAMMA + 1.0; // ψ(1)+ψ(2)
    let mut sum = term * psi_sum;
    for k in 1..200 {
        term *= y / ((k * (k + 1)) as f64);
        psi_sum += 1.0 / k as f64 + 1.0 / (k + 1) as f64;
        i1 += term;
        sum += term * psi_sum;
        if term < 1e-18 * i1 {
            break;
        }
    }
    (half).ln() * half * i1 + 1.0 / x - 0.25 * x * sum
}

/// Ordinary Bessel function J_n for integer order.
///
/// Uses Miller's downward recurrence with sum-rule normalization; accurate to
/// ~1e-13 for the argument range used here (|x| up to a few tens).
pub fn bessel_j(n: i32, x: f64) -> f64 {
    let (n_abs, mut sign) = (n.unsigned_abs() as usize, 1.0);
    if n < 0 && n % 2 != 0 {
        sign = -sign;
    }
    let mut x = x;
    if x < 0.0 {
        x = -x;
        if n % 2 != 0 {
            sign = -sign;
        }
    }
    sign * bessel_j_sequence(n_abs, x)[n_abs]
}

/// J_0(x) .. J_nmax(x) for x ≥ 0 in one downward pass.
pub fn bessel_j_sequence(n_max: usize, x: f64) -> Vec<f64> {
    assert!(x >= 0.0, "bessel_j_sequence: x must be nonnegative");
    if x < 1e-10 {
        // leading-order series; avoids 2k/x blowup
        let mut out = vec![0.0; n_max + 1];
        let mut v = 1.0;
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = v;
            v *= 0.5 * x / (k + 1) as f64;
        }
        return out;
    }
    let start = (n_max + 1).max(x.ceil() as usize) + 24 + (x.sqrt() as usize) * 4;
    let start = start + start % 2; // even
    let mut jp = 0.0_f64;
    let mut j = 1e-300_f64;
    let mut out = vec![0.0; n_max + 1];
    let mut norm = 0.0; // J0 + 2 Σ J_{2k}
    for k in (0..=start).rev() {
        let jm = (2.0 * (k + 1) as f64 / x) * j - jp;
        jp = j;
        j = jm;
        // j now holds J_k (unnormalized)
        if k <= n_max {
            out[k] = j;
        }
        if k % 2 == 0 {
            norm += if k == 0 { j } else { 2.0 * j };
        }
        // rescale to avoid overflow
        if j.abs() > 1e250 {
            let s = 1e-250;
            j *= s;
            jp *= s;
            norm *= s;
            for v in out.iter_mut() {
                *v *= s;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// Location and value of the first maximum of J_l on the positive axis.
///
/// Found by golden-section search; no tabulated zeros of J_l' are used.
pub fn bessel_j_peak(l: u32) -> (f64, f64) {
    let lf = l as f64;
    let mut a = lf.max(0.1);
    let mut b = lf + 3.0 * lf.cbrt().max(1.0) + 2.0;
    let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let f = |x: f64| bessel_j(l as i32, x);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-12 {
            break;
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: K_n(x) = ∫₀^∞ exp(-x cosh t) cosh(nt) dt by
    // composite Simpson quadrature.
    pub fn bessel_k_quadrature(order: u8, x: f64) -> f64 {
        // truncate where the integrand falls below 1e-24 of its peak
        let t_max = ((60.0 + (1.0 / x).abs().ln().max(0.0)) / x).acosh().max(1.0) + 1.0;
        let n = 40_000; // even
        let h = t_max / n as f64;
        let f = |t: f64| (-x * t.cosh()).exp() * (order as f64 * t).cosh();
        let mut sum = f(0.0) + f(t_max);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * f(i as f64 * h);
        }
        sum * h / 3.0
    }

    #[test]
    fn k_at_one_matches_quadrature_oracle() {
        // frozen from the quadrature oracle (agrees with 30-digit reference)
        let k0 = bessel_k(0, 1.0).unwrap();
        let k1 = bessel_k(1, 1.0).unwrap();
        assert!((k0 - 0.421024438240708333).abs() < 1e-13);
        assert!((k1 - 0.601907230197234575).abs() < 1e-13);
        assert!((k0 / bessel_k_quadrature(0, 1.0) - 1.0).abs() < 1e-11);
        assert!((k1 / bessel_k_quadrature(1, 1.0) - 1.0).abs() < 1e-11);
    }

    #[test]
    fn k_matches_quadrature_on_log_grid() {
        // 100-point log grid over [1e-4, 50], relative tolerance 1e-10
        for i in 0..100 {
            let x = 1e-4 * (50.0_f64 / 1e-4).powf(i as f64 / 99.0);
            for order in [0u8, 1u8] {
                let v = bessel_k(order, x).unwrap();
                let q = bessel_k_quadrature(order, x);
                assert!(
                    (v / q - 1.0).abs() < 1e-10,
                    "K{order}({x:e}): impl {v:e} vs quad {q:e}"
                );
            }
        }
    }

    #[test]
    fn k1_small_argument_asymptote() {
        for &x in &[1e-6, 1e-5, 1e-4] {
            assert!((bessel_k(1, x).unwrap() * x - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn k0_below_k1() {
        for i in 0..60 {
            let x = 1e-3 * (40.0_f64 / 1e-3).powf(i as f64 / 59.0);
            assert!(bessel_k(0, x).unwrap() < bessel_k(1, x).unwrap(), "x={x}");
        }
    }

    #[test]
    fn k_rejects_bad_input() {
        assert!(bessel_k(0, 0.0).is_err());
        assert!(bessel_k(1, -1.0).is_err());
        assert!(bessel_k(2, 1.0).is_err());
    }

    #[test]
    fn j_known_values() {
        // high-precision reference values
        assert!((bessel_j(0, 1.0) - 0.7651976865579666).abs() < 1e-13);
        assert!((bessel_j(1, 1.0) - 0.44005058574493355).abs() < 1e-13);
        assert!((bessel_j(5, 2.0) - 0.007039629755871685).abs() < 1e-14);
        assert!((bessel_j(0, 10.0) - (-0.2459357644513483)).abs() < 1e-12);
    }

    #[test]
    fn j_negative_order_symmetry() {
        for n in 1..6 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((bessel_j(-n, 2.7) - sign * bessel_j(n, 2.7)).abs() < 1e-13);
        }
    }

    #[test]
    fn j_sum_rule() {
        for &x in &[0.5, 1.36, 4.0, 8.0] {
            let js = bessel_j_sequence(60, x);
            let sum: f64 = js[0] * js[0] + 2.0 * js[1..].iter().map(|j| j * j).sum::<f64>();
            assert!((sum - 1.0).abs() < 1e-12, "x={x} sum={sum}");
        }
    }

    #[test]
    fn j1_peak() {
        let (x, v) = bessel_j_peak(1);
        assert!((x - 1.8411837813406593).abs() < 1e-8);
        assert!((v - 0.5818652242869407).abs() < 1e-10);
    }
}
