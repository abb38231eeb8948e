use std::f64::consts::{FRAC_PI_4, PI};

/// Ai(0) = 3^(-2/3) / Gamma(2/3).
pub const AI0: f64 = 0.355_028_053_887_817_2;
/// -Ai'(0) = 3^(-1/3) / Gamma(1/3).
pub const AIP0: f64 = 0.258_819_403_792_806_8;

const SERIES_LIMIT: f64 = 2.5;
const MODULUS_LIMIT: f64 = 10.0;

// Coefficients of the large-z expansions of the Airy modulus and phase for
// Ai(-z) = M(z) cos(theta(z)), in powers of w = z^(-3):
//   pi sqrt(z) M^2 = sum (-1)^k P_k w^k
//   theta = pi/4 - (2/3) z^(3/2) (1 + sum (-1)^k T_k w^k)
const PHASE: [f64; 5] = [
    1.0,
    5.0 / 32.0,
    1105.0 / 6144.0,
    82825.0 / 65536.0,
    1_282_031_525.0 / 58_720_256.0,
];

fn modulus_coeffs() -> [f64; 7] {
    // (1*3*5*...*(6k-1)) / (k! 96^k)
    let mut c = [0.0; 7];
    for (k, ck) in c.iter_mut().enumerate() {
        let mut num = 1.0;
        for j in 1..=(3 * k) {
            num *= (2 * j - 1) as f64;
        }
        let mut den = 1.0;
        for j in 1..=k {
            den *= j as f64 * 96.0;
        }
        *ck = num / den;
    }
    c
}

/// Airy function Ai(x).
///
/// Maclaurin series on |x| <= 2.5, Taylor stepping of Ai'' = x Ai on
/// [-10, -2.5), the modulus/phase expansion below -10, and the integral
/// Ai(x) = sqrt(x/3)/pi * K_{1/3}(2/3 x^{3/2}) above 2.5.
pub fn airy_ai(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x > SERIES_LIMIT {
        positive_large(x)
    } else if x >= -SERIES_LIMIT {
        maclaurin(x).0
    } else if x >= -MODULUS_LIMIT {
        stepped(x)
    } else {
        let (p, theta) = modulus_phase(-x);
        (p / (PI * (-x).sqrt())).sqrt() * theta.cos()
    }
}

/// Returns (Ai(x), Ai'(x)) from the Maclaurin series.
fn maclaurin(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (AI0, -AIP0);
    }
    // Ai = c1 f - c2 g, f = sum 3^k (1/3)_k x^{3k}/(3k)!, g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!
    let x3 = x * x * x;
    let (mut f, mut g) = (1.0, x);
    let (mut df, mut dg) = (0.0, 1.0);
    let (mut tf, mut tg) = (1.0, x);
    let mut k = 0.0;
    loop {
        // term ratios: x^3 / ((3k+2)(3k+3)) and x^3 / ((3k+3)(3k+4))
        tf *= x3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
        tg *= x3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
        f += tf;
        g += tg;
        df += tf * (3.0 * k + 3.0) / x;
        dg += tg * (3.0 * k + 4.0) / x;
        if tf.abs() < 1e-18 * f.abs().max(1e-300) && tg.abs() < 1e-18 * g.abs().max(1e-300) {
            break;
        }
        k += 1.0;
        if k > 200.0 {
            break;
        }
    }
    (AI0 * f - AIP0 * g, AI0 * df - AIP0 * dg)
}

/// Integrates Ai'' = x Ai from -2.5 down to x with local Taylor series.
fn stepped(x: f64) -> f64 {
    let (mut y, mut yp) = maclaurin(-SERIES_LIMIT);
    let mut x0 = -SERIES_LIMIT;
    let steps = ((x0 - x) / 0.5).ceil() as usize;
    let h = (x - x0) / steps as f64;
    let mut a = [0.0f64; 64];
    for _ in 0..steps {
        a[0] = y;
        a[1] = yp;
        a[2] = 0.5 * x0 * y;
        let mut val = y + yp * h + a[2] * h * h;
        let mut der = yp + 2.0 * a[2] * h;
        let mut hp = h * h;
        for k in 1..62 {
            a[k + 2] = (x0 * a[k] + a[k - 1]) / ((k + 2) as f64 * (k + 1) as f64);
            der += (k + 2) as f64 * a[k + 2] * hp;
            hp *= h;
            val += a[k + 2] * hp;
            if (a[k + 2] * hp).abs() < 1e-19 && k > 8 {
                break;
            }
        }
        y = val;
        yp = der;
        x0 += h;
    }
    y
}

/// Modulus and phase of Ai(-z) for z >= 10: returns (pi sqrt(z) M^2, theta).
pub(crate) fn modulus_phase(z: f64) -> (f64, f64) {
    let zeta = z * z.sqrt();
    let (p, t) = modulus_phase_series(1.0 / (zeta * zeta));
    (p, FRAC_PI_4 - 2.0 / 3.0 * zeta * t)
}

/// Sums the modulus and phase series in w = z^{-3}; generic so the same
/// coefficients serve complex arguments.
pub(crate) fn modulus_phase_series<T>(w: T) -> (T, T)
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Mul<Output = T> + From<f64>,
{
    let pc = modulus_coeffs();
    let mut p = T::from(0.0);
    for (k, c) in pc.iter().enumerate().rev() {
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        p = p * w + T::from(s * c);
    }
    let mut t = T::from(0.0);
    for (k, c) in PHASE.iter().enumerate().rev() {
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        t = t * w + T::from(s * c);
    }
    (p, t)
}

/// Ai(x) for x > 2.5 from the trapezoidal rule applied to
/// K_{1/3}(zeta) = int_0^inf exp(-zeta cosh t) cosh(t/3) dt.
fn positive_large(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    if zeta > 745.0 {
        return 0.0;
    }
    let h = (0.6 / zeta.sqrt()).min(0.1);
    let mut sum = 0.5;
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let e = (-zeta * (t.cosh() - 1.0)).exp() * (t / 3.0).cosh();
        sum += e;
        if e < 1e-18 * sum {
            break;
        }
        k += 1;
    }
    (x / 3.0).sqrt() / PI * (-zeta).exp() * sum * h
}
