use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};

/// Largest supported |m|.
pub const MAX_ORDER: i32 = 200;

/// Bessel function of the first kind, J_m(x), for integer m and x >= 0.
pub fn bessel_j(m: i32, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_j: x = {x} must be finite and >= 0")));
    }
    if m.abs() > MAX_ORDER {
        return Err(Error::Domain(format!("bessel_j: |m| = {} exceeds {MAX_ORDER}", m.abs())));
    }
    let v = jn(m.unsigned_abs(), x);
    Ok(if m < 0 && m % 2 != 0 { -v } else { v })
}

/// J_n(x) for n >= 0, x >= 0. No argument checks.
pub(crate) fn jn(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let nf = n as f64;
    if x * x <= 4.0 * (nf + 1.0) || x < 2.0 {
        series(n, x)
    } else if x > 30.0 + 0.5 * nf * nf {
        hankel(n, x)
    } else {
        miller(n, x)
    }
}

fn series(n: u32, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut t = 1.0;
    for k in 1..=n {
        t *= h / k as f64;
    }
    if t == 0.0 {
        return 0.0;
    }
    let q = -h * h;
    let mut sum = t;
    let mut k = 1.0;
    loop {
        t *= q / (k * (k + n as f64));
        sum += t;
        if t.abs() <= 1e-17 * sum.abs() {
            break;
        }
        k += 1.0;
    }
    sum
}

/// Hankel asymptotic expansion, used when x is large compared with n^2.
fn hankel(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n as f64) * (n as f64);
    let z8 = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut k = 1;
    loop {
        let kf = k as f64;
        let nt = term * (mu - (2.0 * kf - 1.0).powi(2)) / (kf * z8);
        if nt.abs() > term.abs() && k > 2 {
            break;
        }
        term = nt;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
        k += 1;
    }
    let chi = x - (0.5 * n as f64 + 0.25) * std::f64::consts::PI;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Miller backward recurrence normalised by J_0 + 2 * sum J_{2k} = 1.
fn miller(n: u32, x: f64) -> f64 {
    let top = (n as f64).max(x);
    let mut start = (top + 20.0 + 9.0 * top.cbrt()) as usize;
    start += start % 2;
    let mut jp1 = 0.0;
    let mut j = 1e-300;
    let mut norm = 0.0;
    let mut result = 0.0;
    for k in (1..=start).rev() {
        let jm1 = 2.0 * k as f64 / x * j - jp1;
        jp1 = j;
        j = jm1;
        let idx = k - 1;
        if idx == n as usize {
            result = j;
        }
        if idx % 2 == 0 && idx > 0 {
            norm += 2.0 * j;
        }
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            result *= 1e-250;
        }
    }
    norm += j;
    result / norm
}

fn mcmahon(n_order: u32, k: usize) -> f64 {
    let mu = 4.0 * (n_order as f64).powi(2);
    let b = (k as f64 + 0.5 * n_order as f64 - 0.25) * std::f64::consts::PI;
    let b8 = 8.0 * b;
    b - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
}

fn refine_zero(n: u32, mut lo: f64, mut hi: f64, guess: f64) -> f64 {
    let flo = jn(n, lo);
    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    for _ in 0..200 {
        let f = jn(n, x);
        if f == 0.0 {
            return x;
        }
        if (f > 0.0) == (flo > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let dj = if n == 0 {
            -jn(1, x)
        } else {
            jn(n - 1, x) - n as f64 / x * f
        };
        let newton = x - f / dj;
        let next = if dj != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * x {
            return next;
        }
        x = next;
    }
    x
}

/// Zeros of J_n, found by scanning for sign changes in unit steps (consecutive
/// zeros are always more than 3 apart) and polishing with safeguarded Newton
/// started from McMahon's expansion.
fn zeros_upto(n: u32, count: usize, known: &[f64]) -> Vec<f64> {
    let mut out = known.to_vec();
    let mut a = match out.last() {
        Some(&z) => z + 1.0,
        None => (n as f64).max(1.0),
    };
    let mut fa = jn(n, a);
    while out.len() < count {
        let b = a + 1.0;
        let fb = jn(n, b);
        if fa == 0.0 {
            out.push(a);
            a = a + 1.0;
            fa = jn(n, a);
            continue;
        }
        if (fa > 0.0) != (fb > 0.0) {
            let guess = mcmahon(n, out.len() + 1);
            out.push(refine_zero(n, a, b, guess));
            a = *out.last().unwrap() + 1.0;
            fa = jn(n, a);
        } else {
            a = b;
            fa = fb;
        }
    }
    out
}

fn cache() -> &'static RwLock<HashMap<u32, Vec<f64>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Vec<f64>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The first `count` positive zeros of J_m.
pub fn bessel_j_zeros(m: i32, count: usize) -> Result<Vec<f64>> {
    if m.abs() > MAX_ORDER {
        return Err(Error::Domain(format!("bessel_j_zeros: |m| = {} exceeds {MAX_ORDER}", m.abs())));
    }
    let n = m.unsigned_abs();
    {
        let guard = cache().read().unwrap_or_else(|e| e.into_inner());
        if let Some(z) = guard.get(&n) {
            if z.len() >= count {
                return Ok(z[..count].to_vec());
            }
        }
    }
    let mut guard = cache().write().unwrap_or_else(|e| e.into_inner());
    let known = guard.get(&n).cloned().unwrap_or_default();
    if known.len() >= count {
        return Ok(known[..count].to_vec());
    }
    let all = zeros_upto(n, count, &known);
    let out = all[..count].to_vec();
    guard.insert(n, all);
    Ok(out)
}

/// The n-th positive zero of J_m (n >= 1).
pub fn bessel_j_zero(m: i32, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("bessel_j_zero: n must be >= 1".into()));
    }
    Ok(bessel_j_zeros(m, n)?[n - 1])
}
