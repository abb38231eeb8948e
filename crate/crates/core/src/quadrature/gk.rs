use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values an integrand may return: real or complex.
pub trait Scalar: Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(self) -> f64;
}

impl Scalar for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
}

/// Heap entry ordered by error estimate.
struct ByErr(f64, usize);

impl PartialEq for ByErr {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for ByErr {}

impl PartialOrd for ByErr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByErr {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(other.1.cmp(&self.1))
    }
}

pub(crate) fn kronrod_fixed<T: Scalar>(f: &impl Fn(f64) -> T, a: f64, b: f64) -> T {
    kronrod(&mut |x| f(x), a, b).0
}

fn kronrod<T: Scalar>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = fc * WGK[10];
    let mut resg = T::default();
    let mut absk = fc.magnitude() * WGK[10];
    let mut fv = [(T::default(), T::default()); 10];
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv[j] = (f1, f2);
        resk = resk + (f1 + f2) * WGK[j];
        absk += (f1.magnitude() + f2.magnitude()) * WGK[j];
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut asc = (fc - mean).magnitude() * WGK[10];
    for j in 0..10 {
        asc += ((fv[j].0 - mean).magnitude() + (fv[j].1 - mean).magnitude()) * WGK[j];
    }
    let value = resk * h;
    let resasc = asc * h.abs();
    let resabs = absk * h.abs();
    let mut err = ((resk - resg) * h).magnitude();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err)
}

/// Globally adaptive Gauss-Kronrod integration over the given breakpoints.
///
/// Intervals are bisected in order of largest error until the total error
/// meets `max(abs_tol, rel_tol * |value|)` or `max_segments` is reached.
pub fn adaptive<T: Scalar>(
    mut f: impl FnMut(f64) -> T,
    points: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_segments: usize,
) -> Result<(T, f64)> {
    let mut segs: Vec<Segment<T>> = Vec::new();
    let mut queue = BinaryHeap::new();
    for w in points.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let (value, err) = kronrod(&mut f, w[0], w[1]);
        queue.push(ByErr(err, segs.len()));
        segs.push(Segment { a: w[0], b: w[1], value, err });
    }
    let span = (points[points.len() - 1] - points[0]).abs();
    let sum = |segs: &[Segment<T>]| segs.iter().fold(T::default(), |s, g| s + g.value);
    let mut total = sum(&segs);
    let mut err: f64 = segs.iter().map(|g| g.err).sum();
    loop {
        if err <= abs_tol.max(rel_tol * total.magnitude()) {
            let err: f64 = segs.iter().map(|g| g.err).sum();
            return Ok((sum(&segs), err));
        }
        // Segments at roundoff resolution are never queued again.
        let Some(ByErr(_, i)) = queue.pop() else {
            return Ok((sum(&segs), err));
        };
        if segs.len() >= max_segments {
            return Err(Error::Convergence { estimate: total.magnitude(), err });
        }
        let (a, b) = (segs[i].a, segs[i].b);
        let m = 0.5 * (a + b);
        if !(m > a && m < b) || (b - a) <= (1e3 * f64::EPSILON * a.abs().max(b.abs())).max(1e-14 * span) {
            continue;
        }
        let (v1, e1) = kronrod(&mut f, a, m);
        let (v2, e2) = kronrod(&mut f, m, b);
        if !(e1 + e2).is_finite() {
            return Err(Error::Convergence { estimate: total.magnitude(), err: f64::INFINITY });
        }
        total = total - segs[i].value + v1 + v2;
        err += e1 + e2 - segs[i].err;
        segs[i] = Segment { a, b: m, value: v1, err: e1 };
        queue.push(ByErr(e1, i));
        queue.push(ByErr(e2, segs.len()));
        segs.push(Segment { a: m, b, value: v2, err: e2 });
    }
}
