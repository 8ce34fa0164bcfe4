//! Numerical oracles that share no code with the library.

#![allow(dead_code)]

use dirac2d::{validate_state, HalfInt, QuantumNumbers};

pub fn state(n: u32, kappa_twice: i32, mu_twice: i32) -> QuantumNumbers {
    validate_state(n, HalfInt::from_twice(kappa_twice), HalfInt::from_twice(mu_twice)).unwrap()
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639,
    0.949_107_912_342_758_525,
    0.864_864_423_359_769_073,
    0.741_531_185_599_394_440,
    0.586_087_235_467_691_130,
    0.405_845_151_377_397_167,
    0.207_784_955_007_898_468,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_553,
    0.104_790_010_322_250_184,
    0.140_653_259_715_525_919,
    0.169_004_726_639_267_903,
    0.190_350_578_064_785_410,
    0.204_432_940_075_298_892,
    0.209_482_141_084_727_828,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693,
    0.279_705_391_489_276_668,
    0.381_830_050_505_118_945,
    0.417_959_183_673_469_388,
];

/// 15-point Kronrod estimate, its difference from the embedded 7-point Gauss
/// rule, and the Kronrod estimate of `∫|f|`.
fn kronrod15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut absolute = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let (lo, hi) = (f(mid - dx), f(mid + dx));
        let pair = lo + hi;
        kronrod += WGK[j] * pair;
        absolute += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs(), absolute * half.abs())
}

/// Globally adaptive Gauss–Kronrod: bisect the worst interval until the
/// summed error estimate drops below `rel_tol·∫|f|`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    let first = kronrod15(&f, a, b);
    let (_, mut error, mut absolute) = first;
    let mut intervals = vec![(a, b, first)];
    for _ in 0..20_000 {
        if error <= rel_tol * absolute {
            break;
        }
        let worst = (0..intervals.len())
            .max_by(|&i, &j| intervals[i].2 .1.total_cmp(&intervals[j].2 .1))
            .unwrap();
        let (lo, hi, (_, e, m)) = intervals.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let left = kronrod15(&f, lo, mid);
        let right = kronrod15(&f, mid, hi);
        error += left.1 + right.1 - e;
        absolute += left.2 + right.2 - m;
        intervals.push((lo, mid, left));
        intervals.push((mid, hi, right));
    }
    // resum with small pieces first
    let mut parts: Vec<f64> = intervals.iter().map(|i| i.2 .0).collect();
    parts.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
    parts.iter().sum()
}

/// Ridders' extrapolated central difference; returns `(f'(x), error estimate)`.
pub fn derivative(f: impl Fn(f64) -> f64, x: f64, h0: f64) -> (f64, f64) {
    const SHRINK: f64 = 1.4;
    const SIZE: usize = 10;
    let mut table = [[0.0f64; SIZE]; SIZE];
    let mut h = h0;
    table[0][0] = (f(x + h) - f(x - h)) / (2.0 * h);
    let mut best = (table[0][0], f64::INFINITY);
    for i in 1..SIZE {
        h /= SHRINK;
        table[0][i] = (f(x + h) - f(x - h)) / (2.0 * h);
        let mut fac = SHRINK * SHRINK;
        for j in 1..=i {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= SHRINK * SHRINK;
            let err = (table[j][i] - table[j - 1][i]).abs().max((table[j][i] - table[j - 1][i - 1]).abs());
            if err <= best.1 {
                best = (table[j][i], err);
            }
        }
        if (table[i][i] - table[i - 1][i - 1]).abs() >= 2.0 * best.1 {
            break;
        }
    }
    best
}
