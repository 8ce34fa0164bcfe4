//! Plain-text renderings of the reference tables.

use std::fmt::Write;

use dirac2d::magnetic::shift_nonrel;
use dirac2d::{energy, enumerate_levels, PhysicalParams, QuantumNumbers, Result, RouteRegistry};

const N_MAX: u32 = 3;

/// Energies of every level with `n ≤ 3`, one shell per block.
pub fn table1(params: &PhysicalParams) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "{:<3}{:<4}{:<7}{:<3}{:<8}energy", "n", "n'", "kappa", "l", "state");
    let levels = enumerate_levels(N_MAX);
    for (i, qn) in levels.iter().enumerate() {
        if i > 0 && levels[i - 1].n != qn.n {
            out.push('\n');
        }
        let e = energy(qn, params)?.e;
        let _ = writeln!(
            out,
            "{:<3}{:<4}{:<7}{:<3}{:<8}{:.12}",
            qn.n,
            qn.n_prime,
            qn.kappa.to_string(),
            qn.l,
            qn.label(),
            e
        );
    }
    Ok(out)
}

/// First-order shifts of every level with `n ≤ 3`, grouped by `n'`. The
/// upper sign belongs to `μ = +|κ|`, the lower to `μ = -|κ|`.
pub fn table2(params: &PhysicalParams) -> Result<String> {
    let reg = RouteRegistry::with_defaults();
    let mut levels = enumerate_levels(N_MAX);
    levels.sort_by_key(|q| q.n_prime);
    let mut out = String::new();
    let _ = writeln!(out, "{:<4}{:<7}{:<8}{:<14}EN", "n'", "kappa", "state", "E1");
    for (i, qn) in levels.iter().enumerate() {
        if i > 0 && levels[i - 1].n_prime != qn.n_prime {
            out.push('\n');
        }
        let e1 = reg.shift("closed", qn, params)?.e1;
        let _ = writeln!(
            out,
            "{:<4}{:<7}{:<8}{:<14}{}",
            qn.n_prime,
            qn.kappa.to_string(),
            qn.label(),
            signed(e1, format_shift(e1.abs())),
            nonrel_entry(qn)
        );
    }
    Ok(out)
}

fn signed(upper: f64, magnitude: String) -> String {
    let sign = if upper < 0.0 { '∓' } else { '±' };
    format!("{sign}{magnitude}")
}

/// Eight decimals, or a four-decimal mantissa with a bracketed power of ten
/// for entries below `1e-3`.
pub fn format_shift(x: f64) -> String {
    if x == 0.0 || x >= 1e-3 {
        return format!("{x:.8}");
    }
    let mut exp = x.log10().floor() as i32;
    let mut mantissa = x / 10f64.powi(exp);
    if format!("{mantissa:.4}").starts_with("10") {
        exp += 1;
        mantissa /= 10.0;
    }
    format!("{mantissa:.4}[{exp}]")
}

fn nonrel_entry(qn: &QuantumNumbers) -> String {
    let en = shift_nonrel(qn);
    if en == 0.0 {
        "0".to_string()
    } else {
        signed(en, en.abs().to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_formatting() {
        assert_eq!(format_shift(0.499_973_372_9), "0.49997337");
        assert_eq!(format_shift(1.499_994_674_85), "1.49999467");
        assert_eq!(format_shift(2.958_566e-6), "2.9586[-6]");
        assert_eq!(format_shift(1.065_066e-6), "1.0651[-6]");
        assert_eq!(format_shift(9.999_99e-5), "1.0000[-4]");
    }
}
