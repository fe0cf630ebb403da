//! Evidence that the discrepancy is unbounded from `k = 5` on: the drift
//! along the sums `sum_{p<n} A_{5,6p}` and `sum_{p<n} A_{5,6p+3}`, and the
//! growth of `delta_k(A_{k,p})` for `k >= 6`.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::Zero;

use super::affine::{AlphaRenderer, ExactAffine};
use crate::algebraic::{root_set, RootSet, DEFAULT_PRECISION};
use crate::error::{Error, Result};
use crate::numeration::Numeration;
use crate::sequences::{ASeq, FContext};

/// `sum_{q in D_k(n)} sum_{i >= 1} d_{k,i} r_{k,i}^q`, which equals
/// `delta_k(n)`.
pub fn delta_by_decomp(rs: &RootSet, num: &mut Numeration, n: &BigUint) -> Result<Complex64> {
    if rs.k() != num.k() {
        return Err(Error::DepthMismatch(rs.k(), num.k()));
    }
    let d = num.zeckendorf(n);
    let roots = rs.roots_f64();
    let ds = rs.d_all_f64();
    let mut acc = Complex64::new(0.0, 0.0);
    for &q in d.positions() {
        for i in 1..rs.k() {
            acc += ds[i] * roots[i].powi(q as i32);
        }
    }
    Ok(acc)
}

/// Ordinary least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// One row of the `k = 5` probe.
#[derive(Debug, Clone)]
pub struct DriftRow {
    pub n: u64,
    pub u: BigUint,
    pub delta_u: f64,
    pub u_prime: BigUint,
    pub delta_u_prime: f64,
}

#[derive(Debug, Clone)]
pub struct K5Probe {
    pub rows: Vec<DriftRow>,
    /// Fitted slope of `delta_5(u_n)` against `n`.
    pub slope: f64,
    /// Fitted slope of `delta_5(u'_n)` against `n`.
    pub slope_prime: f64,
    /// `2 Re d_{5,1}`, the slope predicted by the closed form.
    pub predicted_slope: f64,
    /// Least `N` from which `delta_5(u_n)` increases strictly.
    pub increasing_from: u64,
    /// Least `N` from which `delta_5(u'_n)` decreases strictly.
    pub decreasing_from: u64,
    /// First `n` with `delta_5(u_n) > 2`.
    pub first_above_two: Option<u64>,
}

/// Builds `u_n = sum_{p<n} A_{5,6p}` and `u'_n = sum_{p<n} A_{5,6p+3}` for
/// `n <= n_max`. Their positions are 5 apart, so the sums are already
/// canonical decompositions and `F_5` is obtained by shifting each term.
pub fn divergence_probe_k5(n_max: u64) -> Result<K5Probe> {
    let k = 5;
    let rs = root_set(k, DEFAULT_PRECISION)?;
    let mut seq = ASeq::new(k)?;
    seq.extend_to(6 * n_max as usize + 3);
    let a = seq.values();
    let mut render = AlphaRenderer::new(k)?;
    let mut u = ExactAffine::zero(k);
    let mut v = ExactAffine::zero(k);
    let mut rows = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        if n > 0 {
            let p = 6 * (n as usize - 1);
            u = &u + &ExactAffine::new(k, a[p.saturating_sub(1)].clone(), a[p].clone());
            v = &v + &ExactAffine::new(k, a[p + 2].clone(), a[p + 3].clone());
        }
        rows.push(DriftRow {
            n,
            u: u.b().clone(),
            delta_u: render.render_affine(&u),
            u_prime: v.b().clone(),
            delta_u_prime: render.render_affine(&v),
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.delta_u).collect();
    let ys2: Vec<f64> = rows.iter().map(|r| r.delta_u_prime).collect();
    let monotone_from = |vals: &[f64], up: bool| {
        let mut from = vals.len().saturating_sub(1);
        while from > 0 {
            let ok = if up {
                vals[from - 1] < vals[from]
            } else {
                vals[from - 1] > vals[from]
            };
            if !ok {
                break;
            }
            from -= 1;
        }
        from as u64
    };
    Ok(K5Probe {
        slope: least_squares_slope(&xs, &ys),
        slope_prime: least_squares_slope(&xs, &ys2),
        predicted_slope: 2.0 * rs.d_f64(1).re,
        increasing_from: monotone_from(&ys, true),
        decreasing_from: monotone_from(&ys2, false),
        first_above_two: rows.iter().find(|r| r.delta_u > 2.0).map(|r| r.n),
        rows,
    })
}

/// Constants `(C, M)` with `|delta_5(n)| <= C ln n + M` for `n >= 1`:
/// `M = sum_{i>=1} |d_{5,i}|` and `C = M / ln beta_5`.
pub fn log_bound_k5(rs: &RootSet) -> Result<(f64, f64)> {
    if rs.k() != 5 {
        return Err(Error::DepthMismatch(rs.k(), 5));
    }
    let prec = rs.precision();
    let m: f64 = (1..5)
        .map(|i| crate::algebraic::exact::to_f64_up(&rs.d()[i].abs_upper(prec)))
        .sum();
    let beta = rs.root_f64(0).re;
    Ok((m / beta.ln(), m))
}

/// Running extremes of `delta_k(A_{k,p})` and an empirical growth exponent.
#[derive(Debug, Clone)]
pub struct GeneralProbe {
    pub k: usize,
    pub p_max: usize,
    /// `(value, p)` of the largest and smallest `delta_k(A_{k,p})`.
    pub max_on_a: (f64, usize),
    pub min_on_a: (f64, usize),
    /// Extremes of `delta_k(n)` over the exhaustive range `n <= n_scan`.
    pub n_scan: u64,
    pub max_scan: (f64, u64),
    pub min_scan: (f64, u64),
    /// Slope of `ln max_{q<=p} |delta_k(A_{k,q})|` against `ln A_{k,p}`.
    pub fitted_exponent: f64,
    /// `ln |r_{k,1}| / ln beta_k`.
    pub predicted_exponent: f64,
}

/// Probes `delta_k` along `A_{k,p}` for `p <= p_max` and exhaustively for
/// `n <= n_scan`. The exponent is fitted over the upper half of the range
/// of `p`.
pub fn divergence_probe_general(k: usize, p_max: usize, n_scan: u64) -> Result<GeneralProbe> {
    if k < 6 {
        return Err(Error::UnsupportedDepth {
            k,
            reason: "the polynomial growth probe needs k >= 6",
        });
    }
    let rs = root_set(k, DEFAULT_PRECISION)?;
    let mut seq = ASeq::new(k)?;
    seq.extend_to(p_max);
    let a = seq.values();
    let mut render = AlphaRenderer::new(k)?;
    let mut max_on_a = (f64::MIN, 0);
    let mut min_on_a = (f64::MAX, 0);
    let mut running = 0f64;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for p in 0..=p_max {
        let v = render.render(&a[p.saturating_sub(1)], &a[p], 1);
        if v > max_on_a.0 {
            max_on_a = (v, p);
        }
        if v < min_on_a.0 {
            min_on_a = (v, p);
        }
        running = running.max(v.abs());
        if 2 * p >= p_max && running > 0.0 {
            xs.push(ln_biguint(&a[p]));
            ys.push(running.ln());
        }
    }

    let ctx = FContext::warmed(k, n_scan)?;
    let mut max_scan = (f64::MIN, 0);
    let mut min_scan = (f64::MAX, 0);
    for (n, &f) in ctx.table().iter().enumerate().take(n_scan as usize + 1) {
        let v = render.render_u64(f, n as u64, 1);
        if v > max_scan.0 {
            max_scan = (v, n as u64);
        }
        if v < min_scan.0 {
            min_scan = (v, n as u64);
        }
    }

    Ok(GeneralProbe {
        k,
        p_max,
        max_on_a,
        min_on_a,
        n_scan,
        max_scan,
        min_scan,
        fitted_exponent: least_squares_slope(&xs, &ys),
        predicted_exponent: rs.secondary_exponent().expect("k >= 6"),
    })
}

/// Natural logarithm of a big natural number.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let excess = x.bits().saturating_sub(64);
    let top: BigUint = x >> excess;
    let m = num_traits::ToPrimitive::to_f64(&top).unwrap_or(f64::NAN);
    m.ln() + excess as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrepancy::affine::delta_u64;
    use crate::numeration::Decomp;
    use rand::{Rng, SeedableRng};

    #[test]
    fn decomposition_formula_examples() {
        let rs3 = root_set(3, DEFAULT_PRECISION).unwrap();
        let mut n3 = Numeration::new(3).unwrap();
        let z = delta_by_decomp(&rs3, &mut n3, &BigUint::zero()).unwrap();
        assert_eq!(z, Complex64::new(0.0, 0.0));
        let z5 = delta_by_decomp(&rs3, &mut n3, &BigUint::from(5u32)).unwrap();
        assert!((z5.re - 0.5883).abs() < 1e-4 && z5.im.abs() < 1e-12);

        // At an A number the formula reduces to a single closed-form term.
        let rs5 = root_set(5, DEFAULT_PRECISION).unwrap();
        let mut n5 = Numeration::new(5).unwrap();
        let a6 = n5.seq().a(6).clone();
        let lhs = delta_by_decomp(&rs5, &mut n5, &a6).unwrap();
        let rhs: Complex64 = (1..5).map(|i| rs5.d_f64(i) * rs5.root_f64(i).powi(6)).sum();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn decomposition_formula_matches_exact_pairs() {
        for k in 2..=7 {
            let rs = root_set(k, DEFAULT_PRECISION).unwrap();
            let mut num = Numeration::new(k).unwrap();
            let mut render = AlphaRenderer::new(k).unwrap();
            for n in (0..20_000u64).step_by(7) {
                let exact = render.render_affine(&delta_u64(&mut num, n));
                let z = delta_by_decomp(&rs, &mut num, &BigUint::from(n)).unwrap();
                assert!((z.re - exact).abs() < 1e-9, "k={k} n={n}");
                assert!(z.im.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn rank_split_is_additive() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for k in 2..=5 {
            let mut num = Numeration::new(k).unwrap();
            for _ in 0..1000 {
                let n: u64 = rng.gen_range(0..1u64 << 40);
                let d = num.zeckendorf_u64(n);
                let split: usize = rng.gen_range(0..40);
                let low: Vec<usize> = d
                    .positions()
                    .iter()
                    .copied()
                    .filter(|&q| q < split)
                    .collect();
                let low = Decomp::new(k, low).unwrap();
                let n1 = num_traits::ToPrimitive::to_u64(&num.sum(&low).unwrap()).unwrap();
                let n2 = n - n1;
                let lhs = delta_u64(&mut num, n);
                let rhs = &delta_u64(&mut num, n1) + &delta_u64(&mut num, n2);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn k5_probe() {
        let probe = divergence_probe_k5(120).unwrap();
        assert_eq!(probe.rows[0].delta_u, 0.0);
        assert!(probe.first_above_two.is_some_and(|n| n <= 120));
        assert!((probe.predicted_slope - 2.0 * 0.0189).abs() < 2e-4);
        let rel = (probe.slope - probe.predicted_slope).abs() / probe.predicted_slope;
        assert!(rel < 0.1, "slope {}", probe.slope);
        let rel2 = (probe.slope_prime + probe.predicted_slope).abs() / probe.predicted_slope;
        assert!(rel2 < 0.1);
        assert!(probe.increasing_from < 60);
        assert!(probe.decreasing_from < 60);
        // The values on the sums exceed every extreme of delta_4.
        assert!(probe.rows.last().unwrap().delta_u > 1.5834687793247475);
    }

    #[test]
    fn k5_log_bound_holds() {
        let rs = root_set(5, DEFAULT_PRECISION).unwrap();
        let (c, m) = log_bound_k5(&rs).unwrap();
        let ctx = FContext::warmed(5, 100_000).unwrap();
        let mut render = AlphaRenderer::new(5).unwrap();
        for n in 1..=100_000u64 {
            let v = render.render_u64(ctx.table()[n as usize], n, 1);
            assert!(v.abs() <= c * (n as f64).ln() + m, "n = {n}");
        }
    }

    #[test]
    fn general_probe() {
        let p6 = divergence_probe_general(6, 400, 10_000).unwrap();
        assert!(p6.max_on_a.0 > 1.0 && p6.min_on_a.0 < -1.0);
        assert!((p6.predicted_exponent - 0.1287).abs() < 5e-4);
        assert!(
            (p6.fitted_exponent - 0.1287).abs() < 0.03,
            "{}",
            p6.fitted_exponent
        );
        let p7 = divergence_probe_general(7, 400, 1000).unwrap();
        assert!((p7.predicted_exponent - 0.2218).abs() < 5e-4);
        assert!(
            (p7.fitted_exponent - 0.2218).abs() < 0.03,
            "{}",
            p7.fitted_exponent
        );
        assert!(divergence_probe_general(5, 10, 10).is_err());
    }

    #[test]
    fn ln_of_big_numbers() {
        assert!((ln_biguint(&BigUint::from(1000u32)) - 1000f64.ln()).abs() < 1e-12);
        let big = BigUint::from(1u32) << 300;
        assert!((ln_biguint(&big) - 300.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }
}
