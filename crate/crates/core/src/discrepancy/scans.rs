//! Exhaustive scans over `n`, plus the `delta_3` point cloud.

use std::collections::BTreeMap;
use std::io::{self, Write};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::affine::AlphaRenderer;
use crate::algebraic::exact::pow2;
use crate::algebraic::{DyadicBracket, RationalInterval};
use crate::error::{Error, Result};
use crate::sequences::FContext;

/// Hard cap on the bracket refinement used to decide a floor.
pub const FLOOR_CAP_BITS: u64 = 2000;

/// Decides `floor(x n)` for `x = alpha_k^power`, refining the bracket of
/// `alpha_k` until the enclosure of `x n` contains no integer.
#[derive(Debug, Clone)]
pub struct FloorOracle {
    bracket: DyadicBracket,
    power: u32,
    // x lies in [lo, hi] / 2^shift.
    lo: BigInt,
    hi: BigInt,
    shift: u64,
    fast: Option<(u128, u128)>,
}

impl FloorOracle {
    pub fn new(k: usize, power: u32) -> Result<Self> {
        assert!(power >= 1);
        let mut o = Self {
            bracket: DyadicBracket::alpha(k)?,
            power,
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            shift: 0,
            fast: None,
        };
        o.set_bits(96 / power as u64);
        Ok(o)
    }

    fn set_bits(&mut self, bits: u64) {
        self.bracket.refine_bits(bits);
        let p = self.power as usize;
        if self.bracket.is_exact() {
            // Only k = 1, where alpha = 1/2.
            let x = self.bracket.lo();
            let den_bits = x.denom().bits() - 1;
            self.shift = den_bits * self.power as u64;
            self.lo = num_traits::pow(x.numer().clone(), p);
            self.hi = self.lo.clone();
        } else {
            let (lo, hi) = self.bracket.scaled_endpoints();
            self.shift = self.bracket.bits() * self.power as u64;
            self.lo = num_traits::pow(lo.clone(), p);
            self.hi = num_traits::pow(hi, p);
        }
        self.fast = match (self.lo.to_u128(), self.hi.to_u128()) {
            (Some(l), Some(h)) if self.shift < 128 => Some((l, h)),
            _ => None,
        };
    }

    /// The current enclosure of `x`.
    pub fn interval(&self) -> RationalInterval {
        let d = pow2(-(self.shift as i64));
        RationalInterval::new(
            BigRational::from_integer(self.lo.clone()) * &d,
            BigRational::from_integer(self.hi.clone()) * d,
        )
    }

    /// `floor(x n)`, or `None` if undecided at the refinement cap.
    pub fn floor_mul(&mut self, n: u64) -> Option<u64> {
        if let Some((l, h)) = self.fast {
            if let Some(nh) = h.checked_mul(n as u128) {
                let fl = (l * n as u128) >> self.shift;
                if fl == nh >> self.shift {
                    return Some(fl as u64);
                }
            }
        }
        loop {
            let fl: BigInt = (&self.lo * n) >> self.shift;
            let fh: BigInt = (&self.hi * n) >> self.shift;
            if fl == fh {
                return fl.to_u64();
            }
            let bits = self.bracket.bits();
            if bits >= FLOOR_CAP_BITS || self.bracket.is_exact() {
                return None;
            }
            self.set_bits((bits * 2).min(FLOOR_CAP_BITS));
        }
    }
}

/// Histogram of `F_k(n) - floor(alpha_k n)` for `n <= n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CloitreReport {
    pub k: usize,
    pub n_max: u64,
    pub histogram: BTreeMap<i64, u64>,
    pub first_occurrences: BTreeMap<i64, u64>,
    /// `n` for which the floor stayed undecided at the refinement cap.
    pub ambiguous: Vec<u64>,
}

impl CloitreReport {
    /// The set of differences proven possible for this `k`, if known.
    pub fn expected_values(k: usize) -> Option<&'static [i64]> {
        match k {
            1..=3 => Some(&[0, 1]),
            4 => Some(&[-1, 0, 1, 2]),
            _ => None,
        }
    }

    /// Observed differences outside the expected set, with their first `n`.
    pub fn violations(&self) -> Vec<(i64, u64)> {
        match Self::expected_values(self.k) {
            Some(allowed) => self
                .first_occurrences
                .iter()
                .filter(|(v, _)| !allowed.contains(v))
                .map(|(&v, &n)| (v, n))
                .collect(),
            None => Vec::new(),
        }
    }
}

pub fn cloitre_scan(k: usize, n_max: u64) -> Result<CloitreReport> {
    let ctx = FContext::warmed(k, n_max)?;
    let mut oracle = FloorOracle::new(k, 1)?;
    let mut histogram = BTreeMap::new();
    let mut first_occurrences = BTreeMap::new();
    let mut ambiguous = Vec::new();
    for (n, &f) in ctx.table().iter().enumerate().take(n_max as usize + 1) {
        let n = n as u64;
        match oracle.floor_mul(n) {
            Some(fl) => {
                let diff = f as i64 - fl as i64;
                *histogram.entry(diff).or_insert(0) += 1;
                first_occurrences.entry(diff).or_insert(n);
            }
            None => ambiguous.push(n),
        }
    }
    Ok(CloitreReport {
        k,
        n_max,
        histogram,
        first_occurrences,
        ambiguous,
    })
}

/// A pair `(n, m)` and its defect `F_k(n+m) - F_k(n) - F_k(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub n: u64,
    pub m: u64,
    pub defect: i64,
}

/// Extremes of the additivity defect over `n + m <= n_max`, `n <= m`.
/// Witnesses are the first pairs reaching each extreme, ordered by
/// `n + m` then `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditivityReport {
    pub k: usize,
    pub n_max: u64,
    pub max: Witness,
    pub min: Witness,
}

impl AdditivityReport {
    pub fn max_abs(&self) -> u64 {
        self.max
            .defect
            .unsigned_abs()
            .max(self.min.defect.unsigned_abs())
    }

    /// The earliest witness of the largest absolute defect.
    pub fn max_abs_witness(&self) -> Witness {
        let (a, b) = (self.max, self.min);
        match a.defect.unsigned_abs().cmp(&b.defect.unsigned_abs()) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => {
                if (b.n + b.m, b.n) < (a.n + a.m, a.n) {
                    b
                } else {
                    a
                }
            }
        }
    }
}

/// `F_k(n+m) - F_k(n) - F_k(m)`.
pub fn additivity_defect(ctx: &mut FContext, n: u64, m: u64) -> i64 {
    ctx.f(n + m) as i64 - ctx.f(n) as i64 - ctx.f(m) as i64
}

pub fn additivity_scan(k: usize, n_max: u64) -> Result<AdditivityReport> {
    let ctx = FContext::warmed(k, n_max)?;
    let f = ctx.table();
    let zero = Witness {
        n: 0,
        m: 0,
        defect: 0,
    };
    let mut max = zero;
    let mut min = zero;
    for s in 0..=n_max as usize {
        let fs = f[s] as i64;
        for n in 0..=s / 2 {
            let defect = fs - f[n] as i64 - f[s - n] as i64;
            if defect > max.defect {
                max = Witness {
                    n: n as u64,
                    m: (s - n) as u64,
                    defect,
                };
            } else if defect < min.defect {
                min = Witness {
                    n: n as u64,
                    m: (s - n) as u64,
                    defect,
                };
            }
        }
    }
    Ok(AdditivityReport { k, n_max, max, min })
}

/// Range of `F_3^2(n) - alpha_3^2 n` and the histogram of
/// `F_3^2(n) - floor(alpha_3^2 n)` over `n <= n_max`.
#[derive(Debug, Clone)]
pub struct SecondIterateReport {
    pub n_max: u64,
    /// Enclosure of the minimum of the signed quantity, and an `n` attaining
    /// the lower end.
    pub min: (RationalInterval, u64),
    pub max: (RationalInterval, u64),
    pub histogram: BTreeMap<i64, u64>,
    pub first_occurrences: BTreeMap<i64, u64>,
    pub ambiguous: Vec<u64>,
}

impl SecondIterateReport {
    /// Fraction of scanned `n` whose floor difference equals `value`.
    pub fn frequency(&self, value: i64) -> f64 {
        *self.histogram.get(&value).unwrap_or(&0) as f64 / (self.n_max + 1) as f64
    }
}

/// Largest `n_max` accepted by [`second_iterate_scan`].
pub const SECOND_ITERATE_LIMIT: u64 = 1 << 30;

pub fn second_iterate_scan(n_max: u64) -> Result<SecondIterateReport> {
    if n_max > SECOND_ITERATE_LIMIT {
        return Err(Error::Precision(format!(
            "n_max above {SECOND_ITERATE_LIMIT} overflows the fixed-point scan"
        )));
    }
    let ctx = FContext::warmed(3, n_max)?;
    let mut oracle = FloorOracle::new(3, 2)?;
    // alpha^2 in [lo, hi] / 2^96 with lo, hi machine integers.
    const SHIFT: u64 = 96;
    let mut bracket = DyadicBracket::alpha(3)?;
    bracket.refine_bits(SHIFT);
    let (lo, hi) = bracket.scaled_endpoints();
    let sq_lo: BigInt = (lo * lo) >> SHIFT;
    let sq_hi: BigInt = ((&hi * &hi) >> SHIFT) + 1;
    let (sq_lo, sq_hi) = (
        sq_lo.to_i128().expect("fits"),
        sq_hi.to_i128().expect("fits"),
    );

    let mut best_hi = (i128::MIN, i128::MIN, 0u64);
    let mut best_lo = (i128::MAX, i128::MAX, 0u64);
    let mut histogram = BTreeMap::new();
    let mut first_occurrences = BTreeMap::new();
    let mut ambiguous = Vec::new();
    for n in 0..=n_max {
        let f2 = ctx.iter_warm(2, n) as i128;
        let base = f2 << SHIFT;
        // value * 2^96 lies in [v_lo, v_hi].
        let v_lo = base - n as i128 * sq_hi;
        let v_hi = base - n as i128 * sq_lo;
        if v_hi > best_hi.1 {
            best_hi = (v_lo.max(best_hi.0), v_hi, n);
        } else if v_lo > best_hi.0 {
            best_hi.0 = v_lo;
        }
        if v_lo < best_lo.0 {
            best_lo = (v_lo, v_hi.min(best_lo.1), n);
        } else if v_hi < best_lo.1 {
            best_lo.1 = v_hi;
        }
        match oracle.floor_mul(n) {
            Some(fl) => {
                let diff = f2 as i64 - fl as i64;
                *histogram.entry(diff).or_insert(0) += 1;
                first_occurrences.entry(diff).or_insert(n);
            }
            None => ambiguous.push(n),
        }
    }
    let scale = pow2(-(SHIFT as i64));
    let to_rat = |v: i128| BigRational::from_integer(BigInt::from(v)) * &scale;
    Ok(SecondIterateReport {
        n_max,
        min: (
            RationalInterval::new(to_rat(best_lo.0), to_rat(best_lo.1)),
            best_lo.2,
        ),
        max: (
            RationalInterval::new(to_rat(best_hi.0), to_rat(best_hi.1)),
            best_hi.2,
        ),
        histogram,
        first_occurrences,
        ambiguous,
    })
}

/// One point of the `delta_3` cloud.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractalPoint {
    pub n: u64,
    pub x: f64,
    pub y: f64,
}

/// `(delta_3(n), delta_3(F_3(n)))` for `n < n_max`, rendered from exact
/// pairs. With `shear`, the second coordinate becomes
/// `delta_3(F_3(n)) + alpha_3 delta_3(n) = F_3^2(n) - alpha_3^2 n`.
pub fn fractal_points(n_max: u64, shear: bool) -> Result<Vec<FractalPoint>> {
    let mut ctx = FContext::warmed(3, n_max)?;
    let mut render = AlphaRenderer::new(3)?;
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 0..n_max {
        let f = ctx.f(n);
        let ff = ctx.f(f);
        let x = render.render_u64(f, n, 1);
        let y = if shear {
            render.render_u64(ff, n, 2)
        } else {
            render.render_u64(ff, f, 1)
        };
        out.push(FractalPoint { n, x, y });
    }
    Ok(out)
}

/// Writes points as `n,x,y` rows with 17 significant digits, after a header.
pub fn write_fractal_csv<W: Write>(mut w: W, points: &[FractalPoint]) -> io::Result<()> {
    writeln!(w, "n,x,y")?;
    for p in points {
        writeln!(w, "{},{:.16e},{:.16e}", p.n, p.x, p.y)?;
    }
    Ok(())
}

/// Exact pair `F_3^2(n) - alpha_3^2 n` rendered with a renderer for `k = 3`.
pub fn second_iterate_value(render: &mut AlphaRenderer, ctx: &mut FContext, n: u64) -> f64 {
    let ff = ctx.f_iter(2, n);
    render.render(&BigUint::from(ff), &BigUint::from(n), 2)
}
