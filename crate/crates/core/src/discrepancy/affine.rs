//! Reals of the form `a - alpha_k b` with natural `a`, `b`, compared exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebraic::exact::{biguint_to_rational, IntPoly};
use crate::algebraic::{DyadicBracket, RationalInterval};
use crate::error::{Error, Result};
use crate::numeration::Numeration;

/// The real number `a - alpha_k b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactAffine {
    k: usize,
    a: BigUint,
    b: BigUint,
}

impl ExactAffine {
    pub fn new(k: usize, a: BigUint, b: BigUint) -> Self {
        Self { k, a, b }
    }

    pub fn from_u64(k: usize, a: u64, b: u64) -> Self {
        Self::new(k, BigUint::from(a), BigUint::from(b))
    }

    pub fn zero(k: usize) -> Self {
        Self::from_u64(k, 0, 0)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    /// Enclosure of the denoted real for `alpha` in `alpha_iv`.
    pub fn evaluate(&self, alpha_iv: &RationalInterval) -> RationalInterval {
        let a = biguint_to_rational(&self.a);
        alpha_iv
            .scale(&biguint_to_rational(&self.b))
            .neg()
            .shift(&a)
    }
}

impl Add for &ExactAffine {
    type Output = ExactAffine;

    fn add(self, o: &ExactAffine) -> ExactAffine {
        assert_eq!(self.k, o.k, "adding values of different depths");
        ExactAffine::new(self.k, &self.a + &o.a, &self.b + &o.b)
    }
}

impl fmt::Display for ExactAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {} alpha_{}", self.a, self.b, self.k)
    }
}

/// Exact order of `x` and `y`.
///
/// With `da = a - a'` and `db = b - b'`, the difference is `da - alpha db`.
/// When `da` and `db` share a strict sign the answer is the sign of
/// `P_k(da / db)`, since `P_k` increases on the positive reals and vanishes
/// at `alpha_k`.
pub fn compare(x: &ExactAffine, y: &ExactAffine) -> Result<Ordering> {
    if x.k != y.k {
        return Err(Error::DepthMismatch(x.k, y.k));
    }
    let da = BigInt::from(x.a.clone()) - BigInt::from(y.a.clone());
    let db = BigInt::from(x.b.clone()) - BigInt::from(y.b.clone());
    let sa = da.sign();
    let sb = db.sign();
    use num_bigint::Sign::*;
    Ok(match (sa, sb) {
        (_, NoSign) => da.cmp(&BigInt::zero()),
        (NoSign, Plus) | (Minus, Plus) => Ordering::Less,
        (NoSign, Minus) | (Plus, Minus) => Ordering::Greater,
        (Plus, Plus) => IntPoly::p_k(x.k).sign_at(&da, &db),
        (Minus, Minus) => IntPoly::p_k(x.k).sign_at(&da.abs(), &db.abs()).reverse(),
    })
}

/// `delta_k(n) = F_k(n) - alpha_k n` as an exact pair.
pub fn delta(num: &mut Numeration, n: &BigUint) -> ExactAffine {
    ExactAffine::new(num.k(), num.f_by_shift(n), n.clone())
}

/// `delta_k(n)` for machine-sized `n`.
pub fn delta_u64(num: &mut Numeration, n: u64) -> ExactAffine {
    ExactAffine::from_u64(num.k(), num.f_by_shift_u64(n), n)
}

/// Renders exact pairs `a - x b` to floating point, where `x` is `alpha_k`
/// or a power of it, refining the bracket of `alpha_k` on demand so that
/// the rendering error stays below `2^-70` before the final rounding.
#[derive(Debug, Clone)]
pub struct AlphaRenderer {
    bracket: DyadicBracket,
}

const RENDER_BITS: u64 = 70;

impl AlphaRenderer {
    pub fn new(k: usize) -> Result<Self> {
        Ok(Self {
            bracket: DyadicBracket::alpha(k)?,
        })
    }

    pub fn k(&self) -> usize {
        self.bracket.polynomial().degree()
    }

    pub fn bracket(&self) -> &DyadicBracket {
        &self.bracket
    }

    /// Refines so that `power * width * b <= 2^-extra` for every
    /// `b <= bound`.
    fn refine_for(&mut self, bound_bits: u64, power: u32, extra: u64) {
        // width of alpha^power is at most power * width(alpha) for alpha < 1.
        let power_bits = 64 - (power as u64).leading_zeros() as u64;
        self.bracket.refine_bits(bound_bits + power_bits + extra);
    }

    /// Enclosure of `alpha_k^power` at the current refinement.
    pub fn power_interval(&self, power: u32) -> RationalInterval {
        let lo = num_traits::pow(self.bracket.lo(), power as usize);
        let hi = num_traits::pow(self.bracket.hi(), power as usize);
        RationalInterval::new(lo, hi)
    }

    /// Enclosure of `a - alpha_k^power b` of width at most `2^-extra`.
    pub fn enclose(
        &mut self,
        a: &BigUint,
        b: &BigUint,
        power: u32,
        extra: u64,
    ) -> RationalInterval {
        self.refine_for(b.bits(), power, extra);
        let x = self.power_interval(power);
        x.scale(&biguint_to_rational(b))
            .neg()
            .shift(&biguint_to_rational(a))
    }

    /// `a - alpha_k^power b` rounded to `f64`.
    pub fn render(&mut self, a: &BigUint, b: &BigUint, power: u32) -> f64 {
        if self.bracket.is_exact() {
            let x = num_traits::pow(self.bracket.lo(), power as usize);
            let v = biguint_to_rational(a) - x * biguint_to_rational(b);
            return v.to_f64().unwrap_or(f64::NAN);
        }
        self.refine_for(b.bits(), power, RENDER_BITS);
        let s = self.bracket.bits();
        let lo_num = num_traits::pow(self.bracket.scaled_endpoints().0.clone(), power as usize);
        let shift = s * power as u64;
        let numer = (BigInt::from(a.clone()) << shift) - BigInt::from(b.clone()) * lo_num;
        scaled_to_f64(&numer, shift)
    }

    pub fn render_affine(&mut self, x: &ExactAffine) -> f64 {
        self.render(&x.a, &x.b, 1)
    }

    pub fn render_u64(&mut self, a: u64, b: u64, power: u32) -> f64 {
        self.render(&BigUint::from(a), &BigUint::from(b), power)
    }
}

/// `numer / 2^shift` as the nearest-ish `f64` (one rounding in the integer
/// conversion, exact scaling afterwards for normal results).
pub fn scaled_to_f64(numer: &BigInt, shift: u64) -> f64 {
    if numer.is_zero() {
        return 0.0;
    }
    // Keep 64 significant bits before converting so that huge numerators
    // and shifts do not overflow the f64 range on the way.
    let excess = numer.bits().saturating_sub(64);
    let top = numer >> excess;
    let mut m = top.to_f64().unwrap_or(f64::NAN);
    let mut e = excess as i64 - shift as i64;
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
    }
    m * 2f64.powi(e as i32)
}
