//! Closed intervals with exact rational endpoints, and dyadic brackets of
//! the positive zeros of `P_k` and `Q_k` refined by bisection.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exact::{pow2, IntPoly};
use crate::error::{Error, Result};

/// `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Distance from `x` to the interval, zero when `x` lies inside.
    pub fn distance_to(&self, x: &BigRational) -> BigRational {
        if x < &self.lo {
            &self.lo - x
        } else if x > &self.hi {
            x - &self.hi
        } else {
            BigRational::zero()
        }
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.hi, -&self.lo)
    }

    /// Adds a rational to both endpoints.
    pub fn shift(&self, x: &BigRational) -> Self {
        Self::new(&self.lo + x, &self.hi + x)
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, x: &BigRational) -> Self {
        let a = &self.lo * x;
        let b = &self.hi * x;
        if x.is_negative() {
            Self::new(b, a)
        } else {
            Self::new(a, b)
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Self::new(lo, hi)
    }

    /// `1 / x` over the interval; `None` when it contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.lo.is_positive() || self.hi.is_negative() {
            Some(Self::new(self.hi.recip(), self.lo.recip()))
        } else {
            None
        }
    }

    /// Widens both ends by `r >= 0`.
    pub fn widen(&self, r: &BigRational) -> Self {
        Self::new(&self.lo - r, &self.hi + r)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A bracket `[m / 2^s, (m + 1) / 2^s]` of the unique zero of an integer
/// polynomial that is negative at the lower and positive at the upper end.
/// A rational zero hit during bisection collapses the bracket to a point.
#[derive(Debug, Clone)]
pub struct DyadicBracket {
    poly: IntPoly,
    num: BigInt,
    bits: u64,
    exact: Option<BigRational>,
}

impl DyadicBracket {
    fn start(poly: IntPoly, num: i64, bits: u64) -> Self {
        let mut b = Self {
            poly,
            num: BigInt::from(num),
            bits,
            exact: None,
        };
        let lo = b.lo();
        let hi = b.hi();
        match (b.poly.sign_at_rational(&lo), b.poly.sign_at_rational(&hi)) {
            (Ordering::Equal, _) => b.exact = Some(lo),
            (_, Ordering::Equal) => b.exact = Some(hi),
            (Ordering::Less, Ordering::Greater) => {}
            _ => panic!("initial bracket does not isolate a sign change"),
        }
        b
    }

    /// `alpha_k`, the positive zero of `X^k + X - 1`, seeded in `[1/2, 1]`.
    pub fn alpha(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDepth);
        }
        Ok(Self::start(IntPoly::p_k(k), 1, 1))
    }

    /// `beta_k`, the positive zero of `X^k - X^{k-1} - 1`, seeded in `[1, 2]`.
    pub fn beta(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDepth);
        }
        Ok(Self::start(IntPoly::q_k(k), 1, 0))
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.poly
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Number of bisection steps below unit width; the width is `2^-bits`
    /// unless the zero is exact.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn lo(&self) -> BigRational {
        match &self.exact {
            Some(x) => x.clone(),
            None => BigRational::new(self.num.clone(), BigInt::one() << self.bits),
        }
    }

    pub fn hi(&self) -> BigRational {
        match &self.exact {
            Some(x) => x.clone(),
            None => BigRational::new(&self.num + 1, BigInt::one() << self.bits),
        }
    }

    /// Numerators of the endpoints over the common denominator `2^bits`.
    /// Only meaningful when the bracket is not exact.
    pub fn scaled_endpoints(&self) -> (&BigInt, BigInt) {
        (&self.num, &self.num + 1)
    }

    pub fn interval(&self) -> RationalInterval {
        RationalInterval::new(self.lo(), self.hi())
    }

    fn bisect(&mut self) {
        if self.exact.is_some() {
            return;
        }
        let num = &self.num << 1;
        let mid = &num + 1;
        let den = BigInt::one() << (self.bits + 1);
        self.bits += 1;
        match self.poly.sign_at(&mid, &den) {
            Ordering::Less => self.num = mid,
            Ordering::Greater => self.num = num,
            Ordering::Equal => self.exact = Some(BigRational::new(mid, den)),
        }
    }

    /// Bisects until the width is at most `2^-bits`.
    pub fn refine_bits(&mut self, bits: u64) {
        while self.exact.is_none() && self.bits < bits {
            self.bisect();
        }
    }

    /// Bisects until the width is at most `eps`.
    pub fn refine_width(&mut self, eps: &BigRational) -> Result<()> {
        if !eps.is_positive() {
            return Err(Error::NonPositiveEpsilon);
        }
        while self.exact.is_none() && pow2(-(self.bits as i64)) > *eps {
            self.bisect();
        }
        Ok(())
    }
}

/// Certified enclosure of `alpha_k` of width at most `eps`, with
/// `P_k(lo) < 0 < P_k(hi)` (or a point when the zero is rational).
pub fn alpha_interval(k: usize, eps: &BigRational) -> Result<RationalInterval> {
    let mut b = DyadicBracket::alpha(k)?;
    b.refine_width(eps)?;
    Ok(b.interval())
}

/// Certified enclosure of `beta_k = 1 / alpha_k` of width at most `eps`.
pub fn beta_interval(k: usize, eps: &BigRational) -> Result<RationalInterval> {
    let mut b = DyadicBracket::beta(k)?;
    b.refine_width(eps)?;
    Ok(b.interval())
}

/// Squares an interval of non-negative reals.
pub fn square_nonneg(x: &RationalInterval) -> RationalInterval {
    debug_assert!(!x.lo().is_negative());
    RationalInterval::new(x.lo() * x.lo(), x.hi() * x.hi())
}

impl Default for RationalInterval {
    fn default() -> Self {
        Self::point(BigRational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::exact::{parse_decimal, rat, sqrt_lower, sqrt_upper};

    fn dec(s: &str) -> BigRational {
        parse_decimal(s).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let a1 = alpha_interval(1, &dec("1e-5")).unwrap();
        assert_eq!(a1.lo(), &BigRational::new(1.into(), 2.into()));
        assert_eq!(a1.width(), BigRational::zero());

        let a3 = alpha_interval(3, &dec("1e-16")).unwrap();
        assert!(a3.width() <= dec("1e-16"));
        // Contains the value to the precision it is quoted at.
        let quoted = dec("0.6823278038280193");
        assert!(a3.widen(&dec("1e-16")).contains(&quoted));
        assert_eq!(IntPoly::p_k(3).sign_at_rational(a3.lo()), Ordering::Less);
        assert_eq!(IntPoly::p_k(3).sign_at_rational(a3.hi()), Ordering::Greater);

        // (sqrt 5 - 1) / 2, bracketed independently.
        let a2 = alpha_interval(2, &dec("1e-12")).unwrap();
        let five = rat(5);
        let lo = (sqrt_lower(&five, 100) - rat(1)) / rat(2);
        let hi = (sqrt_upper(&five, 100) - rat(1)) / rat(2);
        assert!(a2.lo() <= &lo && &hi <= a2.hi());
    }

    #[test]
    fn beta_examples() {
        let b2 = beta_interval(2, &dec("1e-10")).unwrap();
        assert!(b2.widen(&dec("1e-10")).contains(&dec("1.6180339887")));
        let b5 = beta_interval(5, &dec("1e-6")).unwrap();
        assert!(b5.widen(&dec("1e-6")).contains(&dec("1.324718")));
        let b1 = beta_interval(1, &dec("0.1")).unwrap();
        assert_eq!(b1, RationalInterval::point(rat(2)));
    }

    #[test]
    fn beta_is_reciprocal_of_alpha() {
        let eps = dec("1e-30");
        for k in 1..=12 {
            let a = alpha_interval(k, &eps).unwrap();
            let b = beta_interval(k, &eps).unwrap();
            let inv = a.recip().unwrap();
            assert!(inv.lo() <= b.hi() && b.lo() <= inv.hi(), "k = {k}");
        }
    }

    #[test]
    fn monotone_in_k_and_elementary_bounds() {
        let eps = dec("1e-25");
        let mut prev_a: Option<RationalInterval> = None;
        let mut prev_b: Option<RationalInterval> = None;
        for k in 2..=20 {
            let a = alpha_interval(k, &eps).unwrap();
            let b = beta_interval(k, &eps).unwrap();
            if let (Some(pa), Some(pb)) = (&prev_a, &prev_b) {
                assert!(pa.hi() < a.lo());
                assert!(b.hi() < pb.lo());
            }
            let kk = rat(k as i64);
            assert!(rat(1) + kk.recip() <= *b.lo());
            // beta <= 1 + 1/sqrt(k)  iff  (beta - 1)^2 k <= 1
            let d = b.hi() - rat(1);
            assert!(&d * &d * &kk <= rat(1));
            prev_a = Some(a);
            prev_b = Some(b);
        }
    }

    #[test]
    fn interval_arithmetic() {
        let x = RationalInterval::new(rat(-1), rat(2));
        let y = RationalInterval::new(rat(3), rat(4));
        assert_eq!(x.add(&y), RationalInterval::new(rat(2), rat(6)));
        assert_eq!(x.sub(&y), RationalInterval::new(rat(-5), rat(-1)));
        assert_eq!(x.mul(&y), RationalInterval::new(rat(-4), rat(8)));
        assert_eq!(x.scale(&rat(-2)), RationalInterval::new(rat(-4), rat(2)));
        assert!(x.recip().is_none());
        let r = y.recip().unwrap();
        assert_eq!(r.lo(), &BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn non_positive_eps_rejected() {
        assert_eq!(alpha_interval(3, &rat(0)), Err(Error::NonPositiveEpsilon));
    }
}
