//! Complex disks with rational centre and rational radius. Every operation
//! returns a disk containing all results of applying it to points of its
//! operands; centres are rounded to a working precision and the rounding
//! error is folded into the radius.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::exact::{round_rel, round_up, sqrt_lower, sqrt_upper};

/// Exact complex rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::real(BigRational::one())
    }

    pub fn from_f64(z: Complex64) -> Self {
        Self {
            re: BigRational::from_float(z.re).expect("finite"),
            im: BigRational::from_float(z.im).expect("finite"),
        }
    }

    pub fn to_f64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, x: &BigRational) -> Self {
        Self::new(&self.re * x, &self.im * x)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact division; panics on a zero divisor.
    pub fn div(&self, o: &Self) -> Self {
        let n = o.norm_sqr();
        assert!(!n.is_zero(), "complex division by zero");
        self.mul(&o.conj()).scale(&n.recip())
    }

    pub fn abs_upper(&self, prec: u32) -> BigRational {
        sqrt_upper(&self.norm_sqr(), prec)
    }

    pub fn abs_lower(&self, prec: u32) -> BigRational {
        sqrt_lower(&self.norm_sqr(), prec)
    }

    /// Rounds both parts to about `prec` significant bits (relative to the
    /// larger part); returns the rounded value and a bound on `|error|`.
    pub fn round(&self, prec: u32) -> (Self, BigRational) {
        let (re, e1) = round_rel(&self.re, prec);
        let (im, e2) = round_rel(&self.im, prec);
        (Self::new(re, im), e1 + e2)
    }
}

/// The closed disk `{ z : |z - center| <= radius }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBall {
    center: CRat,
    radius: BigRational,
}

/// Significant bits kept in radii; they only need to be upper bounds.
const RADIUS_BITS: u32 = 40;

impl ComplexBall {
    pub fn new(center: CRat, radius: BigRational) -> Self {
        assert!(!radius.is_negative(), "negative radius");
        Self { center, radius }
    }

    pub fn exact(center: CRat) -> Self {
        Self::new(center, BigRational::zero())
    }

    pub fn real(x: BigRational, radius: BigRational) -> Self {
        Self::new(CRat::real(x), radius)
    }

    pub fn zero() -> Self {
        Self::exact(CRat::zero())
    }

    pub fn center(&self) -> &CRat {
        &self.center
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn to_f64(&self) -> Complex64 {
        self.center.to_f64()
    }

    /// Rounds the centre to `prec` bits, absorbing the error in the radius.
    pub fn rounded(self, prec: u32) -> Self {
        let (center, err) = self.center.round(prec);
        let radius = round_up(&(self.radius + err), RADIUS_BITS);
        Self { center, radius }
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        Self::new(self.center.add(&o.center), &self.radius + &o.radius).rounded(prec)
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        Self::new(self.center.sub(&o.center), &self.radius + &o.radius).rounded(prec)
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        // |re| + |im| bounds the modulus without a square root.
        let a = round_up(&(self.center.re.abs() + self.center.im.abs()), RADIUS_BITS);
        let b = round_up(&(o.center.re.abs() + o.center.im.abs()), RADIUS_BITS);
        let r = &a * &o.radius + &b * &self.radius + &self.radius * &o.radius;
        Self::new(self.center.mul(&o.center), r).rounded(prec)
    }

    pub fn scale(&self, x: &BigRational, prec: u32) -> Self {
        Self::new(self.center.scale(x), &self.radius * x.abs()).rounded(prec)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.center.conj(), self.radius.clone())
    }

    /// `1 / z`; `None` if the disk may contain zero.
    pub fn recip(&self, prec: u32) -> Option<Self> {
        let m = self.center.abs_lower(prec);
        if m <= self.radius {
            return None;
        }
        // |1/z - 1/c| = |z - c| / (|z| |c|) <= r / ((|c| - r) |c|)
        let r = &self.radius / ((&m - &self.radius) * &m);
        let c = CRat::one().div(&self.center);
        Some(Self::new(c, r).rounded(prec))
    }

    pub fn pow(&self, mut e: u64, prec: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::exact(CRat::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, prec);
            }
        }
        acc
    }

    /// Upper bound of `|z|` over the disk.
    pub fn abs_upper(&self, prec: u32) -> BigRational {
        self.center.abs_upper(prec) + &self.radius
    }

    /// Lower bound of `|z|` over the disk (zero if the disk meets zero).
    pub fn abs_lower(&self, prec: u32) -> BigRational {
        let m = self.center.abs_lower(prec) - &self.radius;
        if m.is_negative() {
            BigRational::zero()
        } else {
            m
        }
    }

    /// Whether the disk contains `z`.
    pub fn contains(&self, z: &CRat) -> bool {
        self.center.sub(z).norm_sqr() <= &self.radius * &self.radius
    }

    /// Whether the two disks are disjoint.
    pub fn disjoint(&self, o: &Self) -> bool {
        let r = &self.radius + &o.radius;
        self.center.sub(&o.center).norm_sqr() > &r * &r
    }

    /// The integer nearest to the real part of the centre, with an upper
    /// bound on the distance from any point of the disk to it.
    pub fn nearest_integer(&self) -> (BigInt, BigRational) {
        let n = self.center.re.round();
        let dist = (&self.center.re - &n).abs() + self.center.im.abs() + &self.radius;
        (n.to_integer(), dist)
    }
}
