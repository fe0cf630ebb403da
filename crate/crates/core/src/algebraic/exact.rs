//! Small exact-rational utilities: directed rounding to dyadics, certified
//! square-root bounds, integer polynomials and decimal conversion.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << (e as usize))
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

/// Approximate `floor(log2 |x|)`, accurate to within one. `x` must be
/// non-zero.
pub fn log2_approx(x: &BigRational) -> i64 {
    x.numer().bits() as i64 - x.denom().bits() as i64
}

/// `x` rounded to the nearest multiple of `2^-scale`, together with an upper
/// bound on the rounding error.
pub fn round_to_scale(x: &BigRational, scale: i64) -> (BigRational, BigRational) {
    let scaled = x * pow2(scale);
    let rounded = scaled.round();
    if rounded == scaled {
        return (x.clone(), BigRational::zero());
    }
    (rounded * pow2(-scale), pow2(-scale - 1))
}

/// Rounds `x` to about `prec` significant bits; returns the rounded value
/// and an error bound.
pub fn round_rel(x: &BigRational, prec: u32) -> (BigRational, BigRational) {
    if x.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    round_to_scale(x, prec as i64 - log2_approx(x))
}

/// An upper bound of `x` with about `prec` significant bits.
pub fn round_up(x: &BigRational, prec: u32) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let scale = prec as i64 - log2_approx(x);
    (x * pow2(scale)).ceil() * pow2(-scale)
}

/// A lower bound of `x` with about `prec` significant bits.
pub fn round_down(x: &BigRational, prec: u32) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let scale = prec as i64 - log2_approx(x);
    (x * pow2(scale)).floor() * pow2(-scale)
}

fn sqrt_floor_scaled(q: &BigRational, bits: i64, ceil_input: bool) -> BigInt {
    // sqrt(q) * 2^bits = sqrt(q * 2^(2 bits))
    let scaled = q * pow2(2 * bits);
    let n = if ceil_input {
        scaled.ceil()
    } else {
        scaled.floor()
    };
    let n = n.to_integer().to_biguint().unwrap_or_default();
    BigInt::from(n.sqrt())
}

/// Certified upper bound on `sqrt(q)` for `q >= 0`, with about `prec`
/// significant bits.
pub fn sqrt_upper(q: &BigRational, prec: u32) -> BigRational {
    assert!(!q.is_negative(), "square root of a negative rational");
    if q.is_zero() {
        return BigRational::zero();
    }
    let bits = prec as i64 - log2_approx(q) / 2;
    let s = sqrt_floor_scaled(q, bits, true);
    let candidate = BigRational::new(s, BigInt::one()) * pow2(-bits);
    if &(&candidate * &candidate) >= q {
        candidate
    } else {
        candidate + pow2(-bits)
    }
}

/// Certified lower bound on `sqrt(q)` for `q >= 0`.
pub fn sqrt_lower(q: &BigRational, prec: u32) -> BigRational {
    assert!(!q.is_negative(), "square root of a negative rational");
    if q.is_zero() {
        return BigRational::zero();
    }
    let bits = prec as i64 - log2_approx(q) / 2;
    let s = sqrt_floor_scaled(q, bits, false);
    BigRational::new(s, BigInt::one()) * pow2(-bits)
}

/// Nearest `f64` not below `x`.
pub fn to_f64_up(x: &BigRational) -> f64 {
    let f = x.to_f64().unwrap_or(f64::INFINITY);
    match BigRational::from_float(f) {
        Some(r) if &r >= x => f,
        _ => f.next_up(),
    }
}

/// Nearest `f64` not above `x`.
pub fn to_f64_down(x: &BigRational) -> f64 {
    let f = x.to_f64().unwrap_or(f64::NEG_INFINITY);
    match BigRational::from_float(f) {
        Some(r) if &r <= x => f,
        _ => f.next_down(),
    }
}

/// Parses decimal notation such as `"0.25"`, `"-3"`, `"1e-40"` or
/// `"2.5E+3"` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let err = || Error::ParseDecimal(s.to_string());
    let t = s.trim();
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let all: String = format!("{int_part}{frac_part}");
    if !all.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let m = BigInt::parse_bytes(all.as_bytes(), 10).ok_or_else(err)?;
    let e = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut value = if e >= 0 {
        BigRational::from_integer(m * num_traits::pow(ten, e as usize))
    } else {
        BigRational::new(m, num_traits::pow(ten, (-e) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

/// Directed decimal rendering of `x` with `digits` fractional digits:
/// rounded towards negative infinity when `up` is false, towards positive
/// infinity otherwise.
pub fn to_decimal(x: &BigRational, digits: usize, up: bool) -> String {
    let scale = BigRational::from_integer(num_traits::pow(BigInt::from(10), digits));
    let scaled = x * &scale;
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (ip, fp) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        while p.coeffs.len() > 1 && p.coeffs.last().is_some_and(Zero::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `X^k + X - 1`.
    pub fn p_k(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] -= 1;
        c[1] += 1;
        c[k] += 1;
        Self::new(c)
    }

    /// `X^k - X^{k-1} - 1`.
    pub fn q_k(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] -= 1;
        c[k - 1] -= 1;
        c[k] += 1;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Sign of `p(num / den)` for `den > 0`, in exact integer arithmetic:
    /// the sign of `sum c_i num^i den^(d-i)`.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> Ordering {
        debug_assert!(den.is_positive());
        let mut acc = BigInt::zero();
        // Horner on the homogenised form.
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc.sign().cmp_zero()
    }

    pub fn sign_at_rational(&self, x: &BigRational) -> Ordering {
        self.sign_at(x.numer(), x.denom())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

trait SignExt {
    fn cmp_zero(self) -> Ordering;
}

impl SignExt for Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(first && i == 0) {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if mag.is_one() && i > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coef}X")?,
                _ => write!(f, "{coef}X^{i}")?,
            }
        }
        Ok(())
    }
}

/// `floor(num / den)` for big integers with `den > 0`.
pub fn floor_div(num: &BigInt, den: &BigInt) -> BigInt {
    num.div_floor(den)
}

pub fn biguint_to_rational(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}
