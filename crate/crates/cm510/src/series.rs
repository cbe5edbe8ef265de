//! Truncated formal power series over the rationals.
//!
//! Everything else in the crate computes over Z = Q[[t]] truncated at a fixed
//! precision: a series is a vector of exact rational coefficients
//! `[c_0, ..., c_{prec-1}]` representing `c_0 + c_1 t + ... + c_{prec-1} t^{prec-1}`.
//! All arithmetic is exact; there is no floating point anywhere.
//!
//! Provided here:
//! * [`Scalar`] — exact rational coefficients (arbitrary precision),
//! * [`PowerSeries`] — the truncated series ring,
//! * unit inversion, exact division by t, divisibility tests.
//!
//! Two series interoperate only at equal precision; the arithmetic operators
//! panic on mismatch, which is always a caller bug. Fallible operations
//! (inversion of a non-unit, division of a non-multiple of t) return errors.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar. Displayed as `p/q` (or `p` when `q = 1`).
pub type Scalar = BigRational;

/// Shorthand for an integer scalar.
pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`. Panics if `d = 0`.
pub fn scalar_ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a scalar from `p` or `p/q` (optional sign, arbitrary size).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let mut parts = text.splitn(2, '/');
    let numer = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad rational {text:?}")))?;
    let denom = match parts.next() {
        None => BigInt::one(),
        Some(d) => d
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational {text:?}")))?,
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

/// A formal power series truncated at a fixed precision `prec >= 1`:
/// the coefficients of `t^0 .. t^{prec-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Scalar>,
}

impl PowerSeries {
    /// The zero series at the given precision.
    pub fn zero(prec: usize) -> Self {
        assert!(prec >= 1, "precision must be at least 1");
        PowerSeries {
            coeffs: vec![Scalar::zero(); prec],
        }
    }

    /// The constant series `1`.
    pub fn one(prec: usize) -> Self {
        Self::constant(Scalar::one(), prec)
    }

    /// The series `t`. Requires `prec >= 2` so the coefficient is visible.
    pub fn t(prec: usize) -> Self {
        assert!(prec >= 2, "t needs precision at least 2");
        let mut s = Self::zero(prec);
        s.coeffs[1] = Scalar::one();
        s
    }

    /// The constant series `c`.
    pub fn constant(c: Scalar, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `c * t^deg`. Panics unless `deg < prec`.
    pub fn monomial(c: Scalar, deg: usize, prec: usize) -> Self {
        assert!(deg < prec, "monomial degree {deg} out of range for precision {prec}");
        let mut s = Self::zero(prec);
        s.coeffs[deg] = c;
        s
    }

    /// Builds a series from its coefficient vector; the precision is the length.
    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        PowerSeries { coeffs }
    }

    /// Convenience constructor from small integers, mostly for tests:
    /// `from_ints(&[1, -1], 4)` is `1 - t` at precision 4.
    pub fn from_ints(ints: &[i64], prec: usize) -> Self {
        assert!(ints.len() <= prec, "too many coefficients for precision {prec}");
        let mut s = Self::zero(prec);
        for (i, &n) in ints.iter().enumerate() {
            s.coeffs[i] = scalar(n);
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `t^i`. Panics if `i >= prec`.
    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// A series is a unit of the truncated ring iff its constant term is nonzero.
    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Whether `t` divides the series, i.e. the constant term vanishes.
    pub fn divisible_by_t(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// Exact division by `t`: shifts coefficients down one degree and pads the
    /// top with zero. Errors if the constant term is nonzero.
    pub fn div_by_t(&self) -> Result<Self> {
        if !self.divisible_by_t() {
            return Err(Error::NotDivisibleByT(self.coeffs[0].to_string()));
        }
        let mut coeffs: Vec<Scalar> = self.coeffs[1..].to_vec();
        coeffs.push(Scalar::zero());
        Ok(PowerSeries { coeffs })
    }

    /// Multiplication by `t`: shifts coefficients up one degree, dropping the top.
    pub fn mul_by_t(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.prec());
        coeffs.push(Scalar::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.prec() - 1]);
        PowerSeries { coeffs }
    }

    /// Multiplies every coefficient by the scalar `c`.
    pub fn scalar_mul(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.prec());
        }
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse of a unit, solved coefficient by coefficient:
    /// `c_0 = 1/a_0`, then `c_m = -(sum_{j=1..m} a_j c_{m-j}) / a_0`.
    pub fn invert_unit(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let prec = self.prec();
        let a0_inv = self.coeffs[0].recip();
        let mut inv = vec![Scalar::zero(); prec];
        inv[0] = a0_inv.clone();
        for m in 1..prec {
            let mut acc = Scalar::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() && !inv[m - j].is_zero() {
                    acc += &self.coeffs[j] * &inv[m - j];
                }
            }
            inv[m] = -acc * &a0_inv;
        }
        Ok(PowerSeries { coeffs: inv })
    }

    /// Truncates to a smaller precision. Panics if `new_prec` is larger.
    pub fn truncate(&self, new_prec: usize) -> Self {
        assert!(
            (1..=self.prec()).contains(&new_prec),
            "cannot truncate precision {} to {}",
            self.prec(),
            new_prec
        );
        PowerSeries {
            coeffs: self.coeffs[..new_prec].to_vec(),
        }
    }

    /// Re-reads the series as a polynomial at a higher precision by padding
    /// with zeros. This is exact for data that is polynomial by construction
    /// (e.g. coefficient tuples loaded from files).
    pub fn lift(&self, new_prec: usize) -> Self {
        assert!(
            new_prec >= self.prec(),
            "lift target {} below current precision {}",
            new_prec,
            self.prec()
        );
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(new_prec, Scalar::zero());
        PowerSeries { coeffs }
    }

    /// Serializes to the external form: coefficient strings, ascending degree.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Parses the external form. Fewer than `prec` entries are padded with
    /// zeros; more than `prec` is an error.
    pub fn parse(strings: &[String], prec: usize) -> Result<Self> {
        if strings.len() > prec {
            return Err(Error::Parse(format!(
                "series has {} coefficients but precision is {}",
                strings.len(),
                prec
            )));
        }
        let mut s = Self::zero(prec);
        for (i, text) in strings.iter().enumerate() {
            s.coeffs[i] = parse_scalar(text)?;
        }
        Ok(s)
    }

    fn assert_same_prec(&self, other: &Self) {
        assert_eq!(
            self.prec(),
            other.prec(),
            "series precision mismatch: {} vs {}",
            self.prec(),
            other.prec()
        );
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        self.assert_same_prec(rhs);
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self.assert_same_prec(rhs);
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    /// Truncated Cauchy product.
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        self.assert_same_prec(rhs);
        let prec = self.prec();
        let mut out = vec![Scalar::zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(prec - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: out }
    }
}

impl fmt::Display for PowerSeries {
    /// Human form, e.g. `1 - 1/2*t + t^3 + O(t^4)`. Zero prints as `0 + O(t^p)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c < &Scalar::zero() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if wrote {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            let coeff_part = if mag.is_one() && i > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            let var_part = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            match (coeff_part.is_empty(), var_part.is_empty()) {
                (true, _) => write!(f, "{var_part}")?,
                (false, true) => write!(f, "{coeff_part}")?,
                (false, false) => write!(f, "{coeff_part}*{var_part}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.prec())
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
