//! Arbitrary-precision Gaussian rationals `a + b*i`.
//!
//! Both components are reduced [`BigRational`]s, so equality is structural
//! and all arithmetic is exact. This is the prime coefficient field of the
//! kernel: every other scalar ring embeds it.

use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numeric::Complex64;

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i128) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num/den`, exact. Panics if `den == 0`.
    pub fn ratio(num: i128, den: i128) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `(num/den)*i`, exact. Panics if `den == 0`.
    pub fn ratio_i(num: i128, den: i128) -> Self {
        Self::new(
            BigRational::zero(),
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero() && !self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.re.clone(), -self.im.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    pub fn scale_int(&self, n: i128) -> Self {
        let f = BigRational::from_integer(BigInt::from(n));
        Self::new(&self.re * &f, &self.im * &f)
    }

    /// Lossy conversion for the numeric oracles.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().expect("rational out of f64 range"),
            self.im.to_f64().expect("rational out of f64 range"),
        )
    }

    /// Magnitude bound used when picking display forms: true if `re`/`im`
    /// are both integers.
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical standalone form: `0`, `3`, `-3/8`, `i`, `-i`, `2*i`, `(1/2)*i`,
/// `1/2+3/4*i`, `1/2-i`. See [`crate::text`] for the grammar.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_standalone())
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    use alloc::string::ToString;
    if r.is_integer() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Imaginary part rendered without sign: `i`, `2*i`, `1/2*i`.
fn fmt_imag_abs(im: &BigRational) -> String {
    let a = im.abs();
    if a.is_one() {
        String::from("i")
    } else {
        alloc::format!("{}*i", fmt_ratio(&a))
    }
}

impl GaussianRational {
    /// Standalone rendering (no enclosing product context).
    pub fn display_standalone(&self) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        if self.im.is_zero() {
            return fmt_ratio(&self.re);
        }
        if self.re.is_zero() {
            let s = fmt_imag_abs(&self.im);
            return if self.im.is_negative() {
                alloc::format!("-{s}")
            } else {
                s
            };
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        alloc::format!("{}{}{}", fmt_ratio(&self.re), sign, fmt_imag_abs(&self.im))
    }

    /// Rendering as the leading factor of a product term, following the
    /// magnitude `m` (the coefficient with any overall sign removed by the
    /// caller). Returns `None` when the factor should be omitted (unit).
    pub(crate) fn display_product_factor(m: &Self) -> Option<String> {
        debug_assert!(!m.is_zero());
        if m.is_one() {
            return None;
        }
        if m.im.is_zero() {
            return Some(if m.re.is_integer() {
                fmt_ratio(&m.re)
            } else {
                alloc::format!("({})", fmt_ratio(&m.re))
            });
        }
        if m.re.is_zero() {
            if m.im.is_one() {
                return Some(String::from("i"));
            }
            return Some(if m.im.is_integer() {
                alloc::format!("{}*i", fmt_ratio(&m.im))
            } else {
                alloc::format!("({})*i", fmt_ratio(&m.im))
            });
        }
        Some(alloc::format!("({})", m.display_standalone()))
    }

    /// LaTeX form of the magnitude as a product prefactor (`\frac{1}{2}i`),
    /// `None` when the factor is a unit. Mirrors
    /// [`Self::display_product_factor`].
    pub fn latex_product_factor(m: &Self) -> Option<String> {
        fn ratio(r: &BigRational) -> String {
            if r.is_integer() {
                use alloc::string::ToString;
                r.numer().to_string()
            } else {
                alloc::format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
            }
        }
        debug_assert!(!m.is_zero());
        if m.is_one() {
            return None;
        }
        if m.im.is_zero() {
            return Some(ratio(&m.re));
        }
        if m.re.is_zero() {
            return Some(if m.im.is_one() {
                String::from("i")
            } else {
                alloc::format!("{}i", ratio(&m.im))
            });
        }
        let sign = if m.im.is_negative() { '-' } else { '+' };
        let im_abs = m.im.abs();
        let im_part = if im_abs.is_one() {
            String::from("i")
        } else {
            alloc::format!("{}i", ratio(&im_abs))
        };
        Some(alloc::format!(
            "\\left({}{}{}\\right)",
            ratio(&m.re),
            sign,
            im_part
        ))
    }

    /// Splits off an overall sign for sum rendering: pure-real and
    /// pure-imaginary values yield their sign and absolute value; mixed
    /// values are kept whole with a positive join.
    pub fn sign_split(&self) -> (bool, Self) {
        if self.im.is_zero() {
            if self.re.is_negative() {
                return (true, self.neg());
            }
        } else if self.re.is_zero() && self.im.is_negative() {
            return (true, self.neg());
        }
        (false, self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let half = GaussianRational::ratio(1, 2);
        let i = GaussianRational::i();
        assert_eq!(half.mul(&i), GaussianRational::ratio_i(1, 2));
        assert_eq!(i.mul(&i), GaussianRational::from_int(-1));
        let z = GaussianRational::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-3), BigInt::from(4)),
        );
        let w = z.inv().unwrap();
        assert!(z.mul(&w).is_one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        use alloc::string::ToString;
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::ratio(-3, 8).to_string(), "-3/8");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!(GaussianRational::ratio_i(-1, 1).to_string(), "-i");
        assert_eq!(GaussianRational::ratio_i(1, 2).to_string(), "1/2*i");
        let z = GaussianRational::ratio(1, 2).add(&GaussianRational::ratio_i(-3, 4));
        assert_eq!(z.to_string(), "1/2-3/4*i");
    }
}
