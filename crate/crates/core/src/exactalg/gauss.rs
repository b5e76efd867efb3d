//! Gaussian rationals `re + im*I`, the field in which parameter points live.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{ArithError, BigRat};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRat,
    pub im: BigRat,
}

impl GaussRat {
    pub fn new(re: BigRat, im: BigRat) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        Self::real(BigRat::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat::new(BigRat::zero(), BigRat::one())
    }

    pub fn real(re: BigRat) -> Self {
        GaussRat::new(re, BigRat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRat::from_int(n))
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

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> BigRat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        let n = self.norm().inv()?;
        Ok(GaussRat::new(&self.re * &n, -&(&self.im * &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, k: &BigRat) -> Self {
        GaussRat::new(&self.re * k, &self.im * k)
    }
}

impl From<BigRat> for GaussRat {
    fn from(r: BigRat) -> Self {
        GaussRat::real(r)
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::real(&self.re * &rhs.re);
        }
        GaussRat::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

impl fmt::Display for GaussRat {
    /// Prints `re`, `im*I`, or `re + im*I` (with `-` for negative parts).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_abs = self.im.abs();
        let im_txt = if im_abs.is_one() {
            "I".to_string()
        } else {
            format!("{im_abs}*I")
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{im_txt}")
            } else {
                write!(f, "{im_txt}")
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {im_txt}", self.re)
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussRat {
    type Err = ArithError;

    /// Accepts sums of rational terms and imaginary terms such as
    /// `-1`, `I`, `-i`, `2/3*I`, `1/2 - 3/4*I`, `1+I`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ArithError::Parse("empty Gaussian rational".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (idx, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && idx > start {
                terms.push(&compact[start..idx]);
                start = idx;
            }
        }
        terms.push(&compact[start..]);

        let mut acc = GaussRat::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let imaginary = body.ends_with('I') || body.ends_with('i');
            let value = if imaginary {
                let mag = body[..body.len() - 1].trim_end_matches('*');
                let mag = if mag.is_empty() {
                    BigRat::one()
                } else {
                    mag.parse::<BigRat>()?
                };
                GaussRat::new(BigRat::zero(), mag)
            } else {
                GaussRat::real(body.parse::<BigRat>()?)
            };
            acc = if neg { &acc - &value } else { &acc + &value };
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::from_int(-1));
    }

    #[test]
    fn display_and_parse() {
        let z = GaussRat::new(BigRat::new(1, 2).unwrap(), BigRat::new(-3, 4).unwrap());
        assert_eq!(z.to_string(), "1/2 - 3/4*I");
        assert_eq!(z.to_string().parse::<GaussRat>().unwrap(), z);
        assert_eq!("-I".parse::<GaussRat>().unwrap(), -GaussRat::i());
        assert_eq!("i".parse::<GaussRat>().unwrap(), GaussRat::i());
        assert_eq!("1+I".parse::<GaussRat>().unwrap().to_string(), "1 + I");
        assert!("".parse::<GaussRat>().is_err());
        assert!("1+x".parse::<GaussRat>().is_err());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(GaussRat::zero().inv().is_err());
    }

    fn arb() -> impl Strategy<Value = GaussRat> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| {
            GaussRat::new(BigRat::new(a, b).unwrap(), BigRat::new(c, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
