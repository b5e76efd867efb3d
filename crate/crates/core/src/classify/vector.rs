use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::ClassifyError;
use crate::exactalg::{GaussRat, NVARS};
use crate::opcompose::{name_arguments, parse_element, ElementParseError};
use crate::opmonoms::{format_monomial, Basis, OperatorMonomial};

/// Coefficients `a1..a10` of an identity of degree 2 and multiplicity 3,
/// scaled so that the first nonzero entry is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoefficientVector {
    values: [GaussRat; NVARS],
}

impl CoefficientVector {
    pub fn new(values: [GaussRat; NVARS]) -> Result<Self, ClassifyError> {
        match values.iter().find(|v| !v.is_zero()) {
            None => Err(ClassifyError::ZeroVector),
            Some(v) if !v.is_one() => Err(ClassifyError::NotNormalized),
            Some(_) => Ok(CoefficientVector { values }),
        }
    }

    /// Divides by the first nonzero entry.
    pub fn normalize(mut values: [GaussRat; NVARS]) -> Result<Self, ClassifyError> {
        let lead = values.iter().find(|v| !v.is_zero()).ok_or(ClassifyError::ZeroVector)?.clone();
        let inv = lead.inv().map_err(|_| ClassifyError::ZeroVector)?;
        for v in values.iter_mut() {
            *v = &*v * &inv;
        }
        Self::new(values)
    }

    pub fn from_ints(values: [i64; NVARS]) -> Result<Self, ClassifyError> {
        Self::new(values.map(GaussRat::from_int))
    }

    pub fn values(&self) -> &[GaussRat; NVARS] {
        &self.values
    }

    /// 1-based index of the leading 1.
    pub fn leading_index(&self) -> usize {
        self.values.iter().position(|v| !v.is_zero()).expect("nonzero by construction") + 1
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(GaussRat::is_real)
    }

    /// Comma-separated coordinates, `I` for the imaginary unit.
    pub fn to_list(&self) -> String {
        self.values.iter().map(|v| v.to_string().replace(' ', "")).collect::<Vec<_>>().join(",")
    }

    /// The identity as an equation in `x, y`. When every coefficient after the
    /// leading one is `-1` or `0` the leading term is isolated on the left,
    /// otherwise the whole sum is set to zero.
    pub fn render_equation(&self) -> String {
        let basis = Basis::new(2, 3).expect("M(2,3)");
        let terms: Vec<(String, &GaussRat)> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (render_monomial(&basis.monomials()[k]), c))
            .collect();
        let minus_one = GaussRat::from_int(-1);
        if terms[1..].iter().all(|(_, c)| **c == minus_one) {
            let rhs: Vec<&str> = terms[1..].iter().map(|(m, _)| m.as_str()).collect();
            let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
            return format!("{} = {rhs}", terms[0].0);
        }
        let mut out = String::new();
        for (n, (m, c)) in terms.iter().enumerate() {
            let (neg, mag) = split_sign(c);
            if n == 0 {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&mag);
            out.push_str(m);
        }
        out.push_str(" = 0");
        out
    }
}

/// Sign and coefficient prefix for a term, `""` for magnitude one.
fn split_sign(c: &GaussRat) -> (bool, String) {
    let neg = if c.re.is_zero() { c.im.is_negative() } else { c.re.is_negative() };
    let mag = if neg { -c } else { c.clone() };
    let text = if mag.is_one() {
        String::new()
    } else if mag == GaussRat::i() {
        "i ".into()
    } else if mag.is_real() || mag.re.is_zero() {
        format!("{} ", mag.to_string().replace('I', "i"))
    } else {
        format!("({}) ", mag.to_string().replace('I', "i"))
    };
    (neg, text)
}

/// `format_monomial` with the argument slots named `x, y, z, ...`.
pub fn render_monomial(m: &OperatorMonomial) -> String {
    name_arguments(&format_monomial(m))
}

impl fmt::Display for CoefficientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_list().replace(',', ", "))
    }
}

impl Serialize for CoefficientVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_list())
    }
}

/// Accepts either ten comma-separated Gaussian rationals or an equation in
/// `x, y` such as `L^3(xy) = L^3(x)y + xL^3(y)`. The result is normalized.
impl FromStr for CoefficientVector {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.contains(',') {
            let parts: Vec<&str> = s.split(',').map(str::trim).collect();
            if parts.len() != NVARS {
                return Err(ClassifyError::Parse(format!("expected {NVARS} coordinates, found {}", parts.len())));
            }
            let mut values: [GaussRat; NVARS] = Default::default();
            for (v, p) in values.iter_mut().zip(&parts) {
                *v = p.parse().map_err(|e| ClassifyError::Parse(format!("coordinate '{p}': {e}")))?;
            }
            return Self::normalize(values);
        }
        parse_equation(s)
    }
}

fn parse_equation(s: &str) -> Result<CoefficientVector, ClassifyError> {
    let e = parse_element(s).map_err(|e| match e {
        ElementParseError::Empty => ClassifyError::ZeroVector,
        other => ClassifyError::Parse(other.to_string()),
    })?;
    if (e.degree(), e.multiplicity()) != (2, 3) {
        return Err(ClassifyError::Parse(format!(
            "identity has degree {} and multiplicity {}, expected 2 and 3",
            e.degree(),
            e.multiplicity()
        )));
    }
    CoefficientVector::normalize(std::array::from_fn(|j| e.coeff(j + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> CoefficientVector {
        s.parse().unwrap()
    }

    #[test]
    fn normalization() {
        let w = CoefficientVector::normalize([0, 2, 0, -4, 0, 0, 0, 0, 0, 0].map(GaussRat::from_int)).unwrap();
        assert_eq!(w, CoefficientVector::from_ints([0, 1, 0, -2, 0, 0, 0, 0, 0, 0]).unwrap());
        assert_eq!(w.leading_index(), 2);
        assert_eq!(CoefficientVector::from_ints([0; 10]), Err(ClassifyError::ZeroVector));
        assert_eq!(CoefficientVector::from_ints([2, 0, 0, 0, 0, 0, 0, 0, 0, 0]), Err(ClassifyError::NotNormalized));
    }

    #[test]
    fn list_form() {
        let w = v("1,0,0,0,I,0,0,-1,0,-I");
        assert_eq!(w.to_list(), "1,0,0,0,I,0,0,-1,0,-I");
        assert_eq!(v(&w.to_list()), w);
        assert!(!w.is_real());
        assert!(matches!("1,0".parse::<CoefficientVector>(), Err(ClassifyError::Parse(_))));
    }

    #[test]
    fn equations_render_and_parse() {
        let d = CoefficientVector::from_ints([1, 0, 0, -1, 0, 0, 0, 0, 0, -1]).unwrap();
        assert_eq!(d.render_equation(), "L^3(xy) = L^3(x)y + xL^3(y)");
        assert_eq!(v("L^3(xy) = L^3(x)y + xL^3(y)"), d);
        assert_eq!(v("L^3(xy) - L^3(x)y - xL^3(y) = 0"), d);
        let e10 = CoefficientVector::from_ints([0, 0, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(e10.render_equation(), "xL^3(y) = 0");
        let w = v("1,0,0,0,I,0,0,-1,0,-I");
        assert_eq!(w.render_equation(), "L^3(xy) + i L^2(xL(y)) - L(xL^2(y)) - i xL^3(y) = 0");
        assert_eq!(v(&w.render_equation()), w);
        assert_eq!(v("2L^3(xy) + 2*I*L^2(xL(y)) - 2 L(xL^2(y)) - (2I) xL^3(y)"), w);
        let q = v("1,1/2,0,0,0,0,0,0,0,1/2+I");
        assert_eq!(v(&q.render_equation()), q);
    }

    #[test]
    fn equation_errors() {
        assert!(matches!("L^3(yx) = 0".parse::<CoefficientVector>(), Err(ClassifyError::Parse(_))));
        assert!(matches!("L^2(xy) = 0".parse::<CoefficientVector>(), Err(ClassifyError::Parse(_))));
        assert!(matches!("L^3(xy) - L^3(xy) = 0".parse::<CoefficientVector>(), Err(ClassifyError::ZeroVector)));
        assert!(matches!(" = 0".parse::<CoefficientVector>(), Err(ClassifyError::ZeroVector)));
    }
}
