//! Sparse polynomials in `a1..a10` over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{ArithError, BigRat, GaussRat, ParamMonomial, NVARS};

/// A polynomial stored as terms in strictly decreasing monomial order with
/// no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(ParamMonomial, BigRat)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::term(ParamMonomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRat::from_int(n))
    }

    pub fn term(m: ParamMonomial, c: BigRat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    /// The parameter `a_k`, `1 <= k <= 10`.
    pub fn param(k: usize) -> Self {
        assert!((1..=NVARS).contains(&k), "parameter index {k} out of range");
        Self::term(ParamMonomial::var(k - 1), BigRat::one())
    }

    /// Collects arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(mut terms: Vec<(ParamMonomial, BigRat)>) -> Self {
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(ParamMonomial, BigRat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MultiPoly { terms: out }
    }

    pub fn terms(&self) -> &[(ParamMonomial, BigRat)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<BigRat> {
        match self.terms.as_slice() {
            [] => Some(BigRat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_monic(&self) -> bool {
        self.terms.first().is_some_and(|(_, c)| c.is_one())
    }

    /// The largest monomial and its coefficient, or `None` for zero.
    pub fn leading(&self) -> Option<(&ParamMonomial, &BigRat)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_term(&self) -> Result<(ParamMonomial, BigRat), ArithError> {
        self.leading()
            .map(|(m, c)| (*m, c.clone()))
            .ok_or(ArithError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&ParamMonomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn make_monic(&self) -> Result<Self, ArithError> {
        let (_, lc) = self.leading().ok_or(ArithError::ZeroPolynomial)?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        let inv = lc.inv()?;
        Ok(self.scale(&inv))
    }

    pub fn scale(&self, k: &BigRat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &ParamMonomial, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect(),
        }
    }

    /// `self + c * m * g`, the workhorse of reduction and elimination.
    pub fn add_scaled(&self, c: &BigRat, m: &ParamMonomial, g: &MultiPoly) -> Self {
        if c.is_zero() || g.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(t, k)| (t.mul(m), k * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let s = ca + &cb;
                        if !s.is_zero() {
                            out.push((*m, s));
                        }
                    }
                },
            }
        }
        MultiPoly { terms: out }
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(ParamMonomial, BigRat)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Builds a polynomial from terms already in strictly decreasing order with
    /// nonzero coefficients.
    pub(crate) fn from_descending_terms(terms: Vec<(ParamMonomial, BigRat)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MultiPoly { terms }
    }

    /// Evaluates at a point of `Q(i)^10`.
    pub fn evaluate(&self, point: &[GaussRat; NVARS]) -> GaussRat {
        let mut powers: Vec<Vec<GaussRat>> = point.iter().map(|x| vec![GaussRat::one(), x.clone()]).collect();
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut v = GaussRat::real(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = &mut powers[i];
                while p.len() <= e as usize {
                    let next = &p[p.len() - 1] * &point[i];
                    p.push(next);
                }
                v = &v * &p[e as usize];
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Substitutes rational values for the parameters marked `Some`, keeping
    /// the others symbolic.
    pub fn substitute(&self, values: &[Option<BigRat>; NVARS]) -> Self {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = *m.exponents();
            let mut coef = c.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if exps[i] > 0 {
                        coef = &coef * &v.pow(exps[i] as u32);
                        exps[i] = 0;
                    }
                }
            }
            if !coef.is_zero() {
                out.push((ParamMonomial::from_exponents(exps), coef));
            }
        }
        Self::from_terms(out)
    }

    /// Exact quotient `self / d`; fails unless the division leaves no remainder.
    pub fn exact_div(&self, d: &MultiPoly) -> Result<Self, ArithError> {
        let (dm, dc) = d.leading().ok_or(ArithError::DivisionByZero)?;
        let dc_inv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            let q = dm.quotient_of(rm).ok_or(ArithError::NotDivisible)?;
            let qc = rc * &dc_inv;
            rem = rem.add_scaled(&-&qc, &q, d);
            quot.push((q, qc));
        }
        Ok(MultiPoly { terms: quot })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_scaled(&BigRat::one(), &ParamMonomial::one(), rhs)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_scaled(&BigRat::from_int(-1), &ParamMonomial::one(), rhs)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, c);
        }
        let mut prods = Vec::with_capacity(small.len() * large.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                prods.push((m1.mul(m2), c1 * c2));
            }
        }
        MultiPoly::from_terms(prods)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Compares term lists from the leading term down: monomial first, then
/// coefficient. A polynomial that runs out of terms sorts first.
impl Ord for MultiPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        for (x, y) in self.terms.iter().zip(&other.terms) {
            let o = x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<BigRat> for MultiPoly {
    fn from(c: BigRat) -> Self {
        MultiPoly::constant(c)
    }
}

impl fmt::Display for MultiPoly {
    /// `a3^2 - a2*a4`, `-1/2*a5 + 3`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Recursive-descent parser for the polynomial text form.
///
/// ```text
/// expr   := ['+'|'-'] term (('+'|'-') term)*
/// term   := power (['*'] power)*
/// power  := atom ['^' int]
/// atom   := rational | 'a' int | 'a_' int | 'a_{' int '}' | '(' expr ')'
/// ```
struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn err(&self, msg: &str) -> ArithError {
        ArithError::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// Consumes a minus sign, accepting ASCII `-` and U+2212.
    fn eat_sign(&mut self) -> Option<bool> {
        match self.peek()? {
            b'+' => {
                self.pos += 1;
                Some(false)
            }
            b'-' => {
                self.pos += 1;
                Some(true)
            }
            _ if self.src[self.pos..].starts_with("\u{2212}".as_bytes()) => {
                self.pos += 3;
                Some(true)
            }
            _ => None,
        }
    }

    fn number(&mut self) -> Result<u64, ArithError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer too large"))
    }

    fn expr(&mut self) -> Result<MultiPoly, ArithError> {
        let mut acc = MultiPoly::zero();
        let mut neg = self.eat_sign().unwrap_or(false);
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            match self.eat_sign() {
                Some(n) => neg = n,
                None => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ArithError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'a' | b'(' | b'0'..=b'9') => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly, ArithError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ArithError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'a') => {
                self.pos += 1;
                let braced = if self.src.get(self.pos) == Some(&b'_') {
                    self.pos += 1;
                    if self.src.get(self.pos) == Some(&b'{') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    }
                } else {
                    false
                };
                let k = self.number()? as usize;
                if braced {
                    if self.peek() != Some(b'}') {
                        return Err(self.err("expected '}'"));
                    }
                    self.pos += 1;
                }
                if !(1..=NVARS).contains(&k) {
                    return Err(self.err("parameter index out of range"));
                }
                Ok(MultiPoly::param(k))
            }
            Some(b'0'..=b'9') => {
                let n = self.number()?;
                let mut c = BigRat::from(num_bigint::BigInt::from(n));
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.number()?;
                    if d == 0 {
                        return Err(ArithError::DivisionByZero);
                    }
                    c = c.checked_div(&BigRat::from(num_bigint::BigInt::from(d)))?;
                }
                Ok(MultiPoly::constant(c))
            }
            _ => Err(self.err("expected term")),
        }
    }
}

impl FromStr for MultiPoly {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = PolyParser { src: s.as_bytes(), pos: 0 };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(k: usize) -> MultiPoly {
        MultiPoly::param(k)
    }

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let f = &(&a(2) + &a(3)) * &(&a(2) - &a(3));
        assert_eq!(f, p("a2^2 - a3^2"));
        assert!((&f * &MultiPoly::zero()).is_zero());
    }

    #[test]
    fn case_one_generator() {
        let f = &(&a(4) + &MultiPoly::one()) * &a(4);
        assert_eq!(f.to_string(), "a4^2 + a4");
        assert_eq!(f, p("a_4(a_4+1)"));
    }

    #[test]
    fn leading_terms() {
        let (m, _) = p("a2^2 - a3").leading_term().unwrap();
        assert_eq!(m.to_string(), "a2^2");
        let f = p("-a2*a4 + a3^2");
        assert_eq!(f.leading_term().unwrap().0.to_string(), "a3^2");
        assert_eq!(f.to_string(), "a3^2 - a2*a4");
        assert_eq!(p("3*a5").make_monic().unwrap(), a(5));
        assert_eq!(MultiPoly::zero().leading_term(), Err(ArithError::ZeroPolynomial));
        assert!(MultiPoly::zero().make_monic().is_err());
    }

    #[test]
    fn evaluation() {
        let i = GaussRat::i();
        let mut pt: [GaussRat; NVARS] = Default::default();
        pt[0] = GaussRat::one();
        pt[4] = i.clone();
        pt[7] = GaussRat::from_int(-1);
        pt[9] = -i;
        let f = p("a10^2 - a5*a8 + a10 - a8");
        assert!(f.evaluate(&pt).is_zero());
        assert_eq!(MultiPoly::from_int(7).evaluate(&pt), GaussRat::from_int(7));

        let mut q: [GaussRat; NVARS] = Default::default();
        q[3] = GaussRat::from_int(-1);
        assert!(p("a4*(a4+1)").evaluate(&q).is_zero());
    }

    #[test]
    fn substitution_partial() {
        let f = p("a1*a2 + a1^2 + a3");
        let mut vals: [Option<BigRat>; NVARS] = Default::default();
        vals[0] = Some(BigRat::from_int(2));
        assert_eq!(f.substitute(&vals), p("2*a2 + 4 + a3"));
    }

    #[test]
    fn exact_division() {
        let f = p("(a2 + 3*a5 - 1)*(a4^2 - a7)");
        assert_eq!(f.exact_div(&p("a4^2 - a7")).unwrap(), p("a2 + 3*a5 - 1"));
        assert_eq!(p("a2 + 1").exact_div(&a(2)), Err(ArithError::NotDivisible));
    }

    #[test]
    fn parse_errors() {
        assert!("a11".parse::<MultiPoly>().is_err());
        assert!("a1 +".parse::<MultiPoly>().is_err());
        assert!("(a1".parse::<MultiPoly>().is_err());
        assert_eq!(p("a1 \u{2212} a2"), &a(1) - &a(2));
        assert_eq!(p("a_{10}"), a(10));
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(
            (proptest::array::uniform10(0u8..3), -5i64..5),
            0..6,
        )
        .prop_map(|ts| {
            MultiPoly::from_terms(
                ts.into_iter()
                    .map(|(e, c)| (ParamMonomial::from_exponents(e), BigRat::from_int(c)))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert!((&f + &(-&f)).is_zero());
            prop_assert!(f.terms().windows(2).all(|w| w[0].0 > w[1].0));
        }

        #[test]
        fn display_round_trips(f in arb_poly()) {
            prop_assert_eq!(f.to_string().parse::<MultiPoly>().unwrap(), f);
        }

        #[test]
        fn evaluation_is_a_homomorphism(f in arb_poly(), g in arb_poly(), pts in proptest::array::uniform10(-3i64..3)) {
            let pt: [GaussRat; NVARS] = pts.map(GaussRat::from_int);
            prop_assert_eq!((&f * &g).evaluate(&pt), &f.evaluate(&pt) * &g.evaluate(&pt));
            prop_assert_eq!((&f + &g).evaluate(&pt), &f.evaluate(&pt) + &g.evaluate(&pt));
        }
    }
}
