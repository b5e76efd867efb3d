//! Power products in the ten parameters `a1..a10`.

use std::cmp::Ordering;
use std::fmt;

/// Number of parameters of the general degree-2, multiplicity-3 identity.
pub const NVARS: usize = 10;

/// A power product `a1^e1 * ... * a10^e10`, with its total degree cached.
///
/// Ordered graded first; equal degrees are compared reverse-lexicographically
/// starting from `a1`, the smallest variable, so `a1 ≺ a2 ≺ ... ≺ a10`
/// and, for example, `a2*a4 ≺ a3^2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ParamMonomial {
    deg: u16,
    exps: [u8; NVARS],
}

impl ParamMonomial {
    pub const fn one() -> Self {
        ParamMonomial { deg: 0, exps: [0; NVARS] }
    }

    pub fn from_exponents(exps: [u8; NVARS]) -> Self {
        let deg = exps.iter().map(|&e| e as u16).sum();
        ParamMonomial { deg, exps }
    }

    /// The variable `a_{index+1}` (zero-based `index`).
    pub fn var(index: usize) -> Self {
        let mut exps = [0; NVARS];
        exps[index] = 1;
        ParamMonomial { deg: 1, exps }
    }

    pub fn exponents(&self) -> &[u8; NVARS] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u8 {
        self.exps[index]
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_add(*o).expect("parameter exponent overflow");
        }
        ParamMonomial { deg: self.deg + other.deg, exps }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps;
        for (e, s) in exps.iter_mut().zip(self.exps.iter()) {
            *e -= s;
        }
        Some(ParamMonomial { deg: other.deg - self.deg, exps })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = (*e).max(*o);
        }
        Self::from_exponents(exps)
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for ParamMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for (a, b) in self.exps.iter().zip(other.exps.iter()) {
                if a != b {
                    // more of a smaller variable makes the monomial smaller
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for ParamMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "a{}", i + 1)?;
            } else {
                write!(f, "a{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(pairs: &[(usize, u8)]) -> ParamMonomial {
        let mut e = [0; NVARS];
        for &(v, k) in pairs {
            e[v - 1] = k;
        }
        ParamMonomial::from_exponents(e)
    }

    /// Independent comparator: pick the larger of two equal-degree monomials by
    /// dividing out their gcd and asking which residue contains the smallest
    /// variable (that one loses).
    fn brute_cmp(a: &ParamMonomial, b: &ParamMonomial) -> Ordering {
        if a.degree() != b.degree() {
            return a.degree().cmp(&b.degree());
        }
        let g = {
            ParamMonomial::from_exponents(std::array::from_fn(|i| a.exponent(i).min(b.exponent(i))))
        };
        let ra = g.quotient_of(a).unwrap();
        let rb = g.quotient_of(b).unwrap();
        let lowest = |r: &ParamMonomial| (0..NVARS).find(|&i| r.exponent(i) > 0);
        match (lowest(&ra), lowest(&rb)) {
            (None, None) => Ordering::Equal,
            (Some(x), Some(y)) => x.cmp(&y),
            _ => unreachable!("equal degrees"),
        }
    }

    #[test]
    fn degree_two_tie_break() {
        // a3^2 outranks a2*a4
        assert!(m(&[(3, 2)]) > m(&[(2, 1), (4, 1)]));
        assert!(m(&[(2, 2)]) > m(&[(5, 1)]));
        assert!(m(&[(10, 1)]) > m(&[(9, 1)]));

        let mut all = Vec::new();
        for i in 0..NVARS {
            for j in i..NVARS {
                all.push(ParamMonomial::var(i).mul(&ParamMonomial::var(j)));
            }
        }
        for x in &all {
            for y in &all {
                assert_eq!(x.cmp(y), brute_cmp(x, y), "{x} vs {y}");
            }
        }
    }

    #[test]
    fn divisibility() {
        let a = m(&[(2, 1), (4, 2)]);
        let b = m(&[(2, 2), (4, 2), (7, 1)]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b).unwrap(), m(&[(2, 1), (7, 1)]));
        assert!(!b.divides(&a));
        assert_eq!(a.lcm(&m(&[(7, 3)])), m(&[(2, 1), (4, 2), (7, 3)]));
        assert!(a.is_coprime(&m(&[(3, 1)])));
    }

    fn arb() -> impl Strategy<Value = ParamMonomial> {
        proptest::array::uniform10(0u8..4).prop_map(ParamMonomial::from_exponents)
    }

    proptest! {
        #[test]
        fn order_matches_brute_force(a in arb(), b in arb()) {
            prop_assert_eq!(a.cmp(&b), brute_cmp(&a, &b));
        }

        #[test]
        fn order_is_multiplicative(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
        }
    }
}
