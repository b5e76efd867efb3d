//! Partial compositions of operator monomials and the consequences of an
//! operator polynomial.
//!
//! A consequence raises degree and multiplicity by one each, either by
//! composing with the product first and the operator second or the other way
//! round. The paths are enumerated in a fixed order and duplicates (paths with
//! identical coefficient maps) are dropped, keeping the first occurrence.

mod parse;

pub use parse::{name_arguments, parse_element, ElementParseError};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::exactalg::{BigRat, GaussRat, MultiPoly, Ring, NVARS};
use crate::opmonoms::{Basis, MonomialError, OperatorMonomial, Tree};

/// One partial composition step.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum CompositionLabel {
    /// `m ∘_i B`: the i-th argument becomes a product of two arguments.
    DegAt(usize),
    /// `B ∘_2 m`: multiply by an argument on the left.
    DegOuterLeft,
    /// `B ∘_1 m`: multiply by an argument on the right.
    DegOuterRight,
    /// `m ∘_i L`: apply the operator to the i-th argument.
    MultAt(usize),
    /// `L ∘ m`: apply the operator to the whole monomial.
    MultOuter,
}

impl CompositionLabel {
    pub fn apply(&self, m: &OperatorMonomial) -> Result<OperatorMonomial, MonomialError> {
        match *self {
            CompositionLabel::DegAt(i) => compose_deg_at(m, i),
            CompositionLabel::DegOuterLeft => Ok(compose_deg_outer(m, Side::Left)),
            CompositionLabel::DegOuterRight => Ok(compose_deg_outer(m, Side::Right)),
            CompositionLabel::MultAt(i) => compose_mult_at(m, i),
            CompositionLabel::MultOuter => Ok(compose_mult_outer(m)),
        }
    }

    pub fn raises_degree(&self) -> bool {
        matches!(
            self,
            CompositionLabel::DegAt(_) | CompositionLabel::DegOuterLeft | CompositionLabel::DegOuterRight
        )
    }
}

impl fmt::Display for CompositionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompositionLabel::DegAt(i) => write!(f, "∘{i}B"),
            CompositionLabel::DegOuterLeft => write!(f, "B∘2"),
            CompositionLabel::DegOuterRight => write!(f, "B∘1"),
            CompositionLabel::MultAt(i) => write!(f, "∘{i}L"),
            CompositionLabel::MultOuter => write!(f, "L∘"),
        }
    }
}

/// Accepts the display form or an ASCII spelling with `o` for `∘`:
/// `o1B`, `B o 1`, `o2L`, `Lo`.
impl FromStr for CompositionLabel {
    type Err = MonomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '∘' { 'o' } else { c }).collect();
        let bad = || MonomialError::Syntax { position: 0, message: format!("unknown composition '{s}'") };
        let index = |digits: &str| digits.parse::<usize>().ok().filter(|i| *i >= 1).ok_or_else(bad);
        match t.as_str() {
            "Bo1" => Ok(CompositionLabel::DegOuterRight),
            "Bo2" => Ok(CompositionLabel::DegOuterLeft),
            "Lo" => Ok(CompositionLabel::MultOuter),
            _ => {
                let body = t.strip_prefix('o').ok_or_else(bad)?;
                if let Some(d) = body.strip_suffix('B') {
                    Ok(CompositionLabel::DegAt(index(d)?))
                } else if let Some(d) = body.strip_suffix('L') {
                    Ok(CompositionLabel::MultAt(index(d)?))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// Two composition steps applied in order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct CompositionPath(pub CompositionLabel, pub CompositionLabel);

impl CompositionPath {
    pub fn apply(&self, m: &OperatorMonomial) -> Result<OperatorMonomial, MonomialError> {
        self.1.apply(&self.0.apply(m)?)
    }
}

impl fmt::Display for CompositionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// `(∘1B, ∘2L)` or `o1B,o2L`.
impl FromStr for CompositionPath {
    type Err = MonomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t.split_once(',').ok_or_else(|| MonomialError::Syntax {
            position: 0,
            message: format!("expected two comma-separated steps in '{s}'"),
        })?;
        Ok(CompositionPath(a.parse()?, b.parse()?))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// Rewrites the `index`-th argument (1-based, left to right) with `f`.
fn rewrite_arg(
    m: &OperatorMonomial,
    index: usize,
    f: impl Fn() -> Vec<Tree>,
) -> Result<OperatorMonomial, MonomialError> {
    fn walk(seq: &[Tree], seen: &mut usize, index: usize, f: &dyn Fn() -> Vec<Tree>) -> Vec<Tree> {
        let mut out = Vec::with_capacity(seq.len() + 1);
        for t in seq {
            match t {
                Tree::Arg => {
                    *seen += 1;
                    if *seen == index {
                        out.extend(f());
                    } else {
                        out.push(Tree::Arg);
                    }
                }
                Tree::App(ch) => out.push(Tree::App(walk(ch, seen, index, f))),
            }
        }
        out
    }
    let degree = m.degree();
    if index == 0 || index > degree {
        return Err(MonomialError::ArgIndex { index, degree });
    }
    let mut seen = 0;
    OperatorMonomial::new(walk(m.factors(), &mut seen, index, &f))
}

/// `m ∘_i B`, landing in `M(p+1, q)`.
pub fn compose_deg_at(m: &OperatorMonomial, i: usize) -> Result<OperatorMonomial, MonomialError> {
    rewrite_arg(m, i, || vec![Tree::Arg, Tree::Arg])
}

/// `B ∘_1 m` (argument on the right) or `B ∘_2 m` (on the left).
pub fn compose_deg_outer(m: &OperatorMonomial, side: Side) -> OperatorMonomial {
    let mut factors = m.factors().to_vec();
    match side {
        Side::Right => factors.push(Tree::Arg),
        Side::Left => factors.insert(0, Tree::Arg),
    }
    OperatorMonomial::new(factors).expect("non-empty")
}

/// `m ∘_i L`, landing in `M(p, q+1)`.
pub fn compose_mult_at(m: &OperatorMonomial, i: usize) -> Result<OperatorMonomial, MonomialError> {
    rewrite_arg(m, i, || vec![Tree::App(vec![Tree::Arg])])
}

/// `L ∘ m`.
pub fn compose_mult_outer(m: &OperatorMonomial) -> OperatorMonomial {
    OperatorMonomial::new(vec![Tree::App(m.factors().to_vec())]).expect("non-empty")
}

fn degree_steps(p: usize) -> Vec<CompositionLabel> {
    let mut v: Vec<_> = (1..=p).map(CompositionLabel::DegAt).collect();
    v.push(CompositionLabel::DegOuterRight);
    v.push(CompositionLabel::DegOuterLeft);
    v
}

fn mult_steps(p: usize) -> Vec<CompositionLabel> {
    let mut v: Vec<_> = (1..=p).map(CompositionLabel::MultAt).collect();
    v.push(CompositionLabel::MultOuter);
    v
}

/// Every two-step path from `O(p, q)` to `O(p+1, q+1)`: degree-first paths,
/// then multiplicity-first paths, each in step order.
pub fn raw_paths(p: usize) -> Vec<CompositionPath> {
    let mut out = Vec::new();
    for d in degree_steps(p) {
        for l in mult_steps(p + 1) {
            out.push(CompositionPath(d, l));
        }
    }
    for l in mult_steps(p) {
        for d in degree_steps(p) {
            out.push(CompositionPath(l, d));
        }
    }
    out
}

/// A homogeneous operator polynomial in `O(p, q)` with coefficients in `C`,
/// keyed by 1-based basis rank.
#[derive(Clone, PartialEq, Debug)]
pub struct OperatorElement<C> {
    p: usize,
    q: usize,
    coeffs: BTreeMap<usize, C>,
}

impl<C: Ring> OperatorElement<C> {
    pub fn zero(p: usize, q: usize) -> Self {
        OperatorElement { p, q, coeffs: BTreeMap::new() }
    }

    /// Builds an element from `(rank, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        basis: &Basis,
        terms: impl IntoIterator<Item = (usize, C)>,
    ) -> Result<Self, MonomialError> {
        let mut e = Self::zero(basis.degree(), basis.multiplicity());
        for (rank, c) in terms {
            basis.get(rank)?;
            e.add_term(rank, c);
        }
        Ok(e)
    }

    fn add_term(&mut self, rank: usize, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(rank).or_insert_with(C::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.coeffs.remove(&rank);
        }
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn multiplicity(&self) -> usize {
        self.q
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, C> {
        &self.coeffs
    }

    pub fn coeff(&self, rank: usize) -> C {
        self.coeffs.get(&rank).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(self.p, self.q);
        for (r, c) in &self.coeffs {
            out.add_term(*r, c.mul(k));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.p, self.q), (other.p, other.q), "inhomogeneous sum");
        let mut out = self.clone();
        for (r, c) in &other.coeffs {
            out.add_term(*r, c.clone());
        }
        out
    }

    /// Coefficients mapped through a ring homomorphism.
    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> OperatorElement<D> {
        let mut out = OperatorElement::zero(self.p, self.q);
        for (r, c) in &self.coeffs {
            out.add_term(*r, f(c));
        }
        out
    }

    /// Sum of terms with space-separated coefficients, for example
    /// `a1 L^3(**) + (a2 + 1) L^2(L(*)*)`. Numeric output parses back with
    /// [`parse_element`].
    pub fn render(&self, basis: &Basis) -> String
    where
        C: fmt::Display,
    {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(r, c)| {
                let m = basis.get(*r).map(|m| m.to_string()).unwrap_or_default();
                let c = c.to_string();
                if c == "1" {
                    m
                } else if c == "-1" {
                    format!("-{m}")
                } else if c.contains(' ') {
                    format!("({c}) {m}")
                } else {
                    format!("{c} {m}")
                }
            })
            .collect();
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl OperatorElement<MultiPoly> {
    /// `a1*m1 + ... + aN*mN` over the basis `M(p, q)`; needs `N <= 10`.
    pub fn general(p: usize, q: usize) -> Result<Self, MonomialError> {
        let basis = Basis::new(p, q)?;
        assert!(basis.len() <= NVARS, "only {NVARS} parameters are available");
        Self::from_terms(&basis, (1..=basis.len()).map(|k| (k, MultiPoly::param(k))))
    }

    pub fn evaluate(&self, point: &[GaussRat; NVARS]) -> OperatorElement<GaussRat> {
        self.map_coeffs(|c| c.evaluate(point))
    }
}

impl OperatorElement<BigRat> {
    pub fn to_poly(&self) -> OperatorElement<MultiPoly> {
        self.map_coeffs(|c| MultiPoly::constant(c.clone()))
    }
}

/// A labeled consequence.
#[derive(Clone, Debug)]
pub struct Consequence<C> {
    pub path: CompositionPath,
    pub element: OperatorElement<C>,
}

/// Precomputed action of every path on the source basis.
#[derive(Clone, Debug)]
pub struct ConsequenceMaps {
    pub source: Basis,
    pub target: Basis,
    /// `(path, image rank of each source rank)`, in canonical path order.
    pub paths: Vec<(CompositionPath, Vec<usize>)>,
}

impl ConsequenceMaps {
    pub fn new(p: usize, q: usize) -> Result<Self, MonomialError> {
        let source = Basis::new(p, q)?;
        let target = Basis::new(p + 1, q + 1)?;
        let mut paths = Vec::new();
        for path in raw_paths(p) {
            let images = source
                .monomials()
                .iter()
                .map(|m| {
                    let img = path.apply(m)?;
                    Ok(target.rank_of(&img).expect("image lies in the target basis"))
                })
                .collect::<Result<Vec<_>, MonomialError>>()?;
            paths.push((path, images));
        }
        Ok(ConsequenceMaps { source, target, paths })
    }

    /// Image of `elem` under one path, by linearity.
    pub fn apply<C: Ring>(&self, images: &[usize], elem: &OperatorElement<C>) -> OperatorElement<C> {
        let mut out = OperatorElement::zero(self.target.degree(), self.target.multiplicity());
        for (rank, c) in elem.coeffs() {
            out.add_term(images[rank - 1], c.clone());
        }
        out
    }

    /// All path images of `elem` in canonical order, before deduplication.
    pub fn raw<C: Ring>(&self, elem: &OperatorElement<C>) -> Vec<Consequence<C>> {
        self.paths
            .iter()
            .map(|(path, images)| Consequence { path: *path, element: self.apply(images, elem) })
            .collect()
    }

    /// Distinct consequences, first occurrence kept.
    pub fn distinct<C: Ring>(&self, elem: &OperatorElement<C>) -> Vec<Consequence<C>> {
        let mut out: Vec<Consequence<C>> = Vec::new();
        for c in self.raw(elem) {
            if !out.iter().any(|o| o.element == c.element) {
                out.push(c);
            }
        }
        out
    }
}

/// The distinct consequences of `elem` in canonical path order.
pub fn consequences<C: Ring>(elem: &OperatorElement<C>) -> Result<Vec<Consequence<C>>, MonomialError> {
    let maps = ConsequenceMaps::new(elem.degree(), elem.multiplicity())?;
    Ok(maps.distinct(elem))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opmonoms::{enumerate_basis, parse_monomial};
    use proptest::prelude::*;

    fn mono(s: &str) -> OperatorMonomial {
        parse_monomial(s).unwrap()
    }

    #[test]
    fn degree_at_examples() {
        assert_eq!(compose_deg_at(&mono("L^3(**)"), 1).unwrap(), mono("L^3(***)"));
        assert_eq!(compose_deg_at(&mono("*"), 1).unwrap(), mono("**"));
        assert_eq!(compose_deg_at(&mono("L(*L^2(*))"), 1).unwrap(), mono("L(**L^2(*))"));
        assert_eq!(
            compose_deg_at(&mono("*"), 2),
            Err(MonomialError::ArgIndex { index: 2, degree: 1 })
        );
        assert!(compose_deg_at(&mono("**"), 0).is_err());
    }

    #[test]
    fn degree_outer_examples() {
        assert_eq!(compose_deg_outer(&mono("*"), Side::Right), mono("**"));
        assert_eq!(compose_deg_outer(&mono("L^3(**)"), Side::Right), mono("L^3(**)*"));
        assert_eq!(compose_deg_outer(&mono("L(*)"), Side::Left), mono("*L(*)"));
    }

    #[test]
    fn mult_examples() {
        assert_eq!(compose_mult_at(&mono("L^3(***)"), 2).unwrap(), mono("L^3(*L(*)*)"));
        assert_eq!(compose_mult_at(&mono("*"), 1).unwrap(), mono("L(*)"));
        assert_eq!(compose_mult_at(&mono("L(**L^2(*))"), 2).unwrap(), mono("L(*L(*)L^2(*))"));
        assert!(compose_mult_at(&mono("L(*)"), 3).is_err());
        assert_eq!(compose_mult_outer(&mono("*")), mono("L(*)"));
        assert_eq!(compose_mult_outer(&mono("L(*)L(*)")), mono("L(L(*)L(*))"));
        assert_eq!(compose_mult_outer(&mono("**")), mono("L(**)"));
    }

    #[test]
    fn bookkeeping_is_exhaustive_for_small_bases() {
        for n in 1..=6usize {
            for p in 1..=n {
                let q = n - p;
                for m in enumerate_basis(p, q).unwrap() {
                    for i in 1..=p {
                        let d = compose_deg_at(&m, i).unwrap();
                        assert_eq!((d.degree(), d.multiplicity()), (p + 1, q));
                        let l = compose_mult_at(&m, i).unwrap();
                        assert_eq!((l.degree(), l.multiplicity()), (p, q + 1));
                    }
                    for s in [Side::Left, Side::Right] {
                        let d = compose_deg_outer(&m, s);
                        assert_eq!((d.degree(), d.multiplicity()), (p + 1, q));
                    }
                    let l = compose_mult_outer(&m);
                    assert_eq!((l.degree(), l.multiplicity()), (p, q + 1));
                }
            }
        }
    }

    #[test]
    fn path_counts() {
        let paths = raw_paths(2);
        assert_eq!(paths.len(), 28);
        assert_eq!(paths.iter().filter(|p| p.0.raises_degree()).count(), 16);
        assert_eq!(paths[0], CompositionPath(CompositionLabel::DegAt(1), CompositionLabel::MultAt(1)));
        assert_eq!(paths[27], CompositionPath(CompositionLabel::MultOuter, CompositionLabel::DegOuterLeft));
    }

    #[test]
    fn general_element_has_twenty_consequences() {
        let r = OperatorElement::general(2, 3).unwrap();
        let maps = ConsequenceMaps::new(2, 3).unwrap();
        assert_eq!(maps.raw(&r).len(), 28);
        assert_eq!(maps.distinct(&r).len(), 20);
        assert_eq!(consequences(&r).unwrap().len(), 20);
    }

    #[test]
    fn zero_element_has_zero_consequences() {
        let z: OperatorElement<BigRat> = OperatorElement::zero(2, 3);
        let cs = consequences(&z).unwrap();
        assert!(cs.iter().all(|c| c.element.is_zero()));
        assert_eq!(cs.len(), 1);
    }

    #[test]
    fn path_text_round_trip() {
        for path in raw_paths(2) {
            assert_eq!(path.to_string().parse::<CompositionPath>().unwrap(), path);
        }
        assert_eq!(
            "o1B,o2L".parse::<CompositionPath>().unwrap(),
            CompositionPath(CompositionLabel::DegAt(1), CompositionLabel::MultAt(2))
        );
        assert!("o0B,Lo".parse::<CompositionPath>().is_err());
        assert!("o1B".parse::<CompositionPath>().is_err());
    }

    #[test]
    fn render_parses_back() {
        let basis = Basis::new(2, 3).unwrap();
        let e = OperatorElement::from_terms(
            &basis,
            [
                (2, GaussRat::new(BigRat::one(), BigRat::from_int(-2))),
                (5, GaussRat::real(BigRat::new(-1, 3).unwrap())),
                (10, GaussRat::i()),
            ],
        )
        .unwrap();
        assert_eq!(parse_element(&e.render(&basis)).unwrap(), e);
    }

    #[test]
    fn render_element() {
        let basis = Basis::new(2, 3).unwrap();
        let e = OperatorElement::from_terms(
            &basis,
            [(1, BigRat::one()), (10, BigRat::from_int(-1))],
        )
        .unwrap();
        assert_eq!(e.render(&basis), "L^3(**) - *L^3(*)");
        assert!(OperatorElement::from_terms(&basis, [(11, BigRat::one())]).is_err());
    }

    #[test]
    fn arg_doubling_then_wrap_on_all_basis_monomials() {
        let path = CompositionPath(CompositionLabel::DegAt(1), CompositionLabel::MultAt(2));
        let want = [
            "L^3(*L(*)*)",
            "L^2(L(*L(*))*)",
            "L(L^2(*L(*))*)",
            "L^3(*L(*))*",
            "L^2(*L(*)L(*))",
            "L(L(*L(*))L(*))",
            "L^2(*L(*))L(*)",
            "L(*L(*)L^2(*))",
            "L(*L(*))L^2(*)",
            "*L(*)L^3(*)",
        ];
        let basis = enumerate_basis(2, 3).unwrap();
        for (m, w) in basis.iter().zip(want) {
            assert_eq!(path.apply(m).unwrap(), mono(w), "{m}");
        }
    }

    fn rat_element() -> impl Strategy<Value = OperatorElement<BigRat>> {
        prop::collection::vec((-9i64..=9, 1i64..=5), 10).prop_map(|cs| {
            let basis = Basis::new(2, 3).unwrap();
            OperatorElement::from_terms(
                &basis,
                cs.into_iter().enumerate().map(|(k, (n, d))| (k + 1, BigRat::new(n, d).unwrap())),
            )
            .unwrap()
        })
    }

    fn point() -> impl Strategy<Value = [GaussRat; NVARS]> {
        prop::array::uniform10((-5i64..=5, -2i64..=2))
            .prop_map(|a| a.map(|(re, im)| GaussRat::new(BigRat::from_int(re), BigRat::from_int(im))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn raw_consequences_are_linear(a in rat_element(), b in rat_element(), k in -4i64..=4) {
            let maps = ConsequenceMaps::new(2, 3).unwrap();
            let k = BigRat::from_int(k);
            let lhs = maps.raw(&a.scale(&k).add(&b));
            let ca = maps.raw(&a);
            let cb = maps.raw(&b);
            for ((l, x), y) in lhs.iter().zip(&ca).zip(&cb) {
                prop_assert_eq!(&l.element, &x.element.scale(&k).add(&y.element));
            }
        }

        #[test]
        fn substitution_commutes_with_composition(pt in point()) {
            let maps = ConsequenceMaps::new(2, 3).unwrap();
            let general = OperatorElement::general(2, 3).unwrap();
            let symbolic = maps.raw(&general);
            let numeric = maps.raw(&general.evaluate(&pt));
            for (s, n) in symbolic.iter().zip(&numeric) {
                prop_assert_eq!(&s.element.evaluate(&pt), &n.element);
            }
        }
    }
}
