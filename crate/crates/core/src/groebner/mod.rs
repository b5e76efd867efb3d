//! Buchberger's algorithm over `Q[a1..a10]` for the graded reverse
//! lexicographic order with `a1` smallest.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{ArithError, BigRat, MultiPoly, ParamMonomial};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum BudgetKind {
    Pairs,
    BasisSize,
    WallClock,
}

impl fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BudgetKind::Pairs => "pair budget",
            BudgetKind::BasisSize => "basis-size budget",
            BudgetKind::WallClock => "wall-clock budget",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroebnerError {
    #[error("{kind} exhausted after {} pairs ({} basis elements so far)", stats.pairs_processed, stats.basis_peak)]
    BudgetExhausted { kind: BudgetKind, stats: GroebnerStats },
    #[error("basis file line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("arithmetic: {0}")]
    Arith(#[from] ArithError),
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_pairs: Option<u64>,
    pub max_basis: Option<usize>,
    pub wall_clock: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_pairs: None, max_basis: None, wall_clock: None }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: Some(5_000_000), max_basis: Some(20_000), wall_clock: Some(Duration::from_secs(300)) }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct GroebnerStats {
    pub input_size: usize,
    pub pairs_processed: u64,
    pub pairs_skipped: u64,
    pub zero_reductions: u64,
    pub basis_peak: usize,
}

/// A reduced Gröbner basis: monic, autoreduced, sorted ascending.
#[derive(Clone, Debug, Serialize)]
pub struct GroebnerBasis {
    #[serde(serialize_with = "ser_polys")]
    polys: Vec<MultiPoly>,
    pub stats: GroebnerStats,
}

fn ser_polys<S: serde::Serializer>(polys: &[MultiPoly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(polys.iter().map(|p| p.to_string()))
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.polys == other.polys
    }
}

impl GroebnerBasis {
    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    /// Wraps polynomials that are claimed to be a reduced basis after making
    /// them monic and sorting. Use [`GroebnerBasis::is_reduced_groebner`] to check.
    pub fn from_claimed(polys: impl IntoIterator<Item = MultiPoly>) -> Result<Self, GroebnerError> {
        let mut v = polys
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.make_monic())
            .collect::<Result<Vec<_>, _>>()?;
        v.sort();
        v.dedup();
        Ok(GroebnerBasis { polys: v, stats: GroebnerStats::default() })
    }

    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        reduce(f, &self.polys)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        ideal_membership(f, self)
    }

    /// Every S-polynomial reduces to zero and the basis is reduced.
    pub fn is_reduced_groebner(&self) -> bool {
        let g = &self.polys;
        for (i, p) in g.iter().enumerate() {
            if !p.is_monic() {
                return false;
            }
            let others: Vec<MultiPoly> = g.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
            let lms: Vec<&ParamMonomial> = others.iter().filter_map(|q| q.leading_monomial()).collect();
            if p.terms().iter().any(|(m, _)| lms.iter().any(|l| l.divides(m))) {
                return false;
            }
        }
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if !reduce(&s_polynomial(&g[i], &g[j]), g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Header with variable order, monomial order and count, then one
    /// polynomial per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("# vars a1..a10 order grevlex a1<a2<...<a10 count {}\n", self.polys.len());
        for p in &self.polys {
            out.push_str(&format!("{p}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GroebnerError> {
        let mut polys = Vec::new();
        let mut count = None;
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                if let Some(c) = h.split_whitespace().skip_while(|w| *w != "count").nth(1) {
                    count = Some(c.parse::<usize>().map_err(|_| GroebnerError::Format {
                        line: n + 1,
                        message: format!("bad count '{c}'"),
                    })?);
                }
                continue;
            }
            let p: MultiPoly = line
                .parse()
                .map_err(|e: ArithError| GroebnerError::Format { line: n + 1, message: e.to_string() })?;
            polys.push(p);
        }
        if let Some(c) = count {
            if c != polys.len() {
                return Err(GroebnerError::Format {
                    line: 1,
                    message: format!("header says {c} polynomials, found {}", polys.len()),
                });
            }
        }
        Self::from_claimed(polys)
    }
}

pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (mf, cf) = f.leading().expect("nonzero");
    let (mg, cg) = g.leading().expect("nonzero");
    let l = mf.lcm(mg);
    let uf = mf.quotient_of(&l).expect("divides lcm");
    let ug = mg.quotient_of(&l).expect("divides lcm");
    let a = f.mul_term(&uf, &cf.inv().expect("nonzero"));
    a.add_scaled(&(-&cg.inv().expect("nonzero")), &ug, g)
}

/// Full normal form of `f` by repeated division by `g`, dividing leading and
/// tail terms alike.
pub fn reduce(f: &MultiPoly, g: &[MultiPoly]) -> MultiPoly {
    let divisors: Vec<(ParamMonomial, BigRat, &MultiPoly)> = g
        .iter()
        .filter_map(|p| p.leading().map(|(m, c)| (*m, c.clone(), p)))
        .collect();
    reduce_with(f, &divisors)
}

fn reduce_with(f: &MultiPoly, divisors: &[(ParamMonomial, BigRat, &MultiPoly)]) -> MultiPoly {
    let mut p = f.clone();
    let mut rest = Vec::new();
    while let Some((m, c)) = p.leading().map(|(m, c)| (*m, c.clone())) {
        match divisors.iter().find(|(lm, _, _)| lm.divides(&m)) {
            Some((lm, lc, q)) => {
                let u = lm.quotient_of(&m).expect("divides");
                let k = -&(&c / lc);
                p = p.add_scaled(&k, &u, q);
            }
            None => {
                p.pop_leading();
                rest.push((m, c));
            }
        }
    }
    MultiPoly::from_descending_terms(rest)
}

pub fn ideal_membership(f: &MultiPoly, g: &GroebnerBasis) -> bool {
    g.reduce(f).is_zero()
}

pub fn basis_equal(a: &GroebnerBasis, b: &GroebnerBasis) -> bool {
    a.polys == b.polys
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Pair {
    lcm: ParamMonomial,
    j: usize,
    i: usize,
}

/// Incremental Buchberger state. Generators can be added one at a time; after
/// each addition the basis is completed, so later generators that already lie
/// in the ideal reduce to zero cheaply.
pub struct Engine {
    polys: Vec<MultiPoly>,
    lms: Vec<ParamMonomial>,
    active: Vec<bool>,
    pairs: BinaryHeap<Reverse<Pair>>,
    stats: GroebnerStats,
    budget: Budget,
    started: Instant,
}

impl Engine {
    pub fn new(budget: Budget) -> Self {
        Engine {
            polys: Vec::new(),
            lms: Vec::new(),
            active: Vec::new(),
            pairs: BinaryHeap::new(),
            stats: GroebnerStats::default(),
            budget,
            started: Instant::now(),
        }
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    fn divisors(&self) -> Vec<(ParamMonomial, BigRat, &MultiPoly)> {
        (0..self.polys.len())
            .filter(|&k| self.active[k])
            .map(|k| (self.lms[k], BigRat::one(), &self.polys[k]))
            .collect()
    }

    fn active_count(&self) -> usize {
        self.active.iter().filter(|a| **a).count()
    }

    fn check_budget(&self) -> Result<(), GroebnerError> {
        let exhausted = |kind| Err(GroebnerError::BudgetExhausted { kind, stats: self.stats });
        if self.budget.max_pairs.is_some_and(|m| self.stats.pairs_processed > m) {
            return exhausted(BudgetKind::Pairs);
        }
        if self.budget.max_basis.is_some_and(|m| self.stats.basis_peak > m) {
            return exhausted(BudgetKind::BasisSize);
        }
        if self.budget.wall_clock.is_some_and(|d| self.started.elapsed() > d) {
            return exhausted(BudgetKind::WallClock);
        }
        Ok(())
    }

    /// Adds a generator and completes the basis.
    pub fn add_generator(&mut self, f: &MultiPoly) -> Result<(), GroebnerError> {
        self.stats.input_size += 1;
        let h = reduce_with(f, &self.divisors());
        if h.is_zero() {
            self.stats.zero_reductions += 1;
            return Ok(());
        }
        self.insert(h.make_monic()?);
        self.complete()
    }

    /// Gebauer–Möller update for a new monic element `h`.
    fn insert(&mut self, h: MultiPoly) {
        let hl = *h.leading_monomial().expect("nonzero");
        let t = self.polys.len();
        let old: Vec<usize> = (0..t).filter(|&k| self.active[k]).collect();

        // New pairs (g, h), pruned by the chain criterion among themselves.
        let cand: Vec<(usize, ParamMonomial)> = old.iter().map(|&k| (k, self.lms[k].lcm(&hl))).collect();
        let mut keep = vec![false; cand.len()];
        for (x, (k, l)) in cand.iter().enumerate() {
            if self.lms[*k].is_coprime(&hl) {
                keep[x] = true;
                continue;
            }
            let later = cand[x + 1..].iter().any(|(_, l2)| l2.divides(l));
            let earlier = cand[..x].iter().zip(&keep).any(|((_, l2), kept)| *kept && l2.divides(l));
            keep[x] = !(later || earlier);
        }
        // Drop pairs whose lcm is strictly refined through h.
        let old_pairs = std::mem::take(&mut self.pairs);
        let before = old_pairs.len();
        self.pairs = old_pairs
            .into_iter()
            .filter(|Reverse(p)| {
                !(hl.divides(&p.lcm)
                    && self.lms[p.i].lcm(&hl) != p.lcm
                    && self.lms[p.j].lcm(&hl) != p.lcm)
            })
            .collect();
        self.stats.pairs_skipped += (before - self.pairs.len()) as u64;
        for (x, (k, l)) in cand.iter().enumerate() {
            if keep[x] && !self.lms[*k].is_coprime(&hl) {
                self.pairs.push(Reverse(Pair { lcm: *l, j: t, i: *k }));
            } else {
                self.stats.pairs_skipped += 1;
            }
        }
        for &k in &old {
            if hl.divides(&self.lms[k]) {
                self.active[k] = false;
            }
        }
        self.polys.push(h);
        self.lms.push(hl);
        self.active.push(true);
        self.stats.basis_peak = self.stats.basis_peak.max(self.active_count());
    }

    fn complete(&mut self) -> Result<(), GroebnerError> {
        while let Some(Reverse(pair)) = self.pairs.pop() {
            self.stats.pairs_processed += 1;
            self.check_budget()?;
            let s = s_polynomial(&self.polys[pair.i], &self.polys[pair.j]);
            let h = reduce_with(&s, &self.divisors());
            if h.is_zero() {
                self.stats.zero_reductions += 1;
                continue;
            }
            let h = h.make_monic()?;
            if h.is_constant() {
                self.pairs.clear();
                for a in self.active.iter_mut() {
                    *a = false;
                }
                self.insert(h);
                self.pairs.clear();
                return Ok(());
            }
            self.insert(h);
        }
        Ok(())
    }

    /// Interreduces the active elements into the reduced basis.
    pub fn finish(self) -> Result<GroebnerBasis, GroebnerError> {
        let mut lead: Vec<MultiPoly> = (0..self.polys.len())
            .filter(|&k| self.active[k])
            .map(|k| self.polys[k].clone())
            .collect();
        lead.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        // Minimal basis: no leading monomial divides another.
        let mut minimal: Vec<MultiPoly> = Vec::new();
        for p in lead {
            let lm = *p.leading_monomial().expect("nonzero");
            if !minimal.iter().any(|q| q.leading_monomial().expect("nonzero").divides(&lm)) {
                minimal.push(p);
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for (i, p) in minimal.iter().enumerate() {
            let others: Vec<MultiPoly> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
            let (m, c) = p.leading().expect("nonzero");
            let tail = {
                let mut t = p.clone();
                t.pop_leading();
                reduce(&t, &others)
            };
            out.push((&MultiPoly::term(*m, c.clone()) + &tail).make_monic()?);
        }
        out.sort();
        Ok(GroebnerBasis { polys: out, stats: self.stats })
    }
}

/// Preprocesses the generators (monic, deduplicated, ascending) and feeds
/// them one at a time to the incremental engine.
pub fn buchberger(gens: &[MultiPoly], budget: Budget) -> Result<GroebnerBasis, GroebnerError> {
    let mut seen = HashSet::new();
    let mut prepared: Vec<MultiPoly> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let m = g.make_monic()?;
        if seen.insert(m.clone()) {
            prepared.push(m);
        }
    }
    prepared.sort();
    let mut engine = Engine::new(budget);
    for g in &prepared {
        engine.add_generator(g)?;
    }
    let mut basis = engine.finish()?;
    basis.stats.input_size = gens.len();
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn gb(gens: &[&str]) -> GroebnerBasis {
        let v: Vec<MultiPoly> = gens.iter().map(|s| p(s)).collect();
        buchberger(&v, Budget::unlimited()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce(&p("a2^2"), &[p("a2")]).is_zero());
        assert_eq!(reduce(&p("a2^2 - a3 + a5"), &[p("a2^2 - a3")]), p("a5"));
        assert_eq!(reduce(&p("a1"), &[p("a2")]), p("a1"));
    }

    #[test]
    fn single_generator() {
        let g = gb(&["a2"]);
        assert_eq!(g.polys(), &[p("a2")]);
        assert!(basis_equal(&g, &g));
        assert!(!basis_equal(&g, &gb(&["a3"])));
        assert!(ideal_membership(&MultiPoly::zero(), &g));
        assert!(!ideal_membership(&p("a1"), &g));
    }

    #[test]
    fn unit_ideal() {
        let g = gb(&["a2 - 1", "a2"]);
        assert!(g.is_unit());
        assert_eq!(g.polys(), &[MultiPoly::one()]);
    }

    #[test]
    fn twisted_cubic() {
        // Ideal of the curve (t, t^2, t^3) in a4, a3, a2.
        let g = gb(&["a3 - a4^2", "a2 - a4^3"]);
        assert!(g.is_reduced_groebner());
        assert!(g.contains(&p("a3^2 - a2*a4")));
        assert!(g.contains(&p("a2*a4 - a3^2")));
        assert!(!g.contains(&p("a2 - a3")));
    }

    #[test]
    fn text_round_trip() {
        let g = gb(&["a4^2 + a4", "a2", "a10^2 + a10"]);
        let t = g.to_text();
        assert!(t.starts_with("# vars a1..a10 order grevlex a1<a2<...<a10 count 3\n"));
        assert_eq!(GroebnerBasis::from_text(&t).unwrap(), g);
        assert!(matches!(
            GroebnerBasis::from_text("# count 2\na2\n"),
            Err(GroebnerError::Format { .. })
        ));
    }

    #[test]
    fn budget_is_typed_failure() {
        let gens = vec![p("a2*a3 - a4^2"), p("a3*a5 - a2^2"), p("a5*a4 - a3^2 + a1")];
        let tiny = Budget { max_pairs: Some(0), max_basis: None, wall_clock: None };
        match buchberger(&gens, tiny) {
            Err(GroebnerError::BudgetExhausted { kind: BudgetKind::Pairs, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((-3i64..=3, 0u8..3, 0u8..3, 0u8..2), 1..4).prop_map(|terms| {
            let mut acc = MultiPoly::zero();
            for (c, e2, e3, e4) in terms {
                let mut exps = [0u8; 10];
                exps[1] = e2;
                exps[2] = e3;
                exps[3] = e4;
                acc = &acc + &MultiPoly::term(ParamMonomial::from_exponents(exps), BigRat::from_int(c));
            }
            acc
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn basis_properties(gens in prop::collection::vec(small_poly(), 1..4), seed in 0u64..1000, mult in small_poly()) {
            let g = buchberger(&gens, Budget::unlimited()).unwrap();
            prop_assert!(g.is_reduced_groebner());
            for f in &gens {
                prop_assert!(g.contains(f));
            }
            let comb = gens.iter().fold(MultiPoly::zero(), |acc, f| &acc + &(f * &mult));
            prop_assert!(g.contains(&comb));
            let r = g.reduce(&mult);
            prop_assert_eq!(g.reduce(&r), r);
            let mut shuffled = gens.clone();
            shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let scaled: Vec<MultiPoly> = shuffled.iter().map(|f| f.scale(&BigRat::from_int(-2))).collect();
            prop_assert_eq!(buchberger(&scaled, Budget::unlimited()).unwrap(), g);
        }
    }
}
