//! Operator monomials: planar words in one associative product and one
//! unary operator `L`, identified with Dyck words.
//!
//! A Dyck word with `p + q` pairs and `p` nestings maps to a monomial of
//! degree `p` and multiplicity `q`: each nesting `()` becomes the argument
//! symbol `*`, every other `(` becomes `L(`, and the remaining `)` stay. The
//! lexicographic order of the words (with `(` before `)`) orders each basis.

mod dyck;
mod parse;

pub use dyck::{DyckWord, Paren};
pub use parse::parse_monomial;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("Narayana number N({i}, {j}) requires i >= j >= 1")]
    NarayanaRange { i: u32, j: u32 },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("rank {rank} outside 1..={len} for M({p},{q})")]
    RankOutOfRange { p: usize, q: usize, rank: usize, len: usize },
    #[error("Dyck word is not balanced")]
    Unbalanced,
    #[error("Dyck word has no nesting")]
    NoNesting,
    #[error("invalid character {0:?} in Dyck word")]
    BadSymbol(char),
    #[error("argument index {index} outside 1..={degree}")]
    ArgIndex { index: usize, degree: usize },
    #[error("operator monomials must be non-empty")]
    Empty,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}

/// One factor of an operator monomial: the argument symbol or `L` applied to
/// a non-empty product.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Tree {
    Arg,
    App(Vec<Tree>),
}

impl Tree {
    fn degree(&self) -> usize {
        match self {
            Tree::Arg => 1,
            Tree::App(ch) => ch.iter().map(Tree::degree).sum(),
        }
    }

    fn multiplicity(&self) -> usize {
        match self {
            Tree::Arg => 0,
            Tree::App(ch) => 1 + ch.iter().map(Tree::multiplicity).sum::<usize>(),
        }
    }

    fn well_formed(&self) -> bool {
        match self {
            Tree::Arg => true,
            Tree::App(ch) => !ch.is_empty() && ch.iter().all(Tree::well_formed),
        }
    }
}

/// A product of factors. `L^k` is always stored as `k` nested applications.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OperatorMonomial {
    factors: Vec<Tree>,
}

impl OperatorMonomial {
    pub fn new(factors: Vec<Tree>) -> Result<Self, MonomialError> {
        if factors.is_empty() || !factors.iter().all(Tree::well_formed) {
            return Err(MonomialError::Empty);
        }
        Ok(OperatorMonomial { factors })
    }

    /// The single argument `*`.
    pub fn arg() -> Self {
        OperatorMonomial { factors: vec![Tree::Arg] }
    }

    pub fn factors(&self) -> &[Tree] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Tree> {
        self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(Tree::degree).sum()
    }

    pub fn multiplicity(&self) -> usize {
        self.factors.iter().map(Tree::multiplicity).sum()
    }

    pub fn to_dyck(&self) -> DyckWord {
        fn emit(t: &Tree, out: &mut Vec<Paren>) {
            out.push(Paren::Open);
            if let Tree::App(ch) = t {
                for c in ch {
                    emit(c, out);
                }
            }
            out.push(Paren::Close);
        }
        let mut out = Vec::new();
        for t in &self.factors {
            emit(t, &mut out);
        }
        DyckWord::from_parens_unchecked(out)
    }

    pub fn from_dyck(word: &DyckWord) -> Result<Self, MonomialError> {
        if word.nestings() == 0 {
            return Err(MonomialError::NoNesting);
        }
        let s = word.parens();
        let mut pos = 0;
        let factors = read_seq(s, &mut pos);
        debug_assert_eq!(pos, s.len());
        Ok(OperatorMonomial { factors })
    }
}

/// Reads trees until an unmatched `)` or the end of input.
fn read_seq(s: &[Paren], pos: &mut usize) -> Vec<Tree> {
    let mut out = Vec::new();
    while *pos < s.len() && s[*pos] == Paren::Open {
        *pos += 1;
        if s[*pos] == Paren::Close {
            *pos += 1;
            out.push(Tree::Arg);
        } else {
            let ch = read_seq(s, pos);
            *pos += 1;
            out.push(Tree::App(ch));
        }
    }
    out
}

pub fn dyck_to_monomial(w: &DyckWord) -> Result<OperatorMonomial, MonomialError> {
    OperatorMonomial::from_dyck(w)
}

pub fn monomial_to_dyck(m: &OperatorMonomial) -> DyckWord {
    m.to_dyck()
}

fn write_tree(t: &Tree, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Tree::Arg => write!(f, "*"),
        Tree::App(ch) => {
            let mut power = 1;
            let mut inner = ch;
            while let [Tree::App(next)] = inner.as_slice() {
                power += 1;
                inner = next;
            }
            if power == 1 {
                write!(f, "L(")?;
            } else {
                write!(f, "L^{power}(")?;
            }
            for c in inner {
                write_tree(c, f)?;
            }
            write!(f, ")")
        }
    }
}

impl fmt::Display for OperatorMonomial {
    /// Collapses unary chains into powers: `L^2(L(*)*)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.factors {
            write_tree(t, f)?;
        }
        Ok(())
    }
}

pub fn format_monomial(m: &OperatorMonomial) -> String {
    m.to_string()
}

fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `N(i, j) = C(i, j) C(i, j-1) / i`, the number of Dyck words with `i`
/// pairs and `j` nestings.
pub fn narayana(i: u32, j: u32) -> Result<BigUint, MonomialError> {
    if j < 1 || j > i {
        return Err(MonomialError::NarayanaRange { i, j });
    }
    Ok(binomial(i, j) * binomial(i, j - 1) / BigUint::from(i))
}

/// Position of a monomial in its lex-ordered basis `M(p, q)`, 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BasisIndex {
    pub p: usize,
    pub q: usize,
    pub rank: usize,
}

/// The lex-ordered basis `M(p, q)` with a reverse index.
#[derive(Clone, Debug)]
pub struct Basis {
    p: usize,
    q: usize,
    monomials: Vec<OperatorMonomial>,
    index: HashMap<OperatorMonomial, usize>,
}

impl Basis {
    pub fn new(p: usize, q: usize) -> Result<Self, MonomialError> {
        let monomials = enumerate_basis(p, q)?;
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k + 1))
            .collect();
        Ok(Basis { p, q, monomials, index })
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn multiplicity(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[OperatorMonomial] {
        &self.monomials
    }

    /// The monomial of 1-based `rank`.
    pub fn get(&self, rank: usize) -> Result<&OperatorMonomial, MonomialError> {
        if rank == 0 || rank > self.len() {
            return Err(MonomialError::RankOutOfRange {
                p: self.p,
                q: self.q,
                rank,
                len: self.len(),
            });
        }
        Ok(&self.monomials[rank - 1])
    }

    pub fn rank_of(&self, m: &OperatorMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// All Dyck words with `p + q` pairs and exactly `p` nestings, in lex order.
fn dyck_words(p: usize, q: usize) -> Vec<DyckWord> {
    fn go(
        n: usize,
        want: usize,
        open: usize,
        close: usize,
        nest: usize,
        cur: &mut Vec<Paren>,
        out: &mut Vec<DyckWord>,
    ) {
        if nest > want {
            return;
        }
        if close == n {
            if nest == want {
                out.push(DyckWord::from_parens_unchecked(cur.clone()));
            }
            return;
        }
        if open < n {
            cur.push(Paren::Open);
            go(n, want, open + 1, close, nest, cur, out);
            cur.pop();
        }
        if close < open {
            let adds = usize::from(cur.last() == Some(&Paren::Open));
            cur.push(Paren::Close);
            go(n, want, open, close + 1, nest + adds, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(p + q, p, 0, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// The basis `M(p, q)` in lex order of Dyck words.
pub fn enumerate_basis(p: usize, q: usize) -> Result<Vec<OperatorMonomial>, MonomialError> {
    if p == 0 {
        return Err(MonomialError::ZeroDegree);
    }
    dyck_words(p, q)
        .iter()
        .map(OperatorMonomial::from_dyck)
        .collect()
}

pub fn rank_of(m: &OperatorMonomial) -> BasisIndex {
    let (p, q) = (m.degree(), m.multiplicity());
    let word = m.to_dyck();
    let words = dyck_words(p, q);
    let rank = words.binary_search(&word).expect("every monomial has a Dyck word") + 1;
    BasisIndex { p, q, rank }
}

pub fn monomial_at(idx: BasisIndex) -> Result<OperatorMonomial, MonomialError> {
    if idx.p == 0 {
        return Err(MonomialError::ZeroDegree);
    }
    let words = dyck_words(idx.p, idx.q);
    if idx.rank == 0 || idx.rank > words.len() {
        return Err(MonomialError::RankOutOfRange {
            p: idx.p,
            q: idx.q,
            rank: idx.rank,
            len: words.len(),
        });
    }
    OperatorMonomial::from_dyck(&words[idx.rank - 1])
}
