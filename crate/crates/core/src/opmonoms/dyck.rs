use std::fmt;
use std::str::FromStr;

use super::MonomialError;

/// `Open` sorts before `Close`, which gives the basis order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Paren {
    Open,
    Close,
}

/// A balanced parenthesis string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DyckWord(Vec<Paren>);

impl DyckWord {
    pub fn new(parens: Vec<Paren>) -> Result<Self, MonomialError> {
        let mut depth: i64 = 0;
        for p in &parens {
            depth += if *p == Paren::Open { 1 } else { -1 };
            if depth < 0 {
                return Err(MonomialError::Unbalanced);
            }
        }
        if depth != 0 {
            return Err(MonomialError::Unbalanced);
        }
        Ok(DyckWord(parens))
    }

    pub(crate) fn from_parens_unchecked(parens: Vec<Paren>) -> Self {
        DyckWord(parens)
    }

    pub fn parens(&self) -> &[Paren] {
        &self.0
    }

    pub fn pairs(&self) -> usize {
        self.0.len() / 2
    }

    /// Number of adjacent `()` substrings.
    pub fn nestings(&self) -> usize {
        self.0
            .windows(2)
            .filter(|w| w[0] == Paren::Open && w[1] == Paren::Close)
            .count()
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            f.write_str(if *p == Paren::Open { "(" } else { ")" })?;
        }
        Ok(())
    }
}

impl FromStr for DyckWord {
    type Err = MonomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parens = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '(' => Ok(Paren::Open),
                ')' => Ok(Paren::Close),
                other => Err(MonomialError::BadSymbol(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        DyckWord::new(parens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balance_is_checked() {
        assert!("(()())".parse::<DyckWord>().is_ok());
        assert_eq!("())(".parse::<DyckWord>(), Err(MonomialError::Unbalanced));
        assert_eq!("((".parse::<DyckWord>(), Err(MonomialError::Unbalanced));
        assert_eq!("(x)".parse::<DyckWord>(), Err(MonomialError::BadSymbol('x')));
    }

    #[test]
    fn nesting_count() {
        let w: DyckWord = "((()()))()".parse().unwrap();
        assert_eq!(w.nestings(), 3);
        assert_eq!(w.pairs(), 5);
    }

    #[test]
    fn open_precedes_close() {
        let a: DyckWord = "(())".parse().unwrap();
        let b: DyckWord = "()()".parse().unwrap();
        assert!(a < b);
    }
}
