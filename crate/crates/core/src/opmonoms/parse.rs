//! Recursive-descent parser for the monomial text form.
//!
//! ```text
//! Monomial := Factor+
//! Factor   := "*" | "L" ["^" int] "(" Monomial ")"
//! ```
//! Whitespace is ignored. `{*}` is accepted as a synonym for `*`.

use super::{MonomialError, OperatorMonomial, Tree};

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |(i, _)| *i)
    }

    fn fail<T>(&self, message: &str) -> Result<T, MonomialError> {
        Err(MonomialError::Syntax {
            position: self.offset(),
            message: message.to_string(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expect(&mut self, c: char) -> Result<(), MonomialError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("expected '{c}'"))
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some('*' | 'L' | '{'))
    }

    fn monomial(&mut self) -> Result<Vec<Tree>, MonomialError> {
        if !self.starts_factor() {
            return self.fail("expected '*' or 'L'");
        }
        let mut out = Vec::new();
        while self.starts_factor() {
            out.push(self.factor()?);
        }
        Ok(out)
    }

    fn power(&mut self) -> Result<usize, MonomialError> {
        let start = self.pos;
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.bump();
        }
        if digits.is_empty() {
            return self.fail("expected exponent");
        }
        match digits.parse::<usize>() {
            Ok(0) => {
                self.pos = start;
                self.fail("exponent must be positive")
            }
            Ok(k) => Ok(k),
            Err(_) => self.fail("exponent too large"),
        }
    }

    fn factor(&mut self) -> Result<Tree, MonomialError> {
        match self.peek() {
            Some('*') => {
                self.bump();
                Ok(Tree::Arg)
            }
            Some('{') => {
                self.bump();
                self.expect('*')?;
                self.expect('}')?;
                Ok(Tree::Arg)
            }
            Some('L') => {
                self.bump();
                let k = if self.peek() == Some('^') {
                    self.bump();
                    self.power()?
                } else {
                    1
                };
                self.expect('(')?;
                if self.peek() == Some(')') {
                    return self.fail("empty parentheses");
                }
                let mut inner = self.monomial()?;
                self.expect(')')?;
                for _ in 1..k {
                    inner = vec![Tree::App(inner)];
                }
                Ok(Tree::App(inner))
            }
            _ => self.fail("expected '*' or 'L'"),
        }
    }
}

pub fn parse_monomial(s: &str) -> Result<OperatorMonomial, MonomialError> {
    let mut p = Parser {
        chars: s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        src: s,
    };
    let factors = p.monomial()?;
    if p.peek().is_some() {
        return p.fail("unexpected trailing input");
    }
    OperatorMonomial::new(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opmonoms::rank_of;

    #[test]
    fn parses_display_forms() {
        let m = parse_monomial("L^3(*)*").unwrap();
        assert_eq!(rank_of(&m).rank, 4);
        assert_eq!(parse_monomial("*").unwrap(), OperatorMonomial::arg());
        assert_eq!(
            parse_monomial(" L ( L ( * ) ) ").unwrap().to_string(),
            "L^2(*)"
        );
        assert_eq!(
            parse_monomial("{*}L(L^3({*}){*})").unwrap().to_string(),
            "*L(L^3(*)*)"
        );
    }

    #[test]
    fn reports_errors() {
        let err = parse_monomial("L(L(L(x").unwrap_err();
        assert_eq!(
            err,
            MonomialError::Syntax { position: 6, message: "expected '*' or 'L'".into() }
        );
        let err = parse_monomial("L(L(L(*").unwrap_err();
        assert!(matches!(err, MonomialError::Syntax { position: 7, .. }), "{err}");
        assert!(matches!(
            parse_monomial("L^0(*)"),
            Err(MonomialError::Syntax { position: 2, .. })
        ));
        assert!(matches!(parse_monomial("L()"), Err(MonomialError::Syntax { .. })));
        assert!(matches!(parse_monomial("*)"), Err(MonomialError::Syntax { .. })));
        assert!(matches!(parse_monomial(""), Err(MonomialError::Syntax { .. })));
    }
}
