//! Text form of operator polynomials with Gaussian-rational coefficients.
//!
//! Two notations are accepted. With named arguments (`x`, `y`, `z`, ...)
//! the arguments must appear in alphabetical order, a coefficient may be
//! glued to its monomial and `*` is multiplication:
//! `L^3(xy) = L^3(x)y + 2*I*xL^3(y)`. With `*` for arguments a coefficient
//! must be separated by whitespace or parenthesised: `L^3(**) - 1/2 *L^3(*)`.
//! An optional `=` moves the right side over.

use thiserror::Error;

use super::OperatorElement;
use crate::exactalg::GaussRat;
use crate::opmonoms::{parse_monomial, Basis, OperatorMonomial};

const ARG_NAMES: [char; 8] = ['x', 'y', 'z', 'w', 'u', 'v', 's', 't'];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ElementParseError {
    #[error("no terms")]
    Empty,
    #[error("term '{term}': {message}")]
    Term { term: String, message: String },
    #[error("terms of different degree or multiplicity")]
    Mixed,
    #[error("more than one '='")]
    Equals,
}

fn term_err(term: &str, message: impl Into<String>) -> ElementParseError {
    ElementParseError::Term { term: term.trim().to_string(), message: message.into() }
}

/// Parses an operator polynomial or equation.
pub fn parse_element(text: &str) -> Result<OperatorElement<GaussRat>, ElementParseError> {
    let text = text.replace('\u{2212}', "-").replace('∗', "*");
    let sides: Vec<&str> = text.split('=').collect();
    if sides.len() > 2 {
        return Err(ElementParseError::Equals);
    }
    let named = text.chars().any(|c| ARG_NAMES.contains(&c));
    let mut terms: Vec<(GaussRat, OperatorMonomial)> = Vec::new();
    for (n, side) in sides.iter().enumerate() {
        if side.trim() == "0" {
            continue;
        }
        if side.trim().is_empty() {
            return Err(ElementParseError::Empty);
        }
        for chunk in split_top_level(side) {
            let (c, m) = parse_term(chunk, named)?;
            terms.push((if n == 1 { -&c } else { c }, m));
        }
    }
    let (p, q) = match terms.first() {
        Some((_, m)) => (m.degree(), m.multiplicity()),
        None => return Err(ElementParseError::Empty),
    };
    if terms.iter().any(|(_, m)| (m.degree(), m.multiplicity()) != (p, q)) {
        return Err(ElementParseError::Mixed);
    }
    let basis = Basis::new(p, q).map_err(|e| term_err(&text, e.to_string()))?;
    let ranked: Vec<(usize, GaussRat)> = terms
        .into_iter()
        .map(|(c, m)| (basis.rank_of(&m).expect("monomial of matching shape"), c))
        .collect();
    OperatorElement::from_terms(&basis, ranked).map_err(|e| term_err(&text, e.to_string()))
}

/// Replaces the `*` argument slots of a rendered monomial or polynomial by
/// `x, y, z, ...`, restarting at every term.
pub fn name_arguments(text: &str) -> String {
    let mut k = 0;
    let mut depth = 0i32;
    let mut out = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' | '=' if depth == 0 => k = 0,
            _ => {}
        }
        if c == '*' {
            out.push(ARG_NAMES.get(k).copied().unwrap_or('?'));
            k += 1;
        } else {
            out.push(c);
        }
    }
    out
}

fn split_top_level(side: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut seen_body = false;
    for (i, c) in side.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && seen_body => {
                out.push(&side[start..i]);
                start = i;
                seen_body = false;
                continue;
            }
            _ => {}
        }
        if !c.is_whitespace() && c != '+' && c != '-' {
            seen_body = true;
        }
    }
    out.push(&side[start..]);
    out
}

fn parse_term(chunk: &str, named: bool) -> Result<(GaussRat, OperatorMonomial), ElementParseError> {
    let t = chunk.trim();
    let (neg, body) = match t.chars().next() {
        Some('-') => (true, t[1..].trim_start()),
        Some('+') => (false, t[1..].trim_start()),
        _ => (false, t),
    };
    if body.is_empty() {
        return Err(term_err(chunk, "missing monomial"));
    }
    let (coef_text, mono_text) = if named { split_named(body) } else { split_starred(body) };
    let coef_text = coef_text.trim();
    let coef_text = coef_text.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(coef_text);
    let mut coef = if coef_text.is_empty() {
        GaussRat::one()
    } else {
        coef_text.parse::<GaussRat>().map_err(|e| term_err(chunk, format!("coefficient '{coef_text}': {e}")))?
    };
    if neg {
        coef = -&coef;
    }
    let mono = if named { starred_from_named(mono_text).map_err(|m| term_err(chunk, m))? } else { mono_text.to_string() };
    let m = parse_monomial(&mono).map_err(|e| term_err(chunk, e.to_string()))?;
    Ok((coef, m))
}

fn split_named(body: &str) -> (&str, &str) {
    let at = body.find(|c: char| c == 'L' || ARG_NAMES.contains(&c)).unwrap_or(body.len());
    let (c, m) = body.split_at(at);
    (c.trim().trim_end_matches('*'), m)
}

fn split_starred(body: &str) -> (&str, &str) {
    if body.starts_with('(') {
        if let Some(close) = body.find(')') {
            let inner = &body[1..close];
            if inner.parse::<GaussRat>().is_ok() {
                return (&body[..=close], body[close + 1..].trim_start());
            }
        }
    }
    match body.split_once(char::is_whitespace) {
        Some((first, rest)) if first.parse::<GaussRat>().is_ok() => (first, rest.trim_start()),
        _ => ("", body),
    }
}

fn starred_from_named(text: &str) -> Result<String, String> {
    let mut next = 0;
    let mut out = String::new();
    for c in text.chars().filter(|c| !c.is_whitespace() && *c != '*') {
        if let Some(k) = ARG_NAMES.iter().position(|a| *a == c) {
            if k != next {
                return Err(format!("argument '{c}' out of order"));
            }
            next += 1;
            out.push('*');
        } else {
            out.push(c);
        }
    }
    Ok(out)
}
