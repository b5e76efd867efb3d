use std::fmt;
use std::path::Path;

use anyhow::{Context, Result};

use opident::classify::CoefficientVector;
use opident::exactalg::{ArithError, GaussRat, MultiPoly};
use opident::opcompose::{parse_element, OperatorElement};
use opident::opmonoms::Basis;

/// Bad arguments or malformed input; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub enum ElementInput {
    /// The general element with coefficients `a1..a10`.
    Generic,
    Numeric(OperatorElement<GaussRat>),
}

fn parse_one(text: &str) -> Result<OperatorElement<GaussRat>, String> {
    if text.contains(',') {
        let v: CoefficientVector = text.parse().map_err(|e: opident::classify::ClassifyError| e.to_string())?;
        let basis = Basis::new(2, 3).expect("M(2,3)");
        let terms: Vec<(usize, GaussRat)> = v.values().iter().cloned().enumerate().map(|(k, c)| (k + 1, c)).collect();
        return OperatorElement::from_terms(&basis, terms).map_err(|e| e.to_string());
    }
    parse_element(text).map_err(|e| e.to_string())
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Reads an element from a file (one term or coefficient list per line,
/// summed) or from the command-line argument.
pub fn read_element(arg: &str, file: Option<&Path>) -> Result<ElementInput> {
    let Some(path) = file else {
        if arg.trim() == "generic" {
            return Ok(ElementInput::Generic);
        }
        return parse_one(arg).map(ElementInput::Numeric).map_err(|e| UsageError(e).into());
    };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut acc: Option<OperatorElement<GaussRat>> = None;
    for (line, content) in content_lines(&text) {
        let at = |msg: String| UsageError(format!("{}:{line}: {msg}", path.display()));
        let e = parse_one(content).map_err(at)?;
        acc = Some(match acc {
            None => e,
            Some(a) if (a.degree(), a.multiplicity()) == (e.degree(), e.multiplicity()) => a.add(&e),
            Some(_) => return Err(at("term of a different degree or multiplicity".into()).into()),
        });
    }
    acc.map(ElementInput::Numeric)
        .ok_or_else(|| UsageError(format!("{}: no terms", path.display())).into())
}

/// One polynomial in `a1..a10` per line; `#` starts a comment.
pub fn read_polynomials(path: &Path) -> Result<Vec<MultiPoly>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let polys = content_lines(&text)
        .map(|(line, content)| {
            content
                .parse::<MultiPoly>()
                .map_err(|e: ArithError| UsageError(format!("{}:{line}: {e}", path.display())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if polys.is_empty() {
        return Err(UsageError(format!("{}: no polynomials", path.display())).into());
    }
    Ok(polys)
}
