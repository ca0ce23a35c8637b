//! Reading polynomials from text. Two forms are accepted: an expression in
//! `x` such as `x^18 + 9*x^9 + 27`, or a bracketed coefficient list with the
//! constant term first, such as `[27, 0, 1]`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPoly;
use crate::error::{Error, Result};

pub fn parse_poly(s: &str) -> Result<IntPoly> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    if t.starts_with('[') {
        return parse_list(t);
    }
    parse_expr(t)
}

fn parse_list(t: &str) -> Result<IntPoly> {
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("unbalanced brackets in {t:?}")))?;
    let coeffs = inner
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", c.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

fn parse_expr(t: &str) -> Result<IntPoly> {
    let s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if !first {
            return Err(Error::Parse(format!("expected + or - before {rest:?}")));
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        rest = tail;
        let (c, e) = parse_term(term)?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigInt::zero());
        }
        coeffs[e] += c * sign;
    }
    Ok(IntPoly::new(coeffs))
}

fn parse_term(term: &str) -> Result<(BigInt, usize)> {
    let bad = || Error::Parse(format!("bad term {term:?}"));
    if term.is_empty() {
        return Err(bad());
    }
    let (coef, var) = match term.find('x') {
        None => return Ok((term.parse().map_err(|_| bad())?, 0)),
        Some(i) => (&term[..i], &term[i + 1..]),
    };
    let c = match coef {
        "" => BigInt::from(1),
        _ => coef
            .strip_suffix('*')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?,
    };
    let e = match var {
        "" => 1,
        _ => var
            .strip_prefix('^')
            .or_else(|| var.strip_prefix("**"))
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?,
    };
    Ok((c, e))
}
