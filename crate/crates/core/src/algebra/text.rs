//! Canonical text and LaTeX rendering of polynomials, and the text parser.
//!
//! Text form: terms in descending graded-lex order joined by ` + ` / ` - `,
//! coefficient first (`3/4*z1^2*t1_1`), unit coefficients omitted except on
//! the constant term, `0` for the zero polynomial.

use std::fmt;
use std::str::FromStr;

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::scalar::Scalar;
use super::var::Var;
use crate::error::ParseError;

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Polynomial {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.replace('\u{2212}', "-");
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseError::new("empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'+' if !first => {
                    rest = &rest[1..];
                    false
                }
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                _ if first => false,
                _ => return Err(ParseError::new(format!("expected `+` or `-` at `{rest}`"))),
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (body, tail) = rest.split_at(end);
            let (mono, mut coeff) = parse_term(body)?;
            if negative {
                coeff = -coeff;
            }
            terms.push((mono, coeff));
            rest = tail;
        }
        Ok(Polynomial::from_terms(terms))
    }
}

fn parse_term(body: &str) -> Result<(Monomial, Scalar), ParseError> {
    if body.is_empty() {
        return Err(ParseError::new("empty term"));
    }
    let mut coeff = Scalar::one();
    let mut pairs = Vec::new();
    for factor in body.split('*') {
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coeff *= &factor.parse::<Scalar>()?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((name, e)) => {
                let e: u32 = e
                    .parse()
                    .map_err(|_| ParseError::new(format!("invalid exponent in `{factor}`")))?;
                (name, e)
            }
            None => (factor, 1),
        };
        pairs.push((name.parse::<Var>()?, exp));
    }
    Ok((Monomial::from_pairs(pairs), coeff))
}

fn latex_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn latex_monomial(m: &Monomial) -> String {
    m.factors()
        .map(|(v, e)| {
            if e == 1 {
                v.latex()
            } else {
                format!("{}^{{{e}}}", v.latex())
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// LaTeX rendering in the same term order as the text form.
pub fn latex_poly(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&latex_scalar(&a));
        } else if a.is_one() {
            out.push_str(&latex_monomial(m));
        } else {
            out.push_str(&latex_scalar(&a));
            out.push(' ');
            out.push_str(&latex_monomial(m));
        }
    }
    out
}
