use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// A polynomial variable: an equivariant parameter `z_i` or a weight-function
/// variable `t^(k)_a`.
///
/// The derived order puts every `z` before every `t`; `z` by index, `t` by
/// `(k, a)` lexicographically. Earlier variables are "larger" in the monomial
/// order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z(u16),
    T(u16, u16),
}

impl Var {
    pub fn z(i: usize) -> Var {
        Var::Z(i as u16)
    }

    pub fn t(k: usize, a: usize) -> Var {
        Var::T(k as u16, a as u16)
    }

    pub fn is_z(self) -> bool {
        matches!(self, Var::Z(_))
    }

    /// LaTeX rendering: `z_{3}`, `t^{(2)}_{1}`.
    pub fn latex(self) -> String {
        match self {
            Var::Z(i) => format!("z_{{{i}}}"),
            Var::T(k, a) => format!("t^{{({k})}}_{{{a}}}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(i) => write!(f, "z{i}"),
            Var::T(k, a) => write!(f, "t{k}_{a}"),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Var {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::new(format!("invalid variable `{s}`"));
        let index = |t: &str| -> Result<u16, ParseError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            match t.parse::<u16>() {
                Ok(v) if v >= 1 && !t.starts_with('0') => Ok(v),
                _ => Err(bad()),
            }
        };
        if let Some(rest) = s.strip_prefix('z') {
            Ok(Var::Z(index(rest)?))
        } else if let Some(rest) = s.strip_prefix('t') {
            let (k, a) = rest.split_once('_').ok_or_else(bad)?;
            Ok(Var::T(index(k)?, index(a)?))
        } else {
            Err(bad())
        }
    }
}
