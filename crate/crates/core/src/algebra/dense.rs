//! Packed kernel for expansion-heavy work over at most 15 variables.
//!
//! A monomial is one `u128`: the top byte holds the total degree and byte
//! `14 − s` the exponent of the `s`-th variable of the space. With variables
//! sorted in `Var` order, graded-lex comparison is plain integer comparison
//! and monomial multiplication is integer addition. Coefficients are `i128`.
//! Every operation returns `None` on degree or coefficient overflow so callers
//! can fall back to [`Polynomial`].

use std::collections::BTreeMap;

use super::linear::LinearForm;
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::scalar::Scalar;
use super::var::Var;

pub(crate) const MAX_VARS: usize = 15;
const DEGREE_SHIFT: u32 = 120;

#[derive(Clone, Debug)]
pub(crate) struct DenseSpace {
    vars: Vec<Var>,
}

/// `c₀ + Σ cₛ·x_s` with integer coefficients, as packed unit keys.
#[derive(Clone, Debug)]
pub(crate) struct DenseLinear {
    constant: i128,
    coeffs: Vec<(usize, u128, i128)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct DensePoly {
    terms: Vec<(u128, i128)>,
}

fn unit(slot: usize) -> u128 {
    (1u128 << DEGREE_SHIFT) | (1u128 << (8 * (14 - slot)))
}

fn exponent(key: u128, slot: usize) -> u32 {
    ((key >> (8 * (14 - slot))) & 0xff) as u32
}

fn degree(key: u128) -> u32 {
    (key >> DEGREE_SHIFT) as u32
}

fn small_int(c: &Scalar) -> Option<i128> {
    if !c.is_integer() {
        return None;
    }
    i128::try_from(c.numer()).ok()
}

impl DenseSpace {
    pub(crate) fn new(mut vars: Vec<Var>) -> Option<Self> {
        vars.sort();
        vars.dedup();
        (vars.len() <= MAX_VARS).then_some(DenseSpace { vars })
    }

    fn slot(&self, v: Var) -> Option<usize> {
        self.vars.binary_search(&v).ok()
    }

    pub(crate) fn linear(&self, f: &LinearForm) -> Option<DenseLinear> {
        let constant = small_int(f.constant())?;
        let coeffs = f
            .coeffs()
            .iter()
            .map(|(v, c)| {
                let s = self.slot(*v)?;
                Some((s, unit(s), small_int(c)?))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(DenseLinear { constant, coeffs })
    }

    /// Slot permutation induced by a variable renaming that maps the space
    /// onto itself.
    pub(crate) fn permutation(&self, map: &BTreeMap<Var, Var>) -> Option<Vec<usize>> {
        self.vars
            .iter()
            .map(|v| self.slot(*map.get(v).unwrap_or(v)))
            .collect()
    }

    pub(crate) fn to_polynomial(&self, p: &DensePoly) -> Polynomial {
        Polynomial::from_sorted_unchecked(
            p.terms
                .iter()
                .map(|&(key, c)| {
                    let m = Monomial::from_pairs(
                        (0..self.vars.len()).map(|s| (self.vars[s], exponent(key, s))),
                    );
                    let c = i64::try_from(c)
                        .map(Scalar::from_int)
                        .unwrap_or_else(|_| c.to_string().parse().expect("integer literal"));
                    (m, c)
                })
                .collect(),
        )
    }

    #[cfg(test)]
    pub(crate) fn from_polynomial(&self, p: &Polynomial) -> Option<DensePoly> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let mut key = 0u128;
            for (v, e) in m.factors() {
                let s = self.slot(v)?;
                if e > 255 {
                    return None;
                }
                key += (e as u128) * (1u128 << (8 * (14 - s)));
            }
            if m.degree() > 255 {
                return None;
            }
            key |= (m.degree() as u128) << DEGREE_SHIFT;
            terms.push((key, small_int(c)?));
        }
        Some(DensePoly { terms })
    }
}

impl DensePoly {
    pub(crate) fn constant(c: i128) -> Self {
        if c == 0 {
            DensePoly::default()
        } else {
            DensePoly {
                terms: vec![(0, c)],
            }
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn max_degree(&self) -> u32 {
        self.terms.first().map_or(0, |&(k, _)| degree(k))
    }

    pub(crate) fn scale(&self, c: i128) -> Option<DensePoly> {
        if c == 0 {
            return Some(DensePoly::default());
        }
        let terms = self
            .terms
            .iter()
            .map(|&(k, a)| Some((k, a.checked_mul(c)?)))
            .collect::<Option<Vec<_>>>()?;
        Some(DensePoly { terms })
    }

    /// `self + sign·other`, both sorted descending.
    pub(crate) fn add_signed(&self, other: &DensePoly, sign: i128) -> Option<DensePoly> {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ka, ca) = a[i];
            let (kb, cb) = b[j];
            if ka > kb {
                out.push((ka, ca));
                i += 1;
            } else if ka < kb {
                out.push((kb, cb.checked_mul(sign)?));
                j += 1;
            } else {
                let c = ca.checked_add(cb.checked_mul(sign)?)?;
                if c != 0 {
                    out.push((ka, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        for &(k, c) in &b[j..] {
            out.push((k, c.checked_mul(sign)?));
        }
        Some(DensePoly { terms: out })
    }

    pub(crate) fn mul_linear(&self, f: &DenseLinear) -> Option<DensePoly> {
        if !f.coeffs.is_empty() && self.max_degree() >= 255 {
            return None;
        }
        let mut acc = self.scale(f.constant)?;
        for &(_, u, c) in &f.coeffs {
            let shifted = DensePoly {
                terms: self
                    .terms
                    .iter()
                    .map(|&(k, a)| Some((k + u, a.checked_mul(c)?)))
                    .collect::<Option<Vec<_>>>()?,
            };
            acc = acc.add_signed(&shifted, 1)?;
        }
        Some(acc)
    }

    pub(crate) fn permute(&self, perm: &[usize]) -> DensePoly {
        let mut terms: Vec<(u128, i128)> = self
            .terms
            .iter()
            .map(|&(k, c)| {
                let mut nk = k & (0xffu128 << DEGREE_SHIFT);
                for (s, &t) in perm.iter().enumerate() {
                    nk |= (exponent(k, s) as u128) << (8 * (14 - t));
                }
                (nk, c)
            })
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        DensePoly { terms }
    }

    /// Exact division by a linear form whose leading coefficient is `±1`.
    /// `Some(Err(remainder))` when not divisible; `None` on overflow or an
    /// unsupported divisor.
    pub(crate) fn divide_linear(&self, f: &DenseLinear) -> Option<Result<DensePoly, DensePoly>> {
        let &(x, ux, lead) = f.coeffs.first()?;
        if lead != 1 && lead != -1 {
            return None;
        }
        // f = lead·(x + g)
        let g = DenseLinear {
            constant: f.constant * lead,
            coeffs: f.coeffs[1..]
                .iter()
                .map(|&(s, u, c)| (s, u, c * lead))
                .collect(),
        };
        let mut by_power: BTreeMap<u32, Vec<(u128, i128)>> = BTreeMap::new();
        for &(k, c) in &self.terms {
            let e = exponent(k, x);
            by_power
                .entry(e)
                .or_default()
                .push((k - (e as u128) * ux, c));
        }
        let top = by_power.keys().next_back().copied().unwrap_or(0);
        let take = |e: u32| DensePoly {
            terms: by_power.get(&e).cloned().unwrap_or_default(),
        };
        let mut carry = DensePoly::default();
        let mut quotient: Vec<(u128, i128)> = Vec::new();
        for e in (1..=top).rev() {
            carry = take(e).add_signed(&carry.mul_linear(&g)?, -1)?;
            let shift = ((e - 1) as u128) * ux;
            quotient.extend(carry.terms.iter().map(|&(k, c)| (k + shift, c * lead)));
        }
        let remainder = take(0).add_signed(&carry.mul_linear(&g)?, -1)?;
        if !remainder.is_zero() {
            return Some(Err(remainder));
        }
        quotient.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Some(Ok(DensePoly { terms: quotient }))
    }
}
