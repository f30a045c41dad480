use std::collections::BTreeMap;
use std::fmt;

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::scalar::Scalar;
use super::var::Var;
use crate::error::AlgebraError;

/// Affine-linear form `c₀ + Σ cᵥ·v`.
///
/// Coefficients are sorted by variable with no zeros. A form may be a bare
/// nonzero constant (a unit); it is never identically zero once it has passed
/// through [`LinearForm::new`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<(Var, Scalar)>,
    constant: Scalar,
}

impl LinearForm {
    pub fn new<I: IntoIterator<Item = (Var, Scalar)>>(
        constant: Scalar,
        coeffs: I,
    ) -> Result<Self, AlgebraError> {
        let f = Self::build(constant, coeffs);
        if f.is_zero() {
            Err(AlgebraError::ZeroLinearForm)
        } else {
            Ok(f)
        }
    }

    /// Like [`LinearForm::new`] but allows the zero form; callers must check
    /// [`LinearForm::is_zero`] before using it as a divisor.
    pub fn build<I: IntoIterator<Item = (Var, Scalar)>>(constant: Scalar, coeffs: I) -> Self {
        let mut acc: BTreeMap<Var, Scalar> = BTreeMap::new();
        for (v, c) in coeffs {
            *acc.entry(v).or_default() += &c;
        }
        LinearForm {
            coeffs: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            constant,
        }
    }

    /// `shift + plus − minus`, the shape of every factor in a weight function.
    pub fn difference(shift: i64, plus: Var, minus: Var) -> Self {
        Self::build(
            Scalar::from_int(shift),
            [(plus, Scalar::one()), (minus, Scalar::from_int(-1))],
        )
    }

    pub fn one() -> Self {
        LinearForm {
            coeffs: Vec::new(),
            constant: Scalar::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant(&self) -> &Scalar {
        &self.constant
    }

    pub fn coeffs(&self) -> &[(Var, Scalar)] {
        &self.coeffs
    }

    /// Leading variable: the first in `Var` order with a nonzero coefficient.
    pub fn leading(&self) -> Option<(Var, &Scalar)> {
        self.coeffs.first().map(|(v, c)| (*v, c))
    }

    /// Splits off the scalar that makes the leading coefficient `+1` (or the
    /// constant `1` for a unit). Returns `(scale, monic)` with
    /// `self = scale · monic`.
    pub fn normalize(&self) -> (Scalar, LinearForm) {
        let lead = match self.leading() {
            Some((_, c)) => c.clone(),
            None => self.constant.clone(),
        };
        if lead.is_one() || lead.is_zero() {
            return (Scalar::one(), self.clone());
        }
        let inv = lead.recip();
        let monic = LinearForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (*v, c * &inv)).collect(),
            constant: &self.constant * &inv,
        };
        (lead, monic)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(
            self.coeffs
                .iter()
                .map(|(v, c)| (Monomial::var(*v), c.clone()))
                .chain(std::iter::once((Monomial::one(), self.constant.clone()))),
        )
    }

    /// Substitutes variables by other linear forms (variables not in the map
    /// pass through).
    pub fn substitute(&self, map: &BTreeMap<Var, LinearForm>) -> LinearForm {
        let mut constant = self.constant.clone();
        let mut coeffs: Vec<(Var, Scalar)> = Vec::new();
        for (v, c) in &self.coeffs {
            match map.get(v) {
                Some(img) => {
                    constant += &(c * &img.constant);
                    coeffs.extend(img.coeffs.iter().map(|(w, d)| (*w, c * d)));
                }
                None => coeffs.push((*v, c.clone())),
            }
        }
        LinearForm::build(constant, coeffs)
    }

    /// Renames variables (a substitution by single variables).
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> LinearForm {
        LinearForm::build(
            self.constant.clone(),
            self.coeffs
                .iter()
                .map(|(v, c)| (*map.get(v).unwrap_or(v), c.clone())),
        )
    }

    pub fn evaluate(&self, point: &BTreeMap<Var, Scalar>) -> Scalar {
        let mut acc = self.constant.clone();
        for (v, c) in &self.coeffs {
            if let Some(x) = point.get(v) {
                acc += &(c * x);
            }
        }
        acc
    }

    pub fn latex(&self) -> String {
        super::text::latex_poly(&self.to_polynomial())
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Exact quotient `p / f`, or `NotDivisible` carrying the remainder.
///
/// Synthetic division in the leading variable `x` of `f`: write
/// `f = c·(x + g)` with `g` free of `x`, run Horner's scheme on the
/// coefficients of `p` in `x`; the remainder is `p(x = −g)`.
pub fn divide_exact(p: &Polynomial, f: &LinearForm) -> Result<Polynomial, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroLinearForm);
    }
    if p.is_zero() {
        return Ok(Polynomial::zero());
    }
    let (scale, monic) = f.normalize();
    let inv = scale.recip();
    let Some((x, _)) = monic.leading() else {
        // unit divisor
        return Ok(p.scale(&inv));
    };
    let g = LinearForm {
        coeffs: monic.coeffs[1..].to_vec(),
        constant: monic.constant.clone(),
    };

    let by_power = p.coefficients_in(x);
    let top = *by_power.keys().next_back().unwrap();
    // carry holds q_{e-1} while walking e = top..=1
    let mut carry = Polynomial::zero();
    let mut quotient_parts: Vec<(u32, Polynomial)> = Vec::with_capacity(top as usize);
    for e in (1..=top).rev() {
        let pe = by_power.get(&e).cloned().unwrap_or_default();
        carry = &pe - &carry.mul_linear(&g);
        quotient_parts.push((e - 1, carry.clone()));
    }
    let p0 = by_power.get(&0).cloned().unwrap_or_default();
    let remainder = &p0 - &carry.mul_linear(&g);
    if !remainder.is_zero() {
        return Err(AlgebraError::NotDivisible {
            divisor: f.to_string(),
            remainder,
        });
    }
    let quotient: Polynomial = quotient_parts
        .into_iter()
        .map(|(e, c)| c.mul_var_pow(x, e))
        .sum();
    Ok(quotient.scale(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize) -> Polynomial {
        Polynomial::var(Var::z(i))
    }

    #[test]
    fn normalize_pushes_sign_out() {
        let f = LinearForm::difference(0, Var::t(2, 2), Var::t(2, 1));
        let (s, m) = f.normalize();
        assert_eq!(s, Scalar::from_int(-1));
        assert_eq!(m, LinearForm::difference(0, Var::t(2, 1), Var::t(2, 2)));
        let unit = LinearForm::new(Scalar::from_int(3), []).unwrap();
        assert_eq!(unit.normalize(), (Scalar::from_int(3), LinearForm::one()));
    }

    #[test]
    fn zero_form_rejected() {
        assert!(LinearForm::new(Scalar::zero(), [(Var::z(1), Scalar::zero())]).is_err());
        assert!(LinearForm::difference(0, Var::z(1), Var::z(1)).is_zero());
    }

    #[test]
    fn divide_difference_of_squares() {
        let p = &(&z(1) * &z(1)) - &(&z(2) * &z(2));
        let f = LinearForm::difference(0, Var::z(1), Var::z(2));
        assert_eq!(divide_exact(&p, &f).unwrap(), &z(1) + &z(2));
    }

    #[test]
    fn divide_zero() {
        let f = LinearForm::difference(1, Var::z(1), Var::z(2));
        assert!(divide_exact(&Polynomial::zero(), &f).unwrap().is_zero());
    }

    #[test]
    fn not_divisible_carries_remainder() {
        // (z1+z2) mod (1+z1-z2): z1 -> z2-1 gives remainder 2 z2 - 1
        let f = LinearForm::difference(1, Var::z(1), Var::z(2));
        match divide_exact(&(&z(1) + &z(2)), &f) {
            Err(AlgebraError::NotDivisible { remainder, .. }) => {
                assert_eq!(
                    remainder,
                    &z(2).scale(&Scalar::from_int(2)) - &Polynomial::one()
                );
            }
            other => panic!("expected NotDivisible, got {other:?}"),
        }
    }

    #[test]
    fn divide_by_scaled_form() {
        // (2 z1 - 4 z2)(z3 + 1) / (2 z1 - 4 z2) where the form is not monic
        let f = LinearForm::new(
            Scalar::zero(),
            [
                (Var::z(1), Scalar::from_int(2)),
                (Var::z(2), Scalar::from_int(-4)),
            ],
        )
        .unwrap();
        let q = &z(3) + &Polynomial::one();
        let p = &f.to_polynomial() * &q;
        assert_eq!(divide_exact(&p, &f).unwrap(), q);
    }

    #[test]
    fn substitute_linear() {
        let f = LinearForm::difference(1, Var::z(2), Var::t(1, 1));
        let map: BTreeMap<_, _> = [(
            Var::t(1, 1),
            LinearForm::build(Scalar::zero(), [(Var::z(2), Scalar::one())]),
        )]
        .into();
        assert_eq!(f.substitute(&map), LinearForm::one());
    }
}
