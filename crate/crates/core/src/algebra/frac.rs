use std::collections::BTreeMap;
use std::fmt;

use super::linear::{divide_exact, LinearForm};
use super::poly::Polynomial;
use super::scalar::Scalar;
use super::var::Var;
use crate::error::AlgebraError;

/// Rational function `numerator / Π formᵢ^mᵢ` with the denominator kept as a
/// multiset of monic linear forms.
///
/// Construction normalizes every denominator form (leading coefficient `+1`)
/// and pushes the scalars into the numerator; constant forms disappear.
#[derive(Clone, PartialEq, Eq)]
pub struct FactoredRational {
    numerator: Polynomial,
    denominator: BTreeMap<LinearForm, u32>,
}

impl FactoredRational {
    pub fn new<I>(numerator: Polynomial, denominator: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (LinearForm, u32)>,
    {
        let mut num_scale = Scalar::one();
        let mut den: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (form, mult) in denominator {
            if form.is_zero() {
                return Err(AlgebraError::ZeroLinearForm);
            }
            if mult == 0 {
                continue;
            }
            let (s, monic) = form.normalize();
            num_scale *= &s.pow(mult);
            if !monic.is_constant() {
                *den.entry(monic).or_insert(0) += mult;
            }
        }
        let numerator = numerator.scale(&num_scale.recip());
        Ok(Self::normalized(numerator, den))
    }

    fn normalized(numerator: Polynomial, denominator: BTreeMap<LinearForm, u32>) -> Self {
        if numerator.is_zero() {
            return FactoredRational::zero();
        }
        FactoredRational {
            numerator,
            denominator,
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        FactoredRational {
            numerator: p,
            denominator: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    /// Builds `c · Π num / Π den` from linear factors, cancelling equal
    /// (normalized) forms before expanding the numerator.
    pub fn from_factors(
        c: Scalar,
        numerator: &[LinearForm],
        denominator: &[LinearForm],
    ) -> Result<Self, AlgebraError> {
        let Some(cancelled) = CancelledFactors::new(c, numerator, denominator)? else {
            return Ok(FactoredRational::zero());
        };
        let mut num = Polynomial::constant(cancelled.scale);
        for form in &cancelled.numerator {
            num = num.mul_linear(form);
        }
        Ok(Self::normalized(num, cancelled.denominator))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    /// Denominator forms (monic) with multiplicities, in a fixed order.
    pub fn denominator(&self) -> &BTreeMap<LinearForm, u32> {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn denominator_polynomial(&self) -> Polynomial {
        self.denominator
            .iter()
            .map(|(f, m)| f.to_polynomial().pow(*m))
            .product()
    }

    /// Sum over the least common denominator (multiset union taking maximal
    /// multiplicities), followed by [`FactoredRational::reduce`].
    pub fn add(&self, other: &FactoredRational) -> FactoredRational {
        self.add_unreduced(other).reduce()
    }

    /// Sum over the least common denominator without attempting cancellation.
    pub fn add_unreduced(&self, other: &FactoredRational) -> FactoredRational {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.denominator == other.denominator {
            return Self::normalized(&self.numerator + &other.numerator, self.denominator.clone());
        }
        let mut lcd = self.denominator.clone();
        for (f, m) in &other.denominator {
            let e = lcd.entry(f.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let lift = |a: &FactoredRational| -> Polynomial {
            let mut p = a.numerator.clone();
            for (f, m) in &lcd {
                let have = a.denominator.get(f).copied().unwrap_or(0);
                for _ in have..*m {
                    p = p.mul_linear(f);
                }
            }
            p
        };
        let numerator = &lift(self) + &lift(other);
        Self::normalized(numerator, lcd)
    }

    pub fn mul(&self, other: &FactoredRational) -> FactoredRational {
        let numerator = &self.numerator * &other.numerator;
        let mut den = self.denominator.clone();
        for (f, m) in &other.denominator {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        Self::normalized(numerator, den).reduce()
    }

    /// Divides by a product of linear forms.
    pub fn divide_by_forms(&self, forms: &[LinearForm]) -> Result<FactoredRational, AlgebraError> {
        let extra = FactoredRational::new(
            self.numerator.clone(),
            self.denominator
                .iter()
                .map(|(f, m)| (f.clone(), *m))
                .chain(forms.iter().map(|f| (f.clone(), 1))),
        )?;
        Ok(extra.reduce())
    }

    /// Cancels every denominator form that divides the numerator, as many
    /// times as it does.
    pub fn reduce(&self) -> FactoredRational {
        if self.is_zero() {
            return FactoredRational::zero();
        }
        let mut numerator = self.numerator.clone();
        let mut den = BTreeMap::new();
        for (form, &mult) in &self.denominator {
            let mut left = mult;
            while left > 0 {
                match divide_exact(&numerator, form) {
                    Ok(q) => {
                        numerator = q;
                        left -= 1;
                    }
                    Err(_) => break,
                }
            }
            if left > 0 {
                den.insert(form.clone(), left);
            }
        }
        Self::normalized(numerator, den)
    }

    /// The polynomial value, if the reduced denominator is trivial.
    pub fn to_polynomial(&self) -> Result<Polynomial, AlgebraError> {
        let r = self.reduce();
        if r.denominator.is_empty() {
            Ok(r.numerator)
        } else {
            Err(AlgebraError::NotPolynomial(r.to_string()))
        }
    }

    /// Value at a point, or `None` when a denominator form vanishes there.
    pub fn evaluate(&self, point: &BTreeMap<Var, Scalar>) -> Option<Scalar> {
        let mut den = Scalar::one();
        for (f, m) in &self.denominator {
            let v = f.evaluate(point);
            if v.is_zero() {
                return None;
            }
            den *= &v.pow(*m);
        }
        Some(&self.numerator.evaluate(point) / &den)
    }

    /// Applies an injective renaming of variables.
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Result<Self, AlgebraError> {
        let den: Vec<(LinearForm, u32)> = self
            .denominator
            .iter()
            .map(|(f, m)| (f.rename(map), *m))
            .collect();
        Self::new(self.numerator.rename(map), den)
    }

    pub fn substitute(&self, map: &BTreeMap<Var, LinearForm>) -> Result<Self, AlgebraError> {
        let pmap: BTreeMap<Var, Polynomial> =
            map.iter().map(|(v, f)| (*v, f.to_polynomial())).collect();
        let numerator = self.numerator.substitute(&pmap);
        let den: Vec<(LinearForm, u32)> = self
            .denominator
            .iter()
            .map(|(f, m)| (f.substitute(map), *m))
            .collect();
        Self::new(numerator, den)
    }

    pub fn latex(&self) -> String {
        let num = super::text::latex_poly(&self.numerator);
        if self.denominator.is_empty() {
            return num;
        }
        let den: Vec<String> = self
            .denominator
            .iter()
            .map(|(f, m)| {
                let base = format!("\\left({}\\right)", f.latex());
                if *m == 1 {
                    base
                } else {
                    format!("{base}^{{{m}}}")
                }
            })
            .collect();
        format!("\\frac{{{}}}{{{}}}", num, den.join(" "))
    }
}

/// `scale · Π numerator / Π denominator` with all forms monic and no form
/// on both sides.
#[derive(Clone, Debug)]
pub(crate) struct CancelledFactors {
    pub scale: Scalar,
    pub numerator: Vec<LinearForm>,
    pub denominator: BTreeMap<LinearForm, u32>,
}

impl CancelledFactors {
    /// `None` when a numerator factor is zero.
    pub(crate) fn new(
        c: Scalar,
        numerator: &[LinearForm],
        denominator: &[LinearForm],
    ) -> Result<Option<Self>, AlgebraError> {
        let mut scale = c;
        let mut count: BTreeMap<LinearForm, i64> = BTreeMap::new();
        for f in numerator {
            if f.is_zero() {
                return Ok(None);
            }
            let (s, m) = f.normalize();
            scale *= &s;
            if !m.is_constant() {
                *count.entry(m).or_insert(0) += 1;
            }
        }
        for f in denominator {
            if f.is_zero() {
                return Err(AlgebraError::ZeroLinearForm);
            }
            let (s, m) = f.normalize();
            scale = &scale / &s;
            if !m.is_constant() {
                *count.entry(m).or_insert(0) -= 1;
            }
        }
        if scale.is_zero() {
            return Ok(None);
        }
        let mut num = Vec::new();
        let mut den = BTreeMap::new();
        for (form, k) in count {
            if k > 0 {
                num.extend(std::iter::repeat_n(form, k as usize));
            } else if k < 0 {
                den.insert(form, (-k) as u32);
            }
        }
        Ok(Some(CancelledFactors {
            scale,
            numerator: num,
            denominator: den,
        }))
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({}) / (", self.numerator)?;
        for (idx, (form, m)) in self.denominator.iter().enumerate() {
            if idx > 0 {
                write!(f, " * ")?;
            }
            if *m == 1 {
                write!(f, "({form})")?;
            } else {
                write!(f, "({form})^{m}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize) -> Polynomial {
        Polynomial::var(Var::z(i))
    }

    fn diff(shift: i64, a: Var, b: Var) -> LinearForm {
        LinearForm::difference(shift, a, b)
    }

    #[test]
    fn antisymmetric_pair_cancels() {
        let (u, v, x) = (Var::z(1), Var::z(2), Polynomial::var(Var::z(3)));
        let a = FactoredRational::new(x.clone(), [(diff(0, u, v), 1)]).unwrap();
        let b = FactoredRational::new(x, [(diff(0, v, u), 1)]).unwrap();
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn rank_two_symmetrization_kernel() {
        // (1+v-u)/(v-u) + (1+u-v)/(u-v) = 2
        let (u, v) = (Var::t(2, 1), Var::t(2, 2));
        let a = FactoredRational::from_factors(Scalar::one(), &[diff(1, v, u)], &[diff(0, v, u)])
            .unwrap();
        let b = FactoredRational::from_factors(Scalar::one(), &[diff(1, u, v)], &[diff(0, u, v)])
            .unwrap();
        let s = a.add(&b);
        assert!(s.denominator().is_empty());
        assert_eq!(s.to_polynomial().unwrap(), Polynomial::from(2));
        assert_eq!(a.add(&FactoredRational::zero()), a);
    }

    #[test]
    fn reduce_cancels() {
        let p = &(&z(1) * &z(1)) - &(&z(2) * &z(2));
        let a = FactoredRational::new(p, [(diff(0, Var::z(1), Var::z(2)), 1)]).unwrap();
        let r = a.reduce();
        assert!(r.denominator().is_empty());
        assert_eq!(r.numerator(), &(&z(1) + &z(2)));

        let plain = FactoredRational::from_poly(z(3));
        assert_eq!(plain.reduce(), plain);

        let num = &diff(1, Var::z(1), Var::z(2)).to_polynomial()
            * &diff(0, Var::z(2), Var::z(1)).to_polynomial();
        let b = FactoredRational::new(num, [(diff(0, Var::z(2), Var::z(1)), 1)]).unwrap();
        assert_eq!(
            b.to_polynomial().unwrap(),
            diff(1, Var::z(1), Var::z(2)).to_polynomial()
        );
    }

    #[test]
    fn not_polynomial() {
        let a = FactoredRational::new(&z(1) + &z(2), [(diff(0, Var::z(1), Var::z(2)), 1)]).unwrap();
        assert!(matches!(
            a.to_polynomial(),
            Err(AlgebraError::NotPolynomial(_))
        ));
        assert_eq!(
            FactoredRational::from_poly(z(1)).to_polynomial().unwrap(),
            z(1)
        );
    }

    #[test]
    fn syntactic_cancellation_in_from_factors() {
        let f = diff(0, Var::z(2), Var::z(1));
        let g = diff(0, Var::z(1), Var::z(2));
        let a = FactoredRational::from_factors(Scalar::one(), &[f.clone()], &[g]).unwrap();
        assert_eq!(a.to_polynomial().unwrap(), Polynomial::from(-1));
        let zero =
            FactoredRational::from_factors(Scalar::one(), &[diff(0, Var::z(1), Var::z(1))], &[f])
                .unwrap();
        assert!(zero.is_zero());
    }
}
