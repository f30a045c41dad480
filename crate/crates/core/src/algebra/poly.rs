use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use super::linear::LinearForm;
use super::monomial::{Monomial, VarRenaming};
use super::scalar::Scalar;
use super::var::Var;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted by descending graded-lex monomial order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn var(v: Var) -> Self {
        Polynomial {
            terms: vec![(Monomial::var(v), Scalar::one())],
        }
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    /// Collects arbitrary `(monomial, coefficient)` pairs, combining repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += &c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Scalar>) -> Self {
        let mut terms: Vec<(Monomial, Scalar)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { terms }
    }

    /// Terms already sorted descending with distinct monomials and nonzero
    /// coefficients.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Returns the value if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(k, _)| m.cmp(k))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Every variable that occurs, ascending in `Var` order.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.iter().flat_map(|(m, _)| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn is_z_only(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.vars().all(Var::is_z))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// The sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.terms.iter().all(|(m, _)| m.degree() == d),
        }
    }

    /// Image under the ring homomorphism fixing constants and sending each
    /// mapped variable to its image; unmapped variables pass through.
    pub fn substitute(&self, map: &BTreeMap<Var, Polynomial>) -> Polynomial {
        let mut powers: HashMap<(Var, u32), Polynomial> = HashMap::new();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut image = Polynomial::constant(c.clone());
            for (v, e) in m.factors() {
                match map.get(&v) {
                    Some(target) => {
                        let p = powers.entry((v, e)).or_insert_with(|| target.pow(e));
                        image = &image * &*p;
                    }
                    None => kept.push((v, e)),
                }
            }
            let kept = Monomial::from_pairs(kept);
            for (m2, c2) in image.terms {
                *acc.entry(m2.mul(&kept)).or_default() += &c2;
            }
        }
        Self::from_map(acc)
    }

    /// Evaluates at a point; variables missing from `point` are treated as 0.
    pub fn evaluate(&self, point: &BTreeMap<Var, Scalar>) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.factors() {
                match point.get(&v) {
                    Some(x) => term *= &x.pow(e),
                    None => {
                        term = Scalar::zero();
                        break;
                    }
                }
            }
            acc += &term;
        }
        acc
    }

    /// Groups the terms by exponent of `v`: `self = Σ_e coeffs[e] · v^e`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<u32, Polynomial> {
        let mut groups: BTreeMap<u32, Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            groups.entry(e).or_default().push((rest, c.clone()));
        }
        groups
            .into_iter()
            .map(|(e, mut ts)| {
                // removing a fixed variable from every monomial keeps them distinct
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                (e, Polynomial { terms: ts })
            })
            .collect()
    }

    /// Product with an affine-linear form, computed as a merge of shifted
    /// copies of `self` (monomial orders are multiplicative, so each copy
    /// stays sorted).
    pub fn mul_linear(&self, f: &LinearForm) -> Polynomial {
        let mut acc = self.scale(f.constant());
        for (v, c) in f.coeffs() {
            let shifted = Polynomial {
                terms: self
                    .terms
                    .iter()
                    .map(|(m, a)| (m.mul_var(*v), a * c))
                    .collect(),
            };
            acc = acc.merge(&shifted, false);
        }
        acc
    }

    /// Applies an injective renaming of variables.
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Polynomial {
        let prepared = VarRenaming::new(map);
        let mut terms: Vec<(Monomial, Scalar)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.rename_with(&prepared), c.clone()))
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let before = terms.len();
        terms.dedup_by(|a, b| a.0 == b.0);
        assert_eq!(before, terms.len(), "rename must be injective");
        Polynomial { terms }
    }

    /// Replaces variables by variables; unlike [`Polynomial::rename`] the map
    /// may identify variables, and like terms are collected.
    pub fn substitute_vars(&self, map: &BTreeMap<Var, Var>) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let image =
                Monomial::from_pairs(m.factors().map(|(v, e)| (*map.get(&v).unwrap_or(&v), e)));
            (image, c.clone())
        }))
    }

    /// Multiplies by `v^e`.
    pub fn mul_var_pow(&self, v: Var, e: u32) -> Polynomial {
        if e == 0 {
            return self.clone();
        }
        let shift = Monomial::from_pairs([(v, e)]);
        let mut terms: Vec<(Monomial, Scalar)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&shift), c.clone()))
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { terms }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &Scalar| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), rhs(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &rhs(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        Polynomial { terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += &(ca * cb);
            }
        }
        Self::from_map(acc)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.product(rhs)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(Scalar::from_int(c))
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |a, b| &a * &b)
    }
}
