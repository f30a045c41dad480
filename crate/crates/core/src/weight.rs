//! Weight functions `W_I`, the normalizing product `e_λ`, and the fixed-point
//! restrictions of the modified weight function `W_I / e_λ`.
//!
//! Terms of the symmetrization are produced two ways: directly from the
//! defining product with the variables permuted ([`Method::Sym`]), and from
//! filled tables by the above/below/same-column rules ([`Method::Tables`]).
//! The two generators share no code beyond the linear-form type.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::dense::{DensePoly, DenseSpace};
use crate::algebra::{CancelledFactors, FactoredRational, LinearForm, Polynomial, Scalar, Var};
use crate::error::{Error, Result};
use crate::flag::{next_permutation, IndexTuple, Shape};

/// Largest number of symmetrization terms accepted unless overridden.
pub const DEFAULT_TERM_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Sum over `S^(λ)` of the defining product with permuted variables.
    Sym,
    /// Sum over filled tables.
    Tables,
}

/// Variable of level `k`: `t^(k)_b` for `k < N`, `z_b` at the last level.
fn level_var(shape: &Shape, k: usize, b: usize) -> Var {
    if k == shape.len() {
        Var::z(b)
    } else {
        Var::t(k, b)
    }
}

/// Fails when the shape needs more symmetrization terms than `budget`.
pub fn check_budget(shape: &Shape, budget: u64) -> Result<()> {
    match shape.term_count() {
        Some(c) if c <= budget as u128 => Ok(()),
        other => Err(Error::BudgetExceeded {
            shape: shape.to_string(),
            terms: other.map_or_else(|| "more than 2^128".to_string(), |c| c.to_string()),
            budget,
        }),
    }
}

/// `ℓ^(k)_I(a, b)`: `1 + t^(k+1)_b − t^(k)_a` when `i^(k+1)_b < i^(k)_a`,
/// `t^(k+1)_b − t^(k)_a` when `i^(k+1)_b > i^(k)_a`, and the unit `1` when the
/// two indices coincide (same row of the table, no factor).
pub fn ell_factor(tuple: &IndexTuple, k: usize, a: usize, b: usize) -> Result<LinearForm> {
    let shape = tuple.shape();
    let big_n = shape.len();
    if k == 0 || k >= big_n {
        return Err(Error::IndexOutOfRange(format!("k = {k} not in 1..{big_n}")));
    }
    let lower = tuple.prefix(k);
    let upper = tuple.prefix(k + 1);
    if a == 0 || a > lower.len() || b == 0 || b > upper.len() {
        return Err(Error::IndexOutOfRange(format!(
            "(a, b) = ({a}, {b}) outside 1..={} × 1..={}",
            lower.len(),
            upper.len()
        )));
    }
    let (ia, ib) = (lower[a - 1], upper[b - 1]);
    let u = Var::t(k, a);
    let v = level_var(&shape, k + 1, b);
    Ok(match ib.cmp(&ia) {
        std::cmp::Ordering::Less => LinearForm::difference(1, v, u),
        std::cmp::Ordering::Greater => LinearForm::difference(0, v, u),
        std::cmp::Ordering::Equal => LinearForm::one(),
    })
}

/// Linear factors of `e_λ(t) = Π_k Π_{a,b} (1 + t^(k)_b − t^(k)_a)`, skipping
/// the unit diagonal `a = b`.
pub fn e_lambda_forms(shape: &Shape) -> Vec<LinearForm> {
    let mut out = Vec::new();
    for k in 1..shape.len() {
        let m = shape.prefix_size(k);
        for a in 1..=m {
            for b in 1..=m {
                if a != b {
                    out.push(LinearForm::difference(1, Var::t(k, b), Var::t(k, a)));
                }
            }
        }
    }
    out
}

pub fn e_lambda(shape: &Shape) -> Polynomial {
    e_lambda_forms(shape)
        .iter()
        .map(LinearForm::to_polynomial)
        .product()
}

/// A term of the symmetrization as unexpanded linear factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermFactors {
    pub numerator: Vec<LinearForm>,
    pub denominator: Vec<LinearForm>,
}

impl TermFactors {
    pub fn to_rational(&self) -> Result<FactoredRational> {
        Ok(FactoredRational::from_factors(
            Scalar::one(),
            &self.numerator,
            &self.denominator,
        )?)
    }

    fn rename(&self, map: &BTreeMap<Var, Var>) -> TermFactors {
        TermFactors {
            numerator: self.numerator.iter().map(|f| f.rename(map)).collect(),
            denominator: self.denominator.iter().map(|f| f.rename(map)).collect(),
        }
    }
}

/// Iterates `S_{λ^(1)} × … × S_{λ^(N−1)}` in lexicographic order, each
/// permutation as 0-based images of positions.
#[derive(Clone, Debug)]
pub struct SymGroupIter {
    current: Option<Vec<Vec<usize>>>,
}

impl SymGroupIter {
    pub fn new(shape: &Shape) -> Self {
        let groups = (1..shape.len())
            .map(|k| (0..shape.prefix_size(k)).collect())
            .collect();
        SymGroupIter {
            current: Some(groups),
        }
    }
}

impl Iterator for SymGroupIter {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        let out = self.current.clone()?;
        let mut state = self.current.take()?;
        let mut advanced = false;
        for g in (0..state.len()).rev() {
            if next_permutation(&mut state[g]) {
                advanced = true;
                break;
            }
            state[g].sort_unstable();
        }
        if advanced {
            self.current = Some(state);
        }
        Some(out)
    }
}

/// The unsymmetrized product of the definition, then its image under the
/// variable permutation `t^(k)_a ↦ t^(k)_{σ_k(a)}`.
pub fn sym_term_factors(tuple: &IndexTuple, sigma: &[Vec<usize>]) -> Result<TermFactors> {
    let shape = tuple.shape();
    let mut numerator = Vec::new();
    let mut denominator = Vec::new();
    for k in 1..shape.len() {
        let m = shape.prefix_size(k);
        for a in 1..=m {
            for b in 1..=shape.prefix_size(k + 1) {
                let f = ell_factor(tuple, k, a, b)?;
                if !f.is_constant() {
                    numerator.push(f);
                }
            }
        }
        for a in 1..=m {
            for b in a + 1..=m {
                numerator.push(LinearForm::difference(1, Var::t(k, b), Var::t(k, a)));
                denominator.push(LinearForm::difference(0, Var::t(k, b), Var::t(k, a)));
            }
        }
    }
    let unpermuted = TermFactors {
        numerator,
        denominator,
    };
    Ok(unpermuted.rename(&sigma_map(&shape, sigma)?))
}

fn sigma_map(shape: &Shape, sigma: &[Vec<usize>]) -> Result<BTreeMap<Var, Var>> {
    if sigma.len() + 1 != shape.len() {
        return Err(Error::IndexOutOfRange(format!(
            "{} permutations for {} t-groups",
            sigma.len(),
            shape.len() - 1
        )));
    }
    let mut map = BTreeMap::new();
    for (g, perm) in sigma.iter().enumerate() {
        let k = g + 1;
        check_permutation(perm, shape.prefix_size(k))?;
        for (a, &img) in perm.iter().enumerate() {
            map.insert(Var::t(k, a + 1), Var::t(k, img + 1));
        }
    }
    Ok(map)
}

fn check_permutation(perm: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    if perm.len() != m {
        return Err(Error::IndexOutOfRange(format!(
            "permutation of length {} for S_{m}",
            perm.len()
        )));
    }
    for &p in perm {
        if p >= m || seen[p] {
            return Err(Error::IndexOutOfRange(format!(
                "{perm:?} is not a permutation"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// A filled table: `n` rows, `N` columns; column `k < N` has its distinguished
/// boxes in rows `I^(k)` holding `t^(k)_{σ_k(1)}, …` from top to bottom, and
/// the last column holds `z_1, …, z_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableFilling {
    tuple: IndexTuple,
    perms: Vec<Vec<usize>>,
}

impl TableFilling {
    /// `perms[k-1]` is `σ_k` as 0-based images.
    pub fn new(tuple: IndexTuple, perms: Vec<Vec<usize>>) -> Result<Self> {
        sigma_map(&tuple.shape(), &perms)?;
        Ok(TableFilling { tuple, perms })
    }

    /// All fillings in lexicographic order of the permutation tuple.
    pub fn all(tuple: &IndexTuple) -> impl Iterator<Item = TableFilling> + '_ {
        SymGroupIter::new(&tuple.shape()).map(move |perms| TableFilling {
            tuple: tuple.clone(),
            perms,
        })
    }

    pub fn tuple(&self) -> &IndexTuple {
        &self.tuple
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn rows(&self) -> usize {
        self.tuple.n()
    }

    pub fn columns(&self) -> usize {
        self.tuple.blocks().len()
    }

    /// `(row, variable)` pairs of column `k` (1-based), top to bottom.
    pub fn column(&self, k: usize) -> Vec<(usize, Var)> {
        if k == self.columns() {
            return (1..=self.rows()).map(|i| (i, Var::z(i))).collect();
        }
        self.tuple
            .prefix(k)
            .into_iter()
            .enumerate()
            .map(|(pos, row)| (row, Var::t(k, self.perms[k - 1][pos] + 1)))
            .collect()
    }

    /// Variable in box `(row, column)`, if the box is distinguished.
    pub fn cell(&self, row: usize, k: usize) -> Option<Var> {
        self.column(k)
            .into_iter()
            .find(|&(r, _)| r == row)
            .map(|(_, v)| v)
    }

    /// Type-1/2/3 factors as `(type, v, u)`: for each variable `u` of
    /// columns `1..N−1`, type 1 for `v` in the next column above `u`, type 2
    /// for `v` in the next column below `u`, type 3 for `v` below `u` in its
    /// own column. Ordered by `u` (column, then row), then by `v`.
    pub fn typed_factors(&self) -> Vec<(FactorType, Var, Var)> {
        let mut out = Vec::new();
        for k in 1..self.columns() {
            let here = self.column(k);
            let next = self.column(k + 1);
            for (idx, &(row, u)) in here.iter().enumerate() {
                for &(r, v) in &next {
                    if r < row {
                        out.push((FactorType::Above, v, u));
                    } else if r > row {
                        out.push((FactorType::Below, v, u));
                    }
                }
                for &(_, v) in &here[idx + 1..] {
                    out.push((FactorType::SameColumn, v, u));
                }
            }
        }
        out
    }

    /// `1+v−u`, `v−u` and `(1+v−u)/(v−u)` for the three factor types.
    pub fn factors(&self) -> TermFactors {
        let mut numerator = Vec::new();
        let mut denominator = Vec::new();
        for (ty, v, u) in self.typed_factors() {
            match ty {
                FactorType::Above => numerator.push(LinearForm::difference(1, v, u)),
                FactorType::Below => numerator.push(LinearForm::difference(0, v, u)),
                FactorType::SameColumn => {
                    numerator.push(LinearForm::difference(1, v, u));
                    denominator.push(LinearForm::difference(0, v, u));
                }
            }
        }
        TermFactors {
            numerator,
            denominator,
        }
    }
}

/// Kinds of factor read off a filled table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorType {
    /// Type 1: `v` in the next column, above `u`.
    Above,
    /// Type 2: `v` in the next column, below `u`.
    Below,
    /// Type 3: `v` in the same column, below `u`.
    SameColumn,
}

/// The term associated with a filled table.
pub fn term_for_filling(filling: &TableFilling) -> Result<FactoredRational> {
    filling.factors().to_rational()
}

/// `W_I` as an expanded polynomial in `t` and `z`.
///
/// `Sym` expands the bracket of the definition once and sums its images under
/// the variable permutations; `Tables` expands the term of every filled table
/// separately.
pub fn weight_function(tuple: &IndexTuple, method: Method, budget: u64) -> Result<Polynomial> {
    check_budget(&tuple.shape(), budget)?;
    if let Some(w) = dense_weight_function(tuple, method)? {
        return Ok(w);
    }
    generic_weight_function(tuple, method)
}

fn identity_perms(shape: &Shape) -> Vec<Vec<usize>> {
    (1..shape.len())
        .map(|k| (0..shape.prefix_size(k)).collect())
        .collect()
}

pub(crate) fn generic_weight_function(tuple: &IndexTuple, method: Method) -> Result<Polynomial> {
    let shape = tuple.shape();
    let mut acc = FactoredRational::zero();
    match method {
        Method::Sym => {
            let bracket = sym_term_factors(tuple, &identity_perms(&shape))?.to_rational()?;
            for sigma in SymGroupIter::new(&shape) {
                let term = bracket.rename(&sigma_map(&shape, &sigma)?)?;
                acc = acc.add_unreduced(&term);
            }
        }
        Method::Tables => {
            for filling in TableFilling::all(tuple) {
                acc = acc.add_unreduced(&term_for_filling(&filling)?);
            }
        }
    }
    Ok(acc.to_polynomial()?)
}

/// Packed-kernel evaluation of [`weight_function`]. `Ok(None)` when the
/// kernel does not apply (too many variables, coefficient overflow, terms
/// with differing denominators); the caller then takes the generic path.
pub(crate) fn dense_weight_function(
    tuple: &IndexTuple,
    method: Method,
) -> Result<Option<Polynomial>> {
    let shape = tuple.shape();
    let mut vars = shape.t_vars();
    vars.extend((1..=shape.n()).map(Var::z));
    let Some(space) = DenseSpace::new(vars) else {
        return Ok(None);
    };
    let expand = |c: &CancelledFactors| -> Option<DensePoly> {
        let mut p = DensePoly::constant(small(&c.scale)?);
        for f in &c.numerator {
            p = p.mul_linear(&space.linear(f)?)?;
        }
        Some(p)
    };
    let mut common: Option<BTreeMap<LinearForm, u32>> = None;
    let mut sum = DensePoly::default();
    let mut accumulate = |den: &BTreeMap<LinearForm, u32>, p: &DensePoly| -> Option<()> {
        match &common {
            None => common = Some(den.clone()),
            Some(d) if d == den => {}
            Some(_) => return None,
        }
        sum = sum.add_signed(p, 1)?;
        Some(())
    };
    match method {
        Method::Sym => {
            let t = sym_term_factors(tuple, &identity_perms(&shape))?;
            let Some(bracket) = CancelledFactors::new(Scalar::one(), &t.numerator, &t.denominator)?
            else {
                return Ok(Some(Polynomial::zero()));
            };
            let Some(expanded) = expand(&bracket) else {
                return Ok(None);
            };
            for sigma in SymGroupIter::new(&shape) {
                let map = sigma_map(&shape, &sigma)?;
                let Some(perm) = space.permutation(&map) else {
                    return Ok(None);
                };
                // renamed denominator, re-normalized; the sign goes to the numerator
                let mut sign = Scalar::one();
                let mut den = BTreeMap::new();
                for (f, m) in &bracket.denominator {
                    let (s, monic) = f.rename(&map).normalize();
                    sign *= &s.pow(*m);
                    *den.entry(monic).or_insert(0) += m;
                }
                let Some(sign) = small(&sign) else {
                    return Ok(None);
                };
                let Some(term) = expanded.permute(&perm).scale(sign) else {
                    return Ok(None);
                };
                if accumulate(&den, &term).is_none() {
                    return Ok(None);
                }
            }
        }
        Method::Tables => {
            for filling in TableFilling::all(tuple) {
                let t = filling.factors();
                let Some(c) = CancelledFactors::new(Scalar::one(), &t.numerator, &t.denominator)?
                else {
                    continue;
                };
                let Some(term) = expand(&c) else {
                    return Ok(None);
                };
                if accumulate(&c.denominator, &term).is_none() {
                    return Ok(None);
                }
            }
        }
    }
    let mut value = sum;
    for (f, m) in common.unwrap_or_default() {
        let Some(df) = space.linear(&f) else {
            return Ok(None);
        };
        for _ in 0..m {
            match value.divide_linear(&df) {
                Some(Ok(q)) => value = q,
                // let the generic path report the failure
                _ => return Ok(None),
            }
        }
    }
    Ok(Some(space.to_polynomial(&value)))
}

fn small(c: &Scalar) -> Option<i128> {
    if c.is_integer() {
        i128::try_from(c.numer()).ok()
    } else {
        None
    }
}

/// `W̃_I = W_I / e_λ`.
pub fn modified_weight_function(tuple: &IndexTuple, budget: u64) -> Result<FactoredRational> {
    let w = weight_function(tuple, Method::Sym, budget)?;
    Ok(FactoredRational::from_poly(w).divide_by_forms(&e_lambda_forms(&tuple.shape()))?)
}

/// `t^(k)_a ↦ z_{j^(k)_a}` with `J^(k)` sorted ascending.
pub fn fixed_point_assignment(j: &IndexTuple) -> BTreeMap<Var, Var> {
    let shape = j.shape();
    let mut map = BTreeMap::new();
    for k in 1..shape.len() {
        for (a, z) in j.prefix(k).into_iter().enumerate() {
            map.insert(Var::t(k, a + 1), Var::z(z));
        }
    }
    map
}

fn same_shape(i: &IndexTuple, j: &IndexTuple) -> Result<Shape> {
    let shape = i.shape();
    j.ensure_shape(&shape)?;
    Ok(shape)
}

/// `κ_I|_{x_J}`: every symmetrization term is evaluated at the fixed point
/// `x_J` as a rational function of `z`, the terms are summed in enumeration
/// order, and the sum is divided by `e_λ` at `x_J`.
pub fn restriction(i: &IndexTuple, j: &IndexTuple, budget: u64) -> Result<Polynomial> {
    let shape = same_shape(i, j)?;
    check_budget(&shape, budget)?;
    let assign = fixed_point_assignment(j);
    let terms = surviving_terms(i, &shape, &assign)?;
    if terms.is_empty() {
        return Ok(Polynomial::zero());
    }
    if let Some(p) = dense_restriction(&terms, &shape, &assign) {
        return Ok(p);
    }
    generic_restriction(&terms, &shape, &assign)
}

/// Terms of the symmetrization at the fixed point, cancelled, with the ones
/// that vanish there dropped. A term vanishes exactly when one of its
/// constant-free factors `t^(k+1)_b − t^(k)_a` lands on `z_x − z_x`, which is
/// decided on indices before any form is built.
fn surviving_terms(
    i: &IndexTuple,
    shape: &Shape,
    assign: &BTreeMap<Var, Var>,
) -> Result<Vec<CancelledFactors>> {
    let big_n = shape.len();
    let bracket = sym_term_factors(i, &identity_perms(shape))?;
    let mut vanishing_pairs = Vec::new();
    for k in 1..big_n {
        let (lower, upper) = (i.prefix(k), i.prefix(k + 1));
        for (a, ia) in lower.iter().enumerate() {
            for (b, ib) in upper.iter().enumerate() {
                if ib > ia {
                    vanishing_pairs.push((k, a, b));
                }
            }
        }
    }
    // z index of t^(k)_{a+1} under the assignment, for the identity σ
    let z_at = |k: usize, pos: usize| -> usize {
        if k == big_n {
            pos + 1
        } else {
            match assign[&Var::t(k, pos + 1)] {
                Var::Z(z) => z as usize,
                Var::T(..) => unreachable!("assignment maps into z"),
            }
        }
    };
    let mut out = Vec::new();
    for sigma in SymGroupIter::new(shape) {
        let image = |k: usize, pos: usize| {
            if k == big_n {
                z_at(k, pos)
            } else {
                z_at(k, sigma[k - 1][pos])
            }
        };
        if vanishing_pairs
            .iter()
            .any(|&(k, a, b)| image(k + 1, b) == image(k, a))
        {
            continue;
        }
        let mut map = BTreeMap::new();
        for k in 1..big_n {
            for pos in 0..shape.prefix_size(k) {
                map.insert(Var::t(k, pos + 1), Var::z(image(k, pos)));
            }
        }
        let term = bracket.rename(&map);
        if let Some(c) = CancelledFactors::new(Scalar::one(), &term.numerator, &term.denominator)? {
            out.push(c);
        }
    }
    Ok(out)
}

fn substituted_e_lambda(shape: &Shape, assign: &BTreeMap<Var, Var>) -> Vec<LinearForm> {
    e_lambda_forms(shape)
        .iter()
        .map(|f| f.rename(assign))
        .collect()
}

pub(crate) fn generic_restriction(
    terms: &[CancelledFactors],
    shape: &Shape,
    assign: &BTreeMap<Var, Var>,
) -> Result<Polynomial> {
    let mut acc = FactoredRational::zero();
    for t in terms {
        let mut num = Polynomial::constant(t.scale.clone());
        for f in &t.numerator {
            num = num.mul_linear(f);
        }
        let den: Vec<LinearForm> = t
            .denominator
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.clone(), *m as usize))
            .collect();
        acc = acc.add_unreduced(&FactoredRational::from_poly(num).divide_by_forms(&den)?);
    }
    Ok(acc
        .divide_by_forms(&substituted_e_lambda(shape, assign))?
        .to_polynomial()?)
}

/// Packed-kernel restriction over the least common denominator of the
/// surviving terms. `None` sends the caller to the generic path.
pub(crate) fn dense_restriction(
    terms: &[CancelledFactors],
    shape: &Shape,
    assign: &BTreeMap<Var, Var>,
) -> Option<Polynomial> {
    let space = DenseSpace::new((1..=shape.n()).map(Var::z).collect())?;
    let mut lcd: BTreeMap<&LinearForm, u32> = BTreeMap::new();
    for t in terms {
        for (f, m) in &t.denominator {
            let e = lcd.entry(f).or_insert(0);
            *e = (*e).max(*m);
        }
    }
    let mut sum = DensePoly::default();
    for t in terms {
        let mut p = DensePoly::constant(small(&t.scale)?);
        for f in &t.numerator {
            p = p.mul_linear(&space.linear(f)?)?;
        }
        for (f, m) in &lcd {
            let own = t.denominator.get(*f).copied().unwrap_or(0);
            for _ in own..*m {
                p = p.mul_linear(&space.linear(f)?)?;
            }
        }
        sum = sum.add_signed(&p, 1)?;
    }
    let mut scale = Scalar::one();
    let mut divisors = Vec::new();
    for (f, m) in lcd {
        for _ in 0..m {
            divisors.push(space.linear(f)?);
        }
    }
    for f in substituted_e_lambda(shape, assign) {
        let (s, monic) = f.normalize();
        scale *= &s;
        if !monic.is_constant() {
            divisors.push(space.linear(&monic)?);
        }
    }
    for d in &divisors {
        sum = sum.divide_linear(d)?.ok()?;
    }
    Some(space.to_polynomial(&sum).scale(&scale.recip()))
}

/// `κ_I|_{x_J}` by expanding `W_I` first, substituting, then dividing by the
/// substituted `e_λ` one linear factor at a time.
pub fn restriction_expanded(i: &IndexTuple, j: &IndexTuple, budget: u64) -> Result<Polynomial> {
    same_shape(i, j)?;
    restrict_weight(&weight_function(i, Method::Sym, budget)?, j)
}

/// Restriction of an already expanded weight function `w` to `x_J`.
pub fn restrict_weight(w: &Polynomial, j: &IndexTuple) -> Result<Polynomial> {
    let assign = fixed_point_assignment(j);
    let mut value = w.substitute_vars(&assign);
    for f in e_lambda_forms(&j.shape()) {
        value = crate::algebra::divide_exact(&value, &f.rename(&assign))?;
    }
    Ok(value)
}

/// A class given by its restriction to every fixed point of `Fl(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionTuple {
    shape: Shape,
    entries: Vec<(IndexTuple, Polynomial)>,
}

impl RestrictionTuple {
    pub fn new(shape: Shape, entries: Vec<(IndexTuple, Polynomial)>) -> Result<Self> {
        let expected = shape.index_tuples();
        if entries.len() != expected.len()
            || entries.iter().zip(&expected).any(|((j, _), e)| j != e)
        {
            return Err(Error::InvalidIndexTuple(
                "restriction tuple must cover every fixed point in canonical order".into(),
            ));
        }
        if let Some((j, _)) = entries.iter().find(|(_, p)| !p.is_z_only()) {
            return Err(Error::InvalidIndexTuple(format!(
                "restriction at {j} involves non-z variables"
            )));
        }
        Ok(RestrictionTuple { shape, entries })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn entries(&self) -> &[(IndexTuple, Polynomial)] {
        &self.entries
    }

    pub fn get(&self, j: &IndexTuple) -> Option<&Polynomial> {
        self.entries.iter().find(|(k, _)| k == j).map(|(_, p)| p)
    }
}

/// `c^SM(Ω_I)` as the tuple of its restrictions, computed in parallel over the
/// fixed points.
pub fn class_of(i: &IndexTuple, budget: u64) -> Result<RestrictionTuple> {
    let shape = i.shape();
    check_budget(&shape, budget)?;
    let entries = shape
        .index_tuples()
        .into_par_iter()
        .map(|j| restriction(i, &j, budget).map(|p| (j, p)))
        .collect::<Result<Vec<_>>>()?;
    RestrictionTuple::new(shape, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(s: &str) -> IndexTuple {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    const B: u64 = DEFAULT_TERM_BUDGET;

    #[test]
    fn ell_factor_cases() {
        let i = tup("{2};{1};{3}");
        assert_eq!(
            ell_factor(&i, 1, 1, 1).unwrap(),
            LinearForm::difference(1, Var::t(2, 1), Var::t(1, 1))
        );
        assert_eq!(ell_factor(&i, 1, 1, 2).unwrap(), LinearForm::one());
        let j = tup("{1};{2}");
        assert_eq!(
            ell_factor(&j, 1, 1, 2).unwrap(),
            LinearForm::difference(0, Var::z(2), Var::t(1, 1))
        );
        assert!(ell_factor(&j, 2, 1, 1).is_err());
        assert!(ell_factor(&j, 1, 2, 1).is_err());
        assert!(ell_factor(&j, 1, 1, 3).is_err());
    }

    #[test]
    fn e_lambda_examples() {
        assert!(e_lambda(&"1,3".parse().unwrap()).is_one());
        assert!(e_lambda(&"4".parse().unwrap()).is_one());
        assert_eq!(
            e_lambda(&"1,1,1".parse().unwrap()),
            &p("1 + t2_2 - t2_1") * &p("1 + t2_1 - t2_2")
        );
    }

    #[test]
    fn sym_group_order() {
        let all: Vec<_> = SymGroupIter::new(&"1,1,1".parse().unwrap()).collect();
        assert_eq!(
            all,
            vec![vec![vec![0], vec![0, 1]], vec![vec![0], vec![1, 0]]]
        );
        assert_eq!(SymGroupIter::new(&Shape::full_flag(4).unwrap()).count(), 12);
        assert_eq!(SymGroupIter::new(&"3".parse().unwrap()).count(), 1);
    }

    #[test]
    fn two_point_weight_functions() {
        for m in [Method::Sym, Method::Tables] {
            assert_eq!(
                weight_function(&tup("{1};{2}"), m, B).unwrap(),
                p("z2 - t1_1")
            );
            assert_eq!(
                weight_function(&tup("{2};{1}"), m, B).unwrap(),
                p("1 + z1 - t1_1")
            );
            assert_eq!(
                weight_function(&tup("{2};{1,3}"), m, B).unwrap(),
                &p("1 + z1 - t1_1") * &p("z3 - t1_1")
            );
            assert!(weight_function(&tup("{1,2,3,4}"), m, B).unwrap().is_one());
        }
    }

    #[test]
    fn restriction_examples() {
        let i = tup("{2};{1};{3}");
        assert_eq!(
            restriction(&i, &i, B).unwrap(),
            &(&p("1 + z1 - z2") * &p("z3 - z1")) * &p("z3 - z2")
        );
        assert!(restriction(&tup("{1};{2}"), &tup("{2};{1}"), B)
            .unwrap()
            .is_zero());
        assert!(restriction(&tup("{2};{1}"), &tup("{1};{2}"), B)
            .unwrap()
            .is_one());
        assert!(matches!(
            restriction(&tup("{1};{2}"), &tup("{1,2}"), B),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn classes() {
        let c = class_of(&tup("{2};{1}"), B).unwrap();
        assert_eq!(
            c.entries(),
            &[
                (tup("{1};{2}"), Polynomial::one()),
                (tup("{2};{1}"), p("1 + z1 - z2"))
            ]
        );
        let c = class_of(&tup("{1};{2}"), B).unwrap();
        assert_eq!(c.get(&tup("{1};{2}")), Some(&p("z2 - z1")));
        assert_eq!(c.get(&tup("{2};{1}")), Some(&Polynomial::zero()));
        let c = class_of(&tup("{1,2,3}"), B).unwrap();
        assert_eq!(c.entries(), &[(tup("{1,2,3}"), Polynomial::one())]);
    }

    #[test]
    fn budget_guardrail() {
        let i = tup("{1};{2};{3};{4};{5};{6};{7}");
        assert!(matches!(
            restriction(&i, &i, B),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(weight_function(&tup("{1};{2};{3}"), Method::Sym, 1).is_err());
        assert!(weight_function(&tup("{1};{2};{3}"), Method::Sym, 2).is_ok());
    }

    #[test]
    fn dense_path_matches_generic() {
        for shape in ["1,1,1", "1,2", "2,2", "1,2,1"] {
            let shape: Shape = shape.parse().unwrap();
            for i in shape.index_tuples() {
                for m in [Method::Sym, Method::Tables] {
                    let fast = dense_weight_function(&i, m)
                        .unwrap()
                        .expect("kernel applies");
                    assert_eq!(fast, generic_weight_function(&i, m).unwrap(), "{i} {m:?}");
                }
            }
        }
    }

    #[test]
    fn dense_restriction_matches_generic() {
        for shape in ["1,1,1", "2,2", "1,2,1", "1,1,1,1", "2,3"] {
            let shape: Shape = shape.parse().unwrap();
            let tuples = shape.index_tuples();
            for i in &tuples {
                for j in &tuples {
                    let assign = fixed_point_assignment(j);
                    let terms = surviving_terms(i, &shape, &assign).unwrap();
                    let generic = generic_restriction(&terms, &shape, &assign).unwrap();
                    if terms.is_empty() {
                        assert!(generic.is_zero());
                        continue;
                    }
                    let fast = dense_restriction(&terms, &shape, &assign).expect("kernel applies");
                    assert_eq!(fast, generic, "{i} at {j}");
                }
            }
        }
    }

    #[test]
    fn filling_validation() {
        let i = tup("{2};{1};{3}");
        assert!(TableFilling::new(i.clone(), vec![vec![0], vec![1, 0]]).is_ok());
        assert!(TableFilling::new(i.clone(), vec![vec![0], vec![1, 1]]).is_err());
        assert!(TableFilling::new(i, vec![vec![0]]).is_err());
    }

    #[test]
    fn table_layout() {
        let f = TableFilling::new(tup("{2};{1};{3}"), vec![vec![0], vec![1, 0]]).unwrap();
        assert_eq!(f.cell(2, 1), Some(Var::t(1, 1)));
        assert_eq!(f.cell(1, 1), None);
        assert_eq!(f.cell(1, 2), Some(Var::t(2, 2)));
        assert_eq!(f.cell(2, 2), Some(Var::t(2, 1)));
        assert_eq!(f.cell(3, 3), Some(Var::z(3)));
    }
}
