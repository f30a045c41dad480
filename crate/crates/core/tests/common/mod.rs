#![allow(dead_code)]

use std::collections::BTreeMap;

use csm_core::{LinearForm, Monomial, Polynomial, Scalar, Var};
use proptest::prelude::*;

pub const POOL: [Var; 5] = [Var::Z(1), Var::Z(2), Var::Z(3), Var::T(1, 1), Var::T(2, 1)];

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=5).prop_map(|(p, q)| Scalar::ratio(p, q))
}

pub fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |c| !c.is_zero())
}

pub fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((0..POOL.len(), 1u32..=3), 0..3)
        .prop_map(|ps| Monomial::from_pairs(ps.into_iter().map(|(i, e)| (POOL[i], e))))
}

pub fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(), scalar()), 0..6).prop_map(Polynomial::from_terms)
}

pub fn linear_form() -> impl Strategy<Value = LinearForm> {
    (
        scalar(),
        prop::collection::vec((0..POOL.len(), nonzero_scalar()), 1..3),
    )
        .prop_map(|(c, cs)| LinearForm::build(c, cs.into_iter().map(|(i, s)| (POOL[i], s))))
        .prop_filter("non-constant", |f| !f.is_constant())
}

pub fn point() -> impl Strategy<Value = BTreeMap<Var, Scalar>> {
    prop::collection::vec((-30i64..=30, 1i64..=7), POOL.len()).prop_map(|vals| {
        POOL.iter()
            .zip(vals)
            .map(|(v, (p, q))| (*v, Scalar::ratio(p, q)))
            .collect()
    })
}

pub fn z(i: usize) -> Polynomial {
    Polynomial::var(Var::z(i))
}

pub fn t(k: usize, a: usize) -> Polynomial {
    Polynomial::var(Var::t(k, a))
}

pub fn c(v: i64) -> Polynomial {
    Polynomial::from(v)
}

pub fn product(factors: &[Polynomial]) -> Polynomial {
    factors.iter().fold(Polynomial::one(), |acc, f| &acc * f)
}
