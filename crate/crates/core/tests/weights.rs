mod common;

use std::collections::BTreeMap;

use common::*;
use csm_core::weight::{
    class_of, e_lambda, ell_factor, restrict_weight, restriction, restriction_expanded,
    term_for_filling, weight_function,
};
use csm_core::{Error, IndexTuple, Method, Shape, TableFilling, Var, DEFAULT_TERM_BUDGET as B};

fn tup(s: &str) -> IndexTuple {
    s.parse().unwrap()
}

fn shape(s: &str) -> Shape {
    s.parse().unwrap()
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn ell_factor_cases() {
    let i = tup("{2};{1};{3}");
    assert_eq!(
        ell_factor(&i, 1, 1, 1).unwrap().to_polynomial(),
        &(&c(1) + &t(2, 1)) - &t(1, 1)
    );
    let j = tup("{1};{2}");
    assert_eq!(
        ell_factor(&j, 1, 1, 2).unwrap().to_polynomial(),
        &z(2) - &t(1, 1)
    );
    assert!(ell_factor(&j, 1, 1, 1).unwrap().is_constant());
    assert!(matches!(
        ell_factor(&j, 2, 1, 1),
        Err(Error::IndexOutOfRange(_))
    ));
}

#[test]
fn e_lambda_cases() {
    assert!(e_lambda(&shape("1,4")).is_one());
    assert!(e_lambda(&shape("5")).is_one());
    let expected = &(&(&c(1) + &t(2, 2)) - &t(2, 1)) * &(&(&c(1) + &t(2, 1)) - &t(2, 2));
    assert_eq!(e_lambda(&shape("1,1,1")), expected);
}

#[test]
fn two_point_flag() {
    assert_eq!(
        weight_function(&tup("{1};{2}"), Method::Sym, B).unwrap(),
        &z(2) - &t(1, 1)
    );
    assert_eq!(
        weight_function(&tup("{2};{1}"), Method::Tables, B).unwrap(),
        &(&c(1) + &z(1)) - &t(1, 1)
    );
}

#[test]
fn classes_of_two_point_flag() {
    let top = class_of(&tup("{2};{1}"), B).unwrap();
    assert!(top.get(&tup("{1};{2}")).unwrap().is_one());
    assert_eq!(
        top.get(&tup("{2};{1}")).unwrap(),
        &(&(&c(1) + &z(1)) - &z(2))
    );
    let bottom = class_of(&tup("{1};{2}"), B).unwrap();
    assert_eq!(bottom.get(&tup("{1};{2}")).unwrap(), &(&z(2) - &z(1)));
    assert!(bottom.get(&tup("{2};{1}")).unwrap().is_zero());
    let point = class_of(&tup("{1,2,3}"), B).unwrap();
    assert_eq!(point.entries().len(), 1);
    assert!(point.entries()[0].1.is_one());
}

#[test]
fn weight_of_table_sum_has_no_denominator() {
    let i = tup("{2};{1};{3}");
    let terms: Vec<_> = TableFilling::all(&i)
        .map(|f| term_for_filling(&f).unwrap())
        .collect();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().all(|t| t.denominator().len() == 1));
    let sum = terms[0].add(&terms[1]);
    assert!(sum.denominator().is_empty());
    assert_eq!(
        sum.to_polynomial().unwrap(),
        weight_function(&i, Method::Sym, B).unwrap()
    );
}

#[test]
fn diagonal_worked_example() {
    let i = tup("{2};{1};{3}");
    let expected = product(&[&(&c(1) + &z(1)) - &z(2), &z(3) - &z(1), &z(3) - &z(2)]);
    assert_eq!(restriction(&i, &i, B).unwrap(), expected);
    assert_eq!(restriction_expanded(&i, &i, B).unwrap(), expected);
}

/// Shapes where both generators expand in well under a second per tuple.
/// The 4-step full flag is covered by the acceptance suite.
const EQUIVALENCE_SHAPES: &[&str] = &[
    "1", "2", "3", "4", "5", "1,1", "1,2", "2,1", "1,3", "3,1", "2,2", "1,1,1", "1,1,2", "1,2,1",
    "2,1,1", "1,4", "2,3", "3,2", "1,1,3", "1,2,2",
];

#[test]
fn methods_agree() {
    for s in EQUIVALENCE_SHAPES {
        for i in shape(s).index_tuples() {
            assert_eq!(
                weight_function(&i, Method::Sym, B).unwrap(),
                weight_function(&i, Method::Tables, B).unwrap(),
                "{i}"
            );
        }
    }
}

#[test]
fn weight_is_symmetric_in_each_group() {
    for s in ["1,1,1", "2,2", "1,2,1", "2,1,1", "1,1,2", "2,3"] {
        let sh = shape(s);
        for i in sh.index_tuples() {
            let w = weight_function(&i, Method::Sym, B).unwrap();
            for k in 1..sh.len() {
                let m = sh.prefix_size(k);
                for a in 1..=m {
                    for b in a + 1..=m {
                        let swap = BTreeMap::from([
                            (Var::t(k, a), Var::t(k, b)),
                            (Var::t(k, b), Var::t(k, a)),
                        ]);
                        assert_eq!(w.rename(&swap), w, "{i} t{k}_{a} <-> t{k}_{b}");
                    }
                }
            }
        }
    }
}

#[test]
fn termwise_restriction_matches_expansion() {
    let mut shapes: Vec<Shape> = Vec::new();
    for n in 1..=4 {
        shapes.extend(compositions(n).into_iter().map(|p| Shape::new(p).unwrap()));
    }
    for sh in shapes {
        let tuples = sh.index_tuples();
        for i in &tuples {
            let w = weight_function(i, Method::Sym, B).unwrap();
            for j in &tuples {
                assert_eq!(
                    restriction(i, j, B).unwrap(),
                    restrict_weight(&w, j).unwrap(),
                    "{i} at {j}"
                );
            }
        }
    }
}

#[test]
fn vanishing_outside_the_closure() {
    for n in 1..=5 {
        for parts in compositions(n) {
            let sh = Shape::new(parts).unwrap();
            let tuples = sh.index_tuples();
            for i in &tuples {
                for j in tuples.iter().filter(|j| !j.bruhat_leq(i)) {
                    assert!(restriction(i, j, B).unwrap().is_zero(), "{i} at {j}");
                }
            }
        }
    }
}

#[test]
fn restriction_degrees() {
    for s in ["1,1,1", "2,2", "1,2,1", "2,1,1", "1,1,1,1", "2,3"] {
        let sh = shape(s);
        let dim = sh.dim() as u32;
        let tuples = sh.index_tuples();
        for i in &tuples {
            for j in &tuples {
                let p = restriction(i, j, B).unwrap();
                assert!(p.is_z_only());
                match p.degree() {
                    Some(d) if i == j => assert_eq!(d, dim),
                    Some(d) => assert!(d < dim, "{i} at {j}"),
                    None => assert_ne!(i, j),
                }
            }
        }
    }
}

#[test]
fn budget_is_enforced_before_work() {
    let big = Shape::full_flag(7).unwrap();
    let i = big.index_tuples().swap_remove(0);
    let start = std::time::Instant::now();
    match weight_function(&i, Method::Sym, B) {
        Err(Error::BudgetExceeded { terms, budget, .. }) => {
            assert_eq!(terms, "24883200");
            assert_eq!(budget, B);
        }
        other => panic!("expected refusal, got {other:?}"),
    }
    assert!(matches!(
        restriction(&i, &i, B),
        Err(Error::BudgetExceeded { .. })
    ));
    assert!(matches!(class_of(&i, B), Err(Error::BudgetExceeded { .. })));
    assert!(start.elapsed().as_secs() < 1);
    // a budget of exactly the term count is enough
    let small = tup("{2};{1};{3}");
    assert!(weight_function(&small, Method::Sym, 2).is_ok());
    assert!(weight_function(&small, Method::Sym, 1).is_err());
}

#[test]
fn restriction_rejects_mismatched_shapes() {
    let a = tup("{1};{2}");
    let b = tup("{1};{2};{3}");
    assert!(matches!(
        restriction(&a, &b, B),
        Err(Error::ShapeMismatch { .. })
    ));
}

#[test]
fn grassmannian_example_has_no_denominators() {
    for n in 2..=5 {
        let sh = Shape::new(vec![1, n - 1]).unwrap();
        for i in sh.index_tuples() {
            let f = TableFilling::all(&i).next().unwrap();
            let term = term_for_filling(&f).unwrap();
            assert!(term.denominator().is_empty());
            assert_eq!(
                term.numerator(),
                &weight_function(&i, Method::Sym, B).unwrap()
            );
        }
    }
}
