//! Text and LaTeX rendering of weight functions and filled tables.

use crate::algebra::text::latex_poly;
use crate::algebra::{FactoredRational, Polynomial, Var};
use crate::flag::{IndexTuple, Shape};
use crate::weight::{FactorType, TableFilling};

/// `\{2\},\{1\},\{3\}`
pub fn tuple_latex(i: &IndexTuple) -> String {
    i.blocks()
        .iter()
        .map(|b| {
            let elems: Vec<String> = b.iter().map(ToString::to_string).collect();
            format!("\\{{{}\\}}", elems.join(","))
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub fn weight_latex(i: &IndexTuple, w: &Polynomial) -> String {
    format!("W_{{{}}} = {}", tuple_latex(i), latex_poly(w))
}

pub fn modified_weight_latex(i: &IndexTuple, w: &FactoredRational) -> String {
    format!("\\widetilde{{W}}_{{{}}} = {}", tuple_latex(i), w.latex())
}

pub fn e_lambda_latex(shape: &Shape, e: &Polynomial) -> String {
    let parts: Vec<String> = shape.parts().iter().map(ToString::to_string).collect();
    format!("e_{{({})}} = {}", parts.join(","), latex_poly(e))
}

fn factor_text(constant: bool, v: Var, u: Var) -> String {
    if constant {
        format!("(1+{v}-{u})")
    } else {
        format!("({v}-{u})")
    }
}

fn factor_latex(constant: bool, v: Var, u: Var) -> String {
    if constant {
        format!("(1+{}-{})", v.latex(), u.latex())
    } else {
        format!("({}-{})", v.latex(), u.latex())
    }
}

fn grouped(f: &TableFilling) -> [Vec<(Var, Var)>; 3] {
    let mut groups: [Vec<(Var, Var)>; 3] = Default::default();
    for (ty, v, u) in f.typed_factors() {
        let slot = match ty {
            FactorType::Above => 0,
            FactorType::Below => 1,
            FactorType::SameColumn => 2,
        };
        groups[slot].push((v, u));
    }
    groups
}

/// Unexpanded term of a filled table, factors grouped by type:
/// `(1+t2_1-t1_1)(1+z1-t2_2)(z2-t2_1)… * (1+t2_2-t2_1)/(t2_2-t2_1)`.
pub fn term_text(f: &TableFilling) -> String {
    let [above, below, same] = grouped(f);
    let mut num: String = above
        .iter()
        .map(|&(v, u)| factor_text(true, v, u))
        .collect();
    num.extend(below.iter().map(|&(v, u)| factor_text(false, v, u)));
    if same.is_empty() {
        return if num.is_empty() { "1".into() } else { num };
    }
    let top: String = same.iter().map(|&(v, u)| factor_text(true, v, u)).collect();
    let bottom: String = same
        .iter()
        .map(|&(v, u)| factor_text(false, v, u))
        .collect();
    if num.is_empty() {
        format!("{top}/{bottom}")
    } else {
        format!("{num} * {top}/{bottom}")
    }
}

/// The same term with an underbrace per factor type.
pub fn term_latex(f: &TableFilling) -> String {
    let [above, below, same] = grouped(f);
    let mut parts = Vec::new();
    if !above.is_empty() {
        let body: String = above
            .iter()
            .map(|&(v, u)| factor_latex(true, v, u))
            .collect();
        parts.push(format!("\\underbrace{{{body}}}_{{type-1}}"));
    }
    if !below.is_empty() {
        let body: String = below
            .iter()
            .map(|&(v, u)| factor_latex(false, v, u))
            .collect();
        parts.push(format!("\\underbrace{{{body}}}_{{type-2}}"));
    }
    if !same.is_empty() {
        let top: String = same
            .iter()
            .map(|&(v, u)| factor_latex(true, v, u))
            .collect();
        let bottom: String = same
            .iter()
            .map(|&(v, u)| factor_latex(false, v, u))
            .collect();
        parts.push(format!(
            "\\underbrace{{\\frac{{{top}}}{{{bottom}}}}}_{{type-3}}"
        ));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("\\,")
    }
}

fn cells(f: &TableFilling, label: impl Fn(Var) -> String) -> Vec<Vec<String>> {
    (1..=f.rows())
        .map(|row| {
            (1..=f.columns())
                .map(|k| f.cell(row, k).map(&label).unwrap_or_default())
                .collect()
        })
        .collect()
}

/// Boxed grid with `n` rows and `N` columns; empty boxes are blank.
pub fn table_ascii(f: &TableFilling) -> String {
    let grid = cells(f, |v| v.to_string());
    let widths: Vec<usize> = (0..f.columns())
        .map(|c| {
            grid.iter()
                .map(|r| r[c].chars().count())
                .max()
                .unwrap_or(0)
                .max(1)
        })
        .collect();
    let rule = {
        let mut s = String::from("+");
        for w in &widths {
            s.push_str(&"-".repeat(w + 2));
            s.push('+');
        }
        s
    };
    let mut out = rule.clone();
    out.push('\n');
    for row in &grid {
        out.push('|');
        for (cell, w) in row.iter().zip(&widths) {
            out.push_str(&format!(" {cell:<w$} |"));
        }
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');
    }
    out
}

/// `tabular` with one `c` column per block, hlines between rows.
pub fn table_latex(f: &TableFilling) -> String {
    let grid = cells(f, |v| format!("${}$", v.latex()));
    let mut out = format!(
        "\\begin{{tabular}}{{|{}}}\n\\hline\n",
        "c|".repeat(f.columns())
    );
    for row in grid {
        out.push_str(&row.join(" & "));
        out.push_str(" \\\\\n\\hline\n");
    }
    out.push_str("\\end{tabular}");
    out
}
