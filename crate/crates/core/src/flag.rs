//! Combinatorics of the partial flag manifold `Fl(λ)`: shapes, index tuples
//! (torus fixed points / Schubert cells), cell dimensions, Bruhat order and
//! the local weight data at a fixed point.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{LinearForm, Polynomial, Var};
use crate::error::{Error, ParseError, Result};

/// Dimension vector `λ = (λ_1, …, λ_N)` with `|λ| = n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    parts: Vec<usize>,
}

impl Shape {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidShape("at least one part is required".into()));
        }
        let n: usize = parts.iter().sum();
        if n == 0 {
            return Err(Error::InvalidShape("parts must sum to a positive n".into()));
        }
        if n > u16::MAX as usize || parts.len() > u16::MAX as usize {
            return Err(Error::InvalidShape("shape too large".into()));
        }
        Ok(Shape { parts })
    }

    /// Full flag manifold on `C^n`.
    pub fn full_flag(n: usize) -> Result<Self> {
        Shape::new(vec![1; n])
    }

    /// Grassmannian of `k`-planes in `C^n`.
    pub fn grassmannian(k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidShape(format!("Gr({k},{n})")));
        }
        Shape::new(vec![k, n - k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `n = |λ|`.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts `N`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ^(k) = λ_1 + … + λ_k`, for `k` in `0..=N`.
    pub fn prefix_size(&self, k: usize) -> usize {
        self.parts[..k].iter().sum()
    }

    /// `dim Fl = Σ_{k<l} λ_k λ_l`.
    pub fn dim(&self) -> usize {
        let mut total = 0;
        for k in 0..self.parts.len() {
            for l in k + 1..self.parts.len() {
                total += self.parts[k] * self.parts[l];
            }
        }
        total
    }

    /// `n! / Π λ_k!`, the number of fixed points.
    pub fn fixed_point_count(&self) -> u128 {
        let mut count: u128 = 1;
        let mut placed: u128 = 0;
        for &p in &self.parts {
            for i in 1..=p as u128 {
                placed += 1;
                count = count * placed / i;
            }
        }
        count
    }

    /// `Π_{k<N} (λ^(k))!`, the number of symmetrization terms; `None` on
    /// overflow.
    pub fn term_count(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for k in 1..self.parts.len() {
            for i in 2..=self.prefix_size(k) as u128 {
                acc = acc.checked_mul(i)?;
            }
        }
        Some(acc)
    }

    /// Every `t` variable `t^(k)_a`, `k < N`, `a ≤ λ^(k)`.
    pub fn t_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for k in 1..self.parts.len() {
            for a in 1..=self.prefix_size(k) {
                out.push(Var::t(k, a));
            }
        }
        out
    }

    /// Whether `v` is a variable of this shape's polynomial ring.
    pub fn has_var(&self, v: Var) -> bool {
        match v {
            Var::Z(i) => (1..=self.n()).contains(&(i as usize)),
            Var::T(k, a) => {
                let (k, a) = (k as usize, a as usize);
                k >= 1 && k < self.len() && a >= 1 && a <= self.prefix_size(k)
            }
        }
    }

    /// All index tuples, lexicographic in the block-assignment word.
    pub fn index_tuples(&self) -> Vec<IndexTuple> {
        enumerate_index_tuples(self)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shape({self})")
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                let p = p.trim();
                if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(ParseError::new(format!("invalid shape `{s}`")));
                }
                p.parse::<usize>()
                    .map_err(|_| ParseError::new(format!("invalid shape `{s}`")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Shape::new(parts)
    }
}

/// `I = (I_1, …, I_N)`: disjoint blocks covering `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    blocks: Vec<Vec<usize>>,
}

impl IndexTuple {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidIndexTuple("no blocks".into()));
        }
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            for &i in &b {
                if i == 0 || i > n {
                    return Err(Error::InvalidIndexTuple(format!(
                        "element {i} outside 1..={n}"
                    )));
                }
                if seen[i] {
                    return Err(Error::DistinctnessViolation(i));
                }
                seen[i] = true;
            }
            sorted.push(b);
        }
        Ok(IndexTuple { blocks: sorted })
    }

    /// Builds from the word `w` with `w_i` the (1-based) block holding `i`.
    pub fn from_word(word: &[usize], blocks: usize) -> Result<Self> {
        let mut out = vec![Vec::new(); blocks];
        for (idx, &w) in word.iter().enumerate() {
            if w == 0 || w > blocks {
                return Err(Error::InvalidIndexTuple(format!("block {w} out of range")));
            }
            out[w - 1].push(idx + 1);
        }
        IndexTuple::new(out)
    }

    pub fn parse_for(s: &str, shape: &Shape) -> Result<Self> {
        let t: IndexTuple = s.parse()?;
        t.ensure_shape(shape)?;
        Ok(t)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block `I_k`, 1-based.
    pub fn block(&self, k: usize) -> &[usize] {
        &self.blocks[k - 1]
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Shape {
        Shape {
            parts: self.blocks.iter().map(Vec::len).collect(),
        }
    }

    pub fn ensure_shape(&self, shape: &Shape) -> Result<()> {
        if self.blocks.len() != shape.len()
            || self
                .blocks
                .iter()
                .zip(shape.parts())
                .any(|(b, &p)| b.len() != p)
        {
            return Err(Error::ShapeMismatch {
                tuple: self.to_string(),
                shape: shape.to_string(),
            });
        }
        Ok(())
    }

    /// `I^(k) = I_1 ∪ … ∪ I_k`, sorted ascending.
    pub fn prefix(&self, k: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.blocks[..k].iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    /// Block-assignment word: entry `i-1` is the block index of `i`.
    pub fn word(&self) -> Vec<usize> {
        let mut w = vec![0; self.n()];
        for (k, b) in self.blocks.iter().enumerate() {
            for &i in b {
                w[i - 1] = k + 1;
            }
        }
        w
    }

    /// Image under `i ↦ n+1−i` applied blockwise.
    pub fn reverse_complement(&self) -> IndexTuple {
        let n = self.n();
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut r: Vec<usize> = b.iter().map(|i| n + 1 - i).collect();
                r.sort_unstable();
                r
            })
            .collect();
        IndexTuple { blocks }
    }

    /// Inversion pairs `(a, b)` with `a ∈ I_k`, `b ∈ I_l`, `k < l`, filtered
    /// by `keep(a, b)`.
    fn pairs(&self, keep: impl Fn(usize, usize) -> bool) -> WeightList {
        let mut out = Vec::new();
        for k in 0..self.blocks.len() {
            for l in k + 1..self.blocks.len() {
                for &a in &self.blocks[k] {
                    for &b in &self.blocks[l] {
                        if keep(a, b) {
                            out.push((a, b));
                        }
                    }
                }
            }
        }
        WeightList(out)
    }

    /// Torus weights of `T_{x_I} Ω_I`.
    pub fn tangent_weights(&self) -> WeightList {
        self.pairs(|a, b| a > b)
    }

    /// Torus weights of the normal space to `Ω_I` at `x_I`.
    pub fn normal_weights(&self) -> WeightList {
        self.pairs(|a, b| a < b)
    }

    /// All torus weights of `T_{x_I} Fl`.
    pub fn all_weights(&self) -> WeightList {
        self.pairs(|_, _| true)
    }

    /// Dimension of the Schubert cell `Ω_I`.
    pub fn cell_dimension(&self) -> usize {
        self.tangent_weights().len()
    }

    /// `c(T_{x_I} Ω_I)`.
    pub fn local_chern(&self) -> Polynomial {
        self.tangent_weights().chern()
    }

    /// `e(N_{x_I} Ω_I)`.
    pub fn local_euler(&self) -> Polynomial {
        self.normal_weights().euler()
    }

    /// Dominance of prefix counts: `self ≤ other` iff for every `p, q`,
    /// `#{i ∈ self^(p) : i ≤ q} ≥ #{i ∈ other^(p) : i ≤ q}`.
    ///
    /// This is closure containment `Ω_self ⊆ closure(Ω_other)`.
    pub fn bruhat_leq(&self, other: &IndexTuple) -> bool {
        if self.shape() != other.shape() {
            return false;
        }
        let (ws, wo) = (self.word(), other.word());
        let blocks = self.blocks.len();
        // counts[p] = #{i ≤ q : word(i) ≤ p}, updated as q grows
        let mut cs = vec![0usize; blocks + 1];
        let mut co = vec![0usize; blocks + 1];
        for q in 0..ws.len() {
            for p in ws[q]..=blocks {
                cs[p] += 1;
            }
            for p in wo[q]..=blocks {
                co[p] += 1;
            }
            if (1..=blocks).any(|p| cs[p] < co[p]) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ";")?;
            }
            let items: Vec<String> = b.iter().map(|i| i.to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for IndexTuple {
    type Err = Error;

    /// `{2};{1};{3}`, `{1,2};{}`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(ParseError::new(format!("invalid index tuple `{s}`")));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut blocks = Vec::new();
        for part in compact.split(';') {
            let inner = part
                .strip_prefix('{')
                .and_then(|p| p.strip_suffix('}'))
                .ok_or_else(bad)?;
            let mut block = Vec::new();
            if !inner.is_empty() {
                for item in inner.split(',') {
                    if item.is_empty() || !item.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(bad());
                    }
                    block.push(item.parse::<usize>().map_err(|_| bad())?);
                }
            }
            blocks.push(block);
        }
        IndexTuple::new(blocks)
    }
}

/// Ordered pairs `(a, b)`, each standing for the weight `z_b − z_a`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WeightList(pub Vec<(usize, usize)>);

impl WeightList {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// `z_b − z_a` for each pair.
    pub fn forms(&self) -> Vec<LinearForm> {
        self.0
            .iter()
            .map(|&(a, b)| LinearForm::difference(0, Var::z(b), Var::z(a)))
            .collect()
    }

    /// `1 + z_b − z_a` for each pair.
    pub fn chern_forms(&self) -> Vec<LinearForm> {
        self.0
            .iter()
            .map(|&(a, b)| LinearForm::difference(1, Var::z(b), Var::z(a)))
            .collect()
    }

    /// `Π (1 + z_b − z_a)`.
    pub fn chern(&self) -> Polynomial {
        self.chern_forms()
            .iter()
            .map(LinearForm::to_polynomial)
            .product()
    }

    /// `Π (z_b − z_a)`.
    pub fn euler(&self) -> Polynomial {
        self.forms().iter().map(LinearForm::to_polynomial).product()
    }
}

/// Every `I ∈ 𝓘_λ`, each once, ordered lexicographically by block-assignment
/// word.
pub fn enumerate_index_tuples(shape: &Shape) -> Vec<IndexTuple> {
    let mut word: Vec<usize> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(k, &p)| std::iter::repeat_n(k + 1, p))
        .collect();
    let mut out = Vec::new();
    loop {
        out.push(IndexTuple::from_word(&word, shape.len()).expect("word is a valid assignment"));
        if !next_permutation(&mut word) {
            break;
        }
    }
    out
}

/// Advances to the next lexicographic permutation of a multiset; returns
/// `false` (leaving the slice untouched) at the last one.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Cover relations of the dominance order over `tuples`: for each index,
/// the indices it covers (immediately below) and is covered by.
pub fn bruhat_covers(tuples: &[IndexTuple]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let m = tuples.len();
    let lt: Vec<Vec<bool>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| i != j && tuples[i].bruhat_leq(&tuples[j]))
                .collect()
        })
        .collect();
    let mut out = vec![(Vec::new(), Vec::new()); m];
    for lo in 0..m {
        for hi in 0..m {
            if lt[lo][hi] && !(0..m).any(|mid| lt[lo][mid] && lt[mid][hi]) {
                out[hi].0.push(lo);
                out[lo].1.push(hi);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(s: &str) -> IndexTuple {
        s.parse().unwrap()
    }

    #[test]
    fn enumerate_small() {
        let sh: Shape = "1,1".parse().unwrap();
        let ts = sh.index_tuples();
        assert_eq!(ts, vec![tup("{1};{2}"), tup("{2};{1}")]);
        assert_eq!(Shape::full_flag(3).unwrap().index_tuples().len(), 6);
        assert_eq!("2,2".parse::<Shape>().unwrap().index_tuples().len(), 6);
        assert_eq!(
            "3".parse::<Shape>().unwrap().index_tuples(),
            vec![tup("{1,2,3}")]
        );
    }

    #[test]
    fn cell_dimensions() {
        assert_eq!(tup("{2};{1};{3}").cell_dimension(), 1);
        assert_eq!(tup("{1};{2}").cell_dimension(), 0);
        for n in 1..=6 {
            let blocks = (1..=n).rev().map(|i| vec![i]).collect();
            let longest = IndexTuple::new(blocks).unwrap();
            assert_eq!(longest.cell_dimension(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn bruhat_examples() {
        let (a, b) = (tup("{1};{2}"), tup("{2};{1}"));
        assert!(a.bruhat_leq(&a));
        assert!(a.bruhat_leq(&b));
        assert!(!b.bruhat_leq(&a));
    }

    #[test]
    fn weights() {
        let i = tup("{2};{1};{3}");
        assert_eq!(i.tangent_weights().pairs(), &[(2, 1)]);
        assert_eq!(i.normal_weights().pairs(), &[(2, 3), (1, 3)]);
        let j = tup("{1};{2}");
        assert!(j.tangent_weights().is_empty());
        assert_eq!(j.normal_weights().pairs(), &[(1, 2)]);
        let point = tup("{1,2,3}");
        assert!(point.tangent_weights().is_empty() && point.normal_weights().is_empty());
    }

    #[test]
    fn local_classes() {
        let p = |s: &str| s.parse::<Polynomial>().unwrap();
        let i = tup("{2};{1};{3}");
        assert_eq!(i.local_chern(), p("1 + z1 - z2"));
        assert_eq!(i.local_euler(), &p("z3 - z2") * &p("z3 - z1"));
        let j = tup("{1};{2}");
        assert_eq!(j.local_chern(), Polynomial::one());
        assert_eq!(j.local_euler(), p("z2 - z1"));
        let point = tup("{1,2,3,4}");
        assert!(point.local_chern().is_one() && point.local_euler().is_one());
    }

    #[test]
    fn text_syntax() {
        let t = tup(" {2, 3} ; {} ; {1} ");
        assert_eq!(t.to_string(), "{2,3};{};{1}");
        assert_eq!("1,0,2".parse::<Shape>().unwrap().to_string(), "1,0,2");
        for bad in ["{1};{1}", "{1};{3}", "{1}{2}", "{a}", "1;2", "{1,};{2}"] {
            assert!(bad.parse::<IndexTuple>().is_err(), "{bad}");
        }
        assert!(matches!(
            "{1,2};{2}".parse::<IndexTuple>(),
            Err(Error::DistinctnessViolation(2))
        ));
        for bad in ["", "0", "1,,2", "a", "-1"] {
            assert!(bad.parse::<Shape>().is_err(), "{bad}");
        }
    }

    #[test]
    fn shape_mismatch() {
        let sh: Shape = "1,2".parse().unwrap();
        assert!(IndexTuple::parse_for("{1,2};{3}", &sh).is_err());
        assert!(IndexTuple::parse_for("{2};{1,3}", &sh).is_ok());
    }

    #[test]
    fn term_counts() {
        assert_eq!(Shape::full_flag(4).unwrap().term_count(), Some(12));
        assert_eq!(Shape::full_flag(7).unwrap().term_count(), Some(24_883_200));
        assert_eq!("2,3".parse::<Shape>().unwrap().term_count(), Some(2));
        assert_eq!("5".parse::<Shape>().unwrap().term_count(), Some(1));
    }
}
