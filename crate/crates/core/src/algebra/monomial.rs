use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::var::Var;

/// Power product of variables.
///
/// Stored as packed `(variable, exponent)` words sorted by variable, no zero
/// exponents; small monomials live inline.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    degree: u32,
    packed: SmallVec<[u64; 8]>,
}

const EXP_BITS: u32 = 24;
const EXP_MASK: u64 = (1 << EXP_BITS) - 1;

fn var_key(v: Var) -> u64 {
    match v {
        Var::Z(i) => i as u64,
        Var::T(k, a) => (1 << 32) | ((k as u64) << 16) | a as u64,
    }
}

fn key_var(key: u64) -> Var {
    if key >> 32 == 0 {
        Var::Z(key as u16)
    } else {
        Var::T((key >> 16) as u16, key as u16)
    }
}

fn pack(v: Var, e: u32) -> u64 {
    assert!((e as u64) <= EXP_MASK, "exponent overflow");
    (var_key(v) << EXP_BITS) | e as u64
}

fn unpack(w: u64) -> (Var, u32) {
    (key_var(w >> EXP_BITS), (w & EXP_MASK) as u32)
}

#[inline]
fn key_of(w: u64) -> u64 {
    w >> EXP_BITS
}

#[inline]
fn exp_of(w: u64) -> u32 {
    (w & EXP_MASK) as u32
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        let mut packed = SmallVec::new();
        packed.push(pack(v, 1));
        Monomial { degree: 1, packed }
    }

    /// Builds from arbitrary pairs: sorts, merges repeated variables and drops
    /// zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut items: SmallVec<[(Var, u32); 8]> =
            pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        items.sort_by_key(|&(v, _)| v);
        let mut packed: SmallVec<[u64; 8]> = SmallVec::new();
        let mut last: Option<(Var, u32)> = None;
        for (v, e) in items {
            match last {
                Some((w, f)) if w == v => last = Some((w, f + e)),
                Some((w, f)) => {
                    packed.push(pack(w, f));
                    last = Some((v, e));
                }
                None => last = Some((v, e)),
            }
        }
        if let Some((w, f)) = last {
            packed.push(pack(w, f));
        }
        Monomial::from_packed(packed)
    }

    fn from_packed(packed: SmallVec<[u64; 8]>) -> Self {
        let degree = packed.iter().map(|&w| exp_of(w)).sum();
        Monomial { degree, packed }
    }

    pub fn is_one(&self) -> bool {
        self.packed.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn find(&self, v: Var) -> Result<usize, usize> {
        let k = var_key(v);
        self.packed.binary_search_by_key(&k, |&w| key_of(w))
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.find(v).map(|i| exp_of(self.packed[i])).unwrap_or(0)
    }

    /// `(variable, exponent)` pairs in variable order.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.packed.iter().map(|&w| unpack(w))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.packed.iter().map(|&w| key_var(key_of(w)))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.packed, &other.packed);
        let mut out: SmallVec<[u64; 8]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match key_of(a[i]).cmp(&key_of(b[j])) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = exp_of(a[i]) as u64 + exp_of(b[j]) as u64;
                    assert!(e <= EXP_MASK, "exponent overflow");
                    out.push(a[i] + exp_of(b[j]) as u64);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial {
            degree: self.degree + other.degree,
            packed: out,
        }
    }

    pub fn mul_var(&self, v: Var) -> Monomial {
        let mut packed = self.packed.clone();
        match self.find(v) {
            Ok(i) => {
                assert!(exp_of(packed[i]) < EXP_MASK as u32, "exponent overflow");
                packed[i] += 1;
            }
            Err(i) => packed.insert(i, pack(v, 1)),
        }
        Monomial {
            degree: self.degree + 1,
            packed,
        }
    }

    /// Splits off the power of `v`: returns `(exponent, rest)`.
    pub fn split(&self, v: Var) -> (u32, Monomial) {
        match self.find(v) {
            Ok(i) => {
                let mut packed = self.packed.clone();
                let w = packed.remove(i);
                let e = exp_of(w);
                (
                    e,
                    Monomial {
                        degree: self.degree - e,
                        packed,
                    },
                )
            }
            Err(_) => (0, self.clone()),
        }
    }

    /// Applies an injective variable renaming.
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Monomial {
        self.rename_with(&VarRenaming::new(map))
    }

    pub(crate) fn rename_with(&self, map: &VarRenaming) -> Monomial {
        let mut packed = self.packed.clone();
        for w in packed.iter_mut() {
            let k = key_of(*w);
            if let Some(nk) = map.get(k) {
                *w = (nk << EXP_BITS) | (*w & EXP_MASK);
            }
        }
        packed.sort_unstable();
        Monomial {
            degree: self.degree,
            packed,
        }
    }
}

/// Variable renaming prepared for repeated application to monomials.
pub(crate) struct VarRenaming {
    keys: Vec<(u64, u64)>,
}

impl VarRenaming {
    pub(crate) fn new(map: &BTreeMap<Var, Var>) -> Self {
        // BTreeMap iteration is sorted by Var, which matches key order
        VarRenaming {
            keys: map
                .iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (var_key(*a), var_key(*b)))
                .collect(),
        }
    }

    fn get(&self, key: u64) -> Option<u64> {
        self.keys
            .binary_search_by_key(&key, |&(k, _)| k)
            .ok()
            .map(|i| self.keys[i].1)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// earliest variable (in `Var` order) where the two differ.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.packed, &other.packed);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match key_of(a[i]).cmp(&key_of(b[j])) {
                // `self` carries a variable that `other` lacks
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match exp_of(a[i]).cmp(&exp_of(b[j])) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    ord => return ord,
                },
            }
        }
        (a.len() - i).cmp(&(b.len() - j))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.packed.is_empty() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.factors().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
