//! JSON form: `{"terms":[{"coeff":"p/q","exps":{"z1":2,...}}]}`, terms in
//! canonical order, exponents in variable order.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::scalar::Scalar;
use super::var::Var;
use crate::error::ParseError;

struct Exps<'a>(&'a Monomial);

impl Serialize for Exps<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (v, e) in self.0.factors() {
            map.serialize_entry(&v.to_string(), &e)?;
        }
        map.end()
    }
}

struct Term<'a>(&'a Monomial, &'a Scalar);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 2)?;
        st.serialize_field("coeff", &self.1.to_string())?;
        st.serialize_field("exps", &Exps(self.0))?;
        st.end()
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term<'_>> = self.terms().iter().map(|(m, c)| Term(m, c)).collect();
        let mut st = s.serialize_struct("Polynomial", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coeff: String,
    exps: BTreeMap<String, u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoly {
    terms: Vec<RawTerm>,
}

fn convert(raw: RawPoly) -> Result<Polynomial, ParseError> {
    let mut terms = Vec::with_capacity(raw.terms.len());
    for t in raw.terms {
        let c: Scalar = t.coeff.parse()?;
        let mut pairs = Vec::with_capacity(t.exps.len());
        for (name, e) in t.exps {
            pairs.push((name.parse::<Var>()?, e));
        }
        terms.push((Monomial::from_pairs(pairs), c));
    }
    Ok(Polynomial::from_terms(terms))
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawPoly::deserialize(d)?;
        convert(raw).map_err(D::Error::custom)
    }
}

impl Polynomial {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Polynomial, ParseError> {
        serde_json::from_str(s)
            .map_err(|e| ParseError::new(format!("invalid polynomial JSON: {e}")))
    }
}
