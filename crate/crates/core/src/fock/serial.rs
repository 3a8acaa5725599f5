//! JSON rows for Fock elements with series coefficients.
//!
//! Each row is `{"y":i,"z":j,"p":[parts],"num":"…","den":"…"}`, the coefficient of
//! y^i z^j p_μ. Exponents in `num`/`den` are written as halves, e.g. `t1^(3/2)`.

use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{FockElement, FockError};
use crate::combinat::partition::Partition;
use crate::exactalg::text::{parse_fraction, render_poly};
use crate::exactalg::{Field, GroundScalar, TruncatedSeries};

pub const SCHEMA: &str = "fock-series/1: rows {y,z,p,num,den}; exponents are half-integers, t1^(3/2) style";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffRow {
    pub y: u32,
    pub z: u32,
    pub p: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FockDocument {
    pub schema: String,
    pub y_order: u32,
    pub z_order: u32,
    pub terms: Vec<CoeffRow>,
}

/// Numerator and denominator in canonical text.
pub trait ScalarText {
    fn text_parts(&self) -> (String, String);
}

impl ScalarText for GroundScalar {
    fn text_parts(&self) -> (String, String) {
        (render_poly(self.num()), render_poly(self.den()))
    }
}

impl ScalarText for BigRational {
    fn text_parts(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }
}

pub fn to_rows<S: Field + ScalarText>(f: &FockElement<TruncatedSeries<S>>) -> Vec<CoeffRow> {
    let mut rows = Vec::new();
    for (mu, s) in f.iter() {
        for (&(y, z), c) in s.iter() {
            let (num, den) = c.text_parts();
            rows.push(CoeffRow { y, z, p: mu.parts().to_vec(), num, den });
        }
    }
    rows.sort_by(|a, b| (a.y, a.z, &a.p).cmp(&(b.y, b.z, &b.p)));
    rows
}

pub fn from_rows(rows: &[CoeffRow], ny: u32, nz: u32) -> Result<FockElement<TruncatedSeries<GroundScalar>>, FockError> {
    let mut seen = BTreeSet::new();
    let mut f = FockElement::zero(ny);
    for r in rows {
        if r.y > ny || r.z > nz {
            return Err(FockError::Document(format!("row y={} z={} exceeds orders ({ny},{nz})", r.y, r.z)));
        }
        let mu = Partition::new(r.p.clone()).map_err(|e| FockError::Partition(e.to_string()))?;
        if mu.size() > ny {
            return Err(FockError::Document(format!("p={} exceeds degree {ny}", mu)));
        }
        if !seen.insert((r.y, r.z, mu.clone())) {
            return Err(FockError::Document(format!("duplicate row y={} z={} p={}", r.y, r.z, mu)));
        }
        let c = parse_fraction(&r.num, &r.den)?;
        f.add_term(mu, TruncatedSeries::monomial(r.y, r.z, c, ny, nz));
    }
    Ok(f)
}

pub fn to_json<S: Field + ScalarText>(f: &FockElement<TruncatedSeries<S>>, ny: u32, nz: u32) -> String {
    let doc = FockDocument { schema: SCHEMA.to_string(), y_order: ny, z_order: nz, terms: to_rows(f) };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

pub fn from_json(s: &str) -> Result<FockElement<TruncatedSeries<GroundScalar>>, FockError> {
    let doc: FockDocument = serde_json::from_str(s).map_err(|e| FockError::Document(e.to_string()))?;
    if doc.y_order > 64 || doc.z_order > 64 {
        return Err(FockError::Document("orders above 64 are not accepted".into()));
    }
    from_rows(&doc.terms, doc.y_order, doc.z_order)
}
