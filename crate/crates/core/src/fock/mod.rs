//! Fock space Q[p1, p2, ...] and its tensor square, with coefficients in any ring.

mod serial;
mod tensor;

use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

use crate::combinat::partition::{partitions_upto, Partition};
use crate::exactalg::domain::{Domain, DomainError};
use crate::exactalg::text::ParseError;
use crate::exactalg::{ArithError, GroundScalar, Ring, TruncatedSeries, Var};

pub use serial::{from_json, from_rows, to_json, to_rows, CoeffRow, FockDocument, ScalarText};
pub use tensor::{jj0_rule, tensor_exp, TensorFockElement};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("bad coefficient text: {0}")]
    Parse(#[from] ParseError),
    #[error("bad partition in row: {0}")]
    Partition(String),
    #[error("malformed document: {0}")]
    Document(String),
    #[error("Heisenberg index must be nonzero")]
    ZeroIndex,
}

/// Polynomial in power sums: p_μ ↦ coefficient, truncated at total degree `max_degree`.
#[derive(Clone, PartialEq, Debug)]
pub struct FockElement<C> {
    terms: BTreeMap<Partition, C>,
    max_degree: u32,
}

impl<C: Ring> FockElement<C> {
    pub fn zero(max_degree: u32) -> Self {
        FockElement { terms: BTreeMap::new(), max_degree }
    }

    pub fn constant(c: C, max_degree: u32) -> Self {
        FockElement::monomial(Partition::empty(), c, max_degree)
    }

    pub fn monomial(mu: Partition, c: C, max_degree: u32) -> Self {
        let mut f = FockElement::zero(max_degree);
        f.add_term(mu, c);
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, C)>>(it: I, max_degree: u32) -> Self {
        let mut f = FockElement::zero(max_degree);
        for (mu, c) in it {
            f.add_term(mu, c);
        }
        f
    }

    /// Add `c p_μ`; terms above the truncation are dropped.
    pub fn add_term(&mut self, mu: Partition, c: C) {
        if mu.size() > self.max_degree || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mu) {
            Some(e) => {
                *e = e.add(&c);
                if e.is_zero() {
                    self.terms.remove(&mu);
                }
            }
            None => {
                self.terms.insert(mu, c);
            }
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn get(&self, mu: &Partition) -> Option<&C> {
        self.terms.get(mu)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The degree-n part.
    pub fn homogeneous(&self, n: u32) -> Self {
        FockElement {
            terms: self.terms.iter().filter(|(mu, _)| mu.size() == n).map(|(m, c)| (m.clone(), c.clone())).collect(),
            max_degree: self.max_degree,
        }
    }

    pub fn truncate(&self, max_degree: u32) -> Self {
        FockElement::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.clone())), max_degree)
    }

    pub fn map_coeffs<D: Ring, F: Fn(&C) -> D>(&self, f: F) -> FockElement<D> {
        FockElement::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))), self.max_degree)
    }

    pub fn try_map_coeffs<D: Ring, E, F: Fn(&C) -> Result<D, E>>(&self, f: F) -> Result<FockElement<D>, E> {
        let mut out = FockElement::zero(self.max_degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.truncate(self.max_degree.min(o.max_degree));
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn mul_rat(&self, r: &BigRational) -> Self {
        self.map_coeffs(|x| x.mul_rat(r))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.max_degree.min(o.max_degree);
        let mut out = FockElement::zero(n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if m1.size() + m2.size() <= n {
                    out.add_term(m1.merge(m2), c1.mul(c2));
                }
            }
        }
        out
    }

    /// exp(f) for f without a degree-0 term.
    pub fn exp(&self, unit: &C) -> Result<Self, FockError> {
        if self.terms.contains_key(&Partition::empty()) {
            return Err(ArithError::BadConstantTerm { expected: "zero" }.into());
        }
        let one = FockElement::constant(unit.clone(), self.max_degree);
        let mut acc = one.clone();
        for m in (1..=self.max_degree).rev() {
            acc = one.add(&self.mul(&acc).mul_rat(&BigRational::new(1.into(), (m as i64).into())));
        }
        Ok(acc)
    }

    /// First key where the two elements differ, with both coefficients.
    pub fn first_difference(&self, o: &Self) -> Option<(Partition, Option<C>, Option<C>)> {
        let keys: std::collections::BTreeSet<&Partition> = self.terms.keys().chain(o.terms.keys()).collect();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.terms.get(k), o.terms.get(k));
            if a == b {
                None
            } else {
                Some((k.clone(), a.cloned(), b.cloned()))
            }
        })
    }
}

/// d_k = (t1^{k/2} - t1^{-k/2})(t2^{k/2} - t2^{-k/2}).
pub fn heis_constant(k: u32) -> GroundScalar {
    let k = k as i32;
    let f = |v: Var| GroundScalar::var_half(v, k).sub(&GroundScalar::var_half(v, -k));
    f(Var::T1).mul(&f(Var::T2))
}

/// n_k = d_k (ħ^{k/2} - ħ^{-k/2}) / k.
pub fn n_constant(k: u32) -> GroundScalar {
    let h = GroundScalar::hbar_half(k as i32).sub(&GroundScalar::hbar_half(-(k as i32)));
    heis_constant(k).mul(&h).mul_rat(&BigRational::new(1.into(), (k as i64).into()))
}

/// Slope-0 Heisenberg generator: -k ∂/∂p_k for k > 0, multiplication by -p_{|k|}/d_{|k|} for k < 0.
pub fn heis<D: Domain>(k: i32, f: &FockElement<D::S>, dom: &D) -> Result<FockElement<D::S>, FockError> {
    use crate::exactalg::Field;
    if k == 0 {
        return Err(FockError::ZeroIndex);
    }
    let n = f.max_degree;
    let a = k.unsigned_abs();
    let mut out = FockElement::zero(n);
    if k > 0 {
        for (mu, c) in &f.terms {
            let m = mu.parts().iter().filter(|&&p| p == a).count() as i64;
            if let Some(rest) = mu.remove_part(a) {
                out.add_term(rest, c.mul_int(-(k as i64) * m));
            }
        }
    } else {
        let factor = dom.embed(&heis_constant(a))?.inv()?.neg();
        let pk = Partition::row(a);
        for (mu, c) in &f.terms {
            out.add_term(mu.merge(&pk), c.mul(&factor));
        }
    }
    Ok(out)
}

/// exp(Σ_k c_k p_k), truncated at degree `n`: coefficient of p_μ is Π_k c_k^{m_k}/m_k!.
pub fn exp_linear<C: Ring>(c: &BTreeMap<u32, C>, n: u32, unit: &C) -> FockElement<C> {
    let mut out = FockElement::zero(n);
    'outer: for mu in partitions_upto(n) {
        let mut coeff = unit.clone();
        let mut denom = num_bigint::BigInt::from(1);
        for (k, &m) in mu.multiplicities().iter().enumerate().skip(1) {
            if m == 0 {
                continue;
            }
            let Some(ck) = c.get(&(k as u32)) else { continue 'outer };
            coeff = coeff.mul(&ck.pow(m));
            for j in 1..=m {
                denom *= j;
            }
        }
        out.add_term(mu, coeff.mul_rat(&BigRational::new(1.into(), denom)));
    }
    out
}

/// The p_k coefficients ψ^k(c1)/k of the plethystic exponential.
pub fn pexp_coefficients(c1: &TruncatedSeries<GroundScalar>, n: u32) -> BTreeMap<u32, TruncatedSeries<GroundScalar>> {
    (1..=n)
        .map(|k| (k, c1.adams(k).mul_rat(&BigRational::new(1.into(), (k as i64).into()))))
        .filter(|(_, s)| !s.is_empty())
        .collect()
}

/// S•(c1 p_1) = exp(Σ_k ψ^k(c1) p_k / k).
pub fn pexp(c1: &TruncatedSeries<GroundScalar>, n: u32) -> FockElement<TruncatedSeries<GroundScalar>> {
    let (ny, nz) = c1.orders();
    exp_linear(&pexp_coefficients(c1, n), n, &TruncatedSeries::one(ny, nz))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::text::parse_scalar;
    use crate::exactalg::Symbolic;

    fn s(x: &str) -> GroundScalar {
        parse_scalar(x).unwrap()
    }

    fn p(x: &str) -> Partition {
        x.parse().unwrap()
    }

    #[test]
    fn heis_examples() {
        let p1 = FockElement::monomial(p("1"), GroundScalar::one(), 3);
        assert_eq!(heis(1, &p1, &Symbolic).unwrap(), FockElement::constant(GroundScalar::int(-1), 3));
        assert!(heis(2, &p1, &Symbolic).unwrap().is_zero());
        let one = FockElement::constant(GroundScalar::one(), 3);
        let got = heis(-1, &one, &Symbolic).unwrap();
        let d = s("t1^(-1/2) - t1^(1/2)").mul(&s("t2^(-1/2) - t2^(1/2)"));
        assert_eq!(got.get(&p("1")).unwrap(), &GroundScalar::int(-1).div(&d).unwrap());
    }

    #[test]
    fn exp_linear_examples() {
        let x = s("u");
        let w = s("q");
        let c = BTreeMap::from([(1, x.clone()), (2, w.clone())]);
        let f = exp_linear(&c, 2, &GroundScalar::one());
        assert_eq!(f.len(), 4);
        assert_eq!(f.get(&p("1,1")).unwrap(), &x.mul(&x).mul_rat(&BigRational::new(1.into(), 2.into())));
        assert_eq!(f.get(&p("2")).unwrap(), &w);
        let g = FockElement::from_terms([(p("1"), x.clone()), (p("2"), w.clone())], 2);
        assert_eq!(g.exp(&GroundScalar::one()).unwrap(), f);
    }

    #[test]
    fn pexp_is_additive() {
        let a = TruncatedSeries::monomial(1, 0, s("u"), 3, 2);
        let b = TruncatedSeries::monomial(1, 1, s("t1"), 3, 2);
        assert_eq!(pexp(&a.add(&b), 3), pexp(&a, 3).mul(&pexp(&b, 3)));
        assert_eq!(pexp(&TruncatedSeries::zero(3, 2), 3), FockElement::constant(TruncatedSeries::one(3, 2), 3));
    }
}
