//! The tensor square Fock ⊗ Fock: p^{(1)}_μ1 p^{(2)}_μ2 ↦ coefficient.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{exp_linear, FockElement};
use crate::combinat::partition::Partition;
use crate::exactalg::{GroundScalar, Ring, TruncatedSeries};

/// Truncated at joint degree |μ1| + |μ2| <= `max_degree`.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorFockElement<C> {
    terms: BTreeMap<(Partition, Partition), C>,
    max_degree: u32,
}

impl<C: Ring> TensorFockElement<C> {
    pub fn zero(max_degree: u32) -> Self {
        TensorFockElement { terms: BTreeMap::new(), max_degree }
    }

    pub fn monomial(first: Partition, second: Partition, c: C, max_degree: u32) -> Self {
        let mut t = TensorFockElement::zero(max_degree);
        t.add_term(first, second, c);
        t
    }

    pub fn from_terms<I: IntoIterator<Item = ((Partition, Partition), C)>>(it: I, max_degree: u32) -> Self {
        let mut t = TensorFockElement::zero(max_degree);
        for ((a, b), c) in it {
            t.add_term(a, b, c);
        }
        t
    }

    pub fn add_term(&mut self, first: Partition, second: Partition, c: C) {
        if first.size() + second.size() > self.max_degree || c.is_zero() {
            return;
        }
        let key = (first, second);
        match self.terms.get_mut(&key) {
            Some(e) => {
                *e = e.add(&c);
                if e.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn get(&self, first: &Partition, second: &Partition) -> Option<&C> {
        self.terms.get(&(first.clone(), second.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Partition, Partition), &C)> {
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

    /// f ⊗ 1.
    pub fn from_first(f: &FockElement<C>) -> Self {
        TensorFockElement::from_terms(f.iter().map(|(m, c)| ((m.clone(), Partition::empty()), c.clone())), f.max_degree())
    }

    /// 1 ⊗ f.
    pub fn from_second(f: &FockElement<C>) -> Self {
        TensorFockElement::from_terms(f.iter().map(|(m, c)| ((Partition::empty(), m.clone()), c.clone())), f.max_degree())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = TensorFockElement::from_terms(self.terms.clone(), self.max_degree.min(o.max_degree));
        for ((a, b), c) in &o.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TensorFockElement::from_terms(self.terms.iter().map(|(k, c)| (k.clone(), c.neg())), self.max_degree)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, x: &C) -> Self {
        TensorFockElement::from_terms(self.terms.iter().map(|(k, c)| (k.clone(), c.mul(x))), self.max_degree)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.max_degree.min(o.max_degree);
        let mut out = TensorFockElement::zero(n);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                if a1.size() + b1.size() + a2.size() + b2.size() <= n {
                    out.add_term(a1.merge(a2), b1.merge(b2), c1.mul(c2));
                }
            }
        }
        out
    }

    /// Algebra map fixing p^{(1)}_k and sending p^{(2)}_k to p^{(2)}_k + s_k p^{(1)}_k.
    ///
    /// Indices missing from `rule` have s_k = 0.
    pub fn jj0_substitute(&self, rule: &BTreeMap<u32, C>) -> Self {
        let mut out = TensorFockElement::zero(self.max_degree);
        for ((first, second), c) in &self.terms {
            // Partial expansions: (extra parts for p^(1), remaining p^(2) parts, coefficient).
            let mut partial: Vec<(Vec<u32>, Vec<u32>, C)> = vec![(Vec::new(), Vec::new(), c.clone())];
            for (k, &m) in second.multiplicities().iter().enumerate().skip(1) {
                if m == 0 {
                    continue;
                }
                let k = k as u32;
                let s = rule.get(&k);
                let mut next = Vec::new();
                for (moved, kept, coeff) in &partial {
                    let top = if s.is_some() { m } else { 0 };
                    let mut binom = BigInt::from(1);
                    for j in 0..=top {
                        if j > 0 {
                            binom = binom * BigInt::from(m - j + 1) / BigInt::from(j);
                        }
                        let mut coeff = coeff.mul_rat(&BigRational::from_integer(binom.clone()));
                        if let Some(s) = s {
                            coeff = coeff.mul(&s.pow(j));
                        }
                        if coeff.is_zero() {
                            continue;
                        }
                        let mut moved = moved.clone();
                        moved.extend(std::iter::repeat_n(k, j as usize));
                        let mut kept = kept.clone();
                        kept.extend(std::iter::repeat_n(k, (m - j) as usize));
                        next.push((moved, kept, coeff));
                    }
                }
                partial = next;
            }
            for (moved, kept, coeff) in partial {
                let moved = Partition::new(moved).expect("positive parts");
                let kept = Partition::new(kept).expect("positive parts");
                out.add_term(first.merge(&moved), kept, coeff);
            }
        }
        out
    }

    /// Set every p^{(2)}_k to zero.
    pub fn project_second(&self) -> FockElement<C> {
        FockElement::from_terms(
            self.terms.iter().filter(|((_, b), _)| b.is_empty()).map(|((a, _), c)| (a.clone(), c.clone())),
            self.max_degree,
        )
    }
}

/// exp(Σ c_k p^{(1)}_k + Σ d_k p^{(2)}_k), truncated at joint degree `n`.
pub fn tensor_exp<C: Ring>(c: &BTreeMap<u32, C>, d: &BTreeMap<u32, C>, n: u32, unit: &C) -> TensorFockElement<C> {
    let e1 = exp_linear(c, n, unit);
    let e2 = exp_linear(d, n, unit);
    let mut out = TensorFockElement::zero(n);
    for (a, x) in e1.iter() {
        for (b, w) in e2.iter() {
            if a.size() + b.size() <= n {
                out.add_term(a.clone(), b.clone(), x.mul(w));
            }
        }
    }
    out
}

/// s_k = (-1)^k z^k ħ^k (ħ^k - ħ^{-k}) / (1 - z^k), expanded through z^nz, for k <= n.
pub fn jj0_rule(n: u32, ny: u32, nz: u32) -> BTreeMap<u32, TruncatedSeries<GroundScalar>> {
    (1..=n)
        .map(|k| {
            let ki = k as i32;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = GroundScalar::hbar(ki).mul(&GroundScalar::hbar(ki).sub(&GroundScalar::hbar(-ki))).mul_int(sign);
            let mut s = TruncatedSeries::zero(ny, nz);
            let mut j = k;
            while j <= nz {
                s.set(0, j, c.clone());
                j += k;
            }
            (k, s)
        })
        .filter(|(_, s)| !s.is_empty())
        .collect()
}
