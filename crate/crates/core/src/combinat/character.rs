//! Characters of torus representations: weights with integer multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::CombinatError;
use crate::exactalg::poly::{Mono, Poly, Var, NVARS};
use crate::exactalg::text::render_mono;
use crate::exactalg::GroundScalar;

/// Ordering key for weights: the raw doubled exponent vector.
type Key = [i32; NVARS];

/// Finite formal sum of weights.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Character {
    weights: BTreeMap<Key, i64>,
}

impl Character {
    pub fn zero() -> Self {
        Character::default()
    }

    pub fn weight(m: Mono) -> Self {
        Character::from_weights([(m, 1)])
    }

    pub fn from_weights<I: IntoIterator<Item = (Mono, i64)>>(it: I) -> Self {
        let mut c = Character::zero();
        for (m, k) in it {
            c.add_weight(m, k);
        }
        c
    }

    pub fn add_weight(&mut self, m: Mono, k: i64) {
        let e = self.weights.entry(m.0).or_insert(0);
        *e += k;
        if *e == 0 {
            self.weights.remove(&m.0);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Mono, i64)> + '_ {
        self.weights.iter().map(|(k, v)| (Mono(*k), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn multiplicity(&self, m: Mono) -> i64 {
        self.weights.get(&m.0).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> i64 {
        self.weights.values().sum()
    }

    pub fn add(&self, o: &Character) -> Character {
        let mut c = self.clone();
        for (m, k) in o.iter() {
            c.add_weight(m, k);
        }
        c
    }

    pub fn neg(&self) -> Character {
        Character { weights: self.weights.iter().map(|(k, v)| (*k, -v)).collect() }
    }

    pub fn sub(&self, o: &Character) -> Character {
        self.add(&o.neg())
    }

    /// Tensor product.
    pub fn mul(&self, o: &Character) -> Character {
        let mut c = Character::zero();
        for (m1, k1) in self.iter() {
            for (m2, k2) in o.iter() {
                c.add_weight(m1.mul(&m2), k1 * k2);
            }
        }
        c
    }

    pub fn scale(&self, m: Mono) -> Character {
        Character::from_weights(self.iter().map(|(w, k)| (w.mul(&m), k)))
    }

    pub fn dual(&self) -> Character {
        Character::from_weights(self.iter().map(|(w, k)| (w.inv(), k)))
    }

    /// Raise every weight to the k-th power.
    pub fn adams(&self, k: i32) -> Character {
        Character::from_weights(self.iter().map(|(w, m)| (w.pow(k), m)))
    }

    /// Product of weights with multiplicity.
    pub fn det(&self) -> Mono {
        self.iter().fold(Mono::ONE, |acc, (w, k)| acc.mul(&w.pow(k as i32)))
    }

    /// Weights whose a-exponent satisfies the predicate.
    pub fn filter_a<F: Fn(i32) -> bool>(&self, pred: F) -> Character {
        Character::from_weights(self.iter().filter(|(w, _)| pred(w.exp(Var::A))))
    }

    /// Λ•(C) = Π_w (1 - w^{-1})^{mult(w)}.
    pub fn lambda_dot(&self) -> Result<GroundScalar, CombinatError> {
        let mut num = Poly::one();
        let mut den = Poly::one();
        for (w, k) in self.iter() {
            if w.is_one() {
                return Err(CombinatError::TrivialWeight);
            }
            let f = Poly::one().sub(&Poly::mono(w.inv()));
            let fk = f.pow(k.unsigned_abs() as u32);
            if k > 0 {
                num = num.mul(&fk);
            } else {
                den = den.mul(&fk);
            }
        }
        Ok(GroundScalar::new(num, den).expect("nonzero factors"))
    }

    /// e_k of the weights (with multiplicity; all multiplicities must be positive).
    pub fn elementary(&self, k: usize) -> Result<GroundScalar, CombinatError> {
        let mut ws = Vec::new();
        for (w, m) in self.iter() {
            if m < 0 {
                return Err(CombinatError::VirtualCharacter);
            }
            for _ in 0..m {
                ws.push(w);
            }
        }
        if k > ws.len() {
            return Err(CombinatError::ChernIndex { k, rank: ws.len() });
        }
        // e[j] after processing a prefix of the weights
        let mut e = vec![Poly::zero(); k + 1];
        e[0] = Poly::one();
        for w in ws {
            for j in (1..=k).rev() {
                e[j] = e[j].add(&e[j - 1].mul_term(&w, &BigInt::one()));
            }
        }
        Ok(GroundScalar::from_poly(e[k].clone()))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weights.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, k)) in self.iter().enumerate() {
            let sign = if k < 0 { "-" } else { "+" };
            if i == 0 {
                if k < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            write!(f, "{}·{}", k.abs(), render_mono(&m))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self)
    }
}
