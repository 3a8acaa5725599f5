//! Truncated power series in y (Fock degree) and z (Kähler parameter).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::scalar::GroundScalar;
use super::{ArithError, Field, Ring};

/// Coefficients of y^i z^j for i <= ny, j <= nz.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    coeffs: BTreeMap<(u32, u32), S>,
    ny: u32,
    nz: u32,
}

impl<S: Field> fmt::Debug for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{},{}]{{", self.ny, self.nz)?;
        for (k, (ij, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "y^{} z^{}: {:?}", ij.0, ij.1, c)?;
        }
        write!(f, "}}")
    }
}

impl<S: Field> TruncatedSeries<S> {
    pub fn zero(ny: u32, nz: u32) -> Self {
        TruncatedSeries { coeffs: BTreeMap::new(), ny, nz }
    }

    pub fn constant(c: S, ny: u32, nz: u32) -> Self {
        TruncatedSeries::monomial(0, 0, c, ny, nz)
    }

    pub fn one(ny: u32, nz: u32) -> Self {
        TruncatedSeries::constant(S::one(), ny, nz)
    }

    /// `c y^i z^j`, dropped if outside the bounds.
    pub fn monomial(i: u32, j: u32, c: S, ny: u32, nz: u32) -> Self {
        let mut s = TruncatedSeries::zero(ny, nz);
        s.set(i, j, c);
        s
    }

    pub fn from_coeffs<I: IntoIterator<Item = ((u32, u32), S)>>(it: I, ny: u32, nz: u32) -> Self {
        let mut s = TruncatedSeries::zero(ny, nz);
        for ((i, j), c) in it {
            let cur: S = s.coeff(i, j);
            s.set(i, j, cur.add(&c));
        }
        s
    }

    pub fn orders(&self) -> (u32, u32) {
        (self.ny, self.nz)
    }

    pub fn coeff(&self, i: u32, j: u32) -> S {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn set(&mut self, i: u32, j: u32, c: S) {
        if i > self.ny || j > self.nz || c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &S)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> S {
        self.coeff(0, 0)
    }

    pub fn truncate(&self, ny: u32, nz: u32) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().filter(|(k, _)| k.0 <= ny && k.1 <= nz).map(|(k, v)| (*k, v.clone())).collect(),
            ny: ny.min(self.ny),
            nz: nz.min(self.nz),
        }
    }

    pub fn map_coeffs<F: Fn(&S) -> S>(&self, f: F) -> Self {
        TruncatedSeries::from_coeffs(self.coeffs.iter().map(|(k, v)| (*k, f(v))), self.ny, self.nz)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map_coeffs(|v| v.mul(c))
    }

    /// Substitute z -> c·z.
    pub fn scale_z(&self, c: &S) -> Self {
        let mut pows = vec![S::one()];
        for j in 1..=self.nz as usize {
            let next = pows[j - 1].mul(c);
            pows.push(next);
        }
        TruncatedSeries::from_coeffs(
            self.coeffs.iter().map(|(k, v)| (*k, v.mul(&pows[k.1 as usize]))),
            self.ny,
            self.nz,
        )
    }

    /// Coefficients of z^0..=nz at a fixed y-power.
    pub fn z_slice(&self, i: u32) -> Vec<S> {
        (0..=self.nz).map(|j| self.coeff(i, j)).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let (ny, nz) = (self.ny.min(o.ny), self.nz.min(o.nz));
        let mut out = self.truncate(ny, nz);
        for (k, v) in o.coeffs.iter() {
            if k.0 <= ny && k.1 <= nz {
                let cur = out.coeff(k.0, k.1);
                out.set(k.0, k.1, cur.add(v));
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|v| v.neg())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (ny, nz) = (self.ny.min(o.ny), self.nz.min(o.nz));
        let mut acc: BTreeMap<(u32, u32), S> = BTreeMap::new();
        for (a, x) in self.coeffs.iter() {
            for (b, w) in o.coeffs.iter() {
                let k = (a.0 + b.0, a.1 + b.1);
                if k.0 > ny || k.1 > nz {
                    continue;
                }
                let p = x.mul(w);
                match acc.get_mut(&k) {
                    Some(e) => *e = e.add(&p),
                    None => {
                        acc.insert(k, p);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        TruncatedSeries { coeffs: acc, ny, nz }
    }

    pub fn mul_rat(&self, r: &BigRational) -> Self {
        self.map_coeffs(|v| v.mul_rat(r))
    }

    fn total_order(&self) -> u32 {
        self.ny + self.nz
    }

    /// exp(f) for f with zero constant term.
    pub fn exp(&self) -> Result<Self, ArithError> {
        if !self.constant_term().is_zero() {
            return Err(ArithError::BadConstantTerm { expected: "zero" });
        }
        let one = TruncatedSeries::one(self.ny, self.nz);
        let mut acc = one.clone();
        for m in (1..=self.total_order()).rev() {
            let r = BigRational::new(1.into(), (m as i64).into());
            acc = one.add(&self.mul(&acc).mul_rat(&r));
        }
        Ok(acc)
    }

    /// log(f) for f with constant term one.
    pub fn log(&self) -> Result<Self, ArithError> {
        if !self.constant_term().sub(&S::one()).is_zero() {
            return Err(ArithError::BadConstantTerm { expected: "one" });
        }
        let g = self.sub(&TruncatedSeries::one(self.ny, self.nz));
        let mut out = TruncatedSeries::zero(self.ny, self.nz);
        let mut pw = g.clone();
        for m in 1..=self.total_order() {
            let sign = if m % 2 == 1 { 1 } else { -1 };
            out = out.add(&pw.mul_rat(&BigRational::new(sign.into(), (m as i64).into())));
            pw = pw.mul(&g);
            if pw.is_empty() {
                break;
            }
        }
        Ok(out)
    }

    /// Σ_{m>=0} g^m, the inverse of 1 - g.
    pub fn geom(&self) -> Result<Self, ArithError> {
        if !self.constant_term().is_zero() {
            return Err(ArithError::BadConstantTerm { expected: "zero" });
        }
        let one = TruncatedSeries::one(self.ny, self.nz);
        let mut acc = one.clone();
        for _ in 0..self.total_order() {
            acc = one.add(&self.mul(&acc));
        }
        Ok(acc)
    }

    /// Multiplicative inverse when the constant term is invertible.
    pub fn inv(&self) -> Result<Self, ArithError> {
        let c0 = self.constant_term();
        let c0i = c0.inv()?;
        // f = c0 (1 - g)
        let g = TruncatedSeries::one(self.ny, self.nz).sub(&self.scale(&c0i));
        Ok(g.geom()?.scale(&c0i))
    }
}

impl TruncatedSeries<GroundScalar> {
    /// Replace every variable (ground ones, y and z) by its k-th power.
    pub fn adams(&self, k: u32) -> Self {
        TruncatedSeries::from_coeffs(
            self.coeffs.iter().map(|(ij, c)| ((ij.0 * k, ij.1 * k), c.adams(k))),
            self.ny,
            self.nz,
        )
    }
}

impl<S: Field> Ring for TruncatedSeries<S> {
    fn zero_like(&self) -> Self {
        TruncatedSeries::zero(self.ny, self.nz)
    }
    fn one_like(&self) -> Self {
        TruncatedSeries::one(self.ny, self.nz)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        TruncatedSeries::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        TruncatedSeries::sub(self, o)
    }
    fn neg(&self) -> Self {
        TruncatedSeries::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        TruncatedSeries::mul(self, o)
    }
    fn mul_rat(&self, r: &BigRational) -> Self {
        TruncatedSeries::mul_rat(self, r)
    }
}
