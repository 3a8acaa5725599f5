//! Univariate polynomials over a field and Padé-type rational reconstruction.

use super::{null_space, ArithError, Field};

/// Dense univariate polynomial, coefficients from degree 0 upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Field> UniPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![S::one()] }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        UniPoly::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        let dd = d.degree().ok_or(ArithError::DivisionByZero)?;
        let lead_inv = d.coeffs[dd].inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![S::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&lead_inv);
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].sub(&c.mul(dj));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Result<Self, ArithError> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        match a.degree() {
            None => Ok(a),
            Some(d) => {
                let inv = a.coeffs[d].inv()?;
                Ok(a.scale(&inv))
            }
        }
    }

    /// Power series expansion of `self / den` through order `n` (inclusive).
    pub fn expand_over(&self, den: &Self, n: usize) -> Result<Vec<S>, ArithError> {
        let b0inv = den.coeff(0).inv()?;
        let mut out: Vec<S> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.coeff(i);
            for j in 1..=i.min(den.coeffs.len().saturating_sub(1)) {
                acc = acc.sub(&den.coeffs[j].mul(&out[i - j]));
            }
            out.push(acc.mul(&b0inv));
        }
        Ok(out)
    }
}

/// A certified rational function fitting a truncated series.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFit<S> {
    pub num: UniPoly<S>,
    /// Normalized to constant term 1.
    pub den: UniPoly<S>,
    /// Highest order at which the re-expansion was compared with the input.
    pub certified_through: usize,
}

/// Find `num/den` with `deg num <= dn`, `deg den <= dd` matching `s`.
///
/// The candidate comes from the Hankel null space on orders
/// `dn+1 ..= dn+dd+1` and is then checked against every supplied coefficient.
pub fn rational_reconstruct<S: Field>(s: &[S], dn: usize, dd: usize) -> Result<RationalFit<S>, ArithError> {
    let needed = dn + dd + 2;
    if s.len() < needed {
        return Err(ArithError::TooFewCoefficients { needed, have: s.len() });
    }
    let at = |i: isize| if i < 0 { S::zero() } else { s[i as usize].clone() };
    let rows: Vec<Vec<S>> = ((dn + 1)..=(dn + dd + 1))
        .map(|i| (0..=dd).map(|j| at(i as isize - j as isize)).collect())
        .collect();
    let basis = null_space(&rows, dd + 1);
    let last = s.len() - 1;
    for b in basis {
        // strip common powers of z
        let shift = b.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let b: Vec<S> = b[shift..].to_vec();
        let b0inv = b[0].inv()?;
        let den = UniPoly::new(b.iter().map(|c| c.mul(&b0inv)).collect());
        let mut a = Vec::with_capacity(dn + 1);
        for i in 0..=dn {
            let mut acc = S::zero();
            for j in 0..=i.min(den.coeffs.len().saturating_sub(1)) {
                acc = acc.add(&den.coeffs[j].mul(&s[i - j]));
            }
            a.push(acc);
        }
        let num = UniPoly::new(a);
        let (num, den) = reduce(num, den)?;
        let expansion = num.expand_over(&den, last)?;
        if expansion.iter().zip(s.iter()).all(|(x, y)| x == y) {
            return Ok(RationalFit { num, den, certified_through: last });
        }
    }
    Err(ArithError::NoRationalFit { dn, dd })
}

/// Fit `s` with a given denominator (constant term 1); the numerator is read off the product.
pub fn fit_with_denominator<S: Field>(s: &[S], den: &UniPoly<S>, dn: usize) -> Result<Option<RationalFit<S>>, ArithError> {
    if s.is_empty() || den.coeff(0) != S::one() {
        return Ok(None);
    }
    let num = UniPoly::new(
        (0..=dn.min(s.len() - 1))
            .map(|i| (0..=i.min(den.coeffs.len().saturating_sub(1))).fold(S::zero(), |acc, j| acc.add(&den.coeffs[j].mul(&s[i - j]))))
            .collect(),
    );
    let last = s.len() - 1;
    let expansion = num.expand_over(den, last)?;
    if expansion.iter().zip(s.iter()).all(|(x, y)| x == y) {
        Ok(Some(RationalFit { num, den: den.clone(), certified_through: last }))
    } else {
        Ok(None)
    }
}

fn reduce<S: Field>(num: UniPoly<S>, den: UniPoly<S>) -> Result<(UniPoly<S>, UniPoly<S>), ArithError> {
    let g = num.gcd(&den)?;
    let (num, den) = if g.degree().unwrap_or(0) > 0 {
        (num.div_rem(&g)?.0, den.div_rem(&g)?.0)
    } else {
        (num, den)
    };
    let c = den.coeff(0).inv()?;
    Ok((num.scale(&c), den.scale(&c)))
}
