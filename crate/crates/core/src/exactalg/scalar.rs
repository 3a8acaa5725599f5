//! Rational functions in t1, t2, q, u, a with half-integer exponents.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Mono, Poly, Var};
use super::{ArithError, Field, Ring};

/// A half-integer stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(pub i32);

impl HalfInt {
    pub fn from_int(k: i32) -> HalfInt {
        HalfInt(2 * k)
    }
    pub fn doubled(self) -> i32 {
        self.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `num / den`, kept in canonical form.
///
/// Canonical form: gcd removed (when the heuristic gcd succeeds), the
/// denominator has zero minimal exponent in every variable, the pair has
/// coprime integer content, and the denominator's grlex leading coefficient
/// is positive. Equality falls back to cross-multiplication.
#[derive(Clone)]
pub struct GroundScalar {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for GroundScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::render_scalar(self))
    }
}

impl fmt::Display for GroundScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::render_scalar(self))
    }
}

impl PartialEq for GroundScalar {
    fn eq(&self, o: &Self) -> bool {
        if self.num == o.num && self.den == o.den {
            return true;
        }
        if self.num.is_zero() || o.num.is_zero() {
            return self.num.is_zero() && o.num.is_zero();
        }
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl Eq for GroundScalar {}

impl GroundScalar {
    pub fn zero() -> Self {
        GroundScalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        GroundScalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn int(k: i64) -> Self {
        GroundScalar::from_poly(Poly::constant(BigInt::from(k)))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        GroundScalar::from_poly(Poly::constant(k))
    }

    pub fn from_poly(p: Poly) -> Self {
        GroundScalar { num: p, den: Poly::one() }
    }

    pub fn mono(m: Mono) -> Self {
        GroundScalar::from_poly(Poly::mono(m))
    }

    /// `v^k` for integer `k`.
    pub fn var(v: Var, k: i32) -> Self {
        GroundScalar::mono(Mono::var(v, k))
    }

    /// `v^(doubled/2)`.
    pub fn var_half(v: Var, doubled: i32) -> Self {
        GroundScalar::mono(Mono::var_half(v, doubled))
    }

    /// ħ^k = (t1 t2)^k.
    pub fn hbar(k: i32) -> Self {
        GroundScalar::hbar_half(2 * k)
    }

    /// ħ^(doubled/2).
    pub fn hbar_half(doubled: i32) -> Self {
        let mut e = [0; super::poly::NVARS];
        e[Var::T1.index()] = doubled;
        e[Var::T2.index()] = doubled;
        GroundScalar::mono(Mono(e))
    }

    /// Build from a numerator and denominator, reducing by their gcd.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(GroundScalar::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return GroundScalar::zero();
        }
        if den.as_term().is_some() {
            return GroundScalar::normalized(num, den);
        }
        match gcd(&num, &den) {
            Some(g) if !g.is_one() && !g.is_constant() => {
                let n = num.div_exact(&g).expect("gcd divides numerator");
                let d = den.div_exact(&g).expect("gcd divides denominator");
                GroundScalar::normalized(n, d)
            }
            _ => GroundScalar::normalized(num, den),
        }
    }

    /// Content and monomial normalization only.
    fn normalized(mut num: Poly, mut den: Poly) -> Self {
        if num.is_zero() {
            return GroundScalar::zero();
        }
        let m = den.min_mono();
        if !m.is_one() {
            let mi = m.inv();
            den = den.mul_mono(&mi);
            num = num.mul_mono(&mi);
        }
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_int(&c);
            den = den.div_int(&c);
        }
        if den.lead_is_negative() {
            num = num.neg();
            den = den.neg();
        }
        GroundScalar { num, den }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Returns `c·m` if the value is a single signed monomial with integer coefficient.
    pub fn as_monomial(&self) -> Option<(Mono, BigInt)> {
        let (dm, dc) = self.den.as_term()?;
        let (nm, nc) = self.num.as_term()?;
        if !dc.is_one() {
            return None;
        }
        Some((nm.div(dm), nc.clone()))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return GroundScalar { num: self.num.add(&o.num), den: Poly::one() };
            }
            return GroundScalar::reduced(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return GroundScalar::normalized(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        if o.den.is_one() {
            return GroundScalar::normalized(o.num.mul(&self.den).add(&self.num), self.den.clone());
        }
        let g = gcd(&self.den, &o.den).unwrap_or_else(Poly::one);
        if g.is_constant() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return GroundScalar::normalized(num, self.den.mul(&o.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let t = self.num.mul(&d1).add(&o.num.mul(&b1));
        if t.is_zero() {
            return GroundScalar::zero();
        }
        match gcd(&t, &g) {
            Some(g2) if !g2.is_constant() => {
                let n = t.div_exact(&g2).expect("gcd divides");
                let bb = self.den.div_exact(&g2).expect("gcd divides");
                GroundScalar::normalized(n, bb.mul(&d1))
            }
            _ => GroundScalar::normalized(t, self.den.mul(&d1)),
        }
    }

    pub fn neg(&self) -> Self {
        GroundScalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return GroundScalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return GroundScalar { num: self.num.mul(&o.num), den: Poly::one() };
        }
        let (a, b) = cancel(&self.num, &o.den);
        let (c, d) = cancel(&o.num, &self.den);
        GroundScalar::normalized(a.mul(&c), d.mul(&b))
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(GroundScalar::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&o.inv()?))
    }

    /// Integer power, negative allowed for nonzero values.
    pub fn powi(&self, k: i32) -> Result<Self, ArithError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Ok(GroundScalar::normalized(base.num.pow(e), base.den.pow(e)))
    }

    pub fn mul_rat(&self, r: &BigRational) -> Self {
        if Zero::is_zero(r) {
            return GroundScalar::zero();
        }
        GroundScalar::normalized(self.num.scale(r.numer()), self.den.scale(r.denom()))
    }

    /// Replace every variable v by v^k.
    pub fn adams(&self, k: u32) -> Self {
        let k = k as i32;
        GroundScalar::reduced(self.num.adams(k), self.den.adams(k))
    }

    /// Replace variable v by v^k (k may be negative).
    pub fn power_var(&self, v: Var, k: i32) -> Self {
        GroundScalar::reduced(self.num.power_var(v, k), self.den.power_var(v, k))
    }

    /// Order of vanishing at a = 0.
    pub fn a_valuation(&self) -> Result<HalfInt, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroValuation);
        }
        let nv = self.num.min_mono().exp(Var::A);
        let dv = self.den.min_mono().exp(Var::A);
        Ok(HalfInt(nv - dv))
    }

    /// Value at a = 0 when it exists.
    pub fn a_limit(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Ok(GroundScalar::zero());
        }
        let v = self.a_valuation()?;
        if v.0 < 0 {
            return Err(ArithError::LimitDoesNotExist { valuation: v });
        }
        if v.0 > 0 {
            return Ok(GroundScalar::zero());
        }
        let lowest = |p: &Poly| {
            let m = p.min_mono().exp(Var::A);
            Poly::from_terms(p.terms().iter().filter(|(mm, _)| mm.exp(Var::A) == m).map(|(mm, c)| {
                let mut e = mm.0;
                e[Var::A.index()] = 0;
                (Mono(e), c.clone())
            }))
        };
        GroundScalar::new(lowest(&self.num), lowest(&self.den))
    }

    /// Substitute a rational value for one variable (its exponents must be integers).
    pub fn substitute(&self, v: Var, value: &BigRational) -> Result<Self, ArithError> {
        let (pn, ln) = subst_poly(&self.num, v, value)?;
        let (pd, ld) = subst_poly(&self.den, v, value)?;
        GroundScalar::new(pn.scale(&ld), pd.scale(&ln))
    }
}

/// Evaluate `v = value` in `p`; returns `(p', l)` with `p = p' / l` for an integer `l`.
fn subst_poly(p: &Poly, v: Var, value: &BigRational) -> Result<(Poly, BigInt), ArithError> {
    let i = v.index();
    let mut acc: std::collections::BTreeMap<[i32; super::poly::NVARS], BigRational> = Default::default();
    for (m, c) in p.terms() {
        let e = m.0[i];
        if e % 2 != 0 {
            return Err(ArithError::DivisionByZero);
        }
        let e = e / 2;
        if e < 0 && Zero::is_zero(value) {
            return Err(ArithError::DivisionByZero);
        }
        let f = if e >= 0 {
            num_traits::pow(value.clone(), e as usize)
        } else {
            num_traits::pow(value.recip(), (-e) as usize)
        };
        let mut mm = m.0;
        mm[i] = 0;
        *acc.entry(mm).or_insert_with(<BigRational as Zero>::zero) += BigRational::from_integer(c.clone()) * f;
    }
    let l = acc.values().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let poly = Poly::from_terms(acc.into_iter().map(|(m, r)| (Mono(m), (r * BigRational::from_integer(l.clone())).to_integer())));
    Ok((poly, l))
}

/// Cancel the gcd of `a` and `b`.
fn cancel(a: &Poly, b: &Poly) -> (Poly, Poly) {
    if b.is_one() || a.is_one() {
        return (a.clone(), b.clone());
    }
    if b.as_term().is_some() || a.as_term().is_some() {
        return (a.clone(), b.clone());
    }
    match gcd(a, b) {
        Some(g) if !g.is_constant() => (
            a.div_exact(&g).expect("gcd divides"),
            b.div_exact(&g).expect("gcd divides"),
        ),
        _ => (a.clone(), b.clone()),
    }
}

impl Ring for GroundScalar {
    fn zero_like(&self) -> Self {
        GroundScalar::zero()
    }
    fn one_like(&self) -> Self {
        GroundScalar::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        GroundScalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        GroundScalar::sub(self, o)
    }
    fn neg(&self) -> Self {
        GroundScalar::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        GroundScalar::mul(self, o)
    }
    fn mul_rat(&self, r: &BigRational) -> Self {
        GroundScalar::mul_rat(self, r)
    }
}

impl Field for GroundScalar {
    fn zero() -> Self {
        GroundScalar::zero()
    }
    fn one() -> Self {
        GroundScalar::one()
    }
    fn from_rat(r: &BigRational) -> Self {
        GroundScalar::normalized(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
    }
    fn inv(&self) -> Result<Self, ArithError> {
        GroundScalar::inv(self)
    }
}

impl From<i64> for GroundScalar {
    fn from(k: i64) -> Self {
        GroundScalar::int(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::text::parse_scalar;

    fn p(s: &str) -> GroundScalar {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn hbar_cancels() {
        let x = p("t1*t2").div(&GroundScalar::hbar(1)).unwrap();
        assert!(x.is_one());
        let h = GroundScalar::hbar_half(1);
        assert_eq!(h.mul(&h), GroundScalar::hbar(1));
    }

    #[test]
    fn quotient_reduces_to_polynomial() {
        let x = p("1 - t1^2").div(&p("1 - t1")).unwrap();
        assert_eq!(x, p("1 + t1"));
        assert!(x.is_polynomial());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(p("t1").div(&GroundScalar::zero()), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn valuations_and_limits() {
        assert_eq!(p("a^2*t1").a_valuation().unwrap(), HalfInt(4));
        let x = GroundScalar::one().div(&p("a - a*t1")).unwrap();
        assert_eq!(x.a_valuation().unwrap(), HalfInt(-2));
        assert_eq!(p("1 - a*t2").a_valuation().unwrap(), HalfInt(0));
        assert_eq!(p("a*t1 + t2").a_limit().unwrap(), p("t2"));
        let y = GroundScalar::one().div(&p("1 - a^-1*t1")).unwrap();
        assert!(y.a_limit().unwrap().is_zero());
        assert!(matches!(p("a^-1").a_limit(), Err(ArithError::LimitDoesNotExist { .. })));
    }

    #[test]
    fn adams_substitutes() {
        let x = p("(1 - u)/(1 - t1^2)");
        assert_eq!(x.adams(2), p("(1 - u^2)/(1 - t1^4)"));
        assert_eq!(GroundScalar::hbar(1).adams(3), GroundScalar::hbar(3));
    }

    #[test]
    fn canonical_form_is_structural() {
        let x = p("(t1 - 1)/(t1^2 - 1)");
        let y = p("1/(1 + t1)");
        assert_eq!(x.num(), y.num());
        assert_eq!(x.den(), y.den());
    }

    #[test]
    fn substitute_rational() {
        let x = p("(q + t1)/(1 - q^-1)");
        let r = BigRational::new(2.into(), 3.into());
        // (2/3 + t1)/(1 - 3/2) = -(4/3 + 2 t1)
        assert_eq!(x.substitute(Var::Q, &r).unwrap(), p("-2*t1").sub(&GroundScalar::from_rat(&BigRational::new(4.into(), 3.into()))));
    }
}
