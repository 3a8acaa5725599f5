//! Coefficient domains: full symbolic mode, or evaluation at a rational point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::poly::{Poly, Var, NVARS};
use super::{Field, GroundScalar, Rat, TruncatedSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("variable {0} is not specialized")]
    Unspecialized(&'static str),
    #[error("half-integer power of {0} needs a rational square root")]
    NoSquareRoot(&'static str),
    #[error("specialization hits a pole")]
    Pole,
}

/// Maps exact ground scalars into a working coefficient field.
pub trait Domain: Sync + Send {
    type S: Field;
    fn embed(&self, x: &GroundScalar) -> Result<Self::S, DomainError>;
    fn label(&self) -> String;
}

/// Identity embedding.
#[derive(Clone, Copy, Debug, Default)]
pub struct Symbolic;

impl Domain for Symbolic {
    type S = GroundScalar;
    fn embed(&self, x: &GroundScalar) -> Result<GroundScalar, DomainError> {
        Ok(x.clone())
    }
    fn label(&self) -> String {
        "symbolic".to_string()
    }
}

/// Evaluation at rational values of some ground variables.
#[derive(Clone, Debug)]
pub struct Specialized {
    values: [Option<BigRational>; NVARS],
    roots: [Option<BigRational>; NVARS],
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Specialized {
    pub fn new<I: IntoIterator<Item = (Var, BigRational)>>(vals: I) -> Self {
        let mut values: [Option<BigRational>; NVARS] = Default::default();
        let mut roots: [Option<BigRational>; NVARS] = Default::default();
        for (v, r) in vals {
            roots[v.index()] = rational_sqrt(&r);
            values[v.index()] = Some(r);
        }
        Specialized { values, roots }
    }

    pub fn value(&self, v: Var) -> Option<&BigRational> {
        self.values[v.index()].as_ref()
    }

    pub fn assignments(&self) -> Vec<(Var, BigRational)> {
        Var::ALL.iter().filter_map(|v| self.value(*v).map(|r| (*v, r.clone()))).collect()
    }

    fn eval_poly(&self, p: &Poly) -> Result<BigRational, DomainError> {
        let mut acc = <BigRational as Zero>::zero();
        for (m, c) in p.terms() {
            let mut t = BigRational::from_integer(c.clone());
            for v in Var::ALL {
                let d = m.exp(v);
                if d == 0 {
                    continue;
                }
                let val = self.values[v.index()].as_ref().ok_or(DomainError::Unspecialized(v.name()))?;
                let (base, e) = if d % 2 == 0 {
                    (val.clone(), d / 2)
                } else {
                    (self.roots[v.index()].clone().ok_or(DomainError::NoSquareRoot(v.name()))?, d)
                };
                if base.is_zero() && e < 0 {
                    return Err(DomainError::Pole);
                }
                let f = if e >= 0 {
                    num_traits::pow(base, e as usize)
                } else {
                    num_traits::pow(base.recip(), (-e) as usize)
                };
                t *= f;
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl Domain for Specialized {
    type S = Rat;
    fn embed(&self, x: &GroundScalar) -> Result<Rat, DomainError> {
        let n = self.eval_poly(x.num())?;
        let d = self.eval_poly(x.den())?;
        if d.is_zero() {
            return Err(DomainError::Pole);
        }
        Ok(n / d)
    }
    fn label(&self) -> String {
        let parts: Vec<String> = self.assignments().iter().map(|(v, r)| format!("{}={}", v.name(), r)).collect();
        format!("specialized({})", parts.join(","))
    }
}

/// Embed every coefficient of a symbolic series.
pub fn embed_series<D: Domain>(dom: &D, s: &TruncatedSeries<GroundScalar>) -> Result<TruncatedSeries<D::S>, DomainError> {
    let (ny, nz) = s.orders();
    let mut out = TruncatedSeries::zero(ny, nz);
    for (&(i, j), c) in s.iter() {
        out.set(i, j, dom.embed(c)?);
    }
    Ok(out)
}

/// Parse `var=rat` (e.g. `t1=3/7`).
pub fn parse_assignment(s: &str) -> Result<(Var, BigRational), String> {
    let (name, val) = s.split_once('=').ok_or_else(|| format!("expected var=rational, got {s:?}"))?;
    let v = Var::from_name(name.trim()).ok_or_else(|| format!("unknown variable {:?}", name.trim()))?;
    let val = val.trim();
    let (n, d) = match val.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (val, "1"),
    };
    let parse_int = |t: &str| -> Result<BigInt, String> {
        if t.is_empty() || t.len() > 4096 {
            return Err(format!("bad integer {t:?}"));
        }
        t.parse::<BigInt>().map_err(|_| format!("bad integer {t:?}"))
    };
    let n = parse_int(n)?;
    let d = parse_int(d)?;
    if d.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok((v, BigRational::new(n, d)))
}

/// Values that make some factor 1 - v^k or v vanish are rejected up front.
pub fn check_generic(vals: &[(Var, BigRational)]) -> Result<(), String> {
    for (i, (v, r)) in vals.iter().enumerate() {
        if r.is_zero() {
            return Err(format!("{} must be nonzero", v.name()));
        }
        if r.abs().is_one() {
            return Err(format!("{} must not be ±1", v.name()));
        }
        for (w, s) in &vals[..i] {
            if w == v {
                return Err(format!("{} specialized twice", v.name()));
            }
            if r == s {
                return Err(format!("{} and {} must be distinct", w.name(), v.name()));
            }
        }
    }
    Ok(())
}
