//! Strategies and independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use capvertex::combinat::Partition;
use capvertex::exactalg::text::parse_scalar;
use capvertex::exactalg::{Field, GroundScalar, Mono, Poly, Rat, TruncatedSeries, UniPoly};
use capvertex::fock::TensorFockElement;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub fn s(x: &str) -> GroundScalar {
    parse_scalar(x).unwrap_or_else(|e| panic!("{x}: {e}"))
}

pub fn p(x: &str) -> Partition {
    x.parse().unwrap()
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(n.into(), d.into())
}

/// Doubled exponents in t1, t2, u; mostly integral, sometimes half.
fn mono() -> impl Strategy<Value = Mono> {
    (-2i32..=2, -2i32..=2, 0i32..=2, any::<bool>()).prop_map(|(a, b, c, half)| {
        let mut e = [2 * a, 2 * b, 0, 2 * c, 0];
        if half {
            e[0] += 1;
        }
        Mono(e)
    })
}

pub fn poly(max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((mono(), -3i64..=3), 1..=max_terms)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
}

/// Small ground scalars; the denominator is 1 + (something) or a unit.
pub fn scalar() -> impl Strategy<Value = GroundScalar> {
    (poly(3), prop::option::of(poly(2))).prop_map(|(n, d)| {
        let den = match d {
            Some(d) if !Poly::one().add(&d).is_zero() => Poly::one().add(&d),
            _ => Poly::one(),
        };
        GroundScalar::new(n, den).expect("nonzero denominator")
    })
}

pub fn nonzero_scalar() -> impl Strategy<Value = GroundScalar> {
    scalar().prop_filter("nonzero", |x| !x.is_zero())
}

/// Polynomial-coefficient series with zero constant term.
pub fn series_no_constant(ny: u32, nz: u32, max_terms: usize) -> impl Strategy<Value = TruncatedSeries<GroundScalar>> {
    prop::collection::vec(((0..=ny), (0..=nz), poly(2)), 1..=max_terms).prop_map(move |ts| {
        let mut out: TruncatedSeries<GroundScalar> = TruncatedSeries::zero(ny, nz);
        for (i, j, c) in ts {
            if i + j == 0 {
                continue;
            }
            let old = out.coeff(i, j);
            out.set(i, j, old.add(&GroundScalar::from_poly(c)));
        }
        out
    })
}

/// Σ_m f^m / m! by repeated multiplication.
pub fn exp_by_powers(f: &TruncatedSeries<GroundScalar>) -> TruncatedSeries<GroundScalar> {
    let (ny, nz) = f.orders();
    let mut out = TruncatedSeries::one(ny, nz);
    let mut term = TruncatedSeries::one(ny, nz);
    for m in 1..=(ny + nz) {
        term = term.mul(f).mul_rat(&rat(1, m as i64));
        out = out.add(&term);
    }
    out
}

/// Power series of num/den by schoolbook division, den(0) = 1.
pub fn expand_ratio(num: &[Rat], den: &[Rat], len: usize) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::with_capacity(len);
    for i in 0..len {
        let mut acc = num.get(i).cloned().unwrap_or_else(|| rat(0, 1));
        for j in 1..den.len().min(i + 1) {
            acc -= &den[j] * &out[i - j];
        }
        out.push(acc);
    }
    out
}

/// Random rational function with den(0) = 1 and small integer coefficients.
pub fn rational_function(dn: usize, dd: usize) -> impl Strategy<Value = (Vec<Rat>, Vec<Rat>)> {
    (prop::collection::vec(-4i64..=4, dn + 1), prop::collection::vec(-3i64..=3, dd)).prop_map(|(n, d)| {
        let num: Vec<Rat> = n.into_iter().map(|c| rat(c, 1)).collect();
        let mut den = vec![rat(1, 1)];
        den.extend(d.into_iter().map(|c| rat(c, 1)));
        (num, den)
    })
}

/// a/b == c/d as univariate polynomials over a field.
pub fn same_ratio<S: Field>(a: &UniPoly<S>, b: &UniPoly<S>, c: &UniPoly<S>, d: &UniPoly<S>) -> bool {
    a.mul(d) == c.mul(b)
}

/// Random tensor element: a few p-monomials with z-series coefficients of polynomial scalars.
pub fn tensor_element(n: u32, nz: u32) -> impl Strategy<Value = TensorFockElement<TruncatedSeries<GroundScalar>>> {
    let part = move || (0..=n).prop_flat_map(|k| prop::sample::select(capvertex::combinat::partitions(k)));
    prop::collection::vec((part(), part(), 0..=nz, poly(2)), 1..=3).prop_map(move |ts| {
        let mut out = TensorFockElement::zero(n);
        for (a, b, j, c) in ts {
            out.add_term(a, b, TruncatedSeries::monomial(0, j, GroundScalar::from_poly(c), 0, nz));
        }
        out
    })
}

/// Map k -> scalar as a coefficient dictionary.
pub fn coeffs(pairs: &[(u32, &str)]) -> BTreeMap<u32, GroundScalar> {
    pairs.iter().map(|(k, v)| (*k, s(v))).collect()
}
