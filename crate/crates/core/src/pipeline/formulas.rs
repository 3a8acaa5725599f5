//! Exponent coefficients of the generating functions, as exact symbolic series.
//!
//! Every function here is exp(Σ_k c_k p_k); these build the c_k.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::combinat::partition::Partition;
use crate::exactalg::{GroundScalar, Ring, TruncatedSeries, Var};

use super::conventions::EigenReading;

/// (1 - t1^{2k})(1 - t2^{2k}).
pub fn weight_denominator(k: u32) -> GroundScalar {
    let k = 2 * k as i32;
    let one = GroundScalar::one();
    one.sub(&GroundScalar::var(Var::T1, k)).mul(&one.sub(&GroundScalar::var(Var::T2, k)))
}

/// 1 / (k (1 - t1^{2k})(1 - t2^{2k})).
fn base(k: u32) -> GroundScalar {
    weight_denominator(k).inv().expect("nonzero").mul_rat(&BigRational::new(1.into(), (k as i64).into()))
}

fn hbar_diff(k: u32) -> GroundScalar {
    let k = k as i32;
    GroundScalar::hbar(k).sub(&GroundScalar::hbar(-k))
}

/// Degree-k exponent coefficient without z: ħ^{2k}/(k D_k), times (1 - u^k) and (-1)^k when asked.
pub fn plain_coefficient(k: u32, with_u: bool, alternating: bool) -> GroundScalar {
    let mut c = GroundScalar::hbar(2 * k as i32).mul(&base(k));
    if with_u {
        c = c.mul(&GroundScalar::one().sub(&GroundScalar::var(Var::U, k as i32)));
    }
    if alternating && k % 2 == 1 {
        c = c.neg();
    }
    c
}

pub fn plain_coefficients(n: u32, with_u: bool, alternating: bool) -> BTreeMap<u32, GroundScalar> {
    (1..=n).map(|k| (k, plain_coefficient(k, with_u, alternating))).collect()
}

/// The z-dependent part added to the degree-k exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZPart {
    None,
    /// z^k ħ^{2k} q^{-k} (ħ^k - ħ^{-k}) / (1 - (zħ/q)^k).
    Closed,
    /// z^k ħ^{3k} (ħ^k - ħ^{-k}) / (1 - z^k), what the tensor-square computation produces.
    Derived,
    /// z^k ħ^k (ħ^k - ħ^{-k}) / (1 - z^k).
    Intermediate,
}

/// Exponent coefficients as series in y and z: c_k has y-degree k.
pub fn exponent_series(ny: u32, nz: u32, with_u: bool, alternating: bool, zpart: ZPart) -> BTreeMap<u32, TruncatedSeries<GroundScalar>> {
    let mut out = BTreeMap::new();
    for k in 1..=ny {
        let ki = k as i32;
        let mut s = TruncatedSeries::zero(ny, nz);
        s.set(k, 0, plain_coefficient(k, with_u, alternating));
        let (prefactor, ratio) = match zpart {
            ZPart::None => (None, GroundScalar::one()),
            ZPart::Closed => (
                Some(GroundScalar::hbar(2 * ki).mul(&GroundScalar::var(Var::Q, -ki)).mul(&hbar_diff(k))),
                GroundScalar::hbar(ki).mul(&GroundScalar::var(Var::Q, -ki)),
            ),
            ZPart::Derived => (Some(GroundScalar::hbar(3 * ki).mul(&hbar_diff(k))), GroundScalar::one()),
            ZPart::Intermediate => (Some(GroundScalar::hbar(ki).mul(&hbar_diff(k))), GroundScalar::one()),
        };
        if let Some(pre) = prefactor {
            let pre = pre.mul(&base(k));
            let mut term = pre;
            let mut j = k;
            while j <= nz {
                s.set(k, j, term.clone());
                term = term.mul(&ratio);
                j += k;
            }
        }
        if !s.is_empty() {
            out.insert(k, s);
        }
    }
    out
}

/// τ̄ part c_k = y^k (1 - u^k) ħ^{2k} / (k D_k).
pub fn taubar_series(ny: u32, nz: u32) -> BTreeMap<u32, TruncatedSeries<GroundScalar>> {
    exponent_series(ny, nz, true, false, ZPart::None)
}

/// Structure-sheaf part d_k = (-1)^k y^k ħ^{2k} / (k D_k).
pub fn osum_series(ny: u32, nz: u32) -> BTreeMap<u32, TruncatedSeries<GroundScalar>> {
    exponent_series(ny, nz, false, true, ZPart::None)
}

pub fn closed_series(ny: u32, nz: u32) -> BTreeMap<u32, TruncatedSeries<GroundScalar>> {
    exponent_series(ny, nz, true, false, ZPart::Closed)
}

/// Π_□ (1 + sign·u·φ(□)^power), φ = t1^c t2^r.
pub fn cell_eigenvalue(lambda: &Partition, reading: EigenReading) -> GroundScalar {
    let mut out = GroundScalar::one();
    for cell in lambda.cells() {
        let phi = GroundScalar::var(Var::T1, cell.col as i32 * reading.power).mul(&GroundScalar::var(Var::T2, cell.row as i32 * reading.power));
        let f = GroundScalar::one().add(&GroundScalar::var(Var::U, 1).mul(&phi).mul_int(reading.sign as i64));
        out = out.mul(&f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::text::parse_scalar;

    #[test]
    fn first_coefficients() {
        let c = plain_coefficient(1, false, false);
        assert_eq!(c, parse_scalar("(t1^2*t2^2)/(1 - t1^2 - t2^2 + t1^2*t2^2)").unwrap());
        assert_eq!(plain_coefficient(1, false, true), c.neg());
        let s = &closed_series(1, 2)[&1];
        // z-term: z ħ² q⁻¹ (ħ - ħ⁻¹) / D_1, then times ħ/q at z².
        let z1 = parse_scalar("t1^3*t2^3*q^-1 - t1*t2*q^-1").unwrap().div(&weight_denominator(1)).unwrap();
        assert_eq!(s.coeff(1, 1), z1);
        assert_eq!(s.coeff(1, 2), z1.mul(&parse_scalar("t1*t2*q^-1").unwrap()));
    }
}
