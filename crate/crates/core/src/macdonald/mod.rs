//! Modified Macdonald polynomials H̃_λ in power sums, and the fixed-point basis they form.
//!
//! The geometric basis uses H_λ = H̃_λ(q_M = t1^{-2}, t_M = t2^{-2}).

mod schur;

use std::collections::BTreeMap;

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::combinat::partition::{partitions, Partition};
use crate::combinat::TangentConvention;
use crate::exactalg::domain::{Domain, DomainError};
use crate::exactalg::{solve_linear, ArithError, Field, GroundScalar, Var};
use crate::fock::FockElement;

pub use schur::{character, schur};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MacdonaldError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("fixed-point basis in degree {0} is singular")]
    Singular(u32),
    #[error("degree {0} is not cached")]
    NotCached(u32),
    #[error("the triangularity conditions do not determine H̃_{0}")]
    Underdetermined(String),
}

fn to_rat(k: &num_bigint::BigInt) -> BigRational {
    BigRational::from_integer(k.clone())
}

/// ⟨p_μ, p_μ⟩ = z_μ Π_i (1 - q^{μ_i}) / (1 - t^{μ_i}).
fn qt_norm<S: Field>(mu: &Partition, q: &S, t: &S) -> Result<S, ArithError> {
    let mut out = S::from_rat(&to_rat(&mu.z()));
    for &k in mu.parts() {
        let num = S::one().sub(&q.pow(k));
        let den = S::one().sub(&t.pow(k));
        out = out.mul(&num).div(&den)?;
    }
    Ok(out)
}

fn qt_inner<S: Field>(f: &FockElement<S>, g: &FockElement<S>, q: &S, t: &S) -> Result<S, ArithError> {
    let mut acc = S::zero();
    for (mu, a) in f.iter() {
        if let Some(b) = g.get(mu) {
            acc = acc.add(&a.mul(b).mul(&qt_norm(mu, q, t)?));
        }
    }
    Ok(acc)
}

/// Plethysm p_k ↦ factor(k) p_k.
fn plethysm_scale<S: Field, F: Fn(u32) -> Result<S, ArithError>>(f: &FockElement<S>, factor: F) -> Result<FockElement<S>, ArithError> {
    let mut out = FockElement::zero(f.max_degree());
    for (mu, c) in f.iter() {
        let mut x = c.clone();
        for &k in mu.parts() {
            x = x.mul(&factor(k)?);
        }
        out.add_term(mu.clone(), x);
    }
    Ok(out)
}

/// Partitions of n from smallest to largest in lexicographic order.
fn increasing(n: u32) -> Vec<Partition> {
    let mut v = partitions(n);
    v.reverse();
    v
}

/// Classical P_λ(q, t) for |λ| = n, by Gram–Schmidt on Schur functions.
pub fn macdonald_p<S: Field>(n: u32, q: &S, t: &S) -> Result<Vec<(Partition, FockElement<S>)>, ArithError> {
    let mut done: Vec<(Partition, FockElement<S>, S)> = Vec::new();
    for lam in increasing(n) {
        let s = schur::<S>(&lam);
        let mut p = s.clone();
        for (_, prev, norm) in &done {
            let c = qt_inner(&s, prev, q, t)?.div(norm)?;
            if !c.is_zero() {
                p = p.sub(&prev.scale(&c));
            }
        }
        let norm = qt_inner(&p, &p, q, t)?;
        done.push((lam, p, norm));
    }
    Ok(done.into_iter().map(|(l, p, _)| (l, p)).collect())
}

/// H̃_λ(q, t) for |λ| = n via P_λ(q, 1/t), the integral form and X ↦ X/(1 - 1/t).
pub fn modified_gram_schmidt<S: Field>(n: u32, q: &S, t: &S) -> Result<BTreeMap<Partition, FockElement<S>>, ArithError> {
    let t_inv = t.inv()?;
    let mut out = BTreeMap::new();
    for (lam, p) in macdonald_p(n, q, &t_inv)? {
        let mut c = S::one();
        for cell in lam.cells() {
            c = c.mul(&S::one().sub(&q.pow(lam.arm(cell)).mul(&t_inv.pow(lam.leg(cell) + 1))));
        }
        let j = p.scale(&c);
        let h = plethysm_scale(&j, |k| S::one().sub(&t_inv.pow(k)).inv())?;
        out.insert(lam.clone(), h.scale(&t.pow(lam.n_weight())));
    }
    Ok(out)
}

/// H̃_μ(q, t) from its defining conditions: H̃_μ[X(1-q)] ∈ span{s_λ : λ ≥ μ},
/// H̃_μ[X(1-t)] ∈ span{s_λ : λ ≥ μ'} and ⟨H̃_μ, s_(n)⟩ = 1.
pub fn modified_from_axioms<S: Field>(n: u32, q: &S, t: &S) -> Result<BTreeMap<Partition, FockElement<S>>, MacdonaldError> {
    let basis = partitions(n);
    let mut out = BTreeMap::new();
    for mu in &basis {
        let mut rows: Vec<Vec<S>> = Vec::new();
        let mut rhs: Vec<S> = Vec::new();
        for (param, target) in [(q, mu.clone()), (t, mu.conjugate())] {
            for lam in basis.iter().filter(|l| !l.dominates(&target)) {
                let row = basis
                    .iter()
                    .map(|rho| {
                        let mut x = S::from_int(character(lam, rho));
                        for &k in rho.parts() {
                            x = x.mul(&S::one().sub(&param.pow(k)));
                        }
                        x
                    })
                    .collect();
                rows.push(row);
                rhs.push(S::zero());
            }
        }
        rows.push(basis.iter().map(|_| S::one()).collect());
        rhs.push(S::one());
        let x = solve_linear(&rows, &rhs).map_err(|e| match e {
            ArithError::Singular => MacdonaldError::Underdetermined(mu.to_string()),
            e => e.into(),
        })?;
        out.insert(mu.clone(), FockElement::from_terms(basis.iter().cloned().zip(x), n));
    }
    Ok(out)
}

/// The geometric parameters q_M = t1^{-2}, t_M = t2^{-2}.
pub fn geometric_parameters() -> (GroundScalar, GroundScalar) {
    (GroundScalar::var(Var::T1, -2), GroundScalar::var(Var::T2, -2))
}

/// Cached H_λ for all |λ| <= max_degree, with the Euler classes of the chosen tangent convention.
#[derive(Clone, Debug)]
pub struct MacdonaldBasis<S> {
    max_degree: u32,
    polys: BTreeMap<Partition, FockElement<S>>,
    euler: BTreeMap<Partition, S>,
    convention: TangentConvention,
}

impl<S: Field> MacdonaldBasis<S> {
    pub fn build<D: Domain<S = S>>(dom: &D, max_degree: u32, convention: TangentConvention) -> Result<Self, MacdonaldError> {
        let (qm, tm) = geometric_parameters();
        let q = dom.embed(&qm)?;
        let t = dom.embed(&tm)?;
        let per_degree: Vec<BTreeMap<Partition, FockElement<S>>> = (0..=max_degree)
            .into_par_iter()
            .map(|n| modified_gram_schmidt(n, &q, &t).map(|m| m.into_iter().map(|(l, f)| (l, f.truncate(max_degree))).collect()))
            .collect::<Result<_, _>>()?;
        let polys: BTreeMap<Partition, FockElement<S>> = per_degree.into_iter().flatten().collect();
        let mut basis = MacdonaldBasis { max_degree, polys, euler: BTreeMap::new(), convention };
        basis.set_convention(dom, convention)?;
        Ok(basis)
    }

    /// Recompute the Euler classes for another tangent convention; H_λ are unchanged.
    pub fn set_convention<D: Domain<S = S>>(&mut self, dom: &D, convention: TangentConvention) -> Result<(), MacdonaldError> {
        let euler: Vec<(Partition, S)> = self
            .polys
            .par_iter()
            .map(|(l, _)| Ok((l.clone(), dom.embed(&convention.euler(l))?)))
            .collect::<Result<_, MacdonaldError>>()?;
        self.euler = euler.into_iter().collect();
        self.convention = convention;
        Ok(())
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn convention(&self) -> TangentConvention {
        self.convention
    }

    pub fn h(&self, lambda: &Partition) -> Option<&FockElement<S>> {
        self.polys.get(lambda)
    }

    pub fn euler(&self, lambda: &Partition) -> Option<&S> {
        self.euler.get(lambda)
    }

    /// Rows p_μ, columns H_λ, both in reverse-lexicographic order.
    pub fn change_of_basis(&self, n: u32) -> Result<Vec<Vec<S>>, MacdonaldError> {
        if n > self.max_degree {
            return Err(MacdonaldError::NotCached(n));
        }
        let ps = partitions(n);
        Ok(ps
            .iter()
            .map(|mu| ps.iter().map(|lam| self.polys[lam].get(mu).cloned().unwrap_or_else(S::zero)).collect())
            .collect())
    }

    /// Coefficients c_λ with f_n = Σ c_λ H_λ, where f_n is the degree-n part of f.
    pub fn fixed_point_decompose(&self, f: &FockElement<S>, n: u32) -> Result<BTreeMap<Partition, S>, MacdonaldError> {
        let m = self.change_of_basis(n)?;
        let ps = partitions(n);
        let b: Vec<S> = ps.iter().map(|mu| f.get(mu).cloned().unwrap_or_else(S::zero)).collect();
        let x = solve_linear(&m, &b).map_err(|e| match e {
            ArithError::Singular => MacdonaldError::Singular(n),
            e => e.into(),
        })?;
        Ok(ps.into_iter().zip(x).collect())
    }

    /// Σ_{|λ|=n} eig(λ) H_λ / Λ•(T_λ).
    pub fn localization_sum<F>(&self, n: u32, eig: F) -> Result<FockElement<S>, MacdonaldError>
    where
        F: Fn(&Partition) -> Result<S, MacdonaldError> + Sync,
    {
        if n > self.max_degree {
            return Err(MacdonaldError::NotCached(n));
        }
        let pieces: Vec<FockElement<S>> = partitions(n)
            .par_iter()
            .map(|lam| {
                let w = eig(lam)?.div(&self.euler[lam])?;
                Ok(self.polys[lam].scale(&w))
            })
            .collect::<Result<_, MacdonaldError>>()?;
        Ok(pieces.iter().fold(FockElement::zero(self.max_degree), |acc, x| acc.add(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::text::parse_scalar;
    use crate::exactalg::Rat;

    fn r(n: i64, d: i64) -> Rat {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn degree_two_by_hand() {
        // H̃_(2) = s_2 + q s_11, H̃_(11) = s_2 + t s_11.
        let q = parse_scalar("q").unwrap();
        let t = parse_scalar("u").unwrap();
        let h = modified_gram_schmidt(2, &q, &t).unwrap();
        let s2 = schur::<GroundScalar>(&"2".parse().unwrap());
        let s11 = schur::<GroundScalar>(&"1,1".parse().unwrap());
        assert_eq!(h[&"2".parse::<Partition>().unwrap()], s2.add(&s11.scale(&q)));
        assert_eq!(h[&"1,1".parse::<Partition>().unwrap()], s2.add(&s11.scale(&t)));
    }

    #[test]
    fn routes_agree_at_rational_point() {
        let (q, t) = (r(2, 7), r(-5, 3));
        for n in 0..=4 {
            assert_eq!(modified_gram_schmidt(n, &q, &t).unwrap(), modified_from_axioms(n, &q, &t).unwrap(), "n={n}");
        }
    }
}
