//! Per-fixed-point capped vertex functions, reconstructed as rational functions of w = zħ/q.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::conventions::Shift;
use super::report::render;
use super::{Coeff, Engine, PipelineError};
use crate::combinat::partition::{partitions, Partition};
use crate::exactalg::domain::Domain;
use crate::exactalg::{fit_with_denominator, rational_reconstruct, ArithError, Field, RationalFit, Ring, UniPoly};
use crate::fock::FockElement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub lambda: Vec<u32>,
    /// Coefficients of w^0, w^1, ... in canonical scalar text.
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub certified_through: usize,
    /// Denominator divides Π_{k<=n} (1 - w^k).
    pub denominator_divides: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CappedVertexTable {
    pub n: u32,
    pub z_order: u32,
    pub variable: String,
    pub degree_budget: usize,
    pub domain: String,
    pub entries: Vec<VertexEntry>,
    /// Whether the fits agree at two rational values of q; absent when q is specialized.
    pub q_independent: Option<bool>,
}

impl CappedVertexTable {
    pub fn certified(&self) -> bool {
        self.entries.iter().all(|e| e.certified_through == self.z_order as usize && e.denominator_divides)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("lambda,numerator,denominator,certified_through,denominator_divides\n");
        for e in &self.entries {
            let lam: Vec<String> = e.lambda.iter().map(|p| p.to_string()).collect();
            s += &format!(
                "\"{}\",\"{}\",\"{}\",{},{}\n",
                lam.join(","),
                e.numerator.join(";"),
                e.denominator.join(";"),
                e.certified_through,
                e.denominator_divides
            );
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n = {}, {}, fitted through w^{}\n", self.n, self.variable, self.z_order);
        for e in &self.entries {
            let lam = Partition::new(e.lambda.clone()).map(|p| p.to_string()).unwrap_or_default();
            if e.denominator == ["1"] {
                s += &format!("{} : {}\n", lam, poly_text(&e.numerator));
            } else {
                s += &format!("{} : ({}) / ({})\n", lam, poly_text(&e.numerator), poly_text(&e.denominator));
            }
        }
        if let Some(q) = self.q_independent {
            s += &format!("q-independent: {q}\n");
        }
        s
    }
}

fn poly_text(cs: &[String]) -> String {
    let terms: Vec<String> = cs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(i, c)| match i {
            0 => c.clone(),
            1 => format!("({c})*w"),
            _ => format!("({c})*w^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Σ_{k<=n} k.
pub fn degree_budget(n: u32) -> usize {
    (1..=n as usize).sum()
}

fn cyclotomic_product<S: Field>(n: u32) -> UniPoly<S> {
    let mut p = UniPoly::one();
    for k in 1..=n as usize {
        let mut c = vec![S::zero(); k + 1];
        c[0] = S::one();
        c[k] = S::one().neg();
        p = p.mul(&UniPoly::new(c));
    }
    p
}

/// Denominator from a fit at the sample point, lifted and certified exactly;
/// the full Hankel solve is the fallback.
fn fit_series<S: Coeff>(s: &[S], budget: usize) -> Result<RationalFit<S>, ArithError> {
    if let Some(sampled) = s.iter().map(Coeff::sample).collect::<Option<Vec<BigRational>>>() {
        if let Ok(guess) = rational_reconstruct(&sampled, budget, budget) {
            let den = UniPoly::new(guess.den.coeffs().iter().map(S::from_rat).collect());
            if let Some(fit) = fit_with_denominator(s, &den, budget)? {
                return Ok(fit);
            }
        }
    }
    rational_reconstruct(s, budget, budget)
}

impl<D: Domain> Engine<D>
where
    D::S: Coeff,
{
    /// Fixed-point restrictions of the degree-n slice of closed_f as series in w.
    pub fn vertex_series(&self, n: u32, nz: u32) -> Result<BTreeMap<Partition, Vec<D::S>>, PipelineError> {
        self.need_degree(n)?;
        let closed = self.closed_f(n, nz)?;
        let to_w = self.shift_factor(Shift { sign: 1, hbar: -1, q: 1 })?;
        let in_w = closed.map_coeffs(|s| s.scale_z(&to_w));
        let mut out: BTreeMap<Partition, Vec<D::S>> = partitions(n).into_iter().map(|l| (l, Vec::new())).collect();
        for j in 0..=nz {
            let slice = FockElement::from_terms(
                in_w.iter().filter(|(mu, _)| mu.size() == n).map(|(mu, s)| (mu.clone(), s.coeff(n, j))),
                n,
            );
            let coeffs = self.basis.fixed_point_decompose(&slice, n)?;
            for (lam, c) in coeffs {
                let euler = self.basis.euler(&lam).expect("cached").clone();
                out.get_mut(&lam).expect("same partitions").push(c.mul(&euler));
            }
        }
        Ok(out)
    }

    pub fn capped_vertex_table(&self, n: u32, nz: u32) -> Result<CappedVertexTable, PipelineError> {
        let budget = degree_budget(n);
        let series = self.vertex_series(n, nz)?;
        let product = cyclotomic_product::<D::S>(n);
        let mut entries = Vec::new();
        let mut fits: Vec<RationalFit<D::S>> = Vec::new();
        for (lam, s) in &series {
            let fit = fit_series(s, budget)
                .map_err(|e| PipelineError::Reconstruction { lambda: lam.to_string(), reason: e.to_string() })?;
            let (_, rem) = product.div_rem(&fit.den)?;
            entries.push(VertexEntry {
                lambda: lam.parts().to_vec(),
                numerator: fit.num.coeffs().iter().map(render).collect(),
                denominator: fit.den.coeffs().iter().map(render).collect(),
                certified_through: fit.certified_through,
                denominator_divides: rem.is_zero(),
            });
            fits.push(fit);
        }
        let probes = [BigRational::new(2.into(), 3.into()), BigRational::new(5.into(), 7.into())];
        let at = |fit: &RationalFit<D::S>, v: &BigRational| -> Option<(Vec<D::S>, Vec<D::S>)> {
            let num = fit.num.coeffs().iter().map(|c| c.at_q(v)).collect::<Option<Vec<_>>>()?;
            let den = fit.den.coeffs().iter().map(|c| c.at_q(v)).collect::<Option<Vec<_>>>()?;
            Some((num, den))
        };
        let q_independent = fits
            .iter()
            .map(|f| Some(at(f, &probes[0])? == at(f, &probes[1])?))
            .collect::<Option<Vec<bool>>>()
            .map(|v| v.into_iter().all(|b| b));
        // Put partitions in the usual reverse-lexicographic order.
        entries.reverse();
        Ok(CappedVertexTable {
            n,
            z_order: nz,
            variable: "w = z*hbar/q".into(),
            degree_budget: budget,
            domain: self.dom.label(),
            entries,
            q_independent,
        })
    }
}
