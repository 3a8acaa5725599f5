//! a → 0 limits on the fixed points of M(n,2). Always symbolic.

use rayon::prelude::*;

use super::conventions::{Conventions, LimitConvention};
use super::report::{render, Candidate, Orders, Outcome, VerificationReport, Witness};
use super::PipelineError;
use crate::combinat::{chern_eigen, o_line_eigen, Framing, LineComponent, Orientation, RankTwoPoint};
use crate::exactalg::{ArithError, GroundScalar, Var};

fn point_label(p: &RankTwoPoint) -> String {
    format!("({}|{})", p.first, p.second)
}

fn orders_n(n: u32) -> Orders {
    Orders { y: None, z: None, n: Some(n) }
}

/// lim_{a→0} Δ⁻¹ O(−1) a^p at one point, and the expected ħ^n ħ^{|λ2|} O(−1)|_{λ1}.
fn prop1_point(p: &RankTwoPoint, conv: LimitConvention, orientation: Orientation) -> Result<Outcome, PipelineError> {
    let n = p.size();
    let delta = p.delta(conv.polarization, conv.framing, conv.det_reading, orientation)?;
    let x = delta
        .inv()?
        .mul(&o_line_eigen(p, LineComponent::Full, orientation))
        .mul(&GroundScalar::var(Var::A, conv.a_power.exponent(n)));
    let lhs = match x.a_limit() {
        Ok(v) => v,
        Err(ArithError::LimitDoesNotExist { valuation }) => {
            return Ok(Outcome::LimitNonexistent { point: point_label(p), valuation: valuation.to_string() })
        }
        Err(e) => return Err(e.into()),
    };
    let rhs = GroundScalar::hbar((n + p.second.size()) as i32).mul(&o_line_eigen(p, LineComponent::First, orientation));
    if lhs == rhs {
        Ok(Outcome::ExactMatch)
    } else {
        Ok(Outcome::Mismatch { witness: Witness { location: point_label(p), left: render(&lhs), right: render(&rhs) } })
    }
}

/// The first failing point over all fixed points of size 1..=n.
pub fn prop1_outcome(n: u32, conv: LimitConvention, orientation: Orientation) -> Result<Outcome, PipelineError> {
    for m in 0..=n {
        for p in RankTwoPoint::all(m) {
            let o = prop1_point(&p, conv, orientation)?;
            if !o.passed() {
                return Ok(o);
            }
        }
    }
    Ok(Outcome::ExactMatch)
}

/// Every candidate reading with its outcome through size n.
pub fn prop1_search(n: u32, orientation: Orientation) -> Result<Vec<(LimitConvention, Outcome)>, PipelineError> {
    LimitConvention::candidates()
        .into_par_iter()
        .map(|c| Ok((c, prop1_outcome(n, c, orientation)?)))
        .collect()
}

/// Runs the full search; passes when the configured reading validates at every point.
pub fn check_prop1(n: u32, conventions: &Conventions) -> Result<VerificationReport, PipelineError> {
    let orientation = conventions.tangent.orientation;
    let results = prop1_search(n, orientation)?;
    let chosen = conventions.limit;
    let outcome = results.iter().find(|(c, _)| *c == chosen).map(|(_, o)| o.clone()).expect("chosen reading is a candidate");
    let mut rep = VerificationReport::new("prop1", orders_n(n), "symbolic".into(), outcome)
        .with_convention("limit_reading", chosen.label());
    let valid: Vec<String> = results.iter().filter(|(_, o)| o.passed()).map(|(c, _)| c.label()).collect();
    rep.notes.push(format!("readings valid at every point: {}", if valid.is_empty() { "none".to_string() } else { valid.join(", ") }));
    for power in [super::APower::N, super::APower::TwoN] {
        let ok = results.iter().any(|(c, o)| c.a_power == power && o.passed());
        rep.notes.push(format!("a-power {:?} validated by some reading: {ok}", power));
    }
    rep.candidates = results.into_iter().map(|(c, o)| Candidate { label: c.label(), outcome: o }).collect();
    Ok(rep)
}

/// lim_{a→0} e_k(V1 + a V2) = e_k(V1) at every fixed point with |λ1| + |λ2| = n.
pub fn check_prop4(n: u32, k: usize, orientation: Orientation) -> Result<VerificationReport, PipelineError> {
    let points = RankTwoPoint::all(n);
    let framing = Framing::SecondCarriesA.weights();
    let mut outcome = Outcome::ExactMatch;
    if k > n as usize {
        return Err(PipelineError::Bound(format!("k = {k} exceeds n = {n}")));
    }
    for p in &points {
        let full = chern_eigen(&[p.first.clone(), p.second.clone()], &framing, k, false, orientation)?;
        let lhs = match full.a_limit() {
            Ok(v) => v,
            Err(ArithError::LimitDoesNotExist { valuation }) => {
                outcome = Outcome::LimitNonexistent { point: point_label(p), valuation: valuation.to_string() };
                break;
            }
            Err(e) => return Err(e.into()),
        };
        let rhs = if k <= p.first.size() as usize {
            chern_eigen(std::slice::from_ref(&p.first), &[framing[0]], k, false, orientation)?
        } else {
            GroundScalar::zero()
        };
        if lhs != rhs {
            outcome = Outcome::Mismatch {
                witness: Witness { location: format!("{} k={k}", point_label(p)), left: render(&lhs), right: render(&rhs) },
            };
            break;
        }
    }
    let mut rep = VerificationReport::new("prop4", Orders { y: None, z: None, n: Some(n) }, "symbolic".into(), outcome)
        .with_convention("framing", "(1, a)".into());
    rep.notes.push(format!("k = {k}, {} fixed points", points.len()));
    Ok(rep)
}
