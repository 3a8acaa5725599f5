//! Small-order searches that fix every convention.

use rayon::prelude::*;

use super::conventions::{Conventions, EigenReading, OsumTransport, Shift};
use super::limits::prop1_search;
use super::report::{Candidate, Orders, Outcome, VerificationReport};
use super::{Engine, PipelineError};
use crate::combinat::{Orientation, TangentConvention};
use crate::exactalg::Symbolic;

/// Orders used by the searches.
pub const CALIBRATION_Y: u32 = 2;
pub const CALIBRATION_Z: u32 = 3;
pub const CALIBRATION_N: u32 = 3;

#[derive(Clone, Debug)]
pub struct CalibrationOutcome {
    pub conventions: Conventions,
    pub reports: Vec<VerificationReport>,
    /// False when some search found no valid candidate.
    pub consistent: bool,
}

/// With no passing candidate, the outcome shown is that of `fallback` (or the first candidate).
fn search_report(
    name: &str,
    orders: Orders,
    candidates: Vec<Candidate>,
    chosen: Option<String>,
    fallback: &str,
) -> VerificationReport {
    let outcome = if candidates.iter().any(|c| c.outcome.passed()) {
        Outcome::ExactMatch
    } else {
        candidates
            .iter()
            .find(|c| c.label == fallback)
            .or(candidates.first())
            .map(|c| c.outcome.clone())
            .unwrap_or(Outcome::ExactMatch)
    };
    let mut r = VerificationReport::new(name, orders, "symbolic".into(), outcome);
    r.conventions.insert("chosen".into(), chosen.unwrap_or_else(|| "none".into()));
    let passing = candidates.iter().filter(|c| c.outcome.passed()).count();
    r.notes.push(format!("{passing} of {} candidates pass", candidates.len()));
    r.candidates = candidates;
    r
}

fn tangent_label(t: &TangentConvention) -> String {
    format!("{:?}/weights^{}/dual={}", t.orientation, t.weight_scale, t.dual)
}

/// Runs every search; `base` supplies values kept when a search finds nothing.
pub fn calibrate(base: &Conventions) -> Result<CalibrationOutcome, PipelineError> {
    calibrate_pinned(base, None)
}

/// As `calibrate`, with the tangent search restricted to one orientation.
pub fn calibrate_pinned(base: &Conventions, orientation: Option<Orientation>) -> Result<CalibrationOutcome, PipelineError> {
    let mut conv = base.clone();
    let mut reports = Vec::new();
    let mut consistent = true;
    let y = Orders { y: Some(CALIBRATION_Y), z: None, n: None };

    let engine = Engine::new(Symbolic, conv.clone(), CALIBRATION_Y)?;
    let pinned_base = TangentConvention { orientation: orientation.unwrap_or(base.tangent.orientation), ..base.tangent };
    let tangents: Vec<(TangentConvention, Outcome)> = Conventions::tangent_candidates()
        .into_par_iter()
        .filter(|t| orientation.is_none_or(|o| t.orientation == o))
        .map(|t| Ok((t, engine.kernel_outcome(CALIBRATION_Y, t)?)))
        .collect::<Result<_, PipelineError>>()?;
    let win = tangents.iter().find(|(_, o)| o.passed()).map(|(t, _)| *t);
    match win {
        Some(t) => conv.tangent = t,
        None => consistent = false,
    }
    reports.push(search_report(
        "calibrate:tangent",
        y.clone(),
        tangents
            .iter()
            .map(|(t, o)| Candidate { label: tangent_label(t), outcome: o.clone() })
            .collect(),
        win.map(|t| tangent_label(&t)),
        &tangent_label(&pinned_base),
    ));

    let engine = Engine::new(Symbolic, conv.clone(), CALIBRATION_Y)?;
    let eig: Vec<(EigenReading, Outcome)> = EigenReading::candidates()
        .into_par_iter()
        .map(|r| Ok((r, engine.mellit_outcome(CALIBRATION_Y, r)?)))
        .collect::<Result<_, PipelineError>>()?;
    let win = eig.iter().find(|(_, o)| o.passed()).map(|(r, _)| *r);
    match win {
        Some(r) => conv.cell_eigen = r,
        None => consistent = false,
    }
    reports.push(search_report(
        "calibrate:cell_eigenvalue",
        y.clone(),
        eig.iter().map(|(r, o)| Candidate { label: r.label(), outcome: o.clone() }).collect(),
        win.map(|r| r.label()),
        &base.cell_eigen.label(),
    ));

    let osum: Vec<(OsumTransport, Outcome)> = OsumTransport::ALL
        .into_par_iter()
        .map(|t| Ok((t, engine.osum_outcome(CALIBRATION_Y, t)?)))
        .collect::<Result<_, PipelineError>>()?;
    let win = osum.iter().find(|(_, o)| o.passed()).map(|(t, _)| *t);
    match win {
        Some(t) => conv.osum = t,
        None => consistent = false,
    }
    reports.push(search_report(
        "calibrate:osum",
        y.clone(),
        osum.iter().map(|(t, o)| Candidate { label: format!("{t:?}"), outcome: o.clone() }).collect(),
        win.map(|t| format!("{t:?}")),
        &format!("{:?}", base.osum),
    ));

    // No winning shift is a finding, not an inconsistency of the other conventions.
    let main = engine.check_main(CALIBRATION_Y, CALIBRATION_Z)?;
    conv.main_shift = Shift::family().into_iter().find(|s| {
        main.candidates.iter().any(|c| c.label == s.label() && c.outcome.passed())
    });
    let mut main = main;
    main.check = "calibrate:main_shift".into();
    reports.push(main);

    let limits = prop1_search(CALIBRATION_N, conv.tangent.orientation)?;
    let win = limits.iter().find(|(_, o)| o.passed()).map(|(c, _)| *c);
    match win {
        Some(c) => conv.limit = c,
        None => consistent = false,
    }
    reports.push(search_report(
        "calibrate:limit",
        Orders { y: None, z: None, n: Some(CALIBRATION_N) },
        limits.iter().map(|(c, o)| Candidate { label: c.label(), outcome: o.clone() }).collect(),
        win.map(|c| c.label()),
        &base.limit.label(),
    ));

    Ok(CalibrationOutcome { conventions: conv, reports, consistent })
}
