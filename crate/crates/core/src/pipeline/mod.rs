//! Executable checks of the generating-function identities, the capped vertex
//! table and the rank-two limit statements.

pub mod calibrate;
mod checks;
pub mod conventions;
pub mod formulas;
mod limits;
pub mod report;
pub mod vertex;

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use thiserror::Error;

use crate::combinat::CombinatError;
use crate::exactalg::domain::{embed_series, Domain, DomainError};
use crate::exactalg::{ArithError, Field, GroundScalar, TruncatedSeries, Var};
use crate::fock::{FockError, ScalarText};
use crate::macdonald::{MacdonaldBasis, MacdonaldError};

pub use checks::MainDiagnosis;
pub use calibrate::{calibrate, calibrate_pinned, CalibrationOutcome};
pub use conventions::{APower, Conventions, EigenReading, LimitConvention, OsumTransport, Shift};
pub use limits::{check_prop1, check_prop4, prop1_search};
pub use report::{Candidate, Orders, Outcome, VerificationReport, Witness};
pub use vertex::{CappedVertexTable, VertexEntry};

/// Hard bounds on orders accepted by the front end.
pub const MAX_Y: u32 = 8;
pub const MAX_Z: u32 = 12;
pub const MAX_N: u32 = 4;
/// z order accepted by the vertex table: 2·Σ_{k<=4} k + 2.
pub const MAX_VERTEX_Z: u32 = 22;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Macdonald(#[from] MacdonaldError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Combinat(#[from] CombinatError),
    #[error("{0}")]
    Bound(String),
    #[error("rational reconstruction failed at {lambda}: {reason}")]
    Reconstruction { lambda: String, reason: String },
}

/// Coefficient fields usable by the pipeline.
pub trait Coeff: Field + ScalarText {
    /// Value at a rational q, when q is still a free symbol.
    fn at_q(&self, value: &BigRational) -> Option<Self>;
    /// Value at a fixed generic rational point, when all exponents are integral.
    fn sample(&self) -> Option<BigRational>;
}

/// (t1, t2, q, u, a) at the sample point.
const SAMPLE_POINT: [(Var, i64, i64); 5] = [(Var::T1, 3, 7), (Var::T2, 5, 11), (Var::Q, 13, 17), (Var::U, 19, 23), (Var::A, 29, 31)];

impl Coeff for GroundScalar {
    fn at_q(&self, value: &BigRational) -> Option<Self> {
        self.substitute(Var::Q, value).ok()
    }

    fn sample(&self) -> Option<BigRational> {
        let mut x = self.clone();
        for (v, p, q) in SAMPLE_POINT {
            x = x.substitute(v, &BigRational::new(p.into(), q.into())).ok()?;
        }
        if x.is_zero() {
            return Some(BigRational::from_integer(0.into()));
        }
        let (nm, nc) = x.num().as_term()?;
        let (dm, dc) = x.den().as_term()?;
        (nm.is_one() && dm.is_one()).then(|| BigRational::new(nc.clone(), dc.clone()))
    }
}

impl Coeff for BigRational {
    fn at_q(&self, _: &BigRational) -> Option<Self> {
        None
    }

    fn sample(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

/// A domain together with the conventions and the cached fixed-point basis.
pub struct Engine<D: Domain> {
    dom: D,
    conventions: Conventions,
    basis: MacdonaldBasis<D::S>,
    timing: bool,
}

impl<D: Domain> Engine<D>
where
    D::S: Coeff,
{
    /// Builds H_λ for all |λ| <= max_degree.
    pub fn new(dom: D, conventions: Conventions, max_degree: u32) -> Result<Self, PipelineError> {
        let basis = MacdonaldBasis::build(&dom, max_degree, conventions.tangent)?;
        Ok(Engine { dom, conventions, basis, timing: false })
    }

    /// Record wall-clock time in reports (off by default so output is reproducible).
    pub fn with_timing(mut self, on: bool) -> Self {
        self.timing = on;
        self
    }

    pub fn domain(&self) -> &D {
        &self.dom
    }

    pub fn conventions(&self) -> &Conventions {
        &self.conventions
    }

    pub fn basis(&self) -> &MacdonaldBasis<D::S> {
        &self.basis
    }

    pub fn max_degree(&self) -> u32 {
        self.basis.max_degree()
    }

    fn need_degree(&self, n: u32) -> Result<(), PipelineError> {
        if n > self.basis.max_degree() {
            return Err(PipelineError::Bound(format!("degree {n} exceeds the cached basis ({})", self.basis.max_degree())));
        }
        Ok(())
    }

    pub(crate) fn embed(&self, x: &GroundScalar) -> Result<D::S, PipelineError> {
        Ok(self.dom.embed(x)?)
    }

    pub(crate) fn embed_map(&self, m: &BTreeMap<u32, GroundScalar>) -> Result<BTreeMap<u32, D::S>, PipelineError> {
        m.iter().map(|(k, v)| Ok((*k, self.embed(v)?))).collect()
    }

    pub(crate) fn embed_series_map(
        &self,
        m: &BTreeMap<u32, TruncatedSeries<GroundScalar>>,
    ) -> Result<BTreeMap<u32, TruncatedSeries<D::S>>, PipelineError> {
        m.iter().map(|(k, v)| Ok((*k, embed_series(&self.dom, v)?))).collect()
    }

    pub(crate) fn finish(&self, mut r: VerificationReport, start: Instant) -> VerificationReport {
        if self.timing {
            r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        r
    }

    pub(crate) fn report(&self, check: &str, orders: Orders, outcome: Outcome) -> VerificationReport {
        VerificationReport::new(check, orders, self.dom.label(), outcome)
    }
}

pub fn check_bounds(y: Option<u32>, z: Option<u32>, n: Option<u32>) -> Result<(), PipelineError> {
    if let Some(y) = y.filter(|&y| y > MAX_Y) {
        return Err(PipelineError::Bound(format!("y order {y} exceeds the bound {MAX_Y}")));
    }
    if let Some(z) = z.filter(|&z| z > MAX_Z) {
        return Err(PipelineError::Bound(format!("z order {z} exceeds the bound {MAX_Z}")));
    }
    if let Some(n) = n.filter(|&n| n > MAX_N) {
        return Err(PipelineError::Bound(format!("n = {n} exceeds the bound {MAX_N}")));
    }
    Ok(())
}
