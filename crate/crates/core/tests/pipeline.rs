mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use capvertex::combinat::{partitions, Orientation, Partition, RankTwoPoint};
use capvertex::exactalg::{GroundScalar, Ring, Specialized, Symbolic, TruncatedSeries, UniPoly, Var};
use capvertex::fock::{exp_linear, FockElement};
use capvertex::pipeline::vertex::degree_budget;
use capvertex::pipeline::{
    calibrate, check_bounds, check_prop1, check_prop4, prop1_search, APower, Conventions, Engine, Outcome, PipelineError, Shift,
    MAX_N, MAX_Y, MAX_Z,
};
use common::*;

fn engine() -> &'static Engine<Symbolic> {
    static E: OnceLock<Engine<Symbolic>> = OnceLock::new();
    E.get_or_init(|| Engine::new(Symbolic, Conventions::default(), 4).unwrap())
}

fn specialized() -> Engine<Specialized> {
    let dom = Specialized::new([(Var::T1, rat(4, 9)), (Var::T2, rat(9, 25)), (Var::Q, rat(3, 7)), (Var::U, rat(5, 11))]);
    Engine::new(dom, Conventions::default(), 4).unwrap()
}

fn d(k: u32) -> GroundScalar {
    let k2 = 2 * k as i32;
    let one = GroundScalar::one();
    one.sub(&GroundScalar::var(Var::T1, k2)).mul(&one.sub(&GroundScalar::var(Var::T2, k2)))
}

fn hbar_diff(k: i32) -> GroundScalar {
    GroundScalar::hbar(k).sub(&GroundScalar::hbar(-k))
}

type Series = TruncatedSeries<GroundScalar>;

/// 1/(1 - x z^k) through z^nz.
fn geometric(x: &GroundScalar, k: u32, nz: u32) -> Series {
    TruncatedSeries::monomial(0, k, x.clone(), 0, nz).geom().unwrap()
}

fn lift(s: &Series, ny: u32, nz: u32) -> Series {
    TruncatedSeries::from_coeffs(s.iter().map(|(&ij, c)| (ij, c.clone())), ny, nz)
}

/// exp(Σ_k y^k c_k(z) p_k) with the c_k given as z-series.
fn exp_in_y(c: &BTreeMap<u32, Series>, ny: u32, nz: u32) -> FockElement<Series> {
    let shifted: BTreeMap<u32, Series> = c
        .iter()
        .map(|(&k, s)| (k, lift(s, ny, nz).mul(&TruncatedSeries::monomial(k, 0, GroundScalar::one(), ny, nz))))
        .collect();
    exp_linear(&shifted, ny, &TruncatedSeries::one(ny, nz))
}

/// The closed-form degree-k exponent, assembled from geometric series.
fn closed_exponent(k: u32, nz: u32) -> Series {
    let ki = k as i32;
    let plain = GroundScalar::one().sub(&GroundScalar::var(Var::U, ki)).mul(&GroundScalar::hbar(2 * ki));
    let w = GroundScalar::hbar(ki).mul(&GroundScalar::var(Var::Q, -ki));
    let zpart = TruncatedSeries::monomial(0, k, GroundScalar::hbar(2 * ki).mul(&GroundScalar::var(Var::Q, -ki)).mul(&hbar_diff(ki)), 0, nz)
        .mul(&geometric(&w, k, nz));
    let scale = d(k).mul_int(k as i64).inv().unwrap();
    TruncatedSeries::constant(plain, 0, nz).add(&zpart).scale(&scale)
}

#[test]
fn kernel_mellit_osum_at_low_order() {
    let e = engine();
    for n in 0..=3 {
        assert!(e.check_kernel_identity(n).unwrap().passed(), "kernel {n}");
        assert!(e.check_mellit(n).unwrap().passed(), "mellit {n}");
        assert!(e.check_osum(n).unwrap().passed(), "osum {n}");
        assert!(e.check_degenerate(n).unwrap().passed(), "degenerate {n}");
    }
}

#[test]
fn first_order_coefficients() {
    let e = engine();
    let h1 = p("1");
    let expected = GroundScalar::hbar(2).div(&d(1)).unwrap();
    assert_eq!(e.basis().euler(&h1).unwrap().inv().unwrap(), expected);

    let taubar = e.taubar_f(1, 0).unwrap();
    let with_u = expected.mul(&s("1 - u"));
    assert_eq!(taubar.get(&h1).unwrap().coeff(1, 0), with_u);

    let osum = e.osum_f(1, 0).unwrap();
    assert_eq!(osum.get(&h1).unwrap().coeff(1, 0), expected.neg());

    let osum2 = e.osum_f(2, 0).unwrap();
    assert_eq!(osum2.iter().filter(|(mu, _)| mu.size() == 2).count(), 2);
}

#[test]
fn closed_form_matches_geometric_expansion() {
    let (ny, nz) = (3, 5);
    let e = engine();
    let c: BTreeMap<u32, Series> = (1..=ny).map(|k| (k, closed_exponent(k, nz))).collect();
    assert_eq!(e.closed_f(ny, nz).unwrap(), exp_in_y(&c, ny, nz));
}

#[test]
fn closed_form_y_coefficient_as_printed() {
    let e = engine();
    let f = e.closed_f(1, 4).unwrap();
    let s1 = f.get(&p("1")).unwrap();
    assert_eq!(s1.coeff(1, 0), GroundScalar::hbar(2).mul(&s("1 - u")).div(&d(1)).unwrap());
    let w = s("t1*t2*q^-1");
    for j in 1..=4 {
        let expected = GroundScalar::hbar(2).mul(&s("q^-1")).mul(&hbar_diff(1)).mul(&w.pow(j - 1)).div(&d(1)).unwrap();
        assert_eq!(s1.coeff(1, j), expected, "z^{j}");
    }
}

#[test]
fn built_series_is_exp_of_substituted_exponent() {
    // jj0 is an algebra map, so p2_k ↦ p2_k + s_k p1_k turns exp(c p1 + d p2) into exp((c + d s) p1) once p2 = 0.
    let (ny, nz) = (3, 4);
    let e = engine();
    let c: BTreeMap<u32, Series> = (1..=ny)
        .map(|k| {
            let ki = k as i32;
            let plain = GroundScalar::one().sub(&GroundScalar::var(Var::U, ki)).mul(&GroundScalar::hbar(2 * ki));
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let osum = GroundScalar::hbar(2 * ki).mul_int(sign);
            let rule = TruncatedSeries::monomial(0, k, GroundScalar::hbar(ki).mul(&hbar_diff(ki)).mul_int(sign), 0, nz)
                .mul(&geometric(&GroundScalar::one(), k, nz));
            let total = TruncatedSeries::constant(plain, 0, nz).add(&rule.scale(&osum));
            (k, total.scale(&d(k).mul_int(k as i64).inv().unwrap()))
        })
        .collect();
    assert_eq!(e.build_f(ny, nz).unwrap(), exp_in_y(&c, ny, nz));
}

#[test]
fn built_series_without_z_is_taubar() {
    let e = engine();
    assert_eq!(e.build_f(3, 0).unwrap(), e.taubar_f(3, 0).unwrap());
    // u = 1 kills the order-y term at z^0
    let f = e.build_f(1, 0).unwrap();
    let c = f.get(&p("1")).unwrap().coeff(1, 0);
    assert!(c.substitute(Var::U, &rat(1, 1)).unwrap().is_zero());
}

#[test]
fn plethystic_form_agrees() {
    let e = engine();
    for (ny, nz) in [(0, 0), (1, 3), (2, 4), (3, 3)] {
        assert!(e.check_ook(ny, nz).unwrap().passed(), "({ny},{nz})");
    }
}

#[test]
fn main_identity_shift_search() {
    let e = engine();
    // at z^0 every shift agrees, so the search cannot single one out
    let r = e.check_main(2, 0).unwrap();
    assert!(r.candidates.iter().all(|c| c.outcome.passed()));
    assert_eq!(r.candidates.len(), Shift::family().len());
    assert!(!r.passed());

    let r = e.check_main(2, 3).unwrap();
    assert_eq!(r.candidates.len(), 18);
    assert!(r.candidates.iter().all(|c| !c.outcome.passed()));
    assert!(matches!(r.outcome, Outcome::Mismatch { .. }));
    assert_eq!(r.conventions["winning_shift"], "none");
    assert_eq!(r.conventions["claimed_shift"], Shift::CLAIMED.label());
    let d = e.main_diagnosis(2, 3, None).unwrap();
    assert!(d.derived_matches && d.intermediate_matches);
    assert!(r.notes.iter().any(|n| n.contains("hbar^(3k) form: true")));
}

#[test]
fn main_identity_specialized_agrees_with_symbolic() {
    let sp = specialized();
    let r = sp.check_main(2, 3).unwrap();
    assert!(r.candidates.iter().all(|c| !c.outcome.passed()));
    let d = sp.main_diagnosis(2, 3, None).unwrap();
    assert!(d.derived_matches && d.intermediate_matches);
    assert!(sp.check_kernel_identity(3).unwrap().passed());
    assert!(sp.check_mellit(3).unwrap().passed());
    assert!(sp.check_ook(3, 4).unwrap().passed());
}

#[test]
fn vertex_table_small_n() {
    let e = engine();
    let t0 = e.capped_vertex_table(0, 2).unwrap();
    assert_eq!(t0.entries.len(), 1);
    assert_eq!(t0.entries[0].numerator, vec!["1".to_string()]);
    assert!(t0.to_text().contains("∅ : 1"));

    for n in 1..=2 {
        let nz = 2 * degree_budget(n) as u32 + 2;
        let t = e.capped_vertex_table(n, nz).unwrap();
        assert!(t.certified(), "n = {n}");
        assert_eq!(t.q_independent, Some(true));
        assert_eq!(t.entries.len(), partitions(n).len());
        // re-expanding each fit reproduces the fixed-point series
        let series = e.vertex_series(n, nz).unwrap();
        for entry in &t.entries {
            let lam = Partition::new(entry.lambda.clone()).unwrap();
            let num = UniPoly::new(entry.numerator.iter().map(|c| s(c)).collect());
            let den = UniPoly::new(entry.denominator.iter().map(|c| s(c)).collect());
            assert_eq!(num.expand_over(&den, nz as usize).unwrap(), series[&lam], "{lam}");
            assert!(den.degree().unwrap_or(0) <= degree_budget(n));
        }
    }
    let t1 = e.capped_vertex_table(1, 4).unwrap();
    assert_eq!(t1.entries[0].denominator, vec!["1".to_string(), "-1".to_string()]);
}

#[test]
fn vertex_series_first_order_by_hand() {
    // y^1 slice in the H_(1) = p_1 basis, times Λ•(T_(1)), as a series in w = zħ/q
    let e = engine();
    let series = e.vertex_series(1, 4).unwrap();
    let got = &series[&p("1")];
    let euler = e.basis().euler(&p("1")).unwrap().clone();
    let base = d(1).inv().unwrap().mul(&euler);
    assert_eq!(got[0], GroundScalar::hbar(2).mul(&s("1 - u")).mul(&base));
    assert_eq!(got.len(), 5);
    for (j, c) in got.iter().enumerate().skip(1) {
        assert_eq!(c, &GroundScalar::hbar(1).mul(&hbar_diff(1)).mul(&base), "w^{j}");
    }
}

#[test]
fn limit_propositions() {
    let conv = Conventions::default();
    for n in 0..=3 {
        let r = check_prop1(n, &conv).unwrap();
        assert!(r.passed(), "prop1 {n}");
        for k in 0..=n as usize {
            assert!(check_prop4(n, k, Orientation::Standard).unwrap().passed(), "prop4 {n} {k}");
        }
    }
    let r = check_prop1(3, &conv).unwrap();
    assert!(r.notes.iter().any(|n| n == "a-power N validated by some reading: true"));
    assert!(r.notes.iter().any(|n| n == "a-power TwoN validated by some reading: false"));
    let valid: Vec<_> = prop1_search(3, Orientation::Standard).unwrap().into_iter().filter(|(_, o)| o.passed()).collect();
    assert_eq!(valid.len(), 1);
    assert_eq!(valid[0].0, conv.limit);
    assert_eq!(valid[0].0.a_power, APower::N);
    assert_eq!(RankTwoPoint::all(3).len(), 10);
    assert!(check_prop4(2, 3, Orientation::Standard).is_err());
}

#[test]
fn calibration_reproduces_defaults() {
    let base = Conventions::default();
    let out = calibrate(&base).unwrap();
    assert_eq!(out.conventions.tangent, base.tangent);
    assert_eq!(out.conventions.cell_eigen, base.cell_eigen);
    assert_eq!(out.conventions.osum, base.osum);
    assert_eq!(out.conventions.limit, base.limit);
    assert_eq!(out.conventions.main_shift, None);
    let again = calibrate(&out.conventions).unwrap();
    assert_eq!(again.conventions, out.conventions);
}

#[test]
fn reports_are_deterministic_and_carry_witnesses() {
    let e = engine();
    let a = serde_json::to_string(&e.check_kernel_identity(3).unwrap()).unwrap();
    let b = serde_json::to_string(&e.check_kernel_identity(3).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(!a.contains("elapsed_ms"));
    let r = e.check_main(2, 2).unwrap();
    match &r.outcome {
        Outcome::Mismatch { witness } => {
            assert!(!witness.location.is_empty());
            assert_ne!(witness.left, witness.right);
        }
        o => panic!("unexpected {o:?}"),
    }
}

#[test]
fn bounds_are_enforced() {
    assert!(check_bounds(Some(MAX_Y), Some(MAX_Z), Some(MAX_N)).is_ok());
    assert!(matches!(check_bounds(Some(MAX_Y + 1), None, None), Err(PipelineError::Bound(_))));
    assert!(matches!(check_bounds(None, Some(MAX_Z + 1), None), Err(PipelineError::Bound(_))));
    assert!(matches!(check_bounds(None, None, Some(MAX_N + 1)), Err(PipelineError::Bound(_))));
    assert!(matches!(engine().check_kernel_identity(5), Err(PipelineError::Bound(_))));
}
