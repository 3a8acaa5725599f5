mod common;

use capvertex::exactalg::text::render_scalar;
use capvertex::exactalg::{
    rational_reconstruct, ArithError, Domain, GroundScalar, HalfInt, Mono, Poly, Rat, Ring, Specialized, TruncatedSeries,
    UniPoly, Var,
};
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn generic_point() -> Specialized {
    Specialized::new([
        (Var::T1, rat(4, 9)),
        (Var::T2, rat(9, 25)),
        (Var::Q, rat(3, 7)),
        (Var::U, rat(5, 11)),
        (Var::A, rat(2, 13)),
    ])
}

fn a_free_nonzero() -> impl Strategy<Value = Poly> {
    poly(3).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn inverses(x in nonzero_scalar(), y in scalar()) {
        prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        prop_assert_eq!(y.mul(&x).div(&x).unwrap(), y);
    }

    #[test]
    fn equality_is_cross_multiplication(x in scalar(), y in scalar()) {
        let same = x.num().mul(y.den()) == y.num().mul(x.den());
        prop_assert_eq!(x == y, same);
    }

    #[test]
    fn text_roundtrip(x in scalar()) {
        let text = render_scalar(&x);
        prop_assert_eq!(s(&text), x);
    }

    #[test]
    fn specialization_is_a_homomorphism(x in scalar(), y in scalar()) {
        let d = generic_point();
        let ex = d.embed(&x).unwrap();
        let ey = d.embed(&y).unwrap();
        prop_assert_eq!(d.embed(&x.add(&y)).unwrap(), ex.clone() + ey.clone());
        prop_assert_eq!(d.embed(&x.mul(&y)).unwrap(), ex * ey);
    }

    #[test]
    fn adams_is_multiplicative(x in scalar(), y in scalar(), k in 1u32..=3) {
        prop_assert_eq!(x.mul(&y).adams(k), x.adams(k).mul(&y.adams(k)));
        prop_assert_eq!(x.add(&y).adams(k), x.adams(k).add(&y.adams(k)));
    }

    #[test]
    fn adams_composes(x in scalar(), j in 1u32..=3, k in 1u32..=3) {
        prop_assert_eq!(x.adams(j).adams(k), x.adams(j * k));
    }

    #[test]
    fn series_adams_is_multiplicative(
        f in series_no_constant(3, 3, 3),
        g in series_no_constant(3, 3, 3),
        k in 1u32..=3,
    ) {
        prop_assert_eq!(f.mul(&g).adams(k), f.adams(k).mul(&g.adams(k)));
    }

    #[test]
    fn exp_matches_power_sum(f in series_no_constant(2, 3, 3)) {
        prop_assert_eq!(f.exp().unwrap(), exp_by_powers(&f));
    }

    #[test]
    fn exp_log_roundtrip(ny in 0u32..=2, nz in 0u32..=3, f in series_no_constant(2, 3, 3)) {
        let f = f.truncate(ny, nz);
        let e = f.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), f.clone());
    }

    #[test]
    fn geom_inverts_one_minus(g in series_no_constant(3, 4, 4)) {
        let (ny, nz) = g.orders();
        let one = TruncatedSeries::one(ny, nz);
        prop_assert_eq!(one.sub(&g).mul(&g.geom().unwrap()), one);
    }

    #[test]
    fn reconstruct_roundtrip((num, den) in rational_function(2, 3), extra in 0usize..4) {
        let len = 2 + 3 + 2 + extra;
        let s = expand_ratio(&num, &den, len);
        let fit = rational_reconstruct(&s, 2, 3).unwrap();
        let a = UniPoly::new(num.clone());
        let b = UniPoly::new(den.clone());
        prop_assert!(same_ratio(&fit.num, &fit.den, &a, &b));
        prop_assert_eq!(fit.num.expand_over(&fit.den, len - 1).unwrap(), s);
        prop_assert_eq!(fit.certified_through, len - 1);
    }

    #[test]
    fn a_limit_reads_lowest_order(p in a_free_nonzero(), q in poly(2), r in a_free_nonzero(), t in poly(2), k in -2i32..=2) {
        // (a^k p + a^{k+1} q) / (a^k r + a^{k+1} t) tends to p/r
        let ak = Mono::var(Var::A, k);
        let ak1 = Mono::var(Var::A, k + 1);
        let num = p.mul_mono(&ak).add(&q.mul_mono(&ak1));
        let den = r.mul_mono(&ak).add(&t.mul_mono(&ak1));
        let x = GroundScalar::new(num, den).unwrap();
        prop_assert_eq!(x.a_valuation().unwrap(), HalfInt(0));
        let expected = GroundScalar::new(p, r).unwrap();
        prop_assert_eq!(x.a_limit().unwrap(), expected);
    }

    #[test]
    fn a_valuation_of_monomial_multiples(p in a_free_nonzero(), r in a_free_nonzero(), v in -3i32..=3) {
        let x = GroundScalar::new(p, r).unwrap().mul(&GroundScalar::var(Var::A, v));
        prop_assert_eq!(x.a_valuation().unwrap(), HalfInt::from_int(v));
        match x.a_limit() {
            Ok(l) if v == 0 => prop_assert_eq!(l, x),
            Ok(l) => { prop_assert!(v > 0); prop_assert!(l.is_zero()); }
            Err(ArithError::LimitDoesNotExist { valuation }) => { prop_assert!(v < 0); prop_assert_eq!(valuation, HalfInt::from_int(v)); }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn exp_of_zero_and_geom_of_z() {
    let zero: TruncatedSeries<GroundScalar> = TruncatedSeries::zero(2, 3);
    assert_eq!(zero.exp().unwrap(), TruncatedSeries::one(2, 3));
    let z = TruncatedSeries::monomial(0, 1, GroundScalar::one(), 0, 3);
    let expected = TruncatedSeries::from_coeffs((0..=3).map(|j| ((0, j), GroundScalar::one())), 0, 3);
    assert_eq!(z.geom().unwrap(), expected);
}

#[test]
fn exp_taylor_in_y() {
    let c = s("t1 - u");
    let f = TruncatedSeries::monomial(1, 0, c.clone(), 2, 0);
    let expected = TruncatedSeries::from_coeffs(
        [((0, 0), GroundScalar::one()), ((1, 0), c.clone()), ((2, 0), c.mul(&c).mul_rat(&rat(1, 2)))],
        2,
        0,
    );
    assert_eq!(f.exp().unwrap(), expected);
}

#[test]
fn nonzero_constant_terms_are_rejected() {
    let one: TruncatedSeries<GroundScalar> = TruncatedSeries::one(1, 1);
    assert!(matches!(one.exp(), Err(ArithError::BadConstantTerm { .. })));
    assert!(matches!(one.geom(), Err(ArithError::BadConstantTerm { .. })));
    let zero: TruncatedSeries<GroundScalar> = TruncatedSeries::zero(1, 1);
    assert!(matches!(zero.log(), Err(ArithError::BadConstantTerm { .. })));
}

#[test]
fn geom_of_shifted_variable() {
    // 1/(1 - z hbar/q) has z^j coefficient (hbar/q)^j
    let w = s("t1*t2*q^-1");
    let g = TruncatedSeries::monomial(0, 1, w.clone(), 0, 5);
    let out = g.geom().unwrap();
    for j in 0..=5 {
        assert_eq!(out.coeff(0, j), w.pow(j));
    }
}

#[test]
fn reconstruct_examples() {
    let ones: Vec<Rat> = vec![rat(1, 1); 6];
    let fit = rational_reconstruct(&ones, 0, 1).unwrap();
    assert_eq!(fit.num, UniPoly::one());
    assert_eq!(fit.den, UniPoly::new(vec![rat(1, 1), rat(-1, 1)]));

    let bad = vec![rat(1, 1), rat(1, 1), rat(0, 1), rat(1, 1)];
    assert!(matches!(rational_reconstruct(&bad, 0, 1), Err(ArithError::NoRationalFit { .. })));

    let short = vec![rat(1, 1); 2];
    assert!(matches!(rational_reconstruct(&short, 1, 1), Err(ArithError::TooFewCoefficients { .. })));
}

#[test]
fn reconstruct_symbolic_coefficients() {
    // (hbar - hbar^-1) w / (1 - w), w = z hbar/q
    let w = s("t1*t2*q^-1");
    let c = s("t1*t2 - t1^-1*t2^-1");
    let series: Vec<GroundScalar> = (0..6).map(|j| if j == 0 { GroundScalar::zero() } else { c.mul(&w.pow(j)) }).collect();
    let fit = rational_reconstruct(&series, 1, 1).unwrap();
    let num = UniPoly::new(vec![GroundScalar::zero(), c.mul(&w)]);
    let den = UniPoly::new(vec![GroundScalar::one(), w.neg()]);
    assert!(same_ratio(&fit.num, &fit.den, &num, &den));
    assert_eq!(fit.den.coeff(0), GroundScalar::one());
}

#[test]
fn half_powers_need_square_values() {
    let d = Specialized::new([(Var::T1, rat(2, 1))]);
    assert!(d.embed(&GroundScalar::var_half(Var::T1, 1)).is_err());
    assert_eq!(d.embed(&GroundScalar::var(Var::T1, 2)).unwrap(), rat(4, 1));
    assert!(d.embed(&GroundScalar::var(Var::T2, 1)).is_err());
    let d = generic_point();
    assert_eq!(d.embed(&GroundScalar::var_half(Var::T1, 1)).unwrap(), rat(2, 3));
    assert_eq!(d.embed(&GroundScalar::from_bigint(BigInt::from(7))).unwrap(), rat(7, 1));
}
