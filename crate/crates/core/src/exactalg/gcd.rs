//! Multivariate integer polynomial gcd by the heuristic evaluation method.
//!
//! One variable at a time is evaluated at a large integer, the gcd is taken
//! recursively, and the answer is lifted back by symmetric base-x digits.
//! Every candidate is verified by exact division. When all attempts fail the
//! caller receives `None` and must fall back to content removal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Mono, Poly, Var, NVARS};

const MAX_TRIES: usize = 6;
/// Past this exponent the integer images get too large to be worth it.
const MAX_DEGREE: i32 = 1024;

/// Gcd of two Laurent polynomials up to a unit (a signed monomial).
///
/// The result has nonnegative exponents with zero minimum in every variable
/// and a positive leading coefficient. `None` if the heuristic gave up.
pub fn gcd(f: &Poly, g: &Poly) -> Option<Poly> {
    if f.is_zero() {
        return Some(normalize(&shift_min(g)));
    }
    if g.is_zero() {
        return Some(normalize(&shift_min(f)));
    }
    let fs = shift_min(f);
    let gs = shift_min(g);
    if fs.len() == 1 || gs.len() == 1 {
        return Some(Poly::constant(fs.content().gcd(&gs.content())));
    }
    if fs == gs {
        return Some(normalize(&fs));
    }
    // compress exponents by their common divisor per variable
    let mut step = [0i32; NVARS];
    for p in [&fs, &gs] {
        for (m, _) in p.terms() {
            for (s, e) in step.iter_mut().zip(m.0.iter()) {
                *s = s.gcd(e);
            }
        }
    }
    let compress = |p: &Poly| {
        p.map_monos(|m| {
            let mut e = m.0;
            for (x, s) in e.iter_mut().zip(step.iter()) {
                if *s > 1 {
                    *x /= *s;
                }
            }
            Mono(e)
        })
    };
    let (fc, gc) = (compress(&fs), compress(&gs));
    if [&fc, &gc].iter().any(|p| p.terms().iter().any(|(m, _)| m.0.iter().any(|&e| e > MAX_DEGREE))) {
        return None;
    }
    let h = heu(&fc, &gc)?;
    let h = h.map_monos(|m| {
        let mut e = m.0;
        for (x, s) in e.iter_mut().zip(step.iter()) {
            if *s > 1 {
                *x *= *s;
            }
        }
        Mono(e)
    });
    Some(normalize(&h))
}

fn shift_min(p: &Poly) -> Poly {
    let m = p.min_mono();
    if m.is_one() {
        p.clone()
    } else {
        p.mul_mono(&m.inv())
    }
}

fn normalize(p: &Poly) -> Poly {
    let p = shift_min(p);
    if p.lead_is_negative() {
        p.neg()
    } else {
        p
    }
}

fn lex_lead_coeff(p: &Poly) -> BigInt {
    p.terms()
        .iter()
        .max_by(|a, b| a.0 .0.cmp(&b.0 .0))
        .map(|(_, c)| c.clone())
        .unwrap_or_else(BigInt::zero)
}

fn max_norm(p: &Poly) -> BigInt {
    p.terms().iter().map(|(_, c)| c.abs()).max().unwrap_or_else(BigInt::zero)
}

fn primitive(p: &Poly) -> Poly {
    let c = p.content();
    let q = if c.is_zero() || c.is_one() { p.clone() } else { p.div_int(&c) };
    if lex_lead_coeff(&q).is_negative() {
        q.neg()
    } else {
        q
    }
}

fn heu(f: &Poly, g: &Poly) -> Option<Poly> {
    if f.is_zero() {
        return Some(primitive(g).scale(&g.content()));
    }
    if g.is_zero() {
        return Some(primitive(f).scale(&f.content()));
    }
    let cont = f.content().gcd(&g.content());
    if f.is_constant() || g.is_constant() {
        return Some(Poly::constant(cont));
    }
    let v = first_var(f, g)?;
    let f1 = f.div_int(&cont);
    let g1 = g.div_int(&cont);
    let fnorm = max_norm(&f1);
    let gnorm = max_norm(&g1);
    let b: BigInt = BigInt::from(2) * (&fnorm).min(&gnorm) + 29;
    let lcf = lex_lead_coeff(&f1).abs();
    let lcg = lex_lead_coeff(&g1).abs();
    let ratio = (&fnorm / &lcf).min(&gnorm / &lcg);
    let mut x: BigInt = (&b).min(&(BigInt::from(99) * b.sqrt())).clone().max(BigInt::from(2) * ratio + 2);
    for _ in 0..MAX_TRIES {
        let ff = eval_at(&f1, v, &x);
        let gg = eval_at(&g1, v, &x);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(h) = heu(&ff, &gg) {
                let hp = primitive(&interpolate(&h, &x, v));
                if f1.div_exact(&hp).is_some() && g1.div_exact(&hp).is_some() {
                    return Some(hp.scale(&cont));
                }
                // lift a cofactor instead and divide it out
                for (image, base, other) in [(&ff, &f1, &g1), (&gg, &g1, &f1)] {
                    let Some(cof) = image.div_exact(&h) else { continue };
                    let Some(hq) = base.div_exact(&interpolate(&cof, &x, v)) else { continue };
                    let hq = primitive(&hq);
                    if other.div_exact(&hq).is_some() && base.div_exact(&hq).is_some() {
                        return Some(hq.scale(&cont));
                    }
                }
            }
        }
        let r = x.sqrt().sqrt();
        x = BigInt::from(73794) * &x * r / BigInt::from(27011);
    }
    None
}

fn first_var(f: &Poly, g: &Poly) -> Option<Var> {
    Var::ALL
        .iter()
        .copied()
        .find(|v| f.terms().iter().chain(g.terms().iter()).any(|(m, _)| m.exp(*v) != 0))
}

/// Substitute the integer `x` for `v` (exponents of `v` must be nonnegative).
fn eval_at(p: &Poly, v: Var, x: &BigInt) -> Poly {
    let i = v.index();
    let maxe = p.terms().iter().map(|(m, _)| m.0[i]).max().unwrap_or(0).max(0) as usize;
    let mut pows = Vec::with_capacity(maxe + 1);
    pows.push(BigInt::one());
    for k in 1..=maxe {
        let next = &pows[k - 1] * x;
        pows.push(next);
    }
    Poly::from_terms(p.terms().iter().map(|(m, c)| {
        let mut e = m.0;
        let k = e[i] as usize;
        e[i] = 0;
        (Mono(e), c * &pows[k])
    }))
}

/// Symmetric remainder in (-x/2, x/2].
fn smod(c: &BigInt, x: &BigInt) -> BigInt {
    let r = c.mod_floor(x);
    if BigInt::from(2) * &r > *x {
        r - x
    } else {
        r
    }
}

/// Recover a polynomial in `v` from its image at `v = x`.
fn interpolate(h: &Poly, x: &BigInt, v: Var) -> Poly {
    let i = v.index();
    let mut out: Vec<(Mono, BigInt)> = Vec::new();
    let mut cur = h.clone();
    let mut deg = 0i32;
    while !cur.is_zero() {
        let digit: Vec<(Mono, BigInt)> = cur
            .terms()
            .iter()
            .map(|(m, c)| (*m, smod(c, x)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (m, c) in &digit {
            let mut e = m.0;
            e[i] = deg;
            out.push((Mono(e), c.clone()));
        }
        let dpoly = Poly::from_terms(digit);
        cur = cur.sub(&dpoly).div_int(x);
        deg += 1;
    }
    let p = Poly::from_terms(out);
    if lex_lead_coeff(&p).is_negative() {
        p.neg()
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> Poly {
        Poly::mono(Mono::var(Var::T1, 1))
    }
    fn t2() -> Poly {
        Poly::mono(Mono::var(Var::T2, 1))
    }
    fn one() -> Poly {
        Poly::one()
    }

    #[test]
    fn gcd_of_products() {
        let a = one().sub(&t1());
        let b = one().add(&t1().mul(&t2()));
        let c = t2().sub(&t1().scale(&BigInt::from(3)));
        let f = a.mul(&b);
        let g = a.mul(&c);
        let h = gcd(&f, &g).unwrap();
        assert!(h == a || h == a.neg());
        let f2 = a.mul(&b).mul(&b);
        let g2 = b.mul(&c).mul(&b);
        let h2 = gcd(&f2, &g2).unwrap();
        let bb = b.mul(&b);
        assert!(h2 == bb || h2 == bb.neg());
    }

    #[test]
    fn coprime_is_constant() {
        let f = one().sub(&t1());
        let g = one().sub(&t2());
        assert_eq!(gcd(&f, &g).unwrap(), one());
    }

    #[test]
    fn integer_content() {
        let f = one().sub(&t1()).scale(&BigInt::from(6));
        let g = one().sub(&t1()).scale(&BigInt::from(4)).mul(&t2().add(&one()));
        let h = gcd(&f, &g).unwrap();
        assert_eq!(h, one().sub(&t1()).scale(&BigInt::from(2)).neg());
    }
}
