//! Sparse Laurent polynomials over the integers in the ground variables.
//!
//! Exponents are stored doubled so that half-integer powers are exact.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::guard;

/// Number of ground variables.
pub const NVARS: usize = 5;

/// Ground variable names in storage order.
pub const VAR_NAMES: [&str; NVARS] = ["t1", "t2", "q", "u", "a"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T1 = 0,
    T2 = 1,
    Q = 2,
    U = 3,
    A = 4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::T1, Var::T2, Var::Q, Var::U, Var::A];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        VAR_NAMES[self.index()]
    }

    pub fn from_name(s: &str) -> Option<Var> {
        VAR_NAMES.iter().position(|n| *n == s).map(|i| Var::ALL[i])
    }
}

/// A Laurent monomial; entry `i` is twice the exponent of variable `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [i32; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    /// Monomial with the given *doubled* exponent in one variable.
    pub fn var_half(v: Var, doubled: i32) -> Mono {
        let mut e = [0; NVARS];
        e[v.index()] = doubled;
        Mono(e)
    }

    /// `v^k` for an integer `k`.
    pub fn var(v: Var, k: i32) -> Mono {
        Mono::var_half(v, 2 * k)
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NVARS]
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(o.0.iter()) {
            *x += *y;
        }
        Mono(e)
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(o.0.iter()) {
            *x -= *y;
        }
        Mono(e)
    }

    pub fn inv(&self) -> Mono {
        Mono(self.0.map(|x| -x))
    }

    pub fn pow(&self, k: i32) -> Mono {
        Mono(self.0.map(|x| x * k))
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// Graded lexicographic comparison on doubled exponents.
    pub fn grlex(&self, o: &Mono) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::render_mono(self))
    }
}

/// Key wrapper ordering monomials by grlex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Grlex(Mono);

impl PartialOrd for Grlex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Grlex {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.grlex(&o.0)
    }
}

/// Sparse Laurent polynomial, terms sorted by descending grlex, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, BigInt)>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::render_poly(self))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        Poly::term(Mono::ONE, c)
    }

    pub fn term(m: Mono, c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn mono(m: Mono) -> Poly {
        Poly::term(m, BigInt::one())
    }

    /// Build from arbitrary (possibly repeated, zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Mono, BigInt)>>(it: I) -> Poly {
        let mut acc: HashMap<Mono, BigInt> = HashMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: HashMap<Mono, BigInt>) -> Poly {
        let mut terms: Vec<(Mono, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.grlex(&a.0));
        guard::check_terms(terms.len());
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// A single term `c·m`.
    pub fn as_term(&self) -> Option<(&Mono, &BigInt)> {
        if self.terms.len() == 1 {
            Some((&self.terms[0].0, &self.terms[0].1))
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Leading term under grlex.
    pub fn lead(&self) -> Option<&(Mono, BigInt)> {
        self.terms.first()
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.grlex(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        guard::check_terms(out.len());
        Poly { terms: out }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if let Some((m, c)) = o.as_term() {
            return self.mul_term(m, c);
        }
        if let Some((m, c)) = self.as_term() {
            return o.mul_term(m, c);
        }
        guard::check_terms(self.len().saturating_mul(o.len()) / 8);
        let mut acc: HashMap<Mono, BigInt> = HashMap::with_capacity(self.len() * o.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        Poly::from_map(acc)
    }

    /// Multiplication by a term keeps the order intact.
    pub fn mul_term(&self, m: &Mono, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m1, c1)| (m1.mul(m), c1 * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|(m1, c1)| (m1.mul(m), c1.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        self.mul_term(&Mono::ONE, c)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Exact division by an integer; caller guarantees divisibility.
    pub fn div_int(&self, c: &BigInt) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, x)| (*m, x / c)).collect() }
    }

    /// Gcd of the integer coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_mono(&self) -> Mono {
        let mut e = [i32::MAX; NVARS];
        for (m, _) in &self.terms {
            for (x, y) in e.iter_mut().zip(m.0.iter()) {
                *x = (*x).min(*y);
            }
        }
        if self.terms.is_empty() {
            Mono::ONE
        } else {
            Mono(e)
        }
    }

    pub fn max_mono(&self) -> Mono {
        let mut e = [i32::MIN; NVARS];
        for (m, _) in &self.terms {
            for (x, y) in e.iter_mut().zip(m.0.iter()) {
                *x = (*x).max(*y);
            }
        }
        if self.terms.is_empty() {
            Mono::ONE
        } else {
            Mono(e)
        }
    }

    /// Apply a map to every monomial (must be injective to keep terms distinct).
    pub fn map_monos<F: Fn(&Mono) -> Mono>(&self, f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Exact quotient `self / h`, or `None` when `h` does not divide `self`.
    pub fn div_exact(&self, h: &Poly) -> Option<Poly> {
        if h.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some((m, c)) = h.as_term() {
            if self.terms.iter().any(|(_, x)| !x.is_multiple_of(c)) {
                return None;
            }
            let mi = m.inv();
            return Some(Poly { terms: self.terms.iter().map(|(m1, x)| (m1.mul(&mi), x / c)).collect() });
        }
        // shift both to nonnegative exponents; the quotient's per-variable
        // lowest degree is then the difference of the shifts
        let sf = self.min_mono();
        let sh = h.min_mono();
        let f = self.mul_mono(&sf.inv());
        let hh = h.mul_mono(&sh.inv());
        let q = div_exact_nonneg(&f, &hh)?;
        Some(q.mul_mono(&sf.div(&sh)))
    }

    /// Substitute `v -> v^k` (doubled exponents of `v` are multiplied by k).
    pub fn power_var(&self, v: Var, k: i32) -> Poly {
        let i = v.index();
        self.map_monos(|m| {
            let mut e = m.0;
            e[i] *= k;
            Mono(e)
        })
    }

    /// Substitute every variable `v -> v^k`.
    pub fn adams(&self, k: i32) -> Poly {
        self.map_monos(|m| m.pow(k))
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|v| self.terms.iter().any(|(m, _)| m.exp(*v) != 0))
            .collect()
    }
}

/// Polynomial division assuming both operands have nonnegative exponents.
fn div_exact_nonneg(f: &Poly, h: &Poly) -> Option<Poly> {
    let (lm, lc) = h.lead().cloned()?;
    let mut rem: BTreeMap<Grlex, BigInt> = f.terms.iter().map(|(m, c)| (Grlex(*m), c.clone())).collect();
    let mut quo: Vec<(Mono, BigInt)> = Vec::new();
    let hmax = h.max_mono();
    let fmax = f.max_mono();
    while let Some((Grlex(rm), rc)) = rem.pop_last() {
        if !lm.divides(&rm) {
            return None;
        }
        let (qc, r) = rc.div_rem(&lc);
        if !r.is_zero() {
            return None;
        }
        let qm = rm.div(&lm);
        // every quotient monomial times hmax stays inside f's box
        if qm.mul(&hmax).0.iter().zip(fmax.0.iter()).any(|(a, b)| a > b) {
            return None;
        }
        for (hm, hc) in h.terms.iter().skip(1) {
            let key = Grlex(hm.mul(&qm));
            let e = rem.entry(key).or_insert_with(BigInt::zero);
            *e -= &qc * hc;
            if e.is_zero() {
                rem.remove(&key);
            }
        }
        quo.push((qm, qc));
    }
    quo.sort_by(|a, b| b.0.grlex(&a.0));
    Some(Poly { terms: quo })
}

impl Poly {
    /// Leading coefficient sign under grlex.
    pub fn lead_is_negative(&self) -> bool {
        self.lead().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }
}
