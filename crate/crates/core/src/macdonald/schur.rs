//! Schur functions in power sums via the Murnaghan–Nakayama rule.

use std::collections::HashMap;
use std::sync::Mutex;

use num_rational::BigRational;

use crate::combinat::partition::{partitions, Partition};
use crate::exactalg::Field;
use crate::fock::FockElement;

static CACHE: Mutex<Option<HashMap<(Partition, Partition), i64>>> = Mutex::new(None);

/// χ^λ(μ): the irreducible character λ at cycle type μ (0 if sizes differ).
pub fn character(lambda: &Partition, mu: &Partition) -> i64 {
    if lambda.size() != mu.size() {
        return 0;
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = CACHE.lock().expect("cache lock").as_ref().and_then(|m| m.get(&key).copied()) {
        return v;
    }
    let v = compute(lambda, mu);
    CACHE.lock().expect("cache lock").get_or_insert_with(HashMap::new).insert(key, v);
    v
}

fn compute(lambda: &Partition, mu: &Partition) -> i64 {
    let Some((&k, rest)) = mu.parts().split_first() else {
        return 1;
    };
    let rest = Partition::new(rest.to_vec()).expect("positive parts");
    // Beta numbers λ_i + (L - i); a rim hook of size k moves one bead down by k.
    let len = lambda.length();
    let beta: Vec<i64> = lambda.parts().iter().enumerate().map(|(i, &p)| p as i64 + (len - 1 - i) as i64).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let nb = b - k as i64;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let crossed = beta.iter().filter(|&&x| x > nb && x < b).count();
        let mut next = beta.clone();
        next[i] = nb;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let l = next.len();
        let parts: Vec<u32> = next.iter().enumerate().map(|(j, &x)| (x - (l - 1 - j) as i64) as u32).filter(|&p| p > 0).collect();
        let smaller = Partition::new(parts).expect("positive parts");
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        total += sign * character(&smaller, &rest);
    }
    total
}

/// s_λ = Σ_μ χ^λ(μ) p_μ / z_μ.
pub fn schur<S: Field>(lambda: &Partition) -> FockElement<S> {
    let n = lambda.size();
    FockElement::from_terms(
        partitions(n).into_iter().map(|mu| {
            let c = BigRational::new(character(lambda, &mu).into(), mu.z());
            (mu, S::from_rat(&c))
        }),
        n,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_character_table() {
        assert_eq!(character(&p("2,1"), &p("1,1,1")), 2);
        assert_eq!(character(&p("2,1"), &p("2,1")), 0);
        assert_eq!(character(&p("2,1"), &p("3")), -1);
        assert_eq!(character(&p("1,1,1"), &p("2,1")), -1);
        assert_eq!(character(&p("3,1"), &p("2,2")), -1);
        assert_eq!(character(&p("2,2"), &p("3,1")), -1);
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=6 {
            let ps = partitions(n);
            for a in &ps {
                for b in &ps {
                    let s: i64 = ps.iter().map(|l| character(l, a) * character(l, b)).sum();
                    let want = if a == b { a.z() } else { 0.into() };
                    assert_eq!(num_bigint::BigInt::from(s), want);
                }
            }
        }
    }
}
