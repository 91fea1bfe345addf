//! Number-theoretic helpers and the shared cache of cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Distinct prime divisors in increasing order.
pub(crate) fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn euler_phi(n: u32) -> usize {
    let mut phi = n as u64;
    for p in prime_factors(n) {
        phi = phi / p as u64 * (p as u64 - 1);
    }
    phi as usize
}

/// Inverse of `a` modulo `m` (`m >= 1`, `gcd(a, m) = 1`); returns 0 for `m = 1`.
pub(crate) fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "mod_inverse of non-unit");
    old_s.rem_euclid(m as i128) as u64
}

type PolyCache = RwLock<HashMap<u32, Arc<Vec<i64>>>>;

fn cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree
/// first. Monic, of length `phi(n) + 1`.
pub(crate) fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cache().read().expect("poisoned cache").get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 divided by every Phi_d with d a proper divisor of n.
    let mut num: Vec<i128> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_poly(d);
            num = exact_monic_division(&num, &div);
        }
    }
    let result: Arc<Vec<i64>> = Arc::new(
        num.into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
            .collect(),
    );
    let mut guard = cache().write().expect("poisoned cache");
    Arc::clone(guard.entry(n).or_insert(result))
}

fn exact_monic_division(num: &[i128], div: &[i64]) -> Vec<i128> {
    let dn = num.len() - 1;
    let dd = div.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i128; dn - dd + 1];
    for k in (dd..=dn).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - dd] = c;
        for (j, &dj) in div.iter().enumerate() {
            rem[k - dd + j] -= c * dj as i128;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}
