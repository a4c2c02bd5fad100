//! Reference implementations that share no code with the crate.
#![allow(dead_code)]

use num_bigint::BigUint;

/// Euler's totient by trial division.
pub fn phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `^h a` when it is below 64, else `None`. Towers only grow with height,
/// so once a level reaches 64 every higher one does too.
fn small_tower(a: u64, h: u64) -> Option<u64> {
    let mut v = 1u64;
    for _ in 0..h {
        v = a.checked_pow(v as u32).filter(|&x| x < 64)?;
    }
    Some(v)
}

/// `^h a mod n` by the textbook rule `a^e = a^(e mod phi(n) + phi(n)) (mod n)`
/// for `e >= log2(n)`; valid for every `a`, coprime or not.
pub fn tower_mod(a: u64, h: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    if h == 1 {
        return a % n;
    }
    let big_n = BigUint::from(n);
    let e = match small_tower(a, h - 1) {
        Some(e) => BigUint::from(e),
        None => {
            let f = phi(n);
            BigUint::from(tower_mod(a, h - 1, f) + f)
        }
    };
    let r = BigUint::from(a).modpow(&e, &big_n);
    r.to_u64_digits().first().copied().unwrap_or(0)
}

/// `^h a mod 10^m` as an `m`-digit string, `m <= 18`.
pub fn tower_digits(a: u64, h: u64, m: u32) -> String {
    let v = tower_mod(a, h, 10u64.pow(m));
    format!("{v:0width$}", width = m as usize)
}

/// Matching trailing characters of two equal-length digit strings.
pub fn agreement(x: &str, y: &str) -> usize {
    x.bytes()
        .rev()
        .zip(y.bytes().rev())
        .take_while(|(a, b)| a == b)
        .count()
}

/// `#S(a,b)` by comparing `^b a` against every higher tower up to the point
/// where the residue mod `10^m` stops changing; `None` if all `m` digits
/// agree, meaning `m` was too small to decide.
pub fn stable_digits_brute(a: u64, b: u64, m: u32) -> Option<usize> {
    let lower = tower_digits(a, b, m);
    let mut min = m as usize;
    // past about 4m + 4 levels the totient chain of 10^m has reached 1
    for c in b + 1..=b + 4 * m as u64 + 8 {
        min = min.min(agreement(&lower, &tower_digits(a, c, m)));
    }
    (min < m as usize).then_some(min)
}
