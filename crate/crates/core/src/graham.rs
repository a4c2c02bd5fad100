//! Graham's number through its base-3 tower tail.
//!
//! `G = ^n 3` with `n = slog_3(G)` far beyond reach, so nothing here builds
//! `G`. Its trailing digits are the frozen digits of the base-3 tower, and
//! the claims about position `n` are checked at small odd heights standing
//! in for `n`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::residue::Residue;
use crate::stability::limit_digits;
use crate::tower::tetration;

/// What is known about `n = slog_3(G)` without computing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GrahamFacts {
    /// `n` is odd.
    pub slog_is_odd: bool,
    /// `n > 3`.
    pub slog_lower_bound_exclusive: u64,
    /// `G` has exactly `n - 1` stable digits; this is the offset from `n`.
    pub stable_digit_offset: i64,
    /// Digit at position `n` of `^(n+c) 3 - G` for every `c >= 1`.
    pub unstable_digit_diff: u8,
}

pub const GRAHAM_FACTS: GrahamFacts = GrahamFacts {
    slog_is_odd: true,
    slog_lower_bound_exclusive: 3,
    stable_digit_offset: -1,
    unstable_digit_diff: 4,
};

/// Integer super-logarithm: `k` when `x = ^k p` exactly, `None` otherwise.
pub fn slog(p: u64, x: &BigUint) -> Result<Option<u64>> {
    if p < 2 {
        return Err(Error::InvalidBase(p));
    }
    if x.is_zero() {
        return Err(Error::InvalidArgument(
            "slog needs a positive argument".into(),
        ));
    }
    let base = BigUint::from(p);
    let mut x = x.clone();
    let mut levels = 0u64;
    while !x.is_one() {
        // x must be p^y; continue with y
        let mut y = 0u64;
        while !x.is_one() {
            let (q, r) = x.div_rem(&base);
            if !r.is_zero() {
                return Ok(None);
            }
            x = q;
            y += 1;
        }
        x = BigUint::from(y);
        levels += 1;
    }
    Ok(Some(levels))
}

/// The last `k` digits of Graham's number.
pub fn graham_last_digits(k: usize) -> Result<Residue> {
    Ok(limit_digits(3, k)?.digits)
}

fn check_proxy(n: u64) -> Result<()> {
    if n < 5 {
        return Err(Error::InvalidHeight(n));
    }
    if n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "proxy height {n} must be odd like slog_3(G)"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProxyEntry {
    pub c: u64,
    /// `^(n+c) 3 = ^n 3 (mod 10^(n-1))`
    pub agrees_below: bool,
    /// `^(n+c) 3 != ^n 3 (mod 10^n)`
    pub differs_at_n: bool,
    /// Digit at position `n` of `^n 3` and of `^(n+c) 3`.
    pub witness: (u8, u8),
}

impl ProxyEntry {
    pub fn passed(&self) -> bool {
        self.agrees_below && self.differs_at_n
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProxyReport {
    pub n: u64,
    pub entries: Vec<ProxyEntry>,
}

impl ProxyReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(ProxyEntry::passed)
    }
}

/// Checks that towers above height `n` agree with `^n 3` on exactly `n - 1`
/// trailing digits.
pub fn check_theorem2(n: u64, cs: &[u64]) -> Result<ProxyReport> {
    check_proxy(n)?;
    if let Some(&c) = cs.iter().find(|&&c| c == 0) {
        return Err(Error::InvalidArgument(format!(
            "c = {c}; every c must be at least 1"
        )));
    }
    let width = n as usize;
    let lower = tetration(3, n, width)?;
    let entries = cs
        .iter()
        .map(|&c| {
            let upper = tetration(3, n + c, width)?;
            let agreement = lower.agreement(&upper);
            Ok(ProxyEntry {
                c,
                agrees_below: agreement >= width - 1,
                differs_at_n: agreement < width,
                witness: (lower.digit_at(width)?, upper.digit_at(width)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProxyReport { n, entries })
}

/// `((^n 3 - ^(n+1) 3) / 10^(n-1)) mod 10` at an odd proxy height.
pub fn check_eq2(n: u64) -> Result<u8> {
    check_proxy(n)?;
    let width = n as usize;
    let lower = tetration(3, n, width)?;
    let upper = tetration(3, n + 1, width)?;
    // residue of the (negative) difference modulo 10^n
    let diff = lower.wrapping_sub(&upper);
    if diff.digits_le()[..width - 1].iter().any(|&d| d != 0) {
        return Err(Error::InvalidArgument(format!(
            "^{n} 3 - ^{} 3 is not divisible by 10^{}",
            n + 1,
            n - 1
        )));
    }
    diff.digit_at(width)
}
