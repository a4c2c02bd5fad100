//! Tetration modulo powers of ten.
//!
//! `^b a mod 10^m` is evaluated by walking down the Carmichael chain of
//! `10^m` and climbing back up with modular exponentiation. The full tower is
//! never built; an exponent is only ever needed modulo the next chain level,
//! plus a flag saying whether it is large enough for the reduction to apply.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modulus::{chain_for_digits, Chain, ChainLevel, Modulus};
use crate::residue::Residue;

pub const DEFAULT_DIGIT_CAP: usize = 100_000;

static DIGIT_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DIGIT_CAP);

/// Largest number of decimal digits any operation will work with.
pub fn digit_cap() -> usize {
    DIGIT_CAP.load(Ordering::Relaxed)
}

pub fn set_digit_cap(cap: usize) {
    DIGIT_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub(crate) fn check_cap(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::ZeroDigits);
    }
    let cap = digit_cap();
    if m > cap {
        return Err(Error::CapExceeded { requested: m, cap });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Height {
    Finite(u64),
    /// The 10-adic limit of `^b a` as `b` grows.
    Limit,
}

/// A tetration `^height base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TowerSpec {
    base: u64,
    height: Height,
}

impl TowerSpec {
    pub fn new(base: u64, height: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if height == 0 {
            return Err(Error::InvalidHeight(height));
        }
        Ok(TowerSpec {
            base,
            height: Height::Finite(height),
        })
    }

    /// The stabilized tail; only bases not divisible by 10 have one.
    pub fn limit(base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if base % 10 == 0 {
            return Err(Error::MultipleOfTen(base));
        }
        Ok(TowerSpec {
            base,
            height: Height::Limit,
        })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn height(&self) -> Height {
        self.height
    }
}

impl fmt::Display for TowerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.height {
            Height::Finite(b) => write!(f, "^{b} {}", self.base),
            Height::Limit => write!(f, "^inf {}", self.base),
        }
    }
}

/// An exponent that may be too large to hold exactly.
///
/// Either the exact value, or a residue modulo a multiple of the Carmichael
/// value of the target modulus. A residue is only usable when `saturated` is
/// set: the true exponent is then known to be at least the modulus's largest
/// prime exponent, which is what makes the reduction valid for every base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigExponent {
    value: BigUint,
    reduced: bool,
    saturated: bool,
}

impl BigExponent {
    pub fn exact(value: impl Into<BigUint>) -> Self {
        BigExponent {
            value: value.into(),
            reduced: false,
            saturated: false,
        }
    }

    /// A residue of a large exponent, known to exceed every threshold in play.
    pub fn saturated(residue: impl Into<BigUint>) -> Self {
        Self::from_parts(residue, true)
    }

    pub fn from_parts(residue: impl Into<BigUint>, saturated: bool) -> Self {
        BigExponent {
            value: residue.into(),
            reduced: true,
            saturated,
        }
    }

    pub fn residue(&self) -> &BigUint {
        &self.value
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn is_exact(&self) -> bool {
        !self.reduced
    }
}

/// Smallest `e' >= threshold` with `e' = r (mod period)`, given `r < period`.
fn lift_exponent(r: BigUint, period: &BigUint, threshold: u32) -> BigUint {
    let threshold = BigUint::from(threshold);
    if r >= threshold || period.is_zero() {
        return r;
    }
    let gap = &threshold - &r;
    let steps = gap.div_ceil(period);
    r + steps * period
}

/// `base^exponent mod modulus`, exact.
pub fn modpow(base: &BigUint, exponent: &BigExponent, modulus: Modulus) -> Result<Residue> {
    if modulus.is_one() {
        return Err(Error::ModulusTooSmall);
    }
    check_cap(modulus.decimal_width())?;
    if exponent.reduced && !exponent.saturated {
        return Err(Error::UnreconstructableExponent);
    }
    let level = ChainLevel::new(modulus);
    let lambda = modulus.carmichael().value();
    let threshold = modulus.euler_threshold();
    let e = if exponent.reduced || exponent.value >= BigUint::from(threshold) {
        lift_exponent(&exponent.value % &lambda, &lambda, threshold)
    } else {
        exponent.value.clone()
    };
    Ok(Residue::from_biguint(
        &level.pow_mod(base, &e),
        modulus.decimal_width(),
    ))
}

/// `^n a` when it fits in a `u64`.
pub fn exact_small_tower(a: u64, n: u64) -> Option<u64> {
    match n {
        0 => Some(1),
        1 => Some(a),
        _ => {
            let e = exact_small_tower(a, n - 1)?;
            let e = u32::try_from(e).ok()?;
            a.checked_pow(e)
        }
    }
}

/// Whether `^n a >= bound`.
pub(crate) fn tower_at_least(a: u64, n: u64, bound: u64) -> bool {
    match exact_small_tower(a, n) {
        Some(v) => v >= bound,
        None => true,
    }
}

/// `^h a` modulo `chain.levels()[0]`, as a plain integer.
pub(crate) fn tower_mod_chain(a: u64, h: u64, chain: &Chain) -> BigUint {
    let levels = chain.levels();
    debug_assert!(h >= 1);
    // levels[L] is the modulus 1; nothing below it matters
    let bottom = (levels.len() as u64 - 1).min(h - 1) as usize;
    let base = BigUint::from(a);
    let mut value = if levels[bottom].modulus.is_one() {
        BigUint::zero()
    } else {
        &base % levels[bottom].value()
    };
    for k in (0..bottom).rev() {
        let level = &levels[k];
        let height = h - k as u64;
        let threshold = level.modulus.euler_threshold();
        let exponent = if tower_at_least(a, height - 1, threshold as u64) {
            lift_exponent(value, levels[k + 1].value(), threshold)
        } else {
            BigUint::from(exact_small_tower(a, height - 1).expect("below threshold"))
        };
        value = level.pow_mod(&base, &exponent);
    }
    value
}

/// `^b a mod 10^m`.
pub fn tetration_mod(spec: &TowerSpec, m: usize) -> Result<Residue> {
    check_cap(m)?;
    let chain = chain_for_digits(m as u32);
    let height = match spec.height {
        Height::Finite(b) => b,
        // past the chain length every height gives the same residue
        Height::Limit => chain.len() as u64 + 1,
    };
    let value = tower_mod_chain(spec.base, height, &chain);
    Ok(Residue::from_biguint(&value, m))
}

/// Shorthand for `tetration_mod` on a finite height.
pub fn tetration(base: u64, height: u64, m: usize) -> Result<Residue> {
    tetration_mod(&TowerSpec::new(base, height)?, m)
}

/// `digit_at` as a free function.
pub fn digit_at(r: &Residue, position: usize) -> Result<u8> {
    r.digit_at(position)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pow10(m: u32) -> Modulus {
        Modulus::pow10(m)
    }

    #[test]
    fn modpow_examples() {
        let three = BigUint::from(3u32);
        let r = modpow(&three, &BigExponent::exact(27u32), pow10(3)).unwrap();
        assert_eq!(r.to_string(), "987");
        let r = modpow(&BigUint::from(7u32), &BigExponent::exact(0u32), pow10(2)).unwrap();
        assert_eq!(r.to_string(), "01");
        let r = modpow(&three, &BigExponent::exact(7625597484987u64), pow10(3)).unwrap();
        assert_eq!(r.to_string(), "387");
    }

    #[test]
    fn modpow_errors() {
        let three = BigUint::from(3u32);
        assert!(matches!(
            modpow(&three, &BigExponent::exact(5u32), Modulus::new(0, 0)),
            Err(Error::ModulusTooSmall)
        ));
        assert!(matches!(
            modpow(&three, &BigExponent::from_parts(7u32, false), pow10(3)),
            Err(Error::UnreconstructableExponent)
        ));
    }

    #[test]
    fn modpow_saturated_exponent() {
        // 3^(3^27) mod 1000 from 3^27 mod lambda(1000)=100
        let e = BigExponent::saturated(7625597484987u64 % 100);
        let r = modpow(&BigUint::from(3u32), &e, pow10(3)).unwrap();
        assert_eq!(r.to_string(), "387");
        // even base, exponent far above the threshold
        let e = BigExponent::saturated(0u32);
        let r = modpow(&BigUint::from(2u32), &e, pow10(4)).unwrap();
        assert_eq!(
            r,
            modpow(&BigUint::from(2u32), &BigExponent::exact(1000u32), pow10(4)).unwrap()
        );
    }

    #[test]
    fn tetration_examples() {
        assert_eq!(tetration(3, 1, 5).unwrap().to_string(), "00003");
        assert_eq!(tetration(5, 4, 11).unwrap().to_string(), "68408203125");
        assert_eq!(tetration(5, 5, 11).unwrap().to_string(), "18408203125");
        assert_eq!(tetration(3, 3, 3).unwrap().to_string(), "987");
        assert_eq!(tetration(3, 4, 3).unwrap().to_string(), "387");
    }

    #[test]
    fn tetration_height_four_oracle() {
        // 3^7625597484987 mod 10^4 by plain square-and-multiply
        let expected =
            BigUint::from(3u32).modpow(&BigUint::from(7625597484987u64), &BigUint::from(10_000u32));
        assert_eq!(expected, BigUint::from(9387u32));
        assert_eq!(tetration(3, 4, 4).unwrap().to_string(), "9387");
    }

    #[test]
    fn tiny_towers_below_threshold() {
        // ^2 2 = 4, ^3 2 = 16, ^4 2 = 65536: exponents are below the
        // generalized Euler threshold at these widths
        assert_eq!(tetration(2, 2, 8).unwrap().to_string(), "00000004");
        assert_eq!(tetration(2, 3, 8).unwrap().to_string(), "00000016");
        assert_eq!(tetration(2, 4, 8).unwrap().to_string(), "00065536");
        let full = BigUint::from(2u32).pow(65536);
        let expected = Residue::from_biguint(&full, 30);
        assert_eq!(tetration(2, 5, 30).unwrap(), expected);
    }

    #[test]
    fn tower_spec_validation() {
        assert!(TowerSpec::new(1, 3).is_err());
        assert!(TowerSpec::new(3, 0).is_err());
        assert!(TowerSpec::limit(20).is_err());
        assert!(TowerSpec::limit(3).is_ok());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            tetration(3, 2, DEFAULT_DIGIT_CAP + 1),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(tetration(3, 2, 0), Err(Error::ZeroDigits)));
    }

    #[test]
    fn limit_height_is_fixed_point() {
        let spec = TowerSpec::limit(3).unwrap();
        let lim = tetration_mod(&spec, 20).unwrap();
        assert_eq!(lim, tetration(3, 40, 20).unwrap());
        assert_eq!(lim, tetration(3, 1000, 20).unwrap());
    }
}
