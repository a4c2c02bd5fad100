//! Congruence speed, stable digits and the 10-adic tails of power towers.
//!
//! For consecutive heights let `s_b` be the number of trailing digits on which
//! `^b a` and `^(b+1) a` agree. The stable-digit count `#S(a,b)` is the number
//! of trailing digits of `^b a` shared with every higher tower, and the
//! congruence speed is `V(a,b) = s_b - #S(a,b-1)` with `#S(a,0) = 0`.
//!
//! `#S(a,b)` is computed by direct comparison. Once two consecutive towers
//! agree on `s >= 2` digits every later pair does too (`lambda(10^s)` divides
//! `10^s`), so the comparison only has to continue past heights where `s_b`
//! is 0 or 1. This keeps the `a = 5, b = 2` overlap (`V(5,2) = 4` although
//! `^2 5 = 3125` has four digits) out of the stable counts.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::residue::Residue;
use crate::tower::{check_cap, tetration, tower_at_least};

/// Extra digits beyond the predicted mismatch position.
pub const GUARD_DIGITS: usize = 2;

/// Heights the speed must stay unchanged past the onset candidate.
pub const ONSET_HORIZON: u64 = 8;

/// Onset searches give up beyond this height.
pub const MAX_ONSET_HEIGHT: u64 = 256;

const INITIAL_PRECISION: usize = 8;

pub(crate) fn check_base(a: u64) -> Result<()> {
    if a < 2 {
        return Err(Error::InvalidBase(a));
    }
    if a % 10 == 0 {
        return Err(Error::MultipleOfTen(a));
    }
    Ok(())
}

fn check_height(b: u64) -> Result<()> {
    if b == 0 {
        return Err(Error::InvalidHeight(b));
    }
    Ok(())
}

/// Residues of `^h a` for successive heights, widened on demand, with the
/// agreement counts derived from them.
#[derive(Debug)]
pub(crate) struct Profiler {
    base: u64,
    residues: Vec<Option<Residue>>,
    pairs: Vec<Option<usize>>,
    stable: Vec<Option<usize>>,
    max_precision: usize,
}

impl Profiler {
    pub(crate) fn new(base: u64) -> Result<Self> {
        check_base(base)?;
        Ok(Profiler {
            base,
            residues: Vec::new(),
            pairs: Vec::new(),
            stable: Vec::new(),
            max_precision: 0,
        })
    }

    pub(crate) fn max_precision(&self) -> usize {
        self.max_precision
    }

    fn slot<T>(v: &mut Vec<Option<T>>, h: u64) -> &mut Option<T> {
        let idx = (h - 1) as usize;
        if v.len() <= idx {
            v.resize_with(idx + 1, || None);
        }
        &mut v[idx]
    }

    /// `^h a` to at least `p` digits.
    pub(crate) fn residue(&mut self, h: u64, p: usize) -> Result<&Residue> {
        let base = self.base;
        let fresh = match Self::slot(&mut self.residues, h) {
            Some(r) if r.modulus_exp() >= p => None,
            _ => {
                check_cap(p)?;
                Some(tetration(base, h, p)?)
            }
        };
        if let Some(r) = fresh {
            self.max_precision = self.max_precision.max(p);
            *Self::slot(&mut self.residues, h) = Some(r);
        }
        Ok(Self::slot(&mut self.residues, h)
            .as_ref()
            .expect("filled above"))
    }

    fn known_pair(&self, b: u64) -> Option<usize> {
        self.pairs.get((b - 1) as usize).copied().flatten()
    }

    fn known_stable(&self, b: u64) -> Option<usize> {
        self.stable.get((b - 1) as usize).copied().flatten()
    }

    /// Precision guess for the pair `(b, b+1)` and the expected speed.
    fn precision_guess(&self, b: u64) -> (usize, usize) {
        if b >= 2 {
            if let Some(prev_stable) = self.known_stable(b - 1) {
                let v = if b >= 3 {
                    self.known_stable(b - 2)
                        .map(|s2| prev_stable.saturating_sub(s2))
                        .unwrap_or(1)
                        .max(1)
                } else {
                    1
                };
                return (prev_stable + v + GUARD_DIGITS, v);
            }
        }
        (INITIAL_PRECISION, 1)
    }

    /// `s_b`: trailing digits shared by `^b a` and `^(b+1) a`.
    pub(crate) fn pair_agreement(&mut self, b: u64) -> Result<usize> {
        if let Some(s) = self.known_pair(b) {
            return Ok(s);
        }
        let (mut p, v) = self.precision_guess(b);
        loop {
            let lower = self.residue(b, p)?.clone();
            let upper = self.residue(b + 1, p + v)?;
            let width = lower.modulus_exp().min(upper.modulus_exp());
            let s = lower.agreement(upper);
            if s < width {
                *Self::slot(&mut self.pairs, b) = Some(s);
                return Ok(s);
            }
            p = width * 2;
        }
    }

    /// Trailing digits shared by `^b a` and `^c a`.
    fn agreement_between(&mut self, b: u64, c: u64, p: usize) -> Result<usize> {
        let lower = self.residue(b, p)?.clone();
        let upper = self.residue(c, p)?;
        Ok(lower.agreement(upper).min(p))
    }

    /// `#S(a,b)`.
    pub(crate) fn stable_digits(&mut self, b: u64) -> Result<usize> {
        if let Some(s) = self.known_stable(b) {
            return Ok(s);
        }
        let mut current = self.pair_agreement(b)?;
        let mut c = b;
        // once s_c >= 2 and ^c a is past the reduction threshold, every tower
        // above c agrees with ^c a on s_c digits
        loop {
            if c > b {
                current = current.min(self.agreement_between(b, c, current + 1)?);
            }
            let s_c = self.pair_agreement(c)?;
            if s_c >= 2 && (c == b || s_c > current) && tower_at_least(self.base, c, s_c as u64) {
                break;
            }
            c += 1;
            if c > b + MAX_ONSET_HEIGHT {
                return Err(Error::OnsetNotConfirmed {
                    base: self.base,
                    limit: c,
                });
            }
        }
        *Self::slot(&mut self.stable, b) = Some(current);
        Ok(current)
    }

    /// `V(a,b)`.
    pub(crate) fn speed(&mut self, b: u64) -> Result<usize> {
        let prev = if b == 1 {
            0
        } else {
            self.stable_digits(b - 1)?
        };
        Ok(self.pair_agreement(b)? - prev)
    }

    /// Smallest height from which the speed stays constant through the
    /// verification horizon, together with that speed.
    pub(crate) fn detect_onset(&mut self) -> Result<(u64, usize)> {
        let start = sufficient_height(self.base).unwrap_or(1);
        let mut top = start + ONSET_HORIZON;
        loop {
            let speeds = (1..=top)
                .map(|b| self.speed(b))
                .collect::<Result<Vec<_>>>()?;
            let last = speeds[speeds.len() - 1];
            let onset = speeds
                .iter()
                .rposition(|&v| v != last)
                .map(|i| i as u64 + 2)
                .unwrap_or(1);
            let needed = onset.max(start) + ONSET_HORIZON;
            if top >= needed {
                return Ok((onset, last));
            }
            if needed > MAX_ONSET_HEIGHT {
                return Err(Error::OnsetNotConfirmed {
                    base: self.base,
                    limit: MAX_ONSET_HEIGHT,
                });
            }
            top = needed;
        }
    }

    pub(crate) fn base(&self) -> u64 {
        self.base
    }
}

/// A height from which the speed is known to be constant, where one is
/// available: `nu_5(a^2 + 1) + 2` for bases ending in 3 or 7, and 3 for even
/// bases and for bases ending in 5 other than 5 itself.
pub fn sufficient_height(a: u64) -> Option<u64> {
    match a % 10 {
        3 | 7 => {
            let sq = (a as u128) * (a as u128) + 1;
            padic_valuation(5, sq).ok().map(|v| v as u64 + 2)
        }
        2 | 4 | 6 | 8 => Some(3),
        5 if a != 5 => Some(3),
        _ => None,
    }
}

/// Per-height congruence speeds for one base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeedProfile {
    pub base: u64,
    /// `(b, V(a,b))` for consecutive heights starting at 1.
    pub per_height: Vec<(u64, u64)>,
    /// `#S(a,b)` for the same heights.
    pub stable_digits: Vec<u64>,
    /// Smallest height from which the speed is constant (`b̄`).
    pub onset: u64,
    pub constant_speed: u64,
    /// Widest residue computed while building the profile.
    pub max_precision: usize,
}

impl SpeedProfile {
    /// Profile through at least `max_height`, extended as needed to confirm
    /// the onset.
    pub fn compute(a: u64, max_height: u64) -> Result<Self> {
        check_height(max_height)?;
        let mut profiler = Profiler::new(a)?;
        for b in 1..=max_height {
            profiler.speed(b)?;
        }
        let (onset, speed) = profiler.detect_onset()?;
        let top = max_height.max(onset + ONSET_HORIZON);
        Self::from_profiler(&mut profiler, top, onset, speed)
    }

    pub(crate) fn from_profiler(
        profiler: &mut Profiler,
        top: u64,
        onset: u64,
        speed: usize,
    ) -> Result<Self> {
        let mut per_height = Vec::with_capacity(top as usize);
        let mut stable = Vec::with_capacity(top as usize);
        for b in 1..=top {
            per_height.push((b, profiler.speed(b)? as u64));
            stable.push(profiler.stable_digits(b)? as u64);
        }
        Ok(SpeedProfile {
            base: profiler.base(),
            per_height,
            stable_digits: stable,
            onset,
            constant_speed: speed as u64,
            max_precision: profiler.max_precision(),
        })
    }

    pub fn speed_at(&self, b: u64) -> Option<u64> {
        self.per_height
            .get((b as usize).checked_sub(1)?)
            .map(|&(_, v)| v)
    }

    pub fn stable_at(&self, b: u64) -> Option<u64> {
        self.stable_digits
            .get((b as usize).checked_sub(1)?)
            .copied()
    }
}

/// `V(a,b)`.
pub fn congruence_speed(a: u64, b: u64) -> Result<u64> {
    check_height(b)?;
    let mut profiler = Profiler::new(a)?;
    Ok(profiler.speed(b)? as u64)
}

/// `(V(a), b̄)`.
pub fn constant_speed(a: u64) -> Result<(u64, u64)> {
    let mut profiler = Profiler::new(a)?;
    let (onset, speed) = profiler.detect_onset()?;
    Ok((speed as u64, onset))
}

/// `#S(a,b)`, the number of trailing digits of `^b a` frozen for every
/// higher tower.
pub fn stable_digits(a: u64, b: u64) -> Result<u64> {
    check_height(b)?;
    let mut profiler = Profiler::new(a)?;
    Ok(profiler.stable_digits(b)? as u64)
}

/// The last `k` digits of the 10-adic limit of `^b a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableTail {
    pub base: u64,
    pub digits: Residue,
}

pub fn limit_digits(a: u64, k: usize) -> Result<StableTail> {
    check_base(a)?;
    check_cap(k)?;
    let (_, onset) = constant_speed(a)?;
    // each height past the onset freezes at least one more digit
    let height = onset + k as u64 + 2;
    Ok(StableTail {
        base: a,
        digits: tetration(a, height, k)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TenadicConstant {
    /// Limit of `5^(2^n)`.
    FivePowTwoTower,
    /// Limit of `2^(5^n)`.
    TwoPowFiveTower,
    /// The constant printed as the difference of the two limits. Its digits
    /// are those of `-(x + y)` for the limits `x` and `y` above: it is `-1`
    /// 2-adically and a square root of `-1` 5-adically.
    Difference,
}

impl std::str::FromStr for TenadicConstant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "five-pow-two-tower" | "five" => Ok(Self::FivePowTwoTower),
            "two-pow-five-tower" | "two" => Ok(Self::TwoPowFiveTower),
            "difference" => Ok(Self::Difference),
            _ => Err(Error::InvalidArgument(format!("unknown constant {s:?}"))),
        }
    }
}

/// Iterates `x -> x^power` from `start` modulo `10^k` until a fixed point.
fn iterate_power_limit(start: u32, power: u32, k: usize) -> Result<BigUint> {
    let modulus = BigUint::from(10u32).pow(k as u32);
    let mut x = BigUint::from(start) % &modulus;
    // each step fixes at least one more bit or one more 5-adic digit
    let max_steps = 4 * k + 16;
    for _ in 0..max_steps {
        let next = x.pow(power) % &modulus;
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    Err(Error::InvalidArgument(format!(
        "no fixed point for x^{power} within {max_steps} steps"
    )))
}

pub fn tenadic_constant(which: TenadicConstant, k: usize) -> Result<Residue> {
    check_cap(k)?;
    let value = match which {
        TenadicConstant::FivePowTwoTower => iterate_power_limit(5, 2, k)?,
        TenadicConstant::TwoPowFiveTower => iterate_power_limit(2, 5, k)?,
        TenadicConstant::Difference => {
            let modulus = BigUint::from(10u32).pow(k as u32);
            let five = iterate_power_limit(5, 2, k)?;
            let two = iterate_power_limit(2, 5, k)?;
            let sum = (five + two) % &modulus;
            (&modulus - sum) % modulus
        }
    };
    Ok(Residue::from_biguint(&value, k))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest `e` with `p^e | x`.
pub fn padic_valuation(p: u64, x: u128) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x == 0 {
        return Err(Error::ZeroValuation);
    }
    let p = p as u128;
    let mut x = x;
    let mut e = 0;
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_three_speeds() {
        assert_eq!(congruence_speed(3, 1).unwrap(), 0);
        let sum: u64 = (1..=3).map(|b| congruence_speed(3, b).unwrap()).sum();
        assert_eq!(sum, 2);
        for b in 2..=40 {
            assert_eq!(congruence_speed(3, b).unwrap(), 1, "V(3,{b})");
        }
    }

    #[test]
    fn five_at_height_two() {
        assert_eq!(congruence_speed(5, 2).unwrap(), 4);
        assert_eq!(stable_digits(5, 1).unwrap(), 1);
    }

    #[test]
    fn stable_digit_examples() {
        assert_eq!(stable_digits(3, 1).unwrap(), 0);
        assert_eq!(stable_digits(3, 2).unwrap(), 1);
        assert_eq!(stable_digits(3, 7).unwrap(), 6);
    }

    #[test]
    fn constant_speed_of_three() {
        assert_eq!(constant_speed(3).unwrap(), (1, 2));
    }

    #[test]
    fn rejects_bad_bases() {
        assert!(matches!(
            congruence_speed(20, 2),
            Err(Error::MultipleOfTen(20))
        ));
        assert!(matches!(congruence_speed(1, 2), Err(Error::InvalidBase(1))));
        assert!(matches!(
            congruence_speed(3, 0),
            Err(Error::InvalidHeight(0))
        ));
        assert!(limit_digits(30, 4).is_err());
    }

    #[test]
    fn limit_digit_examples() {
        assert_eq!(limit_digits(3, 3).unwrap().digits.to_string(), "387");
        let five = limit_digits(5, 11).unwrap().digits;
        assert_eq!(five, tetration(5, 20, 11).unwrap());
        assert!(five.to_string().ends_with("8408203125"));
    }

    #[test]
    fn padic_examples() {
        assert_eq!(padic_valuation(5, 10).unwrap(), 1);
        assert_eq!(padic_valuation(5, 1).unwrap(), 0);
        assert_eq!(padic_valuation(5, 250).unwrap(), 3);
        assert!(matches!(padic_valuation(5, 0), Err(Error::ZeroValuation)));
        assert!(matches!(padic_valuation(4, 8), Err(Error::NotPrime(4))));
    }

    #[test]
    fn tenadic_examples() {
        let d = tenadic_constant(TenadicConstant::Difference, 32).unwrap();
        assert_eq!(d.to_string(), "30362972182803640476581907922943");
        let f = tenadic_constant(TenadicConstant::FivePowTwoTower, 1).unwrap();
        assert_eq!(f.to_string(), "5");
    }

    #[test]
    fn sufficient_heights() {
        assert_eq!(sufficient_height(3), Some(3));
        assert_eq!(sufficient_height(57), Some(5));
        assert_eq!(sufficient_height(64), Some(3));
        assert_eq!(sufficient_height(25), Some(3));
        assert_eq!(sufficient_height(5), None);
        assert_eq!(sufficient_height(11), None);
    }
}
