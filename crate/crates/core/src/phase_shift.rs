//! Phase shifts: the mod-10 step of the first non-stable digit of `^b a`
//! when the tower grows by one level.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stability::{check_base, Profiler};
use crate::tower::tetration;

/// The four phase shifts from the onset height, plus their reduced form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseCycle {
    pub base: u64,
    pub cycle: [u8; 4],
    pub reduced: Vec<u8>,
}

/// `[x,x,x,x] -> [x]`, `[x,y,x,y] -> [x,y]`, anything else unchanged.
pub fn reduce_cycle(cycle: [u8; 4]) -> Vec<u8> {
    let [a, b, c, d] = cycle;
    if a == b && b == c && c == d {
        vec![a]
    } else if a == c && b == d {
        vec![a, b]
    } else {
        cycle.to_vec()
    }
}

/// Expands a reduced cycle back to four entries.
pub fn expand_cycle(reduced: &[u8]) -> Option<[u8; 4]> {
    match *reduced {
        [x] => Some([x; 4]),
        [x, y] => Some([x, y, x, y]),
        [a, b, c, d] => Some([a, b, c, d]),
        _ => None,
    }
}

impl PhaseCycle {
    pub fn new(base: u64, cycle: [u8; 4]) -> Self {
        PhaseCycle {
            base,
            cycle,
            reduced: reduce_cycle(cycle),
        }
    }

    /// Structural properties every observed cycle has shown: opposite
    /// entries of a 4-cycle sum to 10, so do the two entries of a 2-cycle,
    /// and all entries come from one of {2,4,6,8}, {1,3,7,9}, {5}.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let c = self.cycle;
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| c[i] != c[j]));
        if distinct && (c[0] + c[2] != 10 || c[1] + c[3] != 10) {
            out.push("opposite entries of a 4-cycle do not sum to 10");
        }
        if self.reduced.len() == 2 && self.reduced[0] + self.reduced[1] != 10 {
            out.push("entries of a 2-cycle do not sum to 10");
        }
        const CLASSES: [&[u8]; 3] = [&[2, 4, 6, 8], &[1, 3, 7, 9], &[5]];
        if !CLASSES
            .iter()
            .any(|class| c.iter().all(|d| class.contains(d)))
        {
            out.push("entries mix digit classes");
        }
        out
    }
}

impl fmt::Display for PhaseCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_cycle(&self.reduced))
    }
}

/// `[4,6]` style rendering.
pub fn format_cycle(entries: &[u8]) -> String {
    let inner: Vec<String> = entries.iter().map(u8::to_string).collect();
    format!("[{}]", inner.join(","))
}

pub(crate) fn phase_shift_with(profiler: &mut Profiler, b: u64) -> Result<u8> {
    let position = profiler.stable_digits(b)? + 1;
    let lower = profiler.residue(b, position)?.digit_at(position)?;
    let upper = profiler.residue(b + 1, position)?.digit_at(position)?;
    Ok((lower + 10 - upper) % 10)
}

/// Phase shift of `a` at height `b`.
pub fn phase_shift(a: u64, b: u64) -> Result<u8> {
    if b == 0 {
        return Err(Error::InvalidHeight(b));
    }
    let mut profiler = Profiler::new(a)?;
    phase_shift_with(&mut profiler, b)
}

/// Phase shifts at heights `1..=max_height`, sharing one set of residues.
pub fn phase_shift_series(a: u64, max_height: u64) -> Result<Vec<u8>> {
    let mut profiler = Profiler::new(a)?;
    (1..=max_height)
        .map(|b| phase_shift_with(&mut profiler, b))
        .collect()
}

pub(crate) fn aps_with(profiler: &mut Profiler, onset: u64) -> Result<[u8; 4]> {
    let mut cycle = [0u8; 4];
    for (i, slot) in cycle.iter_mut().enumerate() {
        *slot = phase_shift_with(profiler, onset + i as u64)?;
    }
    Ok(cycle)
}

/// The asymptotic phase shift: phase shifts at `b̄ .. b̄+3`.
pub fn asymptotic_phase_shift(a: u64) -> Result<PhaseCycle> {
    let mut profiler = Profiler::new(a)?;
    let (onset, _) = profiler.detect_onset()?;
    Ok(PhaseCycle::new(a, aps_with(&mut profiler, onset)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: u64) -> Self {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Digit at position `b` of `^(b+1) 3` from the digit at position `b` of
/// `^b 3`: add 4 for odd `b`, 6 for even `b`, modulo 10.
pub fn base3_digit_map(parity: Parity, digit: u8) -> Result<u8> {
    if digit > 9 {
        return Err(Error::InvalidArgument(format!(
            "{digit} is not a decimal digit"
        )));
    }
    let step = match parity {
        Parity::Odd => 4,
        Parity::Even => 6,
    };
    Ok((digit + step) % 10)
}

/// The `n`-th rightmost digit of `^m a - ^n a` for `m > n`. The difference
/// is positive, so this is an ordinary digit; the same position of
/// `^n a - ^m a` is reached through the ten's complement.
pub fn difference_digit(a: u64, n: u64, m: u64) -> Result<u8> {
    if n < 2 {
        return Err(Error::InvalidHeight(n));
    }
    if m <= n {
        return Err(Error::InvalidArgument(format!(
            "upper height {m} must exceed {n}"
        )));
    }
    // one guard digit above position n
    let width = n as usize + 1;
    let upper = tetration(a, m, width)?;
    let lower = tetration(a, n, width)?;
    upper.wrapping_sub(&lower).digit_at(n as usize)
}

/// Rightmost nonzero decimal digit.
pub fn rightmost_nonzero_digit(mut a: u64) -> Option<u8> {
    if a == 0 {
        return None;
    }
    while a % 10 == 0 {
        a /= 10;
    }
    Some((a % 10) as u8)
}

/// Phase shift of a base divisible by 10 at height `b >= 3`, from its
/// rightmost nonzero digit.
pub fn phase_shift_mult10(a: u64, b: u64) -> Result<u8> {
    if a == 0 {
        return Err(Error::InvalidBase(a));
    }
    if a % 10 != 0 {
        return Err(Error::NotMultipleOfTen(a));
    }
    if b < 3 {
        return Err(Error::InvalidHeight(b));
    }
    let h = rightmost_nonzero_digit(a).expect("a is nonzero");
    Ok(match h {
        1 | 3 | 7 | 9 => 1,
        2 | 4 | 6 | 8 => 6,
        _ => 5,
    })
}

/// `phase_shift` for any admissible base, dispatching on divisibility by 10.
pub fn phase_shift_any(a: u64, b: u64) -> Result<u8> {
    if a % 10 == 0 && a != 0 {
        phase_shift_mult10(a, b)
    } else {
        check_base(a)?;
        phase_shift(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        assert_eq!(reduce_cycle([8, 8, 8, 8]), vec![8]);
        assert_eq!(reduce_cycle([4, 6, 4, 6]), vec![4, 6]);
        assert_eq!(reduce_cycle([4, 8, 6, 2]), vec![4, 8, 6, 2]);
        assert_eq!(reduce_cycle([4, 4, 6, 6]), vec![4, 4, 6, 6]);
        assert_eq!(expand_cycle(&[1, 9]), Some([1, 9, 1, 9]));
        assert_eq!(expand_cycle(&[1, 9, 3]), None);
    }

    #[test]
    fn phase_shift_examples() {
        assert_eq!(phase_shift(5, 4).unwrap(), 5);
        assert_eq!(phase_shift(3, 2).unwrap(), 4);
        assert_eq!(phase_shift(3, 3).unwrap(), 6);
        assert_eq!(phase_shift(3, 50).unwrap(), phase_shift(3, 48).unwrap());
    }

    #[test]
    fn series_matches_single_calls() {
        let series = phase_shift_series(3, 8).unwrap();
        let single: Vec<u8> = (1..=8).map(|b| phase_shift(3, b).unwrap()).collect();
        assert_eq!(series, single);
        assert_eq!(&series[1..5], &[4, 6, 4, 6]);
    }

    #[test]
    fn phase_shift_rejects() {
        assert!(matches!(phase_shift(20, 3), Err(Error::MultipleOfTen(20))));
        assert!(matches!(phase_shift(1, 3), Err(Error::InvalidBase(1))));
        assert!(matches!(phase_shift(3, 0), Err(Error::InvalidHeight(0))));
    }

    #[test]
    fn aps_examples() {
        for (a, expected) in [
            (9u64, vec![2u8]),
            (11, vec![4]),
            (83, vec![6]),
            (53, vec![8]),
            (169, vec![4, 8, 6, 2]),
            (64, vec![8]),
            (51, vec![5]),
            (901, vec![1, 9]),
            (301, vec![3, 9, 7, 1]),
            (3, vec![4, 6]),
        ] {
            let cycle = asymptotic_phase_shift(a).unwrap();
            assert_eq!(cycle.reduced, expected, "APS({a})");
            assert!(cycle.violations().is_empty(), "APS({a})");
        }
    }

    #[test]
    fn digit_map_tables() {
        let odd: Vec<u8> = (0..10)
            .map(|d| base3_digit_map(Parity::Odd, d).unwrap())
            .collect();
        assert_eq!(odd, [4, 5, 6, 7, 8, 9, 0, 1, 2, 3]);
        let even: Vec<u8> = (0..10)
            .map(|d| base3_digit_map(Parity::Even, d).unwrap())
            .collect();
        assert_eq!(even, [6, 7, 8, 9, 0, 1, 2, 3, 4, 5]);
        assert!(base3_digit_map(Parity::Odd, 10).is_err());
    }

    #[test]
    fn difference_digit_examples() {
        assert_eq!(difference_digit(3, 3, 4).unwrap(), 4);
        assert_eq!(difference_digit(3, 4, 7).unwrap(), 6);
        assert_eq!(difference_digit(3, 5, 6).unwrap(), 4);
        assert!(difference_digit(3, 5, 5).is_err());
        assert!(difference_digit(3, 1, 5).is_err());
    }

    #[test]
    fn mult10_rule() {
        assert_eq!(phase_shift_mult10(200050, 3).unwrap(), 5);
        assert_eq!(phase_shift_mult10(81743000, 4).unwrap(), 1);
        assert_eq!(phase_shift_mult10(20, 3).unwrap(), 6);
        assert!(matches!(
            phase_shift_mult10(20, 2),
            Err(Error::InvalidHeight(2))
        ));
        assert!(matches!(
            phase_shift_mult10(0, 3),
            Err(Error::InvalidBase(0))
        ));
        assert!(matches!(
            phase_shift_mult10(21, 3),
            Err(Error::NotMultipleOfTen(21))
        ));
        assert_eq!(rightmost_nonzero_digit(200050), Some(5));
        assert_eq!(rightmost_nonzero_digit(81743000), Some(3));
    }
}
