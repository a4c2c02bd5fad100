use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A value modulo `10^m`, stored as `m` little-endian decimal digits.
///
/// Leading zeros are kept, so `3 mod 10^5` is `00003` with five digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    digits: Vec<u8>,
}

impl Residue {
    /// Reduces `value` modulo `10^m`.
    pub fn from_biguint(value: &BigUint, m: usize) -> Self {
        let mut digits = if value.is_zero() {
            Vec::new()
        } else {
            value.to_radix_le(10)
        };
        digits.resize(m.max(digits.len()), 0);
        digits.truncate(m);
        Residue { digits }
    }

    pub fn from_u64(value: u64, m: usize) -> Self {
        Self::from_biguint(&BigUint::from(value), m)
    }

    /// Builds a residue from little-endian digits; every entry must be 0..=9.
    pub fn from_digits_le(digits: Vec<u8>) -> Result<Self> {
        if let Some(bad) = digits.iter().find(|&&d| d > 9) {
            return Err(Error::InvalidArgument(format!(
                "{bad} is not a decimal digit"
            )));
        }
        Ok(Residue { digits })
    }

    /// Number of retained decimal positions (`m`).
    pub fn modulus_exp(&self) -> usize {
        self.digits.len()
    }

    pub fn digits_le(&self) -> &[u8] {
        &self.digits
    }

    pub fn to_biguint(&self) -> BigUint {
        if self.digits.is_empty() {
            return BigUint::zero();
        }
        BigUint::from_radix_le(&self.digits, 10).expect("digits are in range")
    }

    /// Digit at a 1-based position counted from the right.
    pub fn digit_at(&self, position: usize) -> Result<u8> {
        if position == 0 || position > self.digits.len() {
            return Err(Error::PositionOutOfRange {
                position,
                len: self.digits.len(),
            });
        }
        Ok(self.digits[position - 1])
    }

    /// Reduction to a smaller power of ten. Asking for more digits than are
    /// held is an error since the missing digits are unknown.
    pub fn truncate(&self, m: usize) -> Result<Residue> {
        if m > self.digits.len() {
            return Err(Error::InvalidArgument(format!(
                "cannot widen a {}-digit residue to {m} digits",
                self.digits.len()
            )));
        }
        Ok(Residue {
            digits: self.digits[..m].to_vec(),
        })
    }

    /// Count of matching trailing digits, at most the shorter width.
    pub fn agreement(&self, other: &Residue) -> usize {
        self.digits
            .iter()
            .zip(&other.digits)
            .take_while(|(a, b)| a == b)
            .count()
    }

    /// `(self - other) mod 10^m` over the common width.
    pub fn wrapping_sub(&self, other: &Residue) -> Residue {
        let m = self.digits.len().min(other.digits.len());
        let mut out = Vec::with_capacity(m);
        let mut borrow = 0i8;
        for i in 0..m {
            let mut d = self.digits[i] as i8 - other.digits[i] as i8 - borrow;
            borrow = 0;
            if d < 0 {
                d += 10;
                borrow = 1;
            }
            out.push(d as u8);
        }
        Residue { digits: out }
    }

    /// Most-significant-first digit string, leading zeros included.
    pub fn to_msd_string(&self) -> String {
        self.digits
            .iter()
            .rev()
            .map(|&d| char::from(b'0' + d))
            .collect()
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_msd_string())
    }
}

/// Parses a most-significant-first digit string; the width is the string length.
impl FromStr for Residue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .bytes()
            .rev()
            .map(|b| match b {
                b'0'..=b'9' => Ok(b - b'0'),
                _ => Err(Error::InvalidArgument(format!("not a digit string: {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Residue { digits })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_zeros_are_kept() {
        let r = Residue::from_u64(3, 5);
        assert_eq!(r.to_string(), "00003");
        assert_eq!(r.digit_at(5).unwrap(), 0);
        assert_eq!(r.digit_at(1).unwrap(), 3);
    }

    #[test]
    fn digit_positions() {
        let r: Residue = "987".parse().unwrap();
        assert_eq!(r.digit_at(1).unwrap(), 7);
        assert_eq!(r.digit_at(3).unwrap(), 9);
        assert!(matches!(
            r.digit_at(4),
            Err(Error::PositionOutOfRange {
                position: 4,
                len: 3
            })
        ));
        assert!(r.digit_at(0).is_err());
    }

    #[test]
    fn reduction_drops_high_digits() {
        let r = Residue::from_u64(7625597484987, 3);
        assert_eq!(r.to_string(), "987");
        assert_eq!(r.truncate(2).unwrap().to_string(), "87");
        assert!(r.truncate(4).is_err());
    }

    #[test]
    fn agreement_and_subtraction() {
        let a: Residue = "9387".parse().unwrap();
        let b: Residue = "4987".parse().unwrap();
        assert_eq!(a.agreement(&b), 2);
        assert_eq!(a.wrapping_sub(&b).to_string(), "4400");
        assert_eq!(b.wrapping_sub(&a).to_string(), "5600");
    }

    #[test]
    fn rejects_bad_digits() {
        assert!(Residue::from_digits_le(vec![1, 10]).is_err());
        assert!("12a".parse::<Residue>().is_err());
    }
}
