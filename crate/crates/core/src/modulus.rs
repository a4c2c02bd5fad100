//! Moduli of the form `2^i * 5^j` and their Carmichael chains.
//!
//! Every modulus reached while reducing a tower modulo `10^m` divides `10^m`,
//! so the Carmichael function only ever needs the closed forms for prime powers
//! of 2 and 5. Each chain level keeps the CRT constants it needs, and chains are
//! cached per digit count.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A divisor of some power of ten: `2^twos * 5^fives`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    pub twos: u32,
    pub fives: u32,
}

impl Modulus {
    pub fn new(twos: u32, fives: u32) -> Self {
        Modulus { twos, fives }
    }

    pub fn pow10(m: u32) -> Self {
        Modulus { twos: m, fives: m }
    }

    /// Factors `n` as `2^i * 5^j`; fails if any other prime divides it.
    pub fn from_biguint(n: &BigUint) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let twos = n.trailing_zeros().unwrap_or(0);
        let mut rest = n >> twos;
        let five = BigUint::from(5u32);
        let mut fives = 0u32;
        loop {
            let (q, r) = rest.div_rem(&five);
            if !r.is_zero() {
                break;
            }
            rest = q;
            fives += 1;
        }
        if !rest.is_one() {
            return Err(Error::InvalidArgument(format!(
                "modulus {n} does not divide a power of ten"
            )));
        }
        Ok(Modulus {
            twos: twos as u32,
            fives,
        })
    }

    pub fn value(&self) -> BigUint {
        (BigUint::one() << self.twos) * BigUint::from(5u32).pow(self.fives)
    }

    pub fn is_one(&self) -> bool {
        self.twos == 0 && self.fives == 0
    }

    /// Carmichael function, using `lambda(2^k)` and `lambda(5^k)` directly.
    pub fn carmichael(&self) -> Modulus {
        let two_part = match self.twos {
            0 | 1 => 0,
            2 => 1,
            k => k - 2,
        };
        if self.fives == 0 {
            Modulus::new(two_part, 0)
        } else {
            // lambda(5^k) = 4 * 5^(k-1)
            Modulus::new(two_part.max(2), self.fives - 1)
        }
    }

    /// Largest prime exponent. Exponents at or above this value may be
    /// reduced modulo the Carmichael value even when the base shares a
    /// factor with the modulus.
    pub fn euler_threshold(&self) -> u32 {
        self.twos.max(self.fives)
    }

    /// Smallest `m` with `self | 10^m`.
    pub fn decimal_width(&self) -> usize {
        self.twos.max(self.fives) as usize
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{}*5^{}", self.twos, self.fives)
    }
}

/// A modulus together with the constants needed for fast exponentiation.
#[derive(Debug, Clone)]
pub struct ChainLevel {
    pub modulus: Modulus,
    value: BigUint,
    pow2: BigUint,
    pow5: BigUint,
    /// `(2^twos)^-1 mod 5^fives`
    crt: BigUint,
    /// `lambda(5^fives)` as a number, for reducing exponents on the odd side.
    lambda5: BigUint,
}

impl ChainLevel {
    pub fn new(modulus: Modulus) -> Self {
        let pow2 = BigUint::one() << modulus.twos;
        let pow5 = BigUint::from(5u32).pow(modulus.fives);
        let crt = if modulus.fives == 0 {
            BigUint::zero()
        } else {
            // 2^-1 mod 5^j is (5^j + 1) / 2
            let half: BigUint = (&pow5 + 1u32) >> 1;
            half.modpow(&BigUint::from(modulus.twos), &pow5)
        };
        let lambda5 = if modulus.fives == 0 {
            BigUint::one()
        } else {
            BigUint::from(4u32) * BigUint::from(5u32).pow(modulus.fives - 1)
        };
        ChainLevel {
            modulus,
            value: &pow2 * &pow5,
            pow2,
            pow5,
            crt,
            lambda5,
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// `base^exp mod self`, exact for every exponent (no reduction of `exp`
    /// is assumed or required).
    pub fn pow_mod(&self, base: &BigUint, exp: &BigUint) -> BigUint {
        if self.modulus.is_one() {
            return BigUint::zero();
        }
        let x2 = pow_mod_pow2(base, exp, self.modulus.twos);
        if self.modulus.fives == 0 {
            return x2;
        }
        let x5 = self.pow_mod_pow5(base, exp);
        if self.modulus.twos == 0 {
            return x5;
        }
        // x = x2 + 2^i * ((x5 - x2) * (2^i)^-1 mod 5^j)
        let x2_red = &x2 % &self.pow5;
        let diff = if x5 >= x2_red {
            x5 - x2_red
        } else {
            &self.pow5 - (x2_red - x5)
        };
        let t = (diff * &self.crt) % &self.pow5;
        x2 + t * &self.pow2
    }

    fn pow_mod_pow5(&self, base: &BigUint, exp: &BigUint) -> BigUint {
        let j = self.modulus.fives;
        let b = base % &self.pow5;
        if (&b % 5u32).is_zero() {
            return small_exp_or_zero(&b, exp, j, &self.pow5);
        }
        let e = exp % &self.lambda5;
        if let (Some(m), Some(bb), Some(ee)) = (self.pow5.to_u64(), b.to_u64(), e.to_u64()) {
            return BigUint::from(pow_mod_u64(bb, ee, m));
        }
        b.modpow(&e, &self.pow5)
    }
}

/// For a base sharing the prime with the modulus `p^k`: zero once the
/// exponent reaches `k`, direct evaluation below that.
fn small_exp_or_zero(base: &BigUint, exp: &BigUint, k: u32, modulus: &BigUint) -> BigUint {
    if *exp >= BigUint::from(k) {
        BigUint::zero()
    } else {
        base.modpow(exp, modulus)
    }
}

fn pow_mod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = base as u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// `base^exp mod 2^k`.
pub(crate) fn pow_mod_pow2(base: &BigUint, exp: &BigUint, k: u32) -> BigUint {
    if k == 0 {
        return BigUint::zero();
    }
    let even = !base.bit(0);
    if even {
        let pow2 = BigUint::one() << k;
        return small_exp_or_zero(&truncate_bits(base, k), exp, k, &pow2);
    }
    // odd base: the multiplicative order divides 2^(k-2) for k >= 3
    let order_bits = if k >= 3 { k - 2 } else { 1 };
    let e = truncate_bits(exp, order_bits);
    if k <= 64 {
        let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let b = truncate_bits(base, k).to_u64().unwrap_or(0);
        let mut ebits = e.to_u64().unwrap_or(0);
        let mut acc = 1u64;
        let mut sq = b;
        while ebits > 0 {
            if ebits & 1 == 1 {
                acc = acc.wrapping_mul(sq);
            }
            sq = sq.wrapping_mul(sq);
            ebits >>= 1;
        }
        return BigUint::from(acc & mask);
    }
    let mut acc = BigUint::one();
    let mut sq = truncate_bits(base, k);
    let nbits = e.bits();
    for bit in 0..nbits {
        if e.bit(bit) {
            acc = truncate_bits(&(&acc * &sq), k);
        }
        if bit + 1 < nbits {
            sq = truncate_bits(&(&sq * &sq), k);
        }
    }
    acc
}

fn truncate_bits(x: &BigUint, k: u32) -> BigUint {
    if x.bits() <= k as u64 {
        return x.clone();
    }
    let mut digits = x.to_u32_digits();
    digits.truncate((k as usize).div_ceil(32));
    let rem = k % 32;
    if rem != 0 {
        if let Some(last) = digits.last_mut() {
            *last &= (1u32 << rem) - 1;
        }
    }
    BigUint::new(digits)
}

/// The Carmichael chain `10^m, lambda(10^m), lambda(lambda(10^m)), ..., 1`.
#[derive(Debug)]
pub struct Chain {
    levels: Vec<ChainLevel>,
}

impl Chain {
    pub fn build(top: Modulus) -> Self {
        let mut levels = vec![ChainLevel::new(top)];
        let mut current = top;
        while !current.is_one() {
            current = current.carmichael();
            levels.push(ChainLevel::new(current));
        }
        Chain { levels }
    }

    pub fn levels(&self) -> &[ChainLevel] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

fn chain_cache() -> &'static RwLock<HashMap<u32, Arc<Chain>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Chain>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The cached chain for `10^m`.
pub fn chain_for_digits(m: u32) -> Arc<Chain> {
    if let Some(chain) = chain_cache().read().unwrap().get(&m) {
        return Arc::clone(chain);
    }
    let built = Arc::new(Chain::build(Modulus::pow10(m)));
    let mut cache = chain_cache().write().unwrap();
    Arc::clone(cache.entry(m).or_insert(built))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn carmichael_brute(n: u64) -> u64 {
        // smallest L with x^L = 1 for every unit x
        let units: Vec<u64> = (1..n).filter(|x| x.gcd(&n) == 1).collect();
        (1..=n)
            .find(|&l| units.iter().all(|&x| pow_mod_u64(x, l, n) == 1))
            .unwrap_or(1)
    }

    #[test]
    fn carmichael_matches_brute_force() {
        for twos in 0..7 {
            for fives in 0..4 {
                let m = Modulus::new(twos, fives);
                let n = m.value().to_u64().unwrap();
                if n < 2 {
                    continue;
                }
                let lam = m.carmichael().value().to_u64().unwrap();
                assert_eq!(lam, carmichael_brute(n), "lambda({n})");
            }
        }
    }

    #[test]
    fn lambda_of_power_of_ten() {
        // lambda(10^m) = 5 * 10^(m-2) for m >= 3
        assert_eq!(Modulus::pow10(3).carmichael(), Modulus::new(2, 2));
        assert_eq!(Modulus::pow10(6).carmichael(), Modulus::new(4, 5));
    }

    #[test]
    fn chain_ends_at_one() {
        let chain = chain_for_digits(20);
        assert!(chain.levels().last().unwrap().modulus.is_one());
        assert_eq!(chain.levels()[0].modulus, Modulus::pow10(20));
    }

    #[test]
    fn from_biguint_rejects_other_primes() {
        assert_eq!(
            Modulus::from_biguint(&BigUint::from(400u32)).unwrap(),
            Modulus::new(4, 2)
        );
        assert!(Modulus::from_biguint(&BigUint::from(30u32)).is_err());
        assert!(Modulus::from_biguint(&BigUint::zero()).is_err());
    }

    #[test]
    fn pow_mod_matches_num_bigint() {
        for (twos, fives) in [(0, 3), (5, 0), (3, 2), (70, 40), (100, 2), (1, 90)] {
            let level = ChainLevel::new(Modulus::new(twos, fives));
            for base in [2u32, 3, 5, 7, 10, 12, 25, 1001] {
                for exp in [0u32, 1, 2, 3, 17, 64, 1000, 12345] {
                    let b = BigUint::from(base);
                    let e = BigUint::from(exp);
                    assert_eq!(
                        level.pow_mod(&b, &e),
                        b.modpow(&e, level.value()),
                        "{base}^{exp} mod {}",
                        level.modulus
                    );
                }
            }
        }
    }
}
