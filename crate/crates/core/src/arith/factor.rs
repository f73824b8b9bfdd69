//! Integer factorization by trial division plus caller-supplied hint primes.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cofactor {
    /// Fully factored.
    None,
    /// Left over and known to be composite.
    Composite(BigInt),
    /// Left over, not proven prime or composite by the tests run here.
    Unknown(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub negative: bool,
    /// Prime powers in increasing order of the prime.
    pub factors: Vec<(BigInt, u32)>,
    pub cofactor: Cofactor,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor == Cofactor::None
    }

    /// Build from a sign and small prime powers, e.g. `-3^3 7^6`.
    pub fn from_parts(negative: bool, parts: &[(u64, u32)]) -> Self {
        Factorization {
            negative,
            factors: parts.iter().map(|&(p, e)| (BigInt::from(p), e)).collect(),
            cofactor: Cofactor::None,
        }
    }

    pub fn value(&self) -> BigInt {
        let mut v = self.factors.iter().fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e));
        match &self.cofactor {
            Cofactor::None => {}
            Cofactor::Composite(c) | Cofactor::Unknown(c) => v *= c,
        }
        if self.negative {
            -v
        } else {
            v
        }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        match &self.cofactor {
            Cofactor::None => {}
            Cofactor::Composite(c) => parts.push(format!("[composite {c}]")),
            Cofactor::Unknown(c) => parts.push(format!("[unfactored {c}]")),
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        let body = parts.join(" * ");
        if self.negative {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = DEFAULT_TRIAL_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
    })
}

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first 13 prime bases. Deterministic below
/// 3.3 * 10^24; beyond that a `true` means "probably prime".
pub fn miller_rabin(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in &MR_BASES {
        if *n == BigUint::from(b) {
            return true;
        }
        if (n % b).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn mr_is_deterministic(n: &BigUint) -> bool {
    // 3317044064679887385961981 is the least strong pseudoprime to bases 2..41
    n.bits() < 81
}

/// Factor `n != 0` using trial division up to `bound` (at most 10^6) and the
/// hint primes. Non-prime hints are ignored.
pub fn factor_integer(n: &BigInt, bound: u64, hints: &[BigInt]) -> Factorization {
    assert!(!n.is_zero(), "cannot factor zero");
    let bound = bound.min(DEFAULT_TRIAL_BOUND);
    let mut rest = n.abs();
    let mut found: Vec<(BigInt, u32)> = Vec::new();
    let take = |rest: &mut BigInt, p: &BigInt, found: &mut Vec<(BigInt, u32)>| {
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(p);
            if !r.is_zero() {
                break;
            }
            *rest = q;
            e += 1;
        }
        if e > 0 {
            found.push((p.clone(), e));
        }
    };
    for &p in small_primes() {
        if p > bound {
            break;
        }
        if rest.is_one() {
            break;
        }
        take(&mut rest, &BigInt::from(p), &mut found);
        if BigInt::from(p) * BigInt::from(p) > rest {
            break;
        }
    }
    for h in hints {
        let hu = h.abs().to_biguint().unwrap();
        if h.abs() <= BigInt::from(bound) || !miller_rabin(&hu) || !mr_is_deterministic(&hu) {
            continue;
        }
        take(&mut rest, &h.abs(), &mut found);
    }
    let cofactor = if rest.is_one() {
        Cofactor::None
    } else {
        let b = BigInt::from(bound);
        let below_square = rest < &b * &b;
        let ru = rest.to_biguint().unwrap();
        if below_square || (mr_is_deterministic(&ru) && miller_rabin(&ru)) {
            found.push((rest.clone(), 1));
            Cofactor::None
        } else if !miller_rabin(&ru) {
            Cofactor::Composite(rest)
        } else {
            Cofactor::Unknown(rest)
        }
    };
    found.sort();
    // merge repeated primes (a hint may coincide with a trial prime)
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for (p, e) in found {
        match factors.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => factors.push((p, e)),
        }
    }
    Factorization { negative: n.is_negative(), factors, cofactor }
}

pub fn small_factor(n: u64) -> Vec<(u64, u32)> {
    factor_integer(&BigInt::from(n), DEFAULT_TRIAL_BOUND, &[])
        .factors
        .iter()
        .map(|(p, e)| (p.to_u64().unwrap(), *e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_has_empty_factorization() {
        let f = factor_integer(&BigInt::one(), DEFAULT_TRIAL_BOUND, &[]);
        assert!(f.factors.is_empty());
        assert!(f.is_complete());
        assert_eq!(f.to_string(), "1");
    }

    #[test]
    fn smooth_number() {
        let f = factor_integer(&BigInt::from(2370816), DEFAULT_TRIAL_BOUND, &[]);
        assert_eq!(f, Factorization::from_parts(false, &[(2, 8), (3, 3), (7, 3)]));
        assert_eq!(f.to_string(), "2^8 * 3^3 * 7^3");
    }

    #[test]
    fn hints_and_sign() {
        let n: BigInt = -BigInt::from(3)
            * BigInt::from(7).pow(18)
            * BigInt::from(43).pow(2)
            * BigInt::from(139).pow(2)
            * BigInt::from(421).pow(2)
            * BigInt::from(591751).pow(2);
        let hints: Vec<BigInt> = [43, 139, 421, 591751].iter().map(|&h| BigInt::from(h)).collect();
        let f = factor_integer(&n, DEFAULT_TRIAL_BOUND, &hints);
        assert_eq!(
            f,
            Factorization::from_parts(true, &[(3, 1), (7, 18), (43, 2), (139, 2), (421, 2), (591751, 2)])
        );
        assert_eq!(f.value(), n);
    }

    #[test]
    fn large_cofactor_is_flagged() {
        // two primes above the trial bound
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let n = &p * &q * BigInt::from(12);
        let f = factor_integer(&n, 1000, &[]);
        assert_eq!(f.cofactor, Cofactor::Composite(&p * &q));
        assert_eq!(f.value(), n);
        // with a hint the remainder is provably prime
        let g = factor_integer(&n, DEFAULT_TRIAL_BOUND, std::slice::from_ref(&p));
        assert!(g.is_complete());
    }

    #[test]
    fn miller_rabin_small() {
        let primes: Vec<u64> = (2..200).filter(|&n| (2..n).all(|d| n % d != 0)).collect();
        for n in 0u64..200 {
            assert_eq!(miller_rabin(&BigUint::from(n)), primes.contains(&n), "{n}");
        }
    }
}
