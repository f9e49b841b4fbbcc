//! Small number-theoretic helpers shared by the lattice and form code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes `p` with `lo <= p < hi`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..hi).filter(|&n| is_prime(n)).collect()
}

/// Factorisation as (prime, exponent) pairs, primes ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// If `n = p^k` with `p` prime and `k >= 1`, returns `(p, k)`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factor(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn val_u64(mut n: u64, p: u64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// p-adic valuation of a nonzero integer.
pub fn val_int(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn val_rat(x: &BigRational, p: u64) -> i64 {
    val_int(x.numer(), p) - val_int(x.denom(), p)
}

/// Strips all factors of `p`, keeping the sign.
pub fn unit_part(n: &BigInt, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    while !n.is_zero() && (&n % &pb).is_zero() {
        n /= &pb;
    }
    n
}

/// p-adic valuation of `n!`.
pub fn val_factorial(n: u64, p: u64) -> u32 {
    let mut s = 0;
    let mut q = p;
    while q <= n {
        s += (n / q) as u32;
        q = match q.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
    }
    s
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn rem_i64(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

pub fn rem_big(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

/// Inverse of `a` modulo `m` (requires gcd 1).
pub fn inv_mod(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    assert!(e.gcd == 1, "{a} not invertible mod {m}");
    e.x.rem_euclid(m as i128) as u64
}

/// Legendre symbol (a/p) for an odd prime p, values in {-1, 0, 1}.
pub fn legendre(a: i64, p: u64) -> i32 {
    let r = pow_mod(rem_i64(a, p), (p - 1) / 2, p);
    if r == 0 {
        0
    } else if r == 1 {
        1
    } else {
        -1
    }
}

pub fn legendre_big(a: &BigInt, p: u64) -> i32 {
    legendre(rem_big(a, p) as i64, p)
}

/// Legendre symbol of a p-adic unit given as a rational.
pub fn legendre_rat(x: &BigRational, p: u64) -> i32 {
    legendre_big(x.numer(), p) * legendre_big(x.denom(), p)
}

/// Kronecker symbol (2/u) for odd u: +1 iff u = +-1 mod 8.
pub fn kron2(u: i64) -> i32 {
    match u.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => panic!("kron2 of even number"),
    }
}

/// Residue of a 2-adic unit rational modulo 8.
pub fn mod8_rat(x: &BigRational) -> i64 {
    let n = rem_big(x.numer(), 8) as i64;
    let d = rem_big(x.denom(), 8) as i64;
    // odd d is its own inverse mod 8
    (n * d).rem_euclid(8)
}

/// A quadratic non-residue modulo the odd prime p.
pub fn non_residue(p: u64) -> u64 {
    (2..p).find(|&a| legendre(a as i64, p) == -1).unwrap()
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_of(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

pub fn is_integral(x: &BigRational) -> bool {
    x.denom().is_one()
}

pub fn abs_big(n: &BigInt) -> BigInt {
    n.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_small() {
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(legendre(-1, 5), 1);
        assert_eq!(legendre(-1, 7), -1);
        assert_eq!(legendre(21, 5), 1);
        assert_eq!(legendre(14, 7), 0);
    }

    #[test]
    fn factorial_valuation() {
        assert_eq!(val_factorial(5, 5), 1);
        assert_eq!(val_factorial(10, 3), 4);
        assert_eq!(val_factorial(25, 5), 6);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn inverse() {
        assert_eq!(inv_mod(3, 8), 3);
        assert_eq!((inv_mod(5, 27) * 5) % 27, 1);
    }
}
