//! Arithmetic modulo the Mersenne prime 2^61 - 1, used for cheap degree bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub const P: u64 = (1 << 61) - 1;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    let prod = a as u128 * b as u128;
    let lo = (prod as u64) & P;
    let hi = (prod >> 61) as u64;
    add(lo, hi)
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

pub fn reduce(c: &BigInt) -> u64 {
    let m = c.mod_floor(&BigInt::from(P));
    m.to_u64().expect("reduced value fits")
}

/// Dense univariate polynomial, index = degree, trailing zeros trimmed.
pub fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Monic gcd of two dense polynomials mod `P`.
pub fn gcd(mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let li = inv(lc);
        for c in &mut a {
            *c = mul(*c, li);
        }
    }
    a
}

fn rem(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let li = inv(b[db]);
    while r.len() > db {
        let k = r.len() - 1;
        let f = mul(r[k], li);
        let shift = k - db;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = sub(r[shift + i], mul(f, bc));
        }
        trim(&mut r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = P - 5;
        assert_eq!(add(a, 10), 5);
        assert_eq!(sub(3, 5), P - 2);
        assert_eq!(mul(inv(12345), 12345), 1);
        assert_eq!(reduce(&BigInt::from(-1)), P - 1);
    }

    #[test]
    fn gcd_of_products() {
        // (x+1)(x+2) and (x+1)(x+3)
        let a = vec![2, 3, 1];
        let b = vec![3, 4, 1];
        assert_eq!(gcd(a, b), vec![1, 1]);
        assert_eq!(gcd(vec![1, 1], vec![2, 1]), vec![1]);
    }
}
