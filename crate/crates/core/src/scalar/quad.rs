use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{Poly, NVARS, V};

/// Element `a + b*sqrt(q0)` of `Q(sqrt(q0))`. When `q0` is a perfect square the root is
/// folded into `a` and `b` stays zero, so representations are unique.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    pub a: BigRational,
    pub b: BigRational,
    pub q0: u64,
}

fn is_square(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

impl QuadNum {
    pub fn new(a: BigRational, b: BigRational, q0: u64) -> Self {
        match is_square(q0) {
            Some(r) => QuadNum {
                a: a + b * BigRational::from_integer(r.into()),
                b: BigRational::zero(),
                q0,
            },
            None => QuadNum { a, b, q0 },
        }
    }

    pub fn from_rational(a: BigRational, q0: u64) -> Self {
        QuadNum {
            a,
            b: BigRational::zero(),
            q0,
        }
    }

    pub fn from_int(n: i64, q0: u64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()), q0)
    }

    pub fn zero(q0: u64) -> Self {
        Self::from_int(0, q0)
    }

    /// `sqrt(q0)`.
    pub fn root(q0: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), q0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.q0, o.q0);
        QuadNum {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            q0: self.q0,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadNum {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            q0: self.q0,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let q = BigRational::from_integer(self.q0.into());
        QuadNum {
            a: &self.a * &o.a + &self.b * &o.b * q,
            b: &self.a * &o.b + &self.b * &o.a,
            q0: self.q0,
        }
    }

    /// `None` on division by zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let q = BigRational::from_integer(o.q0.into());
        let norm = &o.a * &o.a - &o.b * &o.b * q;
        if norm.is_zero() {
            return None;
        }
        let conj = QuadNum {
            a: o.a.clone() / &norm,
            b: -o.b.clone() / &norm,
            q0: o.q0,
        };
        Some(self.mul(&conj))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::from_int(1, self.q0);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `(-sqrt(q0))^k` for any integer `k`.
    pub fn neg_root_pow(k: i64, q0: u64) -> Self {
        let base = Self::root(q0).mul(&Self::from_int(-1, q0));
        let p = base.pow(k.unsigned_abs() as u32);
        if k >= 0 {
            p
        } else {
            Self::from_int(1, q0).div(&p).expect("q0 > 0")
        }
    }

    /// Evaluates an integer polynomial in `v, e1..` at `v = sqrt(q0)`, `e_k = e_vals[k-1]`.
    pub(crate) fn eval_poly(p: &Poly, q0: u64, e_vals: &[BigInt]) -> Self {
        let qb = BigInt::from(q0);
        let mut a = BigInt::zero();
        let mut b = BigInt::zero();
        for (m, c) in p.terms() {
            let mut val = c.clone();
            for k in 1..NVARS {
                let e = m.deg(k);
                if e != 0 {
                    val *= num_traits::pow(e_vals[k - 1].clone(), e as usize);
                }
            }
            let dv = m.deg(V) as usize;
            val *= num_traits::pow(qb.clone(), dv / 2);
            if dv.is_multiple_of(2) {
                a += val;
            } else {
                b += val;
            }
        }
        Self::new(
            BigRational::from_integer(a),
            BigRational::from_integer(b),
            q0,
        )
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.q0)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.q0)
        }
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
