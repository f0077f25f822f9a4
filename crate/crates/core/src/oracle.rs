//! Brute-force counts on the projective line over a prime field.
//!
//! Every vector bundle on `P^1` is `O(a_1) + ... + O(a_r)`, so positive bundles of rank
//! `r` and degree `d` are the partitions of `d` into at most `r` parts, and a Higgs field
//! `E -> E(l)` is a matrix of polynomials in one affine coordinate with entry `(i, j)` of
//! degree at most `a_i - a_j + l`. Nothing here uses the residue engine.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::curve::CurveModel;
use crate::scalar::QuadNum;
use crate::series::GradedSeries;
use crate::{Error, Result};

/// Default bound on the number of Higgs fields enumerated for one bundle.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// `O(a_1) + ... + O(a_r)` with `a_1 >= ... >= a_r >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SplittingType(pub Vec<i64>);

impl SplittingType {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "O({})", parts.join(")+O("))
    }
}

/// All positive splitting types of rank `r` and degree `d`.
pub fn splitting_types(r: usize, d: i64) -> Vec<SplittingType> {
    fn rec(left: usize, d: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<SplittingType>) {
        if left == 0 {
            if d == 0 {
                out.push(SplittingType(cur.clone()));
            }
            return;
        }
        for a in (0..=d.min(max)).rev() {
            if a * left as i64 >= d {
                cur.push(a);
                rec(left - 1, d - a, a, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if r > 0 && d >= 0 {
        rec(r, d, d, &mut Vec::new(), &mut out);
    }
    out
}

/// `dim Hom(O(a), O(b)(l))` summed over all summands.
pub fn hom_dim(a: &SplittingType, b: &SplittingType, l: i64) -> u64 {
    let mut n = 0;
    for &ai in &a.0 {
        for &bj in &b.0 {
            n += (bj - ai + l + 1).max(0) as u64;
        }
    }
    n
}

fn gl_order(m: u32, q0: &BigInt) -> BigInt {
    let qm = num_traits::pow(q0.clone(), m as usize);
    (0..m)
        .map(|k| &qm - num_traits::pow(q0.clone(), k as usize))
        .product()
}

/// `#Aut(E)` over `F_q0`.
pub fn aut_count(a: &SplittingType, q0: u64) -> BigInt {
    let q = BigInt::from(q0);
    let mut mult: BTreeMap<i64, u32> = BTreeMap::new();
    for &x in &a.0 {
        *mult.entry(x).or_insert(0) += 1;
    }
    let blocks: u64 = mult.values().map(|&m| (m * m) as u64).sum();
    let unipotent = hom_dim(a, a, 0) - blocks;
    mult.values()
        .fold(num_traits::pow(q.clone(), unipotent as usize), |acc, &m| {
            acc * gl_order(m, &q)
        })
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|p| p * p <= n)
            .all(|p| !n.is_multiple_of(p))
}

/// Polynomials over `F_p` as coefficient vectors (low degree first).
fn poly_mul_add(acc: &mut [u64], a: &[u64], b: &[u64], p: u64) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x * y) % p;
        }
    }
}

/// A Higgs field: `entries[i][j]` has `bound[i][j] + 1` coefficients (none if negative).
struct Field {
    n: usize,
    entries: Vec<Vec<Vec<u64>>>,
}

impl Field {
    fn mul(&self, other: &Field, p: u64) -> Field {
        let n = self.n;
        let mut entries = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for k in 0..n {
                let mut len = 0;
                for j in 0..n {
                    let (a, b) = (&self.entries[i][j], &other.entries[j][k]);
                    if !a.is_empty() && !b.is_empty() {
                        len = len.max(a.len() + b.len() - 1);
                    }
                }
                let mut acc = vec![0; len];
                for j in 0..n {
                    let (a, b) = (&self.entries[i][j], &other.entries[j][k]);
                    if !a.is_empty() && !b.is_empty() {
                        poly_mul_add(&mut acc, a, b, p);
                    }
                }
                entries[i][k] = acc;
            }
        }
        Field { n, entries }
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().flatten().flatten().all(|&c| c == 0)
    }
}

/// Number of nilpotent `theta: E -> E(l)` (`theta^r = 0`) over `F_q0`, `q0` prime.
pub fn nil_count(a: &SplittingType, l: i64, q0: u64, cap: u128) -> Result<u128> {
    if !is_prime(q0) {
        return Err(Error::Unsupported(format!(
            "the P^1 oracle needs a prime field, got q0 = {q0}"
        )));
    }
    let n = a.rank();
    let dim = hom_dim(a, a, l);
    let total = (q0 as u128).checked_pow(dim as u32).filter(|&t| t <= cap);
    let Some(total) = total else {
        let needed = (q0 as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        return Err(Error::EnumerationCap { needed, cap });
    };
    let lens: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (a.0[i] - a.0[j] + l + 1).max(0) as usize)
                .collect()
        })
        .collect();
    let count = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let mut idx = idx;
            let entries = lens
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&len| {
                            (0..len)
                                .map(|_| {
                                    let c = (idx % q0 as u128) as u64;
                                    idx /= q0 as u128;
                                    c
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let theta = Field { n, entries };
            let mut power = Field {
                n,
                entries: theta.entries.clone(),
            };
            for _ in 1..n {
                power = power.mul(&theta, q0);
            }
            power.is_zero()
        })
        .count();
    Ok(count as u128)
}

/// Exact numbers in `Q(sqrt(q0))` on a window `r <= rmax`, `d <= dmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericSeries {
    pub q0: u64,
    pub rmax: u32,
    pub dmax: u32,
    pub coeffs: BTreeMap<(u32, u32), QuadNum>,
}

impl NumericSeries {
    pub fn get(&self, r: u32, d: u32) -> QuadNum {
        self.coeffs
            .get(&(r, d))
            .cloned()
            .unwrap_or_else(|| QuadNum::zero(self.q0))
    }

    /// Keys where two series differ, with both values.
    pub fn differences(&self, other: &NumericSeries) -> Vec<((u32, u32), QuadNum, QuadNum)> {
        let mut out = Vec::new();
        for r in 0..=self.rmax.min(other.rmax) {
            for d in 0..=self.dmax.min(other.dmax) {
                let (x, y) = (self.get(r, d), other.get(r, d));
                if x != y {
                    out.push(((r, d), x, y));
                }
            }
        }
        out
    }

    /// Specializes a symbolic series on a numeric curve.
    pub fn evaluate(series: &GradedSeries, curve: &CurveModel) -> Result<NumericSeries> {
        let q0 = curve
            .numeric_data()
            .ok_or_else(|| Error::Invalid("curve has no numeric data".into()))?
            .q0;
        let mut coeffs = BTreeMap::new();
        for (&k, c) in series.iter() {
            coeffs.insert(k, curve.eval(c)?);
        }
        Ok(NumericSeries {
            q0,
            rmax: series.rmax(),
            dmax: series.dmax(),
            coeffs,
        })
    }
}

/// One line of an oracle breakdown: the contribution of a single bundle.
#[derive(Clone, Debug)]
pub struct BundleCount {
    pub bundle: SplittingType,
    pub fields: u128,
    pub automorphisms: BigInt,
}

/// Per-bundle counts behind one coefficient, for witnesses.
pub fn breakdown(
    r: usize,
    d: i64,
    l: i64,
    q0: u64,
    nil_only: bool,
    cap: u128,
) -> Result<Vec<BundleCount>> {
    splitting_types(r, d)
        .into_iter()
        .map(|a| {
            let fields = if nil_only {
                nil_count(&a, l, q0, cap)?
            } else {
                (q0 as u128).pow(hom_dim(&a, &a, l) as u32)
            };
            let automorphisms = aut_count(&a, q0);
            Ok(BundleCount {
                bundle: a,
                fields,
                automorphisms,
            })
        })
        .collect()
}

/// `I+_D(r, d)` (all Higgs fields) or `I+_{D,nil}(r, d)` on `P^1` over `F_q0`:
/// `(-sqrt(q0))^(-l r^2) sum_E #fields / #Aut E`.
pub fn oracle_series(
    l: i64,
    q0: u64,
    rmax: u32,
    dmax: u32,
    nil_only: bool,
    cap: u128,
) -> Result<NumericSeries> {
    if !is_prime(q0) {
        return Err(Error::Unsupported(format!(
            "the P^1 oracle needs a prime field, got q0 = {q0}"
        )));
    }
    let mut coeffs = BTreeMap::new();
    coeffs.insert((0, 0), QuadNum::from_int(1, q0));
    for r in 1..=rmax {
        for d in 0..=dmax {
            let mut sum = BigRational::zero();
            for b in breakdown(r as usize, d as i64, l, q0, nil_only, cap)? {
                sum += BigRational::new(BigInt::from(b.fields), b.automorphisms);
            }
            let pre = QuadNum::neg_root_pow(-l * (r * r) as i64, q0);
            let value = pre.mul(&QuadNum::from_rational(sum, q0));
            if !value.is_zero() {
                coeffs.insert((r, d), value);
            }
        }
    }
    Ok(NumericSeries {
        q0,
        rmax,
        dmax,
        coeffs,
    })
}
