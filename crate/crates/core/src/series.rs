//! Truncated power series in `w` (rank) and `z` (degree) with scalar coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::scalar::{ParamSpace, ScalarExpr};
use crate::{Error, Result};

/// Coefficients at `(r, d)` for `r <= rmax`, `d <= dmax`; zero entries are not stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    rmax: u32,
    dmax: u32,
    coeffs: BTreeMap<(u32, u32), ScalarExpr>,
}

/// A slope `d0/r0` in lowest terms; `r0 = 0` is the torsion slope (`d0 = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    pub d0: u32,
    pub r0: u32,
}

impl Slope {
    pub fn of(r: u32, d: u32) -> Slope {
        assert!(r > 0 || d > 0, "the origin has no slope");
        let g = num_integer::gcd(r, d);
        Slope {
            d0: d / g,
            r0: r / g,
        }
    }

    pub fn contains(&self, r: u32, d: u32) -> bool {
        (r, d) != (0, 0) && d as u64 * self.r0 as u64 == r as u64 * self.d0 as u64
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r0 == 0 {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.d0, self.r0)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    r: u32,
    d: u32,
    coeff: String,
}

impl GradedSeries {
    pub fn zero(rmax: u32, dmax: u32) -> Self {
        GradedSeries {
            rmax,
            dmax,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(rmax: u32, dmax: u32) -> Self {
        let mut s = Self::zero(rmax, dmax);
        s.set(0, 0, ScalarExpr::one());
        s
    }

    pub fn rmax(&self) -> u32 {
        self.rmax
    }

    pub fn dmax(&self) -> u32 {
        self.dmax
    }

    pub fn get(&self, r: u32, d: u32) -> ScalarExpr {
        self.coeffs.get(&(r, d)).cloned().unwrap_or_default()
    }

    /// Sets a coefficient; keys outside the window are ignored.
    pub fn set(&mut self, r: u32, d: u32, c: ScalarExpr) {
        if r > self.rmax || d > self.dmax {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&(r, d));
        } else {
            self.coeffs.insert((r, d), c);
        }
    }

    pub fn add_to(&mut self, r: u32, d: u32, c: &ScalarExpr) {
        let cur = self.get(r, d);
        self.set(r, d, &cur + c);
    }

    /// Nonzero entries in `(r, d)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &ScalarExpr)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Same coefficients on a smaller (or equal) window.
    pub fn truncate(&self, rmax: u32, dmax: u32) -> Self {
        GradedSeries {
            rmax,
            dmax,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&(r, d), _)| r <= rmax && d <= dmax)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    fn check_window(&self, other: &Self) -> Result<()> {
        if (self.rmax, self.dmax) != (other.rmax, other.dmax) {
            return Err(Error::Invalid(format!(
                "truncation mismatch: ({}, {}) vs ({}, {})",
                self.rmax, self.dmax, other.rmax, other.dmax
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_window(other)?;
        let mut out = self.clone();
        for (&(r, d), c) in &other.coeffs {
            out.add_to(r, d, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&ScalarExpr::int(-1)))
    }

    pub fn scale(&self, c: &ScalarExpr) -> Self {
        let mut out = Self::zero(self.rmax, self.dmax);
        for (&(r, d), x) in &self.coeffs {
            out.set(r, d, x * c);
        }
        out
    }

    /// Cauchy product on the window.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_window(other)?;
        let mut acc: BTreeMap<(u32, u32), Vec<ScalarExpr>> = BTreeMap::new();
        for (&(r1, d1), a) in &self.coeffs {
            for (&(r2, d2), b) in &other.coeffs {
                let (r, d) = (r1 + r2, d1 + d2);
                if r <= self.rmax && d <= self.dmax {
                    acc.entry((r, d)).or_default().push(a * b);
                }
            }
        }
        let mut out = Self::zero(self.rmax, self.dmax);
        for ((r, d), terms) in acc {
            out.set(r, d, terms.into_iter().sum());
        }
        Ok(out)
    }

    /// `psi_n`: Adams operation on coefficients and `(r, d) -> (n r, n d)`.
    pub fn adams(&self, space: &ParamSpace, n: u32) -> Result<Self> {
        let mut out = Self::zero(self.rmax, self.dmax);
        for (&(r, d), c) in &self.coeffs {
            if n * r <= self.rmax && n * d <= self.dmax {
                out.set(n * r, n * d, space.adams(c, n as i64)?);
            }
        }
        Ok(out)
    }

    /// Largest `n` for which `psi_n` can reach the window from a nonzero key.
    fn max_adams(&self) -> u32 {
        self.coeffs
            .keys()
            .filter(|k| **k != (0, 0))
            .map(|&(r, d)| {
                let a = if r > 0 { self.rmax / r } else { u32::MAX };
                let b = if d > 0 { self.dmax / d } else { u32::MAX };
                a.min(b)
            })
            .max()
            .unwrap_or(0)
    }

    /// Ordinary exponential of a series with zero constant term.
    fn exp_plain(&self) -> Self {
        let mut e = Self::one(self.rmax, self.dmax);
        let f: Vec<((u32, u32), &ScalarExpr)> = self.coeffs.iter().map(|(k, c)| (*k, c)).collect();
        for r in 0..=self.rmax {
            for d in 0..=self.dmax {
                if (r, d) == (0, 0) {
                    continue;
                }
                // (r+d) E_{rd} = sum (a+b) F_{ab} E_{r-a,d-b}
                let mut terms = Vec::new();
                for &((a, b), fc) in &f {
                    if a <= r && b <= d {
                        if let Some(ec) = e.coeffs.get(&(r - a, d - b)) {
                            terms.push(&fc.scale_int(&BigInt::from(a + b)) * ec);
                        }
                    }
                }
                if !terms.is_empty() {
                    let s: ScalarExpr = terms.into_iter().sum();
                    e.set(
                        r,
                        d,
                        s.checked_div(&ScalarExpr::int(r + d)).expect("r + d > 0"),
                    );
                }
            }
        }
        e
    }

    /// Ordinary logarithm of a series with constant term 1.
    fn log_plain(&self) -> Self {
        let mut l = Self::zero(self.rmax, self.dmax);
        let f: Vec<((u32, u32), &ScalarExpr)> = self
            .coeffs
            .iter()
            .filter(|(k, _)| **k != (0, 0))
            .map(|(k, c)| (*k, c))
            .collect();
        for r in 0..=self.rmax {
            for d in 0..=self.dmax {
                if (r, d) == (0, 0) {
                    continue;
                }
                // (r+d) L_{rd} = (r+d) f_{rd} - sum_{(a,b) != (r,d)} (a+b) L_{ab} f_{r-a,d-b}
                let mut terms = vec![self.get(r, d).scale_int(&BigInt::from(r + d))];
                for &((a, b), fc) in &f {
                    if a <= r && b <= d && (a, b) != (r, d) {
                        let (ra, db) = (r - a, d - b);
                        if let Some(lc) = l.coeffs.get(&(ra, db)) {
                            terms.push(-(&lc.scale_int(&BigInt::from(ra + db)) * fc));
                        }
                    }
                }
                let s: ScalarExpr = terms.into_iter().sum();
                l.set(
                    r,
                    d,
                    s.checked_div(&ScalarExpr::int(r + d)).expect("r + d > 0"),
                );
            }
        }
        l
    }

    /// Plethystic exponential `exp(sum_n psi_n(f)/n)`.
    pub fn pleth_exp(&self, space: &ParamSpace) -> Result<Self> {
        if !self.get(0, 0).is_zero() {
            return Err(Error::Invalid(
                "plethystic exponential needs zero constant term".into(),
            ));
        }
        let mut acc = self.clone();
        for n in 2..=self.max_adams() {
            let term = self.adams(space, n)?.scale(&ScalarExpr::ratio(1, n)?);
            acc = acc.add(&term)?;
        }
        Ok(acc.exp_plain())
    }

    /// Plethystic logarithm `sum_n mu(n)/n psi_n(log f)`.
    pub fn pleth_log(&self, space: &ParamSpace) -> Result<Self> {
        if !self.get(0, 0).is_one() {
            return Err(Error::Invalid(
                "plethystic logarithm needs constant term 1".into(),
            ));
        }
        let l = self.log_plain();
        let mut acc = l.clone();
        for n in 2..=l.max_adams() {
            let mu = mobius(n);
            if mu == 0 {
                continue;
            }
            let term = l.adams(space, n)?.scale(&ScalarExpr::ratio(mu, n as i64)?);
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Entries on the ray of the given slope.
    pub fn slope_slice(&self, slope: Slope) -> Self {
        GradedSeries {
            rmax: self.rmax,
            dmax: self.dmax,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&(r, d), _)| slope.contains(r, d))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Slopes of the nonzero entries (excluding the origin).
    pub fn slopes(&self) -> Vec<Slope> {
        let mut out: Vec<Slope> = self
            .coeffs
            .keys()
            .filter(|k| **k != (0, 0))
            .map(|&(r, d)| Slope::of(r, d))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// The series whose slice of every slope `theta` is `Exp(slice_theta(self) / (q - 1))`.
    pub fn slope_exp_all(&self, space: &ParamSpace) -> Result<Self> {
        if !self.get(0, 0).is_zero() {
            return Err(Error::Invalid(
                "slope-wise exponential needs zero constant term".into(),
            ));
        }
        let inv_qm1 = (&ScalarExpr::q() - &ScalarExpr::one()).inv()?;
        let mut out = Self::one(self.rmax, self.dmax);
        for slope in self.slopes() {
            let e = self.slope_slice(slope).scale(&inv_qm1).pleth_exp(space)?;
            for (&(r, d), c) in &e.coeffs {
                if (r, d) != (0, 0) {
                    out.set(r, d, c.clone());
                }
            }
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient.
    pub fn map<F: Fn(&ScalarExpr) -> Result<ScalarExpr>>(&self, f: F) -> Result<Self> {
        let mut out = Self::zero(self.rmax, self.dmax);
        for (&(r, d), c) in &self.coeffs {
            out.set(r, d, f(c)?);
        }
        Ok(out)
    }

    /// JSON list of `{r, d, coeff}` for every window entry in `(r, d)` order, zeros
    /// included.
    pub fn to_json(&self) -> serde_json::Value {
        let mut out = Vec::new();
        for r in 0..=self.rmax {
            for d in 0..=self.dmax {
                out.push(JsonEntry {
                    r,
                    d,
                    coeff: self.get(r, d).to_string(),
                });
            }
        }
        serde_json::to_value(out).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let entries: Vec<JsonEntry> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        let rmax = entries.iter().map(|e| e.r).max().unwrap_or(0);
        let dmax = entries.iter().map(|e| e.d).max().unwrap_or(0);
        let mut out = Self::zero(rmax, dmax);
        for e in entries {
            out.set(e.r, e.d, e.coeff.parse()?);
        }
        Ok(out)
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSeries[{}x{}]{{", self.rmax, self.dmax)?;
        for ((r, d), c) in &self.coeffs {
            write!(f, " ({r},{d}): {c};")?;
        }
        write!(f, " }}")
    }
}

/// Moebius function.
pub fn mobius(mut n: u32) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ScalarExpr {
        x.parse().unwrap()
    }

    fn series(rmax: u32, dmax: u32, entries: &[(u32, u32, &str)]) -> GradedSeries {
        let mut out = GradedSeries::zero(rmax, dmax);
        for &(r, d, c) in entries {
            out.set(r, d, s(c));
        }
        out
    }

    #[test]
    fn mul_examples() {
        let a = series(3, 3, &[(0, 0, "1"), (1, 0, "1")]);
        assert_eq!(
            a.mul(&a).unwrap(),
            series(3, 3, &[(0, 0, "1"), (1, 0, "2"), (2, 0, "1")])
        );
        let geo = series(
            0,
            4,
            &[
                (0, 0, "1"),
                (0, 1, "1"),
                (0, 2, "1"),
                (0, 3, "1"),
                (0, 4, "1"),
            ],
        );
        let one_minus = series(0, 4, &[(0, 0, "1"), (0, 1, "-1")]);
        assert_eq!(geo.mul(&one_minus).unwrap(), GradedSeries::one(0, 4));
        let w = series(2, 2, &[(1, 0, "1")]);
        let z = series(2, 2, &[(0, 1, "1")]);
        assert_eq!(w.mul(&z).unwrap(), series(2, 2, &[(1, 1, "1")]));
        assert!(w.mul(&GradedSeries::zero(1, 1)).is_err());
    }

    #[test]
    fn exp_examples() {
        let space = ParamSpace::paired(0);
        let w = series(4, 0, &[(1, 0, "1")]);
        let all_ones = series(
            4,
            0,
            &[
                (0, 0, "1"),
                (1, 0, "1"),
                (2, 0, "1"),
                (3, 0, "1"),
                (4, 0, "1"),
            ],
        );
        assert_eq!(w.pleth_exp(&space).unwrap(), all_ones);
        let qw = series(3, 0, &[(1, 0, "q")]);
        assert_eq!(
            qw.pleth_exp(&space).unwrap(),
            series(
                3,
                0,
                &[(0, 0, "1"), (1, 0, "q"), (2, 0, "q^2"), (3, 0, "q^3")]
            )
        );
        let cw = series(2, 0, &[(1, 0, "1/(q - 1)")]);
        assert_eq!(
            cw.pleth_exp(&space).unwrap().get(2, 0),
            s("q/((q - 1)*(q^2 - 1))")
        );
        assert!(GradedSeries::one(1, 1).pleth_exp(&space).is_err());
    }

    #[test]
    fn log_examples() {
        let space = ParamSpace::paired(1);
        let geo = series(
            4,
            0,
            &[
                (0, 0, "1"),
                (1, 0, "1"),
                (2, 0, "1"),
                (3, 0, "1"),
                (4, 0, "1"),
            ],
        );
        assert_eq!(geo.pleth_log(&space).unwrap(), series(4, 0, &[(1, 0, "1")]));
        let c = "(1 + q - e1)/(q - 1)";
        let f = series(
            0,
            5,
            &[(0, 1, c), (0, 2, c), (0, 3, c), (0, 4, c), (0, 5, c)],
        );
        let back = f.pleth_exp(&space).unwrap().pleth_log(&space).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn slope_examples() {
        let f = series(2, 2, &[(1, 1, "1"), (1, 2, "1"), (2, 2, "1")]);
        assert_eq!(
            f.slope_slice(Slope::of(1, 1)),
            series(2, 2, &[(1, 1, "1"), (2, 2, "1")])
        );
        let space = ParamSpace::paired(0);
        let omega = series(2, 2, &[(1, 1, "q - 1")]);
        let direct = series(2, 2, &[(1, 1, "1")]).pleth_exp(&space).unwrap();
        assert_eq!(omega.slope_exp_all(&space).unwrap(), direct);
        assert_eq!(
            GradedSeries::zero(2, 2).slope_exp_all(&space).unwrap(),
            GradedSeries::one(2, 2)
        );
    }

    #[test]
    fn json_roundtrip() {
        let f = series(1, 2, &[(0, 0, "1"), (1, 2, "(1 - e1 + q)/(q - 1)")]);
        assert_eq!(GradedSeries::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
