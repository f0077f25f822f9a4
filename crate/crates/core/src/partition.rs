//! Partitions, Chern classes and the Euler form.

use std::fmt;

use crate::{Error, Result};

/// A partition, parts weakly decreasing and positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// `(1^{r_1}, 2^{r_2}, ...)` from multiplicities `r_1, r_2, ...`.
    pub fn from_multiplicities(r: &[u32]) -> Self {
        let mut parts = Vec::new();
        for (i, &ri) in r.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, ri as usize));
        }
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|lambda|`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..width)
                .map(|j| self.0.iter().filter(|&&p| p > j).count() as u32)
                .collect(),
        )
    }

    /// Multiplicities `r_1..r_t` (`r_i` = number of parts equal to `i`, `t` = largest part).
    pub fn multiplicities(&self) -> Vec<u32> {
        let t = self.0.first().copied().unwrap_or(0) as usize;
        let mut r = vec![0; t];
        for &p in &self.0 {
            r[p as usize - 1] += 1;
        }
        r
    }

    /// Arm and leg of the cell in row `i`, column `j` (1-based).
    pub fn arm_leg(&self, i: usize, j: usize) -> Result<(u32, u32)> {
        if i == 0 || j == 0 || i > self.len() || j as u32 > self.0[i - 1] {
            return Err(Error::Invalid(format!("cell ({i}, {j}) is not in {self}")));
        }
        let conj = self.conjugate();
        Ok((self.0[i - 1] - j as u32, conj.0[j - 1] - i as u32))
    }

    /// Arm and leg of every cell, row by row.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &p) in self.0.iter().enumerate() {
            for j in 0..p as usize {
                out.push((p - j as u32 - 1, conj.0[j] - i as u32 - 1));
            }
        }
        out
    }

    /// `<lambda, lambda> = sum_i (lambda'_i)^2`.
    pub fn pairing(&self) -> u32 {
        self.conjugate().0.iter().map(|c| c * c).sum()
    }

    /// `sum_j C(lambda_j, 2)`.
    pub fn binomial_sum(&self) -> u32 {
        self.0.iter().map(|&p| p * p.saturating_sub(1) / 2).sum()
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Rank and degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChernClass {
    pub r: i64,
    pub d: i64,
}

impl ChernClass {
    pub fn new(r: i64, d: i64) -> Self {
        ChernClass { r, d }
    }

    /// `alpha(n) = (r, d + n r)`.
    pub fn twist(self, n: i64) -> Self {
        ChernClass {
            r: self.r,
            d: self.d + n * self.r,
        }
    }
}

/// Euler form `chi(a, b) = r_a d_b - r_b d_a + r_a r_b (1 - g)`.
pub fn chi(a: ChernClass, b: ChernClass, g: i64) -> i64 {
    a.r * b.d - b.r * a.d + a.r * b.r * (1 - g)
}

/// The exponent `rho_l` of a tuple `alpha_1..alpha_s`:
/// `-rho_l = sum_{i<j} (i chi(a_i,a_j) + (i-1) chi(a_j,a_i) - i(j-1) r_i r_j l)
///           + sum_i ((i-1) chi(a_i,a_i) - C(i,2) r_i^2 l)`.
pub fn rho(l: i64, alpha: &[ChernClass], g: i64) -> i64 {
    let mut neg = 0;
    for (a, &ai) in alpha.iter().enumerate() {
        let i = a as i64 + 1;
        for (b, &aj) in alpha.iter().enumerate().skip(a + 1) {
            let j = b as i64 + 1;
            neg += i * chi(ai, aj, g) + (i - 1) * chi(aj, ai, g) - i * (j - 1) * ai.r * aj.r * l;
        }
        neg += (i - 1) * chi(ai, ai, g) - i * (i - 1) / 2 * ai.r * ai.r * l;
    }
    -neg
}

/// `lambda(alpha) = (1^{r_1}, 2^{r_2}, ...)` with `r_i = rk alpha_i`.
pub fn lambda_of(alpha: &[ChernClass]) -> Partition {
    let r: Vec<u32> = alpha.iter().map(|a| a.r as u32).collect();
    Partition::from_multiplicities(&r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn arm_leg_examples() {
        assert_eq!(p(&[1]).arm_leg(1, 1).unwrap(), (0, 0));
        assert_eq!(p(&[2, 1]).arm_leg(1, 1).unwrap(), (1, 1));
        assert_eq!(p(&[3]).arm_leg(1, 1).unwrap(), (2, 0));
        assert!(p(&[2, 1]).arm_leg(2, 2).is_err());
        let mut hooks: Vec<u32> = p(&[2, 1]).cells().iter().map(|(a, l)| a + l + 1).collect();
        hooks.sort();
        assert_eq!(hooks, vec![1, 1, 3]);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(p(&[1]).pairing(), 1);
        assert_eq!(p(&[2, 1]).pairing(), 5);
        assert_eq!(p(&[1, 1, 1]).pairing(), 9);
    }

    #[test]
    fn chi_examples() {
        let c = ChernClass::new;
        assert_eq!(chi(c(1, 0), c(1, 0), 3), -2);
        assert_eq!(chi(c(1, 0), c(1, 1), 0), 2);
        assert_eq!(chi(c(2, 1), c(1, 0), 1), -1);
        assert_eq!(
            chi(c(2, 1), c(3, -1).twist(2), 1),
            chi(c(2, 1), c(3, -1), 1) + 2 * 2 * 3
        );
    }

    #[test]
    fn rho_examples() {
        let c = ChernClass::new;
        assert_eq!(rho(5, &[c(2, 3)], 2), 0);
        // the displayed sum for ((1,0),(1,0)) at l = g = 0 is 1 + 1 = 2
        assert_eq!(rho(0, &[c(1, 0), c(1, 0)], 0), -2);
        let alpha = [c(1, 0), c(1, 1)];
        let lam = lambda_of(&alpha);
        assert_eq!(lam, p(&[2, 1]));
        let r = 3i64;
        assert_eq!(
            2 * rho(3, &alpha, 2),
            2 * rho(0, &alpha, 2) + 3 * r * r - 3 * lam.pairing() as i64
        );
    }

    #[test]
    fn partitions_of_five() {
        let all = Partition::all(5);
        assert_eq!(all.len(), 7);
        assert_eq!(all[0], p(&[5]));
        assert_eq!(all[6], p(&[1, 1, 1, 1, 1]));
        assert_eq!(p(&[3, 3, 1]).multiplicities(), vec![1, 0, 2]);
        assert_eq!(Partition::from_multiplicities(&[1, 0, 2]), p(&[3, 3, 1]));
    }
}
