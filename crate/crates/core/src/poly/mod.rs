//! Sparse multivariate polynomials with integer coefficients.
//!
//! All polynomials live in one fixed variable space so that scalars (in `v` and the
//! curve parameters `e_k`) and functions of the auxiliary variables `z_i` can be mixed
//! freely without re-indexing:
//!
//! | index | variable |
//! |-------|----------|
//! | 0     | `v` (square root of `q`) |
//! | 1..=8 | `e1`..`e8` |
//! | 9..=15| `z1`..`z7` |
//!
//! Terms are kept sorted in descending graded-lex order with no zero coefficients, so
//! structural equality is polynomial equality.

mod gcd;
pub(crate) mod modp;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

pub use gcd::{content_in, gcd, gcd_many};
pub use parse::{parse_fraction, ParseError};

/// Number of variable slots.
pub const NVARS: usize = 16;
/// Index of `v`.
pub const V: usize = 0;
/// Largest supported `e` index (genus up to 4).
pub const MAX_E: usize = 8;
/// Largest supported `z` index.
pub const MAX_Z: usize = 7;

/// Variable index of `e_k`, `1 <= k <= 8`.
pub fn e_var(k: usize) -> usize {
    assert!((1..=MAX_E).contains(&k), "e_{k} out of range");
    k
}

/// Variable index of `z_i`, `1 <= i <= 7`.
pub fn z_var(i: usize) -> usize {
    assert!((1..=MAX_Z).contains(&i), "z_{i} out of range");
    MAX_E + i
}

pub fn is_z_var(var: usize) -> bool {
    var > MAX_E
}

/// Bit mask of the scalar variables `v, e1..e8`.
pub const SCALAR_MASK: u16 = (1 << (MAX_E + 1)) - 1;

pub fn var_name(var: usize) -> String {
    match var {
        V => "v".to_string(),
        k if k <= MAX_E => format!("e{k}"),
        i => format!("z{}", i - MAX_E),
    }
}

/// Exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(var: usize, exp: u16) -> Self {
        let mut m = Self::ONE;
        m.0[var] = exp;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn deg(&self, var: usize) -> u16 {
        self.0[var]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i]
                .checked_add(other.0[i])
                .expect("monomial exponent overflow");
        }
        Monomial(out)
    }

    pub fn pow(&self, n: u32) -> Monomial {
        let mut out = [0u16; NVARS];
        for i in 0..NVARS {
            let e = self.0[i] as u32 * n;
            out[i] = u16::try_from(e).expect("monomial exponent overflow");
        }
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` if exact.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u16; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i].min(other.0[i]);
        }
        Monomial(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i].max(other.0[i]);
        }
        Monomial(out)
    }

    pub fn mask(&self) -> u16 {
        let mut m = 0u16;
        for i in 0..NVARS {
            if self.0[i] != 0 {
                m |= 1 << i;
            }
        }
        m
    }

    /// Keep only the variables in `mask`.
    pub fn restrict(&self, mask: u16) -> Monomial {
        let mut out = *self;
        for i in 0..NVARS {
            if mask & (1 << i) == 0 {
                out.0[i] = 0;
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..NVARS {
            let e = self.0[i];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&var_name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Polynomial over the integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn var(var: usize) -> Self {
        Self::monomial(Monomial::var(var, 1), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> = terms.into_iter().collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    fn from_sorted_unchecked(terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_term(&self) -> BigInt {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn lead(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn lead_coeff(&self) -> BigInt {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|t| t.0.deg(var)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|t| t.0.deg(var)).min().unwrap_or(0)
    }

    /// Bit mask of variables that occur.
    pub fn mask(&self) -> u16 {
        self.terms.iter().fold(0, |m, t| m | t.0.mask())
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.0.deg(var) > 0)
    }

    /// Gcd of the integer coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::ONE;
        };
        let mut g = *first;
        for (m, _) in it {
            g = g.gcd(m);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_sorted_unchecked(self.terms.iter().map(|(m, x)| (*m, x * c)).collect())
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> Poly {
        Poly::from_sorted_unchecked(
            self.terms
                .iter()
                .map(|(m, x)| {
                    debug_assert!((x % c).is_zero());
                    (*m, x / c)
                })
                .collect(),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly::from_sorted_unchecked(
            self.terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        )
    }

    /// Division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly::from_sorted_unchecked(
            self.terms
                .iter()
                .map(|(t, c)| (t.div(m).expect("monomial does not divide"), c.clone()))
                .collect(),
        )
    }

    /// Sign-normalized copy with positive leading coefficient.
    pub fn with_positive_lead(self) -> Poly {
        if self.lead_coeff().is_negative() {
            -self
        } else {
            self
        }
    }

    /// Divides out integer content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lead_coeff().is_negative() {
            c = -c;
        }
        if c.is_one() {
            self.clone()
        } else {
            self.div_scalar(&c)
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        if n == 0 {
            return Poly::one();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Poly::monomial(m.pow(n), num_traits::pow(c.clone(), n as usize));
        }
        let mut base = self.clone();
        let mut acc = Poly::one();
        let mut e = n;
        loop {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        acc
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Poly::from_sorted_unchecked(
                self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect(),
            );
        }
        if self.terms.len() == 1 {
            return other.mul_impl(self);
        }
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::with_capacity_and_hasher(
            self.terms.len() * other.terms.len(),
            Default::default(),
        );
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(c) => *c += ca * cb,
                    None => {
                        acc.insert(m, ca * cb);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly::from_sorted_unchecked(terms)
    }

    fn add_impl(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly::from_sorted_unchecked(out)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let q = m.div(dm)?;
                let (qc, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                out.push((q, qc));
            }
            return Some(Poly::from_sorted_unchecked(out));
        }
        // cheap rejections
        let (lm, _) = &d.terms[0];
        if !lm.divides(&self.terms[0].0) {
            return None;
        }
        let tm = &d.terms[d.terms.len() - 1].0;
        if !tm.divides(&self.terms[self.terms.len() - 1].0) {
            return None;
        }
        for var in 0..NVARS {
            if d.degree_in(var) > self.degree_in(var) {
                return None;
            }
        }
        let (lm, lc) = d.terms[0].clone();
        let mut rem: std::collections::BTreeMap<Monomial, BigInt> =
            self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(&lm)?;
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in &d.terms[1..] {
                let key = qm.mul(dm);
                let delta = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly::from_sorted_unchecked(quot))
    }

    /// Coefficients as a polynomial in `var`: entry `k` is the coefficient of `var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.deg(var) as usize;
            let mut rest = *m;
            rest.0[var] = 0;
            buckets[k].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                // removing one variable from a grlex-sorted list may break sortedness
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Poly::from_sorted_unchecked(t)
            })
            .collect()
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs_in(var: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let mk = Monomial::var(var, k as u16);
            for (m, x) in &c.terms {
                terms.push((m.mul(&mk), x.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// Substitutes `var := value`.
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        if !self.contains_var(var) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(var);
        // Horner
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Substitutes `var := num / den` with `den` a monomial. Returns `(p, k)` with
    /// `self(var := num/den) = p / den^k` where `k = deg_var(self)`.
    pub fn substitute_fraction(&self, var: usize, num: &Poly, den: &Monomial) -> (Poly, u16) {
        let k = self.degree_in(var);
        if k == 0 {
            return (self.clone(), 0);
        }
        let coeffs = self.coeffs_in(var);
        let mut num_pows = vec![Poly::one()];
        for i in 1..=k as usize {
            num_pows.push(&num_pows[i - 1] * num);
        }
        let mut acc = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let dpow = den.pow(k as u32 - i as u32);
            acc = &acc + &(c * &num_pows[i]).mul_monomial(&dpow);
        }
        (acc, k)
    }

    /// Simultaneous substitution of variables by polynomials (`None` keeps the variable).
    pub fn substitute_all(&self, images: &[Option<Poly>; NVARS]) -> Poly {
        let mut cache: FxHashMap<(usize, u16), Poly> = FxHashMap::default();
        let mut plain: Vec<(Monomial, BigInt)> = Vec::new();
        for (m, c) in &self.terms {
            let mut keep = *m;
            let mut factor: Option<Poly> = None;
            for var in 0..NVARS {
                let e = m.deg(var);
                if e == 0 {
                    continue;
                }
                if let Some(img) = &images[var] {
                    keep.0[var] = 0;
                    let p = cache
                        .entry((var, e))
                        .or_insert_with(|| img.pow(e as u32))
                        .clone();
                    factor = Some(match factor {
                        None => p,
                        Some(f) => &f * &p,
                    });
                }
            }
            match factor {
                None => plain.push((*m, c.clone())),
                Some(f) => {
                    for (fm, fc) in f.terms {
                        plain.push((fm.mul(&keep), fc * c));
                    }
                }
            }
        }
        Poly::from_terms(plain)
    }

    /// Substitutes `var := a / b` for polynomials `a`, `b`. Returns `(p, k)` with
    /// `self(var := a/b) = p / b^k` where `k = deg_var(self)`.
    pub fn substitute_homogeneous(&self, var: usize, a: &Poly, b: &Poly) -> (Poly, u16) {
        let k = self.degree_in(var);
        if k == 0 {
            return (self.clone(), 0);
        }
        let coeffs = self.coeffs_in(var);
        let mut b_pows = vec![Poly::one()];
        for i in 1..=k as usize {
            b_pows.push(&b_pows[i - 1] * b);
        }
        // Horner in a, with b-powers attached to lower coefficients
        let mut acc = coeffs[k as usize].clone();
        for i in (0..k as usize).rev() {
            acc = &(&acc * a) + &(&coeffs[i] * &b_pows[k as usize - i]);
        }
        (acc, k)
    }

    /// Substitutes `var := 0`.
    pub fn at_zero(&self, var: usize) -> Poly {
        Poly::from_sorted_unchecked(
            self.terms
                .iter()
                .filter(|(m, _)| m.deg(var) == 0)
                .cloned()
                .collect(),
        )
    }

    /// Swaps / permutes variables: variable `i` becomes `perm[i]`.
    pub fn rename(&self, perm: &[usize; NVARS]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::ONE;
            for i in 0..NVARS {
                if m.0[i] != 0 {
                    out.0[perm[i]] += m.0[i];
                }
            }
            (out, c.clone())
        }))
    }

    /// `v := v^n`.
    pub fn stretch_var(&self, var: usize, n: u16) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut out = *m;
            out.0[var] = out.0[var]
                .checked_mul(n)
                .expect("monomial exponent overflow");
            (out, c.clone())
        }))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let c = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.mul_impl(rhs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        self.add_impl(&rhs, false)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self.add_impl(&rhs, true)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self.mul_impl(&rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}
