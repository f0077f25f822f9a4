//! Products of polynomial factors with integer exponents.
//!
//! A [`Term`] is `coeff * x^mono * prod_a a^e` where every factor `a` is primitive, has
//! positive leading coefficient, no monomial content and is not constant. Keeping the
//! factorization explicit makes residues, substitutions and expansions cheap; the only
//! gcd computations happen when coefficients are finally summed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, Poly, NVARS, V};
use crate::ratfun::{scaled_inverse, MvRatFun};
use crate::scalar::ScalarExpr;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub coeff: BigRational,
    pub mono: [i32; NVARS],
    pub factors: BTreeMap<Poly, i32>,
}

/// `p = sign*content * monomial * primitive`.
fn split(p: &Poly) -> (BigInt, Monomial, Poly) {
    let m = p.monomial_content();
    let p = if m.is_one() {
        p.clone()
    } else {
        p.div_monomial(&m)
    };
    let mut c = p.content();
    if p.lead_coeff().is_negative() {
        c = -c;
    }
    let prim = if c.is_one() { p } else { p.div_scalar(&c) };
    (c, m, prim)
}

fn ipow(c: &BigInt, e: i32) -> BigRational {
    let base = BigRational::from_integer(c.clone());
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Truncated product of two series with polynomial coefficients.
fn mul_trunc(a: &[Poly], b: &[Poly], len: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

fn pow_trunc(a: &[Poly], e: u32, len: usize) -> Vec<Poly> {
    let mut acc = vec![Poly::zero(); len];
    acc[0] = Poly::one();
    for _ in 0..e {
        acc = mul_trunc(&acc, a, len);
    }
    acc
}

fn powers(p: &Poly, n: usize) -> Vec<Poly> {
    let mut out = vec![Poly::one()];
    for i in 1..=n {
        out.push(&out[i - 1] * p);
    }
    out
}

impl Term {
    pub fn one() -> Self {
        Term {
            coeff: BigRational::one(),
            mono: [0; NVARS],
            factors: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul_mono(&mut self, var: usize, e: i32) {
        self.mono[var] += e;
    }

    /// Multiplies by `p^e`; `p` must be nonzero.
    pub fn mul_factor(&mut self, p: &Poly, e: i32) {
        assert!(!p.is_zero(), "zero factor");
        if e == 0 {
            return;
        }
        if let Some(c) = p.as_constant() {
            self.coeff *= ipow(&c, e);
            return;
        }
        let (c, m, prim) = split(p);
        self.coeff *= ipow(&c, e);
        for i in 0..NVARS {
            self.mono[i] += e * m.deg(i) as i32;
        }
        if prim.is_one() {
            return;
        }
        self.insert_atom(prim, e);
    }

    fn insert_atom(&mut self, atom: Poly, e: i32) {
        let slot = self.factors.entry(atom).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.retain(|_, x| *x != 0);
        }
    }

    pub fn mul_scalar(&mut self, x: &ScalarExpr) {
        if x.is_zero() {
            self.coeff = BigRational::zero();
            return;
        }
        self.mul_factor(x.numer(), 1);
        self.mul_factor(x.denom(), -1);
    }

    pub fn mul(&self, other: &Term) -> Term {
        let mut out = self.clone();
        out.coeff *= &other.coeff;
        for i in 0..NVARS {
            out.mono[i] += other.mono[i];
        }
        for (a, &e) in &other.factors {
            out.insert_atom(a.clone(), e);
        }
        out
    }

    /// Residue of `term * dx/x` at `x = y/q` (`x`, `y` variable indices), with the
    /// orientation sign `-1`.
    ///
    /// Writes `x = (y + s)/q` with `s` stored in the slot of `x`, finds the pole order `k`
    /// from the `s`-adic valuations of the factors, and extracts the coefficient of
    /// `s^(k-1)` of the regular part. Returns `None` when there is no pole.
    pub fn residue(&self, x: usize, y: usize) -> Option<Term> {
        let mut out = Term {
            coeff: -self.coeff.clone(),
            mono: self.mono,
            factors: BTreeMap::new(),
        };
        // dx = ds / q
        out.mono[V] -= 2;
        let mx = self.mono[x] - 1;
        out.mono[x] = 0;
        let y_plus_s = &Poly::var(y) + &Poly::var(x);
        let q = Monomial::var(V, 2);
        // (regular part coefficients b_0.., exponent)
        let mut local: Vec<(Vec<Poly>, i32)> = Vec::new();
        let mut order: i32 = 0;
        if mx != 0 {
            out.mono[V] -= 2 * mx;
            local.push((y_plus_s.coeffs_in(x), mx));
        }
        for (a, &e) in &self.factors {
            if !a.contains_var(x) {
                out.factors.insert(a.clone(), e);
                continue;
            }
            let (p, k) = a.substitute_fraction(x, &y_plus_s, &q);
            out.mono[V] -= 2 * k as i32 * e;
            let cs = p.coeffs_in(x);
            let nu = cs
                .iter()
                .position(|c| !c.is_zero())
                .expect("nonzero factor");
            order += e * nu as i32;
            local.push((cs[nu..].to_vec(), e));
        }
        let k = -order;
        if k <= 0 {
            return None;
        }
        let k = k as usize;
        if k == 1 {
            for (b, e) in &local {
                out.mul_factor(&b[0], *e);
            }
            return Some(out);
        }
        let mut series = vec![Poly::zero(); k];
        series[0] = Poly::one();
        for (b, e) in &local {
            let ser = if *e > 0 {
                pow_trunc(b, *e as u32, k)
            } else {
                let chat = scaled_inverse(b, k);
                let d = pow_trunc(&chat, (-*e) as u32, k);
                let b0p = powers(&b[0], k);
                out.mul_factor(&b[0], *e - (k as i32 - 1));
                d.iter()
                    .enumerate()
                    .map(|(m, dm)| dm * &b0p[k - 1 - m])
                    .collect()
            };
            series = mul_trunc(&series, &ser, k);
        }
        let top = &series[k - 1];
        if top.is_zero() {
            return None;
        }
        out.mul_factor(top, 1);
        Some(out)
    }

    /// Simultaneous substitution `var_i := z^(p_i) q^(-c_i)` into the single variable
    /// `z` (which must be one of the `var_i` or absent). Returns `None` if the term
    /// vanishes identically.
    pub fn collapse(&self, z: usize, images: &[(usize, u16, u16)]) -> Result<Option<Term>> {
        let mut out = Term {
            coeff: self.coeff.clone(),
            mono: self.mono,
            factors: BTreeMap::new(),
        };
        // z's own image first: it may only be a pure power (c = 0)
        let own = images.iter().find(|im| im.0 == z);
        if let Some(&(_, p, c)) = own {
            assert_eq!(c, 0, "the collapse variable maps to a pure power");
            out.mono[z] *= p as i32;
        }
        for &(var, p, c) in images {
            if var == z {
                continue;
            }
            let m = out.mono[var];
            out.mono[var] = 0;
            out.mono[z] += p as i32 * m;
            out.mono[V] -= 2 * c as i32 * m;
        }
        let zp = Poly::var(z);
        for (a, &e) in &self.factors {
            let mut poly = match own {
                Some(&(_, p, _)) if p != 1 => a.stretch_var(z, p),
                _ => a.clone(),
            };
            for &(var, p, c) in images {
                if var == z || !poly.contains_var(var) {
                    continue;
                }
                let (sub, k) =
                    poly.substitute_fraction(var, &zp.pow(p as u32), &Monomial::var(V, 2 * c));
                out.mono[V] -= 2 * c as i32 * k as i32 * e;
                poly = sub;
            }
            if poly.is_zero() {
                if e > 0 {
                    return Ok(None);
                }
                return Err(Error::Pole("factor vanishes after substitution".into()));
            }
            out.mul_factor(&poly, e);
        }
        Ok(Some(out))
    }

    /// Laurent coefficients in `z` (all other variables scalar) of orders
    /// `mono[z]..=upto`, as unreduced fractions.
    pub fn expand(&self, z: usize, upto: i64) -> Vec<(i64, Frac)> {
        let mz = self.mono[z] as i64;
        if upto < mz || self.is_zero() {
            return Vec::new();
        }
        let len = (upto - mz + 1) as usize;
        let mut base = Frac::unit();
        base.num = Poly::constant(self.coeff.numer().clone());
        base.den_int = self.coeff.denom().clone();
        for i in 0..NVARS {
            if i == z || self.mono[i] == 0 {
                continue;
            }
            if self.mono[i] > 0 {
                base.num = base
                    .num
                    .mul_monomial(&Monomial::var(i, self.mono[i] as u16));
            } else {
                base.add_den_atom(Poly::var(i), (-self.mono[i]) as u32);
            }
        }
        // running numerators R_j with coefficient R_j / G^j
        let mut r = vec![Poly::zero(); len];
        r[0] = Poly::one();
        let mut g = Poly::one();
        let mut neg_bases: Vec<Poly> = Vec::new();
        for (a, &e) in &self.factors {
            if !a.contains_var(z) {
                if e > 0 {
                    base.num = &base.num * &a.pow(e as u32);
                } else {
                    base.add_den_atom(a.clone(), (-e) as u32);
                }
                continue;
            }
            let cs = a.coeffs_in(z);
            debug_assert!(!cs[0].is_zero());
            let gp = powers(&g, len);
            if e > 0 {
                let ser = pow_trunc(&cs, e as u32, len);
                r = (0..len)
                    .map(|j| {
                        let mut acc = Poly::zero();
                        for m in 0..=j {
                            if !ser[m].is_zero() && !r[j - m].is_zero() {
                                acc = &acc + &(&(&r[j - m] * &gp[m]) * &ser[m]);
                            }
                        }
                        acc
                    })
                    .collect();
            } else {
                let p = (-e) as u32;
                let chat = scaled_inverse(&cs, len);
                let d = pow_trunc(&chat, p, len);
                let bp = powers(&cs[0], len);
                r = (0..len)
                    .map(|j| {
                        let mut acc = Poly::zero();
                        for m in 0..=j {
                            if !d[m].is_zero() && !r[j - m].is_zero() {
                                acc = &acc + &(&(&(&r[j - m] * &gp[m]) * &d[m]) * &bp[j - m]);
                            }
                        }
                        acc
                    })
                    .collect();
                g = &g * &cs[0];
                neg_bases.push(cs[0].clone());
                base.add_den_poly(&cs[0], p);
            }
        }
        let mut out = Vec::with_capacity(len);
        for (j, rj) in r.into_iter().enumerate() {
            if rj.is_zero() {
                continue;
            }
            let mut f = base.clone();
            f.num = &f.num * &rj;
            for b in &neg_bases {
                f.add_den_poly(b, j as u32);
            }
            out.push((mz + j as i64, f));
        }
        out
    }

    /// The term as a single rational function (used by cross-checks and the public
    /// per-partition API).
    pub fn to_ratfun(&self) -> MvRatFun {
        let mut num = Poly::constant(self.coeff.numer().clone());
        let mut den = Poly::constant(self.coeff.denom().clone());
        for i in 0..NVARS {
            let e = self.mono[i];
            if e > 0 {
                num = num.mul_monomial(&Monomial::var(i, e as u16));
            } else if e < 0 {
                den = den.mul_monomial(&Monomial::var(i, (-e) as u16));
            }
        }
        for (a, &e) in &self.factors {
            if e > 0 {
                num = &num * &a.pow(e as u32);
            } else {
                den = &den * &a.pow((-e) as u32);
            }
        }
        MvRatFun::new(num, den).expect("nonzero denominator")
    }
}

/// `num / (den_int * prod atom^k)` with atoms primitive, positive lead, not constant.
#[derive(Clone, Debug)]
pub(crate) struct Frac {
    pub num: Poly,
    pub den_int: BigInt,
    pub den_atoms: BTreeMap<Poly, u32>,
}

impl Frac {
    fn unit() -> Self {
        Frac {
            num: Poly::one(),
            den_int: BigInt::one(),
            den_atoms: BTreeMap::new(),
        }
    }

    fn add_den_atom(&mut self, atom: Poly, k: u32) {
        if k > 0 {
            *self.den_atoms.entry(atom).or_insert(0) += k;
        }
    }

    /// Divides by `p^k` for an arbitrary nonzero polynomial `p`.
    fn add_den_poly(&mut self, p: &Poly, k: u32) {
        if k == 0 {
            return;
        }
        let (c, m, prim) = split(p);
        let ck = num_traits::pow(c, k as usize);
        if ck.is_negative() {
            self.num = -&self.num;
        }
        self.den_int *= ck.abs();
        for i in 0..NVARS {
            let e = m.deg(i);
            if e > 0 {
                self.add_den_atom(Poly::var(i), e as u32 * k);
            }
        }
        if !prim.is_one() {
            self.add_den_atom(prim, k);
        }
    }
}

/// Exact sum of fractions over the least common factored denominator, reduced.
pub(crate) fn sum_fracs(fracs: &[Frac]) -> ScalarExpr {
    if fracs.is_empty() {
        return ScalarExpr::zero();
    }
    let mut lcm_int = BigInt::one();
    let mut lcm_atoms: BTreeMap<Poly, u32> = BTreeMap::new();
    for f in fracs {
        lcm_int = lcm_int.lcm(&f.den_int);
        for (a, &k) in &f.den_atoms {
            let slot = lcm_atoms.entry(a.clone()).or_insert(0);
            *slot = (*slot).max(k);
        }
    }
    let mut num = Poly::zero();
    for f in fracs {
        let mut t = f.num.scale(&(&lcm_int / &f.den_int));
        for (a, &k) in &lcm_atoms {
            let have = f.den_atoms.get(a).copied().unwrap_or(0);
            if k > have {
                t = &t * &a.pow(k - have);
            }
        }
        num = &num + &t;
    }
    if num.is_zero() {
        return ScalarExpr::zero();
    }
    // cancel known factors before the final gcd
    let mut den = Poly::constant(lcm_int.clone());
    let c = num.content().gcd(&lcm_int);
    if !c.is_one() {
        num = num.div_scalar(&c);
        den = Poly::constant(&lcm_int / &c);
    }
    for (a, &k) in &lcm_atoms {
        let mut k = k;
        while k > 0 {
            match num.div_exact(a) {
                Some(qt) => {
                    num = qt;
                    k -= 1;
                }
                None => break,
            }
        }
        if k > 0 {
            den = &den * &a.pow(k);
        }
    }
    ScalarExpr::from_fraction(num, den).expect("nonzero denominator")
}
