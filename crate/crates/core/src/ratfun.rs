//! Rational functions in `z1..z7` over the scalar field, kept as one reduced fraction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::poly::{gcd, parse_fraction, var_name, Monomial, Poly, SCALAR_MASK};
use crate::scalar::ScalarExpr;
use crate::{Error, Result};

/// Reduced fraction of integer polynomials in `v, e_k, z_i`; denominator with positive
/// leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MvRatFun {
    num: Poly,
    den: Poly,
}

impl MvRatFun {
    pub fn zero() -> Self {
        MvRatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        MvRatFun {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        MvRatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(var: usize) -> Self {
        Self::from_poly(Poly::var(var))
    }

    pub fn scalar(x: &ScalarExpr) -> Self {
        MvRatFun {
            num: x.numer().clone(),
            den: x.denom().clone(),
        }
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        if den.lead_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        MvRatFun { num, den }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (num, den) = parse_fraction(s)?;
        Ok(MvRatFun { num, den })
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mask(&self) -> u16 {
        self.num.mask() | self.den.mask()
    }

    /// The value as a scalar if no `z` variable occurs.
    pub fn as_scalar(&self) -> Option<ScalarExpr> {
        if self.mask() & !SCALAR_MASK != 0 {
            return None;
        }
        ScalarExpr::from_fraction(self.num.clone(), self.den.clone()).ok()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let k = k as u32;
        Ok(MvRatFun {
            num: self.num.pow(k),
            den: self.den.pow(k),
        })
    }

    /// `var := expr`. Fails if the denominator vanishes identically.
    pub fn substitute(&self, var: usize, expr: &MvRatFun) -> Result<Self> {
        if expr.mask() & (1 << var) != 0 {
            return Err(Error::Invalid(format!(
                "substitution reintroduces {}",
                var_name(var)
            )));
        }
        let (n, kn) = self.num.substitute_homogeneous(var, &expr.num, &expr.den);
        let (d, kd) = self.den.substitute_homogeneous(var, &expr.num, &expr.den);
        if d.is_zero() {
            return Err(Error::Pole(format!(
                "substituting {} = {expr}",
                var_name(var)
            )));
        }
        // n / b^kn divided by d / b^kd
        let (n, d) = if kd >= kn {
            (&n * &expr.den.pow((kd - kn) as u32), d)
        } else {
            (n, &d * &expr.den.pow((kn - kd) as u32))
        };
        Ok(Self::reduce(n, d))
    }

    /// Residue at `var = center` (coefficient of `(var - center)^-1`), of `f` or, with
    /// `with_dlog`, of `f / var`.
    pub fn residue_at(&self, var: usize, center: &MvRatFun, with_dlog: bool) -> Result<Self> {
        if center.mask() & (1 << var) != 0 {
            return Err(Error::Invalid(
                "residue center depends on its variable".into(),
            ));
        }
        let f = if with_dlog {
            self * &MvRatFun::var(var).inv()?
        } else {
            self.clone()
        };
        if f.is_zero() {
            return Ok(Self::zero());
        }
        // var = center + t, with t stored in the slot of var
        let a = &center.num + &(&center.den * &Poly::var(var));
        let (n, kn) = f.num.substitute_homogeneous(var, &a, &center.den);
        let (d, kd) = f.den.substitute_homogeneous(var, &a, &center.den);
        if d.is_zero() {
            return Err(Error::Pole("denominator vanishes identically".into()));
        }
        let nc = n.coeffs_in(var);
        let dc = d.coeffs_in(var);
        let vn = nc.iter().position(|c| !c.is_zero()).expect("nonzero");
        let vd = dc.iter().position(|c| !c.is_zero()).expect("nonzero");
        if vd <= vn {
            return Ok(Self::zero());
        }
        let k = vd - vn;
        let nc = &nc[vn..];
        let dc = &dc[vd..];
        // 1/D = sum_m chat_m t^m / d0^(m+1)
        let chat = scaled_inverse(dc, k);
        let d0 = &dc[0];
        let mut acc = Poly::zero();
        let mut d0_pow = Poly::one();
        for i in 0..k {
            if i < nc.len() && !nc[i].is_zero() {
                acc = &acc + &(&(&nc[i] * &chat[k - 1 - i]) * &d0_pow);
            }
            d0_pow = &d0_pow * d0;
        }
        // value = (acc / d0^k) * b^(kd - kn)
        let b = &center.den;
        let (num, den) = if kd >= kn {
            (&acc * &b.pow((kd - kn) as u32), d0.pow(k as u32))
        } else {
            (acc, &d0.pow(k as u32) * &b.pow((kn - kd) as u32))
        };
        Ok(Self::reduce(num, den))
    }

    /// Laurent expansion in `var` at 0 over the other variables: returns `(m, c)` with
    /// `f = sum_i c[i] var^(m + i) + O(var^(upto + 1))`.
    pub fn laurent_at_zero(&self, var: usize, upto: i64) -> Result<(i64, Vec<MvRatFun>)> {
        if self.is_zero() {
            return Ok((0, Vec::new()));
        }
        let nc = self.num.coeffs_in(var);
        let dc = self.den.coeffs_in(var);
        let vn = nc.iter().position(|c| !c.is_zero()).expect("nonzero");
        let vd = dc.iter().position(|c| !c.is_zero()).expect("nonzero");
        let m = vn as i64 - vd as i64;
        if upto < m {
            return Ok((m, Vec::new()));
        }
        let len = (upto - m + 1) as usize;
        let nc = &nc[vn..];
        let dc = &dc[vd..];
        let chat = scaled_inverse(dc, len);
        let d0 = &dc[0];
        let mut out = Vec::with_capacity(len);
        for j in 0..len {
            // coefficient j of N/D = sum_i n_i chat_(j-i) d0^i / d0^(j+1)
            let mut acc = Poly::zero();
            let mut d0_pow = Poly::one();
            for i in 0..=j {
                if i < nc.len() && !nc[i].is_zero() {
                    acc = &acc + &(&(&nc[i] * &chat[j - i]) * &d0_pow);
                }
                d0_pow = &d0_pow * d0;
            }
            out.push(Self::reduce(acc, d0.pow(j as u32 + 1)));
        }
        Ok((m, out))
    }

    /// Taylor coefficients of a function of one `z` variable at 0, orders `0..=order`.
    pub fn expand_at_zero(&self, var: usize, order: usize) -> Result<Vec<ScalarExpr>> {
        if self.mask() & !SCALAR_MASK & !(1 << var) != 0 {
            return Err(Error::Invalid(
                "expansion needs a function of one variable".into(),
            ));
        }
        let (m, coeffs) = self.laurent_at_zero(var, order as i64)?;
        if m < 0 {
            return Err(Error::Pole(format!(
                "order {} pole at {} = 0",
                -m,
                var_name(var)
            )));
        }
        let mut out = vec![ScalarExpr::zero(); order + 1];
        for (i, c) in coeffs.into_iter().enumerate() {
            let k = m as usize + i;
            if k <= order {
                out[k] = c.as_scalar().expect("scalar coefficient");
            }
        }
        Ok(out)
    }

    /// Substitutes integer values for `e_k` (as [`ScalarExpr::substitute_e`]).
    pub fn substitute_e(&self, e_vals: &[num_bigint::BigInt]) -> Result<Self> {
        let mut images: [Option<Poly>; crate::poly::NVARS] = Default::default();
        for (i, val) in e_vals.iter().enumerate() {
            images[i + 1] = Some(Poly::constant(val.clone()));
        }
        let d = self.den.substitute_all(&images);
        if d.is_zero() {
            return Err(Error::SpecializationPole);
        }
        Ok(Self::reduce(self.num.substitute_all(&images), d))
    }

    /// Permutes `z` variables: `z_i` becomes `z_perm[i-1]`.
    pub fn permute_z(&self, perm: &[usize]) -> Self {
        let mut map = [0usize; crate::poly::NVARS];
        for (i, slot) in map.iter_mut().enumerate() {
            *slot = i;
        }
        for (i, &p) in perm.iter().enumerate() {
            map[crate::poly::z_var(i + 1)] = crate::poly::z_var(p);
        }
        Self::reduce(self.num.rename(&map), self.den.rename(&map))
    }

    /// Whether only `z` variables listed in `vars` occur.
    pub fn depends_only_on(&self, vars: &[usize]) -> bool {
        let allowed: u16 = vars.iter().fold(SCALAR_MASK, |m, &v| m | (1 << v));
        self.mask() & !allowed == 0
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_poly(Poly::monomial(m, 1))
    }
}

/// Polynomials `chat_m` with `1/D(t) = sum_m chat_m t^m / d0^(m+1)` for `m < len`.
pub(crate) fn scaled_inverse(dc: &[Poly], len: usize) -> Vec<Poly> {
    let d0 = &dc[0];
    let mut chat: Vec<Poly> = Vec::with_capacity(len);
    chat.push(Poly::one());
    for m in 1..len {
        let mut acc = Poly::zero();
        let mut d0_pow = Poly::one();
        for i in 1..=m {
            if i < dc.len() && !dc[i].is_zero() {
                acc = &acc - &(&(&dc[i] * &chat[m - i]) * &d0_pow);
            }
            if i < m {
                d0_pow = &d0_pow * d0;
            }
        }
        chat.push(acc);
    }
    chat
}

fn add_impl(a: &MvRatFun, b: &MvRatFun, negate: bool) -> MvRatFun {
    let bn = if negate { -&b.num } else { b.num.clone() };
    if a.den == b.den {
        return MvRatFun::reduce(&a.num + &bn, a.den.clone());
    }
    let g = gcd(&a.den, &b.den);
    let ad = a.den.div_exact(&g).expect("gcd divides");
    let bd = b.den.div_exact(&g).expect("gcd divides");
    MvRatFun::reduce(&(&a.num * &bd) + &(&bn * &ad), &ad * &b.den)
}

impl<'a> Add<&'a MvRatFun> for &'a MvRatFun {
    type Output = MvRatFun;
    fn add(self, rhs: &'a MvRatFun) -> MvRatFun {
        add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a MvRatFun> for &'a MvRatFun {
    type Output = MvRatFun;
    fn sub(self, rhs: &'a MvRatFun) -> MvRatFun {
        add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a MvRatFun> for &'a MvRatFun {
    type Output = MvRatFun;
    fn mul(self, rhs: &'a MvRatFun) -> MvRatFun {
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let cut = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        if num.is_zero() {
            return MvRatFun::zero();
        }
        let (num, den) = if den.lead_coeff().is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        MvRatFun { num, den }
    }
}

impl Neg for &MvRatFun {
    type Output = MvRatFun;
    fn neg(self) -> MvRatFun {
        MvRatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for MvRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for MvRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::z_var;

    fn f(s: &str) -> MvRatFun {
        MvRatFun::parse(s).unwrap()
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(
            f("z2/z1").substitute(z_var(2), &f("z1/q")).unwrap(),
            f("v^-2")
        );
        assert!(matches!(
            f("1/(1 - z1)").substitute(z_var(1), &f("1")),
            Err(Error::Pole(_))
        ));
        assert_eq!(
            f("z1*z2").substitute(z_var(2), &f("z1^2")).unwrap(),
            f("z1^3")
        );
    }

    #[test]
    fn residue_examples() {
        let c = f("e1 + 3");
        assert_eq!(
            f("1/(z1 - e1 - 3)")
                .residue_at(z_var(1), &c, false)
                .unwrap(),
            MvRatFun::one()
        );
        let r = f("1/(1 - q*z2/z1)")
            .residue_at(z_var(2), &f("z1/q"), true)
            .unwrap();
        assert_eq!(r, f("-1"));
        assert!(f("1/(z1 - e1 - 3)^2")
            .residue_at(z_var(1), &c, false)
            .unwrap()
            .is_zero());
        // double pole with a regular cofactor: d/dz (z^2+1) at z=2
        let r = f("(z1^2 + 1)/(z1 - 2)^2")
            .residue_at(z_var(1), &f("2"), false)
            .unwrap();
        assert_eq!(r, f("4"));
    }

    #[test]
    fn expansion_examples() {
        let z = z_var(1);
        let ones: Vec<ScalarExpr> = vec![ScalarExpr::one(); 4];
        assert_eq!(f("1/(1 - z)").expand_at_zero(z, 3).unwrap(), ones);
        let got = f("1/((1 - z)*(1 - q*z))").expand_at_zero(z, 2).unwrap();
        let want: Vec<ScalarExpr> = ["1", "1 + v^2", "1 + v^2 + v^4"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(got, want);
        let got = f("z/(1 - z)").expand_at_zero(z, 2).unwrap();
        assert_eq!(
            got,
            vec![ScalarExpr::zero(), ScalarExpr::one(), ScalarExpr::one()]
        );
        assert!(f("1/z").expand_at_zero(z, 2).is_err());
    }
}
