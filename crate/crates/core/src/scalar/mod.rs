//! Exact scalars: rational functions in `v` (with `v^2 = q`) and the curve parameters
//! `e1..e8`.

mod params;
mod quad;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::poly::{gcd, parse_fraction, var_name, Poly, SCALAR_MASK, V};
use crate::Error;

pub use params::ParamSpace;
pub use quad::QuadNum;

/// Reduced fraction `num / den` of integer polynomials in `v, e1..e8`.
///
/// Canonical form: `gcd(num, den) = 1` (integer content included) and the leading
/// coefficient of `den` is positive. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarExpr {
    num: Poly,
    den: Poly,
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        ScalarExpr {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        ScalarExpr {
            num: Poly::constant(n),
            den: Poly::one(),
        }
    }

    pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, Error> {
        Self::from_fraction(Poly::constant(n), Poly::constant(d))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_fraction(
            Poly::constant(r.numer().clone()),
            Poly::constant(r.denom().clone()),
        )
        .expect("rational has nonzero denominator")
    }

    /// `v`, the square root of `q`.
    pub fn v() -> Self {
        ScalarExpr {
            num: Poly::var(V),
            den: Poly::one(),
        }
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        Self::v().pow(2)
    }

    /// `q^k` for any integer `k` (`v^(2k)`).
    pub fn q_pow(k: i64) -> Self {
        Self::v().pow(2 * k)
    }

    pub fn from_poly(p: Poly) -> Self {
        debug_assert!(p.mask() & !SCALAR_MASK == 0);
        ScalarExpr {
            num: p,
            den: Poly::one(),
        }
    }

    /// Normalizes a fraction of scalar polynomials.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        debug_assert!((num.mask() | den.mask()) & !SCALAR_MASK == 0);
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return ScalarExpr { num, den };
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
        ScalarExpr { num, den }
    }

    /// Builds from a fraction already known to be coprime; fixes the sign only.
    pub(crate) fn from_coprime(mut num: Poly, mut den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.lead_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        ScalarExpr { num, den }
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

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Rational value if the expression has no variables.
    pub fn as_rational(&self) -> Option<BigRational> {
        Some(BigRational::new(
            self.num.as_constant()?,
            self.den.as_constant()?,
        ))
    }

    /// Variables that occur, as a bit mask.
    pub fn mask(&self) -> u16 {
        self.num.mask() | self.den.mask()
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert (panics on `0^-k`).
    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().expect("negative power of zero").pow(-k);
        }
        let k = u32::try_from(k).expect("exponent fits in u32");
        ScalarExpr {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    /// Applies a ring endomorphism given by images of the variables.
    pub(crate) fn map_vars(
        &self,
        images: &[Option<Poly>; crate::poly::NVARS],
    ) -> Result<Self, Error> {
        Self::from_fraction(
            self.num.substitute_all(images),
            self.den.substitute_all(images),
        )
    }

    /// Applies an injective finite ring endomorphism (such as an Adams operation), which
    /// maps coprime pairs to coprime pairs, so no gcd is needed.
    pub(crate) fn map_vars_coprime(&self, images: &[Option<Poly>; crate::poly::NVARS]) -> Self {
        Self::from_coprime(
            self.num.substitute_all(images),
            self.den.substitute_all(images),
        )
    }

    /// Substitutes integer values for `e1..e_k` (`e_vals[i]` is `e_{i+1}`), keeping `v`.
    pub fn substitute_e(&self, e_vals: &[BigInt]) -> Result<Self, Error> {
        self.check_e_arity(e_vals.len())?;
        let mut images: [Option<Poly>; crate::poly::NVARS] = Default::default();
        for (i, val) in e_vals.iter().enumerate() {
            images[i + 1] = Some(Poly::constant(val.clone()));
        }
        let num = self.num.substitute_all(&images);
        let den = self.den.substitute_all(&images);
        if den.is_zero() {
            return Err(Error::SpecializationPole);
        }
        Ok(Self::reduce(num, den))
    }

    fn check_e_arity(&self, n: usize) -> Result<(), Error> {
        let mask = self.mask();
        for k in n + 1..=crate::poly::MAX_E {
            if mask & (1 << k) != 0 {
                return Err(Error::UnknownParameter(var_name(k)));
            }
        }
        Ok(())
    }

    /// Numeric value at `v = sqrt(q0)` and `e_k = e_vals[k-1]`.
    pub fn eval(&self, q0: u64, e_vals: &[BigInt]) -> Result<QuadNum, Error> {
        self.check_e_arity(e_vals.len())?;
        let d = QuadNum::eval_poly(&self.den, q0, e_vals);
        if d.is_zero() {
            return Err(Error::SpecializationPole);
        }
        let n = QuadNum::eval_poly(&self.num, q0, e_vals);
        Ok(n.div(&d).expect("nonzero denominator"))
    }

    /// Canonical text form: `num` or `(num)/(den)`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

impl FromStr for ScalarExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let (num, den) = parse_fraction(s)?;
        if (num.mask() | den.mask()) & !SCALAR_MASK != 0 {
            return Err(Error::UnknownParameter(s.to_string()));
        }
        Ok(ScalarExpr { num, den })
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Default for ScalarExpr {
    fn default() -> Self {
        Self::zero()
    }
}

fn add_impl(a: &ScalarExpr, b: &ScalarExpr) -> ScalarExpr {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        return ScalarExpr::reduce(&a.num + &b.num, a.den.clone());
    }
    if a.den.is_one() {
        return ScalarExpr::from_coprime(&(&a.num * &b.den) + &b.num, b.den.clone());
    }
    if b.den.is_one() {
        return ScalarExpr::from_coprime(&a.num + &(&b.num * &a.den), a.den.clone());
    }
    let g = gcd(&a.den, &b.den);
    if g.is_one() {
        let num = &(&a.num * &b.den) + &(&b.num * &a.den);
        return ScalarExpr::from_coprime(num, &a.den * &b.den);
    }
    let ad = a.den.div_exact(&g).expect("gcd divides");
    let bd = b.den.div_exact(&g).expect("gcd divides");
    let t = &(&a.num * &bd) + &(&b.num * &ad);
    if t.is_zero() {
        return ScalarExpr::zero();
    }
    let g2 = gcd(&t, &g);
    let den = &ad * &b.den;
    if g2.is_one() {
        ScalarExpr::from_coprime(t, den)
    } else {
        ScalarExpr::from_coprime(
            t.div_exact(&g2).expect("gcd divides"),
            den.div_exact(&g2).expect("gcd divides"),
        )
    }
}

fn mul_impl(a: &ScalarExpr, b: &ScalarExpr) -> ScalarExpr {
    if a.is_zero() || b.is_zero() {
        return ScalarExpr::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return ScalarExpr {
            num: &a.num * &b.num,
            den: Poly::one(),
        };
    }
    let g1 = gcd(&a.num, &b.den);
    let g2 = gcd(&b.num, &a.den);
    let cut = |p: &Poly, g: &Poly| {
        if g.is_one() {
            p.clone()
        } else {
            p.div_exact(g).expect("gcd divides")
        }
    };
    let num = &cut(&a.num, &g1) * &cut(&b.num, &g2);
    let den = &cut(&a.den, &g2) * &cut(&b.den, &g1);
    ScalarExpr::from_coprime(num, den)
}

impl<'a> Add<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &'a ScalarExpr) -> ScalarExpr {
        add_impl(self, rhs)
    }
}

impl<'a> Sub<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &'a ScalarExpr) -> ScalarExpr {
        add_impl(self, &-rhs)
    }
}

impl<'a> Mul<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &'a ScalarExpr) -> ScalarExpr {
        mul_impl(self, rhs)
    }
}

/// Panics on division by zero; use [`ScalarExpr::checked_div`] to handle it.
impl<'a> Div<&'a ScalarExpr> for &'a ScalarExpr {
    type Output = ScalarExpr;
    fn div(self, rhs: &'a ScalarExpr) -> ScalarExpr {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Add for ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: ScalarExpr) -> ScalarExpr {
        add_impl(&self, &rhs)
    }
}

impl Sub for ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: ScalarExpr) -> ScalarExpr {
        add_impl(&self, &-rhs)
    }
}

impl Mul for ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: ScalarExpr) -> ScalarExpr {
        mul_impl(&self, &rhs)
    }
}

impl Div for ScalarExpr {
    type Output = ScalarExpr;
    fn div(self, rhs: ScalarExpr) -> ScalarExpr {
        &self / &rhs
    }
}

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl std::iter::Sum for ScalarExpr {
    fn sum<I: Iterator<Item = ScalarExpr>>(iter: I) -> Self {
        iter.fold(ScalarExpr::zero(), |a, b| a + b)
    }
}

impl From<i64> for ScalarExpr {
    fn from(n: i64) -> Self {
        ScalarExpr::int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ScalarExpr {
        x.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(s("(v^4 - 1)/(v^2 - 1)"), s("v^2 + 1"));
        let z = s("(v - v)/1");
        assert!(z.is_zero());
        assert!(z.denom().is_one());
        assert_eq!(s("((q - 1)*(q + 1)*e1)/(q - 1)"), s("(v^2 + 1)*e1"));
        assert_eq!(
            ScalarExpr::from_fraction(Poly::one(), Poly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn arithmetic_matches_parser() {
        let a = s("1/(q - 1)");
        let b = s("q/(q^2 - 1)");
        assert_eq!(&a + &b, s("(2*q + 1)/(q^2 - 1)"));
        assert_eq!(&a * &b, s("q/((q - 1)^2*(q + 1))"));
        assert_eq!(&(&a - &a), &ScalarExpr::zero());
        assert_eq!(&a / &b, s("(q + 1)/q"));
        assert_eq!(s("2/(4*v)"), s("1/(2*v)"));
        assert_eq!(s("-1/(1 - v)"), s("1/(v - 1)"));
    }

    #[test]
    fn display_roundtrip() {
        for x in ["(1 - e1 + q)/(q - 1)", "v^-3", "-7/12", "0", "e1*e2 - 3*v"] {
            let a = s(x);
            assert_eq!(s(&a.to_string()), a, "{x} -> {a}");
        }
        assert_eq!(s("1/(q - 1)").to_string(), "(1)/(v^2 - 1)");
    }

    #[test]
    fn specialize_examples() {
        let three = s("v^2 + 1").eval(2, &[]).unwrap();
        assert_eq!(three, QuadNum::from_int(3, 2));
        assert!(matches!(
            s("e1 - 2").eval(2, &[]),
            Err(Error::UnknownParameter(_))
        ));
        assert_eq!(
            s("1/(v^2 - 1)").eval(1, &[]),
            Err(Error::SpecializationPole)
        );
        let x = s("(v + 1)/(v - 1)").eval(2, &[]).unwrap();
        // (sqrt2 + 1)/(sqrt2 - 1) = 3 + 2 sqrt2
        assert_eq!(
            x,
            QuadNum::new(
                BigRational::from_integer(3.into()),
                BigRational::from_integer(2.into()),
                2
            )
        );
    }

    #[test]
    fn substitute_e_keeps_v() {
        let x = s("(1 - e1 + e2)/(q - 1)")
            .substitute_e(&[BigInt::from(1), BigInt::from(2)])
            .unwrap();
        assert_eq!(x, s("2/(q - 1)"));
    }
}
