//! Zeta-function data of a smooth projective curve over `F_q`.

use num_bigint::BigInt;
use num_traits::One;

use crate::poly::{z_var, Monomial, Poly, V};
use crate::ratfun::MvRatFun;
use crate::scalar::{ParamSpace, QuadNum, ScalarExpr};
use crate::{Error, Result};

/// Integer data of a concrete curve: field size and zeta numerator coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericData {
    pub q0: u64,
    /// Coefficients `c_0..c_2g` of `P(z)`, `c_0 = 1`.
    pub coeffs: Vec<BigInt>,
}

/// A curve of genus `g`. Computations are always symbolic in `v` and the free `e_k`;
/// numeric data, when present, is only used to evaluate results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    space: ParamSpace,
    numeric: Option<NumericData>,
}

fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|p| n.is_multiple_of(*p)).expect("n >= 2");
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

impl CurveModel {
    /// Symbolic curve with the Weil pairing imposed (free parameters `e1..eg`).
    pub fn symbolic(genus: usize) -> Result<Self> {
        Ok(CurveModel {
            space: ParamSpace::new(genus, true)?,
            numeric: None,
        })
    }

    /// Symbolic curve with all of `e1..e2g` independent.
    pub fn free(genus: usize) -> Result<Self> {
        Ok(CurveModel {
            space: ParamSpace::new(genus, false)?,
            numeric: None,
        })
    }

    /// The projective line (numeric data `q0`, `P = 1`).
    pub fn p1(q0: u64) -> Result<Self> {
        Self::numeric(0, q0, vec![BigInt::one()])
    }

    /// Concrete curve: `coeffs` are `c_0..c_2g` of `P(z)`; they must satisfy `c_0 = 1`
    /// and `c_{g+k} = q0^k c_{g-k}`.
    pub fn numeric(genus: usize, q0: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        if !is_prime_power(q0) {
            return Err(Error::Invalid(format!("q0 = {q0} is not a prime power")));
        }
        if coeffs.len() != 2 * genus + 1 {
            return Err(Error::Invalid(format!(
                "zeta numerator needs {} coefficients, got {}",
                2 * genus + 1,
                coeffs.len()
            )));
        }
        if !coeffs[0].is_one() {
            return Err(Error::Invalid("zeta numerator must have P(0) = 1".into()));
        }
        for k in 1..=genus {
            let want = &coeffs[genus - k] * num_traits::pow(BigInt::from(q0), k);
            if coeffs[genus + k] != want {
                return Err(Error::Invalid(format!(
                    "coefficients violate the functional equation at z^{}",
                    genus + k
                )));
            }
        }
        Ok(CurveModel {
            space: ParamSpace::new(genus, true)?,
            numeric: Some(NumericData { q0, coeffs }),
        })
    }

    pub fn genus(&self) -> usize {
        self.space.genus
    }

    pub fn space(&self) -> ParamSpace {
        self.space
    }

    pub fn numeric_data(&self) -> Option<&NumericData> {
        self.numeric.as_ref()
    }

    /// Values of the free parameters (`e_k = (-1)^k c_k`) in numeric mode.
    pub fn e_values(&self) -> Option<Vec<BigInt>> {
        let data = self.numeric.as_ref()?;
        Some(
            (1..=self.space.n_free())
                .map(|k| {
                    if k % 2 == 1 {
                        -data.coeffs[k].clone()
                    } else {
                        data.coeffs[k].clone()
                    }
                })
                .collect(),
        )
    }

    /// Numeric value of a scalar (numeric mode only).
    pub fn eval(&self, x: &ScalarExpr) -> Result<QuadNum> {
        let data = self
            .numeric
            .as_ref()
            .ok_or_else(|| Error::Invalid("curve has no numeric data".into()))?;
        x.eval(data.q0, &self.e_values().expect("numeric"))
    }

    /// `P(x)` as a polynomial in the variable `var`.
    pub fn p_poly(&self, var: usize) -> Poly {
        let terms: Vec<Poly> = (0..=2 * self.genus())
            .map(|k| self.space.p_coeff(k))
            .collect();
        Poly::from_coeffs_in(var, &terms)
    }

    /// `P(a/b) * b^(2g)`: the homogenized zeta numerator.
    pub fn p_hom(&self, a: &Poly, b: &Poly) -> Poly {
        let x = z_var(1);
        self.p_poly(x).substitute_homogeneous(x, a, b).0
    }

    /// `Z_X(z) = P(z)/((1-z)(1-qz))` in `z = z1`.
    pub fn zeta_closed(&self) -> MvRatFun {
        let z = z_var(1);
        let den = Poly::from_coeffs_in(z, &[Poly::one(), -Poly::one()])
            * Poly::from_coeffs_in(z, &[Poly::one(), -q_poly()]);
        MvRatFun::new(self.p_poly(z), den).expect("nonzero")
    }

    /// `z^(1-g) Z_X(z)`.
    pub fn zeta_tilde(&self) -> MvRatFun {
        let z = MvRatFun::var(z_var(1));
        &z.pow(1 - self.genus() as i64).expect("z nonzero") * &self.zeta_closed()
    }

    /// `Z_X(x)` at a scalar point; fails at the poles `x = 1`, `x = 1/q`.
    pub fn zeta_at(&self, x: &ScalarExpr) -> Result<ScalarExpr> {
        let one = ScalarExpr::one();
        let den = &(&one - x) * &(&one - &(&ScalarExpr::q() * x));
        if den.is_zero() {
            return Err(Error::Pole(format!("zeta function evaluated at {x}")));
        }
        let mut p = ScalarExpr::zero();
        let mut xk = ScalarExpr::one();
        for k in 0..=2 * self.genus() {
            p = &p + &(&ScalarExpr::from_poly(self.space.p_coeff(k)) * &xk);
            xk = &xk * x;
        }
        Ok(&p / &den)
    }

    /// `Z*_X(q^(-1-m))`: the zeta value for `m > 0`, the regularized residue
    /// `q^(1-g) [Pic0] / (q - 1)` for `m = 0`.
    pub fn zeta_star_at(&self, m: i64) -> Result<ScalarExpr> {
        match m {
            0 => {
                let qm1 = &ScalarExpr::q() - &ScalarExpr::one();
                Ok(&(&ScalarExpr::q_pow(1 - self.genus() as i64) * &self.pic_zero()) / &qm1)
            }
            m if m > 0 => self.zeta_at(&ScalarExpr::q_pow(-1 - m)),
            _ => Err(Error::Pole(format!("zeta star at q^{}", -1 - m))),
        }
    }

    /// `[X] = 1 + q - e1`.
    pub fn point_count(&self) -> ScalarExpr {
        ScalarExpr::from_poly(&(&Poly::one() + &q_poly()) - &self.space.e(1))
    }

    /// `[Pic0] = P(1)`.
    pub fn pic_zero(&self) -> ScalarExpr {
        let mut p = Poly::zero();
        for k in 0..=2 * self.genus() {
            p = &p + &self.space.p_coeff(k);
        }
        ScalarExpr::from_poly(p)
    }

    /// Coefficients `[S^d X]`, `d = 0..=n`, of the zeta series.
    pub fn zeta_series(&self, n: usize) -> Vec<ScalarExpr> {
        self.zeta_closed()
            .expand_at_zero(z_var(1), n)
            .expect("regular at 0")
    }

    /// Whether `x` only involves `v` and the free curve parameters.
    pub fn owns(&self, x: &ScalarExpr) -> bool {
        let free: u16 = (0..=self.space.n_free()).fold(0, |m, k| m | (1 << k));
        x.mask() & !free == 0
    }
}

pub(crate) fn q_poly() -> Poly {
    Poly::monomial(Monomial::var(V, 2), 1)
}
