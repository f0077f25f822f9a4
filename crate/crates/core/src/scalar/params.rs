use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use super::ScalarExpr;
use crate::poly::{e_var, Monomial, Poly, MAX_E, NVARS, V};
use crate::Error;

type Images = Arc<[Option<Poly>; NVARS]>;

/// Which curve parameters are free.
///
/// For a genus-`g` curve the zeta numerator is `P(z) = sum_k (-1)^k e_k z^k`, `k <= 2g`.
/// In the paired space (the default for actual curves) the functional equation
/// `e_{g+k} = q^k e_{g-k}` is imposed, so only `e1..eg` are free; in the free space all
/// of `e1..e2g` are independent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParamSpace {
    pub genus: usize,
    pub weil_paired: bool,
}

/// Largest supported genus (the variable layout has eight `e` slots).
pub const MAX_GENUS: usize = MAX_E / 2;

impl ParamSpace {
    pub fn new(genus: usize, weil_paired: bool) -> Result<Self, Error> {
        if genus > MAX_GENUS {
            return Err(Error::UnknownParameter(format!(
                "genus {genus} > {MAX_GENUS}"
            )));
        }
        Ok(ParamSpace { genus, weil_paired })
    }

    pub fn paired(genus: usize) -> Self {
        Self::new(genus, true).expect("genus in range")
    }

    pub fn free(genus: usize) -> Self {
        Self::new(genus, false).expect("genus in range")
    }

    /// Number of independent `e` variables.
    pub fn n_free(&self) -> usize {
        if self.weil_paired {
            self.genus
        } else {
            2 * self.genus
        }
    }

    /// `e_k` expressed in the free variables (`e_0 = 1`, zero beyond `2g`).
    pub fn e(&self, k: usize) -> Poly {
        let g = self.genus;
        if k == 0 {
            Poly::one()
        } else if k > 2 * g {
            Poly::zero()
        } else if self.weil_paired && k > g {
            let j = k - g;
            Poly::monomial(Monomial::var(V, 2 * j as u16), 1) * self.e(g - j)
        } else {
            Poly::var(e_var(k))
        }
    }

    /// Coefficient of `z^k` in the zeta numerator, `(-1)^k e_k`.
    pub fn p_coeff(&self, k: usize) -> Poly {
        let e = self.e(k);
        if k % 2 == 1 {
            -e
        } else {
            e
        }
    }

    /// Rewrites bound variables (`e_k` with `k` above the free range) via the pairing and
    /// rejects variables outside `e1..e2g`.
    pub fn reduce(&self, x: &ScalarExpr) -> Result<ScalarExpr, Error> {
        let mask = x.mask();
        for k in 2 * self.genus + 1..=MAX_E {
            if mask & (1 << k) != 0 {
                return Err(Error::UnknownParameter(format!("e{k}")));
            }
        }
        if !self.weil_paired || self.genus == 0 {
            return Ok(x.clone());
        }
        let mut images: [Option<Poly>; NVARS] = Default::default();
        let mut any = false;
        for k in self.genus + 1..=2 * self.genus {
            if mask & (1 << k) != 0 {
                images[k] = Some(self.e(k));
                any = true;
            }
        }
        if !any {
            return Ok(x.clone());
        }
        x.map_vars(&images)
    }

    /// Adams operation `psi_n`: `v -> v^n`, `e_k -> e_k(alpha_1^n, ..., alpha_2g^n)`.
    pub fn adams(&self, x: &ScalarExpr, n: i64) -> Result<ScalarExpr, Error> {
        if n < 1 {
            return Err(Error::AdamsIndex(n));
        }
        if n == 1 || x.mask() == 0 {
            return Ok(x.clone());
        }
        let images = self.adams_images(n as usize);
        Ok(x.map_vars_coprime(&images))
    }

    /// Images of `e_1..e_2g` under `psi_n` (index 0 holds `e_0 = 1`).
    pub fn adams_e(&self, n: usize) -> Vec<Poly> {
        let big_n = 2 * self.genus;
        let e: Vec<Poly> = (0..=big_n).map(|k| self.e(k)).collect();
        // power sums p_1 .. p_{n N} of the Weil numbers
        let mut p: Vec<Poly> = vec![Poly::zero()];
        for m in 1..=n * big_n {
            let mut acc = Poly::zero();
            for i in 1..m.min(big_n + 1) {
                let t = &e[i] * &p[m - i];
                acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
            }
            if m <= big_n {
                let t = e[m].scale(&BigInt::from(m));
                acc = if m % 2 == 1 { &acc + &t } else { &acc - &t };
            }
            p.push(acc);
        }
        // elementary symmetric functions of the n-th powers
        let mut out = vec![Poly::one()];
        for k in 1..=big_n {
            let mut acc = Poly::zero();
            for i in 1..=k {
                let t = &out[k - i] * &p[n * i];
                acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
            }
            out.push(acc.div_scalar(&BigInt::from(k)));
        }
        out
    }

    fn adams_images(&self, n: usize) -> Images {
        static CACHE: OnceLock<Mutex<HashMap<(ParamSpace, usize), Images>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(hit) = cache.lock().expect("cache lock").get(&(*self, n)) {
            return hit.clone();
        }
        let mut images: [Option<Poly>; NVARS] = Default::default();
        images[V] = Some(Poly::monomial(Monomial::var(V, n as u16), 1));
        let e_n = self.adams_e(n);
        for (k, img) in e_n.into_iter().enumerate().take(self.n_free() + 1).skip(1) {
            images[e_var(k)] = Some(img);
        }
        let images = Arc::new(images);
        cache
            .lock()
            .expect("cache lock")
            .insert((*self, n), images.clone());
        images
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ScalarExpr {
        x.parse().unwrap()
    }

    #[test]
    fn adams_examples() {
        let free = ParamSpace::free(1);
        assert_eq!(free.adams(&s("v"), 2).unwrap(), s("v^2"));
        assert_eq!(free.adams(&s("e1"), 2).unwrap(), s("e1^2 - 2*e2"));
        assert_eq!(free.adams(&s("e2"), 3).unwrap(), s("e2^3"));
        assert_eq!(free.adams(&s("e1"), 0), Err(Error::AdamsIndex(0)));
    }

    #[test]
    fn adams_composes() {
        for space in [
            ParamSpace::free(2),
            ParamSpace::paired(2),
            ParamSpace::paired(3),
        ] {
            let x = s("(1 - e1 + 3*e2*v)/(q - e1^2)");
            let x = space.reduce(&x).unwrap();
            let a6 = space.adams(&x, 6).unwrap();
            let a23 = space.adams(&space.adams(&x, 2).unwrap(), 3).unwrap();
            assert_eq!(a6, a23);
        }
    }

    #[test]
    fn paired_adams_respects_pairing() {
        // psi_n of a Weil polynomial is again one, for q^n
        let space = ParamSpace::paired(2);
        let e = space.adams_e(3);
        let v6 = Poly::monomial(Monomial::var(V, 6), 1);
        assert_eq!(e[3], &v6 * &e[1]);
        assert_eq!(e[4], &(&v6 * &v6) * &e[0]);
    }

    #[test]
    fn pic_zero_counts_over_extension() {
        // elliptic curve with a = 1 over F_2: #E(F_2) = 1 - 1 + 2 = 2, #E(F_4) = 1 - (a^2 - 2q) + q^2
        let space = ParamSpace::paired(1);
        let pic = space.reduce(&s("1 - e1 + e2")).unwrap();
        let pic2 = space.adams(&pic, 2).unwrap();
        let val = pic2.eval(2, &[BigInt::from(1)]).unwrap();
        assert_eq!(val, super::super::QuadNum::from_int(1 - (1 - 4) + 4, 2));
    }
}
