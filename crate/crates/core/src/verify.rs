//! Verification suites: brute force on `P^1`, exact identities, and the d-independence
//! report.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::CurveModel;
use crate::engine::{nil_bundle_series, nil_coefficient_terms};
use crate::invariants::{invariant_table, omega_from_i, omega_plus_for_divisor, Divisor, Kind};
use crate::oracle::{breakdown, oracle_series, NumericSeries};
use crate::partition::{rho, ChernClass};
use crate::poly::{e_var, Monomial, Poly, V};
use crate::scalar::{ParamSpace, ScalarExpr};
use crate::series::GradedSeries;
use crate::{Error, Result};

/// Outcome of one check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub genus: usize,
    pub q0: u64,
    pub div: Divisor,
    pub rmax: u32,
    pub dmax: u32,
    pub cap: u128,
    pub seed: u64,
}

fn q_minus_one() -> ScalarExpr {
    &ScalarExpr::q() - &ScalarExpr::one()
}

/// Engine against brute force at genus 0; with `deg = 0` also the all-maps series and
/// the vanishing of rank-2 indecomposables.
pub fn oracle_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    if cfg.genus != 0 {
        return Err(Error::Invalid("the oracle suite runs at genus 0".into()));
    }
    let l = cfg.div.deg;
    if l > 0 {
        return Err(Error::Unsupported(format!(
            "nilpotent counts need deg D <= 0, got {l}"
        )));
    }
    let curve = CurveModel::p1(cfg.q0)?;
    let (rmax, dmax, q0) = (cfg.rmax, cfg.dmax, cfg.q0);
    let mut out = Vec::new();
    let engine = NumericSeries::evaluate(&nil_bundle_series(l, &curve, rmax, dmax)?, &curve)?;
    let brute = oracle_series(l, q0, rmax, dmax, true, cfg.cap)?;
    for r in 1..=rmax {
        for d in 0..=dmax {
            let (a, b) = (engine.get(r, d), brute.get(r, d));
            let mut detail = format!("engine {a}, oracle {b}");
            if a != b {
                for (lam, c) in nil_coefficient_terms(l, &curve, r, d)? {
                    detail += &format!("\n    lambda {lam}: {c}");
                }
                for bc in breakdown(r as usize, d as i64, l, q0, true, cfg.cap)? {
                    detail += &format!(
                        "\n    {}: {} fields / {} automorphisms",
                        bc.bundle, bc.fields, bc.automorphisms
                    );
                }
            }
            out.push(Check::new(
                format!("I_nil({r},{d}) q0={q0} l={l}"),
                a == b,
                detail,
            ));
        }
    }
    if l == 0 {
        let space = curve.space();
        let i0 = nil_bundle_series(0, &curve, rmax, dmax)?;
        let a_plus = omega_from_i(&i0, &space)?;
        // Exp(A+ / (1 - 1/q)) = Exp(q A+ / (q - 1))
        let scale = &ScalarExpr::q() / &q_minus_one();
        let all = NumericSeries::evaluate(&a_plus.scale(&scale).pleth_exp(&space)?, &curve)?;
        let brute_all = oracle_series(0, q0, rmax, dmax, false, cfg.cap)?;
        for r in 1..=rmax {
            for d in 0..=dmax {
                let (a, b) = (all.get(r, d), brute_all.get(r, d));
                out.push(Check::new(
                    format!("I_all({r},{d}) q0={q0} from A+"),
                    a == b,
                    format!("Exp(A+/(1-1/q)) {a}, oracle {b}"),
                ));
            }
        }
        if rmax >= 2 {
            let nonzero: Vec<u32> = (0..=dmax)
                .filter(|&d| !a_plus.get(2, d).is_zero())
                .collect();
            out.push(Check::new(
                "A+(2,d) = 0 on P^1",
                nonzero.is_empty(),
                format!("nonzero at d in {nonzero:?}"),
            ));
        }
    }
    Ok(out)
}

fn random_scalar(rng: &mut ChaCha8Rng, space: &ParamSpace) -> ScalarExpr {
    let mut num = Poly::zero();
    for _ in 0..rng.gen_range(1..4) {
        let mut m = Monomial::var(V, rng.gen_range(0..3));
        if space.n_free() > 0 && rng.gen_bool(0.5) {
            m = m.mul(&Monomial::var(e_var(rng.gen_range(1..=space.n_free())), 1));
        }
        num = &num + &Poly::monomial(m, rng.gen_range(-3i64..=3));
    }
    let x = ScalarExpr::from_poly(num);
    if rng.gen_bool(0.3) {
        &x / &q_minus_one()
    } else {
        x
    }
}

/// A random series with zero constant term on the window.
pub fn random_series(
    rng: &mut ChaCha8Rng,
    space: &ParamSpace,
    rmax: u32,
    dmax: u32,
) -> GradedSeries {
    let mut s = GradedSeries::zero(rmax, dmax);
    for r in 0..=rmax {
        for d in 0..=dmax {
            if (r, d) != (0, 0) && rng.gen_bool(0.6) {
                s.set(r, d, random_scalar(rng, space));
            }
        }
    }
    s
}

/// The triple sum `-rho_l = sum_k sum_{i>k} sum_{j>k+1} chi(a_i, a_j) + r_i r_j (1+k-j) l`.
pub fn rho_triple_sum(l: i64, alpha: &[ChernClass], g: i64) -> i64 {
    let n = alpha.len();
    let mut s = 0;
    for k in 0..=n {
        for i in k + 1..=n {
            for j in k + 2..=n {
                let (a, b) = (alpha[i - 1], alpha[j - 1]);
                s += crate::partition::chi(a, b, g) + a.r * b.r * (1 + k as i64 - j as i64) * l;
            }
        }
    }
    -s
}

/// `rho_0 + (l/2) r^2 - (l/2) <lambda, lambda>` (times 2 to stay integral).
pub fn rho_corrected_twice(l: i64, alpha: &[ChernClass], g: i64) -> i64 {
    let r: i64 = alpha
        .iter()
        .enumerate()
        .map(|(i, a)| (i as i64 + 1) * a.r)
        .sum();
    let lam = crate::partition::lambda_of(alpha);
    2 * rho(0, alpha, g) + l * r * r - l * lam.pairing() as i64
}

pub fn random_tuple(rng: &mut ChaCha8Rng) -> Vec<ChernClass> {
    (0..rng.gen_range(1..=4))
        .map(|_| ChernClass::new(rng.gen_range(0..=3), rng.gen_range(-5..=5)))
        .collect()
}

/// Exact identities at symbolic genus `g`.
pub fn identities_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let g = cfg.genus;
    let curve = CurveModel::symbolic(g)?;
    let space = curve.space();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();

    let mut bad = Vec::new();
    for _ in 0..500 {
        let alpha = random_tuple(&mut rng);
        let (l, gg) = (rng.gen_range(-3..=3), rng.gen_range(0..=2));
        let closed = rho(l, &alpha, gg);
        if closed != rho_triple_sum(l, &alpha, gg)
            || 2 * closed != rho_corrected_twice(l, &alpha, gg)
        {
            bad.push(format!("{alpha:?} l={l} g={gg}"));
        }
    }
    out.push(Check::new(
        "rho: closed form = triple sum = rho_0 + correction (500 tuples)",
        bad.is_empty(),
        bad.join("; "),
    ));

    let (wr, wd) = (cfg.rmax.min(3), cfg.dmax.min(3));
    let mut failures = Vec::new();
    for k in 0..20 {
        let f = random_series(&mut rng, &space, wr, wd);
        let h = random_series(&mut rng, &space, wr, wd);
        let ef = f.pleth_exp(&space)?;
        if ef.pleth_log(&space)? != f {
            failures.push(format!("Log(Exp(f)) != f, sample {k}"));
        }
        let one_plus = ef.clone();
        if one_plus.pleth_log(&space)?.pleth_exp(&space)? != one_plus {
            failures.push(format!("Exp(Log(F)) != F, sample {k}"));
        }
        if f.add(&h)?.pleth_exp(&space)? != ef.mul(&h.pleth_exp(&space)?)? {
            failures.push(format!("Exp(f+h) != Exp(f)Exp(h), sample {k}"));
        }
    }
    out.push(Check::new(
        "plethystic Exp/Log roundtrips and additivity (20 samples)",
        failures.is_empty(),
        failures.join("; "),
    ));

    let pic = curve.pic_zero();
    for l in [0, -1, -2] {
        let s = nil_bundle_series(l, &curve, 1, cfg.dmax)?;
        let want = &(-ScalarExpr::v()).pow(-l) * &(&pic / &q_minus_one());
        let bad: Vec<u32> = (0..=cfg.dmax).filter(|&d| s.get(1, d) != want).collect();
        out.push(Check::new(
            format!("rank 1: I_nil(1,d) = (-v)^(-l) [Pic0]/(q-1), l={l}"),
            bad.is_empty(),
            format!("differs at d in {bad:?}"),
        ));
    }

    let (rmax, dmax) = (cfg.rmax, cfg.dmax);
    let omega_k = omega_plus_for_divisor(Divisor::canonical(g), &curve, rmax, dmax)?;
    let coh = crate::engine::coh_nil_series(0, &curve, rmax, dmax)?;
    let a_coh = omega_from_i(&coh, &space)?;
    let mut bad = Vec::new();
    for r in 1..=rmax {
        for d in 0..=dmax {
            if omega_k.get(r, d) != &ScalarExpr::q() * &a_coh.get(r, d) {
                bad.push(format!("({r},{d})"));
            }
        }
    }
    let torsion_ok = (1..=dmax).all(|d| a_coh.get(0, d) == curve.point_count());
    out.push(Check::new(
        "Omega+_K = q A+ (A+ read off the coherent series)",
        bad.is_empty() && torsion_ok,
        format!(
            "differs at {}; torsion part is [X]: {torsion_ok}",
            bad.join(" ")
        ),
    ));

    let mut bad = Vec::new();
    for div in [
        Divisor::canonical(g),
        Divisor::of_degree(2 * g as i64 - 1),
        Divisor::of_degree(2 * g as i64),
    ] {
        let vol = invariant_table(Kind::Volume, div, &curve, 1, cfg.dmax)?;
        let h0 = if div.canonical {
            g as i64
        } else {
            div.deg + 1 - g as i64
        };
        let want = &(&pic * &ScalarExpr::q_pow(h0)) / &q_minus_one();
        for d in 0..=cfg.dmax {
            if vol.get(1, d) != Some(&want) {
                bad.push(format!("l={} d={d}", div.deg));
            }
        }
    }
    out.push(Check::new(
        "rank 1 volumes: [M(1,d)] = [Pic0] q^h0(D) / (q-1)",
        bad.is_empty(),
        bad.join(" "),
    ));
    Ok(out)
}

/// Whether `Omega_D(r, d)` is constant in `d` over one period, for every `r <= rmax`.
pub fn conjecture_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let curve = CurveModel::symbolic(cfg.genus)?;
    let dmax = cfg.dmax.max(cfg.rmax);
    let table = invariant_table(Kind::Omega, cfg.div, &curve, cfg.rmax, dmax)?;
    let mut out = Vec::new();
    for r in 1..=cfg.rmax {
        let first = table.get(r, 0).cloned().unwrap_or_default();
        let varying: Vec<u32> = (1..r)
            .filter(|&d| table.get(r, d) != Some(&first))
            .collect();
        out.push(Check::new(
            format!(
                "Omega({r},d) independent of d, g={} l={}",
                cfg.genus, cfg.div.deg
            ),
            varying.is_empty(),
            if varying.is_empty() {
                format!("Omega({r},0) = {first}")
            } else {
                format!("differs from d=0 at d in {varying:?}")
            },
        ));
    }
    Ok(out)
}

/// Integer list helper for numeric curves in configs: `"1,-1,2"`.
pub fn parse_coeffs(text: &str) -> Result<Vec<BigInt>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Invalid(format!("bad coefficient {t:?}")))
        })
        .collect()
}
