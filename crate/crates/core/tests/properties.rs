use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use higgs_count::curve::CurveModel;
use higgs_count::engine::{build_l, f_lambda_expansion, nil_bundle_series};
use higgs_count::invariants::{invariant_table, Divisor, InvariantTable, Kind};
use higgs_count::oracle::{hom_dim, nil_count, splitting_types, NumericSeries, DEFAULT_CAP};
use higgs_count::partition::Partition;
use higgs_count::poly::z_var;
use higgs_count::ratfun::MvRatFun;
use higgs_count::scalar::{ParamSpace, ScalarExpr};
use higgs_count::verify::random_series;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn s(x: &str) -> ScalarExpr {
    x.parse().unwrap()
}

const NUMERATORS: [&str; 6] = ["1", "v", "v^2", "e1", "v*e1", "e2"];
const DENOMINATORS: [&str; 5] = ["1", "v^2 - 1", "v + 1", "e1 + 1", "v^2 - e1 + 1"];

/// Small elements of `Q(v, e1, e2)`.
fn scalar() -> impl Strategy<Value = ScalarExpr> {
    (prop::collection::vec(-3i64..=3, 6), 0..DENOMINATORS.len()).prop_map(|(c, k)| {
        let num: ScalarExpr = c
            .iter()
            .zip(NUMERATORS)
            .map(|(&c, m)| &ScalarExpr::int(c) * &s(m))
            .sum();
        &num / &s(DENOMINATORS[k])
    })
}

/// Polynomials in `v` only.
fn v_scalar() -> impl Strategy<Value = ScalarExpr> {
    prop::collection::vec(-4i64..=4, 3).prop_map(|c| {
        c.iter()
            .zip(["1", "v", "v^2"])
            .map(|(&c, m)| &ScalarExpr::int(c) * &s(m))
            .sum()
    })
}

fn elementary(roots: &[i64]) -> Vec<BigInt> {
    let mut e = vec![BigInt::from(1)];
    for &a in roots {
        let mut next = e.clone();
        next.push(BigInt::zero());
        for k in 1..next.len() {
            next[k] += &e[k - 1] * a;
        }
        e = next;
    }
    e[1..].to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, ScalarExpr::zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn adams_is_a_ring_map(a in scalar(), b in scalar(), n in 1i64..=4) {
        let space = ParamSpace::free(1);
        let (pa, pb) = (space.adams(&a, n).unwrap(), space.adams(&b, n).unwrap());
        prop_assert_eq!(space.adams(&(&a * &b), n).unwrap(), &pa * &pb);
        prop_assert_eq!(space.adams(&(&a + &b), n).unwrap(), &pa + &pb);
    }

    #[test]
    fn adams_commutes_with_specialization(a in scalar(), roots in prop::collection::vec(-3i64..=3, 2), n in 1i64..=3) {
        let space = ParamSpace::free(1);
        let powered: Vec<i64> = roots.iter().map(|r| r.pow(n as u32)).collect();
        // specializing psi_n(a) at the roots equals specializing a at their n-th powers,
        // with v -> v^n
        let lhs = space.adams(&a, n).unwrap().substitute_e(&elementary(&roots));
        let rhs = a.substitute_e(&elementary(&powered)).and_then(|x| space.adams(&x, n));
        match (lhs, rhs) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "one side has a pole: {:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn elliptic_zeta_counts_divisors(q0 in prop::sample::select(vec![2u64, 3, 4, 5]), t in -4i64..=4) {
        prop_assume!(t * t <= 4 * q0 as i64);
        let curve = CurveModel::numeric(1, q0, vec![1.into(), (-t).into(), q0.into()]).unwrap();
        for c in curve.zeta_series(6) {
            let x = curve.eval(&c).unwrap();
            prop_assert!(x.is_rational() && x.a.is_integer() && !x.a.is_negative(), "{}", x);
        }
        // #X(F_{q^n}) = 1 + q^n - p_n with p_n = t p_{n-1} - q p_{n-2}
        let space = curve.space();
        let mut p = vec![BigInt::from(2), BigInt::from(t)];
        for n in 1..=4usize {
            if n >= 2 {
                let next = &p[n - 1] * t - &p[n - 2] * q0;
                p.push(next);
            }
            let count = curve.eval(&space.adams(&curve.point_count(), n as i64).unwrap()).unwrap();
            let want: BigInt = BigInt::from(q0).pow(n as u32) + 1 - &p[n];
            prop_assert_eq!(count.a, num_rational::BigRational::from_integer(want));
        }
    }

    #[test]
    fn residue_is_linear(a in v_scalar(), b in v_scalar(), c1 in -3i64..=3, c2 in -3i64..=3, lam in scalar()) {
        prop_assume!(c1 != c2);
        let z = z_var(1);
        let lin = |c: i64| &MvRatFun::var(z) - &MvRatFun::scalar(&ScalarExpr::int(c));
        let f = MvRatFun::scalar(&a).div(&(&lin(c1) * &lin(c2))).unwrap();
        let g = (&MvRatFun::scalar(&b) * &MvRatFun::var(z)).div(&(&lin(c1) * &lin(c1))).unwrap();
        let at = MvRatFun::scalar(&ScalarExpr::int(c1));
        let sum = (&f + &(&g * &MvRatFun::scalar(&lam))).residue_at(z, &at, false).unwrap();
        let parts = &f.residue_at(z, &at, false).unwrap() + &(&g.residue_at(z, &at, false).unwrap() * &MvRatFun::scalar(&lam));
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn residues_sum_to_minus_infinity(num in prop::collection::vec(v_scalar(), 1..=5), poles in prop::collection::btree_set(-4i64..=4, 1..=4)) {
        let (z, w) = (z_var(1), z_var(2));
        let mut f = MvRatFun::zero();
        for (k, c) in num.iter().enumerate() {
            f = &f + &(&MvRatFun::scalar(c) * &MvRatFun::var(z).pow(k as i64).unwrap());
        }
        for &c in &poles {
            f = f.div(&(&MvRatFun::var(z) - &MvRatFun::scalar(&ScalarExpr::int(c)))).unwrap();
        }
        let mut total = MvRatFun::zero();
        for &c in &poles {
            total = &total + &f.residue_at(z, &MvRatFun::scalar(&ScalarExpr::int(c)), false).unwrap();
        }
        // Res_inf f = -Res_{w=0} f(1/w) / w^2
        let at_inf = &f.substitute(z, &MvRatFun::var(w).inv().unwrap()).unwrap() * &MvRatFun::var(w).pow(-2).unwrap();
        let res_inf = -&at_inf.residue_at(w, &MvRatFun::zero(), false).unwrap();
        prop_assert!((&total + &res_inf).is_zero());
    }

    #[test]
    fn residue_commutes_with_specialization(a in scalar(), b in scalar(), e in prop::collection::vec(-3i64..=3, 2), c in -2i64..=2) {
        let z = z_var(1);
        let e: Vec<BigInt> = e.into_iter().map(BigInt::from).collect();
        let pole = &MvRatFun::var(z) - &MvRatFun::scalar(&ScalarExpr::int(c));
        let f = (&MvRatFun::scalar(&a) + &(&MvRatFun::scalar(&b) * &MvRatFun::var(z))).div(&(&pole * &pole)).unwrap();
        let at = MvRatFun::scalar(&ScalarExpr::int(c));
        let first = f.residue_at(z, &at, true).and_then(|r| r.substitute_e(&e));
        let second = f.substitute_e(&e).and_then(|g| g.residue_at(z, &at, true));
        if let (Ok(x), Ok(y)) = (first, second) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn splitting_type_counts_are_bounded(r in 1usize..=3, d in -2i64..=3, l in -2i64..=0, q0 in prop::sample::select(vec![2u64, 3])) {
        for a in splitting_types(r, d) {
            let n = nil_count(&a, l, q0, DEFAULT_CAP).unwrap();
            prop_assert!(n <= (q0 as u128).pow(hom_dim(&a, &a, l) as u32));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn exp_log_laws(seed in any::<u64>(), g in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = ParamSpace::paired(g);
        let f = random_series(&mut rng, &space, 3, 3);
        let h = random_series(&mut rng, &space, 3, 3);
        let ef = f.pleth_exp(&space).unwrap();
        prop_assert_eq!(&ef.pleth_log(&space).unwrap(), &f);
        prop_assert_eq!(&ef.pleth_log(&space).unwrap().pleth_exp(&space).unwrap(), &ef);
        prop_assert_eq!(f.add(&h).unwrap().pleth_exp(&space).unwrap(), ef.mul(&h.pleth_exp(&space).unwrap()).unwrap());
    }

    #[test]
    fn slope_exp_reads_one_slice(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = ParamSpace::paired(1);
        let mut omega = random_series(&mut rng, &space, 3, 3);
        for d in 0..=3 {
            omega.set(0, d, ScalarExpr::zero());
        }
        let full = omega.slope_exp_all(&space).unwrap();
        for slope in omega.slopes() {
            let alone = omega.slope_slice(slope).slope_exp_all(&space).unwrap();
            prop_assert_eq!(full.slope_slice(slope), alone.slope_slice(slope));
        }
    }

    #[test]
    fn tables_roundtrip(seed in any::<u64>(), deg in -3i64..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let series = random_series(&mut rng, &ParamSpace::paired(2), 2, 3);
        let t = InvariantTable::from_series(&series, deg, 2, Kind::HPlus);
        prop_assert_eq!(&InvariantTable::from_json(&t.to_json()).unwrap(), &t);
        prop_assert_eq!(&InvariantTable::from_csv(&t.to_csv(), 2).unwrap(), &t);
    }
}

#[test]
fn pairing_has_the_parity_of_size() {
    for n in 0..=8 {
        for lam in Partition::all(n) {
            assert_eq!(lam.pairing() % 2, n % 2, "{lam}");
        }
    }
}

fn standard_tableaux(parts: &[u32]) -> u64 {
    if parts.iter().all(|&p| p == 0) {
        return 1;
    }
    let mut total = 0;
    for i in 0..parts.len() {
        let is_corner = parts[i] > 0 && parts.get(i + 1).is_none_or(|&next| next < parts[i]);
        if is_corner {
            let mut smaller = parts.to_vec();
            smaller[i] -= 1;
            total += standard_tableaux(&smaller);
        }
    }
    total
}

#[test]
fn hook_lengths_count_standard_tableaux() {
    for n in 1..=6u32 {
        for lam in Partition::all(n) {
            let cells = lam.cells();
            let mut scanned = vec![];
            for (i, &p) in lam.parts().iter().enumerate() {
                for j in 1..=p as usize {
                    scanned.push(lam.arm_leg(i + 1, j).unwrap());
                }
            }
            assert_eq!(cells, scanned, "{lam}");
            let hooks: u64 = cells.iter().map(|&(a, l)| (a + l + 1) as u64).product();
            let factorial: u64 = (1..=n as u64).product();
            assert_eq!(factorial / hooks, standard_tableaux(lam.parts()), "{lam}");
            assert_eq!(factorial % hooks, 0);
        }
    }
}

/// `L` is a symmetric sum divided by `prod_{i<j} Z~(z_i/z_j)`, so relabeling `L` must
/// agree with relabeling that denominator.
#[test]
fn l_commutes_with_relabeling() {
    use higgs_count::poly::MAX_Z;
    for g in 0..=1 {
        let curve = CurveModel::symbolic(g).unwrap();
        let spare = z_var(MAX_Z);
        let moved = curve
            .zeta_tilde()
            .substitute(z_var(1), &MvRatFun::var(spare))
            .unwrap();
        for n in 2..=3 {
            let mut den = MvRatFun::one();
            for i in 1..=n {
                for j in i + 1..=n {
                    let ratio = MvRatFun::var(z_var(i))
                        .div(&MvRatFun::var(z_var(j)))
                        .unwrap();
                    den = &den * &moved.substitute(spare, &ratio).unwrap();
                }
            }
            let sum = &build_l(n, &curve).unwrap() * &den;
            let swap: Vec<usize> = (1..=n).map(|i| if i <= 2 { 3 - i } else { i }).collect();
            let cycle: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
            assert_eq!(sum.permute_z(&swap), sum, "g={g} n={n}");
            assert_eq!(sum.permute_z(&cycle), sum, "g={g} n={n}");
        }
    }
}

#[test]
fn lambda_terms_are_regular_at_zero() {
    for g in 0..=1 {
        let curve = CurveModel::symbolic(g).unwrap();
        for n in 1..=4 {
            for lam in Partition::all(n) {
                assert!(
                    f_lambda_expansion(&lam, &curve, 4).is_ok(),
                    "g={g} lambda={lam}"
                );
            }
        }
    }
}

#[test]
fn genus_zero_counts_are_groupoid_counts() {
    for q0 in [2u64, 3] {
        let curve = CurveModel::p1(q0).unwrap();
        for l in [0i64, -1, -2] {
            let series = nil_bundle_series(l, &curve, 3, 3).unwrap();
            let num = NumericSeries::evaluate(&series, &curve).unwrap();
            for r in 1..=3u32 {
                // undo the (-v)^(-l r^2) normalization
                let unnorm = curve
                    .eval(&(-ScalarExpr::v()).pow(l * (r * r) as i64))
                    .unwrap();
                let gl: BigInt = (1..=r)
                    .map(|k| BigInt::from(q0).pow(k) - 1)
                    .product::<BigInt>()
                    * BigInt::from(q0).pow(3 * r * r);
                for d in 0..=3 {
                    let x = num.get(r, d).mul(&unnorm);
                    assert!(
                        x.is_rational() && !x.a.is_negative(),
                        "q0={q0} l={l} ({r},{d}): {x}"
                    );
                    assert!(
                        gl.is_multiple_of(x.a.denom()),
                        "q0={q0} l={l} ({r},{d}): {x}"
                    );
                }
            }
        }
    }
}

#[test]
fn rank_one_coefficient_is_independent_of_d() {
    for g in 0..=2 {
        let curve = CurveModel::symbolic(g).unwrap();
        for l in [0, -1, -3] {
            let series = nil_bundle_series(l, &curve, 1, 8).unwrap();
            assert!(
                (1..=8).all(|d| series.get(1, d) == series.get(1, 0)),
                "g={g} l={l}"
            );
        }
    }
}

#[test]
fn coprime_h_is_omega_over_q_minus_one() {
    for g in 0..=1usize {
        let curve = CurveModel::symbolic(g).unwrap();
        let div = Divisor::of_degree(2 * g as i64 - 1);
        let h = invariant_table(Kind::H, div, &curve, 3, 4).unwrap();
        let omega = invariant_table(Kind::Omega, div, &curve, 3, 4).unwrap();
        for ((r, d), e) in &h.entries {
            if r.gcd(d) == 1 {
                assert_eq!(
                    &e.value * &s("v^2 - 1"),
                    omega.get(*r, *d).cloned().unwrap(),
                    "g={g} ({r},{d})"
                );
            }
        }
    }
}
