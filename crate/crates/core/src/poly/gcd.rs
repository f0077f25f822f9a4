//! Multivariate gcd over the integers.
//!
//! Recursive content / primitive-remainder-sequence algorithm with two shortcuts that
//! make the common cases cheap:
//!
//! * variables present in only one argument are removed by passing to the content with
//!   respect to them;
//! * a modular image (all but one variable evaluated at random points mod 2^61-1) bounds
//!   the degree of the gcd in each variable. A zero bound removes that variable too, so
//!   coprime inputs are usually detected without running a remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{modp, Monomial, Poly, NVARS};

/// Gcd with positive leading coefficient (`gcd(0, 0) = 0`).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().with_positive_lead();
    }
    if b.is_zero() {
        return a.clone().with_positive_lead();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a = if ma.is_one() {
        a.clone()
    } else {
        a.div_monomial(&ma)
    };
    let b = if mb.is_one() {
        b.clone()
    } else {
        b.div_monomial(&mb)
    };
    let ca = a.content();
    let cb = b.content();
    let cg = ca.gcd(&cb);
    let a = a.primitive();
    let b = b.primitive();
    let g = gcd_primitive(a, b);
    g.scale(&cg).mul_monomial(&mg)
}

/// Gcd of a list of polynomials.
pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Poly {
    let mut items: Vec<&Poly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    items.sort_by_key(|p| p.len());
    let mut g = Poly::zero();
    for p in items {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Content with respect to the variables in `mask`: gcd of the coefficients when
/// the polynomial is viewed as a polynomial in those variables.
pub fn content_in(p: &Poly, mask: u16) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let mut groups: rustc_hash::FxHashMap<Monomial, Vec<(Monomial, BigInt)>> = Default::default();
    for (m, c) in p.terms() {
        let key = m.restrict(mask);
        let rest = m.restrict(!mask);
        groups.entry(key).or_default().push((rest, c.clone()));
    }
    let coeffs: Vec<Poly> = groups.into_values().map(Poly::from_terms).collect();
    gcd_many(coeffs.iter())
}

/// Both arguments primitive with positive leading coefficient and no monomial content.
fn gcd_primitive(a: Poly, b: Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a;
    }
    let (ma, mb) = (a.mask(), b.mask());
    if ma != mb {
        let a2 = if ma & !mb != 0 {
            content_in(&a, ma & !mb)
        } else {
            a
        };
        let b2 = if mb & !ma != 0 {
            content_in(&b, mb & !ma)
        } else {
            b
        };
        return gcd(&a2, &b2);
    }
    // divisibility shortcut
    let (small, big) = if a.len() <= b.len() {
        (&a, &b)
    } else {
        (&b, &a)
    };
    if big.div_exact(small).is_some() {
        return small.clone();
    }
    let vars: Vec<usize> = (0..NVARS).filter(|&i| ma & (1 << i) != 0).collect();
    let mut best: Option<(usize, u16)> = None;
    for &x in &vars {
        let bound = degree_bound(&a, &b, x);
        if bound == 0 {
            let ca = content_in(&a, 1 << x);
            let cb = content_in(&b, 1 << x);
            return gcd(&ca, &cb);
        }
        let cost = a.degree_in(x).max(b.degree_in(x));
        if best.is_none_or(|(_, c)| cost < c) {
            best = Some((x, cost));
        }
    }
    let x = best.expect("nonconstant polynomial has a variable").0;
    let ca = content_in(&a, 1 << x);
    let cb = content_in(&b, 1 << x);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = prs(pa, pb, x);
    let g = primitive_in(&g, x);
    (&c * &g).with_positive_lead()
}

/// Primitive part with respect to `x`.
fn primitive_in(p: &Poly, x: usize) -> Poly {
    let c = content_in(p, 1 << x);
    let q = if c.is_constant() {
        p.clone()
    } else {
        p.div_exact(&c).expect("content divides")
    };
    q.primitive()
}

/// Primitive polynomial remainder sequence in `x`.
fn prs(mut a: Poly, mut b: Poly, x: usize) -> Poly {
    if a.degree_in(x) < b.degree_in(x) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b, x);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(x) == 0 {
            return Poly::one();
        }
        a = b;
        b = primitive_in(&r, x);
    }
}

/// Pseudo-remainder of `a` by `b` with respect to `x`.
pub(crate) fn prem(a: &Poly, b: &Poly, x: usize) -> Poly {
    let db = b.degree_in(x) as usize;
    let bc = b.coeffs_in(x);
    let lb = &bc[db];
    let mut r = a.coeffs_in(x);
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let lr = r[k].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let shift = k - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bci) in bc.iter().enumerate() {
            if bci.is_zero() {
                continue;
            }
            r[shift + i] = &r[shift + i] - &(&lr * bci);
        }
        debug_assert!(r[k].is_zero());
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    Poly::from_coeffs_in(x, &r)
}

/// Upper bound for `deg_x gcd(a, b)` from a modular univariate image.
fn degree_bound(a: &Poly, b: &Poly, x: usize) -> u16 {
    let trivial = a.degree_in(x).min(b.degree_in(x));
    let mask = a.mask() | b.mask();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + x as u64);
    for _ in 0..4 {
        let mut point = [0u64; NVARS];
        for (i, slot) in point.iter_mut().enumerate() {
            if mask & (1 << i) != 0 && i != x {
                *slot = rng.gen_range(2..modp::P);
            }
        }
        let ia = image(a, x, &point);
        let ib = image(b, x, &point);
        // the image must keep full degree so that the gcd's leading coefficient survives
        if ia.len() != a.degree_in(x) as usize + 1 || ib.len() != b.degree_in(x) as usize + 1 {
            continue;
        }
        let g = modp::gcd(ia, ib);
        return (g.len().saturating_sub(1) as u16).min(trivial);
    }
    trivial
}

fn image(p: &Poly, x: usize, point: &[u64; NVARS]) -> Vec<u64> {
    let deg = p.degree_in(x) as usize;
    let mut out = vec![0u64; deg + 1];
    for (m, c) in p.terms() {
        let mut val = modp::reduce(c);
        for i in 0..NVARS {
            let e = m.deg(i);
            if e != 0 && i != x {
                val = modp::mul(val, modp::pow(point[i], e as u64));
            }
        }
        let k = m.deg(x) as usize;
        out[k] = modp::add(out[k], val);
    }
    modp::trim(&mut out);
    out
}

impl Poly {
    /// Least common multiple with positive leading coefficient.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = gcd(self, other);
        (&self.div_exact(&g).expect("gcd divides") * other).with_positive_lead()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_fraction;

    fn p(s: &str) -> Poly {
        let (n, d) = parse_fraction(s).unwrap();
        assert!(d.is_one());
        n
    }

    #[test]
    fn univariate() {
        assert_eq!(gcd(&p("v^4 - 1"), &p("v^6 - 1")), p("v^2 - 1"));
        assert_eq!(gcd(&p("2*v + 2"), &p("4*v^2 - 4")), p("2*v + 2"));
        assert_eq!(gcd(&p("v + 1"), &p("v + 2")), Poly::one());
    }

    #[test]
    fn multivariate_common_factor() {
        let f = p("z1 - v^2*z2");
        let a = &f * &p("e1*z1 + 3*v - 1");
        let b = &f * &p("z2^2 - e2 + v*z1");
        assert_eq!(gcd(&a, &b), f.with_positive_lead());
    }

    #[test]
    fn content_and_monomials() {
        let a = p("6*v^2*e1 + 6*v^3");
        let b = p("4*v*e1^2 + 4*v^2*e1");
        // 6 v^2 (e1 + v) and 4 v e1 (e1 + v)
        assert_eq!(gcd(&a, &b), p("2*v*e1 + 2*v^2"));
    }

    #[test]
    fn disjoint_variables() {
        let a = p("(v - 1)*(e1 + 2)");
        let b = p("(v - 1)*(z1 + 5)");
        assert_eq!(gcd(&a, &b), p("v - 1"));
    }

    #[test]
    fn repeated_factors() {
        let f = p("v*z1 - e1");
        let a = &f.pow(3) * &p("z2 + 1");
        let b = &f.pow(2) * &p("z2 - 1");
        assert_eq!(gcd(&a, &b), f.pow(2).with_positive_lead());
    }
}
