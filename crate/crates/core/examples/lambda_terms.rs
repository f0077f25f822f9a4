//! The per-partition summands `J_lambda * H_lambda` of the nilpotent series, and the
//! coefficient breakdown of one `(r, d)`.
//!
//! `cargo run --release --example lambda_terms -- <genus> <deg> <r> <d>`

use higgs_count::curve::CurveModel;
use higgs_count::engine::{nil_coefficient_terms, LambdaTerm};
use higgs_count::partition::Partition;

fn main() -> higgs_count::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer"))
        .collect();
    let (genus, deg, r, d) = match args[..] {
        [g, l, r, d] => (g as usize, l, r as u32, d as u32),
        _ => (0, -1, 3, 2),
    };
    let curve = CurveModel::symbolic(genus)?;
    for lam in Partition::all(r) {
        let t = LambdaTerm::new(&lam, deg, &curve)?;
        println!(
            "lambda = {lam}: prefactor {}, shift z^{}",
            t.prefactor, t.degree_shift
        );
        println!("  J = {}", t.j);
        println!("  H = {}", t.h);
        println!("  z^0..z^{d}: {:?}", t.expand(d as usize)?);
    }
    let terms = nil_coefficient_terms(deg, &curve, r, d)?;
    let total: higgs_count::scalar::ScalarExpr = terms.iter().map(|(_, c)| c.clone()).sum();
    println!("I_nil({r},{d}) = {total}");
    Ok(())
}
