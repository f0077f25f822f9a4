//! Residue formula against brute force on the projective line.
//!
//! `cargo run --release --example oracle_check -- <q0> <deg> <rmax> <dmax>`

use higgs_count::curve::CurveModel;
use higgs_count::engine::nil_bundle_series;
use higgs_count::oracle::{oracle_series, NumericSeries, DEFAULT_CAP};

fn main() -> higgs_count::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let (q0, deg, rmax, dmax) = match args[..] {
        [q, l, r, d] => (q as u64, l, r as u32, d as u32),
        _ => (2, -1, 2, 4),
    };
    let curve = CurveModel::p1(q0)?;
    let engine = NumericSeries::evaluate(&nil_bundle_series(deg, &curve, rmax, dmax)?, &curve)?;
    let brute = oracle_series(deg, q0, rmax, dmax, true, DEFAULT_CAP)?;
    for r in 1..=rmax {
        for d in 0..=dmax {
            let (a, b) = (engine.get(r, d), brute.get(r, d));
            let mark = if a == b { "ok" } else { "MISMATCH" };
            println!("({r},{d}) engine {a}  oracle {b}  {mark}");
        }
    }
    let bad = engine.differences(&brute).len();
    println!("{bad} mismatches");
    Ok(())
}
