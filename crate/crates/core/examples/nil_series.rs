//! Nilpotent generating series of a symbolic curve.
//!
//! `cargo run --release --example nil_series -- <genus> <deg> <rmax> <dmax>`

use higgs_count::curve::CurveModel;
use higgs_count::engine::nil_bundle_series;

fn main() -> higgs_count::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let (genus, deg, rmax, dmax) = match args[..] {
        [g, l, r, d] => (g as usize, l, r as u32, d as u32),
        _ => (1, 0, 2, 3),
    };
    let curve = CurveModel::symbolic(genus)?;
    let start = std::time::Instant::now();
    let series = nil_bundle_series(deg, &curve, rmax, dmax)?;
    for ((r, d), c) in series.iter() {
        println!("I({r},{d}) = {c}");
    }
    eprintln!("{:.2?}", start.elapsed());
    Ok(())
}
