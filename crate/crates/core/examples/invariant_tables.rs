//! Invariant tables for a twisting divisor, exported as JSON and CSV.
//!
//! `cargo run --release --example invariant_tables -- <genus> <deg|K> <rmax> <dmax>`

use higgs_count::curve::CurveModel;
use higgs_count::invariants::{invariant_table, Divisor, InvariantTable, Kind};

fn main() -> higgs_count::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let genus: usize = args.first().map_or(1, |a| a.parse().expect("genus"));
    let div = match args.get(1).map(String::as_str) {
        None | Some("K") => Divisor::canonical(genus),
        Some(l) => Divisor::of_degree(l.parse().expect("degree")),
    };
    let rmax = args.get(2).map_or(2, |a| a.parse().expect("rmax"));
    let dmax = args.get(3).map_or(3, |a| a.parse().expect("dmax"));
    let curve = CurveModel::symbolic(genus)?;

    for kind in [Kind::OmegaPlus, Kind::HPlus, Kind::Omega, Kind::H] {
        let t = invariant_table(kind, div, &curve, rmax, dmax)?;
        println!("-- {kind}");
        for ((r, d), e) in &t.entries {
            println!("({r},{d}) [{}] {}", e.provenance.name(), e.value);
        }
    }

    let t = invariant_table(Kind::Omega, div, &curve, rmax, dmax)?;
    let json = t.to_json();
    assert_eq!(InvariantTable::from_json(&json)?, t);
    println!("{}", t.to_csv());
    Ok(())
}
