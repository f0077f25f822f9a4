//! Motivic volumes of the moduli stacks `M_D(r, d)` for low genus and rank.

use higgs_count::curve::CurveModel;
use higgs_count::invariants::{invariant_table, Divisor, Kind};

fn main() -> higgs_count::Result<()> {
    for g in 0..=2usize {
        let curve = CurveModel::symbolic(g)?;
        let k = 2 * g as i64 - 2;
        for div in [Divisor::canonical(g), Divisor::of_degree(k + 1)] {
            let t = invariant_table(Kind::Volume, div, &curve, 2, 1)?;
            let label = if div.canonical {
                "K".to_string()
            } else {
                format!("deg {}", div.deg)
            };
            for ((r, d), e) in &t.entries {
                println!("g={g} D={label} [M({r},{d})] = {}", e.value);
            }
        }
    }
    Ok(())
}
