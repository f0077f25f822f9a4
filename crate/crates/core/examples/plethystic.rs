//! Graded series in `w^r z^d`: plethystic exponential and logarithm, slope slices.

use higgs_count::scalar::{ParamSpace, ScalarExpr};
use higgs_count::series::GradedSeries;

fn main() -> higgs_count::Result<()> {
    let space = ParamSpace::paired(1);
    let mut f = GradedSeries::zero(3, 2);
    f.set(1, 0, "v^2 - e1 + 1".parse()?);
    f.set(1, 1, ScalarExpr::v());
    let e = f.pleth_exp(&space)?;
    for ((r, d), c) in e.iter() {
        println!("Exp(f)[{r},{d}] = {c}");
    }
    assert_eq!(e.pleth_log(&space)?, f);

    let slopes = e.slopes();
    println!(
        "slopes present: {}",
        slopes
            .iter()
            .map(|s| format!("{s:?}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    if let Some(&s) = slopes.first() {
        println!(
            "first slice: {:?}",
            e.slope_slice(s).iter().map(|(k, _)| *k).collect::<Vec<_>>()
        );
    }
    Ok(())
}
