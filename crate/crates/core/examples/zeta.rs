//! Zeta function of a curve: closed form, symmetric-power counts and point counts
//! over extensions.
//!
//! `cargo run --example zeta -- <q0> <trace>` (an elliptic curve; default 5 2)

use higgs_count::curve::CurveModel;

fn main() -> higgs_count::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer"))
        .collect();
    let (q0, t) = match args[..] {
        [q, t] => (q as u64, t),
        _ => (5, 2),
    };
    let symbolic = CurveModel::symbolic(1)?;
    println!("Z(z)  = {}", symbolic.zeta_closed());
    println!("#X    = {}", symbolic.point_count());
    println!("Pic0  = {}", symbolic.pic_zero());

    let curve = CurveModel::numeric(1, q0, vec![1.into(), (-t).into(), q0.into()])?;
    let space = curve.space();
    for (d, c) in curve.zeta_series(5).iter().enumerate() {
        println!("#S^{d}X(F_{q0}) = {}", curve.eval(c)?);
    }
    for n in 1..=4 {
        println!(
            "#X(F_{q0}^{n}) = {}",
            curve.eval(&space.adams(&curve.point_count(), n)?)?
        );
    }
    Ok(())
}
