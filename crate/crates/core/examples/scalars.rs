//! Exact scalars in `Q(v, e1, ..)`: parsing, field operations, Adams operations and
//! specialization to a concrete curve.

use higgs_count::scalar::{ParamSpace, ScalarExpr};

fn main() -> higgs_count::Result<()> {
    let a: ScalarExpr = "(v^2 - e1 + 1)/(v^2 - 1)".parse()?;
    let b: ScalarExpr = "v*e1 + 2".parse()?;
    println!("a       = {a}");
    println!("a + b   = {}", &a + &b);
    println!("a * b   = {}", &a * &b);
    println!("a / b   = {}", &a / &b);

    let space = ParamSpace::paired(1);
    for n in 1..=3 {
        println!("psi_{n}(a) = {}", space.adams(&a, n)?);
    }

    // an elliptic curve over F_5 with trace 2: e1 = 2
    let x = a.substitute_e(&[2.into()])?;
    println!("a at e1=2: {x}, at q=5: {}", x.eval(5, &[])?);
    Ok(())
}
