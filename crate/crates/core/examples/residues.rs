//! Multivariate rational functions: residues, substitution and the symmetrized kernel `L`.

use higgs_count::curve::CurveModel;
use higgs_count::engine::build_l;
use higgs_count::poly::z_var;
use higgs_count::ratfun::MvRatFun;
use higgs_count::scalar::ScalarExpr;

fn main() -> higgs_count::Result<()> {
    let (z1, z2) = (z_var(1), z_var(2));
    let f = MvRatFun::parse("z2/((z1 - v^2*z2)*(z1 - 1))")?;
    let at = &MvRatFun::scalar(&ScalarExpr::q()) * &MvRatFun::var(z2);
    println!("f                     = {f}");
    println!("Res_(z1 = q z2) f     = {}", f.residue_at(z1, &at, false)?);
    println!("Res_(z1 = q z2) f dlog = {}", f.residue_at(z1, &at, true)?);
    println!(
        "f(z1 -> 1/z2)         = {}",
        f.substitute(z1, &MvRatFun::var(z2).inv()?)?
    );
    println!(
        "expansion at z1 = 0   = {:?}",
        f.substitute(z2, &MvRatFun::one())?.expand_at_zero(z1, 3)?
    );

    let curve = CurveModel::symbolic(0)?;
    println!("L(z1, z2), g = 0      = {}", build_l(2, &curve)?);
    Ok(())
}
