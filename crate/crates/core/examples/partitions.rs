//! Partitions, arms and legs, and the exponent `rho_l` of a tuple of Chern classes.

use higgs_count::partition::{lambda_of, rho, ChernClass, Partition};

fn main() {
    for lam in Partition::all(4) {
        let hooks: Vec<u32> = lam.cells().iter().map(|(a, l)| a + l + 1).collect();
        println!(
            "{lam:<10} conj {:<10} <l,l> = {:>2}  hooks {hooks:?}",
            lam.conjugate().to_string(),
            lam.pairing()
        );
    }

    let alpha = [
        ChernClass::new(1, 0),
        ChernClass::new(0, 2),
        ChernClass::new(1, -1),
    ];
    println!("lambda(alpha) = {}", lambda_of(&alpha));
    for l in -2..=2 {
        println!("rho_{l}(alpha) at g=1: {}", rho(l, &alpha, 1));
    }
}
