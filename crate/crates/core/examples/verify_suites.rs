//! The verification suites the CLI runs, called from library code.

use higgs_count::invariants::Divisor;
use higgs_count::oracle::DEFAULT_CAP;
use higgs_count::verify::{conjecture_suite, identities_suite, oracle_suite, VerifyConfig};

fn main() -> higgs_count::Result<()> {
    let base = VerifyConfig {
        genus: 0,
        q0: 3,
        div: Divisor::of_degree(0),
        rmax: 2,
        dmax: 4,
        cap: DEFAULT_CAP,
        seed: 7,
    };
    let runs = [
        ("oracle", oracle_suite(&base)?),
        (
            "identities",
            identities_suite(&VerifyConfig {
                genus: 1,
                ..base.clone()
            })?,
        ),
        (
            "conjecture",
            conjecture_suite(&VerifyConfig {
                genus: 1,
                div: Divisor::canonical(1),
                ..base.clone()
            })?,
        ),
    ];
    for (name, checks) in runs {
        let passed = checks.iter().filter(|c| c.passed).count();
        println!("{name}: {passed}/{} passed", checks.len());
        for c in checks.iter().filter(|c| !c.passed) {
            println!("  FAIL {}: {}", c.name, c.detail);
        }
    }
    Ok(())
}
