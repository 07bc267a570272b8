//! Runs every seeded property suite and prints a one-line summary each.

use hv_verma::checks::{run, CheckConfig, Suite};

fn main() {
    let cfg = CheckConfig { trials: 200, seed: 42, window: 6, maxlen: 4 };
    for suite in Suite::ALL {
        let r = run(suite, &cfg);
        let status = if r.passed { "ok" } else { "FAILED" };
        println!("{suite:<10} {status} ({} trials, {} failures)", r.trials, r.failures.len());
        for f in &r.failures {
            println!("    trial {} (seed {}): {}", f.trial, f.seed, f.detail);
        }
    }
}
