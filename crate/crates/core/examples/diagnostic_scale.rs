//! Synthesis on a 36-instance, 31-feature diagnostic set with no width cap,
//! printing the per-layer trace and timing.

use std::time::Instant;

use gmdh_logic::dataset::binarize;
use gmdh_logic::synthesis::{synthesize, Outcome, SynthesisConfig};
use gmdh_logic::synthetic::{diagnostic, DiagnosticShape};

fn main() -> gmdh_logic::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let set = diagnostic(DiagnosticShape { seed, ..Default::default() })?;
    let bset = binarize(&set, None)?;
    let start = Instant::now();
    let res = synthesize(&bset, &SynthesisConfig::default())?;
    let elapsed = start.elapsed();
    for t in &res.trace {
        println!(
            "layer {}: generated {:>9}, passed {:>8}, kept {:>7}, min mu {:?}",
            t.r, t.generated, t.passed, t.kept, t.min_mu
        );
    }
    match &res.outcome {
        Outcome::Success { collective, r_star } => println!("success at r* = {r_star} with {} members", collective.len()),
        Outcome::Exhausted { best, layer, reason } => {
            println!("exhausted at layer {layer} ({reason}), best mu {}", best.mu)
        }
    }
    println!("{:.2?}", elapsed);
    Ok(())
}
