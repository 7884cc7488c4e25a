//! Three-input parity: the strict selection rule rejects every first-layer
//! network, while an exhaustive search finds an exact expression at depth 2.

use gmdh_logic::analysis::pruning_gap;
use gmdh_logic::dataset::BooleanLearningSet;
use gmdh_logic::synthesis::{synthesize, Outcome, SynthesisConfig, EXPAND_FEATURES_HINT};

fn main() -> gmdh_logic::Result<()> {
    let rows: Vec<Vec<bool>> = (0..8u8).map(|i| (0..3).map(|j| i >> (2 - j) & 1 == 1).collect()).collect();
    let labels: Vec<bool> = rows.iter().map(|r| r[0] ^ r[1] ^ r[2]).collect();
    let bset = BooleanLearningSet::from_rows(&rows, &labels)?;

    let res = synthesize(&bset, &SynthesisConfig::default())?;
    for t in &res.trace {
        println!("layer {}: generated {}, passed {}", t.r, t.generated, t.passed);
    }
    if let Outcome::Exhausted { best, layer, reason } = &res.outcome {
        println!("exhausted at layer {layer} ({reason}); best {} with mu = {}", best.signature(), best.mu);
        println!("hint: {EXPAND_FEATURES_HINT}");
    }

    let gap = pruning_gap(&bset, 2)?;
    println!("\ndepth  synthesis  oracle  gap");
    for row in &gap.per_depth {
        println!("{:>5}  {:>9}  {:>6}  {:>3}", row.depth, row.synthesis_mu, row.oracle_mu, row.gap);
    }
    let t = gap.terminal;
    println!("terminal: depth {}, {} vs {}, gap {}", t.depth, t.synthesis_mu, t.oracle_mu, t.gap);
    println!("oracle witness at depth 2: {}", gap.oracle.witness[1]);
    Ok(())
}
