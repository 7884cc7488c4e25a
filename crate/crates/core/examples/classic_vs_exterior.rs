//! Runs the split-sample baseline over a grid of criterion weights, stop
//! thresholds, freedoms and splits next to exterior-addition synthesis,
//! which has no such settings.

use gmdh_logic::classic::{synthesize_classic, ClassicConfig};
use gmdh_logic::compare::{compare, default_grid};
use gmdh_logic::dataset::BooleanLearningSet;
use gmdh_logic::synthesis::SynthesisConfig;

fn main() -> gmdh_logic::Result<()> {
    // (x0 and x1) or x2 on the 4-cube, with one label flipped
    let rows: Vec<Vec<bool>> = (0..16u8).map(|i| (0..4).map(|j| i >> (3 - j) & 1 == 1).collect()).collect();
    let mut labels: Vec<bool> = rows.iter().map(|r| (r[0] && r[1]) || r[2]).collect();
    labels[0b0110] = !labels[0b0110];
    let bset = BooleanLearningSet::from_rows(&rows, &labels)?;

    let one = synthesize_classic(&bset, &ClassicConfig::default())?;
    println!("classic default: {} -> {} (mu {}), CR trace {:?}", one.structure, one.model.signature(), one.model.mu, one.cr_trace);

    let report = compare(&bset, &SynthesisConfig::default(), &default_grid(bset.n()))?;
    println!("\n{report}");
    Ok(())
}
