//! Recovers a known two-input gate from its complete truth table.

use gmdh_logic::dataset::BooleanLearningSet;
use gmdh_logic::gates::GateId;
use gmdh_logic::synthesis::{synthesize, Outcome, SynthesisConfig};

fn main() -> gmdh_logic::Result<()> {
    let rows: Vec<Vec<bool>> = (0..8u8).map(|i| (0..3).map(|j| i >> (2 - j) & 1 == 1).collect()).collect();
    for gate in GateId::all() {
        let labels: Vec<bool> = rows.iter().map(|r| gate.eval(r[0], r[1])).collect();
        let bset = BooleanLearningSet::from_rows(&rows, &labels)?;
        let res = synthesize(&bset, &SynthesisConfig::default())?;
        let Outcome::Success { collective, r_star } = res.outcome else {
            println!("{:<3} {:<18}not recovered", gate, gate.name());
            continue;
        };
        let sigs: Vec<String> = collective.iter().map(|c| c.signature()).collect();
        println!("{:<3} {:<18}r* = {r_star}  members: {}", gate, gate.name(), sigs.join(" "));
    }
    Ok(())
}
