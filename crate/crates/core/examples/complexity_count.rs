//! Counts the networks generated per layer against the number of Boolean
//! functions of m variables.

use gmdh_logic::analysis::{check_inequality, enumerate_unpruned};
use gmdh_logic::dataset::BooleanLearningSet;

fn main() -> gmdh_logic::Result<()> {
    for (m, r_star) in [(5, 2), (8, 3), (30, 4)] {
        println!("{}", check_inequality(m, r_star)?);
    }
    // the closed form matches an explicit enumeration
    let rows: Vec<Vec<bool>> = (0..16u8).map(|i| (0..4).map(|j| i >> (3 - j) & 1 == 1).collect()).collect();
    let labels: Vec<bool> = rows.iter().map(|r| r[0] && !r[3]).collect();
    let oracle = enumerate_unpruned(&BooleanLearningSet::from_rows(&rows, &labels)?, 3)?;
    println!("enumerated per depth at m = 4: {:?}", oracle.counts);
    Ok(())
}
