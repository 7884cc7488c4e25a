//! Saves a trained collective, reloads it and classifies new rows.

use gmdh_logic::collective::Chi0;
use gmdh_logic::dataset::BooleanLearningSet;
use gmdh_logic::model::ModelFile;
use gmdh_logic::synthesis::{synthesize, SynthesisConfig};

fn main() -> gmdh_logic::Result<()> {
    let rows: Vec<Vec<bool>> = (0..16u8).map(|i| (0..4).map(|j| i >> (3 - j) & 1 == 1).collect()).collect();
    let labels: Vec<bool> = rows.iter().map(|r| (r[0] || r[1]) && !r[2]).collect();
    let bset = BooleanLearningSet::from_rows(&rows, &labels)?;
    let cfg = SynthesisConfig::default();
    let res = synthesize(&bset, &cfg)?;

    let path = std::env::temp_dir().join("gmdh-logic-example.json");
    ModelFile::from_exterior(&bset, &res, cfg, Chi0::default()).save(&path)?;
    let model = ModelFile::load(&path)?;
    println!("saved to {} with digest {}", path.display(), model.digest);

    let coll = model.collective()?;
    for row in [[true, false, false, true], [false, false, true, false], [true, true, false, false]] {
        let d = coll.vote(&row)?;
        println!("{:?} -> {} (chi {})", row.map(u8::from), d.label_text(), d.chi());
    }
    std::fs::remove_file(&path).ok();
    Ok(())
}
