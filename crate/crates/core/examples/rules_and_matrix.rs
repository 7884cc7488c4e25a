//! Trains on the synthetic diagnostic set and prints the collective as a
//! connection matrix and as readable rules.

use std::sync::Arc;

use gmdh_logic::collective::{Chi0, Collective};
use gmdh_logic::dataset::binarize;
use gmdh_logic::render::{render_matrix, select_rules, RuleSelector};
use gmdh_logic::synthesis::{synthesize, SynthesisConfig};
use gmdh_logic::synthetic::{diagnostic, DiagnosticShape};

fn main() -> gmdh_logic::Result<()> {
    let set = diagnostic(DiagnosticShape::default())?;
    let bset = binarize(&set, None)?;
    let res = synthesize(&bset, &SynthesisConfig::default())?;
    println!("success: {}, depth {}, {} members", res.is_success(), res.depth(), res.members().len());

    // the first few members keep the printout short
    let members: Vec<_> = res.members().iter().take(3).map(|c| Arc::clone(&c.expr)).collect();
    let coll = Collective::new(members, bset.m(), Chi0::default())?;
    println!("\n{}", render_matrix(&coll, bset.features()));

    let rules = select_rules(&coll, &RuleSelector::MinChi(Chi0::new(1, 1)?), bset.features(), bset.quantization())?;
    println!("unanimous rules ({}):", rules.len());
    for rule in rules.iter().take(2) {
        println!("  {rule}");
    }
    let first = bset.row(0);
    for rule in select_rules(&coll, &RuleSelector::Instance(first), bset.features(), bset.quantization())? {
        println!("\nrow 1 falls under: {rule}");
    }
    Ok(())
}
