//! Majority voting in a collective and the coherence threshold.

use gmdh_logic::collective::{Chi0, Collective};
use gmdh_logic::gates::GateId;
use gmdh_logic::network::Expr;

fn main() -> gmdh_logic::Result<()> {
    let and = GateId::new(0)?;
    let nand = GateId::new(5)?;
    // six AND networks and three NAND networks over four sensors
    let mut members = Vec::new();
    for (j, k) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        members.push(Expr::pair(and, j, k)?);
    }
    for (j, k) in [(0, 1), (0, 2), (1, 3)] {
        members.push(Expr::pair(nand, j, k)?);
    }
    let row = [true; 4];
    for chi0 in [Chi0::default(), Chi0::new(2, 3)?] {
        let coll = Collective::new(members.clone(), 4, chi0)?;
        let d = coll.vote(&row)?;
        println!(
            "chi0 = {chi0}: label {}, {} of {} votes (chi = {}), plausible: {}",
            d.label_text(),
            d.l1,
            d.total,
            d.chi(),
            d.plausible
        );
    }

    let coll = Collective::new(members, 4, Chi0::default())?;
    let map = coll.coherence_map(true)?;
    let plausible = map.rows.iter().filter(|r| r.decision.plausible).count();
    println!("coherence map: {} of {} sensor combinations are plausible", plausible, map.rows.len());
    Ok(())
}
