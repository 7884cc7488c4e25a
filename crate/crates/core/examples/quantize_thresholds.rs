//! Turns quantitative features into one-bit sensors by choosing the
//! threshold and polarity with the fewest training errors.

use gmdh_logic::dataset::{binarize, quantize_feature};
use gmdh_logic::synthetic::{diagnostic, DiagnosticShape};

fn main() -> gmdh_logic::Result<()> {
    let values = [4.1, 5.0, 5.2, 6.8, 7.4, 8.0, 8.3, 9.1];
    let labels = [true, true, true, false, true, false, false, false];
    let t = quantize_feature(&values, &labels)?;
    println!("toy column: u = {}, {:?}, {} training errors", t.u, t.polarity, t.train_errors);

    let set = diagnostic(DiagnosticShape::default())?;
    let bset = binarize(&set, None)?;
    println!("\ndiagnostic set, quantitative features:");
    for (j, f) in set.features().iter().enumerate() {
        if let Some(t) = bset.quantization().threshold(j) {
            println!("  {:<4} u = {:<6} {:<9?} errors {:>2} of {}", f.name, t.u, t.polarity, t.train_errors, set.n());
        }
    }
    Ok(())
}
