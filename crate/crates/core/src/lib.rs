//! Self-organizing synthesis of multilayered logical networks.
//!
//! Networks are built layer by layer from two-input Boolean gates. Each new
//! layer extends a surviving network with one sensor, and a candidate
//! survives only when its error count on the learning set is strictly below
//! that of both the network it extends and the sensor it adds. Synthesis
//! stops at the first layer containing error-free networks; all of them form
//! a collective that classifies by majority vote, with the vote share chi
//! reported as a coherence (plausibility) measure.
//!
//! ```
//! use gmdh_logic::{dataset::BooleanLearningSet, synthesis::{synthesize, Outcome, SynthesisConfig}};
//!
//! let rows: Vec<Vec<bool>> = (0..8u8).map(|i| (0..3).map(|j| i >> (2 - j) & 1 == 1).collect()).collect();
//! let labels: Vec<bool> = rows.iter().map(|r| r[0] && r[1]).collect();
//! let bset = BooleanLearningSet::from_rows(&rows, &labels).unwrap();
//! let result = synthesize(&bset, &SynthesisConfig::default()).unwrap();
//! let Outcome::Success { collective, r_star } = result.outcome else { panic!() };
//! assert_eq!(r_star, 1);
//! assert_eq!(collective[0].signature(), "(g0 x0 x1)");
//! ```

pub mod analysis;
pub mod bits;
pub mod classic;
pub mod cli;
pub mod collective;
pub mod compare;
pub mod dataset;
pub mod error;
pub mod gates;
pub mod model;
pub mod network;
pub mod render;
pub mod synthesis;
pub mod synthetic;

pub use error::{Error, Result};
