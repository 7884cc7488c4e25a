//! The alphabet of reference functions: the ten two-input Boolean functions
//! that depend on both of their inputs.
//!
//! Ids 0..=5 follow the published table (AND, ¬u1∧u2, OR, u1∨¬u2, ¬u1∨u2,
//! NAND). The remaining four nondegenerate functions are frozen as
//! 6 = u1∧¬u2, 7 = NOR, 8 = XOR, 9 = XNOR.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of gates in the alphabet.
pub const GATE_COUNT: usize = 10;

/// Truth-table columns, one 4-bit pattern per gate. Bit `2*u1 + u2` holds
/// the output for inputs `(u1, u2)`.
const TABLES: [u8; GATE_COUNT] = [
    0b1000, // g0: u1 AND u2
    0b0010, // g1: !u1 AND u2
    0b1110, // g2: u1 OR u2
    0b1101, // g3: u1 OR !u2
    0b1011, // g4: !u1 OR u2
    0b0111, // g5: NAND
    0b0100, // g6: u1 AND !u2
    0b0001, // g7: NOR
    0b0110, // g8: XOR
    0b1001, // g9: XNOR
];

const NAMES: [&str; GATE_COUNT] = [
    "AND", "NOT u1 AND u2", "OR", "u1 OR NOT u2", "NOT u1 OR u2", "NAND", "u1 AND NOT u2",
    "NOR", "XOR", "XNOR",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct GateId(u8);

/// Outputs for the input rows `(0,0), (0,1), (1,0), (1,1)`, in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GateTable(pub [bool; 4]);

impl GateId {
    pub fn new(id: u8) -> Result<Self> {
        if (id as usize) < GATE_COUNT {
            Ok(GateId(id))
        } else {
            Err(Error::InvalidGate(id))
        }
    }

    pub const AND: GateId = GateId(0);
    pub const OR: GateId = GateId(2);
    pub const NAND: GateId = GateId(5);
    pub const NOR: GateId = GateId(7);
    pub const XOR: GateId = GateId(8);
    pub const XNOR: GateId = GateId(9);

    pub fn all() -> impl Iterator<Item = GateId> + Clone {
        (0..GATE_COUNT as u8).map(GateId)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn name(self) -> &'static str {
        NAMES[self.0 as usize]
    }

    #[inline]
    pub fn eval(self, u1: bool, u2: bool) -> bool {
        TABLES[self.0 as usize] >> ((u1 as u8) << 1 | u2 as u8) & 1 == 1
    }

    pub fn truth_table(self) -> GateTable {
        GateTable([
            self.eval(false, false),
            self.eval(false, true),
            self.eval(true, false),
            self.eval(true, true),
        ])
    }

    /// Applies the gate to 64 input pairs at once.
    #[inline]
    pub fn eval_word(self, a: u64, b: u64) -> u64 {
        match self.0 {
            0 => a & b,
            1 => !a & b,
            2 => a | b,
            3 => a | !b,
            4 => !a | b,
            5 => !(a & b),
            6 => a & !b,
            7 => !(a | b),
            8 => a ^ b,
            9 => !(a ^ b),
            _ => unreachable!(),
        }
    }
}

/// Checked evaluation by raw id.
pub fn eval_gate(id: u8, u1: bool, u2: bool) -> Result<bool> {
    Ok(GateId::new(id)?.eval(u1, u2))
}

pub fn gate_truth_table(id: u8) -> Result<GateTable> {
    Ok(GateId::new(id)?.truth_table())
}

impl TryFrom<u8> for GateId {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        GateId::new(v)
    }
}

impl From<GateId> for u8 {
    fn from(g: GateId) -> u8 {
        g.0
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

impl FromStr for GateId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits = s.strip_prefix('g').unwrap_or(s);
        let id: u8 = digits.parse().map_err(|_| Error::ExprParse {
            text: s.to_string(),
            message: "expected gate like `g3`".into(),
        })?;
        GateId::new(id)
    }
}

impl GateTable {
    pub fn bits(&self) -> [u8; 4] {
        self.0.map(u8::from)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn published_examples() {
        assert!(eval_gate(0, true, true).unwrap());
        assert!(!eval_gate(5, true, true).unwrap());
        assert!(eval_gate(8, true, false).unwrap());
        assert_eq!(gate_truth_table(0).unwrap().bits(), [0, 0, 0, 1]);
        assert_eq!(gate_truth_table(2).unwrap().bits(), [0, 1, 1, 1]);
        assert_eq!(gate_truth_table(7).unwrap().bits(), [1, 0, 0, 0]);
    }

    #[test]
    fn invalid_id() {
        assert!(matches!(eval_gate(10, false, false), Err(Error::InvalidGate(10))));
        assert!(gate_truth_table(255).is_err());
    }

    #[test]
    fn alphabet_is_all_nondegenerate_functions() {
        let ours: HashSet<[bool; 4]> = GateId::all().map(|g| g.truth_table().0).collect();
        assert_eq!(ours.len(), GATE_COUNT);
        let expected: HashSet<[bool; 4]> = (0u8..16)
            .map(|t| [t & 1 != 0, t & 2 != 0, t & 4 != 0, t & 8 != 0])
            .filter(|t| {
                // drop constants and projections onto u1, !u1, u2, !u2
                let dep_u1 = t[0] != t[2] || t[1] != t[3];
                let dep_u2 = t[0] != t[1] || t[2] != t[3];
                dep_u1 && dep_u2
            })
            .collect();
        assert_eq!(ours, expected);
    }

    #[test]
    fn word_eval_matches_scalar() {
        let a = 0b1100u64;
        let b = 0b1010u64;
        for g in GateId::all() {
            let w = g.eval_word(a, b);
            for i in 0..4 {
                let u1 = a >> i & 1 == 1;
                let u2 = b >> i & 1 == 1;
                assert_eq!(w >> i & 1 == 1, g.eval(u1, u2), "{g} row {i}");
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("g8".parse::<GateId>().unwrap(), GateId::XOR);
        assert_eq!(GateId::NOR.to_string(), "g7");
        assert!("g12".parse::<GateId>().is_err());
        assert!("gx".parse::<GateId>().is_err());
    }
}
