//! A two-valued bit type.
//!
//! Bits are modeled as a distinct type rather than bare integers so parity
//! operations are total and self-documenting.

use std::fmt;
use std::ops::{BitXor, Not};

/// A classical bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    /// All values, in numeric order.
    pub const ALL: [Bit; 2] = [Bit::Zero, Bit::One];

    /// Numeric value, 0 or 1.
    pub fn as_u8(self) -> u8 {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }

    /// Build from any integer's parity-free truthiness: 0 maps to `Zero`,
    /// everything else to `One`.
    pub fn from_u8(v: u8) -> Bit {
        if v == 0 {
            Bit::Zero
        } else {
            Bit::One
        }
    }

    /// True iff the bit is one.
    pub fn is_one(self) -> bool {
        self == Bit::One
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Bit {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

impl BitXor for Bit {
    type Output = Bit;

    fn bitxor(self, rhs: Bit) -> Bit {
        Bit::from(self != rhs)
    }
}

impl Not for Bit {
    type Output = Bit;

    fn not(self) -> Bit {
        self ^ Bit::One
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_truth_table() {
        assert_eq!(Bit::Zero ^ Bit::Zero, Bit::Zero);
        assert_eq!(Bit::Zero ^ Bit::One, Bit::One);
        assert_eq!(Bit::One ^ Bit::Zero, Bit::One);
        assert_eq!(Bit::One ^ Bit::One, Bit::Zero);
    }

    #[test]
    fn xor_is_involution() {
        for a in Bit::ALL {
            for k in Bit::ALL {
                assert_eq!((a ^ k) ^ k, a);
            }
        }
    }

    #[test]
    fn negation_and_display() {
        assert_eq!(!Bit::Zero, Bit::One);
        assert_eq!(!Bit::One, Bit::Zero);
        assert_eq!(Bit::Zero.to_string(), "0");
        assert_eq!(Bit::One.to_string(), "1");
    }
}
