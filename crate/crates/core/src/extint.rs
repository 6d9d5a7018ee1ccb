//! Integers extended by +/- infinity, with the conventions sup(empty) = -inf
//! and inf(empty) = +inf used for homological suprema and infima.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Int(i64),
    PosInf,
}

impl ExtInt {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtInt::Int(_))
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            ExtInt::Int(n) => Some(*n),
            _ => None,
        }
    }

    /// Shift by a finite amount; infinities absorb.
    pub fn add_int(&self, n: i64) -> ExtInt {
        match self {
            ExtInt::Int(m) => ExtInt::Int(m + n),
            inf => *inf,
        }
    }

    pub fn neg(&self) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::PosInf,
            ExtInt::PosInf => ExtInt::NegInf,
            ExtInt::Int(n) => ExtInt::Int(-n),
        }
    }

    /// `self - other`, with `None` for the indeterminate forms inf - inf.
    pub fn checked_sub(&self, other: &ExtInt) -> Option<ExtInt> {
        match (self, other) {
            (ExtInt::Int(a), ExtInt::Int(b)) => Some(ExtInt::Int(a - b)),
            (ExtInt::PosInf, ExtInt::PosInf) | (ExtInt::NegInf, ExtInt::NegInf) => None,
            (ExtInt::PosInf, _) | (_, ExtInt::NegInf) => Some(ExtInt::PosInf),
            (ExtInt::NegInf, _) | (_, ExtInt::PosInf) => Some(ExtInt::NegInf),
        }
    }

    pub fn max(self, other: ExtInt) -> ExtInt {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: ExtInt) -> ExtInt {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// sup of a finite set of values (empty -> -inf).
    pub fn sup_of(values: impl IntoIterator<Item = ExtInt>) -> ExtInt {
        values.into_iter().fold(ExtInt::NegInf, ExtInt::max)
    }

    /// inf of a finite set of values (empty -> +inf).
    pub fn inf_of(values: impl IntoIterator<Item = ExtInt>) -> ExtInt {
        values.into_iter().fold(ExtInt::PosInf, ExtInt::min)
    }
}

impl From<i64> for ExtInt {
    fn from(n: i64) -> Self {
        ExtInt::Int(n)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::PosInf => write!(f, "inf"),
            ExtInt::Int(n) => write!(f, "{}", n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_empty_conventions() {
        assert!(ExtInt::NegInf < ExtInt::Int(-100));
        assert!(ExtInt::Int(100) < ExtInt::PosInf);
        assert_eq!(ExtInt::sup_of([]), ExtInt::NegInf);
        assert_eq!(ExtInt::inf_of([]), ExtInt::PosInf);
    }

    #[test]
    fn subtraction_rules() {
        assert_eq!(ExtInt::Int(3).checked_sub(&ExtInt::Int(5)), Some(ExtInt::Int(-2)));
        assert_eq!(ExtInt::PosInf.checked_sub(&ExtInt::Int(5)), Some(ExtInt::PosInf));
        assert_eq!(ExtInt::PosInf.checked_sub(&ExtInt::PosInf), None);
        assert_eq!(ExtInt::NegInf.checked_sub(&ExtInt::PosInf), Some(ExtInt::NegInf));
    }
}
