//! Exact fractions in `[0, 1)` and the fraction sets `L` they form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An irreducible fraction `a/b` with `0 <= a/b < 1`.
///
/// Zero is canonically stored as `0/1`. All comparisons and membership
/// tests are exact; no floating point is involved anywhere.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    /// Reduces `num/den` and checks it lies in `[0, 1)`.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        if num >= den {
            return Err(Error::ImproperFraction { num, den });
        }
        if num == 0 {
            return Ok(Fraction { num: 0, den: 1 });
        }
        let g = num.gcd(&den);
        Ok(Fraction {
            num: num / g,
            den: den / g,
        })
    }

    pub const fn zero() -> Self {
        Fraction { num: 0, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            msg: format!("expected a fraction of the form a/b, got {s:?}"),
        };
        let (a, b) = s.trim().split_once('/').ok_or_else(bad)?;
        let num: u64 = a.trim().parse().map_err(|_| bad())?;
        let den: u64 = b.trim().parse().map_err(|_| bad())?;
        Fraction::new(num, den)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The set `L` of admissible fractions, kept sorted ascending and duplicate
/// free. Reducible user input such as `2/4` is reduced first; duplicates
/// after reduction are rejected.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct LSet {
    #[serde(rename = "fractions")]
    fracs: Vec<Fraction>,
}

impl LSet {
    pub fn new(mut fracs: Vec<Fraction>) -> Result<Self> {
        if fracs.is_empty() {
            return Err(Error::EmptyLSet);
        }
        fracs.sort();
        for w in fracs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateFraction(w[0]));
            }
        }
        Ok(LSet { fracs })
    }

    pub fn singleton(frac: Fraction) -> Self {
        LSet { fracs: vec![frac] }
    }

    pub fn fractions(&self) -> &[Fraction] {
        &self.fracs
    }

    /// `s = |L|`.
    pub fn size(&self) -> usize {
        self.fracs.len()
    }

    /// `t = max(s, max b_i)`, the parameter driving the prime window.
    pub fn t_parameter(&self) -> u64 {
        let max_den = self.fracs.iter().map(|f| f.den()).max().unwrap_or(1);
        max_den.max(self.fracs.len() as u64)
    }

    pub fn max_fraction(&self) -> Fraction {
        *self.fracs.last().expect("LSet is non-empty")
    }

    pub fn contains(&self, frac: &Fraction) -> bool {
        self.fracs.binary_search(frac).is_ok()
    }
}

impl fmt::Display for LSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for frac in &self.fracs {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{frac}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fracs = s
            .split(',')
            .map(|tok| tok.parse())
            .collect::<Result<Vec<Fraction>>>()?;
        LSet::new(fracs)
    }
}
