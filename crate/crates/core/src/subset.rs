//! Subsets of a ground set `[n]` as bitmasks.
//!
//! Element labels are 1-based externally (matching set notation `[n]`);
//! internally element `i` occupies bit `i-1`. Masks span as many 64-bit
//! words as the ground set requires, so there is no fixed small-n limit
//! in the data model.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 2]>;

fn word_count(n: u32) -> usize {
    (n as usize + 63) / 64
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    ground_n: u32,
    words: Words,
}

impl Subset {
    pub fn empty(ground_n: u32) -> Self {
        debug_assert!(ground_n >= 1);
        Subset {
            ground_n,
            words: smallvec![0; word_count(ground_n)],
        }
    }

    /// Builds a subset from 1-based element labels, in any order.
    pub fn from_elems(ground_n: u32, elems: &[u32]) -> Result<Self> {
        if ground_n == 0 {
            return Err(Error::ZeroGround);
        }
        let mut s = Subset::empty(ground_n);
        for &e in elems {
            if e == 0 || e > ground_n {
                return Err(Error::ElementOutOfRange { elem: e, n: ground_n });
            }
            let (w, b) = ((e as usize - 1) / 64, (e - 1) % 64);
            if s.words[w] >> b & 1 == 1 {
                return Err(Error::DuplicateElement(e));
            }
            s.words[w] |= 1 << b;
        }
        Ok(s)
    }

    /// Builds a subset over `[n]`, `n <= 64`, from a plain bitmask.
    pub fn from_mask(ground_n: u32, mask: u64) -> Self {
        assert!(ground_n >= 1 && ground_n <= 64);
        assert!(ground_n == 64 || mask < 1 << ground_n);
        Subset {
            ground_n,
            words: smallvec![mask],
        }
    }

    pub fn singleton(ground_n: u32, elem: u32) -> Result<Self> {
        Subset::from_elems(ground_n, &[elem])
    }

    pub fn ground_n(&self) -> u32 {
        self.ground_n
    }

    pub fn card(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Membership of the 1-based element `e`.
    pub fn contains(&self, e: u32) -> bool {
        if e == 0 || e > self.ground_n {
            return false;
        }
        self.words[(e as usize - 1) / 64] >> ((e - 1) % 64) & 1 == 1
    }

    /// 1-based element labels in ascending order.
    pub fn elems(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.card() as usize);
        for (wi, &w) in self.words.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                let b = rest.trailing_zeros();
                out.push(wi as u32 * 64 + b + 1);
                rest &= rest - 1;
            }
        }
        out
    }

    pub fn intersection_card(&self, other: &Self) -> u32 {
        debug_assert_eq!(self.ground_n, other.ground_n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// First mask word; the whole mask when `n <= 64`.
    pub fn low_word(&self) -> u64 {
        self.words[0]
    }

    /// The same set viewed over a larger ground set.
    pub fn with_ground(&self, ground_n: u32) -> Result<Self> {
        if ground_n < self.ground_n {
            if let Some(&e) = self.elems().iter().find(|&&e| e > ground_n) {
                return Err(Error::ElementOutOfRange { elem: e, n: ground_n });
            }
        }
        let mut words: Words = smallvec![0; word_count(ground_n)];
        for (i, &w) in self.words.iter().enumerate() {
            words[i] = w;
        }
        Ok(Subset { ground_n, words })
    }

    /// Applies a permutation of `[n]`; `perm[e-1]` is the image of element `e`.
    pub fn permuted(&self, perm: &[u32]) -> Result<Self> {
        if perm.len() != self.ground_n as usize {
            return Err(Error::InvalidParam(format!(
                "permutation has length {}, ground set is [{}]",
                perm.len(),
                self.ground_n
            )));
        }
        let images: Vec<u32> = self
            .elems()
            .iter()
            .map(|&e| perm[e as usize - 1])
            .collect();
        Subset::from_elems(self.ground_n, &images)
    }

    /// Canonical order: cardinality first, then mask value.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.card()
            .cmp(&other.card())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ground_n
            .cmp(&other.ground_n)
            .then_with(|| self.canonical_cmp(other))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let elems = self.elems();
        let mut seq = serializer.serialize_seq(Some(elems.len()))?;
        for e in elems {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

/// All `k`-element bitmasks over `[n]` in ascending mask order
/// (Gosper's hack). Requires `n <= 63`.
pub fn masks_of_card(n: u32, k: u32) -> impl Iterator<Item = u64> {
    assert!(n <= 63);
    let limit = 1u64 << n;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut cur = if k > n { None } else { Some(first) };
    std::iter::from_fn(move || {
        let x = cur?;
        cur = if x == 0 {
            None
        } else {
            let u = x & x.wrapping_neg();
            let v = x + u;
            let next = v + (((v ^ x) / u) >> 2);
            (next < limit).then_some(next)
        };
        Some(x)
    })
}
