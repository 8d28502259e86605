//! Sign vectors, chambers, k-consistency and the Yoshinaga test.
//!
//! A sign vector picks one open side of every hyperplane. It is
//! *k-consistent* when every choice of at most `k+1` of its half-spaces has a
//! common point; `sigma_k` counts those. `sigma_1 = 2^n` and `sigma_r` is the
//! number of chambers, and the arrangement passes Yoshinaga's test when
//! `sigma_2` already equals the chamber count.

mod chambers;
mod local;
mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arrangement::{bits, mask_of_len};
use crate::error::Error;

pub use chambers::{enumerate_chambers, Chamber, ChamberSet, DEFAULT_CHAMBER_CAP};
pub use local::{local_chamber_patterns, local_patterns_by_chambers, LocalPatterns};
pub use search::{
    count_sigma, sigma_chain, sigma_set, yoshinaga, SearchLimits, SigmaChain, DEFAULT_NODE_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_bool(plus: bool) -> Sign {
        if plus {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A total sign assignment on `len` hyperplanes, bit `i` set meaning `H_i^+`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    len: u8,
    plus: u64,
}

impl SignVector {
    pub fn new(len: usize, plus: u64) -> Self {
        assert!(len <= 64, "sign vectors hold at most 64 entries");
        SignVector {
            len: len as u8,
            plus: plus & mask_of_len(len),
        }
    }

    pub fn all_plus(len: usize) -> Self {
        Self::new(len, u64::MAX)
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let plus = signs
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Plus)
            .fold(0u64, |m, (i, _)| m | (1 << i));
        Self::new(signs.len(), plus)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn plus_mask(&self) -> u64 {
        self.plus
    }

    pub fn get(&self, i: usize) -> Sign {
        assert!(i < self.len(), "index {i} out of range");
        Sign::from_bool(self.plus >> i & 1 == 1)
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub fn negate(&self) -> SignVector {
        SignVector::new(self.len(), !self.plus)
    }

    /// Signs on the hyperplanes in `mask`, in increasing index order.
    pub fn restrict(&self, mask: u64) -> Vec<Sign> {
        bits(mask & mask_of_len(self.len()))
            .map(|i| self.get(i))
            .collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(Error::InvalidInput(format!("bad sign character {c:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if signs.len() > 64 {
            return Err(Error::InvalidInput("sign vector longer than 64".into()));
        }
        Ok(SignVector::from_signs(&signs))
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
