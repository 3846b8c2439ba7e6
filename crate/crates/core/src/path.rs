//! Binary box-ball states.
//!
//! A [`Path`] is a word over `{0, 1}` where `0` is a vacant box and `1` a box
//! holding a ball. Positions are 1-based everywhere in this crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("invalid character {ch:?} at position {pos}, expected '0' or '1'")]
    InvalidChar { ch: char, pos: usize },
    #[error("invalid letter {0}, expected 0 or 1")]
    InvalidLetter(u8),
    #[error("path has {balls} balls but only {vacant} vacant boxes")]
    NotPositiveWeight { vacant: usize, balls: usize },
    #[error("tabloid position {0} is outside 1..={1}")]
    OutOfRange(usize, usize),
    #[error("tabloid rows must be strictly increasing")]
    NotIncreasing,
    #[error("no cyclic shift satisfies the Yamanouchi condition")]
    NoCut,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Path {
    letters: Vec<u8>,
}

impl Path {
    pub fn new(letters: Vec<u8>) -> Result<Self, PathError> {
        if let Some(&bad) = letters.iter().find(|&&b| b > 1) {
            return Err(PathError::InvalidLetter(bad));
        }
        Ok(Path { letters })
    }

    /// The all-vacant path of length `len`.
    pub fn vacant(len: usize) -> Self {
        Path { letters: vec![0; len] }
    }

    pub fn from_bits(len: usize, bits: u64) -> Self {
        let letters = (0..len).map(|i| ((bits >> (len - 1 - i)) & 1) as u8).collect();
        Path { letters }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> u8 {
        self.letters[pos - 1]
    }

    pub fn balls(&self) -> usize {
        self.letters.iter().filter(|&&b| b == 1).count()
    }

    /// `(count0, count1)`.
    pub fn weight(&self) -> (usize, usize) {
        let ones = self.balls();
        (self.len() - ones, ones)
    }

    pub fn is_positive_weight(&self) -> bool {
        let (zeros, ones) = self.weight();
        zeros >= ones
    }

    pub fn require_positive_weight(&self) -> Result<(), PathError> {
        let (vacant, balls) = self.weight();
        if vacant < balls {
            return Err(PathError::NotPositiveWeight { vacant, balls });
        }
        Ok(())
    }

    /// Every suffix contains at least as many `0`s as `1`s.
    pub fn is_yamanouchi(&self) -> bool {
        let mut excess: i64 = 0;
        for &b in self.letters.iter().rev() {
            excess += if b == 0 { 1 } else { -1 };
            if excess < 0 {
                return false;
            }
        }
        true
    }

    /// `T_1^d`: each application moves the last letter to the front.
    /// Negative `d` shifts the other way; `d` is reduced mod `L`.
    pub fn cyclic_shift(&self, d: i64) -> Path {
        let len = self.len();
        if len == 0 {
            return self.clone();
        }
        let d = d.rem_euclid(len as i64) as usize;
        let mut letters = Vec::with_capacity(len);
        letters.extend_from_slice(&self.letters[len - d..]);
        letters.extend_from_slice(&self.letters[..len - d]);
        Path { letters }
    }

    /// Smallest `d` in `[0, L)` with `T_1^d(p)` Yamanouchi, together with that shift.
    pub fn canonical_cut(&self) -> Result<(usize, Path), PathError> {
        self.require_positive_weight()?;
        for d in 0..self.len().max(1) {
            let shifted = self.cyclic_shift(d as i64);
            if shifted.is_yamanouchi() {
                return Ok((d, shifted));
            }
        }
        Err(PathError::NoCut)
    }

    /// `p ⊗ p ⊗ … ⊗ p` with `copies` factors.
    pub fn repeat(&self, copies: usize) -> Path {
        Path { letters: self.letters.repeat(copies) }
    }

    /// 1-based positions of the balls.
    pub fn ball_positions(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn to_tabloid(&self) -> Tabloid {
        let mut row0 = Vec::new();
        let mut row1 = Vec::new();
        for (i, &b) in self.letters.iter().enumerate() {
            if b == 0 {
                row0.push(i + 1);
            } else {
                row1.push(i + 1);
            }
        }
        Tabloid { row0, row1 }
    }

    /// Append `pad` vacant boxes, embedding a finite path into a semi-infinite system.
    pub fn embed_linear(&self, pad: usize) -> Path {
        let mut letters = self.letters.clone();
        letters.resize(self.len() + pad, 0);
        Path { letters }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.letters {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path({self})")
    }
}

impl FromStr for Path {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(PathError::InvalidChar { ch, pos: i + 1 }),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Ok(Path { letters })
    }
}

impl Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Two-row standard tabloid: positions of `0`s in the first row and of `1`s
/// in the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tabloid {
    pub row0: Vec<usize>,
    pub row1: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TabloidRepr {
    #[serde(rename = "L")]
    len: usize,
    row1: Vec<usize>,
}

impl Tabloid {
    pub fn len(&self) -> usize {
        self.row0.len() + self.row1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Build from the second row alone; the first row is the complement.
    pub fn from_row1(len: usize, row1: Vec<usize>) -> Result<Self, PathError> {
        if row1.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PathError::NotIncreasing);
        }
        if let Some(&bad) = row1.iter().find(|&&x| x == 0 || x > len) {
            return Err(PathError::OutOfRange(bad, len));
        }
        let mut mark = vec![false; len];
        for &x in &row1 {
            mark[x - 1] = true;
        }
        let row0 = (1..=len).filter(|&x| !mark[x - 1]).collect();
        Ok(Tabloid { row0, row1 })
    }

    pub fn to_path(&self) -> Result<Path, PathError> {
        for row in [&self.row0, &self.row1] {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(PathError::NotIncreasing);
            }
        }
        let len = self.len();
        let mut letters = vec![u8::MAX; len];
        for (row, letter) in [(&self.row0, 0u8), (&self.row1, 1u8)] {
            for &x in row {
                if x == 0 || x > len {
                    return Err(PathError::OutOfRange(x, len));
                }
                if letters[x - 1] != u8::MAX {
                    return Err(PathError::NotIncreasing);
                }
                letters[x - 1] = letter;
            }
        }
        Ok(Path { letters })
    }
}

impl Serialize for Tabloid {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TabloidRepr { len: self.len(), row1: self.row1.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tabloid {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = TabloidRepr::deserialize(deserializer)?;
        Tabloid::from_row1(repr.len, repr.row1).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    const GOLDEN: &str = "00111011100100011110001101000000";

    #[test]
    fn weights() {
        assert_eq!(p(GOLDEN).weight(), (18, 14));
        assert_eq!(p("0000").weight(), (4, 0));
        assert_eq!(p("10").weight(), (1, 1));
        assert!(p("10").is_positive_weight());
        assert!(!p("110").is_positive_weight());
    }

    #[test]
    fn yamanouchi() {
        assert!(p("1100").is_yamanouchi());
        assert!(!p("0011").is_yamanouchi());
        assert!(p("0").is_yamanouchi());
        assert!(p(GOLDEN).is_yamanouchi());
    }

    #[test]
    fn shifts() {
        assert_eq!(p("011").cyclic_shift(1), p("101"));
        assert_eq!(p("0001110100011001101").cyclic_shift(6), p("0011010001110100011"));
        assert_eq!(
            p("00000111011100100001100011101100").cyclic_shift(13),
            p("11000111011000000011101110010000")
        );
        assert_eq!(p("0011").cyclic_shift(-1), p("0110"));
        assert_eq!(p(GOLDEN).cyclic_shift(32), p(GOLDEN));
        assert_eq!(p(GOLDEN).cyclic_shift(90381), p(GOLDEN).cyclic_shift(13));
    }

    #[test]
    fn cuts() {
        assert_eq!(p("0011").canonical_cut().unwrap(), (2, p("1100")));
        assert_eq!(p("1100").canonical_cut().unwrap(), (0, p("1100")));
        assert_eq!(p(GOLDEN).canonical_cut().unwrap(), (0, p(GOLDEN)));
        assert!(matches!(
            p("0111").canonical_cut(),
            Err(PathError::NotPositiveWeight { vacant: 1, balls: 3 })
        ));
    }

    #[test]
    fn tabloids() {
        assert_eq!(p("0110").to_tabloid().row1, vec![2, 3]);
        assert_eq!(
            p(GOLDEN).to_tabloid().row1,
            vec![3, 4, 5, 7, 8, 9, 12, 16, 17, 18, 19, 23, 24, 26]
        );
        let t = p("0110").to_tabloid();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"L":4,"row1":[2,3]}"#);
        let back: Tabloid = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn bad_tabloids() {
        let overlap = Tabloid { row0: vec![1, 2], row1: vec![2] };
        assert!(overlap.to_path().is_err());
        let gapped = Tabloid { row0: vec![1], row1: vec![4] };
        assert_eq!(gapped.to_path(), Err(PathError::OutOfRange(4, 2)));
        assert_eq!(Tabloid::from_row1(3, vec![2, 2]), Err(PathError::NotIncreasing));
    }

    #[test]
    fn tabloid_roundtrip_exhaustive() {
        for len in 0..=12 {
            for bits in 0..(1u64 << len) {
                let path = Path::from_bits(len, bits);
                assert_eq!(path.to_tabloid().to_path().unwrap(), path);
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert_eq!("01a".parse::<Path>(), Err(PathError::InvalidChar { ch: 'a', pos: 3 }));
        assert_eq!(Path::new(vec![0, 2]), Err(PathError::InvalidLetter(2)));
    }

    #[test]
    fn embedding() {
        assert_eq!(p("11").embed_linear(4), p("110000"));
        assert_eq!(p("").embed_linear(3), p("000"));
    }
}
