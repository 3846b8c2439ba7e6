//! 10-elimination.
//!
//! Every adjacent `10` pair of a word is erased in one simultaneous sweep and
//! the sweep is repeated until no `1` survives. Each surviving letter carries
//! the position it came from, so every erased pair joins a `1` and a `0` of
//! the original path by an arc. The erased runs also determine the soliton
//! content: lengths, multiplicities and the positions of the 0-solitons.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::path::{Path, PathError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EliminationError {
    #[error("elimination stalled at level {level}: {ones} balls left but no 10-pair")]
    Stalled { level: usize, ones: usize },
    #[error(transparent)]
    Path(#[from] PathError),
}

/// A letter of some `E^k(p)` together with its 1-based position in `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Annotated {
    pub letter: u8,
    pub origin: usize,
}

pub type Word = Vec<Annotated>;

pub fn annotate(p: &Path) -> Word {
    p.letters()
        .iter()
        .enumerate()
        .map(|(i, &letter)| Annotated { letter, origin: i + 1 })
        .collect()
}

pub fn word_string(w: &[Annotated]) -> String {
    w.iter().map(|a| if a.letter == 0 { '0' } else { '1' }).collect()
}

/// One sweep. Returns the reduced word and the erased pairs as 1-based
/// `(i, i + 1)` coordinates inside `w`.
pub fn eliminate_once(w: &[Annotated]) -> (Word, Vec<(usize, usize)>) {
    let pairs: Vec<(usize, usize)> = (1..w.len())
        .filter(|&i| w[i - 1].letter == 1 && w[i].letter == 0)
        .map(|i| (i, i + 1))
        .collect();
    let mut erased = vec![false; w.len()];
    for &(a, b) in &pairs {
        erased[a - 1] = true;
        erased[b - 1] = true;
    }
    let rest = w
        .iter()
        .zip(&erased)
        .filter(|(_, &gone)| !gone)
        .map(|(&a, _)| a)
        .collect();
    (rest, pairs)
}

/// 0-solitons generated by one sweep, sitting in the reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonMark {
    /// Coordinate of the left context letter in the reduced word, 0 at the head.
    pub position: usize,
    pub count: usize,
}

fn soliton_marks(w: &[Annotated], pairs: &[(usize, usize)]) -> Vec<SolitonMark> {
    let mut marks = Vec::new();
    let mut idx = 0;
    while idx < pairs.len() {
        // maximal run (10)^m occupying consecutive coordinates
        let run_start = idx;
        let start = pairs[idx].0;
        let mut end = pairs[idx].1;
        let mut m = 1;
        while idx + m < pairs.len() && pairs[idx + m].0 == end + 1 {
            end = pairs[idx + m].1;
            m += 1;
        }
        idx += m;

        let left = (start > 1).then(|| w[start - 2].letter);
        let right = (end < w.len()).then(|| w[end].letter);
        let count = match (left, right) {
            (Some(1), Some(0)) => m - 1,
            _ => m,
        };
        // X sits at coordinate start - 1; every earlier pair lies left of it
        let position = (start - 1) - 2 * run_start;
        if count > 0 {
            marks.push(SolitonMark { position, count });
        }
    }
    marks
}

/// Soliton lengths with multiplicities and 0-soliton positions, longest first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolitonSpectrum {
    pub entries: Vec<SpectrumEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    #[serde(rename = "L")]
    pub length: usize,
    #[serde(rename = "m")]
    pub multiplicity: usize,
    #[serde(rename = "x")]
    pub positions: Vec<i64>,
}

impl SolitonSpectrum {
    /// The partition `(L_1^{m_1}, L_2^{m_2}, …)`.
    pub fn shape(&self) -> Vec<usize> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.length, e.multiplicity))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationTrace {
    /// `E^0(p), E^1(p), …`; the last level contains no `1`.
    pub levels: Vec<Word>,
    /// `e_k`: pairs erased going from `E^k` to `E^{k+1}`.
    pub e_vector: Vec<usize>,
    /// `(i, j)` origin positions, `1` at `i` matched with `0` at `j`.
    pub arcs: Vec<(usize, usize)>,
    /// `marks[k]` holds the 0-solitons sitting in `E^{k+1}(p)`.
    pub marks: Vec<Vec<SolitonMark>>,
}

pub fn eliminate_all(p: &Path) -> Result<EliminationTrace, EliminationError> {
    let mut levels = vec![annotate(p)];
    let mut e_vector = Vec::new();
    let mut arcs = Vec::new();
    let mut marks = Vec::new();
    loop {
        let current = levels.last().expect("at least one level");
        let ones = current.iter().filter(|a| a.letter == 1).count();
        if ones == 0 {
            break;
        }
        let (next, pairs) = eliminate_once(current);
        if pairs.is_empty() {
            return Err(EliminationError::Stalled { level: levels.len() - 1, ones });
        }
        arcs.extend(pairs.iter().map(|&(a, b)| (current[a - 1].origin, current[b - 1].origin)));
        marks.push(soliton_marks(current, &pairs));
        e_vector.push(pairs.len());
        levels.push(next);
    }
    arcs.sort_unstable();
    Ok(EliminationTrace { levels, e_vector, arcs, marks })
}

impl EliminationTrace {
    pub fn level_strings(&self) -> Vec<String> {
        self.levels.iter().map(|w| word_string(w)).collect()
    }

    pub fn soliton_spectrum(&self) -> SolitonSpectrum {
        let mut entries: Vec<SpectrumEntry> = self
            .marks
            .iter()
            .enumerate()
            .filter_map(|(k, level)| {
                let mut positions: Vec<i64> = level
                    .iter()
                    .flat_map(|m| std::iter::repeat_n(m.position as i64, m.count))
                    .collect();
                if positions.is_empty() {
                    return None;
                }
                positions.sort_unstable();
                Some(SpectrumEntry { length: k + 1, multiplicity: positions.len(), positions })
            })
            .collect();
        entries.reverse();
        SolitonSpectrum { entries }
    }
}

/// Conjugate partition of a weakly decreasing sequence.
pub fn transpose(parts: &[usize]) -> Vec<usize> {
    let first = parts.first().copied().unwrap_or(0);
    (1..=first).map(|i| parts.iter().filter(|&&x| x >= i).count()).collect()
}

/// `T_∞` through arcs: flip both endpoints of every arc of the canonically
/// cut path, then undo the cut.
pub fn t_infinity_arcs(p: &Path) -> Result<Path, EliminationError> {
    let (d, cut) = p.canonical_cut()?;
    let trace = eliminate_all(&cut)?;
    let mut letters = cut.letters().to_vec();
    for &(i, j) in &trace.arcs {
        letters[i - 1] = 0;
        letters[j - 1] = 1;
    }
    let flipped = Path::new(letters)?;
    Ok(flipped.cyclic_shift(-(d as i64)))
}
