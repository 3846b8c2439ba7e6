//! Action-angle coordinates of the periodic system.
//!
//! The action variable is the conserved partition `ν` of the canonically cut
//! path. The angle variable keeps, for each distinct row length `i`, a window
//! of `m_i` riggings viewed as one period of the bi-infinite sequence
//! `J_{k + m_i, i} = J_{k, i} + P_i(ν)`. Time evolution is linear in these
//! coordinates, `T_l: J_{k,i} ↦ J_{k,i} + min(i, l)`, which turns
//! `T_l^n` into a single addition followed by a reconstruction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crystal::Capacity;
use crate::kkr::{forward, vacancy, KkrError, RiggedConfiguration, Row};
use crate::path::{Path, PathError};
use crate::tau::{path_from_rc, TauError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ScatteringError {
    #[error("sigma_{0} is undefined: no row of length {0}")]
    UnknownLength(usize),
    #[error("cannot normalize angle data: {0}")]
    NormalizationFailed(String),
    #[error("arithmetic overflow while evolving riggings")]
    Overflow,
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Kkr(#[from] KkrError),
    #[error(transparent)]
    Tau(#[from] TauError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AngleVariable {
    len: usize,
    nu: Vec<usize>,
    blocks: BTreeMap<usize, Vec<i64>>,
}

impl AngleVariable {
    /// `ι`: group the riggings of `rc` by row length.
    pub fn from_rc(rc: &RiggedConfiguration) -> Self {
        AngleVariable { len: rc.len, nu: rc.nu(), blocks: rc.blocks() }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    pub fn blocks(&self) -> &BTreeMap<usize, Vec<i64>> {
        &self.blocks
    }

    pub fn window(&self, i: usize) -> Option<&[i64]> {
        self.blocks.get(&i).map(Vec::as_slice)
    }

    pub fn vacancy(&self, i: usize) -> i64 {
        vacancy(&self.nu, self.len as i64, i)
    }

    /// `J_{k,i}` for any integer `k`; `k = 1..=m_i` is the stored window.
    pub fn extended(&self, i: usize, k: i64) -> Option<i64> {
        let w = self.blocks.get(&i)?;
        let m = w.len() as i64;
        let q = (k - 1).div_euclid(m);
        let r = (k - 1).rem_euclid(m) as usize;
        Some(w[r] + q * self.vacancy(i))
    }

    /// `σ_j`.
    pub fn sigma(&self, j: usize) -> Result<Self, ScatteringError> {
        self.sigma_pow(j, 1)
    }

    /// `σ_j^n` for any integer `n`: block `j` advances `n` places along its
    /// extended sequence, and every block `i` gains `2 n min(i, j)`.
    pub fn sigma_pow(&self, j: usize, n: i64) -> Result<Self, ScatteringError> {
        if !self.blocks.contains_key(&j) {
            return Err(ScatteringError::UnknownLength(j));
        }
        let mut blocks = BTreeMap::new();
        for (&i, w) in &self.blocks {
            let gain = 2 * n * i.min(j) as i64;
            let window: Vec<i64> = if i == j {
                (1..=w.len() as i64).map(|k| self.extended(i, k + n).unwrap() + gain).collect()
            } else {
                w.iter().map(|&x| x + gain).collect()
            };
            blocks.insert(i, window);
        }
        Ok(AngleVariable { len: self.len, nu: self.nu.clone(), blocks })
    }

    /// Add `c` to every entry.
    pub fn offset(&self, c: i64) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|(&i, w)| (i, w.iter().map(|&x| x + c).collect()))
            .collect();
        AngleVariable { len: self.len, nu: self.nu.clone(), blocks }
    }

    /// `T_l^n` on angles: block `i` gains `n · min(i, l)`.
    pub fn evolve(&self, capacity: Capacity, steps: u64) -> Result<Self, ScatteringError> {
        let steps = i64::try_from(steps).map_err(|_| ScatteringError::Overflow)?;
        let mut blocks = BTreeMap::new();
        for (&i, w) in &self.blocks {
            let gain = steps
                .checked_mul(capacity.min_with(i) as i64)
                .ok_or(ScatteringError::Overflow)?;
            let window = w
                .iter()
                .map(|&x| x.checked_add(gain).ok_or(ScatteringError::Overflow))
                .collect::<Result<_, _>>()?;
            blocks.insert(i, window);
        }
        Ok(AngleVariable { len: self.len, nu: self.nu.clone(), blocks })
    }

    /// The windows read back as a rigged configuration.
    pub fn to_rc(&self) -> RiggedConfiguration {
        let rows = self
            .blocks
            .iter()
            .flat_map(|(&length, w)| w.iter().map(move |&rigging| Row { length, rigging }))
            .collect();
        RiggedConfiguration::new(self.len, rows)
    }
}

/// `p = T_1^d(path of angle)`: the shift is kept apart from the windows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScatteringData {
    pub d: i64,
    pub angle: AngleVariable,
}

#[derive(Serialize, Deserialize)]
struct ScatteringRepr {
    #[serde(rename = "L")]
    len: usize,
    d: i64,
    nu: Vec<usize>,
    blocks: BTreeMap<usize, Vec<i64>>,
}

impl Serialize for ScatteringData {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ScatteringRepr {
            len: self.angle.len,
            d: self.d,
            nu: self.angle.nu.clone(),
            blocks: self.angle.blocks.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ScatteringData {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ScatteringRepr::deserialize(deserializer)?;
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &i in &repr.nu {
            *counts.entry(i).or_default() += 1;
        }
        let consistent = repr.nu.windows(2).all(|w| w[0] >= w[1])
            && counts.len() == repr.blocks.len()
            && counts.iter().all(|(i, &m)| repr.blocks.get(i).is_some_and(|w| w.len() == m));
        if !consistent {
            return Err(serde::de::Error::custom("blocks do not match nu"));
        }
        Ok(ScatteringData {
            d: repr.d,
            angle: AngleVariable { len: repr.len, nu: repr.nu, blocks: repr.blocks },
        })
    }
}

/// `Φ`: cut the circle, then take the riggings of the cut path.
pub fn direct_scattering(p: &Path) -> Result<ScatteringData, ScatteringError> {
    let (cut, cut_path) = p.canonical_cut()?;
    let rc = forward(&cut_path)?;
    let len = p.len() as i64;
    let d = if len == 0 { 0 } else { (len - cut as i64).rem_euclid(len) };
    Ok(ScatteringData { d, angle: AngleVariable::from_rc(&rc) })
}

pub fn evolve_angle(
    sd: &ScatteringData,
    capacity: Capacity,
    steps: u64,
) -> Result<ScatteringData, ScatteringError> {
    Ok(ScatteringData { d: sd.d, angle: sd.angle.evolve(capacity, steps)? })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationStep {
    pub length: usize,
    pub exponent: i64,
    /// Windows right after applying `σ_length^exponent`.
    pub angle: AngleVariable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub steps: Vec<NormalizationStep>,
    /// Constant subtracted from every entry after the `σ` steps.
    pub constant: i64,
    pub d: i64,
    pub rc: RiggedConfiguration,
}

fn ceil_div(x: i64, p: i64) -> i64 {
    -(-x).div_euclid(p)
}

/// Bring the data into the box `0 ≤ J_{1,i} ≤ … ≤ J_{m_i,i} ≤ P_i`.
///
/// The longest block is the anchor. Every other block, longest first, is
/// moved by a power of its own `σ_i`, which changes its offset relative to
/// the anchor by whole windows without disturbing longer blocks. Finally the
/// anchor's first entry is subtracted from everything.
pub fn normalize(sd: &ScatteringData) -> Result<Normalization, ScatteringError> {
    let fail = |msg: String| ScatteringError::NormalizationFailed(msg);
    let mut current = sd.angle.clone();
    let Some(&anchor) = current.blocks.keys().next_back() else {
        return Ok(Normalization {
            steps: Vec::new(),
            constant: 0,
            d: sd.d,
            rc: RiggedConfiguration::empty(current.len),
        });
    };

    let lengths: Vec<usize> = current.blocks.keys().rev().skip(1).copied().collect();
    let mut steps = Vec::new();
    for i in lengths {
        let period = current.vacancy(i);
        if period <= 0 {
            return Err(fail(format!("vacancy P_{i} = {period} is not positive")));
        }
        let base = current.blocks[&anchor][0];
        let window = &current.blocks[&i];
        let m = window.len() as i64;
        // first index k with J_{k,i} >= anchor value
        let first = window
            .iter()
            .enumerate()
            .map(|(r, &x)| ceil_div(base - x, period) * m + r as i64 + 1)
            .min()
            .expect("blocks are nonempty");
        let exponent = first - 1;
        current = current.sigma_pow(i, exponent)?;
        steps.push(NormalizationStep { length: i, exponent, angle: current.clone() });
    }

    let constant = current.blocks[&anchor][0];
    let rc = current.offset(-constant).to_rc();
    if !rc.is_normalized() {
        return Err(fail(format!("riggings {:?} leave the box", rc.riggings())));
    }
    let d = sd.d.checked_add(constant).ok_or(ScatteringError::Overflow)?;
    Ok(Normalization { steps, constant, d, rc })
}

/// `Φ^{-1}`.
pub fn inverse_scattering(sd: &ScatteringData) -> Result<Path, ScatteringError> {
    let norm = normalize(sd)?;
    let cut = path_from_rc(&norm.rc)?;
    Ok(cut.cyclic_shift(norm.d))
}

/// `T_l^n(p)` computed in angle coordinates.
pub fn fast_forward(p: &Path, capacity: Capacity, steps: u64) -> Result<Path, ScatteringError> {
    let sd = direct_scattering(p)?;
    inverse_scattering(&evolve_angle(&sd, capacity, steps)?)
}

impl ScatteringData {
    /// Same class iff both reconstruct to the same path.
    pub fn equivalent(&self, other: &ScatteringData) -> Result<bool, ScatteringError> {
        Ok(inverse_scattering(self)? == inverse_scattering(other)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: &str = "00111011100100011110001101000000";

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    fn blocks(a: &AngleVariable) -> Vec<(usize, Vec<i64>)> {
        a.blocks().iter().rev().map(|(&i, w)| (i, w.clone())).collect()
    }

    fn angle_of(s: &str) -> AngleVariable {
        AngleVariable::from_rc(&forward(&p(s)).unwrap())
    }

    #[test]
    fn iota_extension() {
        let a = angle_of("0011010001110100011");
        let ext: Vec<i64> = (-3..=6).map(|k| a.extended(2, k).unwrap()).collect();
        assert_eq!(ext, vec![-6, -3, -3, 0, 0, 3, 3, 6, 6, 9]);
        assert!(angle_of("0000").is_empty());
        assert_eq!(
            blocks(&angle_of(GOLDEN)),
            vec![(5, vec![-3]), (4, vec![-1]), (2, vec![8]), (1, vec![3, 6, 14])]
        );
    }

    #[test]
    fn sigma_images() {
        let a = angle_of("0011010001110100011");
        let s2 = a.sigma(2).unwrap();
        assert_eq!(blocks(&s2), vec![(3, vec![4]), (2, vec![7, 7]), (1, vec![4, 8])]);
        let s12 = s2.sigma(1).unwrap();
        assert_eq!(blocks(&s12), vec![(3, vec![6]), (2, vec![9, 9]), (1, vec![10, 15])]);
        assert_eq!(s12, angle_of("0001110100011001101").offset(6));
        assert_eq!(a.sigma(4), Err(ScatteringError::UnknownLength(4)));
    }

    #[test]
    fn sigma_powers_compose() {
        let a = angle_of(GOLDEN);
        let twice = a.sigma(1).unwrap().sigma(1).unwrap();
        assert_eq!(a.sigma_pow(1, 2).unwrap(), twice);
        assert_eq!(a.sigma_pow(4, -3).unwrap().sigma_pow(4, 3).unwrap(), a);
    }

    #[test]
    fn direct_transform() {
        let sd = direct_scattering(&p(GOLDEN)).unwrap();
        assert_eq!(sd.d, 0);
        let sd = direct_scattering(&p("0011")).unwrap();
        assert_eq!(sd.d, 2);
        assert_eq!(blocks(&sd.angle), vec![(2, vec![-2])]);
        assert_eq!(inverse_scattering(&sd).unwrap(), p("0011"));
    }

    #[test]
    fn golden_fast_forward() {
        let sd = direct_scattering(&p(GOLDEN)).unwrap();
        let evolved = evolve_angle(&sd, Capacity::Infinite, 10_000).unwrap();
        assert_eq!(
            blocks(&evolved.angle),
            vec![
                (5, vec![49997]),
                (4, vec![39999]),
                (2, vec![20008]),
                (1, vec![10003, 10006, 10014])
            ]
        );
        let norm = normalize(&evolved).unwrap();
        let exps: Vec<(usize, i64)> = norm.steps.iter().map(|s| (s.length, s.exponent)).collect();
        assert_eq!(exps, vec![(4, 1667), (2, 2619), (1, 3 * 2762)]);
        assert_eq!(
            blocks(&norm.steps[0].angle),
            vec![
                (5, vec![63333]),
                (4, vec![63337]),
                (2, vec![26676]),
                (1, vec![13337, 13340, 13348])
            ]
        );
        assert_eq!(
            blocks(&norm.steps[1].angle),
            vec![
                (5, vec![73809]),
                (4, vec![73813]),
                (2, vec![73818]),
                (1, vec![18575, 18578, 18586])
            ]
        );
        assert_eq!(norm.constant, 90381);
        assert_eq!(norm.rc.riggings(), vec![0, 4, 9, 6, 9, 17]);
        assert_eq!(
            inverse_scattering(&evolved).unwrap(),
            p("11000111011000000011101110010000")
        );
    }

    #[test]
    fn normalized_input_is_fixed() {
        let rc = RiggedConfiguration::from_parts(32, &[5, 4, 2, 1, 1, 1], &[0, 4, 9, 6, 9, 17]).unwrap();
        let sd = ScatteringData { d: 3, angle: AngleVariable::from_rc(&rc) };
        let norm = normalize(&sd).unwrap();
        assert_eq!(norm.constant, 0);
        assert_eq!(norm.d, 3);
        assert_eq!(norm.rc, rc);
        assert!(norm.steps.iter().all(|s| s.exponent == 0));
    }

    #[test]
    fn empty_data() {
        let sd = ScatteringData { d: 0, angle: AngleVariable::from_rc(&RiggedConfiguration::empty(5)) };
        assert_eq!(inverse_scattering(&sd).unwrap(), p("00000"));
    }

    #[test]
    fn equivalence_after_shift() {
        let q = p("0011010001110100011");
        let qp = p("0001110100011001101");
        let a = direct_scattering(&q).unwrap();
        let b = evolve_angle(&direct_scattering(&qp).unwrap(), Capacity::Finite(1), 6).unwrap();
        assert!(a.equivalent(&b).unwrap());
        assert!(!a.equivalent(&direct_scattering(&qp).unwrap()).unwrap());
    }

    #[test]
    fn json_layout() {
        let sd = direct_scattering(&p(GOLDEN)).unwrap();
        let json = serde_json::to_string(&sd).unwrap();
        assert_eq!(
            json,
            r#"{"L":32,"d":0,"nu":[5,4,2,1,1,1],"blocks":{"1":[3,6,14],"2":[8],"4":[-1],"5":[-3]}}"#
        );
        let back: ScatteringData = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sd);
        let bad = r#"{"L":4,"d":0,"nu":[2],"blocks":{"1":[0]}}"#;
        assert!(serde_json::from_str::<ScatteringData>(bad).is_err());
    }
}
