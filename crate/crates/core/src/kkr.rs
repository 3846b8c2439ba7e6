//! Rigged configurations for two-row tabloids.
//!
//! [`forward`] sends a path to a partition `ν` of the number of balls with an
//! integer rigging on every row. Together with the 10-elimination data this
//! gives two independent descriptions of the same soliton content: a row of
//! length `L_j` with rigging `J` is a 0-soliton of length `L_j` at position
//! `J + L_j`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elimination::{transpose, SolitonSpectrum, SpectrumEntry};
use crate::path::{Path, Tabloid};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KkrError {
    #[error("no singular string while inserting position {0}")]
    NoSingularString(usize),
    #[error("rigged configuration has {nu} rows but {riggings} riggings")]
    Malformed { nu: usize, riggings: usize },
    #[error("partition is not weakly decreasing")]
    NotPartition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Row {
    pub length: usize,
    pub rigging: i64,
}

/// `Q_i(ν) = Σ_a min(i, ν_a)`.
pub fn column_sum(nu: &[usize], i: usize) -> usize {
    nu.iter().map(|&a| a.min(i)).sum()
}

/// Vacancy number `P_i(ν) = L − 2 Q_i(ν)`.
pub fn vacancy(nu: &[usize], len: i64, i: usize) -> i64 {
    len - 2 * column_sum(nu, i) as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RiggedConfiguration {
    pub len: usize,
    rows: Vec<Row>,
}

#[derive(Serialize, Deserialize)]
struct RcRepr {
    #[serde(rename = "L")]
    len: usize,
    nu: Vec<usize>,
    riggings: Vec<i64>,
}

fn sort_rows(rows: &mut [Row]) {
    rows.sort_by(|a, b| b.length.cmp(&a.length).then(a.rigging.cmp(&b.rigging)));
}

impl RiggedConfiguration {
    pub fn new(len: usize, mut rows: Vec<Row>) -> Self {
        sort_rows(&mut rows);
        RiggedConfiguration { len, rows }
    }

    pub fn empty(len: usize) -> Self {
        RiggedConfiguration { len, rows: Vec::new() }
    }

    /// Rows already ordered; riggings aligned with `nu`.
    pub fn from_parts(len: usize, nu: &[usize], riggings: &[i64]) -> Result<Self, KkrError> {
        if nu.len() != riggings.len() {
            return Err(KkrError::Malformed { nu: nu.len(), riggings: riggings.len() });
        }
        if nu.windows(2).any(|w| w[0] < w[1]) || nu.contains(&0) {
            return Err(KkrError::NotPartition);
        }
        let rows = nu
            .iter()
            .zip(riggings)
            .map(|(&length, &rigging)| Row { length, rigging })
            .collect();
        Ok(Self::new(len, rows))
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn nu(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.length).collect()
    }

    pub fn riggings(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.rigging).collect()
    }

    pub fn vacancy(&self, i: usize) -> i64 {
        vacancy(&self.nu(), self.len as i64, i)
    }

    /// Riggings grouped by row length, ascending within each length.
    pub fn blocks(&self) -> BTreeMap<usize, Vec<i64>> {
        let mut blocks: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
        for r in &self.rows {
            blocks.entry(r.length).or_default().push(r.rigging);
        }
        blocks
    }

    /// Distinct lengths `H`, ascending.
    pub fn lengths(&self) -> Vec<usize> {
        self.blocks().into_keys().collect()
    }

    pub fn vacancies(&self) -> BTreeMap<usize, i64> {
        self.lengths().into_iter().map(|i| (i, self.vacancy(i))).collect()
    }

    /// `−i ≤ J ≤ P_i` on every row.
    pub fn riggings_in_bounds(&self) -> bool {
        let nu = self.nu();
        self.rows
            .iter()
            .all(|r| -(r.length as i64) <= r.rigging && r.rigging <= vacancy(&nu, self.len as i64, r.length))
    }

    /// `0 ≤ J ≤ P_i` on every row.
    pub fn is_normalized(&self) -> bool {
        let nu = self.nu();
        self.rows
            .iter()
            .all(|r| 0 <= r.rigging && r.rigging <= vacancy(&nu, self.len as i64, r.length))
    }

    pub fn with_len(&self, len: usize) -> Self {
        RiggedConfiguration { len, rows: self.rows.clone() }
    }
}

impl Serialize for RiggedConfiguration {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RcRepr { len: self.len, nu: self.nu(), riggings: self.riggings() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RiggedConfiguration {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RcRepr::deserialize(deserializer)?;
        RiggedConfiguration::from_parts(repr.len, &repr.nu, &repr.riggings)
            .map_err(serde::de::Error::custom)
    }
}

/// One insertion of [`forward_trace`]: the ball position and the
/// configuration after inserting it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwardStep {
    pub position: usize,
    pub rc: RiggedConfiguration,
}

pub fn forward(p: &Path) -> Result<RiggedConfiguration, KkrError> {
    let mut rows: Vec<Row> = Vec::new();
    let mut prev = None;
    for b in p.ball_positions() {
        insert_ball(&mut rows, b, prev)?;
        prev = Some(b);
    }
    Ok(RiggedConfiguration::new(p.len(), rows))
}

/// [`forward`] with every intermediate configuration. Intermediate systems
/// have length equal to the inserted position.
pub fn forward_trace(p: &Path) -> Result<Vec<ForwardStep>, KkrError> {
    let mut rows: Vec<Row> = Vec::new();
    let mut prev = None;
    let mut steps = Vec::new();
    for b in p.ball_positions() {
        insert_ball(&mut rows, b, prev)?;
        prev = Some(b);
        steps.push(ForwardStep { position: b, rc: RiggedConfiguration::new(b, rows.clone()) });
    }
    Ok(steps)
}

fn insert_ball(rows: &mut Vec<Row>, b: usize, prev: Option<usize>) -> Result<(), KkrError> {
    let adjacent = prev.is_some_and(|a| b == a + 1);
    if !adjacent {
        let rigging = b as i64 - 2 * (rows.len() as i64 + 1);
        rows.push(Row { length: 1, rigging });
        sort_rows(rows);
        return Ok(());
    }
    // singularity is measured against the b - 1 letters read so far
    let nu: Vec<usize> = rows.iter().map(|r| r.length).collect();
    let scanned = b as i64 - 1;
    let chosen = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.rigging == vacancy(&nu, scanned, r.length))
        .max_by(|(ia, a), (ib, b)| a.length.cmp(&b.length).then(ib.cmp(ia)))
        .map(|(idx, _)| idx)
        .ok_or(KkrError::NoSingularString(b))?;
    rows[chosen].length += 1;
    let grown = rows[chosen].length;
    let q: usize = rows.iter().map(|r| r.length.min(grown)).sum();
    rows[chosen].rigging = b as i64 - 2 * q as i64;
    sort_rows(rows);
    Ok(())
}

/// Row of length `L_j` with rigging `x − L_j` for every 0-soliton.
pub fn spectrum_to_rc(sp: &SolitonSpectrum, len: usize) -> RiggedConfiguration {
    let rows = sp
        .entries
        .iter()
        .flat_map(|e| {
            e.positions
                .iter()
                .map(move |&x| Row { length: e.length, rigging: x - e.length as i64 })
        })
        .collect();
    RiggedConfiguration::new(len, rows)
}

pub fn rc_to_spectrum(rc: &RiggedConfiguration) -> SolitonSpectrum {
    let entries = rc
        .blocks()
        .into_iter()
        .rev()
        .map(|(length, riggings)| {
            let positions: Vec<i64> = riggings.iter().map(|&j| j + length as i64).collect();
            SpectrumEntry { length, multiplicity: positions.len(), positions }
        })
        .collect();
    SolitonSpectrum { entries }
}

/// Shape of [`forward`] computed from the tabloid alone: repeatedly remove
/// every ascent, a second-row entry whose successor among the remaining
/// entries lies in the first row, together with that successor. The counts
/// per round form the transposed shape.
pub fn shape_via_ascents(t: &Tabloid) -> Vec<usize> {
    // merge both rows into one ordered list of (position, in_second_row)
    let mut entries: Vec<(usize, bool)> = t
        .row0
        .iter()
        .map(|&x| (x, false))
        .chain(t.row1.iter().map(|&x| (x, true)))
        .collect();
    entries.sort_unstable();

    let mut counts = Vec::new();
    loop {
        let ascents: Vec<usize> = (0..entries.len().saturating_sub(1))
            .filter(|&k| entries[k].1 && !entries[k + 1].1)
            .collect();
        if ascents.is_empty() {
            break;
        }
        counts.push(ascents.len());
        let mut keep = vec![true; entries.len()];
        for &k in &ascents {
            keep[k] = false;
            keep[k + 1] = false;
        }
        let mut flags = keep.into_iter();
        entries.retain(|_| flags.next().unwrap());
    }
    transpose(&counts)
}
