//! Path reconstruction from a rigged configuration through tropical tau
//! functions.
//!
//! With rows `(ν_i, J_i)`, `i = 1..g`,
//!
//! ```text
//! τ_r(k) = −min_{n ∈ {0,1}^g} [ Σ_i (J_i + r ν_i − k) n_i + Σ_{i,j} min(ν_i, ν_j) n_i n_j ]
//! x(k)   = τ_0(k) − τ_0(k−1) − τ_1(k) + τ_1(k−1)
//! ```
//!
//! and `x(k)` is the letter at position `k`. [`tau`] evaluates the minimum by
//! visiting all `2^g` corners. [`TauEvaluator`] computes the same value in
//! polynomial time: `Σ_{i,j} min(ν_i, ν_j) n_i n_j = Σ_t N_t²` where `N_t`
//! counts selected rows of length `≥ t`, so the quadratic part only depends on
//! how many rows are taken from each length, and within one length the
//! smallest riggings are always the cheapest to take.

use thiserror::Error;

use crate::crystal::Capacity;
use crate::kkr::{forward, RiggedConfiguration, Row};
use crate::path::Path;

pub const DEFAULT_MAX_ROWS: usize = 24;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TauError {
    #[error("{rows} rows exceed the enumeration cap of {cap}")]
    TooManyRows { rows: usize, cap: usize },
    #[error("arithmetic overflow while evaluating tau")]
    Overflow,
    #[error("reconstruction produced letter {value} at position {position}")]
    InvalidRc { position: usize, value: i64 },
    #[error("reconstruction holds {found} balls in 1..={len}, expected {expected}")]
    BallsOutside { len: usize, found: usize, expected: usize },
}

/// `τ_r(k)` by exhaustive enumeration, with the default row cap.
pub fn tau(rows: &[Row], r: u8, k: i64) -> Result<i64, TauError> {
    tau_with_cap(rows, r, k, DEFAULT_MAX_ROWS)
}

pub fn tau_with_cap(rows: &[Row], r: u8, k: i64, cap: usize) -> Result<i64, TauError> {
    let g = rows.len();
    if g > cap || g >= 63 {
        return Err(TauError::TooManyRows { rows: g, cap });
    }
    let r = r as i64;
    let linear: Vec<i64> = rows
        .iter()
        .map(|row| {
            row.rigging
                .checked_add(r * row.length as i64)
                .and_then(|v| v.checked_sub(k))
                .ok_or(TauError::Overflow)
        })
        .collect::<Result<_, _>>()?;

    let mut best = 0i64; // n = 0
    for mask in 1u64..(1u64 << g) {
        let mut value = 0i64;
        for i in (0..g).filter(|&i| mask >> i & 1 == 1) {
            value = value.checked_add(linear[i]).ok_or(TauError::Overflow)?;
            for j in (0..g).filter(|&j| mask >> j & 1 == 1) {
                value += rows[i].length.min(rows[j].length) as i64;
            }
        }
        best = best.min(value);
    }
    Ok(-best)
}

struct LengthClass {
    length: usize,
    /// prefix sums of the ascending riggings, `prefix[c]` = sum of the c smallest
    prefix: Vec<i64>,
}

/// Polynomial-time `τ_r(k)` for a fixed set of rows.
pub struct TauEvaluator {
    classes: Vec<LengthClass>,
    rows: usize,
}

impl TauEvaluator {
    pub fn new(rows: &[Row]) -> Self {
        let mut sorted = rows.to_vec();
        sorted.sort_by(|a, b| b.length.cmp(&a.length).then(a.rigging.cmp(&b.rigging)));
        let mut classes: Vec<LengthClass> = Vec::new();
        for row in sorted {
            match classes.last_mut() {
                Some(c) if c.length == row.length => {
                    let last = *c.prefix.last().unwrap();
                    c.prefix.push(last + row.rigging);
                }
                _ => classes.push(LengthClass { length: row.length, prefix: vec![0, row.rigging] }),
            }
        }
        TauEvaluator { classes, rows: rows.len() }
    }

    pub fn tau(&self, r: u8, k: i64) -> i64 {
        let r = r as i64;
        const NONE: i64 = i64::MAX;
        // dp[c] = least cost with c rows chosen among the classes seen so far
        let mut dp = vec![NONE; self.rows + 1];
        dp[0] = 0;
        let mut seen = 0;
        for (j, class) in self.classes.iter().enumerate() {
            let next_len = self.classes.get(j + 1).map_or(0, |c| c.length);
            let span = (class.length - next_len) as i64;
            let slope = r * class.length as i64 - k;
            let m = class.prefix.len() - 1;
            let mut next = vec![NONE; self.rows + 1];
            for before in 0..=seen {
                if dp[before] == NONE {
                    continue;
                }
                for c in 0..=m {
                    let total = (before + c) as i64;
                    let cost = dp[before] + class.prefix[c] + slope * c as i64 + span * total * total;
                    let slot = &mut next[before + c];
                    if cost < *slot {
                        *slot = cost;
                    }
                }
            }
            seen += m;
            dp = next;
        }
        -dp.into_iter().min().unwrap_or(0)
    }
}

/// Letters `x(1) … x(L)` of the path encoded by `rc`.
pub fn path_from_rc(rc: &RiggedConfiguration) -> Result<Path, TauError> {
    let eval = TauEvaluator::new(rc.rows());
    let len = rc.len;
    let mut letters = Vec::with_capacity(len);
    let mut prev = (eval.tau(0, 0), eval.tau(1, 0));
    for k in 1..=len as i64 {
        let cur = (eval.tau(0, k), eval.tau(1, k));
        let x = cur.0 - prev.0 - cur.1 + prev.1;
        if x != 0 && x != 1 {
            return Err(TauError::InvalidRc { position: k as usize, value: x });
        }
        letters.push(x as u8);
        prev = cur;
    }
    let path = Path::new(letters).expect("letters checked");
    let expected: usize = rc.rows().iter().map(|r| r.length).sum();
    if path.balls() != expected {
        return Err(TauError::BallsOutside { len, found: path.balls(), expected });
    }
    debug_assert_eq!(
        forward(&path).map(|f| f.riggings()),
        Ok(rc.riggings()),
        "reconstruction of {rc:?} does not invert"
    );
    Ok(path)
}

/// Semi-infinite time evolution: every rigging gains `n · min(ν_i, l)`.
pub fn evolve_linear(rc: &RiggedConfiguration, capacity: Capacity, steps: u64) -> RiggedConfiguration {
    let rows = rc
        .rows()
        .iter()
        .map(|row| Row {
            length: row.length,
            rigging: row.rigging + steps as i64 * capacity.min_with(row.length) as i64,
        })
        .collect();
    RiggedConfiguration::new(rc.len, rows)
}
