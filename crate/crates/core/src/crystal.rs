//! Carriers in `B_l` and the time evolutions `T_l`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::path::{Path, PathError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EvolutionError {
    #[error("second carrier pass ended in {got} instead of {expected}")]
    FixedPointViolation { expected: CrystalElement, got: CrystalElement },
    #[error("invalid capacity {0:?}, expected a positive integer or \"inf\"")]
    InvalidCapacity(String),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// Carrier capacity. `Infinite` stands for any capacity at least the number
/// of balls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Capacity {
    Finite(usize),
    Infinite,
}

impl Capacity {
    /// `min(i, l)`.
    pub fn min_with(self, i: usize) -> usize {
        match self {
            Capacity::Finite(l) => i.min(l),
            Capacity::Infinite => i,
        }
    }

    /// A finite capacity that acts as `self` on `p`.
    pub fn resolve(self, p: &Path) -> usize {
        match self {
            Capacity::Finite(l) => l,
            Capacity::Infinite => p.balls().max(1),
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(l) => write!(f, "{l}"),
            Capacity::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Capacity {
    type Err = EvolutionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Capacity::Infinite),
            _ => match s.parse::<usize>() {
                Ok(l) if l >= 1 => Ok(Capacity::Finite(l)),
                _ => Err(EvolutionError::InvalidCapacity(s.to_string())),
            },
        }
    }
}

/// `(x0, x1) ∈ B_l`, `x0 + x1 = l`: `x1` is the number of balls carried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrystalElement {
    x0: usize,
    x1: usize,
}

impl CrystalElement {
    pub fn new(x0: usize, x1: usize) -> Self {
        CrystalElement { x0, x1 }
    }

    /// `u_l = (l, 0)`, the empty carrier.
    pub fn highest(l: usize) -> Self {
        CrystalElement { x0: l, x1: 0 }
    }

    pub fn capacity(&self) -> usize {
        self.x0 + self.x1
    }

    pub fn x0(&self) -> usize {
        self.x0
    }

    pub fn x1(&self) -> usize {
        self.x1
    }

    /// `R: B_l ⊗ B_1 → B_1 ⊗ B_l`.
    pub fn combinatorial_r(self, b: u8) -> (u8, CrystalElement) {
        let CrystalElement { x0, x1 } = self;
        match b {
            0 if x1 == 0 => (0, self),
            0 => (1, CrystalElement { x0: x0 + 1, x1: x1 - 1 }),
            _ if x0 == 0 => (1, self),
            _ => (0, CrystalElement { x0: x0 - 1, x1: x1 + 1 }),
        }
    }
}

impl fmt::Display for CrystalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x0, self.x1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierPassResult {
    pub out_path: Path,
    pub final_carrier: CrystalElement,
}

/// Thread `start` through `p` from left to right.
pub fn carrier_pass(start: CrystalElement, p: &Path) -> CarrierPassResult {
    let mut carrier = start;
    let letters = p
        .letters()
        .iter()
        .map(|&b| {
            let (out, next) = carrier.combinatorial_r(b);
            carrier = next;
            out
        })
        .collect();
    CarrierPassResult {
        out_path: Path::new(letters).expect("R emits binary letters"),
        final_carrier: carrier,
    }
}

/// `T_l(p)`: a first pass from `u_l` yields `v_l`, a second pass from `v_l`
/// yields the new state and must return `v_l`.
pub fn time_evolution(l: usize, p: &Path) -> Result<Path, EvolutionError> {
    let v = carrier_pass(CrystalElement::highest(l), p).final_carrier;
    let second = carrier_pass(v, p);
    if second.final_carrier != v {
        return Err(EvolutionError::FixedPointViolation { expected: v, got: second.final_carrier });
    }
    Ok(second.out_path)
}

pub fn evolve(capacity: Capacity, p: &Path) -> Result<Path, EvolutionError> {
    match capacity {
        Capacity::Finite(l) => time_evolution(l, p),
        Capacity::Infinite => t_infinity(p),
    }
}

/// `T_∞ = T_N` with `N` the number of balls.
pub fn t_infinity(p: &Path) -> Result<Path, EvolutionError> {
    p.require_positive_weight()?;
    let n = Capacity::Infinite.resolve(p);
    let out = time_evolution(n, p)?;
    debug_assert_eq!(out, time_evolution(n + 1, p)?, "T_N not stabilized for {p}");
    Ok(out)
}

/// `n` successive applications of the naive carrier evolution.
pub fn evolve_naive(capacity: Capacity, p: &Path, steps: u64) -> Result<Path, EvolutionError> {
    p.require_positive_weight()?;
    let l = capacity.resolve(p);
    let mut state = p.clone();
    for _ in 0..steps {
        state = time_evolution(l, &state)?;
    }
    Ok(state)
}

/// One step of the non-periodic box-ball system: a single pass from the
/// empty carrier. Balls still carried at the right end are dropped.
pub fn linear_step(capacity: Capacity, p: &Path) -> Path {
    carrier_pass(CrystalElement::highest(capacity.resolve(p)), p).out_path
}
