//! The periodic box-ball system of type `A_1^(1)`, computed two ways.
//!
//! * [`elimination`]: iterated erasure of `10` pairs, giving soliton lengths,
//!   0-soliton positions, arcs, and `T_∞` by flipping arcs.
//! * [`kkr`] and [`crystal`]: rigged configurations of the tabloid and the
//!   carrier dynamics `T_l` built from the combinatorial `R`.
//!
//! A row of length `L_j` with rigging `J` corresponds to a 0-soliton at
//! position `J + L_j`. [`scattering`] turns the riggings into action-angle
//! coordinates in which `T_l` is a translation, and [`tau`] rebuilds a path
//! from a rigged configuration, which together solve the initial value
//! problem without stepping through intermediate states.
//!
//! ```
//! use pbbs::{crystal::Capacity, path::Path, scattering::fast_forward};
//!
//! let p: Path = "00111011100100011110001101000000".parse().unwrap();
//! let later = fast_forward(&p, Capacity::Infinite, 10_000).unwrap();
//! assert_eq!(later.to_string(), "11000111011000000011101110010000");
//! ```

pub mod crystal;
pub mod elimination;
pub mod kkr;
pub mod path;
pub mod scattering;
pub mod tau;

pub use crystal::{Capacity, CrystalElement};
pub use elimination::{eliminate_all, EliminationTrace, SolitonSpectrum};
pub use kkr::{forward, RiggedConfiguration};
pub use path::{Path, Tabloid};
pub use scattering::{direct_scattering, fast_forward, inverse_scattering, ScatteringData};
