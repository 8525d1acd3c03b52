//! Spherical nilpotent orbits in classical Hermitian symmetric pairs.
//!
//! The crate is organised in layers:
//!
//! * [`rootlat`]: Cartan matrices, highest roots and lattice vectors for
//!   the classical types.
//! * [`hermitian`]: the Hermitian symmetric pairs `(G, K)` with the
//!   structure of `K` and of `p = p1 ⊕ p2`.
//! * [`orbits`]: explicit normal triples `(h, e, f)` for every spherical
//!   nilpotent `K`-orbit in `p`, with exact structural checks.
//! * [`spherical`]: Luna spherical systems for the cases whose data is
//!   known in closed form.
//! * [`semigroup`]: the dominance order `≤_Σ`, minuscule colors, covering
//!   differences, and Hilbert bases of the weight semigroups.
//! * [`cg`]: the `SL(2)^3` tensor semigroup and the Clebsch–Gordan product
//!   criterion.
//!
//! All arithmetic is exact.

pub mod cg;
pub mod error;
pub mod hermitian;
pub mod linalg;
pub mod orbits;
pub mod rootlat;
pub mod semigroup;
pub mod spherical;

pub use error::{Error, Result};
