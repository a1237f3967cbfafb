//! Finite-ring engine for z°-ideals, d-ideals and annihilator ideals.
//!
//! Rings are dense Cayley tables ([`FiniteRing`]). [`RingAnalysis`] caches
//! the ideal lattice, minimal primes and annihilators of a ring; the
//! classifier and check modules run exhaustive sweeps over it and return
//! [`VerificationReport`]s.

pub mod analysis;
pub mod annihilator;
pub mod annihilator_laws;
pub mod axioms;
pub mod classify;
pub mod error;
pub mod extension;
pub mod frame;
pub mod ideal;
pub mod limits;
pub mod oracle;
pub mod report;
pub mod ring;
pub mod spec;
pub mod subset;

pub use analysis::{PrimeSpectrum, RingAnalysis};
pub use error::{Error, Result};
pub use ideal::IdealLattice;
pub use limits::Limits;
pub use report::{Verdict, VerificationReport, Witness};
pub use ring::{Elem, FiniteRing, RingBuilder, Structure};
pub use spec::{parse_ring_spec, RingSpec};
pub use subset::ElementSubset;
