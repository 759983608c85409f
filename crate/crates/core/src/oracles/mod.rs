//! Independent ground truth: type A Hall-Littlewood polynomials via charge,
//! weight multiplicities via Freudenthal, and brute-force point counts in a
//! finite-field lattice model.

pub mod charge;
pub mod freudenthal;
pub mod lattice;

pub use charge::{hl_charge_type_a, kostka_foulkes_charge, kostka_number, Partition, Tableau};
pub use freudenthal::{freudenthal_multiplicity, WeightMultiplicities};
pub use lattice::{classify_lattice, count_lattice_points, LatticeCensus, LatticePoint, ModuleShape};
