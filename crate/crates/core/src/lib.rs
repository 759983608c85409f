//! Exact Hall-Littlewood polynomials for reductive root data and the
//! Hodge-Euler characteristics of affine Grassmannian intersections
//! `Gr^lambda ∩ S_nu` encoded in their monomial expansions.

pub mod error;
pub mod hall_littlewood;
pub mod hodge_euler;
pub mod job;
pub mod laurent;
pub mod oracles;
pub mod report;
pub mod root_data;
pub mod symfunc;

pub use error::{Error, Result};
pub use hall_littlewood::{hall_littlewood, hall_littlewood_with, specialize_t, weyl_character, HLPolynomial, Limits};
pub use hodge_euler::{euler_table, predict_point_count, qm1_expand, topological_euler, EulerRow, EulerTable};
pub use laurent::LaurentPoly;
pub use root_data::{build_root_datum, Coweight, DatumTag, Family, HalfInt, RootDatum, WeylElement};
pub use symfunc::{monomial_sym, to_m_basis, GroupAlgebraElement, SymmetricFunction};
pub use job::{cmd_compute, cmd_table, cmd_verify, JobSpec, Suite, VerifyReport};
pub use report::{Format, Report, TableReport};
