//! Exact computer algebra for Seifert-presented knot modules.
//!
//! From an integer Seifert matrix the crate builds the Alexander module
//! presented by `tA - eps*A^T`, the Blanchfield linking pairing with values
//! in `Q(t)/Z[t^±1]`, and the metabolizer families of `λ ⊕ -λ` arising
//! from twist spinning, together with the homology of branched cyclic
//! covers. All arithmetic is exact: big-rational coefficients, Laurent
//! polynomials in canonical form, and normal-form linear algebra over the
//! PID `Q[t^±1]`.

pub mod blanchfield;
pub mod branched;
pub mod intmat;
pub mod laurent;
pub mod polymatrix;
pub mod seifert;
pub mod twistspin;

pub use blanchfield::{BlanchfieldForm, MetabolizerCandidate, MetabolizerVerdict};
pub use laurent::{LaurentPolynomial, RationalFunction, TorsionClass};
pub use polymatrix::{PolyMatrix, Submodule};
pub use seifert::{Catalog, KnotCatalogEntry, SeifertKnot};
pub use twistspin::{MetabolizerPair, StatementTag, TwistSpinReport, TwistSpinScenario};
