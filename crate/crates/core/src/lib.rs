//! Exact computation of twisted Alexander polynomials of knot exteriors and
//! surgered 3-manifolds from group presentations, with symmetric-group
//! representation search, Thurston-norm/genus lower bounds, and fibering
//! obstructions.

pub mod error;
pub mod field;
pub mod intmat;
pub mod laurent;
pub mod polymat;
pub mod smith;
pub mod word;
pub mod fox;
pub mod presentation;
pub mod braid;
pub mod perm;
pub mod homsearch;
pub mod rep;
pub mod complex;
pub mod invariants;
pub mod wada;
pub mod fibering;
pub mod table;
pub mod report;

pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use laurent::LaurentPoly;
pub use polymat::{FieldMatrix, PolyMatrix};
pub use smith::{coker_order, smith_normal_form, CokernelOrder, SmithDecomposition};
