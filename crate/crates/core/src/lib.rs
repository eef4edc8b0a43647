//! Exact computations in the Hochschild complex of multiplicative operads,
//! with the Poisson operads as the main example.
//!
//! * [`operad`]: the operad interface, elements, cofaces and codegeneracies
//! * [`pois`], [`assoc`]: concrete operads
//! * [`linalg`]: exact sparse linear algebra
//! * [`hochschild`], [`cache`]: truncated complexes and their homology
//! * [`gerstenhaber`]: the bracket `Ψ` and the cup product
//! * [`knot`]: named classes for the knot-space computation
//! * [`chord`]: chord diagrams modulo 4T and 1T
//! * [`signs`]: orientation signs of the simplex charts

pub mod assoc;
pub mod cache;
pub mod chord;
pub mod error;
pub mod gerstenhaber;
pub mod hochschild;
pub mod knot;
pub mod linalg;
pub mod operad;
pub mod pois;
pub mod scalar;
pub mod signs;
pub mod verify;

pub use assoc::{AssocMonomial, AssocOperad};
pub use chord::ChordDiagram;
pub use error::{Error, Result};
pub use gerstenhaber::{cup_product, psi_bracket, HomologyClass};
pub use hochschild::{Bidegree, ComplexWindow, WindowConfig};
pub use knot::KnotContext;
pub use operad::{Element, ElementOf, MultiplicativeOperad, OperadKey};
pub use pois::{LieWord, PoisExpr, PoisMonomial, PoisOperad};
pub use scalar::{Fp, Rational, Scalar};

/// Rational numbers, the field of record.
pub type Q = Rational;
pub type F32003 = Fp<32003>;
pub type F65537 = Fp<65537>;

/// Elements of `Pois_n` over the rationals.
pub type PoisElement = Element<PoisMonomial, Q>;
pub type PoisWindow = ComplexWindow<PoisOperad, Q>;
pub type PoisClass = HomologyClass<PoisMonomial, Q>;
