//! Divisor volumes as exact algebraic numbers.
//!
//! The crate realizes, for a totally real number field `K` and a primitive
//! element `α`, the volume of the tautological bundle on Cutkosky's
//! projective bundle over an abelian variety with real multiplication by
//! `K`. The volume is the algebraic number `c·∫_β^{t0} m_α(t) dt`, where
//! `m_α` is the minimal polynomial of `α` and `β` its largest root.
//!
//! Layers, bottom up:
//! - [`poly`], [`resultant`], [`sturm`], [`interval`]: exact rational
//!   polynomial arithmetic and real-root isolation;
//! - [`field`], [`catalog`], [`algebraic`]: number fields, primitivity
//!   certificates and real algebraic numbers;
//! - [`volume`]: the volume pipeline, primitive-element search and Künneth
//!   products;
//! - [`oracle`]: independent floating-point quadrature cross-checks;
//! - [`report`]: the JSON documents shared with the command-line front end.

pub mod algebraic;
pub mod catalog;
pub mod descartes;
pub mod error;
pub mod factor;
pub mod field;
pub mod interval;
pub mod linalg;
pub mod modular;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod report;
pub mod resultant;
pub mod sturm;
pub mod volume;

pub use algebraic::{min_poly_combine, min_poly_combine_resultant, AlgebraicNumber, CombineOp};
pub use catalog::{catalog_field, smallest_field_of_degree, CatalogKind};
pub use error::{Error, Result};
pub use field::{make_field, FieldElement, NumberField};
pub use interval::Interval;
pub use modular::Irreducibility;
pub use poly::Polynomial;
pub use rational::Rational;
pub use resultant::resultant;
pub use sturm::{isolate_real_roots, refine_root, SturmChain};
pub use volume::{
    choose_t0, cutkosky_volume, kunneth_product, nef_threshold, pq_demo, primitive_search, verify_scaling,
    volume_polynomial, ConstructionInput, Normalization, Operand, ProductReport, VolumeReport,
};
