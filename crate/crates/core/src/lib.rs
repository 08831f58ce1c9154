//! Exact computational geometry of multi-projective varieties and
//! multi-rational maps over QQ and GF(p), built on an internal Groebner engine.

pub mod error;
pub mod fields;
pub mod groebner;
pub mod hilbert;
pub mod idealcalc;
pub mod polyring;
pub mod ratmaps;
pub mod varieties;

pub use error::{Error, Result};
pub use fields::{FieldElem, FieldKind, FieldSpec};
pub use groebner::{FreeModuleVector, GroebnerBasis};
pub use hilbert::{KPoly, MultidegreePoly};
pub use idealcalc::MHIdeal;
pub use polyring::{MPoly, Monomial, MonomialOrder, MultiDeg, MultiGradedRing};
pub use ratmaps::{
    identity, make_map, segre_map, GraphVariety, MultiRationalMap, RationalMapComponent,
};
pub use varieties::{MultiProjVariety, RationalPoint};
