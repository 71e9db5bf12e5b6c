//! Exact-arithmetic workbench for finite projective planes PG(2,q).
//!
//! The crate builds up from field arithmetic to plane geometry to the
//! polynomial machinery that powers the classical results on blocking sets,
//! direction sets, and arcs, and finishes with an exhaustive search engine
//! that can certify nonexistence at small orders:
//!
//! * [`gf`] — GF(p^n) arithmetic with dense tables at desk scale.
//! * [`fpoly`] — univariate polynomials over GF(q), root extraction, and the
//!   classification of fully reducible lacunary polynomials.
//! * [`plane`] — PG(2,q): point/line enumeration, collineations, Singer
//!   cycles, isomorphism testing, standard position.
//! * [`directions`] — direction sets of functions GF(q) → GF(q) and the
//!   interval/classification theorems that govern their sizes.
//! * [`redei`] — the Rédei polynomial of a function or blocking set and its
//!   coefficient-vanishing structure.
//! * [`blocking`] — blocking-set analysis, lower-bound calculators, and the
//!   classical constructions.
//! * [`arcs`] — (k,n)-arc analysis, conics, hyperoval extension.
//! * [`linearsets`] — field reduction, Desarguesian spreads, scattered
//!   subspaces, and the blocking sets they induce.
//! * [`search`] — the exhaustive/certifying search core.
//! * [`battery`] — the acceptance batteries run by tests and the CLI.
//! * [`io`] — text formats for fields, polynomials, tables, point sets, and
//!   subspaces.

pub mod arcs;
pub mod battery;
pub mod bits;
pub mod blocking;
pub mod directions;
pub mod fpoly;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod linearsets;
pub mod plane;
pub mod redei;
pub mod search;
