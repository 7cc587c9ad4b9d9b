//! Relation Gelfand-Tsetlin modules over `gl(n)`.
//!
//! Tableaux carry entries `sym + q` with `q` rational; two entries are in
//! integral relation when they share the symbol and their offsets differ by
//! an integer. A relation graph prescribes which of these relations are
//! inequalities, and the tableaux satisfying it span a `gl(n)`-module with an
//! explicit Gelfand-Tsetlin action. Coefficients are exact rational functions
//! in the symbols.

pub mod action;
pub mod classify;
pub mod derived;
pub mod error;
pub mod field;
pub mod findim;
pub mod graph;
pub mod io;
pub mod module;
pub mod presets;
pub mod sample;
pub mod tableau;

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Polynomials with rational coefficients in the tableau symbols.
pub type Poly = field::MPoly<Rational>;
/// Rational functions in the tableau symbols; the coefficient field.
pub type Scalar = field::RatFunc<Rational>;

pub use action::{act, act_word, verify_axioms, Action, Generator, ModuleVector};
pub use derived::{
    build_g_of_l, build_gbar, down_edges, graph_difference, incident_vertices, is_realization,
    maximal_chains, satisfies, Chain, EdgeSet,
};
pub use error::{Error, Result};
pub use graph::{Arrow, Direction, TriGraph, ValidationReport};
pub use module::RelationModule;
pub use tableau::{Entry, ShiftVector, Tableau, Vertex};
