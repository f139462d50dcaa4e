//! Symbolic engine for two biendofunctors `&` (meet-like) and `|` (join-like)
//! related by the intermutation arrow
//! `(A & B) | (C & D)  ->  (A | C) & (B | D)`.
//!
//! The crate provides:
//!
//! * the object language of formulas with its `T`/`F` normal form and
//!   purity predicates ([`formula`]),
//! * typed arrow terms over the full generator alphabet, theory tables,
//!   development into single-generator factors and shape-derived arrows
//!   ([`term`]),
//! * strictified objects (form sequences and form sets), the rectangular
//!   grid calculus and the border/transversal machinery ([`strict`],
//!   [`grid`]),
//! * strict arrow terms, intermutation redexes and arrow restriction
//!   ([`sterm`]),
//! * the legitimate-pair decision procedure with interpolation, canonical
//!   arrow synthesis and an independent breadth-first oracle ([`legit`]),
//! * relation and matrix semantics with an axiom-schema model checker and
//!   the reduction of bijective lattice arrows ([`semantics`]),
//! * theory-indexed equality and existence decisions ([`decide`]),
//! * the splitting classification and normal form for strict symmetric
//!   terms with disjunction source ([`splitting`]),
//! * seeded random generators for formulas and well-typed terms
//!   ([`sampling`]).

pub mod decide;
pub mod error;
pub mod formula;
pub mod grid;
pub mod legit;
pub mod sampling;
pub mod semantics;
pub mod splitting;
pub mod sterm;
pub mod strict;
pub mod term;

pub use error::Error;
pub use formula::Formula;
pub use sterm::StrictTerm;
pub use strict::FormSeq;
pub use term::{ArrowTerm, Gen, Theory};
