//! Decision procedures for Kleene algebra with observations: a language
//! oracle, partial derivatives, the syntactic automaton, an equivalence
//! checker based on bisimulation up to congruence, and the linear systems
//! that turn any term into an equivalent atomic, closed one.

pub mod automaton;
pub mod boolean;
pub mod derivatives;
pub mod equivalence;
pub mod error;
pub mod harness;
pub mod linsys;
pub mod par;
pub mod semantics;
pub mod syntax;

pub use automaton::{accepts, build_nda, Nda, StateSet};
pub use boolean::Atom;
pub use equivalence::{decide, naive_decide, Verdict};
pub use error::{Error, Result, SymbolKind};
pub use par::Exec;
pub use semantics::{Letter, Word};
pub use syntax::{canonical_sum, parse_term, PropTerm, Signature, Term, TermKind};
