//! Exogenous quantum propositional logic: syntax, finite quantum
//! interpretation structures, satisfaction, a Hilbert-calculus proof checker
//! and a model finder.

pub mod arithmetic;
pub mod calculus;
pub mod gen;
pub mod modelfinder;
pub mod semantics;
pub mod structures;
pub mod syntax;
