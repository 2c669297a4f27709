//! Computations with ι-complexes over `F[U]` and the local equivalence group.

pub mod correction_terms;
pub mod fu_core;
pub mod gf2;
pub mod graded_roots;
pub mod ingest_cli;
pub mod local_group;
pub mod monotone;
pub mod rational;
