//! Exact computation of the complete Pareto front of multi-objective
//! mixed-integer linear programs.
//!
//! The solver works in objective space and proceeds in three phases:
//!
//! 1. [`phase1`] collects a candidate set of bounded polytopes whose union
//!    contains every nondominated point, one slice (integer assignment) at a
//!    time.
//! 2. [`phase2`] carves the candidates into pieces with pairwise disjoint
//!    relative interiors.
//! 3. [`phase3`] marks, for every piece, the portions dominated by other
//!    pieces and assembles the front as regions: a polytope minus a finite
//!    list of removal polytopes.
//!
//! Everything is computed with exact rational arithmetic. The crate is
//! `no_std` and only needs an allocator.

#![no_std]

extern crate alloc;

pub mod error;
pub mod geometry;
pub mod linalg;
pub mod lp;
pub mod milp;
pub mod oracle;
pub mod phase1;
pub mod phase2;
pub mod phase3;
pub mod problem;
pub mod rational;
pub mod slice_image;

pub use error::{Error, Result};
pub use geometry::{DominanceRelation, HalfSpace, Polytope};
pub use lp::{Bound, Constraint, LinearProgram, LpOutcome, LpSolution, Relation};
pub use milp::{HammingCut, MilpOutcome, MilpSolution};
pub use oracle::{CheckReport, OracleFront};
pub use phase1::{CandidateSet, CollectOptions, Strategy};
pub use phase2::CarvedSet;
pub use phase3::{ParetoFront, ParetoRegion, Removal};
pub use problem::{MomilpProblem, Slice, VarKind, Variable};
pub use rational::Rational;
pub use slice_image::{FrontPiece, UpperImage};

