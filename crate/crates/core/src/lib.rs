//! Computational stable module category of finite-dimensional graded
//! cocommutative Hopf algebras over F2: bigraded (Tate) Ext, descent
//! spectral sequences for endomorphisms and Picard groups, and lifting
//! problem drivers, with built-in A(1) and E(1).

pub mod descent;
pub mod f2;
pub mod gmod;
pub mod hopf;
pub mod piclift;
pub mod stable;
pub mod testutil;

pub use f2::{BitMatrix, BitVec};
pub use gmod::{Module, ModuleMap};
pub use hopf::{HopfAlgebra, SubHopfInclusion};
