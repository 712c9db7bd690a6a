pub mod charlib;
pub mod error;
pub mod homcheck;
pub mod krset;
pub mod limits;
pub mod linalg;
pub mod modforge;
pub mod report;
pub mod rootsys;
pub mod twisted;

pub use charlib::{DominantCharacter, Factor, WeightCharacter};
pub use error::{KrError, Result};
pub use krset::{GradedChain, GradedCharacter};
pub use limits::Limits;
pub use modforge::{CurrentModule, LieBasis, MatrixRep, TensorSubmodule};
pub use report::{CheckEntry, CheckReport};
pub use rootsys::{Family, LieType, RootCoeffs, RootSystem, Weight};
pub use twisted::{OuterFamily, OuterType, TwistedData};
