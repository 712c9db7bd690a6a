//! Exact matrix realisations: irreducible modules, intertwiners, and the graded
//! `g[t]`-modules built from chains of highest weights.

pub mod current;
pub mod intertwiner;
pub mod lie;
pub mod rep;
pub mod tensor_sub;

pub use current::{build_kr_fundamental, kr_module, verify_current_relations, CurrentModule};
pub use intertwiner::{intertwiners, is_equivariant};
pub use lie::{LieBasis, Recipe};
pub use rep::{defining_rep, highest_module, MatrixRep};
pub use tensor_sub::{check_tensor_submodule, kr_tensor_submodule, TensorSubmodule};
