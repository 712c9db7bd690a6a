//! Shared fixtures for the criterion benches.

use kr_core::{Family, LieType, RootSystem};

pub fn root_system(family: Family, rank: usize) -> RootSystem {
    RootSystem::build(LieType::new(family, rank).expect("valid type")).expect("builds")
}
