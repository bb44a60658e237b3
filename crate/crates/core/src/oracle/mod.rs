//! Independent checks: lattice-point counting, triangulation verification,
//! the `K3,3` obstruction and a random instance generator.

mod ehrhart;
mod generate;
mod k33;
mod verify;

use serde::Serialize;

pub use ehrhart::{count_lattice_points, ehrhart_normalized_volume, lattice_point_counts};
pub use generate::random_instance;
pub use k33::k33_obstruction_check;
pub use verify::{verify_triangulation, VerifyOptions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
