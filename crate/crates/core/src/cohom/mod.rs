//! Twisted cohomology of subgroups of a Sylow subgroup, restriction and
//! conjugation maps, and `H^*(G,M)`.

mod bar;
mod group;
mod local;
mod resolution;

pub use bar::{bar_cells, bar_census, bar_cohomology, BarComplex};
pub use group::GroupCohomology;
pub use local::{CohomologyEngine, LocalCohomology, RightCosets};
pub use resolution::Resolution;

use crate::linalg::QuotientBasis;
use crate::module::GModule;
use serde::Serialize;

/// Default budget on nonzero coboundary entries.
pub const DEFAULT_CELL_CAP: u64 = 5_000_000;

/// The cell cap, overridable through `FUSIONLAB_CELL_CAP`.
pub fn cell_cap() -> u64 {
    std::env::var("FUSIONLAB_CELL_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_CELL_CAP)
}

/// Representative cocycles of a basis of `H^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyBasis {
    pub degree: usize,
    pub representatives: Vec<Vec<u32>>,
}

impl CohomologyBasis {
    pub fn from_quotient(degree: usize, q: &QuotientBasis) -> CohomologyBasis {
        CohomologyBasis { degree, representatives: q.representatives().to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

/// `H^0, …, H^{n_max}` of the module's group.
pub fn group_cohomology(module: &GModule, n_max: usize) -> Vec<CohomologyBasis> {
    let gc = GroupCohomology::new(module, n_max);
    (0..=n_max).map(|n| gc.cohomology_basis(n)).collect()
}
