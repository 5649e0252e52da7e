//! A fan bundled with its Picard structure, Δ, and enumeration caps.

use crate::cohomline::{self, ClassReport, CohomologyVector};
use crate::error::ComputeError;
use crate::exactlin::DEFAULT_POINT_CAP;
use crate::exec::Execution;
use crate::fan::StackyFan;
use crate::homology::{delta_fast_lowdim, delta_set, DeltaFamily, DEFAULT_DELTA_CAP};
use crate::picard::{LineBundleClass, PicStructure};
use crate::plsearch::{self, CriterionReport, DegeneratePsi, ReportConfig};

/// Largest `n` the rank 2 and 3 connectivity route to Δ will take when the
/// exhaustive route is capped out.
pub const FAST_DELTA_CAP: usize = 24;

#[derive(Clone, Copy, Debug)]
pub struct StackOptions {
    /// Lattice-point candidates per polyhedron.
    pub cap: u64,
    /// Largest `n` for exhaustive Δ enumeration.
    pub delta_cap: usize,
    pub exec: Execution,
}

impl Default for StackOptions {
    fn default() -> Self {
        StackOptions {
            cap: DEFAULT_POINT_CAP,
            delta_cap: DEFAULT_DELTA_CAP,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Stack {
    fan: StackyFan,
    pic: PicStructure,
    delta: DeltaFamily,
    options: StackOptions,
}

impl Stack {
    pub fn new(fan: StackyFan) -> Result<Self, ComputeError> {
        Self::with_options(fan, StackOptions::default())
    }

    /// Computes Δ exhaustively when `n <= delta_cap`, otherwise through the
    /// connectivity route for rank 2 and 3.
    pub fn with_options(fan: StackyFan, options: StackOptions) -> Result<Self, ComputeError> {
        let delta = match delta_set(&fan, options.delta_cap, options.exec) {
            Err(ComputeError::DeltaCap { .. }) if matches!(fan.rank(), 2 | 3) => {
                delta_fast_lowdim(&fan, FAST_DELTA_CAP.max(options.delta_cap), options.exec)?
            }
            other => other?,
        };
        let pic = PicStructure::new(&fan);
        Ok(Stack {
            fan,
            pic,
            delta,
            options,
        })
    }

    pub fn fan(&self) -> &StackyFan {
        &self.fan
    }

    pub fn pic(&self) -> &PicStructure {
        &self.pic
    }

    pub fn delta(&self) -> &DeltaFamily {
        &self.delta
    }

    pub fn options(&self) -> &StackOptions {
        &self.options
    }

    pub fn class_of(&self, a: &[i64]) -> Result<LineBundleClass, ComputeError> {
        self.pic.class_of(a)
    }

    pub fn cohomology(&self, a: &[i64]) -> Result<CohomologyVector, ComputeError> {
        cohomline::cohomology(&self.fan, &self.delta, a, self.options.cap, self.options.exec)
    }

    pub fn is_h_trivial(&self, a: &[i64]) -> Result<bool, ComputeError> {
        cohomline::is_h_trivial(&self.fan, &self.delta, a, self.options.cap, self.options.exec)
    }

    pub fn first_violation(&self, a: &[i64]) -> Result<Option<Vec<usize>>, ComputeError> {
        cohomline::first_violation(&self.fan, &self.delta, a, self.options.cap, self.options.exec)
    }

    pub fn in_interior_zi(&self, a: &[i64], index_set: &[usize]) -> bool {
        cohomline::in_interior_zi(&self.fan, a, index_set)
    }

    pub fn outside_all_interiors(&self, a: &[i64]) -> bool {
        cohomline::outside_all_interiors(&self.fan, &self.delta, a)
    }

    pub fn class_report(&self, a: &[i64]) -> Result<ClassReport, ComputeError> {
        cohomline::class_report(
            &self.fan,
            &self.pic,
            &self.delta,
            a,
            self.options.cap,
            self.options.exec,
        )
    }

    pub fn scan(&self, bounds: &[(i64, i64)]) -> Result<Vec<LineBundleClass>, ComputeError> {
        cohomline::scan_h_trivial(
            &self.fan,
            &self.pic,
            &self.delta,
            bounds,
            self.options.cap,
            self.options.exec,
        )
    }

    pub fn find_degenerate_psi(&self) -> Option<DegeneratePsi> {
        plsearch::find_degenerate_psi(&self.fan, self.options.exec)
    }

    pub fn family_class(&self, s: usize, psi: &[i64], r: i64) -> Result<LineBundleClass, ComputeError> {
        plsearch::family_class(&self.fan, &self.pic, s, psi, r)
    }

    pub fn criterion_report(&self, search_radius: i64, r_range: (i64, i64)) -> Result<CriterionReport, ComputeError> {
        let config = ReportConfig {
            search_radius,
            r_range,
            cap: self.options.cap,
            exec: self.options.exec,
        };
        plsearch::criterion_report(&self.fan, &self.pic, &self.delta, &config)
    }
}
