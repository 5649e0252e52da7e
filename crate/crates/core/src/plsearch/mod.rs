//! Piecewise-linear functions on a fan, the search for degenerate ψ (all
//! linear parts vanishing at one ray), the H-trivial families they produce,
//! sign changes around link cycles, and the combined criterion report.

mod pl;
mod report;
mod signs;

pub use pl::{
    cone_linear_part, degenerate_psi_at, degenerate_space, family_class, find_degenerate_psi,
    in_degenerate_space, is_linear, lambda_polytope, DegeneratePsi, LambdaPolytope, LinearForm,
    PlFunction,
};
pub use report::{
    criterion_report, CriterionReport, FamilyCheck, OutsideSearch, PsiReport, ReportConfig,
    Verdict,
};
pub use signs::{normalize_at_ray, sign_changes};
