use serde::Serialize;

use super::pl::{degenerate_space, family_class, find_degenerate_psi, lambda_polytope, PlFunction};
use crate::cohomline::{classes_in_box, is_h_trivial, outside_all_interiors};
use crate::error::ComputeError;
use crate::exactlin::DEFAULT_POINT_CAP;
use crate::exec::{self, Execution};
use crate::fan::StackyFan;
use crate::homology::DeltaFamily;
use crate::picard::{CanonicalClass, LineBundleClass, PicStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// A degenerate ψ exists, so its family gives infinitely many H-trivial
    /// classes.
    InfinitelyMany,
    /// Rank 3, at most one collinear pair, and no degenerate ψ.
    FinitelyMany,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct ReportConfig {
    /// Statement (3) search covers canonical coordinates in
    /// `[-radius, radius]`.
    pub search_radius: i64,
    /// Inclusive range of `r` for the family checks.
    pub r_range: (i64, i64),
    pub cap: u64,
    pub exec: Execution,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            search_radius: 3,
            r_range: (-5, 5),
            cap: DEFAULT_POINT_CAP,
            exec: Execution::default(),
        }
    }
}

/// Index sets and rays are rendered 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub ray: usize,
    pub values: Vec<i64>,
    pub kernel_dim: usize,
    pub lambda_dim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub r: i64,
    pub class: LineBundleClass,
    pub h_trivial: bool,
}

/// Bounded search for a nonzero class outside every interior of `Z_I`.
/// An absent witness only means none was found in the box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutsideSearch {
    pub search_radius: i64,
    pub classes_searched: usize,
    pub witness: Option<LineBundleClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub rank: usize,
    pub collinear_pair_count: usize,
    pub collinear_pairs: Vec<[usize; 2]>,
    pub degenerate_psi: Option<PsiReport>,
    pub outside_interiors: OutsideSearch,
    pub family_checks: Vec<FamilyCheck>,
    pub family_classes_distinct: bool,
    pub verdict: Verdict,
}

pub fn criterion_report(
    fan: &StackyFan,
    pic: &PicStructure,
    delta: &DeltaFamily,
    config: &ReportConfig,
) -> Result<CriterionReport, ComputeError> {
    let pairs = fan.collinear_pairs();
    let found = find_degenerate_psi(fan, config.exec);

    let mut family_checks = Vec::new();
    if let Some(d) = &found {
        let (lo, hi) = config.r_range;
        let rs: Vec<i64> = (lo..=hi).collect();
        let checks = exec::map(config.exec, &rs, |&r| -> Result<FamilyCheck, ComputeError> {
            let class = family_class(fan, pic, d.ray, &d.psi, r)?;
            let h_trivial = is_h_trivial(fan, delta, &class.raw, config.cap, Execution::Sequential)?;
            Ok(FamilyCheck { r, class, h_trivial })
        });
        family_checks = checks.into_iter().collect::<Result<_, _>>()?;
    }
    let mut canon: Vec<&CanonicalClass> = family_checks.iter().map(|c| &c.class.canonical).collect();
    canon.sort();
    canon.dedup();
    let family_classes_distinct = canon.len() == family_checks.len();

    let outside_interiors = search_outside(fan, pic, delta, config)?;

    let verdict = if found.is_some() {
        Verdict::InfinitelyMany
    } else if fan.rank() == 3 && pairs.len() <= 1 {
        Verdict::FinitelyMany
    } else {
        Verdict::Undetermined
    };

    let degenerate_psi = found.map(|d| PsiReport {
        ray: d.ray + 1,
        kernel_dim: degenerate_space(fan, d.ray).1,
        lambda_dim: lambda_polytope(fan, &PlFunction::from_ints(&d.psi)).dim,
        values: d.psi,
    });
    Ok(CriterionReport {
        rank: fan.rank(),
        collinear_pair_count: pairs.len(),
        collinear_pairs: pairs.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        degenerate_psi,
        outside_interiors,
        family_checks,
        family_classes_distinct,
        verdict,
    })
}

/// Nonzero classes in the box, nearest the origin first (by the largest
/// absolute coordinate, then lexicographically).
fn search_outside(
    fan: &StackyFan,
    pic: &PicStructure,
    delta: &DeltaFamily,
    config: &ReportConfig,
) -> Result<OutsideSearch, ComputeError> {
    let r = config.search_radius;
    let bounds = vec![(-r, r); pic.free_rank()];
    let mut classes: Vec<CanonicalClass> = classes_in_box(pic, &bounds)?
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    classes.sort_by_key(|c| {
        let size = c.free.iter().chain(&c.torsion).map(|x| x.abs()).max().unwrap_or(0);
        (size, c.clone())
    });
    let witness = exec::find_map_first(config.exec, &classes, |c| {
        let raw = pic.lift(c);
        outside_all_interiors(fan, delta, &raw).then(|| LineBundleClass {
            raw,
            canonical: c.clone(),
        })
    });
    Ok(OutsideSearch {
        search_radius: r,
        classes_searched: classes.len(),
        witness,
    })
}
