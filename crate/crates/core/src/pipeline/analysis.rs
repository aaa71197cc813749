//! Per-entry stability analysis.
//!
//! Every entry is analyzed through its dual `E = V*`, presented as
//! `0 → ⊕O(−m_j) → ⊕O(−n_i) → E → 0`; (semi)stability is invariant under
//! duality. The route is chosen by rank:
//!
//! * rank ≤ 3: local freeness and the exterior power test directly on the quintic;
//! * rank 4: the exterior power test on `P^4`, then restriction to the quintic;
//! * rank ≥ 5: restriction to a plane, resolution shape plus plane moduli
//!   nonemptiness, then restriction to the quintic.

use serde::Serialize;

use crate::chern::chern_of_presentation;
use crate::cohomology::{Ambient, ChaseResult, FreeComplex, VanishingFact};
use crate::criteria::{
    dlp_nonempty, flenner_inequality, gaeta_shape_match, generic_cokernel_locally_free,
    hom_globally_generated, hoppe_check, FlennerResult, GaetaShape, HoppeResult,
    LocalFreenessResult,
};
use crate::error::Result;
use crate::twist::MonadPresentation;

use super::table::TableEntry;

const QUINTIC_DEGREE: u64 = 5;
const P4_DIM: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Rank3QuinticHoppe,
    Rank4AmbientHoppePlusFlenner,
    HighRankPlaneRestriction,
}

impl Route {
    pub const ALL: [Route; 3] = [
        Route::Rank3QuinticHoppe,
        Route::Rank4AmbientHoppePlusFlenner,
        Route::HighRankPlaneRestriction,
    ];

    /// The route whose certificate chain matches the standard argument for this rank.
    pub fn for_rank(rank: u64) -> Route {
        match rank {
            0..=3 => Route::Rank3QuinticHoppe,
            4 => Route::Rank4AmbientHoppePlusFlenner,
            _ => Route::HighRankPlaneRestriction,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Rank3QuinticHoppe => "rank3_quintic_hoppe",
            Route::Rank4AmbientHoppePlusFlenner => "rank4_ambient_hoppe_plus_flenner",
            Route::HighRankPlaneRestriction => "high_rank_plane_restriction",
        }
    }
}

/// Certification verdicts. `Inconclusive` never means "unstable".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    StableOnQuintic,
    SemistableOnQuintic,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::StableOnQuintic => "stable_on_quintic",
            Verdict::SemistableOnQuintic => "semistable_on_quintic",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChernSummary {
    pub c1: i64,
    pub c2: i64,
    pub c3: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalFreeness {
    pub p4: bool,
    pub quintic: bool,
}

/// One checkable fact in a certificate chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Generic cokernel `E` of `A → B` is locally free on a `dim`-dimensional ambient.
    LocalFreeness {
        ambient: Ambient,
        source_rank: u64,
        target_rank: u64,
        hom_globally_generated: bool,
        result: LocalFreenessResult,
    },
    /// `H⁰((∧^q E)_norm) = 0` via term-by-term vanishing on a resolution.
    ExteriorPowerVanishing {
        ambient: Ambient,
        q: u64,
        normalization_twist: i64,
        resolution: FreeComplex,
        facts: Vec<VanishingFact>,
    },
    /// Semistability on `P^n` passes to the generic degree-`d` hypersurface.
    Restriction {
        n: u64,
        d: u64,
        rank: u64,
        result: FlennerResult,
    },
    /// The presentation restricted to a plane has three-consecutive-twist shape.
    PlaneResolutionShape { shape: GaetaShape },
    /// A stable plane bundle with these invariants and `c₁ = 0` exists.
    PlaneModuliNonempty { rank: u64, c2: i64, nonempty: bool },
}

/// Result of running one route on one entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RouteOutcome {
    pub route: Route,
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
    pub assumptions: Vec<String>,
    /// Why the route stopped short, when `verdict` is `Inconclusive`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub entry: TableEntry,
    /// Chern classes of `V` on `P^4`.
    pub chern: ChernSummary,
    pub local_freeness: LocalFreeness,
    pub outcome: RouteOutcome,
    /// Other routes, populated only when every route is requested.
    pub alternatives: Vec<RouteOutcome>,
}

impl AnalysisReport {
    pub fn route(&self) -> Route {
        self.outcome.route
    }

    pub fn verdict(&self) -> Verdict {
        self.outcome.verdict
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.outcome.certificates
    }

    pub fn assumptions(&self) -> &[String] {
        &self.outcome.assumptions
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Also run the routes not selected by rank and report them as alternatives.
    pub try_all_routes: bool,
}

const GENERIC_MAP: &str = "the map in the presentation is generic";
const PIC_CYCLIC: &str = "the ambient has Picard group Z";
const GENERIC_QUINTIC: &str = "M is a generic smooth quintic hypersurface in P^4";
const RESTRICTION_EXACT: &str = "the presentation stays exact after restriction";

struct RouteBuilder {
    route: Route,
    certificates: Vec<Certificate>,
    assumptions: Vec<String>,
}

impl RouteBuilder {
    fn new(route: Route, assumptions: &[&str]) -> Self {
        RouteBuilder {
            route,
            certificates: Vec::new(),
            assumptions: assumptions.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn finish(self, verdict: Verdict) -> RouteOutcome {
        RouteOutcome {
            route: self.route,
            verdict,
            certificates: self.certificates,
            assumptions: self.assumptions,
            reason: None,
        }
    }

    fn inconclusive(self, reason: impl Into<String>) -> RouteOutcome {
        RouteOutcome {
            reason: Some(reason.into()),
            ..self.finish(Verdict::Inconclusive)
        }
    }

    fn local_freeness(&mut self, e: &MonadPresentation, ambient: Ambient) -> Result<bool> {
        let gg = hom_globally_generated(e.left(), e.right());
        let result = generic_cokernel_locally_free(
            e.left().rank(),
            e.right().rank(),
            gg,
            ambient.dim() as u64,
        )?;
        self.certificates.push(Certificate::LocalFreeness {
            ambient,
            source_rank: e.left().rank(),
            target_rank: e.right().rank(),
            hom_globally_generated: gg,
            result,
        });
        Ok(result.is_certified())
    }

    /// Runs the exterior power test; `Err` carries the reason it failed.
    fn hoppe(
        &mut self,
        e: &MonadPresentation,
        ambient: Ambient,
    ) -> Result<std::result::Result<(), String>> {
        let result = match hoppe_check(e, ambient) {
            Ok(r) => r,
            Err(crate::Error::Unsupported(msg)) => return Ok(Err(msg)),
            Err(other) => return Err(other),
        };
        match result {
            HoppeResult::Stable { steps } => {
                for step in steps {
                    self.certificates.push(Certificate::ExteriorPowerVanishing {
                        ambient,
                        q: step.q,
                        normalization_twist: step.normalization.twist,
                        resolution: step.complex,
                        facts: step.certificate.facts,
                    });
                }
                Ok(Ok(()))
            }
            HoppeResult::Inconclusive { q, chase, .. } => {
                let detail = match chase {
                    ChaseResult::Inconclusive { index, term, value } => {
                        format!(
                            "h^{index}(F_{index}) = {value} on {ambient} for F_{index} = {term}"
                        )
                    }
                    ChaseResult::Vanishes(_) => unreachable!("a vanishing chase is not a failure"),
                };
                Ok(Err(format!(
                    "H^0(wedge^{q} E) vanishing not certified: {detail}"
                )))
            }
        }
    }

    fn flenner(&mut self, rank: u64) -> Result<bool> {
        let result = flenner_inequality(P4_DIM, QUINTIC_DEGREE, rank)?;
        self.certificates.push(Certificate::Restriction {
            n: P4_DIM,
            d: QUINTIC_DEGREE,
            rank,
            result,
        });
        Ok(result.applies())
    }
}

fn quintic_hoppe(e: &MonadPresentation) -> Result<RouteOutcome> {
    let mut b = RouteBuilder::new(
        Route::Rank3QuinticHoppe,
        &[GENERIC_MAP, GENERIC_QUINTIC, PIC_CYCLIC, RESTRICTION_EXACT],
    );
    if !b.local_freeness(e, Ambient::QUINTIC)? {
        return Ok(b.inconclusive("generic local freeness on the quintic not certified"));
    }
    if let Err(reason) = b.hoppe(e, Ambient::QUINTIC)? {
        return Ok(b.inconclusive(reason));
    }
    Ok(b.finish(Verdict::StableOnQuintic))
}

fn ambient_hoppe_flenner(e: &MonadPresentation) -> Result<RouteOutcome> {
    let mut b = RouteBuilder::new(
        Route::Rank4AmbientHoppePlusFlenner,
        &[
            GENERIC_MAP,
            PIC_CYCLIC,
            GENERIC_QUINTIC,
            "stability on P^4 is only used as semistability when restricting",
        ],
    );
    if !b.local_freeness(e, Ambient::P4)? {
        return Ok(b.inconclusive("generic local freeness on P^4 not certified"));
    }
    if let Err(reason) = b.hoppe(e, Ambient::P4)? {
        return Ok(b.inconclusive(reason));
    }
    if !b.flenner(e.rank())? {
        return Ok(b.inconclusive("restriction inequality fails for the quintic"));
    }
    Ok(b.finish(Verdict::SemistableOnQuintic))
}

fn plane_restriction(e: &MonadPresentation, c2: i64) -> Result<RouteOutcome> {
    let mut b = RouteBuilder::new(
        Route::HighRankPlaneRestriction,
        &[
            GENERIC_MAP,
            "the plane is generic and the presentation stays exact on it",
            "M(r, 0, c2) on P^2 is irreducible",
            "a generic member of M(r, 0, c2) has exactly the matched resolution constants",
            "stability of the restriction to a generic plane implies stability on P^4",
            GENERIC_QUINTIC,
            "stability on P^4 is only used as semistability when restricting",
        ],
    );
    if !b.local_freeness(e, Ambient::P4)? {
        return Ok(b.inconclusive("generic local freeness on P^4 not certified"));
    }
    let c1 = e.c1()?;
    if c1 != 0 {
        return Ok(b.inconclusive(format!("plane moduli criterion needs c1 = 0, got {c1}")));
    }
    // Twists are unchanged by restriction to the plane.
    let Some(shape) = gaeta_shape_match(e)? else {
        return Ok(b.inconclusive(
            "restricted plane resolution is not supported on three consecutive twists",
        ));
    };
    b.certificates
        .push(Certificate::PlaneResolutionShape { shape });
    let rank = e.rank();
    let nonempty = i64::try_from(rank).is_ok_and(|r| dlp_nonempty(r, c2));
    b.certificates
        .push(Certificate::PlaneModuliNonempty { rank, c2, nonempty });
    if !nonempty {
        return Ok(b.inconclusive(format!(
            "no stable plane bundle with rank {rank}, c1 = 0, c2 = {c2}"
        )));
    }
    if !b.flenner(rank)? {
        return Ok(b.inconclusive("restriction inequality fails for the quintic"));
    }
    Ok(b.finish(Verdict::SemistableOnQuintic))
}

fn run_route(route: Route, e: &MonadPresentation, chern: &ChernSummary) -> Result<RouteOutcome> {
    match route {
        Route::Rank3QuinticHoppe => quintic_hoppe(e),
        Route::Rank4AmbientHoppePlusFlenner => ambient_hoppe_flenner(e),
        Route::HighRankPlaneRestriction => plane_restriction(e, chern.c2),
    }
}

pub fn analyze_entry(entry: &TableEntry) -> Result<AnalysisReport> {
    analyze_entry_with(entry, AnalysisOptions::default())
}

/// Certification failures become `Inconclusive`; only arithmetic overflow is an error.
pub fn analyze_entry_with(entry: &TableEntry, options: AnalysisOptions) -> Result<AnalysisReport> {
    let classes = chern_of_presentation(&entry.presentation(), P4_DIM as usize)?;
    let chern = ChernSummary {
        c1: classes.c(1),
        c2: classes.c(2),
        c3: classes.c(3),
    };
    let e = entry.dual_presentation();
    let gg = hom_globally_generated(e.left(), e.right());
    let lf = |dim: u64| {
        generic_cokernel_locally_free(e.left().rank(), e.right().rank(), gg, dim)
            .map(|r| r.is_certified())
    };
    let local_freeness = LocalFreeness {
        p4: lf(P4_DIM)?,
        quintic: lf(Ambient::QUINTIC.dim() as u64)?,
    };

    let primary = Route::for_rank(entry.rank());
    let outcome = run_route(primary, &e, &chern)?;
    let mut alternatives = Vec::new();
    if options.try_all_routes {
        for route in Route::ALL.into_iter().filter(|&r| r != primary) {
            alternatives.push(run_route(route, &e, &chern)?);
        }
    }
    Ok(AnalysisReport {
        entry: entry.clone(),
        chern,
        local_freeness,
        outcome,
        alternatives,
    })
}

/// Analyzes entries independently; output order follows input order.
pub fn analyze_all(
    entries: &[TableEntry],
    options: AnalysisOptions,
) -> Result<Vec<AnalysisReport>> {
    entries
        .iter()
        .map(|e| analyze_entry_with(e, options))
        .collect()
}
