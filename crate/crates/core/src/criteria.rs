//! Stability criteria for bundles with cyclic Picard group: the exterior
//! power vanishing test, the restriction inequality for generic
//! hypersurfaces, nonemptiness of plane moduli with `c₁ = 0`, the shape of
//! generic plane resolutions, and generic local freeness of cokernels.

use std::fmt;

use num_rational::{Ratio, Rational64};
use num_traits::CheckedMul;
use serde::{Serialize, Serializer};

use crate::cohomology::{
    exterior_power_complex, h0_vanishing_chase, Ambient, ChaseCertificate, ChaseResult, FreeComplex,
};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::twist::{MonadPresentation, Orientation, TwistSum};

/// The twist `t` taking `c₁` into the window `(−rank, 0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormalizationData {
    pub twist: i64,
    pub normalized_c1: i64,
}

pub fn normalize(rank: u64, c1: i64) -> Result<NormalizationData> {
    if rank == 0 {
        return Err(Error::InvalidArgument(
            "cannot normalize a rank 0 sheaf".into(),
        ));
    }
    let r = i128::from(rank);
    let c1 = i128::from(c1);
    // t = floor(-c1 / r), so that -r < c1 + t r <= 0.
    let t = (-c1).div_euclid(r);
    let normalized = c1 + t * r;
    Ok(NormalizationData {
        twist: i64::try_from(t).map_err(|_| Error::Overflow("normalization"))?,
        normalized_c1: i64::try_from(normalized).map_err(|_| Error::Overflow("normalization"))?,
    })
}

/// One `q` of a successful exterior-power vanishing test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HoppeStep {
    pub q: u64,
    pub normalization: NormalizationData,
    pub complex: FreeComplex,
    pub certificate: ChaseCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HoppeResult {
    /// `h⁰((∧^q E)_norm) = 0` for every `1 ≤ q < rank`.
    Stable { steps: Vec<HoppeStep> },
    /// The vanishing argument did not go through at this `q`.
    Inconclusive {
        q: u64,
        complex: FreeComplex,
        chase: ChaseResult,
    },
}

impl HoppeResult {
    pub fn is_stable(&self) -> bool {
        matches!(self, HoppeResult::Stable { .. })
    }
}

/// Certifies stability of `E` (from `0 → A → B → E → 0`) on `ambient` by
/// showing `H⁰((∧^q E)_norm) = 0` for `1 ≤ q ≤ rank − 1`.
///
/// Only `c₁(E) = 0` is accepted; there every exterior power is already
/// normalized. The ambient is assumed to have Picard group `Z` and, for a
/// hypersurface, the restricted presentation is assumed exact.
pub fn hoppe_check(p: &MonadPresentation, ambient: Ambient) -> Result<HoppeResult> {
    if p.orientation() != Orientation::CokernelOfInjection {
        return Err(Error::Unsupported(
            "exterior power test needs a cokernel presentation".into(),
        ));
    }
    let c1 = p.c1()?;
    if c1 != 0 {
        return Err(Error::Unsupported(format!(
            "exterior power test is only certified for c1 = 0, got c1 = {c1}"
        )));
    }
    let rank = p.rank();
    let mut steps = Vec::new();
    for q in 1..rank {
        let complex = exterior_power_complex(p, q)?;
        let wedge_c1 = i64::try_from(binomial(rank - 1, q - 1)?)
            .ok()
            .and_then(|b| b.checked_mul(c1))
            .ok_or(Error::Overflow("c1 of exterior power"))?;
        let normalization = normalize(complex.resolved_rank(), wedge_c1)?;
        let complex = complex.twist_by(normalization.twist)?;
        match h0_vanishing_chase(&complex, ambient)? {
            ChaseResult::Vanishes(certificate) => steps.push(HoppeStep {
                q,
                normalization,
                complex,
                certificate,
            }),
            chase => return Ok(HoppeResult::Inconclusive { q, complex, chase }),
        }
    }
    Ok(HoppeResult::Stable { steps })
}

/// Outcome of the restriction inequality
/// `C(d+n, d) − d − 1 > d · max((r² − 1)/4, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlennerResult {
    Applies { lhs: i64, rhs: Rational64 },
    Fails { lhs: i64, rhs: Rational64 },
}

impl FlennerResult {
    pub fn applies(&self) -> bool {
        matches!(self, FlennerResult::Applies { .. })
    }

    pub fn lhs(&self) -> i64 {
        match *self {
            FlennerResult::Applies { lhs, .. } | FlennerResult::Fails { lhs, .. } => lhs,
        }
    }

    pub fn rhs(&self) -> Rational64 {
        match *self {
            FlennerResult::Applies { rhs, .. } | FlennerResult::Fails { rhs, .. } => rhs,
        }
    }
}

impl Serialize for FlennerResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            applies: bool,
            lhs: i64,
            rhs: String,
        }
        Repr {
            applies: self.applies(),
            lhs: self.lhs(),
            rhs: self.rhs().to_string(),
        }
        .serialize(serializer)
    }
}

impl fmt::Display for FlennerResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.applies() { ">" } else { "<=" };
        write!(f, "{} {rel} {}", self.lhs(), self.rhs())
    }
}

/// Whether semistability on `P^n` of a rank `r` sheaf passes to the generic
/// smooth hypersurface of degree `d`. The comparison is strict and exact.
pub fn flenner_inequality(n: u64, d: u64, r: u64) -> Result<FlennerResult> {
    if n < 2 || d == 0 || r == 0 {
        return Err(Error::InvalidArgument(format!(
            "restriction inequality needs n >= 2, d >= 1, r >= 1 (got n={n}, d={d}, r={r})"
        )));
    }
    let overflow = || Error::Overflow("restriction inequality");
    let total = n.checked_add(d).ok_or_else(overflow)?;
    let lhs = i64::try_from(binomial(total, d)?)
        .ok()
        .and_then(|b| b.checked_sub(i64::try_from(d).ok()?))
        .and_then(|v| v.checked_sub(1))
        .ok_or_else(overflow)?;
    let r = i64::try_from(r).map_err(|_| overflow())?;
    let d = i64::try_from(d).map_err(|_| overflow())?;
    let r2m1 = r
        .checked_mul(r)
        .and_then(|v| v.checked_sub(1))
        .ok_or_else(overflow)?;
    let spread = Ratio::new(r2m1, 4).max(Ratio::from_integer(1));
    let rhs = spread
        .checked_mul(&Ratio::from_integer(d))
        .ok_or_else(overflow)?;
    Ok(if Ratio::from_integer(lhs) > rhs {
        FlennerResult::Applies { lhs, rhs }
    } else {
        FlennerResult::Fails { lhs, rhs }
    })
}

/// A stable plane bundle with `c₁ = 0`, rank `r` and `c₂ = c` exists when `c ≥ r > 0`.
pub fn dlp_nonempty(r: i64, c2: i64) -> bool {
    r > 0 && c2 >= r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaetaForm {
    /// `0 → O(k−2)^a ⊕ O(k−1)^b → O(k)^c → F → 0`
    LeftHeavy,
    /// `0 → O(k−2)^a → O(k−1)^b ⊕ O(k)^c → F → 0`
    RightHeavy,
}

/// A plane resolution supported on three consecutive twists `k−2, k−1, k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GaetaShape {
    pub form: GaetaForm,
    pub k: i64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl GaetaShape {
    /// The `(left, right)` terms this shape encodes.
    pub fn terms(&self) -> Result<(TwistSum, TwistSum)> {
        let overflow = || Error::Overflow("shape twist");
        let k1 = self.k.checked_sub(1).ok_or_else(overflow)?;
        let k2 = self.k.checked_sub(2).ok_or_else(overflow)?;
        Ok(match self.form {
            GaetaForm::LeftHeavy => (
                TwistSum::from_pairs([(k2, self.a), (k1, self.b)])?,
                TwistSum::single(self.k, self.c)?,
            ),
            GaetaForm::RightHeavy => (
                TwistSum::single(k2, self.a)?,
                TwistSum::from_pairs([(k1, self.b), (self.k, self.c)])?,
            ),
        })
    }

    pub fn presentation(&self) -> Result<MonadPresentation> {
        let (left, right) = self.terms()?;
        MonadPresentation::cokernel(left, right)
    }
}

impl fmt::Display for GaetaShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms() {
            Ok((left, right)) => write!(f, "0 -> {left} -> {right} -> F -> 0"),
            Err(_) => write!(f, "{:?}", self),
        }
    }
}

/// Matches a cokernel presentation against the two three-twist resolution
/// shapes. `c > 0` forces `k = max twist of right`, so the match is unique
/// up to the overlap `b = 0`, where both forms describe the same resolution
/// `0 → O(k−2)^a → O(k)^c`; that case is reported as `LeftHeavy`.
pub fn gaeta_shape_match(p: &MonadPresentation) -> Result<Option<GaetaShape>> {
    if p.orientation() != Orientation::CokernelOfInjection {
        return Err(Error::InvalidArgument(
            "shape matching needs a cokernel presentation".into(),
        ));
    }
    let (left, right) = (p.left(), p.right());
    let Some(k) = right.max_twist() else {
        return Ok(None);
    };
    let (Some(k1), Some(k2)) = (k.checked_sub(1), k.checked_sub(2)) else {
        return Ok(None);
    };
    let c = right.multiplicity(k);
    let within = |sum: &TwistSum, allowed: &[i64]| sum.twists().all(|t| allowed.contains(&t));

    if within(right, &[k]) && within(left, &[k2, k1]) {
        return Ok(Some(GaetaShape {
            form: GaetaForm::LeftHeavy,
            k,
            a: left.multiplicity(k2),
            b: left.multiplicity(k1),
            c,
        }));
    }
    if within(left, &[k2]) && within(right, &[k1, k]) {
        return Ok(Some(GaetaShape {
            form: GaetaForm::RightHeavy,
            k,
            a: left.multiplicity(k2),
            b: right.multiplicity(k1),
            c,
        }));
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalFreenessResult {
    CertifiedLocallyFree,
    NotCertified,
}

impl LocalFreenessResult {
    pub fn is_certified(&self) -> bool {
        matches!(self, LocalFreenessResult::CertifiedLocallyFree)
    }
}

/// `Hom(source, target) = ⊕ O(t − s)` is globally generated iff every
/// pairwise difference `t − s` is nonnegative.
pub fn hom_globally_generated(source: &TwistSum, target: &TwistSum) -> bool {
    source
        .twists()
        .all(|s| target.twists().all(|t| i128::from(t) - i128::from(s) >= 0))
}

/// Cokernel of a generic map from a rank `e` bundle to a rank `f` bundle on
/// an `N`-dimensional variety is locally free when the Hom bundle is
/// globally generated and `f − e + 1 > N`.
pub fn generic_cokernel_locally_free(
    e: u64,
    f: u64,
    hom_globally_generated: bool,
    ambient_dim: u64,
) -> Result<LocalFreenessResult> {
    if e > f {
        return Err(Error::InvalidArgument(format!(
            "source rank {e} exceeds target rank {f}"
        )));
    }
    Ok(if hom_globally_generated && f - e + 1 > ambient_dim {
        LocalFreenessResult::CertifiedLocallyFree
    } else {
        LocalFreenessResult::NotCertified
    })
}
