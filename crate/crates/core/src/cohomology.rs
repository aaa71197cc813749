//! Cohomology dimensions of line bundles on projective space and on generic
//! smooth hypersurfaces, and the term-by-term vanishing argument for the
//! sheaf resolved by an exact complex of line-bundle sums.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::combinatorics::{binomial, binomial_signed};
use crate::error::{Error, Result};
use crate::twist::{MonadPresentation, Orientation, TwistSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmbientKind {
    /// `P^n`
    Proj { n: usize },
    /// A generic smooth hypersurface of degree `d` in `P^n`.
    Hypersurface { n: usize, d: u64 },
}

/// The space cohomology is taken on. Construct through [`Ambient::projective`]
/// or [`Ambient::hypersurface`], which enforce `n ≥ 1` resp. `n ≥ 2, d ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ambient(AmbientKind);

impl Ambient {
    pub fn projective(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("P^n needs n >= 1".into()));
        }
        Ok(Ambient(AmbientKind::Proj { n }))
    }

    pub fn hypersurface(n: usize, d: u64) -> Result<Self> {
        if n < 2 || d == 0 {
            return Err(Error::InvalidArgument(format!(
                "hypersurface of degree {d} in P^{n}: need n >= 2 and d >= 1"
            )));
        }
        Ok(Ambient(AmbientKind::Hypersurface { n, d }))
    }

    pub const P2: Ambient = Ambient(AmbientKind::Proj { n: 2 });
    pub const P4: Ambient = Ambient(AmbientKind::Proj { n: 4 });
    /// The generic smooth quintic threefold in `P^4`.
    pub const QUINTIC: Ambient = Ambient(AmbientKind::Hypersurface { n: 4, d: 5 });

    pub fn kind(&self) -> AmbientKind {
        self.0
    }

    pub fn dim(&self) -> usize {
        match self.0 {
            AmbientKind::Proj { n } => n,
            AmbientKind::Hypersurface { n, .. } => n - 1,
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            AmbientKind::Proj { n } => write!(f, "P^{n}"),
            AmbientKind::Hypersurface { n, d } => write!(f, "X_{d} in P^{n}"),
        }
    }
}

impl Serialize for Ambient {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `[h⁰, h¹, …, h^dim]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CohTable {
    dims: Vec<u64>,
}

impl CohTable {
    fn zero(dim: usize) -> Self {
        CohTable {
            dims: vec![0; dim + 1],
        }
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    /// `h^i`, zero above the dimension.
    pub fn h(&self, i: usize) -> u64 {
        self.dims.get(i).copied().unwrap_or(0)
    }

    fn add_scaled(&mut self, other: &CohTable, mult: u64) -> Result<()> {
        for (slot, &v) in self.dims.iter_mut().zip(&other.dims) {
            let term = v.checked_mul(mult).ok_or(Error::Overflow("cohomology"))?;
            *slot = slot
                .checked_add(term)
                .ok_or(Error::Overflow("cohomology"))?;
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> Result<i64> {
        let mut acc: i128 = 0;
        for (i, &h) in self.dims.iter().enumerate() {
            let h = i128::from(h);
            acc += if i % 2 == 0 { h } else { -h };
        }
        i64::try_from(acc).map_err(|_| Error::Overflow("euler characteristic"))
    }
}

impl fmt::Display for CohTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn proj_h0(k: i64, n: usize) -> Result<u64> {
    let n = n as i64;
    binomial_signed(n.checked_add(k).ok_or(Error::Overflow("cohomology"))?, n)
}

fn proj_top(k: i64, n: usize) -> Result<u64> {
    // h^n(O(k)) = h^0(O(-k-n-1)) by Serre duality, = C(-k-1, n).
    let top = k
        .checked_neg()
        .and_then(|v| v.checked_sub(1))
        .ok_or(Error::Overflow("cohomology"))?;
    binomial_signed(top, n as i64)
}

/// Cohomology of `O(k)` on `ambient`.
///
/// On `P^n` only `h⁰` and `h^n` can be nonzero. On a hypersurface `X` of
/// degree `d` the sequence `0 → O(k−d) → O(k) → O_X(k) → 0` gives
/// `h⁰(O_X(k)) = h⁰(O(k)) − h⁰(O(k−d))` and
/// `h^{n−1}(O_X(k)) = h^n(O(k−d)) − h^n(O(k))`, with the middle groups zero.
pub fn line_cohomology(k: i64, ambient: Ambient) -> Result<CohTable> {
    let mut table = CohTable::zero(ambient.dim());
    match ambient.kind() {
        AmbientKind::Proj { n } => {
            table.dims[0] = proj_h0(k, n)?;
            table.dims[n] = table.dims[n]
                .checked_add(proj_top(k, n)?)
                .ok_or(Error::Overflow("cohomology"))?;
        }
        AmbientKind::Hypersurface { n, d } => {
            let d = i64::try_from(d).map_err(|_| Error::Overflow("hypersurface degree"))?;
            let kd = k.checked_sub(d).ok_or(Error::Overflow("cohomology"))?;
            let underflow = || Error::Overflow("cohomology (negative dimension)");
            table.dims[0] = proj_h0(k, n)?
                .checked_sub(proj_h0(kd, n)?)
                .ok_or_else(underflow)?;
            table.dims[n - 1] = proj_top(kd, n)?
                .checked_sub(proj_top(k, n)?)
                .ok_or_else(underflow)?;
        }
    }
    Ok(table)
}

/// Cohomology of a sum of line bundles: additive over summands.
pub fn sheaf_cohomology(sum: &TwistSum, ambient: Ambient) -> Result<CohTable> {
    let mut table = CohTable::zero(ambient.dim());
    for (twist, mult) in sum.iter() {
        table.add_scaled(&line_cohomology(twist, ambient)?, mult)?;
    }
    Ok(table)
}

pub fn euler_characteristic(sum: &TwistSum, ambient: Ambient) -> Result<i64> {
    sheaf_cohomology(sum, ambient)?.euler_characteristic()
}

/// An exact complex `0 → F_k → ⋯ → F₁ → F₀ → W → 0` resolving a sheaf `W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeComplex {
    label: String,
    resolved_rank: u64,
    terms: Vec<TwistSum>,
}

impl FreeComplex {
    /// Checks that `Σ(−1)^i rank(F_i)` equals `resolved_rank`.
    pub fn new(label: impl Into<String>, terms: Vec<TwistSum>, resolved_rank: u64) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument(
                "a complex needs at least one term".into(),
            ));
        }
        let mut alt: i128 = 0;
        for (i, t) in terms.iter().enumerate() {
            let r = i128::from(t.rank());
            alt += if i % 2 == 0 { r } else { -r };
        }
        if alt != i128::from(resolved_rank) {
            return Err(Error::InvalidArgument(format!(
                "alternating rank sum {alt} does not match resolved rank {resolved_rank}"
            )));
        }
        Ok(FreeComplex {
            label: label.into(),
            resolved_rank,
            terms,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn resolved_rank(&self) -> u64 {
        self.resolved_rank
    }

    /// `[F₀, F₁, …, F_k]`.
    pub fn terms(&self) -> &[TwistSum] {
        &self.terms
    }

    /// Index `k` of the last term.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// Applies `⊗ O(t)` to every term.
    pub fn twist_by(&self, t: i64) -> Result<FreeComplex> {
        let terms = self
            .terms
            .iter()
            .map(|f| f.twist_by(t))
            .collect::<Result<Vec<_>>>()?;
        let label = if t == 0 {
            self.label.clone()
        } else {
            format!("{}({t})", self.label)
        };
        Ok(FreeComplex {
            label,
            resolved_rank: self.resolved_rank,
            terms,
        })
    }
}

impl fmt::Display for FreeComplex {
    /// `0 -> F_k -> ... -> F_0 -> W -> 0`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("0")?;
        for t in self.terms.iter().rev() {
            write!(f, " -> {t}")?;
        }
        write!(f, " -> {} -> 0", self.label)
    }
}

/// Resolution of `∧^q E` for `0 → A → B → E → 0`:
/// `0 → S^qA → S^{q−1}A ⊗ B → ⋯ → A ⊗ ∧^{q−1}B → ∧^qB → ∧^qE → 0`,
/// returned as `F_j = S^jA ⊗ ∧^{q−j}B`.
pub fn exterior_power_complex(p: &MonadPresentation, q: u64) -> Result<FreeComplex> {
    if p.orientation() != Orientation::CokernelOfInjection {
        return Err(Error::InvalidArgument(
            "exterior power resolution needs a cokernel presentation".into(),
        ));
    }
    let rank = p.rank();
    if q == 0 || q > rank {
        return Err(Error::InvalidArgument(format!(
            "exterior power q = {q} outside 1..={rank}"
        )));
    }
    let terms = (0..=q)
        .map(|j| p.left().sym_power(j)?.tensor(&p.right().ext_power(q - j)?))
        .collect::<Result<Vec<_>>>()?;
    let label = if q == 1 {
        "E".to_string()
    } else {
        format!("wedge^{q} E")
    };
    FreeComplex::new(label, terms, binomial(rank, q)?)
}

/// `h^i(F_i) = 0`, one step of a vanishing certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingFact {
    pub index: usize,
    pub term: TwistSum,
}

impl fmt::Display for VanishingFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h^{i}(F_{i}) = 0, F_{i} = {}", self.term, i = self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChaseCertificate {
    pub label: String,
    pub ambient: Ambient,
    pub facts: Vec<VanishingFact>,
}

impl ChaseCertificate {
    /// Recomputes every fact from scratch and checks that they cover exactly
    /// the indices `0..=min(k, dim)` of `complex`.
    pub fn verify(&self, complex: &FreeComplex) -> Result<bool> {
        let needed = complex.length().min(self.ambient.dim());
        if self.facts.len() != needed + 1 {
            return Ok(false);
        }
        for (i, fact) in self.facts.iter().enumerate() {
            if fact.index != i || fact.term != complex.terms()[i] {
                return Ok(false);
            }
            if sheaf_cohomology(&fact.term, self.ambient)?.h(i) != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ChaseResult {
    /// `h⁰(W) = 0`.
    Vanishes(ChaseCertificate),
    /// The argument breaks at `index`: `h^index(F_index) = value > 0`. This
    /// says nothing about `h⁰(W)`.
    Inconclusive {
        index: usize,
        term: TwistSum,
        value: u64,
    },
}

impl ChaseResult {
    pub fn vanishes(&self) -> bool {
        matches!(self, ChaseResult::Vanishes(_))
    }
}

/// Splits the resolution into `0 → K_i → F_i → K_{i−1} → 0` (`K_{−1} = W`,
/// `K_{k−1} = F_k`) and pushes `h⁰(W) = 0` down the chain:
/// `h⁰(W) = 0` follows once `h^i(F_i) = 0` for all `i ≤ min(k, dim X)`.
pub fn h0_vanishing_chase(complex: &FreeComplex, ambient: Ambient) -> Result<ChaseResult> {
    let last = complex.length().min(ambient.dim());
    let mut facts = Vec::with_capacity(last + 1);
    for (i, term) in complex.terms().iter().enumerate().take(last + 1) {
        let value = sheaf_cohomology(term, ambient)?.h(i);
        if value > 0 {
            return Ok(ChaseResult::Inconclusive {
                index: i,
                term: term.clone(),
                value,
            });
        }
        facts.push(VanishingFact {
            index: i,
            term: term.clone(),
        });
    }
    Ok(ChaseResult::Vanishes(ChaseCertificate {
        label: complex.label().to_string(),
        ambient,
        facts,
    }))
}
