//! Direct sums of line bundles `⊕ O(a)^m` on a space with Picard group `Z`,
//! and the two-term presentations built from them.
//!
//! Everything here is multiset bookkeeping: a sum of line bundles is fully
//! described by its twists with multiplicities, and symmetric or exterior
//! powers of such a sum split again into line bundles whose twists are sums
//! of the original ones.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

/// A finite direct sum `⊕ O(a)^{m_a}` of line bundles.
///
/// Multiplicities are always strictly positive, and the total rank always
/// fits in a `u64`. The twist `i64::MIN` is rejected so that dualizing can
/// never overflow.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TwistSum {
    entries: BTreeMap<i64, u64>,
    rank: u64,
}

impl TwistSum {
    /// The zero sheaf.
    pub fn empty() -> Self {
        Self::default()
    }

    /// The structure sheaf `O`.
    pub fn trivial() -> Self {
        Self::single(0, 1).expect("O(0) is always representable")
    }

    /// `O(twist)^mult`; a zero multiplicity gives the empty sum.
    pub fn single(twist: i64, mult: u64) -> Result<Self> {
        let mut sum = Self::empty();
        sum.add_summand(twist, mult)?;
        Ok(sum)
    }

    /// Builds a sum from `(twist, multiplicity)` pairs; repeated twists accumulate.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, u64)>,
    {
        let mut sum = Self::empty();
        for (twist, mult) in pairs {
            sum.add_summand(twist, mult)?;
        }
        Ok(sum)
    }

    /// Builds a sum from a list of twists, one line bundle per item.
    pub fn from_twists<I>(twists: I) -> Result<Self>
    where
        I: IntoIterator<Item = i64>,
    {
        Self::from_pairs(twists.into_iter().map(|t| (t, 1)))
    }

    fn add_summand(&mut self, twist: i64, mult: u64) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        if twist == i64::MIN {
            return Err(Error::Overflow("twist"));
        }
        self.rank = self.rank.checked_add(mult).ok_or(Error::Overflow("rank"))?;
        let slot = self.entries.entry(twist).or_insert(0);
        // Cannot overflow: the slot is bounded by the rank just checked.
        *slot += mult;
        Ok(())
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.rank == 0
    }

    /// Multiplicity of `O(twist)`, zero if absent.
    pub fn multiplicity(&self, twist: i64) -> u64 {
        self.entries.get(&twist).copied().unwrap_or(0)
    }

    /// First Chern class in units of `H`: the sum of all twists with multiplicity.
    pub fn degree(&self) -> Result<i64> {
        let mut acc: i128 = 0;
        for (&twist, &mult) in &self.entries {
            let term = i128::from(twist)
                .checked_mul(i128::from(mult))
                .ok_or(Error::Overflow("degree"))?;
            acc = acc.checked_add(term).ok_or(Error::Overflow("degree"))?;
        }
        i64::try_from(acc).map_err(|_| Error::Overflow("degree"))
    }

    /// `(twist, multiplicity)` pairs in descending twist order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, u64)> + '_ {
        self.entries.iter().rev().map(|(&t, &m)| (t, m))
    }

    /// Distinct twists present, descending.
    pub fn twists(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().rev().copied()
    }

    /// One twist per line-bundle summand, ascending.
    pub fn expanded(&self) -> Vec<i64> {
        self.entries
            .iter()
            .flat_map(|(&t, &m)| std::iter::repeat_n(t, m as usize))
            .collect()
    }

    pub fn min_twist(&self) -> Option<i64> {
        self.entries.keys().next().copied()
    }

    pub fn max_twist(&self) -> Option<i64> {
        self.entries.keys().next_back().copied()
    }

    pub fn dual(&self) -> TwistSum {
        TwistSum {
            entries: self.entries.iter().map(|(&t, &m)| (-t, m)).collect(),
            rank: self.rank,
        }
    }

    pub fn direct_sum(&self, other: &TwistSum) -> Result<TwistSum> {
        let mut out = self.clone();
        for (t, m) in other.iter() {
            out.add_summand(t, m)?;
        }
        Ok(out)
    }

    /// Tensor product: multiplicities convolve over sums of twists.
    pub fn tensor(&self, other: &TwistSum) -> Result<TwistSum> {
        let mut out = TwistSum::empty();
        for (a, ma) in self.iter() {
            for (b, mb) in other.iter() {
                let t = a.checked_add(b).ok_or(Error::Overflow("tensor twist"))?;
                let m = ma.checked_mul(mb).ok_or(Error::Overflow("tensor rank"))?;
                out.add_summand(t, m)?;
            }
        }
        Ok(out)
    }

    /// `self ⊗ O(t)`.
    pub fn twist_by(&self, t: i64) -> Result<TwistSum> {
        let mut out = TwistSum::empty();
        for (a, m) in self.iter() {
            let shifted = a.checked_add(t).ok_or(Error::Overflow("twist"))?;
            out.add_summand(shifted, m)?;
        }
        Ok(out)
    }

    /// `S^p` of the sum.
    pub fn sym_power(&self, p: u64) -> Result<TwistSum> {
        self.graded_power(p, |m, j| {
            // Size-j multisets from m summands of equal twist.
            if m == 0 {
                return Ok(u64::from(j == 0));
            }
            binomial(
                m.checked_add(j - u64::from(j > 0))
                    .ok_or(Error::Overflow("sym_power"))?,
                j,
            )
        })
    }

    /// `∧^p` of the sum; empty when `p` exceeds the rank.
    pub fn ext_power(&self, p: u64) -> Result<TwistSum> {
        if p > self.rank {
            return Ok(TwistSum::empty());
        }
        self.graded_power(p, binomial)
    }

    /// Shared driver for `S^p` and `∧^p`. A block `O(a)^m` contributes
    /// `O(j·a)^{count(m, j)}` in degree `j`; the blocks are multiplied as
    /// graded objects and degree `p` is read off at the end.
    fn graded_power<F>(&self, p: u64, count: F) -> Result<TwistSum>
    where
        F: Fn(u64, u64) -> Result<u64>,
    {
        let p_len = usize::try_from(p)
            .ok()
            .and_then(|p| p.checked_add(1))
            .ok_or(Error::Overflow("power degree"))?;
        let mut layers = vec![TwistSum::empty(); p_len];
        layers[0] = TwistSum::trivial();
        for (a, m) in self.iter() {
            let mut next = vec![TwistSum::empty(); p_len];
            for (done, layer) in layers.iter().enumerate() {
                if layer.is_empty() {
                    continue;
                }
                for j in 0..p_len - done {
                    let c = count(m, j as u64)?;
                    if c == 0 {
                        // count(m, j) vanishes for every larger j as well.
                        break;
                    }
                    let shift = i64::try_from(j)
                        .ok()
                        .and_then(|j| a.checked_mul(j))
                        .ok_or(Error::Overflow("power twist"))?;
                    for (t, mt) in layer.iter() {
                        let twist = t.checked_add(shift).ok_or(Error::Overflow("power twist"))?;
                        let mult = mt.checked_mul(c).ok_or(Error::Overflow("power rank"))?;
                        next[done + j].add_summand(twist, mult)?;
                    }
                }
            }
            layers = next;
        }
        Ok(layers.swap_remove(p_len - 1))
    }
}

impl fmt::Display for TwistSum {
    /// `O(-2)^6 + O(-3)^8 + O(-4)`, descending twist; `0` for the empty sum.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, m)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "O({t})")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct SummandRef {
    twist: i64,
    mult: u64,
}

impl Serialize for TwistSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for (twist, mult) in self.iter() {
            seq.serialize_element(&SummandRef { twist, mult })?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `0 → V → right → left → 0`
    KernelOfSurjection,
    /// `0 → left → right → E → 0`
    CokernelOfInjection,
}

/// A sheaf presented as the kernel of a surjection or the cokernel of an
/// injection between two sums of line bundles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonadPresentation {
    left: TwistSum,
    right: TwistSum,
    orientation: Orientation,
}

impl MonadPresentation {
    pub fn new(left: TwistSum, right: TwistSum, orientation: Orientation) -> Result<Self> {
        if right.rank() <= left.rank() {
            return Err(Error::InvalidArgument(format!(
                "presented rank must be positive, got {} - {}",
                right.rank(),
                left.rank()
            )));
        }
        Ok(Self {
            left,
            right,
            orientation,
        })
    }

    /// `0 → V → right → left → 0`.
    pub fn kernel(right: TwistSum, left: TwistSum) -> Result<Self> {
        Self::new(left, right, Orientation::KernelOfSurjection)
    }

    /// `0 → left → right → E → 0`.
    pub fn cokernel(left: TwistSum, right: TwistSum) -> Result<Self> {
        Self::new(left, right, Orientation::CokernelOfInjection)
    }

    pub fn left(&self) -> &TwistSum {
        &self.left
    }

    pub fn right(&self) -> &TwistSum {
        &self.right
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn rank(&self) -> u64 {
        self.right.rank() - self.left.rank()
    }

    /// `c₁ = c₁(right) − c₁(left)`, the same for either orientation.
    pub fn c1(&self) -> Result<i64> {
        self.right
            .degree()?
            .checked_sub(self.left.degree()?)
            .ok_or(Error::Overflow("c1"))
    }

    /// Presentation of the dual sheaf: dualizing a short exact sequence of
    /// bundles reverses it, so kernels become cokernels and vice versa.
    pub fn dual(&self) -> MonadPresentation {
        let orientation = match self.orientation {
            Orientation::KernelOfSurjection => Orientation::CokernelOfInjection,
            Orientation::CokernelOfInjection => Orientation::KernelOfSurjection,
        };
        MonadPresentation {
            left: self.left.dual(),
            right: self.right.dual(),
            orientation,
        }
    }
}

impl fmt::Display for MonadPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orientation {
            Orientation::KernelOfSurjection => {
                write!(f, "0 -> V -> {} -> {} -> 0", self.right, self.left)
            }
            Orientation::CokernelOfInjection => {
                write!(f, "0 -> {} -> {} -> E -> 0", self.left, self.right)
            }
        }
    }
}
