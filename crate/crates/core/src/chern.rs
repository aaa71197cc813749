//! Total Chern classes as integer polynomials in the hyperplane class `H`,
//! truncated modulo `H^{n+1}`.

use std::fmt;

use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::twist::{MonadPresentation, TwistSum};

/// `c₀ + c₁H + … + c_nH^n` in the Chow ring of `P^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChernPoly {
    coefficients: Vec<i64>,
}

impl ChernPoly {
    /// The unit `1`, i.e. the total Chern class of a trivial bundle.
    pub fn one(ambient_dim: usize) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidArgument(
                "ambient dimension must be at least 1".into(),
            ));
        }
        let mut coefficients = vec![0; ambient_dim + 1];
        coefficients[0] = 1;
        Ok(Self { coefficients })
    }

    /// Pads or truncates `coefficients` to length `ambient_dim + 1`.
    pub fn from_coefficients(coefficients: &[i64], ambient_dim: usize) -> Result<Self> {
        let mut out = Self::one(ambient_dim)?;
        out.coefficients.iter_mut().for_each(|c| *c = 0);
        for (slot, &c) in out.coefficients.iter_mut().zip(coefficients) {
            *slot = c;
        }
        Ok(out)
    }

    pub fn ambient_dim(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// `c_i`, zero beyond the ambient dimension.
    pub fn c(&self, i: usize) -> i64 {
        self.coefficients.get(i).copied().unwrap_or(0)
    }

    fn check_same_ring(&self, other: &ChernPoly) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::InvalidArgument(format!(
                "Chern polynomials over P^{} and P^{}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &ChernPoly) -> Result<ChernPoly> {
        self.check_same_ring(other)?;
        let n = self.ambient_dim();
        let mut out = vec![0i64; n + 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coefficients[..=n - i].iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Error::Overflow("chern product"))?;
                out[i + j] = out[i + j]
                    .checked_add(term)
                    .ok_or(Error::Overflow("chern product"))?;
            }
        }
        Ok(ChernPoly { coefficients: out })
    }

    /// Inverse in the truncated ring; requires `c₀ = 1`.
    ///
    /// Solves `(self · inv)_k = 0` for `k ≥ 1`, i.e.
    /// `inv_k = −Σ_{i=1..k} c_i · inv_{k−i}`.
    pub fn inverse(&self) -> Result<ChernPoly> {
        if self.c(0) != 1 {
            return Err(Error::InvalidArgument(format!(
                "leading coefficient {} is not a unit",
                self.c(0)
            )));
        }
        let n = self.ambient_dim();
        let mut inv = vec![0i64; n + 1];
        inv[0] = 1;
        for k in 1..=n {
            let mut acc: i64 = 0;
            for i in 1..=k {
                let term = self.coefficients[i]
                    .checked_mul(inv[k - i])
                    .ok_or(Error::Overflow("chern inverse"))?;
                acc = acc
                    .checked_add(term)
                    .ok_or(Error::Overflow("chern inverse"))?;
            }
            inv[k] = acc.checked_neg().ok_or(Error::Overflow("chern inverse"))?;
        }
        Ok(ChernPoly { coefficients: inv })
    }

    /// Total Chern class of the dual: `c_i ↦ (−1)^i c_i`.
    pub fn dual(&self) -> Result<ChernPoly> {
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if i % 2 == 1 {
                    c.checked_neg().ok_or(Error::Overflow("chern dual"))
                } else {
                    Ok(c)
                }
            })
            .collect::<Result<_>>()?;
        Ok(ChernPoly { coefficients })
    }
}

impl fmt::Display for ChernPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `∏ (1 + aH)` over the summands of `sum`, modulo `H^{n+1}`.
pub fn total_chern(sum: &TwistSum, ambient_dim: usize) -> Result<ChernPoly> {
    let mut acc = ChernPoly::one(ambient_dim)?;
    for (twist, mult) in sum.iter() {
        acc = acc.mul(&line_power(twist, mult, ambient_dim)?)?;
    }
    Ok(acc)
}

/// `(1 + aH)^m = Σ_k C(m, k) a^k H^k`, truncated.
fn line_power(a: i64, m: u64, ambient_dim: usize) -> Result<ChernPoly> {
    let mut out = ChernPoly::one(ambient_dim)?;
    let mut a_pow: i64 = 1;
    for k in 1..=ambient_dim.min(usize::try_from(m).unwrap_or(usize::MAX)) {
        a_pow = a_pow.checked_mul(a).ok_or(Error::Overflow("chern power"))?;
        let c =
            i64::try_from(binomial(m, k as u64)?).map_err(|_| Error::Overflow("chern power"))?;
        out.coefficients[k] = c.checked_mul(a_pow).ok_or(Error::Overflow("chern power"))?;
    }
    Ok(out)
}

/// Total Chern class of the presented sheaf: `c(right) · c(left)^{-1}`.
///
/// For `0 → V → B → C → 0` this is `c(B)/c(C)`; for `0 → A → B → E → 0` it is
/// `c(B)/c(A)`. Both read as `right / left`.
pub fn chern_of_presentation(p: &MonadPresentation, ambient_dim: usize) -> Result<ChernPoly> {
    let right = total_chern(p.right(), ambient_dim)?;
    let left = total_chern(p.left(), ambient_dim)?;
    right.mul(&left.inverse()?)
}

pub fn dual_chern(c: &ChernPoly) -> Result<ChernPoly> {
    c.dual()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(pairs: &[(i64, u64)]) -> TwistSum {
        TwistSum::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn total_chern_examples() {
        assert_eq!(
            total_chern(&ts(&[(1, 5)]), 4).unwrap().coefficients(),
            &[1, 5, 10, 10, 5]
        );
        assert_eq!(
            total_chern(&ts(&[(0, 3)]), 4).unwrap().coefficients(),
            &[1, 0, 0, 0, 0]
        );
        assert_eq!(
            total_chern(&ts(&[(-4, 2)]), 4).unwrap().coefficients(),
            &[1, -8, 16, 0, 0]
        );
        assert!(total_chern(&ts(&[(1, 1)]), 0).is_err());
    }

    #[test]
    fn v9_classes() {
        let v9 = MonadPresentation::kernel(ts(&[(1, 5)]), ts(&[(5, 1)])).unwrap();
        let c = chern_of_presentation(&v9, 4).unwrap();
        assert_eq!(c.c(0), 1);
        assert_eq!(c.c(1), 0);
        assert_eq!(c.c(2), 10);
        assert_eq!(c.c(3), -40);
        assert_eq!(dual_chern(&c).unwrap().coefficients()[..4], [1, 0, 10, 40]);
    }

    #[test]
    fn equal_terms_cancel() {
        let f = ts(&[(2, 3), (-1, 2)]);
        let mut right = f.clone();
        right = right.direct_sum(&ts(&[(0, 1)])).unwrap();
        // right = f ⊕ O, left = f: the virtual difference is O.
        let p = MonadPresentation::kernel(right, f.clone()).unwrap();
        assert_eq!(
            chern_of_presentation(&p, 4).unwrap().coefficients(),
            &[1, 0, 0, 0, 0]
        );
        // left = right exactly is not a presentation (rank 0), but the
        // quotient of the classes is still 1.
        let c = total_chern(&f, 4).unwrap();
        assert_eq!(
            c.mul(&c.inverse().unwrap()).unwrap(),
            ChernPoly::one(4).unwrap()
        );
    }

    #[test]
    fn dual_examples() {
        let one = ChernPoly::one(4).unwrap();
        assert_eq!(dual_chern(&one).unwrap(), one);
        let c = ChernPoly::from_coefficients(&[1, 5, 10, 10, 5], 4).unwrap();
        assert_eq!(dual_chern(&c).unwrap().coefficients(), &[1, -5, 10, -10, 5]);
    }

    #[test]
    fn large_twist_with_low_multiplicity() {
        let c = total_chern(&ts(&[(1 << 40, 1)]), 4).unwrap();
        assert_eq!(c.coefficients(), &[1, 1 << 40, 0, 0, 0]);
    }

    #[test]
    fn inverse_requires_unit() {
        let c = ChernPoly::from_coefficients(&[2, 1], 3).unwrap();
        assert!(c.inverse().is_err());
    }

    #[test]
    fn mismatched_rings_rejected() {
        let a = ChernPoly::one(2).unwrap();
        let b = ChernPoly::one(3).unwrap();
        assert!(a.mul(&b).is_err());
    }
}
