//! Exact binomial coefficients with overflow detection.

use crate::error::{Error, Result};

/// `C(n, k)` for nonnegative arguments; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or(Error::Overflow("binomial"))?
            / u128::from(i + 1);
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("binomial"))
}

/// `C(n, k)` with the convention that it vanishes when `n < k`, `n < 0` or `k < 0`.
pub fn binomial_signed(n: i64, k: i64) -> Result<u64> {
    if n < 0 || k < 0 || n < k {
        return Ok(0);
    }
    binomial(n as u64, k as u64)
}
