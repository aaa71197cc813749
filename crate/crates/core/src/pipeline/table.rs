use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::twist::{MonadPresentation, TwistSum};

/// A row `(n_i), (m_j)` describing `0 → V → ⊕O(n_i) → ⊕O(m_j) → 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TableEntry {
    name: String,
    rank: u64,
    n_twists: TwistSum,
    m_twists: TwistSum,
}

impl TableEntry {
    /// Validates `rank = |n| − |m| > 0` and that no `n` twist exceeds an `m` twist.
    pub fn new(
        name: impl Into<String>,
        rank: i64,
        n_twists: TwistSum,
        m_twists: TwistSum,
    ) -> Result<Self> {
        let name = name.into();
        if rank < 1 {
            return Err(Error::Validation(format!(
                "{name}: rank must be positive, got {rank}"
            )));
        }
        let expected = i128::from(n_twists.rank()) - i128::from(m_twists.rank());
        if i128::from(rank) != expected {
            return Err(Error::Validation(format!(
                "{name}: rank mismatch: {} - {} != {rank}",
                n_twists.rank(),
                m_twists.rank()
            )));
        }
        if let (Some(n_max), Some(m_min)) = (n_twists.max_twist(), m_twists.min_twist()) {
            if n_max > m_min {
                return Err(Error::Validation(format!(
                    "{name}: n twist {n_max} exceeds m twist {m_min}"
                )));
            }
        }
        Ok(TableEntry {
            name,
            rank: rank as u64,
            n_twists,
            m_twists,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn n_twists(&self) -> &TwistSum {
        &self.n_twists
    }

    pub fn m_twists(&self) -> &TwistSum {
        &self.m_twists
    }

    /// `0 → V → ⊕O(n_i) → ⊕O(m_j) → 0`.
    pub fn presentation(&self) -> MonadPresentation {
        MonadPresentation::kernel(self.n_twists.clone(), self.m_twists.clone())
            .expect("validated entries have positive rank")
    }

    /// `0 → ⊕O(−m_j) → ⊕O(−n_i) → E → 0` for `E = V*`.
    pub fn dual_presentation(&self) -> MonadPresentation {
        self.presentation().dual()
    }
}

impl fmt::Display for TableEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::render_entry(self))
    }
}

const ROWS: [(&str, i64, &str, &str); 16] = [
    ("V1", 3, "22222222", "33334"),
    ("V2", 3, "122222", "344"),
    ("V3", 3, "112233", "444"),
    ("V4", 3, "11222", "35"),
    ("V5", 3, "11133", "45"),
    ("V6", 4, "1122222222", "333333"),
    ("V7", 4, "11122222", "3334"),
    ("V8", 4, "111122", "44"),
    ("V9", 4, "11111", "5"),
    ("V10", 5, "1111122222", "33333"),
    ("V11", 5, "11111122", "334"),
    ("V12", 6, "1111111122", "3333"),
    ("V13", 6, "111111111", "234"),
    ("V14", 7, "11111111111", "2333"),
    ("V15", 7, "111111111111", "22224"),
    ("V16", 8, "11111111111111", "222233"),
];

fn digits(s: &str) -> TwistSum {
    TwistSum::from_twists(s.bytes().map(|b| i64::from(b - b'0'))).expect("small twists")
}

/// The sixteen rank 3–8 bundles with `c₁ = 0`, `c₂ = 10` on `P^4`.
pub fn builtin_table() -> Vec<TableEntry> {
    ROWS.iter()
        .map(|&(name, rank, n, m)| {
            TableEntry::new(name, rank, digits(n), digits(m)).expect("built-in rows are valid")
        })
        .collect()
}

/// Looks up a built-in row by name, case-insensitively (`V8`, `v8`).
pub fn builtin_entry(name: &str) -> Option<TableEntry> {
    builtin_table()
        .into_iter()
        .find(|e| e.name().eq_ignore_ascii_case(name))
}
